//! Riemann-Roch spaces `L(G) = {f : div(f) + G >= 0}` on a base curve.
//!
//! Every `f` in `L(G)` is written `(u + v·y)/c`, where `c` and degree bounds
//! on `u`, `v` come from local estimates. Writing `f = a + b·y` with
//! `b = f + conj(f)`, the pole orders of `b` above each x-place are bounded
//! by `G`, and those of `a = f + b·y` by `G` together with the poles of `y`.
//! The exact space is then cut out by linear conditions on the coefficients
//! of `u` and `v` at the places where poles can occur.
//!
//! Coordinates are ordered `v_0..v_dv, u_0..u_du`; the basis is in reduced
//! echelon form for this order.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ffield::{BaseCurve, Divisor, FFElem, Place, XPlace};
use crate::linalg::{BitVec, Echelon};
use crate::poly2::Poly2;

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

#[derive(Clone, Debug)]
pub struct RrSpace {
    curve: BaseCurve,
    divisor: Divisor,
    den: Poly2,
    du: i64,
    dv: i64,
    basis: Echelon,
}

/// Lower bounds for `v_p(b)` and `v_p(a)` above one x-place.
fn local_bounds(curve: &BaseCurve, g: &Divisor, xp: &XPlace) -> Result<(i64, i64)> {
    let places = curve.places_over(xp)?;
    let e = places[0].ramification_index() as i64;
    let nmax = places.iter().map(|p| g.coeff(p)).max().unwrap_or(0);
    let (n, m) = (curve.r_num(), curve.r_den());
    let mu = match xp {
        XPlace::Finite(p) => m.valuation_at(p) as i64,
        XPlace::Infinity => (n.deg() - m.deg()).max(0),
    };
    let ypole = e * mu / 2;
    let bb = ceil_div(-nmax, e);
    let ba = ceil_div((-nmax).min(e * bb - ypole), e);
    Ok((bb, ba))
}

impl RrSpace {
    pub fn new(curve: &BaseCurve, g: &Divisor) -> Result<RrSpace> {
        let mut finite: BTreeSet<Poly2> = BTreeSet::new();
        for p in g.support() {
            if let XPlace::Finite(q) = p.x_place() {
                finite.insert(q.clone());
            }
        }
        if curve.r_den().deg() > 0 {
            for (q, _) in curve.r_den().factorize()? {
                finite.insert(q);
            }
        }
        let mut den = Poly2::one();
        for p in &finite {
            let (bb, ba) = local_bounds(curve, g, &XPlace::Finite(p.clone()))?;
            let k = 0.max(-bb).max(-ba);
            den = den.mul(&p.pow(k as u64));
        }
        let (bb, ba) = local_bounds(curve, g, &XPlace::Infinity)?;
        let du = (den.deg() - ba).max(-1);
        let dv = (den.deg() - bb).max(-1);
        let ncols = (dv + 1 + du + 1) as usize;

        let mut places: Vec<Place> = Vec::new();
        for p in finite.iter().cloned().map(XPlace::Finite).chain([XPlace::Infinity]) {
            places.extend(curve.places_over(&p)?);
        }
        let mut constraints = Echelon::new(ncols);
        if ncols > 0 {
            for place in &places {
                let want = -g.coeff(place);
                let ch = curve.chart(place)?;
                let ex = ch.monomial_expansions(&den, du, dv, want);
                let lo = ex.iter().map(|s| s.low()).min().unwrap();
                let bits = ch.field().degree();
                for e in lo..want {
                    let cs: Vec<u32> = ex.iter().map(|s| s.coeff(e)).collect();
                    for b in 0..bits {
                        let row = BitVec::from_bools(&cs.iter().map(|c| c >> b & 1 == 1).collect::<Vec<_>>());
                        if !row.is_zero() {
                            constraints.insert(row);
                        }
                    }
                }
            }
        }
        Ok(RrSpace {
            curve: curve.clone(),
            divisor: g.clone(),
            den,
            du,
            dv,
            basis: constraints.kernel(),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn curve(&self) -> &BaseCurve {
        &self.curve
    }

    /// Common denominator `c` of the ansatz.
    pub fn denominator(&self) -> &Poly2 {
        &self.den
    }

    /// Degree bounds `(du, dv)` for `u` and `v`; `-1` means absent.
    pub fn degree_bounds(&self) -> (i64, i64) {
        (self.du, self.dv)
    }

    fn ansatz_element(&self, v: &BitVec) -> FFElem {
        let nv = (self.dv + 1) as usize;
        let mut pu = Poly2::zero();
        let mut pv = Poly2::zero();
        for i in v.ones() {
            if i < nv {
                pv = pv.add(&Poly2::monomial(i));
            } else {
                pu = pu.add(&Poly2::monomial(i - nv));
            }
        }
        FFElem::new(pu, pv, self.den.clone()).unwrap()
    }

    fn to_ansatz(&self, f: &FFElem) -> Option<BitVec> {
        let nv = (self.dv + 1) as usize;
        let mut out = BitVec::zeros(self.basis.ncols());
        for (p, off, bound) in [(f.v(), 0usize, self.dv), (f.u(), nv, self.du)] {
            let (q, r) = p.mul(&self.den).divrem(f.den()).ok()?;
            if !r.is_zero() || q.deg() > bound {
                return None;
            }
            for e in q.exponents() {
                out.set(off + e, true);
            }
        }
        Some(out)
    }

    pub fn basis(&self) -> Vec<FFElem> {
        self.basis.rows().iter().map(|r| self.ansatz_element(r)).collect()
    }

    /// The combination of basis vectors selected by `coords`.
    pub fn element(&self, coords: &[bool]) -> FFElem {
        let mut v = BitVec::zeros(self.basis.ncols());
        for (r, &c) in self.basis.rows().iter().zip(coords) {
            if c {
                v.xor_assign(r);
            }
        }
        self.ansatz_element(&v)
    }

    /// Coordinates in the echelon basis, or `None` if `f` is not in the space.
    pub fn coordinates(&self, f: &FFElem) -> Option<Vec<bool>> {
        self.basis.coordinates(&self.to_ansatz(f)?)
    }

    pub fn contains(&self, f: &FFElem) -> bool {
        self.coordinates(f).is_some()
    }
}

pub fn rr_basis(curve: &BaseCurve, g: &Divisor) -> Result<Vec<FFElem>> {
    Ok(RrSpace::new(curve, g)?.basis())
}

/// `div(f) + G >= 0`, decided from the divisor of `f`.
pub fn rr_member(f: &FFElem, curve: &BaseCurve, g: &Divisor) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    Ok(curve.divisor_of(f)?.add(g).is_effective())
}

/// `℘(L(D)) + L(D - R)` inside `L(2D - R)`.
#[derive(Clone, Debug)]
pub struct WpImage {
    /// `L(2D - R)`; the subspace lives in its coordinates.
    pub target: RrSpace,
    pub subspace: Echelon,
    pub dim_ld: usize,
    pub dim_wp_kernel: usize,
    pub dim_ldr: usize,
    pub dim_intersection: usize,
}

impl WpImage {
    pub fn dim(&self) -> usize {
        self.subspace.rank()
    }

    pub fn contains(&self, f: &FFElem) -> Result<bool> {
        let c = self
            .target
            .coordinates(f)
            .ok_or_else(|| Error::Containment(format!("{f} is not in L({})", self.target.divisor())))?;
        Ok(self.subspace.contains(&BitVec::from_bools(&c)))
    }

    /// The lexicographically least coordinate vector outside the subspace,
    /// coordinate 0 most significant.
    pub fn complement_pick(&self) -> Result<FFElem> {
        let n = self.target.dim();
        if self.dim() == n {
            return Err(Error::SubspaceNotProper);
        }
        for m in 0u64..(1 << n) {
            let coords: Vec<bool> = (0..n).map(|i| m >> (n - 1 - i) & 1 == 1).collect();
            if !self.subspace.contains(&BitVec::from_bools(&coords)) {
                return Ok(self.target.element(&coords));
            }
        }
        unreachable!("a proper subspace has a complement")
    }

    pub fn complement_size(&self) -> u64 {
        (1u64 << self.target.dim()) - (1u64 << self.dim())
    }
}

pub fn wp_image_subspace(curve: &BaseCurve, d: &Divisor, r: &Divisor) -> Result<WpImage> {
    let ld = RrSpace::new(curve, d)?;
    let ldr = RrSpace::new(curve, &d.sub(r))?;
    let target = RrSpace::new(curve, &d.scale(2).sub(r))?;
    let n = target.dim();
    let coords = |f: &FFElem| -> Result<BitVec> {
        target
            .coordinates(f)
            .map(|c| BitVec::from_bools(&c))
            .ok_or_else(|| Error::Containment(format!("{f} is not in L({})", target.divisor())))
    };
    let mut image = Echelon::new(n);
    for b in ld.basis() {
        image.insert(coords(&curve.wp(&b))?);
    }
    let mut sub = image.clone();
    let mut lower = Echelon::new(n);
    for b in ldr.basis() {
        let c = coords(&b)?;
        lower.insert(c.clone());
        sub.insert(c);
    }
    Ok(WpImage {
        dim_ld: ld.dim(),
        dim_wp_kernel: ld.dim() - image.rank(),
        dim_ldr: lower.rank(),
        dim_intersection: image.rank() + lower.rank() - sub.rank(),
        target,
        subspace: sub,
    })
}

pub fn complement_pick(curve: &BaseCurve, d: &Divisor, r: &Divisor) -> Result<FFElem> {
    wp_image_subspace(curve, d, r)?.complement_pick()
}
