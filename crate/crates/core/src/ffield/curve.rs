use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gf2k::{FieldElement, FieldSpec};
use crate::poly2::Poly2;

use super::divisor::Divisor;
use super::elem::FFElem;
use super::local::{Center, Chart, Fibre, Reduction, XPoint};
use super::place::{Place, PlaceKind, XPlace};

/// The curve `y^2 + y = r(x)` with `r = r_num / r_den` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseCurve {
    r_num: Poly2,
    r_den: Poly2,
    /// x-places with odd reduced pole order of `r`.
    branch: Vec<(XPlace, i64)>,
}

/// Operation selector for [`ff_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FfOp {
    Add,
    Mul,
    Inv,
    Conj,
}

/// Expansion of a function at a place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSeries {
    pub place: Place,
    pub uniformizer: String,
    /// Residue field of the place.
    pub field: FieldSpec,
    /// Exponent of `coeffs[0]`; the valuation when the series is nonzero.
    pub valuation: i64,
    pub coeffs: Vec<u32>,
    /// Coefficients are exact for all exponents below this.
    pub precision: i64,
}

/// Result of ℘-reduction at a place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpReduction {
    /// Reduced pole order; zero means unramified.
    pub order: u32,
    /// Reduced constant term in `field`; zero when `order > 0`.
    pub residue: u32,
    pub field: FieldSpec,
}

impl WpReduction {
    pub fn residue_element(&self) -> FieldElement<'_> {
        self.field.elem(self.residue)
    }

    /// Absolute trace of the residue: the Frobenius symbol of an unramified place.
    pub fn symbol(&self) -> u32 {
        self.field.trace(self.residue)
    }
}

impl BaseCurve {
    /// Builds the curve, reducing `r` to lowest terms. Rejects `r` whose
    /// reduced pole orders all vanish, since `y^2 + y = r` is then not an
    /// absolutely irreducible cover of the line.
    pub fn new(r_num: Poly2, r_den: Poly2) -> Result<BaseCurve> {
        if r_den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = r_num.gcd(&r_den);
        let (r_num, r_den) = (r_num.div_exact(&g), r_den.div_exact(&g));
        let mut candidates: Vec<XPlace> = if r_den.deg() > 0 {
            r_den.factorize()?.into_iter().map(|(p, _)| XPlace::Finite(p)).collect()
        } else {
            Vec::new()
        };
        candidates.push(XPlace::Infinity);
        let mut branch = Vec::new();
        for xp in candidates {
            let pt = match &xp {
                XPlace::Finite(p) => XPoint::of_place(p)?,
                XPlace::Infinity => XPoint::infinity(),
            };
            if let Fibre::Ramified(ch) = Chart::fibre(&r_num, &r_den, &pt) {
                branch.push((xp, ch.m));
            }
        }
        if branch.is_empty() {
            return Err(Error::InvalidCurve(format!(
                "r = ({r_num})/({r_den}) has no odd reduced pole; the cover is not absolutely irreducible"
            )));
        }
        Ok(BaseCurve { r_num, r_den, branch })
    }

    pub fn parse(r_num: &str, r_den: &str) -> Result<BaseCurve> {
        BaseCurve::new(Poly2::parse(r_num)?, Poly2::parse(r_den)?)
    }

    pub fn r_num(&self) -> &Poly2 {
        &self.r_num
    }

    pub fn r_den(&self) -> &Poly2 {
        &self.r_den
    }

    /// Branch points of the x-line with their reduced (odd) pole orders.
    pub fn branch_points(&self) -> &[(XPlace, i64)] {
        &self.branch
    }

    /// `2g - 2 = -4 + sum (d_P + 1)·deg P` over branch points.
    pub fn genus(&self) -> u64 {
        let s: i64 = self.branch.iter().map(|(xp, d)| (d + 1) * xp.degree() as i64).sum();
        ((s - 4 + 2) / 2) as u64
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        // (u1 + v1 y)(u2 + v2 y) with y^2 = y + N/M
        let m = &self.r_den;
        let vv = a.v().mul(b.v());
        let u = m.mul(&a.u().mul(b.u())).add(&vv.mul(&self.r_num));
        let v = m.mul(&a.u().mul(b.v()).add(&b.u().mul(a.v())).add(&vv));
        FFElem::canonical(u, v, m.mul(&a.den().mul(b.den())))
    }

    pub fn square(&self, a: &FFElem) -> FFElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FFElem, mut e: u64) -> FFElem {
        let mut base = a.clone();
        let mut acc = FFElem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `N(a) = a·conj(a)` as an unreduced fraction `(num, den)` in F2[x].
    pub fn norm_parts(&self, a: &FFElem) -> (Poly2, Poly2) {
        let (u, v) = (a.u(), a.v());
        let num = self.r_den.mul(&u.mul(u).add(&u.mul(v))).add(&self.r_num.mul(&v.mul(v)));
        let den = self.r_den.mul(&a.den().mul(a.den()));
        (num, den)
    }

    pub fn norm(&self, a: &FFElem) -> FFElem {
        let (n, d) = self.norm_parts(a);
        FFElem::canonical(n, Poly2::zero(), d)
    }

    pub fn inv(&self, a: &FFElem) -> Result<FFElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (n, d) = self.norm_parts(a);
        // conj(a)/N(a) = conj(a)·d/n
        let c = a.conj();
        Ok(FFElem::canonical(c.u().mul(&d), c.v().mul(&d), c.den().mul(&n)))
    }

    pub fn div(&self, a: &FFElem, b: &FFElem) -> Result<FFElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Artin-Schreier operator `f^2 + f`.
    pub fn wp(&self, f: &FFElem) -> FFElem {
        self.square(f).add(f)
    }

    /// `r` as a function-field element.
    pub fn r(&self) -> FFElem {
        FFElem::canonical(self.r_num.clone(), Poly2::zero(), self.r_den.clone())
    }

    /// d/dx, with `dy/dx = r'` from `y^2 + y = r` in characteristic 2.
    pub fn derivative(&self, f: &FFElem) -> FFElem {
        let (n, m) = (&self.r_num, &self.r_den);
        let rp = FFElem::canonical(
            n.derivative().mul(m).add(&n.mul(&m.derivative())),
            Poly2::zero(),
            m.mul(m),
        );
        let c = f.den();
        // numerator' = u' + v' y + v r'
        let top = FFElem::canonical(f.u().derivative(), f.v().derivative(), Poly2::one())
            .add(&self.mul(&FFElem::from_poly(f.v().clone()), &rp));
        let num = FFElem::canonical(f.u().clone(), f.v().clone(), Poly2::one());
        // (top·c + num·c') / c^2
        top.mul_poly(c).add(&num.mul_poly(&c.derivative())).div_poly(&c.mul(c)).unwrap()
    }

    /// The x-point of a place over its residue field together with the
    /// chart of the place itself.
    pub(crate) fn chart(&self, place: &Place) -> Result<Chart> {
        let d = place.x_place().degree();
        let xp = match (place.x_place(), place.kind()) {
            (XPlace::Finite(p), PlaceKind::Inert) => {
                if 2 * d > 32 {
                    return Err(Error::ResidueFieldTooLarge(2 * d));
                }
                let field = FieldSpec::new(2 * d)?;
                let a = p.roots_in(&field)[0];
                XPoint::new(field, Center::Finite(a))
            }
            (XPlace::Finite(p), _) => XPoint::of_place(p)?,
            (XPlace::Infinity, PlaceKind::Inert) => XPoint::new(FieldSpec::new(2)?, Center::Infinity),
            (XPlace::Infinity, _) => XPoint::infinity(),
        };
        match (Chart::fibre(&self.r_num, &self.r_den, &xp), place.kind()) {
            (Fibre::Ramified(ch), PlaceKind::Ramified) => Ok(ch),
            (Fibre::Split([c0, _]), PlaceKind::Inert) => Ok(c0),
            (Fibre::Split(cs), PlaceKind::Split { branch }) => {
                let y0 = xp.field.from_poly(branch);
                cs.into_iter()
                    .find(|c| c.y0 == Some(y0))
                    .ok_or_else(|| Error::UnrepresentablePlace(place.to_string()))
            }
            _ => Err(Error::UnrepresentablePlace(place.to_string())),
        }
    }

    /// The places above an x-place.
    pub fn places_over(&self, xp: &XPlace) -> Result<Vec<Place>> {
        let pt = match xp {
            XPlace::Finite(p) => {
                if p.deg() < 1 || !p.is_irreducible()? {
                    return Err(Error::NotIrreducible(p.to_string()));
                }
                XPoint::of_place(p)?
            }
            XPlace::Infinity => XPoint::infinity(),
        };
        Ok(match Chart::fibre(&self.r_num, &self.r_den, &pt) {
            Fibre::Ramified(_) => vec![Place::new(xp.clone(), PlaceKind::Ramified)],
            Fibre::Inert => vec![Place::new(xp.clone(), PlaceKind::Inert)],
            Fibre::Split(cs) => cs
                .iter()
                .map(|c| {
                    let branch = Poly2::from_u64(c.y0.unwrap() as u64);
                    Place::new(xp.clone(), PlaceKind::Split { branch })
                })
                .collect(),
        })
    }

    /// All places of degree one.
    pub fn rational_places(&self) -> Result<Vec<Place>> {
        let mut out = Vec::new();
        for xp in [XPlace::Finite(Poly2::x()), XPlace::Finite(Poly2::from_u64(3)), XPlace::Infinity] {
            out.extend(self.places_over(&xp)?.into_iter().filter(|p| p.degree() == 1));
        }
        Ok(out)
    }

    /// Laurent expansion of `f` at `place` with `prec` terms from its valuation.
    pub fn local_expand(&self, f: &FFElem, place: &Place, prec: u32) -> Result<LocalSeries> {
        if f.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let ch = self.chart(place)?;
        let v = ch.valuation(f);
        let s = ch.expand(f, v + prec.max(1) as i64);
        let t = match place.x_place() {
            XPlace::Infinity => "1/x".to_string(),
            XPlace::Finite(_) => "x-a".to_string(),
        };
        let uniformizer = if ch.is_ramified() {
            let gy = if ch.g.valuation().is_some() { "y+g(t)" } else { "y" };
            format!("({gy})*t^{}, t = {t}", (ch.m + 1) / 2)
        } else {
            t
        };
        Ok(LocalSeries {
            place: place.clone(),
            uniformizer,
            field: ch.field().clone(),
            valuation: v,
            coeffs: (v..s.prec).map(|e| s.coeff(e)).collect(),
            precision: s.prec,
        })
    }

    fn norm_valuation(&self, f: &FFElem, xp: &XPlace) -> i64 {
        let (n, d) = self.norm_parts(f);
        match xp {
            XPlace::Finite(p) => n.valuation_at(p) as i64 - d.valuation_at(p) as i64,
            XPlace::Infinity => d.deg() - n.deg(),
        }
    }

    /// Exact valuation of a nonzero function at a place.
    pub fn valuation(&self, f: &FFElem, place: &Place) -> Result<i64> {
        if f.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let nv = self.norm_valuation(f, place.x_place());
        match place.kind() {
            PlaceKind::Ramified => Ok(nv),
            PlaceKind::Inert => Ok(nv / 2),
            PlaceKind::Split { branch } => {
                if let XPlace::Finite(p) = place.x_place() {
                    if f.den().rem(p).is_zero() || self.r_den.rem(p).is_zero() {
                        return Ok(self.chart(place)?.valuation(f));
                    }
                    // f is regular at both conjugates: compare residues
                    let k = FieldSpec::with_modulus(p)?;
                    let a = k.generator();
                    let (ua, va) = (f.u().eval(&k, a), f.v().eval(&k, a));
                    let y0 = k.from_poly(branch);
                    let here = ua ^ k.mul(va, y0);
                    let there = here ^ va;
                    return Ok(match (here != 0, there != 0) {
                        (true, _) => 0,
                        (false, true) => nv,
                        (false, false) => self.chart(place)?.valuation(f),
                    });
                }
                Ok(self.chart(place)?.valuation(f))
            }
        }
    }

    /// Pole order `max(0, -v_P(f))`.
    pub fn pole_order(&self, f: &FFElem, place: &Place) -> Result<u64> {
        Ok((-self.valuation(f, place)?).max(0) as u64)
    }

    /// x-places where a nonzero function can have zeros or poles.
    fn candidate_xplaces(&self, f: &FFElem) -> Result<Vec<XPlace>> {
        let (n, d) = self.norm_parts(f);
        let mut set = BTreeSet::new();
        for p in [n, d] {
            if p.deg() > 0 {
                for (q, _) in p.factorize()? {
                    set.insert(XPlace::Finite(q));
                }
            }
        }
        set.insert(XPlace::Infinity);
        Ok(set.into_iter().collect())
    }

    /// The principal divisor of a nonzero function.
    pub fn divisor_of(&self, f: &FFElem) -> Result<Divisor> {
        if f.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let mut div = Divisor::new();
        for xp in self.candidate_xplaces(f)? {
            let places = self.places_over(&xp)?;
            if places.len() == 2 {
                let nv = self.norm_valuation(f, &xp);
                let v0 = self.valuation(f, &places[0])?;
                div.add_term(places[0].clone(), v0);
                div.add_term(places[1].clone(), nv - v0);
            } else {
                let v = self.valuation(f, &places[0])?;
                div.add_term(places[0].clone(), v);
            }
        }
        Ok(div)
    }

    /// ℘-reduction of `f` at a place: reduced pole order and, when it is
    /// zero, the reduced constant term in the residue field.
    pub fn wp_reduce_local(&self, f: &FFElem, place: &Place) -> Result<WpReduction> {
        let ch = self.chart(place)?;
        let Reduction { order, residue, .. } = ch.reduce(f);
        Ok(WpReduction { order: order as u32, residue, field: ch.field().clone() })
    }

    /// Divisor of the differential `dx`, from the local derivative `dx/ds`
    /// at places over infinity and at ramified places (elsewhere `x - a`
    /// is a uniformizer and `dx` has neither zero nor pole).
    pub fn dx_divisor(&self) -> Result<Divisor> {
        let mut xps: Vec<XPlace> = self.branch.iter().map(|(xp, _)| xp.clone()).collect();
        if !xps.contains(&XPlace::Infinity) {
            xps.push(XPlace::Infinity);
        }
        let mut div = Divisor::new();
        for xp in xps {
            for place in self.places_over(&xp)? {
                let ch = self.chart(&place)?;
                let mut n = 32;
                let v = loop {
                    let (x, _) = ch.xy(n);
                    if let Some(v) = x.derivative().valuation() {
                        break v;
                    }
                    n *= 2;
                };
                div.add_term(place, v);
            }
        }
        Ok(div)
    }

    /// Divisor of the differential `f dx`.
    pub fn differential_divisor(&self, f: &FFElem) -> Result<Divisor> {
        Ok(self.divisor_of(f)?.add(&self.dx_divisor()?))
    }
}

/// Arithmetic dispatch; `b` is ignored by the unary operations.
pub fn ff_op(curve: &BaseCurve, a: &FFElem, b: &FFElem, kind: FfOp) -> Result<FFElem> {
    match kind {
        FfOp::Add => Ok(a.add(b)),
        FfOp::Mul => Ok(curve.mul(a, b)),
        FfOp::Inv => curve.inv(a),
        FfOp::Conj => Ok(a.conj()),
    }
}
