//! Local charts of a base curve `y^2 + y = N/M` at points of the x-line
//! defined over some binary field.
//!
//! At an x-point with local parameter `t` (`x = a + t`, or `x = 1/t` at
//! infinity) the expansion of `r` is reduced modulo `g^2 + g` until its pole
//! order is odd or zero. Odd order means the point is ramified; order zero
//! splits or stays inert according to the trace of the constant term.

use crate::gf2k::FieldSpec;
use crate::poly2::Poly2;
use crate::series::{Laurent, INF};

use super::elem::FFElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Center {
    Finite(u32),
    Infinity,
}

/// A point of the x-line over `field`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct XPoint {
    pub field: FieldSpec,
    pub center: Center,
}

/// Outcome of the ℘-reduction of a Laurent series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Reduction {
    /// Reduced pole order: zero or odd.
    pub order: i64,
    /// Constant term after reduction; meaningful when `order == 0`.
    pub residue: u32,
    /// The Laurent polynomial `g` (negative exponents only) with
    /// `f + g^2 + g` reduced.
    pub g: Laurent,
}

/// Strips even-order leading poles: `c·s^(-2m)` is cancelled by
/// `g = sqrt(c)·s^(-m)`, which leaves `sqrt(c)·s^(-m)` behind.
/// `None` when the constant term is not yet known.
pub(crate) fn wp_reduce(k: &FieldSpec, f: &Laurent) -> Option<Reduction> {
    if f.prec < 1 {
        return None;
    }
    let mut cur = f.clone().truncate(1);
    let mut g = Laurent::zero();
    loop {
        match cur.valuation() {
            Some(v) if v < 0 && v % 2 == 0 => {
                let h = k.sqrt(cur.coeff(v));
                let term = Laurent::monomial(h, v / 2);
                cur = cur.add(&Laurent::monomial(cur.coeff(v), v)).add(&term);
                g = g.add(&term);
            }
            Some(v) if v < 0 => return Some(Reduction { order: -v, residue: 0, g }),
            _ => return Some(Reduction { order: 0, residue: cur.coeff(0), g }),
        }
    }
}

/// Reduced pole order from the closed form: the folded coefficient at
/// `s^(-j)`, `j` odd, is `sum_i c_(-j·2^i)^(1/2^i)`.
pub(crate) fn reduced_order_folded(k: &FieldSpec, f: &Laurent) -> i64 {
    let lo = f.low().min(0);
    let mut best = 0;
    let mut j = 1;
    while j <= -lo {
        let mut acc = 0u32;
        let mut e = j;
        let mut i = 0;
        while e <= -lo {
            let c = f.coeff(-e);
            // c^(1/2^i) = c^(2^(n-i)) in GF(2^n)
            acc ^= k.frobenius(c, (k.degree() - (i % k.degree())) % k.degree());
            e *= 2;
            i += 1;
        }
        if acc != 0 {
            best = j;
        }
        j += 2;
    }
    best
}

impl XPoint {
    pub fn new(field: FieldSpec, center: Center) -> XPoint {
        XPoint { field, center }
    }

    /// The x-point of a finite place `p`, over its residue field `F2[t]/(p)`
    /// with `x = t`.
    pub fn of_place(p: &Poly2) -> crate::Result<XPoint> {
        let d = p.deg() as u32;
        if d > 32 {
            return Err(crate::Error::ResidueFieldTooLarge(d));
        }
        let field = FieldSpec::with_modulus(p)?;
        let a = field.generator();
        Ok(XPoint { field, center: Center::Finite(a) })
    }

    pub fn infinity() -> XPoint {
        XPoint { field: FieldSpec::new(1).unwrap(), center: Center::Infinity }
    }

    /// `x` as an exact series in the local parameter.
    pub fn x_series(&self) -> Laurent {
        match self.center {
            Center::Finite(a) => Laurent::exact(0, vec![a, 1]),
            Center::Infinity => Laurent::monomial(1, -1),
        }
    }

    /// A polynomial in `x` as an exact series in `t`.
    pub fn expand_poly(&self, p: &Poly2) -> Laurent {
        let d = p.deg();
        if d < 0 {
            return Laurent::zero();
        }
        match self.center {
            Center::Infinity => {
                let coeffs = (0..=d).map(|j| p.coeff((d - j) as usize) as u32).collect();
                Laurent::exact(-d, coeffs)
            }
            Center::Finite(a) => {
                // Taylor shift p(a + t) by Horner on coefficient vectors
                let k = &self.field;
                let mut acc: Vec<u32> = Vec::with_capacity(d as usize + 1);
                for i in (0..=d).rev() {
                    acc.push(0);
                    for j in (1..acc.len()).rev() {
                        acc[j] = k.mul(acc[j], a) ^ acc[j - 1];
                    }
                    acc[0] = k.mul(acc[0], a) ^ p.coeff(i as usize) as u32;
                }
                Laurent::exact(0, acc)
            }
        }
    }

    /// `num/den` expanded with absolute precision at least `cap`.
    pub fn expand_rational(&self, num: &Poly2, den: &Poly2, cap: i64) -> Laurent {
        let n = self.expand_poly(num);
        if n.is_exact_zero() {
            return n;
        }
        let d = self.expand_poly(den);
        let inv = d.inv(&self.field, cap - n.low()).expect("nonzero denominator");
        n.mul(&self.field, &inv, cap)
    }
}

/// How the base curve behaves above one x-point.
#[derive(Clone, Debug)]
pub(crate) enum Fibre {
    Ramified(Chart),
    Split([Chart; 2]),
    Inert,
}

/// A local parametrization of the base curve at one point over `xp.field`.
#[derive(Clone, Debug)]
pub(crate) struct Chart {
    pub xp: XPoint,
    r_num: Poly2,
    r_den: Poly2,
    /// Reducing Laurent polynomial for `r` in `t`.
    pub g: Laurent,
    /// Reduced pole order of `r` (odd when ramified, zero otherwise).
    pub m: i64,
    /// Residue of `y + g` on an unramified branch.
    pub y0: Option<u32>,
}

impl Chart {
    /// Classifies the fibre of `y^2 + y = num/den` above `xp`.
    pub fn fibre(num: &Poly2, den: &Poly2, xp: &XPoint) -> Fibre {
        let r = xp.expand_rational(num, den, 1);
        let red = wp_reduce(&xp.field, &r).expect("precision 1 requested");
        let base = Chart {
            xp: xp.clone(),
            r_num: num.clone(),
            r_den: den.clone(),
            g: red.g,
            m: red.order,
            y0: None,
        };
        if red.order > 0 {
            return Fibre::Ramified(base);
        }
        match xp.field.solve_wp(red.residue) {
            None => Fibre::Inert,
            Some((z0, z1)) => {
                let (a, b) = if z0 <= z1 { (z0, z1) } else { (z1, z0) };
                let mut c0 = base.clone();
                c0.y0 = Some(a);
                let mut c1 = base;
                c1.y0 = Some(b);
                Fibre::Split([c0, c1])
            }
        }
    }

    pub fn is_ramified(&self) -> bool {
        self.m > 0
    }

    pub fn field(&self) -> &FieldSpec {
        &self.xp.field
    }

    /// `r + g^2 + g` in `t` with absolute precision `cap`.
    fn reduced_r(&self, cap: i64) -> Laurent {
        let k = &self.xp.field;
        let r = self.xp.expand_rational(&self.r_num, &self.r_den, cap);
        r.add(&self.g.mul(k, &self.g, INF)).add(&self.g).truncate(cap)
    }

    /// `g` evaluated at a series for `t^(-1)`.
    fn g_at(&self, tinv: &Laurent, cap: i64) -> Laurent {
        let k = &self.xp.field;
        let mut acc = Laurent::zero();
        let Some(lo) = self.g.valuation() else { return acc };
        // g = sum_{j<0} g_j t^j = sum g_j tinv^(-j); Horner in tinv
        for e in (1..=-lo).rev() {
            acc = acc.add(&Laurent::constant(self.g.coeff(-e)));
            acc = acc.mul(k, tinv, cap);
        }
        acc
    }

    /// Series for `x` and `y` in the uniformizer `s`, computed from `n`
    /// working terms. The returned precisions are tracked honestly and may
    /// fall short of `n`.
    pub fn xy(&self, n: i64) -> (Laurent, Laurent) {
        let k = &self.xp.field;
        if let Some(y0) = self.y0 {
            // z^2 + z = r' with z(0) = y0: z_i = r'_i + [i even] z_(i/2)^2
            let rp = self.reduced_r(n);
            let len = rp.prec.min(n).max(1) as usize;
            let mut z = vec![0u32; len];
            z[0] = y0;
            for i in 1..len {
                let mut c = rp.coeff(i as i64);
                if i % 2 == 0 {
                    c ^= k.square(z[i / 2]);
                }
                z[i] = c;
            }
            let zs = Laurent { start: 0, coeffs: z, prec: len as i64 }.normalized();
            return (self.xp.x_series(), zs.add(&self.g));
        }
        // ramified: s = (y + g)·t^k', s^2 + s·t^k' = h(t) = r'·t^(m+1)
        let m = self.m;
        let kk = (m + 1) / 2;
        let rp = self.reduced_r(n);
        let h = rp.shift(m + 1);
        let t = solve_uniformizer(k, &h, kk, n);
        let tinv = t.inv(k, n).expect("t has valuation 2");
        let s = Laurent::monomial(1, 1);
        let yp = s.mul(k, &tinv.pow(k, kk as u32, n), n);
        let y = yp.add(&self.g_at(&tinv, n));
        let x = match self.xp.center {
            Center::Finite(a) => t.add(&Laurent::constant(a)),
            Center::Infinity => tinv,
        };
        (x, y)
    }

    /// Expansion of `(u + v·y)/c` with absolute precision at least `want`.
    pub fn expand_parts(&self, u: &Poly2, v: &Poly2, c: &Poly2, want: i64) -> Laurent {
        let k = &self.xp.field;
        if u.is_zero() && v.is_zero() {
            return Laurent::zero();
        }
        let mut n = (want + 8).max(16);
        loop {
            let (x, y) = self.xy(n);
            let us = eval_at(k, u, &x, n);
            let vs = eval_at(k, v, &x, n);
            let cs = eval_at(k, c, &x, n);
            let num = us.add(&vs.mul(k, &y, n));
            if let (Some(vn), Some(_)) = (num.valuation(), cs.valuation()) {
                let inv = cs.inv(k, want - vn).unwrap();
                let q = num.mul(k, &inv, want);
                if q.prec >= want {
                    return q;
                }
            }
            n *= 2;
            assert!(n < 1 << 22, "series precision exhausted for a nonzero function");
        }
    }

    /// Expansions of `x^i·y/c` for `i <= dv` followed by `x^i/c` for
    /// `i <= du`, each with absolute precision at least `want`. A negative
    /// bound means the block is empty.
    pub fn monomial_expansions(&self, c: &Poly2, du: i64, dv: i64, want: i64) -> Vec<Laurent> {
        let k = &self.xp.field;
        let mut n = (want + 8).max(16);
        loop {
            let (x, y) = self.xy(n);
            let cs = eval_at(k, c, &x, n);
            if cs.valuation().is_some() {
                let top = du.max(dv).max(0);
                let mut pows = vec![Laurent::constant(1)];
                for _ in 0..top {
                    let next = pows.last().unwrap().mul(k, &x, n);
                    pows.push(next);
                }
                let mut monos: Vec<Laurent> = (0..=dv).map(|i| pows[i as usize].mul(k, &y, n)).collect();
                monos.extend((0..=du).map(|i| pows[i as usize].clone()));
                let low = monos.iter().map(|m| m.low()).min().unwrap_or(0).min(want);
                let inv = cs.inv(k, want - low).unwrap();
                let out: Vec<Laurent> = monos.iter().map(|m| m.mul(k, &inv, want)).collect();
                if out.iter().all(|q| q.prec >= want) {
                    return out;
                }
            }
            n *= 2;
            assert!(n < 1 << 22, "series precision exhausted");
        }
    }

    pub fn expand(&self, f: &FFElem, want: i64) -> Laurent {
        self.expand_parts(f.u(), f.v(), f.den(), want)
    }

    /// Exact valuation of a nonzero element.
    pub fn valuation(&self, f: &FFElem) -> i64 {
        assert!(!f.is_zero());
        let mut want = 16;
        loop {
            if let Some(v) = self.expand(f, want).valuation() {
                return v;
            }
            want *= 2;
        }
    }

    /// ℘-reduction of `f` at this point.
    pub fn reduce(&self, f: &FFElem) -> Reduction {
        wp_reduce(&self.xp.field, &self.expand(f, 1)).unwrap()
    }
}

/// Evaluates an F2 polynomial at a series by Horner's rule.
pub(crate) fn eval_at(k: &FieldSpec, p: &Poly2, x: &Laurent, cap: i64) -> Laurent {
    let mut acc = Laurent::zero();
    for i in (0..=p.deg()).rev() {
        acc = acc.mul(k, x, cap);
        if p.coeff(i as usize) {
            acc = acc.add(&Laurent::constant(1));
        }
    }
    acc
}

/// Solves `s^2 + s·t^kk = h(t)` for `t` as a power series in `s`, where
/// `h = rho·t + O(t^2)` with `rho != 0`, by Newton iteration modulo `s^n`.
fn solve_uniformizer(k: &FieldSpec, h: &Laurent, kk: i64, n: i64) -> Laurent {
    let rho = h.coeff(1);
    let rho_inv = k.inv(rho).expect("odd reduced order");
    // only h_j with 2j < n matter since t = O(s^2)
    let jmax = (n / 2 + 1).min(h.prec - 1);
    let hc: Vec<u32> = (0..=jmax).map(|j| h.coeff(j)).collect();
    let s = Laurent::monomial(1, 1);
    let s2 = Laurent::monomial(1, 2);
    let mut t = Laurent { start: 2, coeffs: vec![rho_inv], prec: n }.normalized();
    for _ in 0..64 {
        // G(t) = h(t) + s·t^kk + s^2 and G'(t) = h'(t) + kk·s·t^(kk-1)
        let mut ht = Laurent::zero();
        let mut dh = Laurent::zero();
        for j in (1..hc.len()).rev() {
            ht = ht.add(&Laurent::constant(hc[j])).mul(k, &t, n);
        }
        for j in (1..hc.len()).rev() {
            let c = if j % 2 == 1 { hc[j] } else { 0 };
            dh = dh.mul(k, &t, n).add(&Laurent::constant(c));
        }
        let tk = t.pow(k, kk as u32, n);
        let g = ht.add(&s.mul(k, &tk, n)).add(&s2).truncate(n);
        let dg = if kk % 2 == 1 {
            dh.add(&s.mul(k, &t.pow(k, (kk - 1) as u32, n), n))
        } else {
            dh
        };
        if g.valuation().is_none() {
            break;
        }
        let step = g.mul(k, &dg.inv(k, n).unwrap(), n);
        t = t.add(&step).truncate(n);
    }
    t
}
