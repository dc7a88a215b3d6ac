//! The tower algebra `F2(E)[w_1..w_k]` with `w_i^2 = w_i + f_i`, used to
//! find a single defining equation for the top of a tower: the minimal
//! polynomial of `w_1···w_k` over the base function field, and its product
//! with the conjugate under `y -> y + 1`, which lives over `F2(x)`.

use std::fmt;

use crate::astower::Tower;
use crate::error::{Error, Result};
use crate::ffield::{BaseCurve, FFElem};
use crate::gf2k::FieldSpec;

/// `sum_S c_S · w^S`, indexed by the subset mask `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerAlgebraElem {
    coeffs: Vec<FFElem>,
}

impl TowerAlgebraElem {
    pub fn coeff(&self, subset: usize) -> &FFElem {
        &self.coeffs[subset]
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FFElem::is_zero)
    }

    /// The base-field value, if every `w`-component vanishes.
    pub fn scalar_part(&self) -> Option<&FFElem> {
        self.coeffs[1..].iter().all(FFElem::is_zero).then(|| &self.coeffs[0])
    }
}

impl fmt::Display for TowerAlgebraElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let w: Vec<String> = (0..usize::BITS).filter(|i| s >> i & 1 == 1).map(|i| format!("w{}", i + 1)).collect();
            match (c.is_one(), w.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (true, false) => write!(f, "{}", w.join("*"))?,
                (false, false) => write!(f, "({c})*{}", w.join("*"))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Multiplication context for the algebra of a tower.
pub struct TowerAlgebra<'a> {
    curve: &'a BaseCurve,
    k: usize,
    /// `prod_{i in U} f_i` for every subset `U`.
    fprod: Vec<FFElem>,
}

impl<'a> TowerAlgebra<'a> {
    pub fn new(t: &'a Tower) -> TowerAlgebra<'a> {
        let curve = t.base();
        let k = t.k();
        let mut fprod = vec![FFElem::one(); 1 << k];
        for s in 1..1usize << k {
            let i = s.trailing_zeros() as usize;
            fprod[s] = curve.mul(&fprod[s & (s - 1)], &t.covers()[i]);
        }
        TowerAlgebra { curve, k, fprod }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn scalar(&self, c: FFElem) -> TowerAlgebraElem {
        let mut coeffs = vec![FFElem::zero(); 1 << self.k];
        coeffs[0] = c;
        TowerAlgebraElem { coeffs }
    }

    pub fn zero(&self) -> TowerAlgebraElem {
        self.scalar(FFElem::zero())
    }

    pub fn one(&self) -> TowerAlgebraElem {
        self.scalar(FFElem::one())
    }

    /// The generator `w_i`, counting from 0.
    pub fn w(&self, i: usize) -> TowerAlgebraElem {
        assert!(i < self.k, "generator w{} out of range", i + 1);
        let mut e = self.zero();
        e.coeffs[1 << i] = FFElem::one();
        e
    }

    /// `w^S` for a subset mask.
    pub fn monomial(&self, subset: usize) -> TowerAlgebraElem {
        let mut e = self.zero();
        e.coeffs[subset] = FFElem::one();
        e
    }

    pub fn add(&self, a: &TowerAlgebraElem, b: &TowerAlgebraElem) -> TowerAlgebraElem {
        TowerAlgebraElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.add(y)).collect() }
    }

    pub fn scale(&self, c: &FFElem, a: &TowerAlgebraElem) -> TowerAlgebraElem {
        TowerAlgebraElem { coeffs: a.coeffs.iter().map(|x| self.curve.mul(c, x)).collect() }
    }

    /// `w^S · w^T = w^(S xor T) · prod_{i in S and T} (w_i + f_i)`, and
    /// expanding the product gives `sum_{U in S and T} f^U · w^((S or T) \ U)`.
    pub fn mul(&self, a: &TowerAlgebraElem, b: &TowerAlgebraElem) -> TowerAlgebraElem {
        let n = 1usize << self.k;
        let mut out = vec![FFElem::zero(); n];
        for s in 0..n {
            if a.coeffs[s].is_zero() {
                continue;
            }
            for t in 0..n {
                if b.coeffs[t].is_zero() {
                    continue;
                }
                let c = self.curve.mul(&a.coeffs[s], &b.coeffs[t]);
                let both = s & t;
                let union = s | t;
                let mut u = both;
                loop {
                    let term = if u == 0 { c.clone() } else { self.curve.mul(&c, &self.fprod[u]) };
                    let idx = union & !u;
                    out[idx] = out[idx].add(&term);
                    if u == 0 {
                        break;
                    }
                    u = (u - 1) & both;
                }
            }
        }
        TowerAlgebraElem { coeffs: out }
    }

    /// The conjugate `prod_i (w_i + a_i)` of `w_1···w_k`.
    pub fn conjugate_of_product(&self, a: usize) -> TowerAlgebraElem {
        (0..self.k).fold(self.one(), |acc, i| {
            let mut wi = self.w(i);
            if a >> i & 1 == 1 {
                wi = self.add(&wi, &self.one());
            }
            self.mul(&acc, &wi)
        })
    }

    /// Horner evaluation of a polynomial with base-field coefficients
    /// (constant term first) at an algebra element.
    pub fn eval_poly(&self, coeffs: &[FFElem], t: &TowerAlgebraElem) -> TowerAlgebraElem {
        coeffs.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, t), &self.scalar(c.clone())))
    }
}

/// `prod_a (T + prod_i (w_i + a_i))` over all `a in F2^k`, coefficients
/// listed constant term first. Each must lie in the base function field.
pub fn octic_minpoly(t: &Tower) -> Result<Vec<FFElem>> {
    let alg = TowerAlgebra::new(t);
    // polynomial in T with algebra coefficients, constant first
    let mut poly = vec![alg.one()];
    for a in 0..1usize << t.k() {
        let root = alg.conjugate_of_product(a);
        let mut next = vec![alg.zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = alg.add(&next[i + 1], c);
            next[i] = alg.add(&next[i], &alg.mul(c, &root));
        }
        poly = next;
    }
    poly.into_iter()
        .enumerate()
        .map(|(i, c)| c.scalar_part().cloned().ok_or(Error::NotInBaseField(i)))
        .collect()
}

/// The symmetric-function closed form of the degree-8 polynomial for a
/// three-step tower, constant term first.
pub fn octic_closed_form(t: &Tower) -> Result<Vec<FFElem>> {
    if t.k() != 3 {
        return Err(Error::InvalidSubspace(format!("closed form needs 3 covers, tower has {}", t.k())));
    }
    let c = t.base();
    let f = t.covers();
    let m = |a: &FFElem, b: &FFElem| c.mul(a, b);
    let sq = |a: &FFElem| c.square(a);
    let p12 = m(&f[0], &f[1]);
    let p13 = m(&f[0], &f[2]);
    let p23 = m(&f[1], &f[2]);
    let p123 = m(&p12, &f[2]);
    let a6 = f[0].add(&f[1]).add(&f[2]);
    let a5 = p123.add(&p12).add(&p13).add(&p23);
    let a4 = sq(&p12).add(&sq(&p13)).add(&sq(&p23)).add(&p123);
    let p123sq = sq(&p123);
    Ok(vec![
        sq(&p123sq),
        m(&p123sq, &p123),
        m(&a6, &p123sq),
        m(&a5, &p123),
        a4,
        a5,
        a6,
        FFElem::one(),
        FFElem::one(),
    ])
}

/// Whether the `2^k` conjugates of `w_1···w_k` are pairwise distinct.
pub fn conjugates_distinct(t: &Tower) -> bool {
    let alg = TowerAlgebra::new(t);
    let roots: Vec<TowerAlgebraElem> = (0..1usize << t.k()).map(|a| alg.conjugate_of_product(a)).collect();
    roots.iter().enumerate().all(|(i, r)| roots[i + 1..].iter().all(|s| !alg.add(r, s).is_zero()))
}

/// Product of a polynomial over the base function field with its
/// conjugate under `y -> y + 1`; every coefficient must be fixed by the
/// conjugation, i.e. lie in `F2(x)`.
pub fn times_conjugate(curve: &BaseCurve, poly: &[FFElem]) -> Result<Vec<FFElem>> {
    if poly.is_empty() {
        return Ok(Vec::new());
    }
    let conj: Vec<FFElem> = poly.iter().map(FFElem::conj).collect();
    let mut out = vec![FFElem::zero(); 2 * poly.len() - 1];
    for (i, a) in poly.iter().enumerate() {
        for (j, b) in conj.iter().enumerate() {
            out[i + j] = out[i + j].add(&curve.mul(a, b));
        }
    }
    for (i, c) in out.iter().enumerate() {
        if !c.is_rational() {
            return Err(Error::NotInvariant(i));
        }
    }
    Ok(out)
}

/// The degree-`2^(k+1)` polynomial of `w_1···w_k` over `F2(x)`.
pub fn sedectic_minpoly(t: &Tower) -> Result<Vec<FFElem>> {
    times_conjugate(t.base(), &octic_minpoly(t)?)
}

/// Value of `f` at the affine point `(x0, y0)`, if `f` is regular there in
/// the naive sense (its denominator does not vanish).
pub fn eval_at_point(k: &FieldSpec, f: &FFElem, x0: u32, y0: u32) -> Option<u32> {
    let den = f.den().eval(k, x0);
    let num = k.add(f.u().eval(k, x0), k.mul(f.v().eval(k, x0), y0));
    k.div(num, den)
}

/// Numeric consistency check at `x0`: every fibre value of `w_1···w_k`
/// above `x0` is a root of `poly` (coefficients in `F2(x)`, constant first).
/// `None` when the fibre is not usable (a pole, or a `y` or `w_i` equation
/// without roots in the field); otherwise whether all roots check out.
pub fn spot_check(t: &Tower, poly: &[FFElem], k: &FieldSpec, x0: u32) -> Option<bool> {
    let curve = t.base();
    let coeffs: Vec<u32> = poly.iter().map(|c| eval_at_point(k, c, x0, 0)).collect::<Option<_>>()?;
    let r0 = k.div(curve.r_num().eval(k, x0), curve.r_den().eval(k, x0))?;
    let (y0, _) = k.solve_wp(r0)?;
    let mut all = true;
    for y in [y0, y0 ^ 1] {
        let mut prod = 1u32;
        for f in t.covers() {
            let (w, _) = k.solve_wp(eval_at_point(k, f, x0, y)?)?;
            prod = k.mul(prod, w);
        }
        let value = coeffs.iter().rev().fold(0u32, |acc, &c| k.add(k.mul(acc, prod), c));
        all &= value == 0;
    }
    Some(all)
}

/// Prints `sum c_i T^i`, highest power first.
pub fn format_poly(coeffs: &[FFElem], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mon = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (c.is_one(), i) {
            (true, 0) => "1".to_string(),
            (true, _) => mon,
            (false, 0) => format!("{c}"),
            (false, _) => format!("({c})*{mon}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}
