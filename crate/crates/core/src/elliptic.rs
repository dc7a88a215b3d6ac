//! The supersingular curve `E: y^2 + y = x^3 + x` over binary fields: group
//! law, the endomorphism `iota`, the Frobenius relation `F = -1 + iota`,
//! and the closed-form point counts.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2k::FieldSpec;

/// A point of `E` over some `GF(2^n)`, coordinates packed as field words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EPoint {
    Infinity,
    Affine { x: u32, y: u32 },
}

impl fmt::Display for EPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EPoint::Infinity => write!(f, "O"),
            EPoint::Affine { x, y } => write!(f, "({x:#x},{y:#x})"),
        }
    }
}

pub fn on_curve(k: &FieldSpec, p: EPoint) -> bool {
    match p {
        EPoint::Infinity => true,
        EPoint::Affine { x, y } => {
            x >> k.degree() == 0
                && y >> k.degree() == 0
                && k.square(y) ^ y == k.mul(k.square(x), x) ^ x
        }
    }
}

fn check(k: &FieldSpec, p: EPoint) -> Result<()> {
    if on_curve(k, p) {
        Ok(())
    } else {
        Err(Error::NotOnCurve(p.to_string()))
    }
}

pub fn neg(p: EPoint) -> EPoint {
    match p {
        EPoint::Infinity => p,
        EPoint::Affine { x, y } => EPoint::Affine { x, y: y ^ 1 },
    }
}

/// Chord-tangent addition on `y^2 + a3·y = x^3 + a4·x` with `a3 = a4 = 1`.
pub fn ec_add(k: &FieldSpec, p: EPoint, q: EPoint) -> Result<EPoint> {
    check(k, p)?;
    check(k, q)?;
    Ok(add_unchecked(k, p, q))
}

fn add_unchecked(k: &FieldSpec, p: EPoint, q: EPoint) -> EPoint {
    let (EPoint::Affine { x: x1, y: y1 }, EPoint::Affine { x: x2, y: y2 }) = (p, q) else {
        return if p == EPoint::Infinity { q } else { p };
    };
    let lambda = if x1 != x2 {
        // chord
        k.div(y1 ^ y2, x1 ^ x2).unwrap()
    } else if y1 ^ y2 == 1 {
        return EPoint::Infinity;
    } else {
        // tangent: (3x^2 + a4) / (2y + a3) = x^2 + 1
        k.square(x1) ^ 1
    };
    let x3 = k.square(lambda) ^ x1 ^ x2;
    let y3 = k.mul(lambda, x1 ^ x3) ^ y1 ^ 1;
    EPoint::Affine { x: x3, y: y3 }
}

pub fn scalar_mul(k: &FieldSpec, p: EPoint, n: i64) -> EPoint {
    let mut base = if n < 0 { neg(p) } else { p };
    let mut e = n.unsigned_abs();
    let mut acc = EPoint::Infinity;
    while e > 0 {
        if e & 1 == 1 {
            acc = add_unchecked(k, acc, base);
        }
        base = add_unchecked(k, base, base);
        e >>= 1;
    }
    acc
}

/// `(x, y) -> (x + 1, y + x + 1)`.
pub fn iota(k: &FieldSpec, p: EPoint) -> Result<EPoint> {
    check(k, p)?;
    Ok(match p {
        EPoint::Infinity => p,
        EPoint::Affine { x, y } => EPoint::Affine { x: x ^ 1, y: y ^ x ^ 1 },
    })
}

/// The 2-power Frobenius.
pub fn frobenius(k: &FieldSpec, p: EPoint) -> EPoint {
    match p {
        EPoint::Infinity => p,
        EPoint::Affine { x, y } => EPoint::Affine { x: k.square(x), y: k.square(y) },
    }
}

/// All points of `E(GF(2^n))` for the field `k`.
pub fn points(k: &FieldSpec) -> Vec<EPoint> {
    let mut out = vec![EPoint::Infinity];
    for x in k.elements() {
        if let Some((y0, y1)) = k.solve_wp(k.mul(k.square(x), x) ^ x) {
            out.push(EPoint::Affine { x, y: y0 });
            out.push(EPoint::Affine { x, y: y1 });
        }
    }
    out
}

/// Checks `F(P) = -P + iota(P)` on every point over `GF(2^n)`, `n <= 12`.
///
/// With the standard group law this is false: on `E(F2)` Frobenius is the
/// identity while `iota(P) = -2P`. See [`frobenius_relation_holds`].
pub fn frobenius_identity_check(n: u32) -> Result<bool> {
    frobenius_relation_holds(n, 1)
}

/// Checks `F(P) = -P + sign·iota(P)` on every point over `GF(2^n)`.
/// Both signs satisfy `F^2 + 2F + 2 = 0`; `sign = -1` is the one that holds.
pub fn frobenius_relation_holds(n: u32, sign: i64) -> Result<bool> {
    if !(1..=12).contains(&n) {
        return Err(Error::DegreeOutOfRange(n));
    }
    let k = FieldSpec::new(n)?;
    for p in points(&k) {
        let ip = iota(&k, p)?;
        let ip = if sign < 0 { neg(ip) } else { ip };
        if frobenius(&k, p) != add_unchecked(&k, neg(p), ip) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `#E(GF(2^n))` by the five cases of `n mod 8`.
pub fn count_closed_form(n: u32) -> u64 {
    assert!((1..63).contains(&n));
    let q = 1u64 << n;
    let m = n / 2;
    match n % 8 {
        0 => q + 1 - (1 << (m + 1)),
        4 => q + 1 + (1 << (m + 1)),
        1 | 7 => q + 1 + (1 << (m + 1)),
        2 | 6 => q + 1,
        _ => q + 1 - (1 << (m + 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x: u32, y: u32) -> EPoint {
        EPoint::Affine { x, y }
    }

    #[test]
    fn group_law_examples() {
        let k = FieldSpec::new(1).unwrap();
        assert_eq!(ec_add(&k, pt(0, 0), EPoint::Infinity).unwrap(), pt(0, 0));
        assert_eq!(ec_add(&k, pt(0, 0), pt(0, 1)).unwrap(), EPoint::Infinity);
        let s = ec_add(&k, pt(0, 0), pt(1, 0)).unwrap();
        assert!(on_curve(&k, s));
        let pts = points(&k);
        assert_eq!(pts.len(), 5);
        for p in pts {
            assert_eq!(scalar_mul(&k, p, 5), EPoint::Infinity);
        }
        assert!(ec_add(&k, pt(1, 1), pt(0, 0)).is_ok());
        assert!(matches!(ec_add(&k, pt(0, 0), pt(1, 3)), Err(Error::NotOnCurve(_))));
    }

    #[test]
    fn iota_examples() {
        let k = FieldSpec::new(1).unwrap();
        assert_eq!(iota(&k, pt(0, 0)).unwrap(), pt(1, 1));
        assert_eq!(iota(&k, EPoint::Infinity).unwrap(), EPoint::Infinity);
        let k5 = FieldSpec::new(5).unwrap();
        for p in points(&k5) {
            assert_eq!(iota(&k5, iota(&k5, p).unwrap()).unwrap(), neg(p));
        }
    }

    #[test]
    fn frobenius_identity() {
        for n in 1..=7 {
            assert!(frobenius_relation_holds(n, -1).unwrap());
            assert!(!frobenius_identity_check(n).unwrap());
        }
        // the smallest witness: F fixes (0,0) but -P + iota(P) = 2P = (1,0)
        let k = FieldSpec::new(1).unwrap();
        let p = pt(0, 0);
        assert_eq!(scalar_mul(&k, p, 2), pt(1, 0));
        assert_eq!(add_unchecked(&k, neg(p), iota(&k, p).unwrap()), pt(1, 0));
        assert_eq!(points(&FieldSpec::new(7).unwrap()).len(), 145);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(count_closed_form(1), 5);
        assert_eq!(count_closed_form(2), 5);
        assert_eq!(count_closed_form(7), 145);
    }

    #[test]
    fn closed_form_matches_enumeration() {
        for n in 1..=12 {
            let k = FieldSpec::new(n).unwrap();
            assert_eq!(count_closed_form(n), points(&k).len() as u64, "n = {n}");
        }
    }

    #[test]
    fn characteristic_equation() {
        // F^2 + 2F + 2 = 0
        for n in 1..=6 {
            let k = FieldSpec::new(n).unwrap();
            for p in points(&k) {
                let f = frobenius(&k, p);
                let lhs = add_unchecked(&k, frobenius(&k, f), scalar_mul(&k, f, 2));
                assert_eq!(add_unchecked(&k, lhs, scalar_mul(&k, p, 2)), EPoint::Infinity);
            }
        }
    }

    proptest! {
        #[test]
        fn associativity(n in 1u32..=8, i in any::<usize>(), j in any::<usize>(), l in any::<usize>()) {
            let k = FieldSpec::new(n).unwrap();
            let pts = points(&k);
            let (a, b, c) = (pts[i % pts.len()], pts[j % pts.len()], pts[l % pts.len()]);
            let lhs = add_unchecked(&k, add_unchecked(&k, a, b), c);
            let rhs = add_unchecked(&k, a, add_unchecked(&k, b, c));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(add_unchecked(&k, a, b), add_unchecked(&k, b, a));
        }
    }
}
