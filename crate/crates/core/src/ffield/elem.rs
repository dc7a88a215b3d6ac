use std::fmt;

use crate::error::{Error, Result};
use crate::poly2::Poly2;

/// An element `(u(x) + v(x)·y) / den(x)` of the function field of a base
/// curve. The representation is canonical: `den` is nonzero and
/// `gcd(u, v, den) = 1`, so equality of values is equality of structs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FFElem {
    u: Poly2,
    v: Poly2,
    den: Poly2,
}

impl FFElem {
    pub fn new(u: Poly2, v: Poly2, den: Poly2) -> Result<FFElem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(u, v, den))
    }

    pub(crate) fn canonical(u: Poly2, v: Poly2, den: Poly2) -> FFElem {
        let g = u.gcd(&v).gcd(&den);
        if g.is_one() {
            FFElem { u, v, den }
        } else {
            FFElem { u: u.div_exact(&g), v: v.div_exact(&g), den: den.div_exact(&g) }
        }
    }

    /// Parses the three polynomial strings of the JSON form.
    pub fn parse(u: &str, v: &str, den: &str) -> Result<FFElem> {
        FFElem::new(Poly2::parse(u)?, Poly2::parse(v)?, Poly2::parse(den)?)
    }

    pub fn zero() -> FFElem {
        FFElem { u: Poly2::zero(), v: Poly2::zero(), den: Poly2::one() }
    }

    pub fn one() -> FFElem {
        Self::from_poly(Poly2::one())
    }

    pub fn x() -> FFElem {
        Self::from_poly(Poly2::x())
    }

    pub fn y() -> FFElem {
        FFElem { u: Poly2::zero(), v: Poly2::one(), den: Poly2::one() }
    }

    pub fn from_poly(p: Poly2) -> FFElem {
        FFElem { u: p, v: Poly2::zero(), den: Poly2::one() }
    }

    pub fn from_rational(num: Poly2, den: Poly2) -> Result<FFElem> {
        FFElem::new(num, Poly2::zero(), den)
    }

    pub fn u(&self) -> &Poly2 {
        &self.u
    }

    pub fn v(&self) -> &Poly2 {
        &self.v
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.v.is_zero() && self.u.is_one() && self.den.is_one()
    }

    /// True when the element lies in F2(x).
    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn add(&self, other: &FFElem) -> FFElem {
        if self.den == other.den {
            return Self::canonical(self.u.add(&other.u), self.v.add(&other.v), self.den.clone());
        }
        let u = self.u.mul(&other.den).add(&other.u.mul(&self.den));
        let v = self.v.mul(&other.den).add(&other.v.mul(&self.den));
        Self::canonical(u, v, self.den.mul(&other.den))
    }

    /// The Galois conjugate under `y -> y + 1`.
    pub fn conj(&self) -> FFElem {
        FFElem { u: self.u.add(&self.v), v: self.v.clone(), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly2) -> FFElem {
        Self::canonical(self.u.mul(p), self.v.mul(p), self.den.clone())
    }

    pub fn div_poly(&self, p: &Poly2) -> Result<FFElem> {
        if p.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.u.clone(), self.v.clone(), self.den.mul(p)))
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.u.is_zero(), self.v.is_zero()) {
            (true, true) => return write!(f, "0"),
            (_, true) => format!("{}", self.u),
            (true, false) if self.v.is_one() => "y".to_string(),
            (true, false) => format!("({})*y", self.v),
            (false, false) if self.v.is_one() => format!("y+{}", self.u),
            (false, false) => format!("({})*y+{}", self.v, self.u),
        };
        if self.den.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({})", self.den)
        }
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FFElem({self})")
    }
}
