//! Binary fields GF(2^n) = F2[t]/(m(t)) for 1 <= n <= 32.
//!
//! Elements are packed into a `u32`; bit `i` is the coefficient of `t^i`.
//! The raw arithmetic lives on [`FieldSpec`] and works on bare `u32` values,
//! which is what the enumeration kernels use. [`FieldElement`] wraps a value
//! together with its field for the checked public API.

use std::fmt;
use std::ops::{Add, Mul};

use crate::error::{Error, Result};
use crate::poly2::Poly2;

/// A binary field given by an irreducible modulus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    degree: u32,
    /// Full modulus including the `t^degree` term.
    modulus: u64,
}

/// Operation selector for [`field_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Div,
}

/// Carry-less product of two words of at most 32 bits.
#[inline]
fn clmul(a: u32, b: u32) -> u64 {
    let a = a as u64;
    let mut b = b;
    let mut acc = 0u64;
    let mut shift = 0;
    while b != 0 {
        let tz = b.trailing_zeros();
        shift += tz;
        b >>= tz;
        acc ^= a << shift;
        b >>= 1;
        shift += 1;
    }
    acc
}

impl FieldSpec {
    /// The canonical field of degree `n`: the modulus is the irreducible of
    /// least weight, ties broken by the lexicographically least descending
    /// exponent sequence. For `n = 1` this is `t`.
    pub fn new(n: u32) -> Result<FieldSpec> {
        if !(1..=32).contains(&n) {
            return Err(Error::FieldDegree(n));
        }
        for weight in 1..=(n as usize + 1) {
            let mut candidates = Vec::new();
            let mut lower = Vec::with_capacity(weight - 1);
            lower_exponent_sets(weight - 1, n as usize, &mut lower, &mut candidates);
            candidates.sort();
            for exps in candidates {
                let mut all = vec![n as usize];
                all.extend(exps.iter());
                let p = Poly2::from_exponents(&all);
                if p.is_irreducible()? {
                    return Ok(FieldSpec { degree: n, modulus: p.to_u64().unwrap() });
                }
            }
        }
        unreachable!("every degree has an irreducible polynomial")
    }

    /// A field with an explicit modulus, validated for degree and irreducibility.
    pub fn with_modulus(modulus: &Poly2) -> Result<FieldSpec> {
        let d = modulus.deg();
        if !(1..=32).contains(&d) {
            return Err(Error::FieldDegree(d.max(0) as u32));
        }
        let fac = modulus.factorize()?;
        if fac.len() != 1 || fac[0].1 != 1 {
            return Err(Error::ReducibleModulus {
                modulus: modulus.to_string_var('t'),
                factor: fac[0].0.to_string_var('t'),
            });
        }
        Ok(FieldSpec { degree: d as u32, modulus: modulus.to_u64().unwrap() })
    }

    /// Like [`with_modulus`](Self::with_modulus) but also checks the degree.
    pub fn with_degree_and_modulus(n: u32, modulus: &Poly2) -> Result<FieldSpec> {
        if modulus.deg() != n as i64 {
            return Err(Error::ModulusDegree {
                modulus: modulus.to_string_var('t'),
                expected: n,
                got: modulus.deg(),
            });
        }
        Self::with_modulus(modulus)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> Poly2 {
        Poly2::from_u64(self.modulus)
    }

    pub fn size(&self) -> u64 {
        1u64 << self.degree
    }

    #[inline]
    fn mask(&self) -> u32 {
        if self.degree == 32 {
            u32::MAX
        } else {
            (1u32 << self.degree) - 1
        }
    }

    /// Wraps a packed value, which must be reduced.
    pub fn elem(&self, bits: u32) -> FieldElement<'_> {
        assert!(bits & !self.mask() == 0, "value {bits:#x} not reduced for degree {}", self.degree);
        FieldElement { spec: self, bits }
    }

    /// The class of `t`.
    pub fn generator(&self) -> u32 {
        self.reduce(2)
    }

    /// Reduces a word of degree < 64 modulo the field polynomial.
    #[inline]
    pub fn reduce(&self, mut v: u64) -> u32 {
        let n = self.degree;
        while v >> n != 0 {
            let top = 63 - v.leading_zeros();
            v ^= self.modulus << (top - n);
        }
        v as u32
    }

    /// The image of an F2 polynomial in this field.
    pub fn from_poly(&self, p: &Poly2) -> u32 {
        match p.to_u64() {
            Some(v) => self.reduce(v),
            None => self.reduce(p.rem(&self.modulus()).to_u64().unwrap()),
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(clmul(a, b))
    }

    #[inline]
    pub fn square(&self, a: u32) -> u32 {
        self.reduce(clmul(a, a))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            base = self.square(base);
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm on packed polynomials.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus, a as u64);
        let (mut s0, mut s1) = (0u64, 1u64);
        while r1 != 0 {
            let d1 = 63 - r1.leading_zeros();
            while r0 != 0 && 63 - r0.leading_zeros() >= d1 {
                let shift = 63 - r0.leading_zeros() - d1;
                r0 ^= r1 << shift;
                s0 ^= s1 << shift;
            }
            std::mem::swap(&mut r0, &mut r1);
            std::mem::swap(&mut s0, &mut s1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce(s0))
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^(2^k)`.
    pub fn frobenius(&self, a: u32, k: u32) -> u32 {
        let k = k % self.degree;
        (0..k).fold(a, |acc, _| self.square(acc))
    }

    /// Absolute trace to F2.
    pub fn trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut cur = a;
        for _ in 0..self.degree {
            acc ^= cur;
            cur = self.square(cur);
        }
        debug_assert!(acc <= 1);
        acc
    }

    /// The unique square root, `a^(2^(n-1))`.
    pub fn sqrt(&self, a: u32) -> u32 {
        self.frobenius(a, self.degree - 1)
    }

    /// Half trace `sum_{i <= (n-1)/2} c^(4^i)`; solves `s^2 + s = c` when `n` is odd.
    pub fn half_trace(&self, c: u32) -> u32 {
        let mut acc = 0;
        let mut cur = c;
        for _ in 0..=(self.degree - 1) / 2 {
            acc ^= cur;
            cur = self.square(self.square(cur));
        }
        acc
    }

    /// Both solutions of `s^2 + s = c`, the one with clear constant bit
    /// first, or `None` when the trace of `c` is 1.
    pub fn solve_wp(&self, c: u32) -> Option<(u32, u32)> {
        if self.trace(c) != 0 {
            return None;
        }
        let s = if self.degree % 2 == 1 {
            self.half_trace(c)
        } else {
            self.solve_wp_linear(c)
        };
        debug_assert_eq!(self.square(s) ^ s, c);
        let (a, b) = (s & !1, s | 1);
        Some((a, b))
    }

    /// Gaussian elimination on the F2-linear map `s -> s^2 + s`.
    fn solve_wp_linear(&self, c: u32) -> u32 {
        let n = self.degree as usize;
        // rows: one equation per output bit; columns: input bits, plus rhs at bit n
        let mut rows = vec![0u64; n];
        for j in 0..n {
            let img = self.square(1 << j) ^ (1 << j);
            for (i, row) in rows.iter_mut().enumerate() {
                if img >> i & 1 == 1 {
                    *row |= 1 << j;
                }
            }
        }
        for (i, row) in rows.iter_mut().enumerate() {
            if c >> i & 1 == 1 {
                *row |= 1 << n;
            }
        }
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..n).find(|&i| rows[i] >> col & 1 == 1) else { continue };
            rows.swap(r, p);
            for i in 0..n {
                if i != r && rows[i] >> col & 1 == 1 {
                    rows[i] ^= rows[r];
                }
            }
            pivots.push(col);
            r += 1;
        }
        let mut s = 0u32;
        for (i, &col) in pivots.iter().enumerate() {
            if rows[i] >> n & 1 == 1 {
                s |= 1 << col;
            }
        }
        s
    }

    /// Iterates all field elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..=self.mask()
    }

    pub fn fmt_elem(&self, a: u32) -> String {
        Poly2::from_u64(a as u64).to_string_var('t')
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {}", self.degree, self.modulus().to_string_var('t'))
    }
}

/// Recursively collects descending exponent sets of `size` distinct values below `below`.
fn lower_exponent_sets(
    size: usize,
    below: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if cur.len() == size {
        out.push(cur.clone());
        return;
    }
    let remaining = size - cur.len();
    for e in (remaining - 1..below).rev() {
        cur.push(e);
        lower_exponent_sets(size, e, cur, out);
        cur.pop();
    }
}

/// Canonical field of degree `n`, or one with the supplied modulus.
pub fn make_field(n: u32, modulus: Option<&Poly2>) -> Result<FieldSpec> {
    match modulus {
        None => FieldSpec::new(n),
        Some(m) => FieldSpec::with_degree_and_modulus(n, m),
    }
}

/// An element of a binary field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement<'a> {
    spec: &'a FieldSpec,
    bits: u32,
}

impl<'a> FieldElement<'a> {
    pub fn spec(&self) -> &'a FieldSpec {
        self.spec
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn frobenius(self, k: u32) -> Self {
        self.spec.elem(self.spec.frobenius(self.bits, k))
    }

    pub fn abs_trace(self) -> u32 {
        self.spec.trace(self.bits)
    }

    pub fn sqrt(self) -> Self {
        self.spec.elem(self.spec.sqrt(self.bits))
    }

    pub fn solve_wp(self) -> Option<(Self, Self)> {
        self.spec
            .solve_wp(self.bits)
            .map(|(a, b)| (self.spec.elem(a), self.spec.elem(b)))
    }

    pub fn inv(self) -> Result<Self> {
        self.spec.inv(self.bits).map(|b| self.spec.elem(b)).ok_or(Error::DivisionByZero)
    }
}

/// Checked binary operation.
pub fn field_op<'a>(a: FieldElement<'a>, b: FieldElement<'a>, kind: FieldOp) -> Result<FieldElement<'a>> {
    if a.spec != b.spec {
        return Err(Error::FieldMismatch);
    }
    let s = a.spec;
    let bits = match kind {
        FieldOp::Add => s.add(a.bits, b.bits),
        FieldOp::Mul => s.mul(a.bits, b.bits),
        FieldOp::Div => s.div(a.bits, b.bits).ok_or(Error::DivisionByZero)?,
    };
    Ok(s.elem(bits))
}

impl<'a> Add for FieldElement<'a> {
    type Output = FieldElement<'a>;
    fn add(self, rhs: Self) -> Self {
        field_op(self, rhs, FieldOp::Add).expect("operands from different fields")
    }
}

impl<'a> Mul for FieldElement<'a> {
    type Output = FieldElement<'a>;
    fn mul(self, rhs: Self) -> Self {
        field_op(self, rhs, FieldOp::Mul).expect("operands from different fields")
    }
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec.fmt_elem(self.bits))
    }
}

impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec.fmt_elem(self.bits))
    }
}
