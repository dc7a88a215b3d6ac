//! Dense polynomials over F2, packed 64 coefficients per word.
//!
//! Besides ring arithmetic this module carries the irreducibility test
//! (Rabin), the full factorization (squarefree decomposition, distinct
//! degree, then trace splitting) and root finding in binary fields.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fieldpoly::FieldPoly;
use crate::gf2k::FieldSpec;

/// A polynomial over F2. Bit `i` of the packed words is the coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    limbs: Vec<u64>,
}

/// Spreads the 32 bits of `v` to the even bit positions of a u64.
fn spread(v: u32) -> u64 {
    let mut x = v as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// Inverse of [`spread`] on the even bits.
fn compact(v: u64) -> u32 {
    let mut x = v & 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x >> 4)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x >> 8)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x >> 16)) & 0x0000_0000_FFFF_FFFF;
    x as u32
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly2 { limbs: vec![1] }
    }

    pub fn x() -> Self {
        Poly2 { limbs: vec![2] }
    }

    pub fn from_u64(bits: u64) -> Self {
        let mut p = Poly2 { limbs: vec![bits] };
        p.trim();
        p
    }

    pub fn monomial(k: usize) -> Self {
        let mut p = Poly2 { limbs: vec![0; k / 64 + 1] };
        p.limbs[k / 64] = 1 << (k % 64);
        p
    }

    /// Builds `sum x^e` over the given exponents; repeated exponents cancel.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Poly2::zero();
        for &e in exps {
            p.flip(e);
        }
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    fn flip(&mut self, i: usize) {
        if self.limbs.len() <= i / 64 {
            self.limbs.resize(i / 64 + 1, 0);
        }
        self.limbs[i / 64] ^= 1 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs.len() == 1 && self.limbs[0] == 1
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn deg(&self) -> i64 {
        match self.limbs.last() {
            None => -1,
            Some(&top) => (self.limbs.len() as i64 - 1) * 64 + 63 - top.leading_zeros() as i64,
        }
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    /// Exponents with nonzero coefficient, highest first.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for i in (0..=self.deg().max(-1)).rev() {
            if i >= 0 && self.coeff(i as usize) {
                out.push(i as usize);
            }
        }
        out
    }

    pub fn weight(&self) -> u32 {
        self.limbs.iter().map(|w| w.count_ones()).sum()
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let (long, short) = if self.limbs.len() >= other.limbs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut limbs = long.limbs.clone();
        for (a, b) in limbs.iter_mut().zip(&short.limbs) {
            *a ^= b;
        }
        let mut p = Poly2 { limbs };
        p.trim();
        p
    }

    fn xor_shifted(acc: &mut Vec<u64>, src: &[u64], shift: usize) {
        let (q, r) = (shift / 64, shift % 64);
        let need = src.len() + q + 1;
        if acc.len() < need {
            acc.resize(need, 0);
        }
        for (j, &w) in src.iter().enumerate() {
            acc[j + q] ^= w << r;
            if r > 0 {
                acc[j + q + 1] ^= w >> (64 - r);
            }
        }
    }

    pub fn shl(&self, k: usize) -> Poly2 {
        if self.is_zero() {
            return Poly2::zero();
        }
        let mut limbs = Vec::new();
        Self::xor_shifted(&mut limbs, &self.limbs, k);
        let mut p = Poly2 { limbs };
        p.trim();
        p
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        if self.is_zero() || other.is_zero() {
            return Poly2::zero();
        }
        let (few, many) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Vec::with_capacity(few.limbs.len() + many.limbs.len() + 1);
        for (wi, &w) in few.limbs.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Self::xor_shifted(&mut acc, &many.limbs, wi * 64 + b);
            }
        }
        let mut p = Poly2 { limbs: acc };
        p.trim();
        p
    }

    pub fn square(&self) -> Poly2 {
        let mut limbs = Vec::with_capacity(2 * self.limbs.len());
        for &w in &self.limbs {
            limbs.push(spread(w as u32));
            limbs.push(spread((w >> 32) as u32));
        }
        let mut p = Poly2 { limbs };
        p.trim();
        p
    }

    /// The square root when every odd coefficient vanishes.
    pub fn sqrt(&self) -> Option<Poly2> {
        if self.limbs.iter().any(|w| w & 0xAAAA_AAAA_AAAA_AAAA != 0) {
            return None;
        }
        let mut limbs = Vec::with_capacity(self.limbs.len() / 2 + 1);
        for pair in self.limbs.chunks(2) {
            let lo = compact(pair[0]) as u64;
            let hi = pair.get(1).map_or(0, |&w| compact(w) as u64);
            limbs.push(lo | (hi << 32));
        }
        let mut p = Poly2 { limbs };
        p.trim();
        Some(p)
    }

    pub fn pow(&self, mut e: u64) -> Poly2 {
        let mut base = self.clone();
        let mut acc = Poly2::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn divrem(&self, g: &Poly2) -> Result<(Poly2, Poly2)> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dg = g.deg();
        let mut r = self.clone();
        let mut q = Poly2::zero();
        while r.deg() >= dg {
            let s = (r.deg() - dg) as usize;
            Self::xor_shifted(&mut r.limbs, &g.limbs, s);
            r.trim();
            q.flip(s);
        }
        q.trim();
        Ok((q, r))
    }

    /// Remainder modulo a nonzero `g`.
    pub fn rem(&self, g: &Poly2) -> Poly2 {
        self.divrem(g).expect("modulus must be nonzero").1
    }

    /// Quotient by a divisor that is known to divide exactly.
    pub fn div_exact(&self, g: &Poly2) -> Poly2 {
        let (q, r) = self.divrem(g).expect("divisor must be nonzero");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly2) -> Poly2 {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn mulmod(&self, other: &Poly2, m: &Poly2) -> Poly2 {
        self.mul(other).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Poly2) -> Poly2 {
        let mut base = self.rem(m);
        let mut acc = Poly2::one().rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.square().rem(m);
            }
        }
        acc
    }

    /// Formal derivative; in characteristic 2 only odd exponents survive.
    pub fn derivative(&self) -> Poly2 {
        let mut limbs: Vec<u64> = Vec::with_capacity(self.limbs.len());
        for (i, &w) in self.limbs.iter().enumerate() {
            let odd = w & 0xAAAA_AAAA_AAAA_AAAA;
            let next = self.limbs.get(i + 1).copied().unwrap_or(0) & 0xAAAA_AAAA_AAAA_AAAA;
            limbs.push((odd >> 1) | (next << 63));
        }
        let mut p = Poly2 { limbs };
        p.trim();
        p
    }

    /// Evaluates at an element of `field` by Horner's rule.
    pub fn eval(&self, field: &FieldSpec, a: u32) -> u32 {
        let mut acc = 0u32;
        for i in (0..=self.deg()).rev() {
            acc = field.mul(acc, a);
            if self.coeff(i as usize) {
                acc ^= 1;
            }
        }
        acc
    }

    /// Order of vanishing at the irreducible `p`. `self` must be nonzero.
    pub fn valuation_at(&self, p: &Poly2) -> u32 {
        debug_assert!(!self.is_zero());
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(p).expect("nonzero place polynomial");
            if !r.is_zero() {
                return k;
            }
            cur = q;
            k += 1;
        }
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = self.deg();
        if n < 1 {
            return Err(Error::ConstantPolynomial(self.to_string()));
        }
        if n == 1 {
            return Ok(true);
        }
        let n = n as u64;
        let x = Poly2::x();
        let frob = |k: u64| {
            let mut h = x.clone();
            for _ in 0..k {
                h = h.square().rem(self);
            }
            h
        };
        if frob(n) != x.rem(self) {
            return Ok(false);
        }
        for q in prime_divisors(n) {
            let h = frob(n / q).add(&x);
            if !h.gcd(self).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Complete factorization into irreducibles with multiplicities, sorted by
    /// degree and then lexicographically.
    pub fn factorize(&self) -> Result<Vec<(Poly2, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut sqf = Vec::new();
        squarefree_parts(self, 1, &mut sqf);
        let mut out: Vec<(Poly2, u32)> = Vec::new();
        for (part, mult) in sqf {
            for (block, d) in distinct_degree(&part) {
                let mut pieces = Vec::new();
                equal_degree(&block, d, &mut pieces);
                for f in pieces {
                    match out.iter_mut().find(|(g, _)| *g == f) {
                        Some(entry) => entry.1 += mult,
                        None => out.push((f, mult)),
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Distinct roots in GF(2^n), sorted by their packed representation.
    pub fn roots_in(&self, field: &FieldSpec) -> Vec<u32> {
        if self.is_zero() {
            return Vec::new();
        }
        FieldPoly::from_poly2(field, self).roots()
    }

    pub fn to_string_var(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            })
            .collect();
        terms.join("+")
    }

    /// Parses the `t^7+t+1` syntax. Any single ASCII letter can be the variable
    /// but it must be used consistently.
    pub fn parse(text: &str) -> Result<Poly2> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut var: Option<u8> = None;
        let mut p = Poly2::zero();
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(Error::parse(pos, "empty polynomial"));
        }
        loop {
            skip_ws(&mut pos);
            let start = pos;
            let exp = match bytes.get(pos) {
                Some(c) if c.is_ascii_digit() => {
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    match &text[start..pos] {
                        "1" => Some(0),
                        "0" => None,
                        other => {
                            return Err(Error::parse(
                                start,
                                format!("coefficient {other} is not in F2"),
                            ))
                        }
                    }
                }
                Some(&c) if c.is_ascii_alphabetic() => {
                    match var {
                        None => var = Some(c),
                        Some(v) if v != c => {
                            return Err(Error::parse(
                                pos,
                                format!("variable '{}' after '{}'", c as char, v as char),
                            ))
                        }
                        _ => {}
                    }
                    pos += 1;
                    skip_ws(&mut pos);
                    if bytes.get(pos) == Some(&b'^') {
                        pos += 1;
                        skip_ws(&mut pos);
                        let es = pos;
                        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        if es == pos {
                            return Err(Error::parse(pos, "expected exponent after '^'"));
                        }
                        let e: usize = text[es..pos]
                            .parse()
                            .map_err(|_| Error::parse(es, "exponent too large"))?;
                        if e > 1 << 20 {
                            return Err(Error::parse(es, "exponent too large"));
                        }
                        Some(e)
                    } else {
                        Some(1)
                    }
                }
                Some(&c) => {
                    return Err(Error::parse(pos, format!("unexpected '{}'", c as char)))
                }
                None => return Err(Error::parse(pos, "expected a term")),
            };
            if let Some(e) = exp {
                p.flip(e);
            }
            skip_ws(&mut pos);
            match bytes.get(pos) {
                None => break,
                Some(b'+') => pos += 1,
                Some(&c) => {
                    return Err(Error::parse(pos, format!("unexpected '{}'", c as char)))
                }
            }
        }
        p.trim();
        Ok(p)
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn squarefree_parts(f: &Poly2, mult: u32, out: &mut Vec<(Poly2, u32)>) {
    if f.deg() <= 0 {
        return;
    }
    let d = f.derivative();
    if d.is_zero() {
        let root = f.sqrt().expect("zero derivative implies a square");
        squarefree_parts(&root, 2 * mult, out);
        return;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.deg() > 0 {
            out.push((z, i * mult));
        }
        i += 1;
        w = y.clone();
        c = c.div_exact(&y);
    }
    if c.deg() > 0 {
        let root = c.sqrt().expect("leftover cofactor is a square");
        squarefree_parts(&root, 2 * mult, out);
    }
}

/// Splits a squarefree polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &Poly2) -> Vec<(Poly2, u32)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = Poly2::x();
    let mut h = x.clone();
    let mut d = 1u32;
    while 2 * d as i64 <= rest.deg() {
        h = h.square().rem(&rest);
        let g = h.add(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let dr = rest.deg() as u32;
        out.push((rest, dr));
    }
    out
}

/// Trace splitting of a product of distinct irreducibles of degree `d`.
fn equal_degree(f: &Poly2, d: u32, out: &mut Vec<Poly2>) {
    if f.deg() == d as i64 {
        out.push(f.clone());
        return;
    }
    let mut seed = 2u64;
    loop {
        let a = Poly2::from_u64(seed).rem(f);
        seed += 1;
        let mut t = a.clone();
        let mut acc = a;
        for _ in 1..d {
            t = t.square().rem(f);
            acc = acc.add(&t);
        }
        let g = acc.gcd(f);
        if g.deg() > 0 && g.deg() < f.deg() {
            let other = f.div_exact(&g);
            equal_degree(&g, d, out);
            equal_degree(&other, d, out);
            return;
        }
    }
}

impl Ord for Poly2 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs
            .len()
            .cmp(&other.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for Poly2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var('x'))
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

impl FromStr for Poly2 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Poly2::parse(s)
    }
}

impl From<u64> for Poly2 {
    fn from(bits: u64) -> Self {
        Poly2::from_u64(bits)
    }
}
