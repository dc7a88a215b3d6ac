//! Univariate polynomials over a binary field, just enough for root finding.

use crate::gf2k::FieldSpec;
use crate::poly2::Poly2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FieldPoly<'a> {
    field: &'a FieldSpec,
    /// Coefficients, constant term first, no trailing zeros.
    coeffs: Vec<u32>,
}

impl<'a> FieldPoly<'a> {
    pub fn new(field: &'a FieldSpec, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FieldPoly { field, coeffs }
    }

    pub fn from_poly2(field: &'a FieldSpec, p: &Poly2) -> Self {
        let coeffs = (0..=p.deg().max(-1)).filter(|&i| i >= 0).map(|i| p.coeff(i as usize) as u32).collect();
        Self::new(field, coeffs)
    }

    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| self.coeffs.get(i).copied().unwrap_or(0) ^ other.coeffs.get(i).copied().unwrap_or(0))
            .collect();
        Self::new(self.field, c)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.field, Vec::new());
        }
        let mut c = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] ^= self.field.mul(a, b);
            }
        }
        Self::new(self.field, c)
    }

    fn divrem(&self, g: &Self) -> (Self, Self) {
        assert!(!g.is_zero());
        let k = self.field;
        let lead_inv = k.inv(*g.coeffs.last().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        let dg = g.coeffs.len() - 1;
        let mut q = vec![0u32; r.len().saturating_sub(dg)];
        while r.len() > dg && !r.is_empty() {
            let top = r.len() - 1;
            let c = k.mul(r[top], lead_inv);
            if c != 0 {
                let s = top - dg;
                q[s] = c;
                for (j, &b) in g.coeffs.iter().enumerate() {
                    r[s + j] ^= k.mul(c, b);
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (Self::new(k, q), Self::new(k, r))
    }

    fn rem(&self, g: &Self) -> Self {
        self.divrem(g).1
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = self.field.inv(lc).unwrap();
                Self::new(self.field, self.coeffs.iter().map(|&c| self.field.mul(c, inv)).collect())
            }
        }
    }

    fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn x(field: &'a FieldSpec) -> Self {
        Self::new(field, vec![0, 1])
    }

    /// Distinct roots in the field, sorted.
    pub fn roots(&self) -> Vec<u32> {
        if self.deg() < 1 {
            return Vec::new();
        }
        let k = self.field;
        // product of the distinct linear factors: gcd(f, x^(2^n) - x)
        let f = self.monic();
        let x = Self::x(k);
        let mut h = x.rem(&f);
        for _ in 0..k.degree() {
            h = h.mul(&h).rem(&f);
        }
        let g = h.add(&x).gcd(&f);
        let mut out = Vec::new();
        self.split(&g, &mut out);
        out.sort_unstable();
        out
    }

    /// Splits a product of distinct linear factors with trace maps `Tr(beta x)`,
    /// beta running over the polynomial basis. Two distinct roots are always
    /// separated by some basis element since the trace form is nondegenerate.
    fn split(&self, g: &Self, out: &mut Vec<u32>) {
        let k = self.field;
        match g.deg() {
            d if d < 1 => return,
            1 => {
                // monic x + c
                out.push(g.coeffs[0]);
                return;
            }
            _ => {}
        }
        for i in 0..k.degree() {
            let beta = k.reduce(1u64 << i);
            let bx = Self::new(k, vec![0, beta]);
            let mut t = bx.rem(g);
            let mut acc = t.clone();
            for _ in 1..k.degree() {
                t = t.mul(&t).rem(g);
                acc = acc.add(&t);
            }
            let a = acc.gcd(g);
            if a.deg() >= 1 && a.deg() < g.deg() {
                let b = g.divrem(&a).0.monic();
                self.split(&a, out);
                self.split(&b, out);
                return;
            }
        }
        unreachable!("distinct roots are always separated");
    }
}
