//! Truncated Laurent series over a binary field with absolute precision
//! tracking. A series knows its coefficients exactly for every exponent
//! below `prec`; exact Laurent polynomials carry `prec = INF`.

use crate::gf2k::FieldSpec;

pub(crate) const INF: i64 = 1 << 40;

#[inline]
fn sat(a: i64, b: i64) -> i64 {
    (a + b).min(INF)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Laurent {
    /// Exponent of `coeffs[0]`.
    pub start: i64,
    /// Coefficients from `start`; missing trailing entries are zero up to `prec`.
    pub coeffs: Vec<u32>,
    pub prec: i64,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { start: 0, coeffs: Vec::new(), prec: INF }
    }

    pub fn constant(c: u32) -> Self {
        Laurent { start: 0, coeffs: vec![c], prec: INF }.normalized()
    }

    pub fn monomial(c: u32, e: i64) -> Self {
        Laurent { start: e, coeffs: vec![c], prec: INF }.normalized()
    }

    /// Exact series from explicit coefficients starting at `start`.
    pub fn exact(start: i64, coeffs: Vec<u32>) -> Self {
        Laurent { start, coeffs, prec: INF }.normalized()
    }

    /// Drops leading and trailing zeros.
    pub fn normalized(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|&c| c != 0);
        match lead {
            Some(i) if i > 0 => {
                self.coeffs.drain(..i);
                self.start += i as i64;
            }
            None => {
                self.coeffs.clear();
                self.start = self.start.min(self.prec);
            }
            _ => {}
        }
        self
    }

    pub fn coeff(&self, e: i64) -> u32 {
        debug_assert!(e < self.prec, "coefficient at {e} beyond precision {}", self.prec);
        if e < self.start {
            return 0;
        }
        self.coeffs.get((e - self.start) as usize).copied().unwrap_or(0)
    }

    /// Exponent of the leading nonzero term, if one is known.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|&c| c != 0).map(|i| self.start + i as i64)
    }

    /// Lower bound for the valuation.
    pub fn low(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.prec >= INF && self.valuation().is_none()
    }

    pub fn truncate(mut self, cap: i64) -> Self {
        if cap < self.prec {
            self.prec = cap;
            let keep = (cap - self.start).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        self.normalized()
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let prec = self.prec.min(other.prec);
        let lo = self.start.min(other.start);
        let hi = (self.start + self.coeffs.len() as i64)
            .max(other.start + other.coeffs.len() as i64)
            .min(prec);
        if hi <= lo {
            return Laurent { start: lo.min(prec), coeffs: Vec::new(), prec }.normalized();
        }
        let coeffs = (lo..hi)
            .map(|e| {
                let a = if e >= self.start { self.coeffs.get((e - self.start) as usize).copied().unwrap_or(0) } else { 0 };
                let b = if e >= other.start { other.coeffs.get((e - other.start) as usize).copied().unwrap_or(0) } else { 0 };
                a ^ b
            })
            .collect();
        Laurent { start: lo, coeffs, prec }.normalized()
    }

    /// Multiplication by `s^e`.
    pub fn shift(&self, e: i64) -> Laurent {
        Laurent {
            start: self.start + e,
            coeffs: self.coeffs.clone(),
            prec: sat(self.prec, e),
        }
    }

    pub fn mul(&self, k: &FieldSpec, other: &Laurent, cap: i64) -> Laurent {
        let prec = sat(self.prec, other.low()).min(sat(other.prec, self.low())).min(cap);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            let start = sat(self.low(), other.low()).min(prec);
            return Laurent { start, coeffs: Vec::new(), prec };
        }
        let start = self.start + other.start;
        let len = ((prec - start).max(0) as usize)
            .min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut coeffs = vec![0u32; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 || i >= len {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] ^= k.mul(a, b);
            }
        }
        Laurent { start, coeffs, prec }.normalized()
    }

    /// Multiplicative inverse; `None` when no nonzero term is known.
    pub fn inv(&self, k: &FieldSpec, cap: i64) -> Option<Laurent> {
        let v = self.valuation()?;
        let rel = if self.prec >= INF { INF } else { self.prec - v };
        let prec = sat(-v, rel).min(cap);
        let n = (prec + v).max(0) as usize;
        let a0 = self.coeff(v);
        let a0inv = k.inv(a0).unwrap();
        let off = (v - self.start) as usize;
        let a: Vec<u32> = self.coeffs[off..].to_vec();
        let mut b = vec![0u32; n];
        for i in 0..n {
            let mut acc = if i == 0 { 1 } else { 0 };
            for j in 1..=i.min(a.len().saturating_sub(1)) {
                acc ^= k.mul(a[j], b[i - j]);
            }
            b[i] = k.mul(acc, a0inv);
        }
        Some(Laurent { start: -v, coeffs: b, prec }.normalized())
    }

    pub fn pow(&self, k: &FieldSpec, e: u32, cap: i64) -> Laurent {
        let mut acc = Laurent::constant(1);
        for _ in 0..e {
            acc = acc.mul(k, self, cap);
        }
        acc
    }

    /// Formal derivative d/ds; in characteristic 2 only odd exponents survive.
    pub fn derivative(&self) -> Laurent {
        let coeffs: Vec<u32> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| if (self.start + i as i64).rem_euclid(2) == 1 { c } else { 0 })
            .collect();
        Laurent { start: self.start - 1, coeffs, prec: self.prec.saturating_sub(1).min(INF) }
            .normalized()
    }
}
