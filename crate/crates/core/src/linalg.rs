//! Dense linear algebra over F2 on packed bit vectors.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> BitVec {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_bools(bits: &[bool]) -> BitVec {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "[{s}]")
    }
}

/// A subspace of F2^n kept as a fully reduced row echelon basis, rows
/// sorted by pivot column (the first nonzero entry).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<'a>(ncols: usize, rows: impl IntoIterator<Item = &'a BitVec>) -> Echelon {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing pivot columns.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(r);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let v = self.reduce(&v);
        let Some(p) = v.first_one() else { return false };
        for r in self.rows.iter_mut() {
            if r.get(p) {
                r.xor_assign(&v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    /// Coordinates of `v` in the row basis, if `v` is in the span.
    pub fn coordinates(&self, v: &BitVec) -> Option<Vec<bool>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v.get(p)).collect())
    }

    /// Kernel of the linear map whose matrix has these rows, as vectors of
    /// length `ncols`, in reduced echelon form.
    pub fn kernel(&self) -> Echelon {
        let mut k = Echelon::new(self.ncols);
        for free in (0..self.ncols).filter(|c| !self.pivots.contains(c)) {
            let mut v = BitVec::zeros(self.ncols);
            v.set(free, true);
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                if r.get(free) {
                    v.set(p, true);
                }
            }
            k.insert(v);
        }
        k
    }
}
