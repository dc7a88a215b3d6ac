//! Counting degree-one places of `X_R` over GF(2^n), where `X_R` is the
//! abelian cover of a base curve cut out by `w_j^2 + w_j = f_j` for a basis
//! `f_1..f_r` of the characters in `R`. With no functions this counts the
//! base curve itself.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2k::FieldSpec;
use crate::poly2::Poly2;

use super::curve::BaseCurve;
use super::elem::FFElem;
use super::local::{Center, Chart, Fibre, XPoint};

pub(crate) const MAX_N: u32 = 24;

struct Kernel<'a> {
    curve: &'a BaseCurve,
    field: FieldSpec,
    /// Basis functions of the character group.
    gens: &'a [FFElem],
    /// Every nonzero character as a function, indexed by mask - 1.
    chars: Vec<FFElem>,
}

impl Kernel<'_> {
    /// Contribution of the points above a finite `x0` or infinity.
    fn fibre(&self, center: Center) -> u64 {
        let k = &self.field;
        if let Center::Finite(x0) = center {
            let m = self.curve.r_den().eval(k, x0);
            let regular = m != 0 && self.gens.iter().all(|f| f.den().eval(k, x0) != 0);
            if regular {
                let r0 = k.div(self.curve.r_num().eval(k, x0), m).unwrap();
                let Some((y0, y1)) = k.solve_wp(r0) else { return 0 };
                let full = 1u64 << self.gens.len();
                return [y0, y1]
                    .iter()
                    .map(|&y| {
                        let ok = self.gens.iter().all(|f| {
                            let val = f.u().eval(k, x0) ^ k.mul(f.v().eval(k, x0), y);
                            let c = f.den().eval(k, x0);
                            k.trace(k.div(val, c).unwrap()) == 0
                        });
                        if ok { full } else { 0 }
                    })
                    .sum();
            }
        }
        let xp = XPoint::new(k.clone(), center);
        let charts = match Chart::fibre(self.curve.r_num(), self.curve.r_den(), &xp) {
            Fibre::Inert => return 0,
            Fibre::Ramified(c) => vec![c],
            Fibre::Split([a, b]) => vec![a, b],
        };
        charts.iter().map(|ch| self.local(ch)).sum()
    }

    /// `|U_Q|` if every unramified character has trivial symbol, else 0.
    fn local(&self, ch: &Chart) -> u64 {
        let k = &self.field;
        let mut size = 1u64;
        for f in &self.chars {
            let red = if f.is_zero() { continue } else { ch.reduce(f) };
            if red.order == 0 {
                if k.trace(red.residue) != 0 {
                    return 0;
                }
                size += 1;
            }
        }
        size
    }
}

pub(crate) fn count_cover_points(
    curve: &BaseCurve,
    gens: &[FFElem],
    n: u32,
    threads: usize,
) -> Result<u64> {
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::DegreeOutOfRange(n));
    }
    let field = FieldSpec::new(n)?;
    let r = gens.len();
    let chars = (1u64..(1 << r))
        .map(|mask| {
            (0..r).filter(|i| mask >> i & 1 == 1).fold(FFElem::zero(), |acc, i| acc.add(&gens[i]))
        })
        .collect();
    let kern = Kernel { curve, field, gens, chars };
    let size = 1u64 << n;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let finite: u64 = pool.install(|| {
        (0..size).into_par_iter().map(|x0| kern.fibre(Center::Finite(x0 as u32))).sum()
    });
    Ok(finite + kern.fibre(Center::Infinity))
}

/// Number of degree-one places of the base curve over GF(2^n), `n <= 24`.
pub fn count_base_points(curve: &BaseCurve, n: u32) -> Result<u64> {
    count_cover_points(curve, &[], n, 1)
}

/// Exhaustive count of affine solutions `(x, y)` with `r` regular at `x`,
/// for cross-checking the place-based count on small fields.
pub fn affine_points_brute_force(num: &Poly2, den: &Poly2, field: &FieldSpec) -> u64 {
    let mut n = 0;
    for x in field.elements() {
        let m = den.eval(field, x);
        if m == 0 {
            continue;
        }
        let r = field.div(num.eval(field, x), m).unwrap();
        n += field.elements().filter(|&y| field.mul(y, y) ^ y == r).count() as u64;
    }
    n
}
