//! Elementary abelian 2-covers of a base curve, `w_i^2 + w_i = f_i`, and the
//! intermediate curves `X_R` indexed by subspaces `R` of `F2^k`.
//!
//! A character is a nonzero mask `S`; it corresponds to `f_S = sum_{i in S} f_i`.
//! Genera come from the conductor-discriminant formula
//! `2g(X_R) - 2 = #R·(2g(C) - 2) + sum_{S in R, S != 0} deg f(S)`,
//! with conductor `f(S) = sum (d_P + 1)·P` over places where `f_S` has odd
//! reduced pole order `d_P`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ffield::local::reduced_order_folded;
use crate::ffield::{count_cover_points, BaseCurve, Divisor, FFElem, Place, XPlace, MAX_N};

/// Ramification data of one character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterData {
    pub mask: u64,
    pub function: FFElem,
    pub conductor: Divisor,
    /// Places with positive reduced pole order and that order.
    pub ramified: Vec<(Place, u32)>,
}

#[derive(Debug)]
pub struct Tower {
    base: BaseCurve,
    covers: Vec<FFElem>,
    chars: OnceLock<Result<Vec<CharacterData>>>,
}

impl Clone for Tower {
    fn clone(&self) -> Tower {
        Tower::new(self.base.clone(), self.covers.clone())
    }
}

impl PartialEq for Tower {
    fn eq(&self, other: &Tower) -> bool {
        self.base == other.base && self.covers == other.covers
    }
}

/// An F2-subspace of `F2^k` given by generator masks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    k: usize,
    /// Reduced echelon basis, pivots at the lowest set bit, sorted by pivot.
    basis: Vec<u64>,
}

impl Subspace {
    pub fn new(k: usize, gens: &[u64]) -> Result<Subspace> {
        if k > 16 {
            return Err(Error::InvalidSubspace(format!("ambient dimension {k} exceeds 16")));
        }
        let mut basis: Vec<u64> = Vec::new();
        for &g in gens {
            if g >> k != 0 {
                return Err(Error::InvalidSubspace(format!("generator {g:#b} has bits beyond k = {k}")));
            }
            let mut v = g;
            for &b in &basis {
                if v >> b.trailing_zeros() & 1 == 1 {
                    v ^= b;
                }
            }
            if v == 0 {
                continue;
            }
            let p = v.trailing_zeros();
            for b in basis.iter_mut() {
                if *b >> p & 1 == 1 {
                    *b ^= v;
                }
            }
            basis.push(v);
            basis.sort_by_key(|b| b.trailing_zeros());
        }
        Ok(Subspace { k, basis })
    }

    pub fn zero(k: usize) -> Subspace {
        Subspace { k, basis: Vec::new() }
    }

    pub fn full(k: usize) -> Subspace {
        Subspace { k, basis: (0..k).map(|i| 1 << i).collect() }
    }

    /// Span of the unit vectors `e_i` for the bits of `mask`.
    pub fn coordinates(k: usize, mask: u64) -> Result<Subspace> {
        let gens: Vec<u64> = (0..64).filter(|i| mask >> i & 1 == 1).map(|i| 1u64 << i).collect();
        Subspace::new(k, &gens)
    }

    /// Parses `7` (coordinate mask), `1,6` or `span(1,6)` (generator masks).
    pub fn parse(k: usize, text: &str) -> Result<Subspace> {
        let t = text.trim();
        let (inner, generators) = match t.strip_prefix("span(").and_then(|r| r.strip_suffix(')')) {
            Some(inner) => (inner, true),
            None => (t, t.contains(',')),
        };
        let mut gens = Vec::new();
        let mut pos = if generators && t.starts_with("span(") { 5 } else { 0 };
        for part in inner.split(',') {
            let s = part.trim();
            let v = if let Some(b) = s.strip_prefix("0b") {
                u64::from_str_radix(b, 2)
            } else {
                s.parse::<u64>()
            };
            let v = v.map_err(|_| Error::parse(pos, format!("bad mask {s:?}")))?;
            gens.push(v);
            pos += part.len() + 1;
        }
        if generators || gens.len() != 1 {
            Subspace::new(k, &gens)
        } else {
            Subspace::coordinates(k, gens[0])
        }
    }

    pub fn ambient(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn size(&self) -> u64 {
        1 << self.dim()
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    /// All elements, zero first, in the order of binary combinations of the basis.
    pub fn elements(&self) -> Vec<u64> {
        (0u64..self.size())
            .map(|m| {
                self.basis.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0, |a, (_, b)| a ^ b)
            })
            .collect()
    }

    pub fn contains(&self, v: u64) -> bool {
        let mut v = v;
        for &b in &self.basis {
            if v >> b.trailing_zeros() & 1 == 1 {
                v ^= b;
            }
        }
        v == 0
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|&b| other.contains(b))
    }

    /// Every subspace of `F2^k`, ordered by dimension then basis.
    pub fn all(k: usize) -> Vec<Subspace> {
        let mut seen: BTreeSet<Subspace> = BTreeSet::new();
        let mut frontier = vec![Subspace::zero(k)];
        seen.insert(Subspace::zero(k));
        while let Some(s) = frontier.pop() {
            for v in 1u64..(1 << k) {
                if !s.contains(v) {
                    let mut g = s.basis.clone();
                    g.push(v);
                    let t = Subspace::new(k, &g).unwrap();
                    if seen.insert(t.clone()) {
                        frontier.push(t);
                    }
                }
            }
        }
        let mut out: Vec<Subspace> = seen.into_iter().collect();
        out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.basis.cmp(&b.basis)));
        out
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut b = self.basis.clone();
        b.sort_unstable();
        let g: Vec<String> = b.iter().map(|b| b.to_string()).collect();
        write!(f, "span({})", g.join(","))
    }
}

/// Candidate places for poles of `f`: over factors of its denominator and
/// of `r_den`, and over infinity.
fn pole_candidates(curve: &BaseCurve, f: &FFElem) -> Result<Vec<Place>> {
    let mut xps: BTreeSet<XPlace> = BTreeSet::new();
    for p in [f.den(), curve.r_den()] {
        if p.deg() > 0 {
            for (q, _) in p.factorize()? {
                xps.insert(XPlace::Finite(q));
            }
        }
    }
    xps.insert(XPlace::Infinity);
    let mut out = Vec::new();
    for xp in xps {
        out.extend(curve.places_over(&xp)?);
    }
    Ok(out)
}

impl Tower {
    pub fn new(base: BaseCurve, covers: Vec<FFElem>) -> Tower {
        Tower { base, covers, chars: OnceLock::new() }
    }

    pub fn base(&self) -> &BaseCurve {
        &self.base
    }

    pub fn covers(&self) -> &[FFElem] {
        &self.covers
    }

    pub fn k(&self) -> usize {
        self.covers.len()
    }

    /// `f_S` for a character mask.
    pub fn function(&self, mask: u64) -> FFElem {
        (0..self.k()).filter(|i| mask >> i & 1 == 1).fold(FFElem::zero(), |a, i| a.add(&self.covers[i]))
    }

    fn compute_chars(&self) -> Result<Vec<CharacterData>> {
        if self.k() > 16 {
            return Err(Error::InvalidSubspace(format!("{} covers exceed 16", self.k())));
        }
        let mut out = Vec::new();
        for mask in 1u64..(1 << self.k()) {
            let f = self.function(mask);
            if f.is_zero() {
                return Err(Error::DependentCharacter { mask });
            }
            let mut ramified = Vec::new();
            let mut conductor = Divisor::new();
            for place in pole_candidates(&self.base, &f)? {
                let d = self.base.wp_reduce_local(&f, &place)?.order;
                if d > 0 {
                    conductor.add_term(place.clone(), d as i64 + 1);
                    ramified.push((place, d));
                }
            }
            if ramified.is_empty() {
                return Err(Error::DependentCharacter { mask });
            }
            out.push(CharacterData { mask, function: f, conductor, ramified });
        }
        Ok(out)
    }

    /// Ramification data for every character, computed once.
    pub fn characters(&self) -> Result<&[CharacterData]> {
        match self.chars.get_or_init(|| self.compute_chars()) {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    pub fn character(&self, mask: u64) -> Result<&CharacterData> {
        if mask == 0 || mask >> self.k() != 0 {
            return Err(Error::InvalidSubspace(format!("character {mask:#b} out of range")));
        }
        Ok(&self.characters()?[mask as usize - 1])
    }
}

/// Accepts the tower iff every character ramifies somewhere; returns the
/// witnessing place (the first ramified one) per character.
pub fn validate_tower(t: &Tower) -> Result<Vec<(u64, Place, u32)>> {
    Ok(t.characters()?
        .iter()
        .map(|c| (c.mask, c.ramified[0].0.clone(), c.ramified[0].1))
        .collect())
}

pub fn conductor(t: &Tower, mask: u64) -> Result<Divisor> {
    Ok(t.character(mask)?.conductor.clone())
}

/// Genus of `X_R` by the conductor-discriminant formula.
pub fn genus(t: &Tower, r: &Subspace) -> Result<u64> {
    check_ambient(t, r)?;
    let gc = t.base().genus() as i64;
    let mut s = r.size() as i64 * (2 * gc - 2);
    for mask in r.elements().into_iter().filter(|&m| m != 0) {
        s += t.character(mask)?.conductor.degree();
    }
    Ok(((s + 2) / 2) as u64)
}

fn check_ambient(t: &Tower, r: &Subspace) -> Result<()> {
    if r.ambient() != t.k() {
        return Err(Error::InvalidSubspace(format!(
            "subspace of F2^{} for a tower with {} covers",
            r.ambient(),
            t.k()
        )));
    }
    Ok(())
}

/// Genus of `w^2 + w = f` over the base by Riemann-Hurwitz:
/// `2g' - 2 = 2·deg div(dx) + sum (d_P + 1)·deg P`, with `div(dx)` from
/// local derivatives and `d_P` from the folded Laurent coefficients.
pub fn rh_single_cover_genus(curve: &BaseCurve, f: &FFElem) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::UnramifiedCover);
    }
    let mut branch = 0i64;
    for place in pole_candidates(curve, f)? {
        let ch = curve.chart(&place)?;
        let d = reduced_order_folded(ch.field(), &ch.expand(f, 1));
        if d > 0 {
            branch += (d + 1) * place.degree() as i64;
        }
    }
    if branch == 0 {
        return Err(Error::UnramifiedCover);
    }
    let s = 2 * curve.dx_divisor()?.degree() + branch;
    Ok(((s + 2) / 2) as u64)
}

/// Number of degree-one places of `X_R` over `GF(2^n)`.
pub fn count_points(t: &Tower, r: &Subspace, n: u32, threads: usize) -> Result<u64> {
    check_ambient(t, r)?;
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::DegreeOutOfRange(n));
    }
    t.characters()?;
    let gens: Vec<FFElem> = r.basis().iter().map(|&m| t.function(m)).collect();
    count_cover_points(t.base(), &gens, n, threads)
}

/// One row of the intermediate-curve lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeRow {
    pub subspace: Subspace,
    pub dim: usize,
    pub genus: u64,
    pub count: u64,
}

/// Genus and `F2`-count of every intermediate curve.
pub fn lattice_report(t: &Tower, threads: usize) -> Result<Vec<LatticeRow>> {
    Subspace::all(t.k())
        .into_iter()
        .map(|r| {
            Ok(LatticeRow {
                dim: r.dim(),
                genus: genus(t, &r)?,
                count: count_points(t, &r, 1, threads)?,
                subspace: r,
            })
        })
        .collect()
}

/// Counts affine solutions `(x, y, w_1..w_r)` over `GF(2^n)` of the system
/// defining `X_R` (one `w` per basis character) by exhaustive search,
/// skipping fibres where `r` or some basis function has a pole. Returns the
/// count and the skipped x-values.
pub fn affine_points_brute_force(t: &Tower, r: &Subspace, n: u32) -> Result<(u64, Vec<u32>)> {
    let k = crate::gf2k::FieldSpec::new(n)?;
    let gens: Vec<FFElem> = r.basis().iter().map(|&m| t.function(m)).collect();
    let (num, den) = (t.base().r_num(), t.base().r_den());
    let mut skipped = Vec::new();
    let mut total = 0u64;
    for x in k.elements() {
        let m = den.eval(&k, x);
        if m == 0 || gens.iter().any(|f| f.den().eval(&k, x) == 0) {
            skipped.push(x);
            continue;
        }
        let rx = k.div(num.eval(&k, x), m).unwrap();
        for y in k.elements().filter(|&y| k.mul(y, y) ^ y == rx) {
            let mut c = 1u64;
            for f in &gens {
                let val = k.div(f.u().eval(&k, x) ^ k.mul(f.v().eval(&k, x), y), f.den().eval(&k, x)).unwrap();
                c *= k.elements().filter(|&w| k.mul(w, w) ^ w == val).count() as u64;
            }
            total += c;
        }
    }
    Ok((total, skipped))
}

/// The minimal ambient subspace data used by reports: all characters of
/// `R` with their conductor degrees.
pub fn conductor_degrees(t: &Tower, r: &Subspace) -> Result<BTreeMap<u64, i64>> {
    r.elements()
        .into_iter()
        .filter(|&m| m != 0)
        .map(|m| Ok((m, t.character(m)?.conductor.degree())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn subspace_parsing_and_enumeration() {
        assert_eq!(Subspace::parse(3, "7").unwrap(), Subspace::full(3));
        assert_eq!(Subspace::parse(3, "0").unwrap(), Subspace::zero(3));
        assert_eq!(Subspace::parse(3, "span(3)").unwrap().dim(), 1);
        assert_eq!(Subspace::parse(3, "1,6").unwrap().dim(), 2);
        assert_eq!(Subspace::parse(3, "1,2,3").unwrap().dim(), 2);
        assert!(Subspace::parse(3, "9").is_err());
        assert!(matches!(Subspace::parse(3, "1,x"), Err(Error::Parse { .. })));
        let all = Subspace::all(3);
        assert_eq!(all.len(), 16);
        let by_dim: Vec<usize> = (0..=3).map(|d| all.iter().filter(|s| s.dim() == d).count()).collect();
        assert_eq!(by_dim, vec![1, 7, 7, 1]);
    }

    #[test]
    fn serre_validation_and_conductors() {
        let t = fixtures::serre();
        let w = validate_tower(&t).unwrap();
        assert_eq!(w.len(), 7);
        for (mask, place, d) in &w {
            assert_eq!(place.degree(), 7, "character {mask}");
            assert_eq!(*d, 1);
        }
        for mask in 1..8 {
            let c = conductor(&t, mask).unwrap();
            assert_eq!(c.degree(), 14);
            assert_eq!(c.iter().count(), 1);
        }
        let dup = Tower::new(t.base().clone(), vec![t.covers()[0].clone(), t.covers()[0].clone()]);
        assert_eq!(validate_tower(&dup), Err(Error::DependentCharacter { mask: 3 }));
    }

    #[test]
    fn h_validation() {
        let t = fixtures::h();
        let orders: Vec<u32> = t.characters().unwrap().iter().map(|c| c.ramified[0].1).collect();
        assert_eq!(orders, vec![9, 11, 11]);
        assert!(t.characters().unwrap().iter().all(|c| c.ramified.len() == 1 && c.ramified[0].0.is_infinite()));
        assert_eq!(conductor(&t, 1).unwrap().degree(), 10);
    }

    #[test]
    fn genera() {
        let s = fixtures::serre();
        assert_eq!(genus(&s, &Subspace::parse(3, "1").unwrap()).unwrap(), 8);
        assert_eq!(genus(&s, &Subspace::parse(3, "3").unwrap()).unwrap(), 22);
        assert_eq!(genus(&s, &Subspace::full(3)).unwrap(), 50);
        let h = fixtures::h();
        assert_eq!(genus(&h, &Subspace::full(2)).unwrap(), 22);
        assert_eq!(genus(&h, &Subspace::parse(2, "1").unwrap()).unwrap(), 8);
        assert_eq!(genus(&h, &Subspace::zero(2)).unwrap(), 2);
    }

    #[test]
    fn riemann_hurwitz_agrees_with_conductors() {
        for t in [fixtures::serre(), fixtures::h()] {
            for mask in 1u64..(1 << t.k()) {
                let r = Subspace::new(t.k(), &[mask]).unwrap();
                assert_eq!(
                    rh_single_cover_genus(t.base(), &t.function(mask)).unwrap(),
                    genus(&t, &r).unwrap(),
                    "mask {mask}"
                );
            }
        }
        let e = fixtures::serre().base().clone();
        assert_eq!(rh_single_cover_genus(&e, &FFElem::one()), Err(Error::UnramifiedCover));
    }

    #[test]
    fn counts_over_f2() {
        let s = fixtures::serre();
        assert_eq!(count_points(&s, &Subspace::full(3), 1, 1).unwrap(), 40);
        assert_eq!(count_points(&s, &Subspace::parse(3, "3").unwrap(), 1, 1).unwrap(), 20);
        assert_eq!(count_points(&s, &Subspace::zero(3), 7, 2).unwrap(), 145);
        let h = fixtures::h();
        assert_eq!(count_points(&h, &Subspace::full(2), 1, 1).unwrap(), 21);
        assert_eq!(count_points(&h, &Subspace::parse(2, "1").unwrap(), 1, 1).unwrap(), 11);
        assert_eq!(count_points(&h, &Subspace::zero(2), 1, 1).unwrap(), 6);
        assert!(count_points(&s, &Subspace::full(3), 25, 1).is_err());
        assert!(count_points(&s, &Subspace::full(2), 1, 1).is_err());
    }

    #[test]
    fn serre_lattice() {
        let t = fixtures::serre();
        for row in lattice_report(&t, 1).unwrap() {
            let size = row.subspace.size();
            assert_eq!(row.genus, 1 + 7 * (size - 1), "{}", row.subspace);
            assert_eq!(row.count, 5 * size, "{}", row.subspace);
        }
    }
}
