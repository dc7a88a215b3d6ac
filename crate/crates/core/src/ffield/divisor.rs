use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly2::Poly2;

use super::curve::BaseCurve;
use super::place::{Place, PlaceKind, XPlace};

/// A finite integer combination of places.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    terms: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn new() -> Divisor {
        Divisor::default()
    }

    pub fn from_place(p: Place, c: i64) -> Divisor {
        let mut d = Divisor::new();
        d.add_term(p, c);
        d
    }

    pub fn add_term(&mut self, p: Place, c: i64) {
        let e = self.terms.entry(p).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn coeff(&self, p: &Place) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, &c)| c * p.degree() as i64).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, c) in other.iter() {
            d.add_term(p.clone(), c);
        }
        d
    }

    pub fn scale(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor::new();
        }
        Divisor { terms: self.terms.iter().map(|(p, &c)| (p.clone(), c * k)).collect() }
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.scale(-1))
    }

    /// Image under `y -> y + 1`.
    pub fn conjugate(&self) -> Divisor {
        let mut d = Divisor::new();
        for (p, c) in self.iter() {
            d.add_term(p.conjugate(), c);
        }
        d
    }

    /// Parses the divisor language against `curve`: a signed sum of terms
    /// `c*O`, `c*(x0,y0)`, `c*place(p)`, `c*place(p,gamma)` and `c*R`, where
    /// `R` is the sum of all rational places, `p` may be `inf` and the
    /// coefficient defaults to 1. A lone `0` is the zero divisor.
    pub fn parse(curve: &BaseCurve, text: &str) -> Result<Divisor> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let mut d = Divisor::new();
        p.ws();
        if p.rest().trim() == "0" {
            return Ok(d);
        }
        let mut first = true;
        loop {
            p.ws();
            if p.pos == p.s.len() {
                if first {
                    return Err(Error::parse(p.pos, "empty divisor"));
                }
                return Ok(d);
            }
            let mut sign = 1;
            match p.peek() {
                Some(b'+') => p.pos += 1,
                Some(b'-') => {
                    sign = -1;
                    p.pos += 1
                }
                _ if !first => return Err(Error::parse(p.pos, "expected '+' or '-'")),
                _ => {}
            }
            first = false;
            p.ws();
            let mut coeff = 1i64;
            if p.peek().is_some_and(|c| c.is_ascii_digit()) {
                coeff = p.integer()?;
                p.ws();
                if p.peek() == Some(b'*') {
                    p.pos += 1;
                    p.ws();
                } else {
                    return Err(Error::parse(p.pos, "expected '*' after coefficient"));
                }
            }
            let at = p.pos;
            let term = p.atom(curve)?;
            for (place, c) in term.map_err(|m| Error::UnrepresentablePlace(format!("at {at}: {m}")))? {
                d.add_term(place, sign * coeff * c);
            }
        }
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.iter().enumerate() {
            match (i, c < 0) {
                (0, false) => write!(f, "{c}*{p}")?,
                (0, true) => write!(f, "-{}*{p}", -c)?,
                (_, false) => write!(f, " + {c}*{p}")?,
                (_, true) => write!(f, " - {}*{p}", -c)?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

type Resolved = std::result::Result<Vec<(Place, i64)>, String>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn rest(&self) -> &'a str {
        std::str::from_utf8(&self.s[self.pos..]).unwrap_or("")
    }

    fn ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::parse(start, "coefficient out of range"))
    }

    /// Text up to the next top-level ',' or ')'.
    fn argument(&mut self) -> Result<(usize, &'a str)> {
        self.ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c != b',' && c != b')') {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(start, "empty argument"));
        }
        Ok((start, std::str::from_utf8(&self.s[start..self.pos]).unwrap().trim()))
    }

    fn poly_arg(&mut self) -> Result<Poly2> {
        let (start, text) = self.argument()?;
        Poly2::parse(text).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::parse(start + pos, msg),
            e => e,
        })
    }

    fn atom(&mut self, curve: &BaseCurve) -> Result<Resolved> {
        match self.peek() {
            Some(b'O') => {
                self.pos += 1;
                let places = curve.places_over(&XPlace::Infinity)?;
                if places.len() != 1 {
                    return Ok(Err("two places lie over infinity; write place(inf,0) or place(inf,1)".into()));
                }
                Ok(Ok(vec![(places[0].clone(), 1)]))
            }
            Some(b'R') => {
                self.pos += 1;
                Ok(Ok(curve.rational_places()?.into_iter().map(|p| (p, 1)).collect()))
            }
            Some(b'(') => {
                self.pos += 1;
                let x0 = self.poly_arg()?;
                self.expect(b',')?;
                let y0 = self.poly_arg()?;
                self.expect(b')')?;
                if x0.deg() > 0 || y0.deg() > 0 {
                    return Ok(Err("rational point coordinates must be 0 or 1".into()));
                }
                let p = Poly2::x().add(&x0);
                Ok(resolve_split(curve, &XPlace::Finite(p), &y0)?
                    .ok_or_else(|| format!("({x0},{y0}) is not a point of the curve")))
                .map(|r| r.map(|pl| vec![(pl, 1)]))
            }
            Some(b'p') if self.rest().starts_with("place") => {
                self.pos += 5;
                self.expect(b'(')?;
                self.ws();
                let xp = if self.rest().starts_with("inf") {
                    self.pos += 3;
                    XPlace::Infinity
                } else {
                    let start = self.pos;
                    let p = self.poly_arg()?;
                    if p.deg() < 1 || !p.is_irreducible()? {
                        return Err(Error::NotIrreducible(format!("{p} (at {start})")));
                    }
                    XPlace::Finite(p)
                };
                self.ws();
                let gamma = if self.peek() == Some(b',') {
                    self.pos += 1;
                    Some(self.poly_arg()?)
                } else {
                    None
                };
                self.expect(b')')?;
                match gamma {
                    Some(g) => Ok(resolve_split(curve, &xp, &g)?
                        .map(|pl| vec![(pl, 1)])
                        .ok_or_else(|| format!("no split place over {xp} with branch {g}"))),
                    None => {
                        let places = curve.places_over(&xp)?;
                        if places.len() == 1 {
                            Ok(Ok(vec![(places[0].clone(), 1)]))
                        } else {
                            Ok(Err(format!("{xp} splits; give the branch as place({xp}, gamma)")))
                        }
                    }
                }
            }
            _ => Err(Error::parse(self.pos, "expected O, R, (x0,y0) or place(...)")),
        }
    }
}

fn resolve_split(curve: &BaseCurve, xp: &XPlace, gamma: &Poly2) -> Result<Option<Place>> {
    let g = match xp {
        XPlace::Finite(p) => gamma.rem(p),
        XPlace::Infinity => gamma.clone(),
    };
    Ok(curve
        .places_over(xp)?
        .into_iter()
        .find(|pl| matches!(pl.kind(), PlaceKind::Split { branch } if *branch == g)))
}
