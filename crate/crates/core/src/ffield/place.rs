use std::fmt;

use crate::poly2::Poly2;

/// A place of the x-line: a monic irreducible polynomial or infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum XPlace {
    Finite(Poly2),
    Infinity,
}

impl XPlace {
    pub fn degree(&self) -> u32 {
        match self {
            XPlace::Finite(p) => p.deg() as u32,
            XPlace::Infinity => 1,
        }
    }
}

impl fmt::Display for XPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XPlace::Finite(p) => write!(f, "{p}"),
            XPlace::Infinity => write!(f, "inf"),
        }
    }
}

/// How a place of the base curve lies over its x-place.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaceKind {
    /// One of two conjugate places. `branch` is the residue of `y + g`
    /// in `F2[x]/(p)`, where `g` is the reducing polynomial of `r` at the
    /// place (zero whenever `r` is regular there, so `branch^2 + branch = r`).
    Split { branch: Poly2 },
    /// Unique place of twice the degree.
    Inert,
    /// Unique place with ramification index 2.
    Ramified,
}

/// A closed point of a base curve.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Place {
    x: XPlace,
    kind: PlaceKind,
}

impl Place {
    pub(crate) fn new(x: XPlace, kind: PlaceKind) -> Place {
        Place { x, kind }
    }

    pub fn x_place(&self) -> &XPlace {
        &self.x
    }

    pub fn kind(&self) -> &PlaceKind {
        &self.kind
    }

    pub fn branch(&self) -> Option<&Poly2> {
        match &self.kind {
            PlaceKind::Split { branch } => Some(branch),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.x == XPlace::Infinity
    }

    pub fn degree(&self) -> u32 {
        match self.kind {
            PlaceKind::Inert => 2 * self.x.degree(),
            _ => self.x.degree(),
        }
    }

    pub fn ramification_index(&self) -> u32 {
        match self.kind {
            PlaceKind::Ramified => 2,
            _ => 1,
        }
    }

    /// Image under `y -> y + 1`.
    pub fn conjugate(&self) -> Place {
        match &self.kind {
            PlaceKind::Split { branch } => {
                let b = match &self.x {
                    XPlace::Finite(p) => branch.add(&Poly2::one()).rem(p),
                    XPlace::Infinity => branch.add(&Poly2::one()),
                };
                Place { x: self.x.clone(), kind: PlaceKind::Split { branch: b } }
            }
            _ => self.clone(),
        }
    }

    /// Term notation of the divisor language.
    pub fn notation(&self) -> String {
        match (&self.x, &self.kind) {
            (XPlace::Infinity, PlaceKind::Split { branch }) => format!("place(inf,{branch})"),
            (XPlace::Infinity, _) => "O".to_string(),
            (XPlace::Finite(p), PlaceKind::Split { branch }) if p.deg() == 1 => {
                format!("({},{})", p.coeff(0) as u8, branch.coeff(0) as u8)
            }
            (XPlace::Finite(p), PlaceKind::Split { branch }) => format!("place({p},{branch})"),
            (XPlace::Finite(p), _) => format!("place({p})"),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.notation())
    }
}
