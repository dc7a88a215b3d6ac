//! Built-in towers shipped with the crate.

use crate::astower::Tower;
use crate::json::tower_from_json;

pub const SERRE_JSON: &str = include_str!("../fixtures/serre.json");
pub const H_JSON: &str = include_str!("../fixtures/h.json");

/// `E: y^2 + y = x^3 + x` with the three covers of the genus-50 curve.
pub fn serre() -> Tower {
    tower_from_json(SERRE_JSON).expect("built-in fixture")
}

/// The genus-2 curve `y^2 + y = (x^2+x)/(x^3+x+1)` with two covers.
pub fn h() -> Tower {
    tower_from_json(H_JSON).expect("built-in fixture")
}

/// A built-in tower by name.
pub fn by_name(name: &str) -> Option<Tower> {
    match name {
        "serre" | "serre.json" => Some(serre()),
        "h" | "h.json" => Some(h()),
        _ => None,
    }
}
