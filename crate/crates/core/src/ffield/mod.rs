//! The function field of a base curve `y^2 + y = r(x)` over F2: arithmetic,
//! places, local expansions, valuations, divisors and ℘-reduction.

mod curve;
mod divisor;
mod elem;
pub(crate) mod local;
mod place;
mod points;

pub use curve::{ff_op, BaseCurve, FfOp, LocalSeries, WpReduction};
pub use divisor::Divisor;
pub use elem::FFElem;
pub use place::{Place, PlaceKind, XPlace};
pub use points::{affine_points_brute_force, count_base_points};
pub(crate) use points::{count_cover_points, MAX_N};

/// `genus_base` of the operation list.
pub fn genus_base(curve: &BaseCurve) -> u64 {
    curve.genus()
}

#[cfg(test)]
mod tests;
