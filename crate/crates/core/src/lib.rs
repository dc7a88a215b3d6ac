//! Artin-Schreier covers of curves over F2.

pub mod astower;
pub mod elliptic;
pub mod error;
pub mod ffield;
pub mod fixtures;
pub mod gf2k;
pub mod json;
pub mod linalg;
pub mod planemodel;
pub mod poly2;
pub mod report;
pub mod rrspace;

mod fieldpoly;
mod series;

pub use error::{Error, Result};
pub use ffield::{BaseCurve, Divisor, FFElem, Place};
pub use gf2k::{FieldElement, FieldOp, FieldSpec};
pub use poly2::Poly2;
