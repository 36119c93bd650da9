//! Exact genus-0 Gromov–Witten theory of the Hilbert scheme of two points in
//! the plane.
//!
//! - [`chow_ring`]: the ring `A*(Hilb²(P²))`, its derived multiplication table,
//!   Poincaré pairing and divisor decompositions.
//! - [`target`]: target data (ring, curve classes, seed invariants) for
//!   `Hilb²(P²)` and for `P²`.
//! - [`engine`]: WDVV reconstruction of arbitrary genus-0 invariants.
//! - [`hyperelliptic`]: counts of hyperelliptic plane curves and Severi degrees.
//! - [`quantum`]: small quantum products and their relations.
//! - [`oracles`]: Kontsevich's recursion for rational plane curves.
//! - [`tables`]: published reference tables used as fixtures.
//!
//! All arithmetic is exact.

pub mod binomial;
pub mod chow_ring;
pub mod engine;
pub mod hyperelliptic;
mod linalg;
pub mod oracles;
pub mod quantum;
pub mod tables;
pub mod target;

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

pub use chow_ring::{CohVector, CohomologyRing, CurveClass};
pub use engine::{Engine, EngineError, Insertions, InvariantKey, LinearForm, StageId};
pub use target::TargetDatum;

/// Serializes an exact rational as `"p"` or `"p/q"`.
pub fn serialize_rational<S: serde::Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Serializes a big integer as a decimal string.
pub fn serialize_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
