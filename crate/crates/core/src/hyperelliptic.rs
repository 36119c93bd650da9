//! Hyperelliptic plane curve counts from invariants of `Hilb²(P²)`.
//!
//! A degree `d`, genus `g` hyperelliptic plane curve through `3d + 1` points
//! corresponds to a rational curve of class `(d − g − 1, d)` in the Hilbert
//! scheme meeting `3d + 1` copies of `T4`. The invariants overcount by curves
//! of higher genus:
//!
//! ```text
//! I(d, g) = Σ_{h ≥ g} C(2h + 2, h − g) · E(d, h)
//! ```
//!
//! The same triangular relation links `I^l` and `E^l`, where `l` of the point
//! pairs are replaced by conjugate pairs (a `T8` insertion each).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::binomial::binomial;
use crate::chow_ring::{CurveClass, T4, T8};
use crate::engine::{Engine, EngineError};
use crate::Rational;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum HyperellipticError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("E^{l}({d},{g}) = {value} is not an integer")]
    NonIntegralCount {
        d: u32,
        g: u32,
        l: u32,
        value: String,
    },
    #[error("E^{l}({d},{g}) = {value} is negative")]
    NegativeCount {
        d: u32,
        g: u32,
        l: u32,
        value: String,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Degree, genus and number of conjugate pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HyperellipticQuery {
    pub d: u32,
    pub g: u32,
    pub l: u32,
}

impl HyperellipticQuery {
    pub fn new(d: u32, g: u32, l: u32) -> Result<Self, HyperellipticError> {
        if d == 0 {
            return Err(HyperellipticError::InvalidQuery("degree must be positive".into()));
        }
        if g >= d {
            return Err(HyperellipticError::InvalidQuery(format!(
                "genus {g} needs degree above {g}, got {d}"
            )));
        }
        if 3 * l > 3 * d + 1 {
            return Err(HyperellipticError::InvalidQuery(format!(
                "{l} pairs is too many for degree {d}"
            )));
        }
        Ok(Self { d, g, l })
    }

    pub fn class(&self) -> CurveClass {
        CurveClass::new(self.d - self.g - 1, self.d)
    }

    /// `l` copies of `T8` followed by `3(d − l) + 1` copies of `T4`.
    pub fn insertions(&self) -> Vec<usize> {
        let t4 = (3 * self.d + 1 - 3 * self.l) as usize;
        let mut out = vec![T8; self.l as usize];
        out.extend(std::iter::repeat_n(T4, t4));
        out
    }
}

/// Class `(d − g − 1, d)` of the rational curve in the Hilbert scheme. Its
/// intersection with the diagonal, `2(b − a) = 2g + 2`, counts branch points.
pub fn genus_to_class(d: u32, g: u32) -> Result<CurveClass, HyperellipticError> {
    Ok(HyperellipticQuery::new(d, g, 0)?.class())
}

pub fn invariant_i(engine: &Engine, d: u32, g: u32, l: u32) -> Result<Rational, HyperellipticError> {
    let query = HyperellipticQuery::new(d, g, l)?;
    Ok(engine.invariant_indices(query.class(), &query.insertions())?)
}

/// `I(g) = Σ_{h ≥ g} C(2h + 2, h − g) · E(h)`, with `E` indexed by genus.
pub fn forward_transform(e: &[BigInt]) -> Vec<BigInt> {
    (0..e.len())
        .map(|g| {
            (g..e.len())
                .map(|h| binomial(2 * h as i64 + 2, (h - g) as i64) * &e[h])
                .sum()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountRow {
    pub g: u32,
    #[serde(serialize_with = "crate::serialize_rational")]
    pub i: Rational,
    #[serde(serialize_with = "crate::serialize_bigint")]
    pub e: BigInt,
}

/// The `I` and `E` columns for one degree and number of pairs, genus
/// `0..=d−1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountTable {
    pub d: u32,
    pub l: u32,
    pub rows: Vec<CountRow>,
}

impl CountTable {
    pub fn i_column(&self) -> Vec<Rational> {
        self.rows.iter().map(|r| r.i.clone()).collect()
    }

    pub fn e_column(&self) -> Vec<BigInt> {
        self.rows.iter().map(|r| r.e.clone()).collect()
    }

    pub fn e(&self, g: u32) -> Option<&BigInt> {
        self.rows.get(g as usize).map(|r| &r.e)
    }

    pub fn i(&self, g: u32) -> Option<&Rational> {
        self.rows.get(g as usize).map(|r| &r.i)
    }

    /// `E(d, d − 1)`, which should always vanish.
    pub fn boundary(&self) -> &BigInt {
        &self.rows.last().expect("at least one genus").e
    }
}

/// Solves the triangular system from the top genus `d − 1` down.
pub fn invert_counts(engine: &Engine, d: u32, l: u32) -> Result<CountTable, HyperellipticError> {
    if d < 2 {
        return Err(HyperellipticError::InvalidQuery(format!(
            "degree must be at least 2, got {d}"
        )));
    }
    let hmax = d - 1;
    let i_values = (0..=hmax)
        .map(|g| invariant_i(engine, d, g, l))
        .collect::<Result<Vec<_>, _>>()?;
    let e = invert_column(&i_values, d, l)?;
    let rows = i_values
        .into_iter()
        .zip(e)
        .enumerate()
        .map(|(g, (i, e))| CountRow { g: g as u32, i, e })
        .collect();
    Ok(CountTable { d, l, rows })
}

/// Inverts `I = forward_transform(E)` and checks the counts are nonnegative
/// integers.
pub fn invert_column(i_values: &[Rational], d: u32, l: u32) -> Result<Vec<BigInt>, HyperellipticError> {
    let n = i_values.len();
    let mut e = vec![BigInt::zero(); n];
    for g in (0..n).rev() {
        let mut value = i_values[g].clone();
        for (h, eh) in e.iter().enumerate().skip(g + 1) {
            value -= Rational::from_integer(binomial(2 * h as i64 + 2, (h - g) as i64) * eh);
        }
        let g32 = g as u32;
        if !value.denom().is_one() {
            return Err(HyperellipticError::NonIntegralCount {
                d,
                g: g32,
                l,
                value: value.to_string(),
            });
        }
        if value.is_negative() {
            return Err(HyperellipticError::NegativeCount {
                d,
                g: g32,
                l,
                value: value.to_string(),
            });
        }
        e[g] = value.to_integer();
    }
    Ok(e)
}

/// Genus-0 Severi degree `E²(d, 0)` or genus-1 Severi degree `E¹(d, 1)`.
///
/// Degree 1 in genus 0 is the line through two points and returns 1 without
/// consulting the engine.
pub fn severi_degree(engine: &Engine, genus: u32, d: u32) -> Result<Rational, HyperellipticError> {
    match genus {
        0 if d == 1 => Ok(Rational::one()),
        0 if d >= 2 => Ok(Rational::from_integer(invert_counts(engine, d, 2)?.rows[0].e.clone())),
        1 if d >= 3 => Ok(Rational::from_integer(invert_counts(engine, d, 1)?.rows[1].e.clone())),
        0 | 1 => Err(HyperellipticError::InvalidQuery(format!(
            "degree {d} is too small for genus {genus}"
        ))),
        _ => Err(HyperellipticError::InvalidQuery(format!(
            "Severi degrees are available for genus 0 and 1, not {genus}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn class_and_branch_points() {
        assert_eq!(genus_to_class(4, 2).unwrap(), CurveClass::new(1, 4));
        assert_eq!(genus_to_class(6, 5).unwrap(), CurveClass::new(0, 6));
        assert_eq!(CurveClass::new(1, 4).diagonal_degree(), 6);
        assert!(genus_to_class(3, 3).is_err());
    }

    #[test]
    fn insertion_counts() {
        let q = HyperellipticQuery::new(3, 1, 1).unwrap();
        let ins = q.insertions();
        assert_eq!(ins.len(), 8);
        assert_eq!(ins.iter().filter(|&&i| i == T8).count(), 1);
    }

    #[test]
    fn degree_four_step() {
        // 162 − C(6,1)·27 = 0 and 405 − C(6,2)·27 = 0
        let i: Vec<Rational> = [405, 162, 27, 0].iter().map(|&x| Rational::from_integer(x.into())).collect();
        let e = invert_column(&i, 4, 0).unwrap();
        assert_eq!(e, ints(&[0, 0, 27, 0]));
        assert_eq!(forward_transform(&e), ints(&[405, 162, 27, 0]));
    }

    #[test]
    fn inversion_rejects_bad_columns() {
        let half = Rational::new(1.into(), 2.into());
        assert!(matches!(
            invert_column(&[Rational::zero(), half], 3, 0),
            Err(HyperellipticError::NonIntegralCount { g: 1, .. })
        ));
        let i: Vec<Rational> = [0, 1].iter().map(|&x| Rational::from_integer(x.into())).collect();
        assert!(matches!(
            invert_column(&i, 3, 0),
            Err(HyperellipticError::NegativeCount { g: 0, .. })
        ));
    }
}
