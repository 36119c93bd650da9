//! Target data the reconstruction engine runs on.
//!
//! A target is a divisor-generated ring together with how divisors and the
//! anticanonical class meet curve classes, which classes are effective, and the
//! two-point (and fewer) invariants that seed the recursion.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::chow_ring::{CohomologyRing, CurveClass, RingError, T3, T4, T5, T6, T7, T8};
use crate::engine::InvariantKey;
use crate::Rational;

/// Seed lookup returning `(numerator, denominator)` in lowest terms.
pub type BaseCaseFn = dyn Fn(&InvariantKey) -> Option<(i64, i64)> + Send + Sync;

#[derive(Clone)]
pub struct TargetDatum {
    name: String,
    ring: CohomologyRing,
    /// For each divisor in `ring.divisors()`, its degrees on `B1` and `B2`.
    divisor_degrees: Vec<[i64; 2]>,
    /// Degrees of `−K` on `B1` and `B2`.
    anticanonical: [i64; 2],
    /// Curve-class lattice rank; rank-1 targets only use the `b` coordinate.
    rank: usize,
    base_case: Arc<BaseCaseFn>,
}

impl fmt::Debug for TargetDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetDatum")
            .field("name", &self.name)
            .field("basis", &self.ring.len())
            .field("rank", &self.rank)
            .finish_non_exhaustive()
    }
}

impl TargetDatum {
    pub fn new(
        name: impl Into<String>,
        ring: CohomologyRing,
        divisor_degrees: Vec<[i64; 2]>,
        anticanonical: [i64; 2],
        rank: usize,
        base_case: Arc<BaseCaseFn>,
    ) -> Self {
        assert_eq!(divisor_degrees.len(), ring.divisors().len());
        assert!(rank == 1 || rank == 2);
        Self {
            name: name.into(),
            ring,
            divisor_degrees,
            anticanonical,
            rank,
            base_case,
        }
    }

    /// `Hilb²(P²)`.
    pub fn hilb2() -> Result<Self, RingError> {
        Ok(Self::new(
            "hilb2p2",
            CohomologyRing::hilb2()?,
            vec![[1, 0], [0, 1]],
            [0, 3],
            2,
            Arc::new(hilb2_base_case),
        ))
    }

    /// `P²` with basis `1, H, H²`; degree `d` curves are the classes `(0, d)`.
    pub fn p2() -> Self {
        Self::new(
            "p2",
            CohomologyRing::projective_plane(),
            vec![[0, 1]],
            [0, 3],
            1,
            Arc::new(p2_base_case),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &CohomologyRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_effective(&self, class: CurveClass) -> bool {
        self.rank == 2 || class.a == 0
    }

    /// `D · β` for the divisor with basis index `divisor`.
    pub fn divisor_degree(&self, divisor: usize, class: CurveClass) -> Option<i64> {
        let pos = self.ring.divisors().iter().position(|&d| d == divisor)?;
        let [x, y] = self.divisor_degrees[pos];
        Some(x * class.a as i64 + y * class.b as i64)
    }

    pub fn anticanonical_degree(&self, class: CurveClass) -> i64 {
        self.anticanonical[0] * class.a as i64 + self.anticanonical[1] * class.b as i64
    }

    /// Total codimension an `n`-pointed genus-0 invariant of `class` must carry.
    pub fn expected_codim(&self, class: CurveClass, n: usize) -> i64 {
        self.anticanonical_degree(class) + self.ring.dim() as i64 - 3 + n as i64
    }

    /// Whether a canonical key passes the dimension constraint.
    pub fn is_admissible(&self, key: &InvariantKey) -> bool {
        self.is_effective(key.class)
            && !key.class.is_zero()
            && key.insertions.codim_sum(self.ring.codims()) as i64
                == self.expected_codim(key.class, key.len())
    }

    /// Hardcoded value for a canonical, admissible key, if the target knows it.
    pub fn base_case(&self, key: &InvariantKey) -> Option<Rational> {
        (self.base_case)(key).map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    /// [`Self::base_case`] without allocating.
    pub fn base_case_raw(&self, key: &InvariantKey) -> Option<(i64, i64)> {
        (self.base_case)(key)
    }

    /// JSON description of the datum for documentation.
    pub fn describe(&self) -> DatumDescription {
        let n = self.ring.len();
        DatumDescription {
            target: self.name.clone(),
            dim: self.ring.dim(),
            codims: self.ring.codims().to_vec(),
            divisors: self.ring.divisors().to_vec(),
            duals: (0..n).map(|e| self.ring.dual_index(e)).collect(),
            cup_table: (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i <= j && !self.ring.cup_basis(i, j).is_zero())
                .map(|(i, j)| CupEntry {
                    i,
                    j,
                    product: self.ring.cup_basis(i, j).to_string(),
                })
                .collect(),
            decompositions: (0..n)
                .filter(|&m| self.ring.codim(m) >= 2)
                .map(|m| DecompositionEntry {
                    index: m,
                    terms: self
                        .ring
                        .decompose(m)
                        .iter()
                        .map(|t| (t.divisor, t.lower, t.coeff.to_string()))
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DatumDescription {
    pub target: String,
    pub dim: u32,
    pub codims: Vec<u32>,
    pub divisors: Vec<usize>,
    pub duals: Vec<usize>,
    pub cup_table: Vec<CupEntry>,
    pub decompositions: Vec<DecompositionEntry>,
}

#[derive(Debug, Serialize)]
pub struct CupEntry {
    pub i: usize,
    pub j: usize,
    pub product: String,
}

#[derive(Debug, Serialize)]
pub struct DecompositionEntry {
    pub index: usize,
    pub terms: Vec<(usize, usize, String)>,
}

/// Two-point invariants `I_(a,1)(T_i, T_j)` for `a = 0, 1, 2`, columns
/// `(3,8) (4,8) (5,8) (6,6) (6,7) (7,7)`.
const TWO_POINT_COLUMNS: [(usize, usize); 6] = [(T3, T8), (T4, T8), (T5, T8), (T6, T6), (T6, T7), (T7, T7)];
const TWO_POINT_TABLE: [[i64; 6]; 3] = [
    [0, 0, 1, 0, 0, 1],
    [1, 2, 1, 1, 2, -2],
    [1, 0, 0, 4, -2, 1],
];

/// Seed values on `Hilb²(P²)`:
/// - `(a, 0)` with one insertion: `T3 ↦ 3/a²`, `T4 ↦ 0`, `T5 ↦ −3/a²` (so `S5 ↦ 0`);
/// - `(a, 1)` with two insertions and `a ≤ 2`: the two-point table;
/// - `(a, 1)` with `a > 2`: zero for every insertion list.
pub fn hilb2_base_case(key: &InvariantKey) -> Option<(i64, i64)> {
    let CurveClass { a, b } = key.class;
    let counts = key.insertions.counts();
    match (b, key.len()) {
        (0, 1) if a >= 1 => {
            let a2 = a as i64 * a as i64;
            let reduce = |n: i64| {
                let g = gcd(n.abs(), a2);
                (n / g, a2 / g)
            };
            if counts[T3] == 1 {
                Some(reduce(3))
            } else if counts[T4] == 1 {
                Some((0, 1))
            } else if counts[T5] == 1 {
                Some(reduce(-3))
            } else {
                None
            }
        }
        (1, _) if a > 2 => Some((0, 1)),
        (1, 2) => {
            let col = TWO_POINT_COLUMNS.iter().position(|&(i, j)| {
                if i == j {
                    counts[i] == 2
                } else {
                    counts[i] == 1 && counts[j] == 1
                }
            })?;
            Some((TWO_POINT_TABLE[a as usize][col], 1))
        }
        _ => None,
    }
}

fn gcd(mut x: i64, mut y: i64) -> i64 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// The single seed on `P²`: one line through two points.
pub fn p2_base_case(key: &InvariantKey) -> Option<(i64, i64)> {
    (key.class == CurveClass::new(0, 1) && key.insertions.count(2) == 2 && key.len() == 2)
        .then_some((1, 1))
}
