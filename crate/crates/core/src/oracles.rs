//! Independent ground truth for rational plane curve counts.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::One;

use crate::binomial::binomial;
use crate::chow_ring::CurveClass;
use crate::engine::{Engine, EngineError};
use crate::Rational;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum OracleError {
    #[error("degree must be positive, got {0}")]
    Degree(i64),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

static ND_CACHE: Mutex<Vec<BigInt>> = Mutex::new(Vec::new());

/// Number `N_d` of rational plane curves of degree `d` through `3d − 1`
/// general points, by Kontsevich's recursion:
///
/// ```text
/// N_d = Σ_{d1+d2=d} N_d1 N_d2 [d1² d2² C(3d−4, 3d1−2) − d1³ d2 C(3d−4, 3d1−1)]
/// ```
pub fn kontsevich_nd(d: i64) -> Result<BigInt, OracleError> {
    if d <= 0 {
        return Err(OracleError::Degree(d));
    }
    let mut cache = ND_CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(BigInt::one());
    }
    while (cache.len() as i64) < d {
        let n = cache.len() as i64 + 1;
        let mut total = BigInt::from(0);
        for d1 in 1..n {
            let d2 = n - d1;
            let prod = &cache[d1 as usize - 1] * &cache[d2 as usize - 1];
            let w = BigInt::from(d1 * d1 * d2 * d2) * binomial(3 * n - 4, 3 * d1 - 2)
                - BigInt::from(d1 * d1 * d1 * d2) * binomial(3 * n - 4, 3 * d1 - 1);
            total += prod * w;
        }
        cache.push(total);
    }
    Ok(cache[d as usize - 1].clone())
}

/// The same count from the WDVV engine on the `P²` target.
pub fn engine_nd(engine: &Engine, d: u32) -> Result<Rational, OracleError> {
    if d == 0 {
        return Err(OracleError::Degree(0));
    }
    let point = engine.datum().ring().point_index();
    let pts = vec![point; 3 * d as usize - 1];
    Ok(engine.invariant_indices(CurveClass::new(0, d), &pts)?)
}
