//! Small quantum cohomology of `Hilb²(P²)` as truncated series in `q1, q2`.
//!
//! ```text
//! γ1 * γ2 = Σ_{(a,b)} Σ_i I_(a,b)(γ1, γ2, T_i) q1^a q2^b T_{8−i}
//! ```
//!
//! with the `(0,0)` term read as the cup product. Series keep every
//! coefficient with `a ≤ n1` and `b ≤ n2` and drop the rest.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::chow_ring::{CohVector, CurveClass, T0, T1, T2, T3, T4, T5, T6, T7};
use crate::engine::{Engine, EngineError};
use crate::Rational;

/// Truncation bounds `(n1, n2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub n1: u32,
    pub n2: u32,
}

impl Bounds {
    pub fn new(n1: u32, n2: u32) -> Self {
        Self { n1, n2 }
    }

    fn contains(&self, (a, b): (u32, u32)) -> bool {
        a <= self.n1 && b <= self.n2
    }

    fn shift(&self, x: (u32, u32), y: (u32, u32)) -> Option<(u32, u32)> {
        let m = (x.0 + y.0, x.1 + y.1);
        self.contains(m).then_some(m)
    }
}

/// Truncated scalar series in `q1, q2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    bounds: Bounds,
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl Series {
    pub fn zero(bounds: Bounds) -> Self {
        Self {
            bounds,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(bounds: Bounds, a: u32, b: u32, c: i64) -> Self {
        let mut s = Self::zero(bounds);
        s.add_coeff((a, b), Rational::from_integer(c.into()));
        s
    }

    pub fn constant(bounds: Bounds, c: i64) -> Self {
        Self::monomial(bounds, 0, 0, c)
    }

    /// Sum of monomials `c q1^a q2^b`.
    pub fn poly(bounds: Bounds, terms: &[(u32, u32, i64)]) -> Self {
        let mut s = Self::zero(bounds);
        for &(a, b, c) in terms {
            s.add_coeff((a, b), Rational::from_integer(c.into()));
        }
        s
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_coeff(&mut self, m: (u32, u32), c: Rational) {
        if !self.bounds.contains(m) || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_coeff(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Series {
        let mut out = Self::zero(self.bounds);
        for (m, x) in self.terms() {
            out.add_coeff(m, x * c);
        }
        out
    }

    pub fn mul(&self, other: &Series) -> Series {
        let mut out = Self::zero(self.bounds);
        for (x, cx) in self.terms() {
            for (y, cy) in other.terms() {
                if let Some(m) = self.bounds.shift(x, y) {
                    out.add_coeff(m, cx * cy);
                }
            }
        }
        out
    }
}

/// `f = q1 / (1 − q1) = q1 + q1² + ⋯ + q1^n1`.
pub fn f_series(bounds: Bounds) -> Series {
    let mut s = Series::zero(bounds);
    for a in 1..=bounds.n1 {
        s.add_coeff((a, 0), Rational::one());
    }
    s
}

/// Truncated series with coefficients in `A*(H)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries {
    bounds: Bounds,
    len: usize,
    coeffs: BTreeMap<(u32, u32), CohVector>,
}

impl QSeries {
    pub fn zero(bounds: Bounds, len: usize) -> Self {
        Self {
            bounds,
            len,
            coeffs: BTreeMap::new(),
        }
    }

    /// The scalar series `s` times the basis class `T_index`.
    pub fn from_series(s: &Series, len: usize, index: usize) -> Self {
        let mut out = Self::zero(s.bounds(), len);
        for (m, c) in s.terms() {
            out.add_coeff(m, &CohVector::basis(len, index).scaled(c));
        }
        out
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn coeff(&self, a: u32, b: u32) -> CohVector {
        self.coeffs
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| CohVector::zero(self.len))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &CohVector)> {
        self.coeffs.iter().map(|(m, v)| (*m, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_coeff(&mut self, m: (u32, u32), v: &CohVector) {
        if !self.bounds.contains(m) || v.is_zero() {
            return;
        }
        let len = self.len;
        let slot = self.coeffs.entry(m).or_insert_with(|| CohVector::zero(len));
        *slot += v;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let mut out = self.clone();
        for (m, v) in other.terms() {
            out.add_coeff(m, v);
        }
        out
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        let mut out = Self::zero(self.bounds, self.len);
        for (m, v) in self.terms() {
            out.add_coeff(m, &v.scaled(c));
        }
        out
    }

    /// Scalar series times this series.
    pub fn scale_series(&self, s: &Series) -> QSeries {
        let mut out = Self::zero(self.bounds, self.len);
        for (x, c) in s.terms() {
            for (y, v) in self.terms() {
                if let Some(m) = self.bounds.shift(x, y) {
                    out.add_coeff(m, &v.scaled(c));
                }
            }
        }
        out
    }

    /// Coefficients as `(a, b, vector)` strings, for reports.
    pub fn to_terms(&self) -> Vec<SeriesTerm> {
        self.terms()
            .map(|((a, b), v)| SeriesTerm {
                a,
                b,
                value: v.to_string(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesTerm {
    pub a: u32,
    pub b: u32,
    pub value: String,
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, ((a, b), v)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mono = match (a, b) {
                (0, 0) => String::new(),
                _ => {
                    let part = |name: &str, e: u32| match e {
                        0 => String::new(),
                        1 => name.to_string(),
                        _ => format!("{name}^{e}"),
                    };
                    format!("{}{}", part("q1", a), part("q2", b))
                }
            };
            write!(f, "({v}){mono}")?;
        }
        Ok(())
    }
}

/// Quantum products backed by an engine, with basis products cached.
pub struct QuantumRing<'a> {
    engine: &'a Engine,
    bounds: Bounds,
    basis_products: Mutex<FxHashMap<(usize, usize), QSeries>>,
}

impl<'a> QuantumRing<'a> {
    pub fn new(engine: &'a Engine, bounds: Bounds) -> Self {
        Self {
            engine,
            bounds,
            basis_products: Mutex::new(FxHashMap::default()),
        }
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    fn len(&self) -> usize {
        self.engine.datum().ring().len()
    }

    /// The class `T_index` as a constant series.
    pub fn basis(&self, index: usize) -> QSeries {
        QSeries::from_series(&Series::constant(self.bounds, 1), self.len(), index)
    }

    /// `T_i * T_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Result<QSeries, EngineError> {
        let key = (i.min(j), i.max(j));
        if let Some(p) = self.basis_products.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let ring = self.engine.datum().ring();
        let mut out = QSeries::zero(self.bounds, self.len());
        out.add_coeff((0, 0), ring.cup_basis(i, j));
        for b in 0..=self.bounds.n2 {
            for a in 0..=self.bounds.n1 {
                let class = CurveClass::new(a, b);
                if class.is_zero() || !self.engine.datum().is_effective(class) {
                    continue;
                }
                let mut v = CohVector::zero(self.len());
                for k in 0..self.len() {
                    let value = self.engine.invariant_indices(class, &[i, j, k])?;
                    if !value.is_zero() {
                        *v.coeff_mut(ring.dual_index(k)) += value;
                    }
                }
                out.add_coeff((a, b), &v);
            }
        }
        self.basis_products.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// `γ1 * γ2` for classical classes.
    pub fn small_product(&self, g1: &CohVector, g2: &CohVector) -> Result<QSeries, EngineError> {
        let mut out = QSeries::zero(self.bounds, self.len());
        for (i, x) in g1.support() {
            for (j, y) in g2.support() {
                let p = self.basis_product(i, j)?;
                out = out.add(&p.scale(&(x * y)));
            }
        }
        Ok(out)
    }

    /// Product of two series, extended `Q[[q1, q2]]`-linearly.
    pub fn mul(&self, x: &QSeries, y: &QSeries) -> Result<QSeries, EngineError> {
        let mut out = QSeries::zero(self.bounds, self.len());
        for (mx, vx) in x.terms() {
            for (my, vy) in y.terms() {
                let Some(shift) = self.bounds.shift(mx, my) else {
                    continue;
                };
                let p = self.small_product(vx, vy)?;
                let mono = Series::monomial(self.bounds, shift.0, shift.1, 1);
                out = out.add(&p.scale_series(&mono));
            }
        }
        Ok(out)
    }

    /// `T_{i1} * T_{i2} * ⋯`, evaluated left to right.
    pub fn product_of(&self, indices: &[usize]) -> Result<QSeries, EngineError> {
        let (&first, rest) = indices.split_first().expect("at least one factor");
        let mut acc = self.basis(first);
        for &i in rest {
            acc = self.mul(&acc, &self.basis(i))?;
        }
        Ok(acc)
    }

    /// The nine products of a divisor with a class of codimension at most 2,
    /// in closed form.
    pub fn expected_products(&self) -> Vec<(&'static str, [usize; 2], QSeries)> {
        let b = self.bounds;
        let n = self.len();
        let f = f_series(b);
        let one = Series::constant(b, 1);
        let c = |k: i64| Series::constant(b, k);
        let t = |s: &Series, i: usize| QSeries::from_series(s, n, i);
        let one_minus_3f = one.sub(&f.scale(&int(3)));
        let f3 = f.scale(&int(3));
        vec![
            ("T1*T1", [T1, T1], t(&one_minus_3f, T3).add(&t(&f3, T5))),
            ("T1*T2", [T1, T2], t(&c(2), T3).add(&t(&one, T4))),
            ("T2*T2", [T2, T2], t(&one, T3).add(&t(&one, T4)).add(&t(&one, T5))),
            (
                "T1*T3",
                [T1, T3],
                t(&f3, T7).add(&t(&Series::poly(b, &[(1, 1, 1), (2, 1, 2)]), T0)),
            ),
            ("T1*T4", [T1, T4], t(&one, T6).add(&t(&Series::poly(b, &[(1, 1, 2)]), T0))),
            (
                "T1*T5",
                [T1, T5],
                t(&c(2), T6)
                    .add(&t(&one_minus_3f, T7))
                    .add(&t(&Series::poly(b, &[(1, 1, 1)]), T0)),
            ),
            (
                "T2*T3",
                [T2, T3],
                t(&one, T6).add(&t(&Series::poly(b, &[(1, 1, 1), (2, 1, 1)]), T0)),
            ),
            (
                "T2*T4",
                [T2, T4],
                t(&one, T6)
                    .add(&t(&one, T7))
                    .add(&t(&Series::poly(b, &[(1, 1, 2)]), T0)),
            ),
            (
                "T2*T5",
                [T2, T5],
                t(&one, T6)
                    .add(&t(&c(2), T7))
                    .add(&t(&Series::poly(b, &[(0, 1, 1), (1, 1, 1)]), T0)),
            ),
        ]
    }

    pub fn verify_product_table(&self) -> Result<ProductReport, EngineError> {
        let mut entries = Vec::new();
        for (name, [i, j], expected) in self.expected_products() {
            let computed = self.basis_product(i, j)?;
            let first_mismatch = first_difference(&computed, &expected);
            entries.push(ProductCheck {
                name: name.to_string(),
                pass: first_mismatch.is_none(),
                computed: computed.to_string(),
                first_mismatch,
            });
        }
        Ok(ProductReport {
            bounds: self.bounds,
            entries,
        })
    }

    /// Residuals of the two quantum deformations of the classical relations.
    pub fn relation_residuals(&self) -> Result<[QSeries; 2], EngineError> {
        let b = self.bounds;
        let n = self.len();
        let f = f_series(b);
        let f2 = f.mul(&f);
        let one = Series::constant(b, 1);

        let t111 = self.product_of(&[T1, T1, T1])?;
        let t112 = self.product_of(&[T1, T1, T2])?;
        let t122 = self.product_of(&[T1, T2, T2])?;
        let t222 = self.product_of(&[T2, T2, T2])?;

        // T1*T1*T1 = 9f² T1*T2*T2 − (9f² − 2f) T2*T2*T2 + q1q2(q1 − 1)
        let rhs1 = t122
            .scale_series(&f2.scale(&int(9)))
            .sub(&t222.scale_series(&f2.scale(&int(9)).sub(&f.scale(&int(2)))))
            .add(&QSeries::from_series(&Series::poly(b, &[(2, 1, 1), (1, 1, -1)]), n, T0));
        let r1 = t111.sub(&rhs1);

        // (1 − 18f) T2*T2*T2 − 3(1 − 6f) T1*T2*T2 + 6 T1*T1*T2 = q2(q1² − 2q1 + 1)
        let lhs2 = t222
            .scale_series(&one.sub(&f.scale(&int(18))))
            .sub(&t122.scale_series(&one.sub(&f.scale(&int(6))).scale(&int(3))))
            .add(&t112.scale_series(&Series::constant(b, 6)));
        let rhs2 = QSeries::from_series(&Series::poly(b, &[(2, 1, 1), (1, 1, -2), (0, 1, 1)]), n, T0);
        let r2 = lhs2.sub(&rhs2);
        Ok([r1, r2])
    }

    pub fn verify_relations(&self) -> Result<RelationReport, EngineError> {
        let names = [
            "T1*T1*T1 = 9f^2 T1*T2*T2 - (9f^2-2f) T2*T2*T2 + q1q2(q1-1)",
            "(1-18f) T2*T2*T2 - 3(1-6f) T1*T2*T2 + 6 T1*T1*T2 = q2(q1^2-2q1+1)",
        ];
        let residuals = self.relation_residuals()?;
        Ok(RelationReport {
            bounds: self.bounds,
            entries: names
                .iter()
                .zip(residuals)
                .map(|(name, r)| RelationCheck {
                    name: name.to_string(),
                    pass: r.is_zero(),
                    residual: r.to_string(),
                })
                .collect(),
        })
    }

    /// Basis triples `(i, j, k)` where `(T_i*T_j)*T_k ≠ T_i*(T_j*T_k)`.
    pub fn associativity_failures(&self) -> Result<Vec<[usize; 3]>, EngineError> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul(&self.basis_product(i, j)?, &self.basis(k))?;
                    let right = self.mul(&self.basis(i), &self.basis_product(j, k)?)?;
                    if left != right {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Pairs where `T_i*T_j ≠ T_j*T_i` when both are computed from scratch.
    pub fn commutativity_failures(&self) -> Result<Vec<[usize; 2]>, EngineError> {
        let n = self.len();
        let ring = self.engine.datum().ring();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let x = self.mul(&self.basis(i), &self.basis(j))?;
                let vi = ring.basis(i);
                let vj = ring.basis(j);
                let y = self.raw_product(&vj, &vi)?;
                if x != y {
                    out.push([i, j]);
                }
            }
        }
        Ok(out)
    }

    /// `γ1 * γ2` straight from the definition, bypassing the basis cache.
    pub fn raw_product(&self, g1: &CohVector, g2: &CohVector) -> Result<QSeries, EngineError> {
        let ring = self.engine.datum().ring();
        let mut out = QSeries::zero(self.bounds, self.len());
        out.add_coeff((0, 0), &ring.cup(g1, g2));
        for b in 0..=self.bounds.n2 {
            for a in 0..=self.bounds.n1 {
                let class = CurveClass::new(a, b);
                if class.is_zero() || !self.engine.datum().is_effective(class) {
                    continue;
                }
                let mut v = CohVector::zero(self.len());
                for k in 0..self.len() {
                    let tk = ring.basis(k);
                    let value = self.engine.invariant(class, &[g1.clone(), g2.clone(), tk])?;
                    *v.coeff_mut(ring.dual_index(k)) += value;
                }
                out.add_coeff((a, b), &v);
            }
        }
        Ok(out)
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn first_difference(computed: &QSeries, expected: &QSeries) -> Option<String> {
    let mut monos: Vec<(u32, u32)> = computed.terms().map(|(m, _)| m).collect();
    monos.extend(expected.terms().map(|(m, _)| m));
    monos.sort();
    monos.dedup();
    monos.into_iter().find_map(|(a, b)| {
        let x = computed.coeff(a, b);
        let y = expected.coeff(a, b);
        (x != y).then(|| format!("q1^{a} q2^{b}: computed {x}, expected {y}"))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductCheck {
    pub name: String,
    pub pass: bool,
    pub computed: String,
    pub first_mismatch: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductReport {
    pub bounds: Bounds,
    pub entries: Vec<ProductCheck>,
}

impl ProductReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub pass: bool,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub bounds: Bounds,
    pub entries: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_series_truncates() {
        let b = Bounds::new(3, 0);
        let f = f_series(b);
        assert_eq!(f, Series::poly(b, &[(1, 0, 1), (2, 0, 1), (3, 0, 1)]));
        assert!(f_series(Bounds::new(0, 2)).is_zero());
        // (1 − q1) f = q1
        let one_minus_q1 = Series::poly(b, &[(0, 0, 1), (1, 0, -1)]);
        assert_eq!(one_minus_q1.mul(&f), Series::monomial(b, 1, 0, 1));
    }

    #[test]
    fn truncation_drops_high_terms() {
        let b = Bounds::new(2, 1);
        let q1 = Series::monomial(b, 1, 0, 1);
        let q1_cubed = q1.mul(&q1).mul(&q1);
        assert!(q1_cubed.is_zero());
        assert!(Series::monomial(b, 0, 2, 5).is_zero());
    }

    #[test]
    fn t1_times_t3() {
        let e = Engine::hilb2();
        let q = QuantumRing::new(&e, Bounds::new(4, 2));
        let p = q.basis_product(T1, T3).unwrap();
        for a in 1..=4 {
            assert_eq!(p.coeff(a, 0), CohVector::from_terms(9, &[(T7, 3)]), "a = {a}");
        }
        assert_eq!(p.coeff(1, 1), CohVector::from_terms(9, &[(T0, 1)]));
        assert_eq!(p.coeff(2, 1), CohVector::from_terms(9, &[(T0, 2)]));
        assert!(p.coeff(3, 1).is_zero());
    }

    #[test]
    fn classical_limit_is_cup_product() {
        let e = Engine::hilb2();
        let q = QuantumRing::new(&e, Bounds::new(1, 1));
        let ring = e.datum().ring();
        for i in 0..9 {
            for j in 0..9 {
                assert_eq!(&q.basis_product(i, j).unwrap().coeff(0, 0), ring.cup_basis(i, j));
            }
        }
    }
}
