//! Chow ring of `H = Hilb²(P²)` and of other small divisor-generated targets.
//!
//! The basis of `A*(H)` is `T0..T8` where `T0` is the fundamental class, `T1` and
//! `T2` are the divisor generators, `T3 = T1²`, `T4 = T1T2 − 2T1²`,
//! `T5 = T1² − T1T2 + T2²`, `T6`/`T7` are the curve classes dual to `T2`/`T1`,
//! and `T8` is the point class. The basis is Poincaré self-dual under
//! `e ↦ 8 − e`.
//!
//! The multiplication table is not typed in by hand: it is derived from the
//! presentation `Q[T1, T2] / (T1³, T2³ − 3T1T2² + 6T1²T2)` and validated before
//! use.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::Rational;

/// Largest basis any target may have; insertion multisets are sized by it.
pub const MAX_BASIS: usize = 9;

pub const T0: usize = 0;
pub const T1: usize = 1;
pub const T2: usize = 2;
pub const T3: usize = 3;
pub const T4: usize = 4;
pub const T5: usize = 5;
pub const T6: usize = 6;
pub const T7: usize = 7;
pub const T8: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("pairing of T{i} with the dual of T{j} is {value}, expected {expected}")]
    NotPoincareDual {
        i: usize,
        j: usize,
        value: String,
        expected: u8,
    },
    #[error("T{i} ∪ T{j} is not pure of codimension {codim}")]
    NotGraded { i: usize, j: usize, codim: u32 },
    #[error("cup product is not commutative on (T{0}, T{1})")]
    NotCommutative(usize, usize),
    #[error("cup product is not associative on (T{0}, T{1}, T{2})")]
    NotAssociative(usize, usize, usize),
    #[error("T{0} is not a combination of divisor products")]
    NotDivisorGenerated(usize),
    #[error("malformed ring data: {0}")]
    Malformed(String),
}

/// Effective curve class `a·B1 + b·B2`.
///
/// Ordered by `(b, a)` lexicographically, which is the order stages are solved in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    pub a: u32,
    pub b: u32,
}

impl CurveClass {
    pub const fn new(a: u32, b: u32) -> Self {
        Self { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// `T1 · (a, b) = a`.
    pub fn t1_degree(&self) -> i64 {
        self.a as i64
    }

    /// `T2 · (a, b) = b`.
    pub fn t2_degree(&self) -> i64 {
        self.b as i64
    }

    /// Intersection with the diagonal divisor `Δ = 2(T2 − T1)`.
    pub fn diagonal_degree(&self) -> i64 {
        2 * (self.b as i64 - self.a as i64)
    }

    /// `−K_H · (a, b) = 3b`.
    pub fn anticanonical_degree(&self) -> i64 {
        3 * self.b as i64
    }

    /// All ordered splittings `self = first + second` with both parts nonzero
    /// and componentwise nonnegative.
    pub fn splits(&self) -> impl Iterator<Item = (CurveClass, CurveClass)> + '_ {
        (0..=self.b).flat_map(move |b1| {
            (0..=self.a).filter_map(move |a1| {
                let first = CurveClass::new(a1, b1);
                let second = CurveClass::new(self.a - a1, self.b - b1);
                (!first.is_zero() && !second.is_zero()).then_some((first, second))
            })
        })
    }
}

impl Ord for CurveClass {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.b, self.a).cmp(&(other.b, other.a))
    }
}

impl PartialOrd for CurveClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A cohomology class written in a target's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohVector {
    coeffs: Vec<Rational>,
}

impl CohVector {
    pub fn zero(len: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); len],
        }
    }

    pub fn basis(len: usize, index: usize) -> Self {
        let mut v = Self::zero(len);
        v.coeffs[index] = Rational::one();
        v
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    /// Builds a vector from `(index, integer coefficient)` pairs.
    pub fn from_terms(len: usize, terms: &[(usize, i64)]) -> Self {
        let mut v = Self::zero(len);
        for &(i, c) in terms {
            v.coeffs[i] += Rational::from_integer(c.into());
        }
        v
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, index: usize) -> &Rational {
        &self.coeffs[index]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff_mut(&mut self, index: usize) -> &mut Rational {
        &mut self.coeffs[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero coordinates in index order.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add_scaled(&mut self, factor: &Rational, other: &CohVector) {
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !y.is_zero() {
                *x += factor * y;
            }
        }
    }
}

impl Add for &CohVector {
    type Output = CohVector;
    fn add(self, rhs: &CohVector) -> CohVector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&CohVector> for CohVector {
    fn add_assign(&mut self, rhs: &CohVector) {
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x += y;
        }
    }
}

impl Sub for &CohVector {
    type Output = CohVector;
    fn sub(self, rhs: &CohVector) -> CohVector {
        let mut out = self.clone();
        for (x, y) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x -= y;
        }
        out
    }
}

impl Neg for &CohVector {
    type Output = CohVector;
    fn neg(self) -> CohVector {
        CohVector {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CohVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.support() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            write!(f, "T{i}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// One term `coeff · (T_divisor ∪ T_lower)` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTerm {
    pub divisor: usize,
    pub lower: usize,
    pub coeff: Rational,
}

/// Basis × basis multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupTable {
    size: usize,
    entries: Vec<CohVector>,
}

impl CupTable {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> CohVector) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        Self { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &CohVector {
        &self.entries[i * self.size + j]
    }
}

/// Graded ring with a perfect pairing given by an involution on the basis.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    dim: u32,
    codims: Vec<u32>,
    divisors: Vec<usize>,
    duals: Vec<usize>,
    point: usize,
    table: CupTable,
    decompositions: Vec<Vec<DecompositionTerm>>,
    by_codim: Vec<Vec<usize>>,
}

impl CohomologyRing {
    /// Validates the data and precomputes divisor decompositions.
    pub fn new(
        dim: u32,
        codims: Vec<u32>,
        divisors: Vec<usize>,
        duals: Vec<usize>,
        table: CupTable,
    ) -> Result<Self, RingError> {
        let n = codims.len();
        if n == 0 || n > MAX_BASIS || duals.len() != n || table.size() != n {
            return Err(RingError::Malformed(format!("basis of size {n}")));
        }
        if codims[0] != 0 {
            return Err(RingError::Malformed("T0 must be the fundamental class".into()));
        }
        let points: Vec<usize> = (0..n).filter(|&i| codims[i] == dim).collect();
        let [point] = points[..] else {
            return Err(RingError::Malformed("expected exactly one point class".into()));
        };
        if divisors.iter().any(|&d| d >= n || codims[d] != 1) {
            return Err(RingError::Malformed("divisor list contains a non-divisor".into()));
        }
        let mut by_codim = vec![Vec::new(); dim as usize + 1];
        for (i, &c) in codims.iter().enumerate() {
            by_codim[c as usize].push(i);
        }
        let mut ring = Self {
            dim,
            codims,
            divisors,
            duals,
            point,
            table,
            decompositions: vec![Vec::new(); n],
            by_codim,
        };
        ring.validate()?;
        for m in 0..n {
            if ring.codims[m] >= 2 {
                ring.decompositions[m] = ring.find_decomposition(m)?;
            }
        }
        Ok(ring)
    }

    fn validate(&self) -> Result<(), RingError> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                let prod = self.table.get(i, j);
                let codim = self.codims[i] + self.codims[j];
                if prod.support().any(|(k, _)| self.codims[k] != codim) {
                    return Err(RingError::NotGraded { i, j, codim });
                }
                if prod != self.table.get(j, i) {
                    return Err(RingError::NotCommutative(i, j));
                }
                let value = self.integrate(self.table.get(i, self.duals[j]));
                let expected = u8::from(i == j);
                if value != Rational::from_integer(expected.into()) {
                    return Err(RingError::NotPoincareDual {
                        i,
                        j,
                        value: value.to_string(),
                        expected,
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.cup(self.table.get(i, j), &CohVector::basis(n, k));
                    let right = self.cup(&CohVector::basis(n, i), self.table.get(j, k));
                    if left != right {
                        return Err(RingError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Finds a shortest combination `Σ c (T_D ∪ T_ρ) = T_m` with `D` a divisor.
    fn find_decomposition(&self, m: usize) -> Result<Vec<DecompositionTerm>, RingError> {
        let codim = self.codims[m];
        let mut candidates = Vec::new();
        for &d in &self.divisors {
            for &rho in &self.by_codim[codim as usize - 1] {
                if self.is_divisor(rho) && rho < d {
                    continue;
                }
                let prod = self.table.get(d, rho);
                if !prod.is_zero() {
                    candidates.push((d, rho, prod.coeffs().to_vec()));
                }
            }
        }
        let target = CohVector::basis(self.len(), m);
        for size in 1..=candidates.len() {
            for subset in combinations(candidates.len(), size) {
                let columns: Vec<Vec<Rational>> =
                    subset.iter().map(|&s| candidates[s].2.clone()).collect();
                if let Some(x) = linalg::solve_columns(&columns, target.coeffs()) {
                    if x.iter().all(|c| !c.is_zero()) {
                        return Ok(subset
                            .iter()
                            .zip(x)
                            .map(|(&s, coeff)| DecompositionTerm {
                                divisor: candidates[s].0,
                                lower: candidates[s].1,
                                coeff,
                            })
                            .collect());
                    }
                }
            }
        }
        Err(RingError::NotDivisorGenerated(m))
    }

    pub fn len(&self) -> usize {
        self.codims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codims.is_empty()
    }

    /// Complex dimension of the target.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn codim(&self, index: usize) -> u32 {
        self.codims[index]
    }

    pub fn codims(&self) -> &[u32] {
        &self.codims
    }

    pub fn divisors(&self) -> &[usize] {
        &self.divisors
    }

    pub fn is_divisor(&self, index: usize) -> bool {
        self.divisors.contains(&index)
    }

    /// Basis indices of the given codimension.
    pub fn of_codim(&self, codim: u32) -> &[usize] {
        self.by_codim
            .get(codim as usize)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Index `ê` with `∫ T_e ∪ T_ê = 1`.
    pub fn dual_index(&self, e: usize) -> usize {
        self.duals[e]
    }

    pub fn point_index(&self) -> usize {
        self.point
    }

    pub fn basis(&self, index: usize) -> CohVector {
        CohVector::basis(self.len(), index)
    }

    pub fn table(&self) -> &CupTable {
        &self.table
    }

    pub fn cup_basis(&self, i: usize, j: usize) -> &CohVector {
        self.table.get(i, j)
    }

    pub fn cup(&self, u: &CohVector, v: &CohVector) -> CohVector {
        let mut out = CohVector::zero(self.len());
        for (i, x) in u.support() {
            for (j, y) in v.support() {
                out.add_scaled(&(x * y), self.table.get(i, j));
            }
        }
        out
    }

    /// Degree of the point-class component.
    pub fn integrate(&self, v: &CohVector) -> Rational {
        v.coeff(self.point).clone()
    }

    /// `∫ T_i ∪ T_j`.
    pub fn pairing(&self, i: usize, j: usize) -> Rational {
        self.integrate(self.table.get(i, j))
    }

    /// Divisor decomposition of `T_m` (codimension ≥ 2).
    pub fn decompose(&self, m: usize) -> &[DecompositionTerm] {
        &self.decompositions[m]
    }

    /// Codimension `c` if every nonzero coordinate of `v` has codimension `c`.
    pub fn pure_codim(&self, v: &CohVector) -> Option<u32> {
        let mut codims = v.support().map(|(i, _)| self.codims[i]);
        let first = codims.next()?;
        codims.all(|c| c == first).then_some(first)
    }

    /// The Hilbert scheme ring with its derived table.
    pub fn hilb2() -> Result<Self, RingError> {
        let table = build_cup_table()?;
        Self::new(
            4,
            vec![0, 1, 1, 2, 2, 2, 3, 3, 4],
            vec![T1, T2],
            (0..9).map(|e| 8 - e).collect(),
            table,
        )
    }

    /// `A*(P²)` with basis `1, H, H²`.
    pub fn projective_plane() -> Self {
        let table = CupTable::from_fn(3, |i, j| {
            if i + j <= 2 {
                CohVector::basis(3, i + j)
            } else {
                CohVector::zero(3)
            }
        });
        Self::new(2, vec![0, 1, 2], vec![1], vec![2, 1, 0], table)
            .expect("the P² ring is well formed")
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Polynomial in `T1, T2`, keyed by exponent pair.
type Poly = BTreeMap<(u32, u32), Rational>;

fn poly(terms: &[((u32, u32), i64)]) -> Poly {
    let mut p = Poly::new();
    for &(e, c) in terms {
        *p.entry(e).or_insert_with(Rational::zero) += Rational::from_integer(c.into());
    }
    p.retain(|_, c| !c.is_zero());
    p
}

fn poly_mul(x: &Poly, y: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(p1, q1), c1) in x {
        for (&(p2, q2), c2) in y {
            *out.entry((p1 + p2, q1 + q2)).or_insert_with(Rational::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Normal form modulo `T1³ = 0` and `T2³ = 3T1T2² − 6T1²T2`.
/// The surviving monomials are `T1^p T2^q` with `p, q ≤ 2`.
fn reduce(x: &Poly) -> Poly {
    let mut work: Vec<((u32, u32), Rational)> = x.iter().map(|(e, c)| (*e, c.clone())).collect();
    let mut out = Poly::new();
    while let Some(((p, q), c)) = work.pop() {
        if c.is_zero() || p >= 3 {
            continue;
        }
        if q >= 3 {
            work.push(((p + 1, q - 1), &c * Rational::from_integer(3.into())));
            work.push(((p + 2, q - 2), &c * Rational::from_integer((-6).into())));
            continue;
        }
        *out.entry((p, q)).or_insert_with(Rational::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Normal-form monomials in a fixed order, one per basis class.
const MONOMIALS: [(u32, u32); 9] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (2, 1),
    (1, 2),
    (2, 2),
];

/// `T0..T8` as polynomials in the generators.
pub fn hilb2_basis_polynomials() -> [Vec<((u32, u32), i64)>; 9] {
    [
        vec![((0, 0), 1)],
        vec![((1, 0), 1)],
        vec![((0, 1), 1)],
        vec![((2, 0), 1)],
        vec![((1, 1), 1), ((2, 0), -2)],
        vec![((2, 0), 1), ((1, 1), -1), ((0, 2), 1)],
        vec![((2, 1), 1)],
        vec![((1, 2), 1), ((2, 1), -3)],
        vec![((2, 2), 1)],
    ]
}

/// Derives the `T0..T8` multiplication table of `A*(H)` from the polynomial
/// presentation and checks the Poincaré-dual property `∫ T_i ∪ T_{8−j} = δ_ij`.
pub fn build_cup_table() -> Result<CupTable, RingError> {
    let basis: Vec<Poly> = hilb2_basis_polynomials().iter().map(|t| poly(t)).collect();
    let coords = |p: &Poly| -> Vec<Rational> {
        MONOMIALS
            .iter()
            .map(|m| p.get(m).cloned().unwrap_or_else(Rational::zero))
            .collect()
    };
    // rows: basis class -> monomial coordinates
    let to_monomials: Vec<Vec<Rational>> = basis.iter().map(|p| coords(&reduce(p))).collect();
    let from_monomials = linalg::invert(&to_monomials)
        .ok_or_else(|| RingError::Malformed("basis polynomials are dependent".into()))?;

    let table = CupTable::from_fn(9, |i, j| {
        let m = coords(&reduce(&poly_mul(&basis[i], &basis[j])));
        // row vector m times from_monomials gives T-coordinates
        let coeffs = (0..9)
            .map(|k| {
                (0..9)
                    .filter(|&r| !m[r].is_zero())
                    .fold(Rational::zero(), |acc, r| acc + &m[r] * &from_monomials[r][k])
            })
            .collect();
        CohVector::from_coeffs(coeffs)
    });

    for i in 0..9 {
        for j in 0..9 {
            let value = table.get(i, 8 - j).coeff(T8).clone();
            let expected = u8::from(i == j);
            if value != Rational::from_integer(expected.into()) {
                return Err(RingError::NotPoincareDual {
                    i,
                    j,
                    value: value.to_string(),
                    expected,
                });
            }
        }
    }
    Ok(table)
}

/// `S5 = T5 + T3`, the class of pairs of points on two fixed lines.
pub fn s5() -> CohVector {
    CohVector::from_terms(9, &[(T5, 1), (T3, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> CohomologyRing {
        CohomologyRing::hilb2().unwrap()
    }

    fn v(terms: &[(usize, i64)]) -> CohVector {
        CohVector::from_terms(9, terms)
    }

    fn t(i: usize) -> CohVector {
        CohVector::basis(9, i)
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn cup_examples() {
        let r = ring();
        assert_eq!(r.cup(&t(T1), &t(T2)), v(&[(T3, 2), (T4, 1)]));
        assert_eq!(r.cup(&r.cup(&t(T1), &t(T1)), &t(T1)), CohVector::zero(9));
        assert_eq!(r.cup(&t(T2), &t(T2)), v(&[(T3, 1), (T4, 1), (T5, 1)]));
        assert_eq!(r.cup(&t(T4), &t(T4)), t(T8));
    }

    #[test]
    fn table_entries() {
        let r = ring();
        assert_eq!(r.cup_basis(T1, T5), &v(&[(T6, 2), (T7, 1)]));
        assert_eq!(r.cup_basis(T2, T3), &t(T6));
        assert_eq!(r.cup_basis(T3, T5), &t(T8));
        assert_eq!(r.cup_basis(T1, T4), &t(T6));
        assert_eq!(r.cup_basis(T2, T4), &v(&[(T6, 1), (T7, 1)]));
        assert_eq!(r.cup_basis(T2, T5), &v(&[(T6, 1), (T7, 2)]));
    }

    #[test]
    fn duals_and_integrals() {
        let r = ring();
        assert_eq!(r.dual_index(4), 4);
        assert_eq!(r.dual_index(0), 8);
        assert_eq!(r.dual_index(1), 7);
        assert_eq!(r.dual_index(2), 6);
        assert_eq!(r.dual_index(3), 5);
        assert_eq!(r.integrate(&t(T8)), q(1));
        assert_eq!(r.integrate(&r.cup(&t(T3), &t(T4))), q(0));
        let t1t1 = r.cup(&t(T1), &t(T1));
        let t2t2 = r.cup(&t(T2), &t(T2));
        assert_eq!(r.integrate(&r.cup(&t1t1, &t2t2)), q(1));
        assert_eq!(r.pairing(T1, T7), q(1));
        assert_eq!(r.pairing(T2, T7), q(0));
    }

    #[test]
    fn top_degree_integrals_of_generators() {
        let r = ring();
        let t1 = t(T1);
        let t2 = t(T2);
        let t2_cubed = r.cup(&r.cup(&t2, &t2), &t2);
        assert_eq!(r.integrate(&r.cup(&t1, &t2_cubed)), q(3));
        assert_eq!(r.integrate(&r.cup(&t2, &t2_cubed)), q(3));
    }

    #[test]
    fn decompositions() {
        let r = ring();
        let terms = |m| {
            let mut out: Vec<(usize, usize, Rational)> = r
                .decompose(m)
                .iter()
                .map(|d| (d.divisor, d.lower, d.coeff.clone()))
                .collect();
            out.sort();
            out
        };
        assert_eq!(terms(T3), vec![(T1, T1, q(1))]);
        assert_eq!(terms(T4), vec![(T1, T1, q(-2)), (T1, T2, q(1))]);
        assert_eq!(terms(T8), vec![(T1, T7, q(1))]);
        for m in 3..9 {
            let mut sum = CohVector::zero(9);
            for d in r.decompose(m) {
                assert_eq!(r.codim(d.lower) + 1, r.codim(m));
                sum.add_scaled(&d.coeff, r.cup_basis(d.divisor, d.lower));
            }
            assert_eq!(sum, t(m), "decomposition of T{m}");
        }
    }

    #[test]
    fn gram_matrix_is_the_reversal_permutation() {
        let r = ring();
        for e in 0..9 {
            for f in 0..9 {
                let expected = q(i64::from(e + f == 8));
                assert_eq!(r.pairing(e, f), expected, "({e},{f})");
            }
        }
    }

    #[test]
    fn products_of_pure_classes_are_pure() {
        let r = ring();
        for i in 0..9 {
            for j in 0..9 {
                let p = r.cup_basis(i, j);
                let c = r.codim(i) + r.codim(j);
                match r.pure_codim(p) {
                    Some(pc) => assert_eq!(pc, c),
                    None => assert!(p.is_zero() || c > 4),
                }
            }
        }
    }

    #[test]
    fn s5_is_sum_of_t5_and_t3() {
        assert_eq!(s5(), v(&[(T3, 1), (T5, 1)]));
    }

    #[test]
    fn rejects_a_table_that_is_not_poincare_dual() {
        let good = ring();
        // swap the roles of T6 and T7 in every product: pairing breaks
        let bad = CupTable::from_fn(9, |i, j| {
            let mut p = good.cup_basis(i, j).clone();
            let (six, seven) = (p.coeff(T6).clone(), p.coeff(T7).clone());
            *p.coeff_mut(T6) = seven;
            *p.coeff_mut(T7) = six;
            p
        });
        let err = CohomologyRing::new(
            4,
            good.codims().to_vec(),
            vec![T1, T2],
            (0..9).map(|e| 8 - e).collect(),
            bad,
        );
        assert!(err.is_err());
    }

    #[test]
    fn projective_plane_ring() {
        let p2 = CohomologyRing::projective_plane();
        assert_eq!(p2.dual_index(0), 2);
        assert_eq!(p2.cup_basis(1, 1), &CohVector::basis(3, 2));
        assert_eq!(p2.decompose(2).len(), 1);
    }

    #[test]
    fn curve_class_pairings() {
        let c = CurveClass::new(1, 4);
        assert_eq!(c.t1_degree(), 1);
        assert_eq!(c.t2_degree(), 4);
        assert_eq!(c.diagonal_degree(), 6);
        assert_eq!(c.anticanonical_degree(), 12);
        assert!(CurveClass::new(0, 1) < CurveClass::new(5, 0).max(CurveClass::new(0, 2)));
        assert!(CurveClass::new(9, 0) < CurveClass::new(0, 1));
        let splits: Vec<_> = CurveClass::new(1, 1).splits().collect();
        assert_eq!(splits.len(), 2);
    }

    #[test]
    fn display() {
        assert_eq!(v(&[(T6, 2), (T7, -1)]).to_string(), "2T6 - T7");
        assert_eq!(CohVector::zero(9).to_string(), "0");
    }
}
