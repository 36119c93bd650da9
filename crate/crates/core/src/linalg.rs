//! Small dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::Rational;

/// Solves `Σ x_c · columns[c] = rhs` exactly. Returns `None` when the system has
/// no solution or the columns are linearly dependent.
pub(crate) fn solve_columns(columns: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let rows = rhs.len();
    let cols = columns.len();
    // augmented matrix, row-major
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();

    let mut pivot_row = 0;
    let mut pivot_cols = Vec::with_capacity(cols);
    for col in 0..cols {
        let p = (pivot_row..rows).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, p);
        let inv = Rational::one() / &m[pivot_row][col];
        for x in m[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot = m[pivot_row][col..].to_vec();
                for (x, y) in m[r][col..].iter_mut().zip(&pivot) {
                    *x -= &factor * y;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    // remaining rows must be consistent
    if m[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|r| m[r][cols].clone()).collect())
}

/// Inverts a square matrix given row-major. `None` if singular.
pub(crate) fn invert(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let mut inverse = vec![vec![Rational::zero(); n]; n];
    // column c of the inverse solves M x = e_c
    let columns: Vec<Vec<Rational>> = (0..n)
        .map(|c| (0..n).map(|r| matrix[r][c].clone()).collect())
        .collect();
    for c in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[c] = Rational::one();
        let x = solve_columns(&columns, &e)?;
        for r in 0..n {
            inverse[r][c] = x[r].clone();
        }
    }
    Some(inverse)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1
        let cols = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let x = solve_columns(&cols, &[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
    }

    #[test]
    fn rejects_inconsistent_overdetermined() {
        let cols = vec![vec![q(1), q(0), q(1)]];
        assert!(solve_columns(&cols, &[q(1), q(1), q(1)]).is_none());
        assert_eq!(solve_columns(&cols, &[q(2), q(0), q(2)]), Some(vec![q(2)]));
    }

    #[test]
    fn inverse_of_triangular() {
        let m = vec![vec![q(1), q(2)], vec![q(0), q(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-2)], vec![q(0), q(1)]]);
        assert!(invert(&[vec![q(1), q(1)], vec![q(2), q(2)]]).is_none());
    }
}
