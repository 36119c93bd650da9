//! Incremental exact Gauss–Jordan elimination for one stage.
//!
//! Rows are kept in reduced row-echelon form at all times: every stored row has
//! coefficient 1 on its pivot and no entry on any other pivot column. A new
//! equation is therefore reduced in a single pass.

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::equation::Accumulator;
use super::Insertions;
use crate::Rational;

type SparseRow = Vec<(usize, Rational)>;

#[derive(Debug)]
struct PivotRow {
    entries: SparseRow,
    constant: Rational,
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum Insert {
    NewPivot,
    Redundant,
    /// Reduced to `0 = c` with `c ≠ 0`.
    Inconsistent,
}

#[derive(Debug)]
pub(crate) struct StageSystem {
    columns: Vec<Insertions>,
    index: FxHashMap<Insertions, usize>,
    rows: Vec<PivotRow>,
    pivot_row: Vec<Option<usize>>,
}

/// `target −= factor · source` on sorted sparse rows.
fn sub_scaled(target: &SparseRow, factor: &Rational, source: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut x, mut y) = (0, 0);
    while x < target.len() || y < source.len() {
        let tc = target.get(x).map(|e| e.0);
        let sc = source.get(y).map(|e| e.0);
        match (tc, sc) {
            (Some(t), Some(s)) if t == s => {
                let v = &target[x].1 - factor * &source[y].1;
                if !v.is_zero() {
                    out.push((t, v));
                }
                x += 1;
                y += 1;
            }
            (Some(t), Some(s)) if t < s => {
                out.push(target[x].clone());
                x += 1;
            }
            (Some(_), None) => {
                out.push(target[x].clone());
                x += 1;
            }
            (_, Some(s)) => {
                out.push((s, -(factor * &source[y].1)));
                y += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

impl StageSystem {
    pub fn new(columns: Vec<Insertions>) -> Self {
        let index = columns.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let n = columns.len();
        Self {
            columns,
            index,
            rows: Vec::new(),
            pivot_row: vec![None; n],
        }
    }

    pub fn unknowns(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.unknowns()
    }

    pub fn columns(&self) -> &[Insertions] {
        &self.columns
    }

    /// Column index of an unknown, `None` if it is not part of this stage.
    pub fn column(&self, ins: &Insertions) -> Option<usize> {
        self.index.get(ins).copied()
    }

    /// Adds `Σ coeff·x + constant = 0`. Every term must be a stage unknown.
    pub fn insert(&mut self, mut row: SparseRow, constant: Rational) -> Insert {
        row.sort_by_key(|e| e.0);
        row.retain(|e| !e.1.is_zero());
        let mut constant = constant;

        let pivots: Vec<(usize, Rational)> = row
            .iter()
            .filter(|(c, _)| self.pivot_row[*c].is_some())
            .cloned()
            .collect();
        for (col, coeff) in pivots {
            let r = &self.rows[self.pivot_row[col].unwrap()];
            row = sub_scaled(&row, &coeff, &r.entries);
            constant -= &coeff * &r.constant;
        }

        let Some(&(pivot, ref lead)) = row.first() else {
            return if constant.is_zero() {
                Insert::Redundant
            } else {
                Insert::Inconsistent
            };
        };
        if !lead.is_one() {
            let inv = Rational::one() / lead;
            for e in row.iter_mut() {
                e.1 *= &inv;
            }
            constant *= &inv;
        }

        let new_row = PivotRow {
            entries: row,
            constant,
        };
        for existing in self.rows.iter_mut() {
            if let Ok(pos) = existing.entries.binary_search_by_key(&pivot, |e| e.0) {
                let coeff = existing.entries[pos].1.clone();
                existing.entries = sub_scaled(&existing.entries, &coeff, &new_row.entries);
                existing.constant -= &coeff * &new_row.constant;
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(new_row);
        Insert::NewPivot
    }

    /// Converts an equation over keyed unknowns. `Err` carries an unknown that
    /// does not belong to this stage.
    pub fn insert_accumulator(&mut self, acc: Accumulator) -> Result<Insert, Insertions> {
        let mut row = Vec::with_capacity(acc.terms.len());
        for (ins, coeff) in acc.terms {
            let col = self.column(&ins).ok_or(ins)?;
            row.push((col, coeff));
        }
        Ok(self.insert(row, acc.constant))
    }

    /// Values of all unknowns once the system has full rank.
    pub fn solution(&self) -> Option<Vec<Rational>> {
        if !self.is_full() {
            return None;
        }
        let mut values = vec![Rational::zero(); self.unknowns()];
        for (col, r) in self.pivot_row.iter().enumerate() {
            let row = &self.rows[(*r)?];
            debug_assert_eq!(row.entries.len(), 1);
            values[col] = -row.constant.clone();
        }
        Some(values)
    }

    /// Unknowns that are not yet pivots.
    pub fn free_columns(&self) -> Vec<Insertions> {
        self.pivot_row
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_none())
            .map(|(c, _)| self.columns[c])
            .collect()
    }
}
