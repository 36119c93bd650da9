//! The published tables of hyperelliptic counts, and a checker that
//! recomputes them.
//!
//! Rows are genus `g = 0..=5`, columns degree `d = 2..=7`; `None` marks the
//! blank cells (`g > d − 2`).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::engine::Engine;
use crate::hyperelliptic::{invert_counts, CountTable, HyperellipticError};

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Column {
    /// The invariant `I^l(d, g)`.
    I,
    /// The count `E^l(d, g)`.
    E,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperTable {
    pub name: String,
    pub column: Column,
    /// Number of conjugate pairs.
    pub l: u32,
    /// `rows[g][d − 2]`.
    pub rows: Vec<Vec<Option<i64>>>,
}

impl PaperTable {
    pub fn get(&self, d: u32, g: u32) -> Option<i64> {
        *self.rows.get(g as usize)?.get(d.checked_sub(MIN_DEGREE)? as usize)?
    }
}

const X: Option<i64> = None;

macro_rules! row {
    ($($v:tt),*) => { [$(row!(@ $v)),*] };
    (@ X) => { X };
    (@ $v:literal) => { Some($v) };
}

const I_L0: [[Option<i64>; 6]; 6] = [
    row!(0, 0, 405, 560385, 1096808499, 3292618732704),
    row!(X, 0, 162, 224910, 460743174, 1470159619803),
    row!(X, X, 27, 37935, 89898984, 338090337018),
    row!(X, X, X, 135, 3933549, 29267016849),
    row!(X, X, X, X, 405, 539160678),
    row!(X, X, X, X, X, 945),
];

const E_L0: [[Option<i64>; 6]; 6] = [
    row!(0, 0, 0, 0, 0, 0),
    row!(X, 0, 0, 0, 0, 0),
    row!(X, X, 27, 36855, 58444767, 122824720116),
    row!(X, X, X, 135, 3929499, 23875461099),
    row!(X, X, X, X, 405, 539149338),
    row!(X, X, X, X, X, 945),
];

const I_L1: [[Option<i64>; 6]; 6] = [
    row!(0, 4, 975, 500070, 510209009, 936943088028),
    row!(X, 1, 255, 147780, 172751014, 358483479813),
    row!(X, X, 5, 10138, 21081609, 61683241918),
    row!(X, X, X, 12, 558749, 3685184208),
    row!(X, X, X, X, 22, 32184102),
    row!(X, X, X, X, X, 35),
];

const E_L1: [[Option<i64>; 6]; 6] = [
    row!(0, 0, 0, 0, 0, 0),
    row!(X, 1, 225, 87192, 57435240, 60478511040),
    row!(X, X, 5, 10042, 16612387, 33328207904),
    row!(X, X, X, 12, 558529, 3363345078),
    row!(X, X, X, X, 22, 32183682),
    row!(X, X, X, X, X, 35),
];

const I_L2: [[Option<i64>; 6]; 6] = [
    row!(1, 16, 1279, 317408, 187613888, 222541278466),
    row!(X, 1, 167, 63228, 49635964, 72095337199),
    row!(X, X, 1, 2536, 4254399, 9650092804),
    row!(X, X, X, 1, 65417, 402592233),
    row!(X, X, X, X, 1, 1900762),
    row!(X, X, X, X, X, 1),
];

const E_L2: [[Option<i64>; 6]; 6] = [
    row!(1, 12, 620, 87304, 26312976, 14616808192),
    row!(X, 1, 161, 48032, 25417860, 22151587040),
    row!(X, X, 1, 2528, 3731098, 6495881498),
    row!(X, X, X, 1, 65407, 383584667),
    row!(X, X, X, X, 1, 1900750),
    row!(X, X, X, X, X, 1),
];

/// The six reference tables, in print order.
pub fn paper_tables() -> Vec<PaperTable> {
    let make = |name: &str, column, l, rows: &[[Option<i64>; 6]; 6]| PaperTable {
        name: name.to_string(),
        column,
        l,
        rows: rows.iter().map(|r| r.to_vec()).collect(),
    };
    vec![
        make("I(T4^(3d+1))", Column::I, 0, &I_L0),
        make("E(d,g)", Column::E, 0, &E_L0),
        make("I(T4^(3d-2)*T8)", Column::I, 1, &I_L1),
        make("E^1(d,g)", Column::E, 1, &E_L1),
        make("I(T4^(3d-5)*T8^2)", Column::I, 2, &I_L2),
        make("E^2(d,g)", Column::E, 2, &E_L2),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub table: String,
    pub d: u32,
    pub g: u32,
    pub expected: String,
    pub computed: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TablesReport {
    pub max_degree: u32,
    pub tables: usize,
    pub cells_checked: usize,
    pub mismatches: Vec<Mismatch>,
    /// Computed `E^l(d, d − 1)` for each `(l, d)`, which the tables leave out.
    pub boundary: Vec<(u32, u32, String)>,
    #[serde(skip)]
    pub counts: Vec<CountTable>,
}

impl TablesReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares computed count tables against `expected` cell by cell.
pub fn compare(expected: &[PaperTable], counts: &[CountTable], max_degree: u32) -> (usize, Vec<Mismatch>) {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for table in expected {
        for d in MIN_DEGREE..=max_degree {
            let Some(computed) = counts.iter().find(|c| c.d == d && c.l == table.l) else {
                continue;
            };
            for (g, _) in table.rows.iter().enumerate() {
                let Some(want) = table.get(d, g as u32) else {
                    continue;
                };
                checked += 1;
                let got = match table.column {
                    Column::I => computed.i(g as u32).map(|v| v.to_string()),
                    Column::E => computed.e(g as u32).map(|v| v.to_string()),
                };
                let want = want.to_string();
                if got.as_deref() != Some(want.as_str()) {
                    mismatches.push(Mismatch {
                        table: table.name.clone(),
                        d,
                        g: g as u32,
                        expected: want,
                        computed: got.unwrap_or_else(|| "missing".into()),
                    });
                }
            }
        }
    }
    (checked, mismatches)
}

/// Recomputes every column up to `max_degree` and compares with `expected`.
pub fn verify_tables(
    engine: &Engine,
    expected: &[PaperTable],
    max_degree: u32,
) -> Result<TablesReport, HyperellipticError> {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&max_degree) {
        return Err(HyperellipticError::InvalidQuery(format!(
            "max degree must be in {MIN_DEGREE}..={MAX_DEGREE}, got {max_degree}"
        )));
    }
    let mut ls: Vec<u32> = expected.iter().map(|t| t.l).collect();
    ls.sort();
    ls.dedup();
    let mut counts = Vec::new();
    // degree outermost so each engine stage is solved once, in order
    for d in MIN_DEGREE..=max_degree {
        for &l in &ls {
            counts.push(invert_counts(engine, d, l)?);
        }
    }
    let (cells_checked, mismatches) = compare(expected, &counts, max_degree);
    let boundary = counts
        .iter()
        .map(|c| (c.l, c.d, c.boundary().to_string()))
        .collect();
    Ok(TablesReport {
        max_degree,
        tables: expected.len(),
        cells_checked,
        mismatches,
        boundary,
        counts,
    })
}

/// `E^l(d, d − 1)` values that are nonzero.
pub fn nonzero_boundaries(report: &TablesReport) -> Vec<(u32, u32, BigInt)> {
    report
        .counts
        .iter()
        .filter(|c| c.boundary() != &BigInt::from(0))
        .map(|c| (c.l, c.d, c.boundary().clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shape() {
        let tables = paper_tables();
        assert_eq!(tables.len(), 6);
        for t in &tables {
            for d in MIN_DEGREE..=MAX_DEGREE {
                for g in 0..6 {
                    assert_eq!(t.get(d, g).is_some(), g + 2 <= d, "{} d={d} g={g}", t.name);
                }
            }
        }
        assert_eq!(tables[0].get(7, 0), Some(3292618732704));
        assert_eq!(tables[5].get(7, 0), Some(14616808192));
    }

    #[test]
    fn small_degrees_match() {
        let e = Engine::hilb2();
        let report = verify_tables(&e, &paper_tables(), 3).unwrap();
        assert!(report.pass(), "{:?}", report.mismatches);
        assert_eq!(report.cells_checked, 6 * 3);
        assert!(nonzero_boundaries(&report).is_empty());
    }

    #[test]
    fn tampered_fixture_is_reported() {
        let e = Engine::hilb2();
        let mut tables = paper_tables();
        tables[2].rows[1][1] = Some(2);
        let report = verify_tables(&e, &tables, 3).unwrap();
        assert_eq!(report.mismatches.len(), 1);
        let m = &report.mismatches[0];
        assert_eq!((m.d, m.g, m.computed.as_str()), (3, 1, "1"));
    }
}
