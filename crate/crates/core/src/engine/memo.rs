use num_traits::ToPrimitive;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use super::{EngineError, InvariantKey, StageId};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    BaseCase,
    Solved,
    Loaded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoEntry {
    pub value: Rational,
    pub provenance: Provenance,
    /// `value` as a machine integer when it is one and fits.
    pub(crate) small: Option<i128>,
}

fn small_integer(value: &Rational) -> Option<i128> {
    if value.is_integer() {
        value.numer().to_i128()
    } else {
        None
    }
}

/// Write-once map from canonical keys to exact values.
#[derive(Debug, Default)]
pub struct MemoStore {
    entries: FxHashMap<InvariantKey, MemoEntry>,
    solved: FxHashSet<StageId>,
}

impl MemoStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &InvariantKey) -> Option<&Rational> {
        self.entries.get(key).map(|e| &e.value)
    }

    pub fn entry(&self, key: &InvariantKey) -> Option<&MemoEntry> {
        self.entries.get(key)
    }

    /// Records a value. Re-inserting the same value is a no-op; a different
    /// value is a [`EngineError::ConflictingValue`].
    pub fn insert(
        &mut self,
        key: InvariantKey,
        value: Rational,
        provenance: Provenance,
    ) -> Result<(), EngineError> {
        match self.entries.get(&key) {
            Some(existing) if existing.value != value => Err(EngineError::ConflictingValue {
                key,
                stored: existing.value.to_string(),
                computed: value.to_string(),
            }),
            Some(_) => Ok(()),
            None => {
                let small = small_integer(&value);
                self.entries.insert(
                    key,
                    MemoEntry {
                        value,
                        provenance,
                        small,
                    },
                );
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_solved(&self, stage: &StageId) -> bool {
        self.solved.contains(stage)
    }

    pub fn mark_solved(&mut self, stage: StageId) {
        self.solved.insert(stage);
    }

    pub fn solved_stages(&self) -> usize {
        self.solved.len()
    }

    /// Entries in canonical key order.
    pub fn sorted_entries(&self) -> Vec<(&InvariantKey, &MemoEntry)> {
        let mut out: Vec<_> = self.entries.iter().collect();
        out.sort_by(|x, y| x.0.cmp(y.0));
        out
    }
}

/// On-disk cache: `{"target": ..., "entries": [{"a","b","ins","num","den"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub target: String,
    pub entries: Vec<CacheEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub a: u32,
    pub b: u32,
    pub ins: Vec<usize>,
    pub num: String,
    pub den: String,
}

impl CacheFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cache entries are plain data")
    }

    pub fn from_json(text: &str) -> Result<Self, EngineError> {
        serde_json::from_str(text).map_err(|e| EngineError::Cache(e.to_string()))
    }
}
