//! Genus-0 Gromov–Witten invariants by WDVV reconstruction.
//!
//! Invariants are canonicalized with the divisor, fundamental-class and
//! dimension axioms into [`InvariantKey`]s. Keys with at most two insertions
//! come from the target's seed values. Everything else is grouped into stages
//! (one curve class, one insertion count) and solved jointly: WDVV equations are
//! harvested around each unknown, all earlier quantities are substituted, and
//! the resulting sparse linear system is reduced exactly until it has full rank.
//!
//! Stages are solved in increasing `(b, a, n)` order. Every splitting
//! `β = β1 + β2` with both parts nonzero has both parts strictly smaller than `β`
//! in that order, and the collapsed degree-zero terms never carry more
//! insertions than the stage being solved, so all substituted values exist.

mod equation;
mod form;
mod key;
mod memo;
mod solve;

use std::sync::{Arc, Mutex, RwLock};

use num_traits::Zero;
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::Serialize;
use thiserror::Error;

use crate::chow_ring::{CohVector, CurveClass};
use crate::target::TargetDatum;
use crate::Rational;
use equation::EquationContext;
use solve::{Insert, StageSystem};

pub use form::LinearForm;
pub use key::{Insertions, InvariantKey, StageId};
pub use memo::{CacheEntry, CacheFile, MemoEntry, MemoStore, Provenance};

/// Equations built in parallel between two sequential elimination passes.
const CHUNK: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("degree-zero invariants are not supported")]
    DegreeZero,
    #[error("curve class {0} is not effective on this target")]
    Ineffective(CurveClass),
    #[error("basis index {0} out of range")]
    InvalidIndex(usize),
    #[error("insertion has {got} coordinates, target basis has {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("{stage}: {missing} of {unknowns} unknowns undetermined after fallback harvest (first: {first})")]
    UnderdeterminedStage {
        stage: StageId,
        unknowns: usize,
        missing: usize,
        first: InvariantKey,
    },
    #[error("{stage}: inconsistent WDVV system")]
    InconsistentSystem { stage: StageId },
    #[error("no value available for {0}")]
    MissingValue(InvariantKey),
    #[error("equation for {stage} mentions {key} outside the stage")]
    ForeignUnknown { stage: StageId, key: InvariantKey },
    #[error("conflicting values for {key}: stored {stored}, computed {computed}")]
    ConflictingValue {
        key: InvariantKey,
        stored: String,
        computed: String,
    },
    #[error("invalid cache: {0}")]
    Cache(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// Which equation set determined a stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HarvestTier {
    /// Frames built from divisor decompositions around each unknown.
    Primary,
    /// Exhaustive frames over all admissible insertions.
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageReport {
    pub class: CurveClass,
    pub n: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub tier: HarvestTier,
}

type Frame = ([usize; 4], Insertions);

/// Reconstruction engine over one target datum, with its memo store.
pub struct Engine {
    datum: TargetDatum,
    store: RwLock<MemoStore>,
    solving: Mutex<()>,
    reports: Mutex<Vec<StageReport>>,
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("datum", &self.datum)
            .field("memo", &self.memo_len())
            .finish_non_exhaustive()
    }
}

impl Engine {
    pub fn new(datum: TargetDatum) -> Self {
        Self {
            datum,
            store: RwLock::new(MemoStore::new()),
            solving: Mutex::new(()),
            reports: Mutex::new(Vec::new()),
            pool: None,
        }
    }

    /// Engine on `Hilb²(P²)`.
    pub fn hilb2() -> Self {
        Self::new(TargetDatum::hilb2().expect("the Hilb² ring table validates"))
    }

    /// Engine on `P²`.
    pub fn p2() -> Self {
        Self::new(TargetDatum::p2())
    }

    /// Runs equation harvesting on a dedicated pool of `threads` workers.
    pub fn with_threads(mut self, threads: usize) -> Result<Self, EngineError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| EngineError::ThreadPool(e.to_string()))?;
        self.pool = Some(Arc::new(pool));
        Ok(self)
    }

    pub fn datum(&self) -> &TargetDatum {
        &self.datum
    }

    pub fn memo_len(&self) -> usize {
        self.store.read().unwrap().len()
    }

    /// Per-stage diagnostics in solving order.
    pub fn reports(&self) -> Vec<StageReport> {
        self.reports.lock().unwrap().clone()
    }

    pub fn base_case(&self, key: &InvariantKey) -> Option<Rational> {
        self.datum.base_case(key)
    }

    fn check_class(&self, class: CurveClass) -> Result<(), EngineError> {
        if class.is_zero() {
            return Err(EngineError::DegreeZero);
        }
        if !self.datum.is_effective(class) {
            return Err(EngineError::Ineffective(class));
        }
        Ok(())
    }

    /// Multilinear expansion of `I_β(γ1 ⋯ γn)` into canonical keys.
    pub fn normalize(
        &self,
        class: CurveClass,
        insertions: &[CohVector],
    ) -> Result<LinearForm, EngineError> {
        self.check_class(class)?;
        let len = self.datum.ring().len();
        if let Some(v) = insertions.iter().find(|v| v.len() != len) {
            return Err(EngineError::WrongLength {
                got: v.len(),
                expected: len,
            });
        }
        let store = MemoStore::new();
        let ctx = EquationContext {
            datum: &self.datum,
            store: &store,
            stage: None,
        };
        let mut form = LinearForm::zero();
        let mut indices = Vec::with_capacity(insertions.len());
        expand(insertions, &mut indices, Rational::from_integer(1.into()), &mut |idx, coeff| {
            if let Some((scalar, key)) = ctx.normalize(class, idx, &Insertions::new()) {
                form.add_term(key, coeff * Rational::from_integer(scalar.into()));
            }
        });
        Ok(form)
    }

    /// Same as [`Engine::normalize`] for basis insertions.
    pub fn normalize_indices(
        &self,
        class: CurveClass,
        indices: &[usize],
    ) -> Result<LinearForm, EngineError> {
        let vectors = self.basis_vectors(indices)?;
        self.normalize(class, &vectors)
    }

    fn basis_vectors(&self, indices: &[usize]) -> Result<Vec<CohVector>, EngineError> {
        let ring = self.datum.ring();
        indices
            .iter()
            .map(|&i| {
                if i < ring.len() {
                    Ok(ring.basis(i))
                } else {
                    Err(EngineError::InvalidIndex(i))
                }
            })
            .collect()
    }

    /// `I_β(γ1 ⋯ γn)`, solving whatever stages it depends on.
    pub fn invariant(
        &self,
        class: CurveClass,
        insertions: &[CohVector],
    ) -> Result<Rational, EngineError> {
        self.normalize(class, insertions)?
            .evaluate(|key| self.value(key))
    }

    /// `I_β(T_{i1} ⋯ T_{in})`.
    pub fn invariant_indices(
        &self,
        class: CurveClass,
        indices: &[usize],
    ) -> Result<Rational, EngineError> {
        self.normalize_indices(class, indices)?
            .evaluate(|key| self.value(key))
    }

    /// Value of a canonical key.
    pub fn value(&self, key: &InvariantKey) -> Result<Rational, EngineError> {
        self.check_class(key.class)?;
        if !self.datum.is_admissible(key) {
            return Ok(Rational::zero());
        }
        if let Some(v) = self.datum.base_case(key) {
            self.store
                .write()
                .unwrap()
                .insert(*key, v.clone(), Provenance::BaseCase)?;
            return Ok(v);
        }
        if let Some(v) = self.store.read().unwrap().get(key) {
            return Ok(v.clone());
        }
        self.ensure(key.stage(), true)?;
        self.store
            .read()
            .unwrap()
            .get(key)
            .cloned()
            .ok_or(EngineError::MissingValue(*key))
    }

    /// Symbolic WDVV equation for `class` and `frame`; unknowns are the keys of
    /// stage `(class, |extras| + 3)`, everything else is substituted.
    pub fn build_equation(
        &self,
        class: CurveClass,
        frame: [usize; 4],
        extras: &Insertions,
    ) -> Result<LinearForm, EngineError> {
        self.check_class(class)?;
        self.check_frame(frame, extras)?;
        let stage = StageId {
            class,
            n: extras.len() + 3,
        };
        self.ensure(stage, false)?;
        let store = self.store.read().unwrap();
        let ctx = EquationContext {
            datum: &self.datum,
            store: &store,
            stage: Some(stage),
        };
        let acc = ctx.build(class, frame, extras)?;
        let mut form = LinearForm {
            terms: Default::default(),
            constant: acc.constant,
        };
        for (ins, coeff) in acc.terms {
            form.add_term(InvariantKey::new(class, ins), coeff);
        }
        Ok(form)
    }

    /// Fully evaluated WDVV equation; zero whenever the invariants are correct.
    pub fn wdvv_residual(
        &self,
        class: CurveClass,
        frame: [usize; 4],
        extras: &Insertions,
    ) -> Result<Rational, EngineError> {
        self.check_class(class)?;
        self.check_frame(frame, extras)?;
        let stage = StageId {
            class,
            n: extras.len() + 3,
        };
        self.ensure(stage, true)?;
        let store = self.store.read().unwrap();
        let ctx = EquationContext {
            datum: &self.datum,
            store: &store,
            stage: None,
        };
        let acc = ctx.build(class, frame, extras)?;
        debug_assert!(acc.terms.is_empty());
        Ok(acc.constant)
    }

    fn check_frame(&self, frame: [usize; 4], extras: &Insertions) -> Result<(), EngineError> {
        let n = self.datum.ring().len();
        if let Some(&bad) = frame.iter().find(|&&i| i >= n) {
            return Err(EngineError::InvalidIndex(bad));
        }
        if let Some(bad) = (n..extras.counts().len()).find(|&i| extras.count(i) > 0) {
            return Err(EngineError::InvalidIndex(bad));
        }
        Ok(())
    }

    /// Solves `stage` (and everything before it) and reports how.
    pub fn solve_stage(&self, stage: StageId) -> Result<Option<StageReport>, EngineError> {
        self.check_class(stage.class)?;
        self.ensure(stage, true)?;
        Ok(self
            .reports
            .lock()
            .unwrap()
            .iter()
            .find(|r| r.class == stage.class && r.n == stage.n)
            .cloned())
    }

    /// Solves every stage `(β', n')` with `β' ≤ β` componentwise and `n' ≤ n`,
    /// optionally excluding `target` itself.
    fn ensure(&self, target: StageId, include_target: bool) -> Result<(), EngineError> {
        let mut stages = Vec::new();
        for b in 0..=target.class.b {
            for a in 0..=target.class.a {
                let class = CurveClass::new(a, b);
                if class.is_zero() || !self.datum.is_effective(class) {
                    continue;
                }
                for n in 3..=target.n {
                    let stage = StageId { class, n };
                    if stage != target || include_target {
                        stages.push(stage);
                    }
                }
            }
        }
        stages.sort();
        stages.retain(|s| !self.store.read().unwrap().is_solved(s));
        if stages.is_empty() {
            return Ok(());
        }

        let _guard = self.solving.lock().unwrap();
        for stage in stages {
            if self.store.read().unwrap().is_solved(&stage) {
                continue;
            }
            let unknowns = self.unknowns(stage);
            let mut solved = Vec::new();
            if !unknowns.is_empty() {
                let store = self.store.read().unwrap();
                let (values, report) = self.solve_with(stage, unknowns, &store)?;
                drop(store);
                solved = values;
                self.reports.lock().unwrap().push(report);
            }
            let mut store = self.store.write().unwrap();
            for (key, value) in solved {
                store.insert(key, value, Provenance::Solved)?;
            }
            store.mark_solved(stage);
        }
        Ok(())
    }

    /// Admissible keys of a stage that have no seed value, in canonical order.
    pub fn unknowns(&self, stage: StageId) -> Vec<Insertions> {
        let ring = self.datum.ring();
        let candidates: Vec<usize> = (0..ring.len())
            .filter(|&i| ring.codim(i) >= 2)
            .collect();
        let target = self.datum.expected_codim(stage.class, stage.n);
        let mut out = Vec::new();
        multisets(&candidates, ring.codims(), stage.n, target, &mut |ins| {
            let key = InvariantKey::new(stage.class, ins);
            if self.datum.base_case(&key).is_none() {
                out.push(ins);
            }
        });
        out.sort();
        out
    }

    fn solve_with(
        &self,
        stage: StageId,
        unknowns: Vec<Insertions>,
        store: &MemoStore,
    ) -> Result<(Vec<(InvariantKey, Rational)>, StageReport), EngineError> {
        let ctx = EquationContext {
            datum: &self.datum,
            store,
            stage: Some(stage),
        };
        let mut system = StageSystem::new(unknowns);
        let mut seen = FxHashSet::default();
        let mut equations = 0;

        let primary = self.primary_frames(system.columns(), &mut seen);
        self.feed(&ctx, stage, &mut system, &primary, &mut equations)?;
        let mut tier = HarvestTier::Primary;
        if !system.is_full() {
            tier = HarvestTier::Fallback;
            let fallback = self.fallback_frames(stage, &mut seen);
            self.feed(&ctx, stage, &mut system, &fallback, &mut equations)?;
        }
        let Some(values) = system.solution() else {
            let free = system.free_columns();
            return Err(EngineError::UnderdeterminedStage {
                stage,
                unknowns: system.unknowns(),
                missing: free.len(),
                first: InvariantKey::new(stage.class, free[0]),
            });
        };
        let report = StageReport {
            class: stage.class,
            n: stage.n,
            unknowns: system.unknowns(),
            equations,
            tier,
        };
        let solved = system
            .columns()
            .iter()
            .zip(values)
            .map(|(ins, v)| (InvariantKey::new(stage.class, *ins), v))
            .collect();
        Ok((solved, report))
    }

    /// Builds equations in parallel, eliminates them in frame order, and stops
    /// as soon as every unknown has a pivot.
    fn feed(
        &self,
        ctx: &EquationContext<'_>,
        stage: StageId,
        system: &mut StageSystem,
        frames: &[Frame],
        equations: &mut usize,
    ) -> Result<(), EngineError> {
        for chunk in frames.chunks(CHUNK) {
            if system.is_full() {
                break;
            }
            let build = || -> Vec<_> {
                chunk
                    .par_iter()
                    .map(|(frame, extras)| ctx.build(stage.class, *frame, extras))
                    .collect()
            };
            let built = match &self.pool {
                Some(pool) => pool.install(build),
                None => build(),
            };
            for acc in built {
                let acc = acc?;
                if acc.terms.is_empty() && acc.constant.is_zero() {
                    continue;
                }
                *equations += 1;
                match system.insert_accumulator(acc) {
                    Ok(Insert::Inconsistent) => return Err(EngineError::InconsistentSystem { stage }),
                    Ok(_) => {}
                    Err(ins) => {
                        return Err(EngineError::ForeignUnknown {
                            stage,
                            key: InvariantKey::new(stage.class, ins),
                        })
                    }
                }
                if system.is_full() {
                    break;
                }
            }
        }
        Ok(())
    }

    /// For each unknown `M`, each `t ∈ M`, each pair `{u, v} ⊆ M − t` and each
    /// decomposition term `(D, ρ)` of `T_t`: the frame `(D, ρ, u, v)` with
    /// extras `M − {t, u, v}`. Frames are interleaved across unknowns so the
    /// first pass gives every unknown one equation.
    fn primary_frames(&self, unknowns: &[Insertions], seen: &mut FxHashSet<Frame>) -> Vec<Frame> {
        let ring = self.datum.ring();
        let per_unknown: Vec<Vec<Frame>> = unknowns
            .iter()
            .map(|m| {
                let mut frames = Vec::new();
                for t in m.distinct() {
                    let mut rest = *m;
                    rest.remove(t);
                    for u in rest.distinct() {
                        let mut rest_u = rest;
                        rest_u.remove(u);
                        for v in rest_u.distinct().filter(|&v| v >= u) {
                            let mut extras = rest_u;
                            extras.remove(v);
                            for term in ring.decompose(t) {
                                if term.lower != v {
                                    frames.push(([term.divisor, term.lower, u, v], extras));
                                }
                            }
                        }
                    }
                }
                frames
            })
            .collect();
        let longest = per_unknown.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = Vec::new();
        for round in 0..longest {
            for frames in &per_unknown {
                if let Some(f) = frames.get(round) {
                    if seen.insert(*f) {
                        out.push(*f);
                    }
                }
            }
        }
        out
    }

    /// Every homogeneous frame `(D, j, k, l)` with `D` a divisor, `j, k, l` of
    /// codimension ≥ 2, and extras of size `n − 3`.
    fn fallback_frames(&self, stage: StageId, seen: &mut FxHashSet<Frame>) -> Vec<Frame> {
        let ring = self.datum.ring();
        let higher: Vec<usize> = (0..ring.len()).filter(|&i| ring.codim(i) >= 2).collect();
        let target = self.datum.expected_codim(stage.class, stage.n);
        let mut out = Vec::new();
        for &d in ring.divisors() {
            for &j in &higher {
                for &k in &higher {
                    for &l in &higher {
                        if j == l {
                            continue;
                        }
                        let frame_codim = (ring.codim(d) + ring.codim(j) + ring.codim(k) + ring.codim(l)) as i64;
                        multisets(&higher, ring.codims(), stage.n - 3, target - frame_codim, &mut |e| {
                            let f = ([d, j, k, l], e);
                            if seen.insert(f) {
                                out.push(f);
                            }
                        });
                    }
                }
            }
        }
        out
    }

    /// Snapshot of the memo store as a cache file.
    pub fn export_cache(&self) -> CacheFile {
        let store = self.store.read().unwrap();
        let entries = store
            .sorted_entries()
            .into_iter()
            .map(|(key, entry)| CacheEntry {
                a: key.class.a,
                b: key.class.b,
                ins: key.insertions.indices(),
                num: entry.value.numer().to_string(),
                den: entry.value.denom().to_string(),
            })
            .collect();
        CacheFile {
            target: self.datum.name().to_string(),
            entries,
        }
    }

    /// Loads cache entries after validating each one; returns the number loaded.
    ///
    /// Entries must be admissible, agree with seed values and with anything
    /// already in the store. Stages whose unknowns are all present afterwards are
    /// marked solved.
    pub fn import_cache(&self, cache: &CacheFile) -> Result<usize, EngineError> {
        if cache.target != self.datum.name() {
            return Err(EngineError::Cache(format!(
                "cache is for target {:?}, engine runs {:?}",
                cache.target,
                self.datum.name()
            )));
        }
        let ring = self.datum.ring();
        let mut parsed = Vec::with_capacity(cache.entries.len());
        for e in &cache.entries {
            let class = CurveClass::new(e.a, e.b);
            self.check_class(class)
                .map_err(|err| EngineError::Cache(err.to_string()))?;
            if let Some(&bad) = e.ins.iter().find(|&&i| i >= ring.len() || ring.codim(i) < 2) {
                return Err(EngineError::Cache(format!("insertion index {bad} is not canonical")));
            }
            let key = InvariantKey::from_indices(class, &e.ins);
            if !self.datum.is_admissible(&key) {
                return Err(EngineError::Cache(format!("{key} fails the dimension constraint")));
            }
            let num = e.num.parse().map_err(|_| EngineError::Cache(format!("bad numerator {:?}", e.num)))?;
            let den: num_bigint::BigInt =
                e.den.parse().map_err(|_| EngineError::Cache(format!("bad denominator {:?}", e.den)))?;
            if den.is_zero() {
                return Err(EngineError::Cache(format!("zero denominator for {key}")));
            }
            let value = Rational::new(num, den);
            if let Some(seed) = self.datum.base_case(&key) {
                if seed != value {
                    return Err(EngineError::ConflictingValue {
                        key,
                        stored: value.to_string(),
                        computed: seed.to_string(),
                    });
                }
            }
            parsed.push((key, value));
        }

        let _guard = self.solving.lock().unwrap();
        let mut store = self.store.write().unwrap();
        let mut stages = FxHashSet::default();
        for (key, value) in parsed.iter().cloned() {
            let provenance = if self.datum.base_case(&key).is_some() {
                Provenance::BaseCase
            } else {
                stages.insert(key.stage());
                Provenance::Loaded
            };
            store.insert(key, value, provenance)?;
        }
        for stage in stages {
            let complete = self
                .unknowns(stage)
                .iter()
                .all(|ins| store.get(&InvariantKey::new(stage.class, *ins)).is_some());
            if complete {
                store.mark_solved(stage);
            }
        }
        Ok(parsed.len())
    }
}

/// Calls `f` with every multiset of `size` elements drawn from `candidates`
/// (ascending) whose total codimension is `target`.
fn multisets(
    candidates: &[usize],
    codims: &[u32],
    size: usize,
    target: i64,
    f: &mut impl FnMut(Insertions),
) {
    fn go(
        candidates: &[usize],
        codims: &[u32],
        pos: usize,
        left: usize,
        remaining: i64,
        cur: &mut Insertions,
        f: &mut impl FnMut(Insertions),
    ) {
        if left == 0 {
            if remaining == 0 {
                f(*cur);
            }
            return;
        }
        if pos == candidates.len() {
            return;
        }
        let idx = candidates[pos];
        let c = codims[idx] as i64;
        // bounds on what the remaining candidates can contribute
        let tail = &candidates[pos..];
        let lo = tail.iter().map(|&i| codims[i]).min().unwrap() as i64 * left as i64;
        let hi = tail.iter().map(|&i| codims[i]).max().unwrap() as i64 * left as i64;
        if remaining < lo || remaining > hi {
            return;
        }
        for take in (0..=left).rev() {
            let used = c * take as i64;
            if used > remaining {
                continue;
            }
            for _ in 0..take {
                cur.push(idx);
            }
            go(candidates, codims, pos + 1, left - take, remaining - used, cur, f);
            for _ in 0..take {
                cur.remove(idx);
            }
        }
    }
    if target < 0 {
        return;
    }
    go(candidates, codims, 0, size, target, &mut Insertions::new(), f);
}

/// Cartesian expansion of multilinear insertions over basis supports.
fn expand(
    insertions: &[CohVector],
    indices: &mut Vec<usize>,
    coeff: Rational,
    f: &mut impl FnMut(&[usize], Rational),
) {
    let Some((first, rest)) = insertions.split_first() else {
        f(indices, coeff);
        return;
    };
    for (i, c) in first.support() {
        indices.push(i);
        expand(rest, indices, &coeff * c, f);
        indices.pop();
    }
}

#[cfg(test)]
mod tests;
