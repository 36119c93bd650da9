//! Assembly of WDVV equations.
//!
//! For a class `β`, a frame `(i, j, k, l)` and extra insertions `E`, the
//! equation is `LHS(i,j | k,l) − LHS(i,l | j,k) = 0` where
//!
//! ```text
//! LHS(i,j | k,l) = Σ_{β1+β2=β, A⊔B=E, e} I_β1(Ti,Tj,Te,A) · I_β2(Tk,Tl,Tê,B)
//!                + I_β(Ti,Tj,Tk∪Tl,E) + I_β(Tk,Tl,Ti∪Tj,E)
//! ```
//!
//! with both `β1, β2` nonzero in the sum; the last two terms are the collapsed
//! degree-zero contributions.

use std::borrow::Cow;

use num_traits::Zero;
use rustc_hash::FxHashMap;

use super::{EngineError, Insertions, InvariantKey, MemoStore, StageId};
use crate::chow_ring::CurveClass;
use crate::target::TargetDatum;
use crate::Rational;

/// Equation under construction: coefficients on current-stage unknowns plus a
/// resolved constant.
#[derive(Debug, Default)]
pub(crate) struct Accumulator {
    pub terms: FxHashMap<Insertions, Rational>,
    pub constant: Rational,
    /// Integer part of the constant kept in machine arithmetic until `finish`.
    small: i128,
}

impl Accumulator {
    fn add_term(&mut self, ins: Insertions, coeff: Rational) {
        *self.terms.entry(ins).or_insert_with(Rational::zero) += coeff;
    }

    fn add_constant(&mut self, coeff: i128, value: Num<'_>) {
        match value {
            Num::Small(v) => {
                if let Some(sum) = coeff.checked_mul(v).and_then(|p| self.small.checked_add(p)) {
                    self.small = sum;
                    return;
                }
                self.constant += big(coeff) * big(v);
            }
            Num::Big(v) => self.constant += big(coeff) * v.as_ref(),
        }
    }

    fn finish(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if self.small != 0 {
            self.constant += big(std::mem::take(&mut self.small));
        }
    }
}

fn big(n: i128) -> Rational {
    Rational::from_integer(n.into())
}

/// A looked-up value, kept as a machine integer when possible.
pub(crate) enum Num<'a> {
    Small(i128),
    Big(Cow<'a, Rational>),
}

impl Num<'_> {
    fn is_zero(&self) -> bool {
        match self {
            Num::Small(v) => *v == 0,
            Num::Big(v) => v.is_zero(),
        }
    }

    fn into_rational(self) -> Rational {
        match self {
            Num::Small(v) => big(v),
            Num::Big(v) => v.into_owned(),
        }
    }
}

struct SubMultiset {
    part: Insertions,
    rest: Insertions,
    mult: u64,
    len: usize,
    codim: i64,
}

pub(crate) struct EquationContext<'a> {
    pub datum: &'a TargetDatum,
    pub store: &'a MemoStore,
    /// Keys of this stage stay symbolic; `None` resolves everything.
    pub stage: Option<StageId>,
}

/// Cup-product structure constants are integers for the targets in use.
fn ring_integer(c: &Rational) -> i128 {
    use num_traits::ToPrimitive;
    assert!(c.is_integer(), "non-integral structure constant {c}");
    c.numer().to_i128().expect("structure constant fits in i128")
}

impl EquationContext<'_> {
    /// Strips divisors (scaling by their degree) and rejects fundamental-class
    /// insertions. `None` means the invariant is zero.
    pub fn normalize(
        &self,
        class: CurveClass,
        fixed: &[usize],
        extras: &Insertions,
    ) -> Option<(i64, InvariantKey)> {
        let ring = self.datum.ring();
        let mut scalar = 1i64;
        let mut ins = *extras;
        for &idx in fixed {
            if ring.codim(idx) == 0 {
                return None;
            }
            if let Some(deg) = self.datum.divisor_degree(idx, class) {
                scalar *= deg;
                if scalar == 0 {
                    return None;
                }
            } else {
                ins.push(idx);
            }
        }
        let key = InvariantKey::new(class, ins);
        self.datum.is_admissible(&key).then_some((scalar, key))
    }

    pub fn lookup(&self, key: &InvariantKey) -> Result<Num<'_>, EngineError> {
        if let Some((n, d)) = self.datum.base_case_raw(key) {
            return Ok(if d == 1 {
                Num::Small(n.into())
            } else {
                Num::Big(Cow::Owned(Rational::new(n.into(), d.into())))
            });
        }
        let entry = self.store.entry(key).ok_or(EngineError::MissingValue(*key))?;
        Ok(match entry.small {
            Some(v) => Num::Small(v),
            None => Num::Big(Cow::Borrowed(&entry.value)),
        })
    }

    fn is_unknown(&self, key: &InvariantKey) -> bool {
        match self.stage {
            Some(stage) => key.stage() == stage && self.datum.base_case_raw(key).is_none(),
            None => false,
        }
    }

    fn add_invariant(
        &self,
        acc: &mut Accumulator,
        coeff: i128,
        class: CurveClass,
        fixed: &[usize],
        extras: &Insertions,
    ) -> Result<(), EngineError> {
        let Some((scalar, key)) = self.normalize(class, fixed, extras) else {
            return Ok(());
        };
        let c = coeff * scalar as i128;
        if self.is_unknown(&key) {
            acc.add_term(key.insertions, big(c));
        } else {
            let v = self.lookup(&key)?;
            if !v.is_zero() {
                acc.add_constant(c, v);
            }
        }
        Ok(())
    }

    /// Value of a product factor, `None` when it vanishes.
    fn factor(
        &self,
        class: CurveClass,
        fixed: &[usize],
        extras: &Insertions,
    ) -> Result<Option<(i64, Num<'_>)>, EngineError> {
        let Some((scalar, key)) = self.normalize(class, fixed, extras) else {
            return Ok(None);
        };
        debug_assert!(!self.is_unknown(&key), "product factor {key} in current stage");
        let v = self.lookup(&key)?;
        if v.is_zero() {
            return Ok(None);
        }
        Ok(Some((scalar, v)))
    }

    pub fn build(
        &self,
        class: CurveClass,
        frame: [usize; 4],
        extras: &Insertions,
    ) -> Result<Accumulator, EngineError> {
        let mut acc = Accumulator::default();
        let [i, j, k, l] = frame;
        if j == l {
            return Ok(acc);
        }
        let codims = self.datum.ring().codims();
        let subs: Vec<SubMultiset> = extras
            .sub_multisets()
            .into_iter()
            .map(|(part, mult)| SubMultiset {
                part,
                rest: extras.minus(&part),
                mult,
                len: part.len(),
                codim: part.codim_sum(codims) as i64,
            })
            .collect();
        self.add_side(&mut acc, 1, class, [i, j, k, l], extras, &subs)?;
        self.add_side(&mut acc, -1, class, [i, l, j, k], extras, &subs)?;
        acc.finish();
        Ok(acc)
    }

    fn add_side(
        &self,
        acc: &mut Accumulator,
        sign: i128,
        class: CurveClass,
        [i, j, k, l]: [usize; 4],
        extras: &Insertions,
        subs: &[SubMultiset],
    ) -> Result<(), EngineError> {
        let ring = self.datum.ring();

        for (m, c) in ring.cup_basis(k, l).support() {
            self.add_invariant(acc, sign * ring_integer(c), class, &[i, j, m], extras)?;
        }
        for (m, c) in ring.cup_basis(i, j).support() {
            self.add_invariant(acc, sign * ring_integer(c), class, &[k, l, m], extras)?;
        }

        let dim = ring.dim() as i64;
        let frame_codim = (ring.codim(i) + ring.codim(j)) as i64;
        for (first, second) in class.splits() {
            if !self.datum.is_effective(first) || !self.datum.is_effective(second) {
                continue;
            }
            for sub in subs {
                // total codimension of (Ti, Tj, Te, A) must match the virtual dimension
                let need = self.datum.expected_codim(first, 3 + sub.len) - frame_codim - sub.codim;
                if need < 1 || need >= dim {
                    continue;
                }
                for &e in ring.of_codim(need as u32) {
                    let Some((ls, left)) = self.factor(first, &[i, j, e], &sub.part)? else {
                        continue;
                    };
                    let Some((rs, right)) =
                        self.factor(second, &[k, l, ring.dual_index(e)], &sub.rest)?
                    else {
                        continue;
                    };
                    let coeff = sign * sub.mult as i128 * ls as i128 * rs as i128;
                    match (left, right) {
                        (Num::Small(x), r) if x.checked_mul(coeff).is_some() => {
                            acc.add_constant(coeff * x, r)
                        }
                        (x, r) => {
                            acc.constant += big(coeff) * x.into_rational() * r.into_rational()
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
