use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::InvariantKey;
use crate::Rational;

/// `Σ coeff · I(key) + constant`, the normalized shape of a WDVV equation or
/// of an invariant with non-basis insertions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    pub terms: BTreeMap<InvariantKey, Rational>,
    pub constant: Rational,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    pub fn add_term(&mut self, key: InvariantKey, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, key: &InvariantKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Substitutes values for every unknown.
    pub fn evaluate<E>(
        &self,
        mut value: impl FnMut(&InvariantKey) -> Result<Rational, E>,
    ) -> Result<Rational, E> {
        let mut total = self.constant.clone();
        for (key, coeff) in &self.terms {
            total += coeff * value(key)?;
        }
        Ok(total)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (key, coeff)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({coeff})·{key}")?;
        }
        if self.terms.is_empty() || !self.constant.is_zero() {
            if !self.terms.is_empty() {
                write!(f, " + ")?;
            }
            write!(f, "{}", self.constant)?;
        }
        Ok(())
    }
}
