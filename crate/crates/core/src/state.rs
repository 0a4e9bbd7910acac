use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// Occupations of the energy levels of an energy-diagonal state.
///
/// Entries are non-negative and sum to exactly one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(Vec<Rational>);

impl State {
    pub fn new(p: Vec<Rational>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidState("no levels".into()));
        }
        if let Some((i, v)) = p.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::InvalidState(format!(
                "negative occupation {} at level {i}",
                format_rational(v)
            )));
        }
        let total: Rational = p.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidState(format!(
                "occupations sum to {}, not 1",
                format_rational(&total)
            )));
        }
        Ok(State(p))
    }

    /// Normalizes a non-negative weight vector into a state.
    pub fn from_weights(w: Vec<Rational>) -> Result<Self> {
        let total: Rational = w.iter().sum();
        if !total.is_positive() {
            return Err(Error::InvalidState("weights must have positive sum".into()));
        }
        State::new(w.into_iter().map(|x| x / &total).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }

    pub(crate) fn from_vec_unchecked(p: Vec<Rational>) -> Self {
        debug_assert!(State::new(p.clone()).is_ok());
        State(p)
    }
}

impl std::ops::Index<usize> for State {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn validates_sum_and_sign() {
        assert!(State::new(vec![rat(1, 2), rat(1, 2)]).is_ok());
        assert!(State::new(vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(State::new(vec![rat(3, 2), rat(-1, 2)]).is_err());
        assert!(State::new(vec![]).is_err());
    }

    #[test]
    fn normalizes_weights() {
        let s = State::from_weights(vec![rat(2, 1), rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(s.as_slice(), &[rat(1, 2), rat(1, 4), rat(1, 4)]);
    }
}
