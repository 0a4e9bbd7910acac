//! Thermodynamic context: Gibbs weights of the system's energy levels.
//!
//! Everything downstream works with the weight vector `s`, where
//! `s[i] = q_{i,0} = exp(-beta (E_i - E_0))`. The weights are the segment
//! widths of thermomajorization curves and the margins of the
//! transportation matrices associated with thermal processes.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rational::{format_rational, nearest_with_denominator, Rational};
use crate::state::State;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GibbsContext {
    s: Vec<Rational>,
    z: Rational,
    g: Vec<Rational>,
}

impl GibbsContext {
    /// Builds a context from exact weights `s` with `s[0] = 1`.
    pub fn from_weights(s: Vec<Rational>) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyWeights);
        }
        if let Some((index, v)) = s.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(Error::NonPositiveWeight {
                index,
                value: format_rational(v),
            });
        }
        if !s[0].is_one() {
            return Err(Error::FirstWeightNotOne(format_rational(&s[0])));
        }
        let z: Rational = s.iter().sum();
        let g = s.iter().map(|w| w / &z).collect();
        Ok(GibbsContext { s, z, g })
    }

    /// Float front end: rounds each `exp(-beta E_i)` to the nearest rational
    /// with denominator at most `denominator_bound`. Energies are shifted so
    /// that the first level sits at zero.
    pub fn from_energies(energies: &[f64], beta: f64, denominator_bound: u64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::NonFinite("beta"));
        }
        if beta < 0.0 {
            return Err(Error::NegativeBeta(beta.to_string()));
        }
        if denominator_bound < 2 {
            return Err(Error::DenominatorBound(denominator_bound));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFinite("energies"));
        }
        let Some(&e0) = energies.first() else {
            return Err(Error::EmptyWeights);
        };
        let s = energies
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                if i == 0 {
                    return Ok(Rational::one());
                }
                let w = (-beta * (e - e0)).exp();
                if !w.is_finite() {
                    return Err(Error::NonFinite("Gibbs weight"));
                }
                nearest_with_denominator(w, denominator_bound)
            })
            .collect::<Result<Vec<_>>>()?;
        GibbsContext::from_weights(s)
    }

    pub fn dim(&self) -> usize {
        self.s.len()
    }

    /// Segment widths `s[i] = q_{i,0}`.
    pub fn weights(&self) -> &[Rational] {
        &self.s
    }

    /// Partition sum `Z = sum_i s[i]`.
    pub fn partition_sum(&self) -> &Rational {
        &self.z
    }

    pub fn gibbs(&self) -> &[Rational] {
        &self.g
    }

    /// `q_{m,n} = s[m] / s[n]`.
    pub fn q(&self, m: usize, n: usize) -> Rational {
        &self.s[m] / &self.s[n]
    }

    pub fn gibbs_state(&self) -> State {
        State::from_vec_unchecked(self.g.clone())
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found,
            });
        }
        Ok(())
    }
}

pub fn make_context_exact(s: Vec<Rational>) -> Result<GibbsContext> {
    GibbsContext::from_weights(s)
}

pub fn make_context(energies: &[f64], beta: f64, denominator_bound: u64) -> Result<GibbsContext> {
    GibbsContext::from_energies(energies, beta, denominator_bound)
}

pub fn gibbs_state(ctx: &GibbsContext) -> State {
    ctx.gibbs_state()
}
