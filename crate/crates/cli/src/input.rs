use std::io::Read;
use std::path::Path;

use serde::Deserialize;
use thermo_core::rational::serde_text::Exact;
use thermo_core::{make_context, make_context_exact, GibbsContext, Matrix, Rational, State};

use crate::Failure;

/// Every field any subcommand reads; each subcommand checks for the ones it
/// needs.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    context: Option<ContextSpec>,
    init: Option<Vec<Exact>>,
    target: Option<Vec<Exact>>,
    state: Option<Vec<Exact>>,
    states: Option<Vec<Vec<Exact>>>,
    matrix: Option<Vec<Vec<Exact>>>,
    process: Option<Vec<Vec<Exact>>>,
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum ContextSpec {
    Weights {
        s: Vec<Exact>,
    },
    Energies {
        energies: Vec<f64>,
        beta: f64,
        denominator_bound: u64,
    },
}

/// Reads the document from inline text, a path, or standard input (`-` or
/// no path).
pub fn load(path: Option<&Path>, inline: Option<&str>) -> Result<Document, Failure> {
    let text = match (inline, path) {
        (Some(text), _) => text.to_owned(),
        (None, Some(p)) if p != Path::new("-") => std::fs::read_to_string(p)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", p.display())))?,
        (None, _) => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Input(format!("cannot read standard input: {e}")))?;
            buf
        }
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid input document: {e}")))
}

fn exact(v: Vec<Exact>) -> Vec<Rational> {
    v.into_iter().map(|Exact(x)| x).collect()
}

fn rows(m: Vec<Vec<Exact>>) -> Vec<Vec<Rational>> {
    m.into_iter().map(exact).collect()
}

fn missing(field: &str) -> Failure {
    Failure::Input(format!("input document lacks `{field}`"))
}

impl Document {
    pub fn context(&mut self) -> Result<GibbsContext, Failure> {
        match self.context.take().ok_or_else(|| missing("context"))? {
            ContextSpec::Weights { s } => Ok(make_context_exact(exact(s))?),
            ContextSpec::Energies {
                energies,
                beta,
                denominator_bound,
            } => Ok(make_context(&energies, beta, denominator_bound)?),
        }
    }

    fn take_state(field: &'static str, slot: &mut Option<Vec<Exact>>) -> Result<State, Failure> {
        let v = slot.take().ok_or_else(|| missing(field))?;
        Ok(State::new(exact(v))?)
    }

    pub fn init(&mut self) -> Result<State, Failure> {
        Self::take_state("init", &mut self.init)
    }

    pub fn target(&mut self) -> Result<State, Failure> {
        Self::take_state("target", &mut self.target)
    }

    pub fn state(&mut self) -> Result<State, Failure> {
        Self::take_state("state", &mut self.state)
    }

    /// `states` if given, otherwise whichever of `init`, `target` and
    /// `state` are present, in that order.
    pub fn all_states(&mut self) -> Result<Vec<State>, Failure> {
        let raw: Vec<Vec<Exact>> = match self.states.take() {
            Some(list) => list,
            None => [self.init.take(), self.target.take(), self.state.take()]
                .into_iter()
                .flatten()
                .collect(),
        };
        if raw.is_empty() {
            return Err(missing("states"));
        }
        raw.into_iter().map(|v| Ok(State::new(exact(v))?)).collect()
    }

    pub fn matrix(&mut self) -> Result<Option<Matrix>, Failure> {
        self.matrix
            .take()
            .map(|m| Ok(Matrix::from_rows(rows(m))?))
            .transpose()
    }

    pub fn process(&mut self) -> Result<Option<Matrix>, Failure> {
        self.process
            .take()
            .map(|m| Ok(Matrix::from_rows(rows(m))?))
            .transpose()
    }
}
