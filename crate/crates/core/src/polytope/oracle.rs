//! Reachability decided without curves: `r` is reachable exactly when it is
//! a convex combination of the images of `p_init` under extremal processes.

use std::collections::BTreeSet;

use super::lp::in_convex_hull;
use crate::error::Result;
use crate::gibbs::GibbsContext;
use crate::process::{apply, from_transportation};
use crate::rational::Rational;
use crate::state::State;
use crate::transport::{enumerate_vertices, EnumerationOptions};

/// Distinct images of `p_init` under every extremal thermal process, sorted.
pub fn orbit(
    ctx: &GibbsContext,
    p_init: &State,
    options: &EnumerationOptions,
) -> Result<Vec<State>> {
    ctx.check_dim(p_init.dim())?;
    let mut images = BTreeSet::new();
    for vertex in enumerate_vertices(ctx.weights(), ctx.weights(), options)? {
        let t = from_transportation(ctx, &vertex)?;
        images.insert(apply(&t, p_init)?);
    }
    Ok(images.into_iter().collect())
}

/// Exact hull membership of `r` in the orbit of `p_init`. Fails with
/// `BudgetExceeded` when enumeration outgrows `options.max_states`.
pub fn hull_membership_oracle(
    ctx: &GibbsContext,
    p_init: &State,
    r: &State,
    options: &EnumerationOptions,
) -> Result<bool> {
    ctx.check_dim(r.dim())?;
    let points: Vec<Vec<Rational>> = orbit(ctx, p_init, options)?
        .into_iter()
        .map(State::into_vec)
        .collect();
    Ok(in_convex_hull(&points, r.as_slice()))
}
