//! The set of states reachable from `p_init` by thermal processes.
//!
//! With `F` the curve of `p_init`, a state `x` is reachable exactly when
//! `x(S) <= F(s(S))` for every set of levels `S`. The set function
//! `g(S) = F(s(S))` is submodular (concave of modular), so the reachable set
//! is its base polytope: vertices are greedy points, one per level order,
//! and faces are cut out by chains of tight sets.

mod decompose;
pub mod lp;
mod oracle;

pub use decompose::{
    decompose, decomposition_strategies, Decomposition, DecompositionStrategy, FaceDescent, Term,
    TranspositionSplit,
};
pub use oracle::{hull_membership_oracle, orbit};

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::curve::{build_curve, face_signature, permutations, thermomajorizes, ThermoCurve};
use crate::error::{Error, Result};
use crate::gibbs::GibbsContext;
use crate::rational::Rational;
use crate::state::State;

/// A vertex of the reachable set and the canonical β-order of its curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtremalState {
    pub state: State,
    pub order: Vec<usize>,
}

impl ExtremalState {
    pub fn new(ctx: &GibbsContext, state: State) -> Result<Self> {
        let order = build_curve(ctx, &state)?.order().to_vec();
        Ok(ExtremalState { state, order })
    }
}

pub fn is_achievable(ctx: &GibbsContext, p_init: &State, r: &State) -> Result<bool> {
    thermomajorizes(&build_curve(ctx, p_init)?, &build_curve(ctx, r)?)
}

/// Lays segments in `order` and lifts every elbow onto `init`.
pub(crate) fn greedy_vertex(init: &ThermoCurve, s: &[Rational], order: &[usize]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); s.len()];
    let mut x = Rational::zero();
    let mut prev = Rational::zero();
    for &level in order {
        x += &s[level];
        let y = init.eval_at(&x).expect("x stays within [0, Z]");
        out[level] = &y - &prev;
        prev = y;
    }
    out
}

/// Every vertex of the reachable set, one per distinct greedy point, sorted
/// by β-order and then by state.
pub fn extremal_states(ctx: &GibbsContext, p_init: &State) -> Result<Vec<ExtremalState>> {
    let init = build_curve(ctx, p_init)?;
    let levels: Vec<usize> = (0..ctx.dim()).collect();
    let mut seen: BTreeMap<Vec<Rational>, ()> = BTreeMap::new();
    for order in permutations(&levels) {
        seen.insert(greedy_vertex(&init, ctx.weights(), &order), ());
    }
    let mut out = seen
        .into_keys()
        .map(|v| ExtremalState::new(ctx, State::from_vec_unchecked(v)))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.state.cmp(&b.state)));
    Ok(out)
}

/// True when `r` touches the curve of `p_init` only at the shared end point.
pub fn is_interior(ctx: &GibbsContext, p_init: &State, r: &State) -> Result<bool> {
    let init = build_curve(ctx, p_init)?;
    let sig = face_signature(&init, &build_curve(ctx, r)?)?;
    Ok(sig.is_interior(init.end()))
}

fn differ_by_adjacent_swap(a: &[usize], b: &[usize]) -> bool {
    let diff: Vec<usize> = (0..a.len()).filter(|&k| a[k] != b[k]).collect();
    matches!(diff.as_slice(), [k, l] if *l == k + 1 && a[*k] == b[*l] && a[*l] == b[*k])
}

/// Two distinct vertices share an edge when some β-order of one becomes a
/// β-order of the other after swapping two consecutive positions. Every
/// valid order is tried, since a vertex may have collinear segments.
pub fn are_adjacent_extremals(
    ctx: &GibbsContext,
    p_init: &State,
    e1: &ExtremalState,
    e2: &ExtremalState,
) -> Result<bool> {
    let init = build_curve(ctx, p_init)?;
    if !init.has_distinct_slopes() {
        return Err(Error::DegenerateSlopes);
    }
    let c1 = build_curve(ctx, &e1.state)?;
    let c2 = build_curve(ctx, &e2.state)?;
    for c in [&c1, &c2] {
        if !crate::curve::tightly_thermomajorizes(&init, c)? {
            return Err(Error::NotExtremalState);
        }
    }
    if e1.state == e2.state {
        return Err(Error::IdenticalExtremals);
    }
    let o2 = c2.valid_orders();
    Ok(c1
        .valid_orders()
        .iter()
        .any(|a| o2.iter().any(|b| differ_by_adjacent_swap(a, b))))
}
