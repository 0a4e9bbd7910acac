//! Writing a reachable state as a convex combination of extremal states.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::greedy_vertex;
use crate::curve::{build_curve, thermomajorizes, tightly_thermomajorizes, ThermoCurve};
use crate::error::{Error, Result};
use crate::gibbs::GibbsContext;
use crate::rational::Rational;
use crate::registry::{Registry, Strategy};
use crate::state::State;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub weight: Rational,
    pub state: State,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub terms: Vec<Term>,
}

impl Decomposition {
    /// Merges repeated states, drops zero weights and sorts by descending
    /// weight, then by state.
    fn collect(pieces: Vec<(Rational, Vec<Rational>)>) -> Self {
        let mut merged: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
        for (w, x) in pieces {
            *merged.entry(x).or_insert_with(Rational::zero) += w;
        }
        let mut terms: Vec<Term> = merged
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(x, weight)| Term {
                weight,
                state: State::from_vec_unchecked(x),
            })
            .collect();
        terms.sort_by(|a, b| b.weight.cmp(&a.weight).then_with(|| a.state.cmp(&b.state)));
        Decomposition { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_weight(&self) -> Rational {
        self.terms.iter().map(|t| &t.weight).sum()
    }

    /// `Σ w_i σ_i`, which equals the decomposed state.
    pub fn mixture(&self) -> Vec<Rational> {
        let d = self.terms.first().map_or(0, |t| t.state.dim());
        let mut out = vec![Rational::zero(); d];
        for t in &self.terms {
            for (o, v) in out.iter_mut().zip(t.state.as_slice()) {
                *o += &t.weight * v;
            }
        }
        out
    }
}

pub trait DecompositionStrategy: Strategy {
    fn decompose(&self, ctx: &GibbsContext, p_init: &State, r: &State) -> Result<Decomposition>;
}

/// Splits along adjacent transpositions from the last elbow to the first,
/// finishing any node whose split would leave the reachable set by
/// [`FaceDescent`].
pub struct TranspositionSplit;

/// Repeatedly peels off a vertex of the smallest face containing the
/// current point and moves away from it until a new set becomes tight.
/// At most `d` terms.
pub struct FaceDescent;

pub fn decomposition_strategies() -> Registry<dyn DecompositionStrategy> {
    Registry::<dyn DecompositionStrategy>::new("decomposition strategy", "transposition-split")
        .with(Arc::new(TranspositionSplit))
        .with(Arc::new(FaceDescent))
}

/// Decomposes with the default strategy.
pub fn decompose(ctx: &GibbsContext, p_init: &State, r: &State) -> Result<Decomposition> {
    TranspositionSplit.decompose(ctx, p_init, r)
}

fn reachable_curve(ctx: &GibbsContext, p_init: &State, r: &State) -> Result<ThermoCurve> {
    let init = build_curve(ctx, p_init)?;
    if !thermomajorizes(&init, &build_curve(ctx, r)?)? {
        return Err(Error::NotAchievable);
    }
    Ok(init)
}

fn mass(x: &[Rational], mask: usize) -> Rational {
    x.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, v)| v)
        .sum()
}

fn face_descent(
    init: &ThermoCurve,
    s: &[Rational],
    x: Vec<Rational>,
) -> Result<Vec<(Rational, Vec<Rational>)>> {
    let d = s.len();
    let full = (1usize << d) - 1;
    let g: Vec<Rational> = (0..=full)
        .map(|mask| init.eval_at(&mass(s, mask)).expect("within [0, Z]"))
        .collect();
    let mut x = x;
    let mut remaining = Rational::one();
    let mut out = Vec::new();
    for _ in 0..=d {
        let tight: Vec<usize> = (0..=full).filter(|&m| mass(&x, m) == g[m]).collect();
        let mut order = Vec::with_capacity(d);
        let mut cur = 0usize;
        while cur != full {
            let next = tight
                .iter()
                .copied()
                .filter(|&m| m & cur == cur && m != cur)
                .min_by_key(|m| m.count_ones())
                .ok_or_else(|| Error::Internal("no tight superset".into()))?;
            order.extend((0..d).filter(|i| (next & !cur) >> i & 1 == 1));
            cur = next;
        }
        let v = greedy_vertex(init, s, &order);
        if v == x {
            out.push((remaining, v));
            return Ok(out);
        }
        let dir: Vec<Rational> = x.iter().zip(&v).map(|(a, b)| a - b).collect();
        let step = (0..=full)
            .filter_map(|m| {
                let dm = mass(&dir, m);
                dm.is_positive().then(|| (&g[m] - mass(&x, m)) / dm)
            })
            .min()
            .ok_or_else(|| Error::Internal("ray never leaves the polytope".into()))?;
        if step.is_zero() {
            return Err(Error::Internal(
                "peeled vertex is off the current face".into(),
            ));
        }
        let keep = (&step + Rational::one()).recip();
        out.push((&remaining * &step * &keep, v));
        remaining *= keep;
        x = x.iter().zip(&dir).map(|(a, b)| a + &step * b).collect();
    }
    Err(Error::Internal("face descent did not terminate".into()))
}

fn check_terms(
    ctx: &GibbsContext,
    init: &ThermoCurve,
    pieces: &[(Rational, Vec<Rational>)],
) -> Result<()> {
    for (_, x) in pieces {
        let c = build_curve(ctx, &State::from_vec_unchecked(x.clone()))?;
        if !tightly_thermomajorizes(init, &c)? {
            return Err(Error::Internal(
                "decomposition produced a non-extremal term".into(),
            ));
        }
    }
    Ok(())
}

impl Strategy for FaceDescent {
    fn name(&self) -> &'static str {
        "face-descent"
    }

    fn description(&self) -> &'static str {
        "greedy vertex of the minimal face plus exact ray exit, at most d terms"
    }
}

impl DecompositionStrategy for FaceDescent {
    fn decompose(&self, ctx: &GibbsContext, p_init: &State, r: &State) -> Result<Decomposition> {
        let init = reachable_curve(ctx, p_init, r)?;
        let pieces = face_descent(&init, ctx.weights(), r.as_slice().to_vec())?;
        check_terms(ctx, &init, &pieces)?;
        Ok(Decomposition::collect(pieces))
    }
}

struct Node {
    weight: Rational,
    x: Vec<Rational>,
    /// Segment order in which the elbows from position `k` on already sit
    /// on the reference curve.
    order: Vec<usize>,
}

fn stays_reachable(ctx: &GibbsContext, init: &ThermoCurve, x: &[Rational]) -> Result<bool> {
    if x.iter().any(Signed::is_negative) {
        return Ok(false);
    }
    thermomajorizes(
        init,
        &build_curve(ctx, &State::from_vec_unchecked(x.to_vec()))?,
    )
}

/// One split at elbow `k` between segments `order[k]` and `order[k + 1]`:
/// the keep branch lifts that elbow onto the reference curve, the swap
/// branch transposes the two segments and lifts their new shared elbow.
/// `None` when either branch would leave the reachable set.
fn split_node(
    ctx: &GibbsContext,
    init: &ThermoCurve,
    node: &Node,
    k: usize,
) -> Result<Option<Vec<Node>>> {
    let s = ctx.weights();
    let (a, b) = (node.order[k], node.order[k + 1]);
    let x_before: Rational = node.order[..k].iter().map(|&i| &s[i]).sum();
    let y_before: Rational = node.order[..k].iter().map(|&i| &node.x[i]).sum();
    let pair = &node.x[a] + &node.x[b];

    let keep_a = init.eval_at(&(&x_before + &s[a]))? - &y_before;
    let swap_b = init.eval_at(&(&x_before + &s[b]))? - &y_before;
    let swap_a = &pair - &swap_b;

    let mut keep = node.x.clone();
    keep[b] = &pair - &keep_a;
    keep[a] = keep_a.clone();
    let mut swap = node.x.clone();
    swap[a] = swap_a.clone();
    swap[b] = swap_b;
    let mut swap_order = node.order.clone();
    swap_order.swap(k, k + 1);

    let lambda = if keep_a == swap_a {
        Rational::one()
    } else {
        (&node.x[a] - &swap_a) / (&keep_a - &swap_a)
    };
    if lambda.is_negative() || lambda > Rational::one() {
        return Ok(None);
    }
    let mut children = Vec::with_capacity(2);
    for (w, x, order) in [
        (lambda.clone(), keep, node.order.clone()),
        (Rational::one() - &lambda, swap, swap_order),
    ] {
        if w.is_zero() {
            continue;
        }
        if !stays_reachable(ctx, init, &x)? {
            return Ok(None);
        }
        children.push(Node {
            weight: &node.weight * w,
            x,
            order,
        });
    }
    Ok(Some(children))
}

impl Strategy for TranspositionSplit {
    fn name(&self) -> &'static str {
        "transposition-split"
    }

    fn description(&self) -> &'static str {
        "binary splits along adjacent transpositions, last elbow first"
    }
}

impl DecompositionStrategy for TranspositionSplit {
    fn decompose(&self, ctx: &GibbsContext, p_init: &State, r: &State) -> Result<Decomposition> {
        let init = reachable_curve(ctx, p_init, r)?;
        let s = ctx.weights();
        let d = ctx.dim();
        let mut pieces = Vec::new();
        let mut frontier = vec![Node {
            weight: Rational::one(),
            x: r.as_slice().to_vec(),
            order: build_curve(ctx, r)?.order().to_vec(),
        }];
        for j in 1..d {
            let k = d - 1 - j;
            let mut next = Vec::new();
            for node in frontier {
                match split_node(ctx, &init, &node, k)? {
                    Some(children) => next.extend(children),
                    None => {
                        for (w, v) in face_descent(&init, s, node.x)? {
                            pieces.push((&node.weight * w, v));
                        }
                    }
                }
            }
            frontier = next;
        }
        for node in frontier {
            let c = build_curve(ctx, &State::from_vec_unchecked(node.x.clone()))?;
            if tightly_thermomajorizes(&init, &c)? {
                pieces.push((node.weight, node.x));
            } else {
                for (w, v) in face_descent(&init, s, node.x)? {
                    pieces.push((&node.weight * w, v));
                }
            }
        }
        check_terms(ctx, &init, &pieces)?;
        Ok(Decomposition::collect(pieces))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gibbs::make_context_exact;
    use crate::rational::{int, rat};

    fn st(v: &[(i64, i64)]) -> State {
        State::new(v.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    fn check(ctx: &GibbsContext, p: &State, r: &State) {
        for strategy in decomposition_strategies().iter() {
            let dec = strategy.decompose(ctx, p, r).unwrap();
            assert_eq!(dec.total_weight(), int(1), "{}", strategy.name());
            assert_eq!(dec.mixture(), r.as_slice(), "{}", strategy.name());
            assert!(dec.len() <= 1 << (ctx.dim() - 1), "{}", strategy.name());
        }
    }

    #[test]
    fn identity_is_a_single_term() {
        let ctx = make_context_exact(vec![int(1), rat(1, 2), rat(1, 4)]).unwrap();
        let p = st(&[(1, 2), (3, 10), (1, 5)]);
        let dec = decompose(&ctx, &p, &p).unwrap();
        assert_eq!(
            dec.terms,
            vec![Term {
                weight: int(1),
                state: p.clone()
            }]
        );
    }

    #[test]
    fn two_level_midpoint() {
        let ctx = make_context_exact(vec![int(1), rat(1, 2)]).unwrap();
        let p = st(&[(3, 4), (1, 4)]);
        let dec = decompose(&ctx, &p, &st(&[(11, 16), (5, 16)])).unwrap();
        assert_eq!(dec.len(), 2);
        assert!(dec.terms.contains(&Term {
            weight: rat(1, 2),
            state: p.clone()
        }));
        assert!(dec.terms.contains(&Term {
            weight: rat(1, 2),
            state: st(&[(5, 8), (3, 8)])
        }));
    }

    #[test]
    fn escaping_split_falls_back() {
        let ctx = make_context_exact(vec![int(1), rat(1, 2), rat(1, 4)]).unwrap();
        let p = st(&[(4, 5), (3, 20), (1, 20)]);
        let r = st(&[(11, 20), (7, 25), (17, 100)]);
        check(&ctx, &p, &r);
    }

    #[test]
    fn gibbs_target() {
        let ctx = make_context_exact(vec![int(1), rat(1, 2), rat(1, 4), rat(1, 8)]).unwrap();
        let p = st(&[(1, 10), (2, 5), (1, 5), (3, 10)]);
        check(&ctx, &p, &ctx.gibbs_state());
    }

    #[test]
    fn unreachable_target_is_an_error() {
        let ctx = make_context_exact(vec![int(1), rat(1, 2), rat(1, 4)]).unwrap();
        let p = st(&[(1, 2), (3, 10), (1, 5)]);
        for strategy in decomposition_strategies().iter() {
            assert_eq!(
                strategy.decompose(&ctx, &p, &st(&[(0, 1), (0, 1), (1, 1)])),
                Err(Error::NotAchievable)
            );
        }
    }
}
