//! Seeded input generators and reference computations shared by the
//! acceptance suite. The references recompute results from first
//! principles instead of calling the library routine under test.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thermo_core::rational::{int, rat};
use thermo_core::{
    build_curve, enumerate_extremal_tps, extremal_states, make_context_exact, EnumerationOptions,
    GibbsContext, Matrix, Rational, State,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Weights `1 > k_1/30 > k_2/30 > ...` with distinct numerators.
pub fn random_context(rng: &mut impl Rng, d: usize) -> GibbsContext {
    let mut pool: Vec<i64> = (1..30).collect();
    pool.shuffle(rng);
    let mut tail: Vec<i64> = pool[..d - 1].to_vec();
    tail.sort_unstable_by(|a, b| b.cmp(a));
    let mut s = vec![int(1)];
    s.extend(tail.into_iter().map(|k| rat(k, 30)));
    make_context_exact(s).expect("positive weights")
}

/// Strictly positive occupations with small integer numerators.
pub fn random_state(rng: &mut impl Rng, d: usize) -> State {
    let w: Vec<Rational> = (0..d).map(|_| int(rng.gen_range(1..=40))).collect();
    State::from_weights(w).expect("positive weights")
}

/// A random state whose curve has pairwise distinct slopes.
pub fn random_generic_state(rng: &mut impl Rng, ctx: &GibbsContext) -> State {
    loop {
        let p = random_state(rng, ctx.dim());
        if build_curve(ctx, &p)
            .expect("matching dimension")
            .has_distinct_slopes()
        {
            return p;
        }
    }
}

/// Random convex combination of the vertices of the set reachable from `p`.
pub fn random_reachable(rng: &mut impl Rng, ctx: &GibbsContext, p: &State) -> State {
    let vertices = extremal_states(ctx, p).expect("valid state");
    loop {
        let w: Vec<Rational> = vertices.iter().map(|_| int(rng.gen_range(0..=4))).collect();
        let total: Rational = w.iter().sum();
        if total.is_zero() {
            continue;
        }
        let mut out = vec![Rational::zero(); ctx.dim()];
        for (wk, v) in w.iter().zip(&vertices) {
            for (o, x) in out.iter_mut().zip(v.state.as_slice()) {
                *o += wk * x / &total;
            }
        }
        return State::new(out).expect("convex combination of states");
    }
}

/// Random convex combination of extremal thermal processes.
pub fn random_process(rng: &mut impl Rng, ctx: &GibbsContext) -> Matrix {
    let vertices = enumerate_extremal_tps(ctx, &EnumerationOptions::default()).expect("small d");
    let d = ctx.dim();
    loop {
        let w: Vec<i64> = vertices.iter().map(|_| rng.gen_range(0..=3)).collect();
        let total: i64 = w.iter().sum();
        if total == 0 {
            continue;
        }
        let mut out = Matrix::zeros(d, d);
        for (&wk, v) in w.iter().zip(&vertices) {
            for i in 0..d {
                for j in 0..d {
                    out[(i, j)] += rat(wk, total) * &v.process.matrix()[(i, j)];
                }
            }
        }
        return out;
    }
}

/// The four-level extremal process with transportation support shaped like
/// a spider: `T[k][0] = q_k0 - q_{k+1,0}` and `T[k-1][k] = 1`.
pub fn spider_process(ctx: &GibbsContext) -> Matrix {
    let d = ctx.dim();
    let s = ctx.weights();
    let mut t = Matrix::zeros(d, d);
    for k in 0..d {
        let next = if k + 1 < d {
            s[k + 1].clone()
        } else {
            Rational::zero()
        };
        t[(k, 0)] = &s[k] - next;
        if k > 0 {
            t[(k - 1, k)] = Rational::one();
        }
    }
    t
}

/// Segment intervals `[start, end)` along the x axis for each level, laid
/// out by descending slope `x_i / s_i` with ties by index.
fn segment_intervals(s: &[Rational], x: &[Rational]) -> Vec<(Rational, Rational)> {
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&i, &j| (&x[j] * &s[i]).cmp(&(&x[i] * &s[j])).then(i.cmp(&j)));
    let mut out = vec![(Rational::zero(), Rational::zero()); s.len()];
    let mut at = Rational::zero();
    for i in order {
        let end = &at + &s[i];
        out[i] = (at.clone(), end.clone());
        at = end;
    }
    out
}

fn overlap(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    let lo = std::cmp::max(&a.0, &b.0);
    let hi = std::cmp::min(&a.1, &b.1);
    if hi > lo {
        hi - lo
    } else {
        Rational::zero()
    }
}

/// Process built from overlaps of the two curves: mass flows from level `b`
/// to level `w` in proportion to how much of segment `b` of `p` sits above
/// segment `w` of `r`.
pub fn overlap_process(ctx: &GibbsContext, p: &State, r: &State) -> Matrix {
    let s = ctx.weights();
    let src = segment_intervals(s, p.as_slice());
    let dst = segment_intervals(s, r.as_slice());
    let d = ctx.dim();
    let mut t = Matrix::zeros(d, d);
    for w in 0..d {
        for b in 0..d {
            t[(w, b)] = overlap(&src[b], &dst[w]) / &s[b];
        }
    }
    t
}

/// Occupations predicted by the overlap formula: each output segment
/// collects, from every input segment above it, the overlap length times
/// that input segment's slope.
pub fn overlap_prediction(ctx: &GibbsContext, p: &State, r: &State) -> Vec<Rational> {
    let s = ctx.weights();
    let src = segment_intervals(s, p.as_slice());
    let dst = segment_intervals(s, r.as_slice());
    (0..ctx.dim())
        .map(|w| {
            (0..ctx.dim())
                .map(|b| overlap(&src[b], &dst[w]) * &p[b] / &s[b])
                .sum()
        })
        .collect()
}
