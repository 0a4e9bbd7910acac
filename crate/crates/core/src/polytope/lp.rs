//! Exact linear programming over the rationals.
//!
//! Dense two-phase tableau simplex. Entering columns follow the most
//! negative reduced cost, switching to Bland's rule during runs of
//! degenerate pivots so the method cannot cycle. Meant for the small
//! programs behind the verification oracles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Rational>, value: Rational },
}

struct Tableau {
    /// Constraint rows, each `cols + 1` wide with the right-hand side last.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs, with minus the objective value last.
    obj: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let piv = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[col].clone();
            if !f.is_zero() {
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = col;
    }

    /// Pivots over entering columns `< allowed` until optimal. Returns false
    /// when unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        let rhs = self.rhs();
        let patience = self.rows.len() + allowed;
        let mut degenerate = 0;
        loop {
            let entering = if degenerate < patience {
                (0..allowed)
                    .filter(|&j| self.obj[j].is_negative())
                    .min_by(|&a, &b| self.obj[a].cmp(&self.obj[b]).then(a.cmp(&b)))
            } else {
                (0..allowed).find(|&j| self.obj[j].is_negative())
            };
            let Some(col) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[col].is_positive() {
                    let ratio = &row[rhs] / &row[col];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, ratio)) => {
                    if ratio.is_zero() {
                        degenerate += 1;
                    } else {
                        degenerate = 0;
                    }
                    self.pivot(r, col);
                }
                None => return false,
            }
        }
    }
}

/// Minimizes `c·x` subject to `A x = b`, `x >= 0`.
pub fn minimize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m, "one right-hand side per row");
    assert!(
        a.iter().all(|row| row.len() == n),
        "rows match the objective"
    );

    // Phase 1: one artificial per row, right-hand sides made non-negative.
    let width = n + m + 1;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut t = vec![Rational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            t[j] = if flip { -v } else { v.clone() };
        }
        t[n + i] = Rational::from_integer(1.into());
        t[width - 1] = if flip { -bi } else { bi.clone() };
        rows.push(t);
    }
    let mut obj = vec![Rational::zero(); width];
    for row in &rows {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    let mut tab = Tableau {
        rows,
        obj,
        basis: (n..n + m).collect(),
    };
    tab.optimize(n + m);
    if !tab.obj[width - 1].is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining artificials out of the basis; rows where that is
    // impossible are redundant.
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= n {
            match (0..n).find(|&j| !tab.rows[r][j].is_zero()) {
                Some(col) => tab.pivot(r, col),
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // Phase 2 on the original columns.
    for row in tab.rows.iter_mut() {
        row.drain(n..n + m);
    }
    let rhs = n;
    let mut obj: Vec<Rational> = c.to_vec();
    obj.push(Rational::zero());
    for (row, &bv) in tab.rows.iter().zip(&tab.basis) {
        let cb = c[bv].clone();
        if !cb.is_zero() {
            for (o, v) in obj.iter_mut().zip(row) {
                *o -= &cb * v;
            }
        }
    }
    tab.obj = obj;
    if !tab.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &bv) in tab.rows.iter().zip(&tab.basis) {
        x[bv] = row[rhs].clone();
    }
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { x, value }
}

/// Some `x >= 0` with `A x = b`, if one exists.
pub fn find_feasible(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    match minimize(a, b, &vec![Rational::zero(); n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Constraint system for convex weights `λ` over `points` reproducing
/// `target`: one row per coordinate plus the normalization row.
fn hull_system(points: &[&[Rational]], target: &[Rational]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let dim = target.len();
    let mut a: Vec<Vec<Rational>> = (0..dim)
        .map(|k| points.iter().map(|p| p[k].clone()).collect())
        .collect();
    a.push(vec![Rational::from_integer(1.into()); points.len()]);
    let mut b = target.to_vec();
    b.push(Rational::from_integer(1.into()));
    (a, b)
}

/// Convex weights expressing `target` over `points`, if it lies in their
/// hull.
pub fn convex_weights(points: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    if points.is_empty() {
        return None;
    }
    let refs: Vec<&[Rational]> = points.iter().map(Vec::as_slice).collect();
    let (a, b) = hull_system(&refs, target);
    find_feasible(&a, &b)
}

pub fn in_convex_hull(points: &[Vec<Rational>], target: &[Rational]) -> bool {
    convex_weights(points, target).is_some()
}

/// Integer directions spread over `[-50, 50]^dim`, deterministic.
fn probe_directions(dim: usize, count: usize) -> Vec<Vec<Rational>> {
    (0..count)
        .map(|t| {
            (0..dim)
                .map(|j| {
                    let v = ((t + 1) * (j + 3) * (j + 3) * 7919 + t * t * 31) % 101;
                    Rational::from_integer((v as i64 - 50).into())
                })
                .collect()
        })
        .collect()
}

/// Indices of the points that are vertices of the hull: distinct points not
/// expressible through the others. Duplicates keep their first occurrence.
pub fn hull_vertices(points: &[Vec<Rational>]) -> Vec<usize> {
    // Scaling by the common denominator keeps the hull structure and makes
    // every coordinate an integer.
    let scale = points
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            p.iter()
                .map(|v| Rational::from_integer(v.numer() * &scale / v.denom()))
                .collect()
        })
        .collect();
    let points = scaled.as_slice();
    let distinct: Vec<usize> = (0..points.len())
        .filter(|&i| !points[..i].contains(&points[i]))
        .collect();
    let Some(first) = distinct.first() else {
        return Vec::new();
    };

    // A unique maximizer of a linear functional is a vertex.
    let mut known: Vec<usize> = Vec::new();
    for c in probe_directions(points[*first].len(), 128) {
        let score = |i: usize| -> Rational { points[i].iter().zip(&c).map(|(a, b)| a * b).sum() };
        let scores: Vec<(Rational, usize)> = distinct.iter().map(|&i| (score(i), i)).collect();
        let best = scores.iter().map(|(v, _)| v).max().expect("non-empty");
        let winners: Vec<usize> = scores
            .iter()
            .filter(|(v, _)| v == best)
            .map(|&(_, i)| i)
            .collect();
        if let [only] = winners.as_slice() {
            if !known.contains(only) {
                known.push(*only);
            }
        }
    }

    // Everything else is either inside the hull of the certified vertices
    // or needs the full test against all remaining points.
    let mut alive = distinct.clone();
    for &i in &distinct {
        if known.contains(&i) {
            continue;
        }
        let certified: Vec<Vec<Rational>> = known.iter().map(|&j| points[j].clone()).collect();
        let inside = in_convex_hull(&certified, &points[i]) || {
            let others: Vec<Vec<Rational>> = alive
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| points[j].clone())
                .collect();
            in_convex_hull(&others, &points[i])
        };
        if inside {
            // The hull of the rest is unchanged without this point.
            alive.retain(|&j| j != i);
        } else {
            known.push(i);
        }
    }
    known.sort_unstable();
    known
}

/// Whether vertices `i` and `j` of the hull span an edge: the midpoint
/// admits no convex representation putting weight on any other point.
pub fn is_hull_edge(points: &[Vec<Rational>], i: usize, j: usize) -> bool {
    let mid: Vec<Rational> = points[i]
        .iter()
        .zip(&points[j])
        .map(|(a, b)| (a + b) / Rational::from_integer(2.into()))
        .collect();
    let refs: Vec<&[Rational]> = points.iter().map(Vec::as_slice).collect();
    let (a, b) = hull_system(&refs, &mid);
    let c: Vec<Rational> = (0..points.len())
        .map(|k| {
            if points[k] == points[i] || points[k] == points[j] {
                Rational::zero()
            } else {
                Rational::from_integer((-1).into())
            }
        })
        .collect();
    match minimize(&a, &b, &c) {
        LpOutcome::Optimal { value, .. } => value.is_zero(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn small_program() {
        // min -x - y  s.t. x + y + s = 4, x + 3y + t = 6
        let a = vec![
            vec![int(1), int(1), int(1), int(0)],
            vec![int(1), int(3), int(0), int(1)],
        ];
        let b = vec![int(4), int(6)];
        let c = vec![int(-1), int(-2), int(0), int(0)];
        match minimize(&a, &b, &c) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, int(-5));
                assert_eq!(&x[..2], &[int(3), int(1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![vec![int(1), int(1)]];
        assert_eq!(
            minimize(&a, &[int(-1)], &[int(0), int(0)]),
            LpOutcome::Infeasible
        );
        let a = vec![vec![int(1), int(-1)]];
        assert_eq!(
            minimize(&a, &[int(1)], &[int(0), int(-1)]),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        let x = find_feasible(&a, &[int(1), int(2)]).unwrap();
        assert_eq!(&x[0] + &x[1], int(1));
    }

    #[test]
    fn square_hull() {
        let pts: Vec<Vec<Rational>> = vec![
            vec![int(0), int(0)],
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(1), int(1)],
            vec![rat(1, 2), rat(1, 2)],
            vec![int(1), int(0)],
        ];
        assert_eq!(hull_vertices(&pts), vec![0, 1, 2, 3]);
        assert!(in_convex_hull(&pts, &[rat(1, 3), rat(2, 3)]));
        assert!(!in_convex_hull(&pts, &[int(2), int(0)]));
        assert!(is_hull_edge(&pts, 0, 1));
        assert!(!is_hull_edge(&pts, 0, 3));
    }
}
