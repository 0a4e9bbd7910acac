//! Cross-checks pivot enumeration against brute force over support sets.
//!
//! The oracle tries every acyclic cell set with at most `m + n - 1` cells,
//! solves for the entries by peeling leaves, and keeps strictly positive
//! solutions. Each vertex shows up exactly once, under its own support.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use thermo_core::rational::{int, rat};
use thermo_core::transport::{all_plane_orders, biplanarity_tests, forest_of, is_non_crossing};
use thermo_core::{enumerate_vertices, is_extremal, EnumerationOptions, Matrix, Rational};

fn acyclic(m: usize, n: usize, cells: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..m + n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] == x {
            x
        } else {
            let r = find(p, p[x]);
            p[x] = r;
            r
        }
    }
    for &(i, j) in cells {
        let (a, b) = (find(&mut parent, i), find(&mut parent, m + j));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

fn solve(r: &[Rational], c: &[Rational], cells: &[(usize, usize)]) -> Option<Matrix> {
    let (m, n) = (r.len(), c.len());
    let mut rr = r.to_vec();
    let mut cc = c.to_vec();
    let mut open: Vec<(usize, usize)> = cells.to_vec();
    let mut out = Matrix::zeros(m, n);
    while !open.is_empty() {
        let leaf = open.iter().position(|&(i, j)| {
            open.iter().filter(|&&(a, _)| a == i).count() == 1
                || open.iter().filter(|&&(_, b)| b == j).count() == 1
        })?;
        let (i, j) = open.remove(leaf);
        let row_leaf = !open.iter().any(|&(a, _)| a == i);
        let v = if row_leaf {
            rr[i].clone()
        } else {
            cc[j].clone()
        };
        if !v.is_positive() {
            return None;
        }
        rr[i] -= &v;
        cc[j] -= &v;
        out[(i, j)] = v;
    }
    if rr.iter().chain(&cc).all(Zero::is_zero) {
        Some(out)
    } else {
        None
    }
}

fn brute_force(r: &[Rational], c: &[Rational]) -> BTreeSet<Matrix> {
    let (m, n) = (r.len(), c.len());
    let all: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let limit = m + n - 1;
    let mut found = BTreeSet::new();
    let mut stack: Vec<(usize, Vec<(usize, usize)>)> = vec![(0, Vec::new())];
    while let Some((next, cells)) = stack.pop() {
        if let Some(mat) = solve(r, c, &cells) {
            found.insert(mat);
        }
        if cells.len() == limit {
            continue;
        }
        for (k, &cell) in all.iter().enumerate().skip(next) {
            let mut more = cells.clone();
            more.push(cell);
            if acyclic(m, n, &more) {
                stack.push((k + 1, more));
            }
        }
    }
    found
}

fn pivot(r: &[Rational], c: &[Rational]) -> BTreeSet<Matrix> {
    enumerate_vertices(r, c, &EnumerationOptions::default())
        .unwrap()
        .into_iter()
        .map(|t| t.matrix().clone())
        .collect()
}

#[test]
fn gibbs_margin_counts() {
    let cases: Vec<(Vec<Rational>, usize)> = vec![
        (vec![int(1), rat(1, 2)], 2),
        (vec![int(1), rat(1, 2), rat(1, 4)], 10),
        (vec![int(1), rat(1, 2), rat(1, 3), rat(1, 5)], 156),
    ];
    for (s, count) in cases {
        let got = pivot(&s, &s);
        assert_eq!(got.len(), count, "s = {s:?}");
        assert_eq!(got, brute_force(&s, &s), "s = {s:?}");
    }
}

#[test]
fn degenerate_and_rectangular_margins() {
    let cases: Vec<(Vec<Rational>, Vec<Rational>)> = vec![
        (
            vec![int(2), int(2), int(2), int(1)],
            vec![int(4), int(1), int(1), int(1)],
        ),
        (vec![int(1), int(1), int(1)], vec![int(1), int(1), int(1)]),
        (vec![int(8), int(2), int(5)], vec![int(8), int(3), int(4)]),
        (vec![int(3), int(0), int(2)], vec![int(1), int(4)]),
        (vec![int(5)], vec![int(1), int(2), int(2)]),
    ];
    for (r, c) in cases {
        assert_eq!(pivot(&r, &c), brute_force(&r, &c), "r = {r:?}, c = {c:?}");
    }
}

#[test]
fn shared_support_family_appears() {
    let r = [int(2), int(2), int(2), int(1)];
    let c = [int(4), int(1), int(1), int(1)];
    let spider = Matrix::from_rows(vec![
        vec![int(1), int(1), int(0), int(0)],
        vec![int(1), int(0), int(1), int(0)],
        vec![int(1), int(0), int(0), int(1)],
        vec![int(1), int(0), int(0), int(0)],
    ])
    .unwrap();
    assert!(pivot(&r, &c).contains(&spider));
}

fn margins(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(1i64..6, len).prop_map(|v| v.into_iter().map(int).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_vertex_is_a_forest_and_tests_agree(r in margins(3), c0 in margins(2)) {
        let mut c = c0;
        let total: Rational = r.iter().sum();
        let partial: Rational = c.iter().sum();
        prop_assume!(total > partial);
        c.push(total - partial);
        let tests = biplanarity_tests();
        for v in enumerate_vertices(&r, &c, &EnumerationOptions::default()).unwrap() {
            prop_assert!(is_extremal(&v));
            prop_assert_eq!(v.matrix().row_sums(), r.clone());
            prop_assert_eq!(v.matrix().col_sums(), c.clone());
            let forest = forest_of(&v).unwrap();
            prop_assert!(forest.edges().len() < r.len() + c.len());
            let verdicts: Vec<bool> = tests.iter().map(|t| t.is_biplanar(&v).unwrap()).collect();
            prop_assert!(verdicts.windows(2).all(|w| w[0] == w[1]));
            for orders in all_plane_orders(&v).unwrap() {
                prop_assert!(is_non_crossing(v.matrix(), &orders));
            }
        }
    }

    #[test]
    fn counts_are_permutation_invariant(s in margins(4), shift in 1usize..4) {
        let mut rotated = s.clone();
        rotated.rotate_left(shift);
        prop_assert_eq!(pivot(&s, &s).len(), pivot(&rotated, &rotated).len());
    }
}
