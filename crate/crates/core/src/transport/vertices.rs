//! Vertex enumeration by replaying every sequence of pivot steps.
//!
//! A vertex is produced by repeatedly picking an unassigned cell `(i, j)`,
//! filling it with `min(r_i, c_j)`, closing row `i` when `r_i <= c_j` and
//! column `j` when `r_i >= c_j`, and subtracting the filled value from both
//! margins. Every vertex arises this way and every such sequence yields a
//! vertex. Different pick orders often reach the same partial matrix, so
//! partial matrices are memoized and each is expanded once.

use std::collections::{BTreeSet, HashSet};

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::TransportationMatrix;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    /// Worker threads for the top-level fan-out; `1` keeps everything on
    /// the calling thread.
    pub jobs: usize,
    /// Upper bound on distinct partial matrices visited per worker.
    pub max_states: Option<usize>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            jobs: 1,
            max_states: None,
        }
    }
}

pub(super) type Cells = Vec<Option<Rational>>;

/// Partially assigned matrix with the margins still to be distributed.
#[derive(Clone)]
pub(super) struct Partial {
    pub(super) cells: Cells,
    pub(super) rows: Vec<Rational>,
    pub(super) cols: Vec<Rational>,
}

impl Partial {
    /// Lines with zero margin are closed up front; they only ever hold zeros.
    pub(super) fn root(r: &[Rational], c: &[Rational]) -> Partial {
        let n = c.len();
        let mut cells: Cells = vec![None; r.len() * n];
        for (k, cell) in cells.iter_mut().enumerate() {
            if r[k / n].is_zero() || c[k % n].is_zero() {
                *cell = Some(Rational::zero());
            }
        }
        Partial {
            cells,
            rows: r.to_vec(),
            cols: c.to_vec(),
        }
    }

    pub(super) fn pick(&self, n: usize, i: usize, j: usize) -> Partial {
        let mut next = self.clone();
        let (ri, cj) = (&self.rows[i], &self.cols[j]);
        let v = std::cmp::min(ri, cj).clone();
        let close_row = ri <= cj;
        let close_col = ri >= cj;
        next.rows[i] -= &v;
        next.cols[j] -= &v;
        next.cells[i * n + j] = Some(v);
        let m = self.rows.len();
        if close_row {
            for jj in 0..n {
                next.cells[i * n + jj].get_or_insert_with(Rational::zero);
            }
        }
        if close_col {
            for ii in 0..m {
                next.cells[ii * n + j].get_or_insert_with(Rational::zero);
            }
        }
        if next.rows.iter().all(Zero::is_zero) && next.cols.iter().all(Zero::is_zero) {
            for cell in next.cells.iter_mut() {
                cell.get_or_insert_with(Rational::zero);
            }
        }
        next
    }

    pub(super) fn open_cells(&self, n: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(move |(k, _)| (k / n, k % n))
    }

    pub(super) fn is_complete(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    pub(super) fn into_matrix(self, m: usize, n: usize) -> Matrix {
        let rows = (0..m)
            .map(|i| {
                (0..n)
                    .map(|j| self.cells[i * n + j].clone().expect("complete"))
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows).expect("rectangular")
    }
}

struct Search {
    m: usize,
    n: usize,
    seen: HashSet<Cells>,
    found: BTreeSet<Matrix>,
    max_states: Option<usize>,
}

impl Search {
    fn explore(&mut self, state: Partial) -> Result<()> {
        if state.is_complete() {
            self.found.insert(state.into_matrix(self.m, self.n));
            return Ok(());
        }
        if !self.seen.insert(state.cells.clone()) {
            return Ok(());
        }
        if let Some(limit) = self.max_states {
            if self.seen.len() > limit {
                return Err(Error::BudgetExceeded(limit));
            }
        }
        let open: Vec<_> = state.open_cells(self.n).collect();
        for (i, j) in open {
            self.explore(state.pick(self.n, i, j))?;
        }
        Ok(())
    }
}

/// All vertices of the transportation polytope with row sums `r` and column
/// sums `c`, sorted lexicographically by entries.
pub fn enumerate_vertices(
    r: &[Rational],
    c: &[Rational],
    options: &EnumerationOptions,
) -> Result<Vec<TransportationMatrix>> {
    if r.iter().chain(c).any(Signed::is_negative) {
        return Err(Error::MarginMismatch("margins must be non-negative".into()));
    }
    let total_r: Rational = r.iter().sum();
    let total_c: Rational = c.iter().sum();
    if total_r != total_c {
        return Err(Error::MarginMismatch(format!(
            "row margins sum to {total_r}, column margins to {total_c}"
        )));
    }
    let (m, n) = (r.len(), c.len());
    if m == 0 || n == 0 {
        return Ok(Vec::new());
    }

    let root = Partial::root(r, c);
    let new_search = || Search {
        m,
        n,
        seen: HashSet::new(),
        found: BTreeSet::new(),
        max_states: options.max_states,
    };

    let found = if options.jobs <= 1 || root.is_complete() {
        let mut search = new_search();
        search.explore(root)?;
        search.found
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?;
        let firsts: Vec<Partial> = root
            .open_cells(n)
            .map(|(i, j)| root.pick(n, i, j))
            .collect();
        let parts: Vec<Result<BTreeSet<Matrix>>> = pool.install(|| {
            firsts
                .into_par_iter()
                .map(|state| {
                    let mut search = new_search();
                    search.explore(state)?;
                    Ok(search.found)
                })
                .collect()
        });
        let mut all = BTreeSet::new();
        for part in parts {
            all.extend(part?);
        }
        all
    };

    Ok(found
        .into_iter()
        .map(|mat| TransportationMatrix::from_parts_unchecked(mat, r.to_vec(), c.to_vec()))
        .collect())
}
