//! Biplanar vertices: those whose support forest can be drawn with rows and
//! columns on two parallel lines and no crossing edges.
//!
//! Two independent tests are provided. `chain` replays the chained pivot
//! construction, where each pick after the first must continue in whichever
//! line of the previous pick is still open, with a free restart only once
//! both lines are exhausted. `plane-orders` searches side orderings
//! directly. Both are exponential in the worst case; with at most 15 support
//! edges (eight levels) the memoized chain search stays well inside a
//! second, while the order search walks all `m!` row orders.

use std::collections::HashSet;
use std::sync::Arc;

use num_traits::Zero;

use super::vertices::{Cells, Partial};
use super::{is_extremal, TransportationMatrix};
use crate::curve::permutations;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::registry::{Registry, Strategy};

pub trait BiplanarityTest: Strategy {
    fn is_biplanar(&self, m: &TransportationMatrix) -> Result<bool>;
}

pub struct ChainConstruction;
pub struct PlaneOrderSearch;

/// Side orderings, bottom to top, under which no two support edges cross.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaneOrders {
    /// Row labels (output levels).
    pub out_order: Vec<usize>,
    /// Column labels (input levels).
    pub in_order: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Line {
    Row(usize),
    Col(usize),
}

fn require_extremal(m: &TransportationMatrix) -> Result<()> {
    if is_extremal(m) {
        Ok(())
    } else {
        Err(Error::NotExtremal)
    }
}

fn chain(
    target: &Matrix,
    state: Partial,
    forced: Option<Line>,
    failed: &mut HashSet<(Cells, Option<Line>)>,
) -> bool {
    if state.is_complete() {
        return &state.into_matrix(target.rows(), target.cols()) == target;
    }
    let key = (state.cells.clone(), forced);
    if failed.contains(&key) {
        return false;
    }
    let n = target.cols();
    let candidates: Vec<(usize, usize)> = state
        .open_cells(n)
        .filter(|&(i, j)| match forced {
            Some(Line::Row(r)) => i == r,
            Some(Line::Col(c)) => j == c,
            None => true,
        })
        .collect();
    for (i, j) in candidates {
        if std::cmp::min(&state.rows[i], &state.cols[j]) != &target[(i, j)] {
            continue;
        }
        let next = state.pick(n, i, j);
        let follow = if !next.rows[i].is_zero() {
            Some(Line::Row(i))
        } else if !next.cols[j].is_zero() {
            Some(Line::Col(j))
        } else {
            None
        };
        if chain(target, next, follow, failed) {
            return true;
        }
    }
    failed.insert(key);
    false
}

impl Strategy for ChainConstruction {
    fn name(&self) -> &'static str {
        "chain"
    }

    fn description(&self) -> &'static str {
        "backtracking replay of the chained pivot construction"
    }
}

impl BiplanarityTest for ChainConstruction {
    fn is_biplanar(&self, m: &TransportationMatrix) -> Result<bool> {
        require_extremal(m)?;
        let root = Partial::root(m.row_margins(), m.col_margins());
        Ok(chain(m.matrix(), root, None, &mut HashSet::new()))
    }
}

impl Strategy for PlaneOrderSearch {
    fn name(&self) -> &'static str {
        "plane-orders"
    }

    fn description(&self) -> &'static str {
        "exhaustive search for non-crossing row and column orders"
    }
}

impl BiplanarityTest for PlaneOrderSearch {
    fn is_biplanar(&self, m: &TransportationMatrix) -> Result<bool> {
        Ok(plane_orders(m)?.is_some())
    }
}

pub fn biplanarity_tests() -> Registry<dyn BiplanarityTest> {
    Registry::<dyn BiplanarityTest>::new("biplanarity test", "chain")
        .with(Arc::new(ChainConstruction))
        .with(Arc::new(PlaneOrderSearch))
}

/// Default test (chained construction). Errors if `m` is not a vertex.
pub fn is_biplanar(m: &TransportationMatrix) -> Result<bool> {
    ChainConstruction.is_biplanar(m)
}

/// Row position interval `(lo, hi)` spanned by each column's neighbours.
fn column_spans(m: &Matrix, row_pos: &[usize]) -> Vec<Option<(usize, usize)>> {
    (0..m.cols())
        .map(|j| {
            let pos = (0..m.rows())
                .filter(|&i| !m[(i, j)].is_zero())
                .map(|i| row_pos[i]);
            pos.fold(None, |acc, p| match acc {
                None => Some((p, p)),
                Some((lo, hi)) => Some((lo.min(p), hi.max(p))),
            })
        })
        .collect()
}

/// Places columns left to right; a column may follow the placed ones only if
/// none of their neighbours sits above its lowest neighbour.
fn place_columns(
    spans: &[Option<(usize, usize)>],
    placed: &mut Vec<usize>,
    used: &mut [bool],
    ceiling: Option<usize>,
    first_only: bool,
    out: &mut Vec<Vec<usize>>,
) {
    if placed.len() == spans.len() {
        out.push(placed.clone());
        return;
    }
    for j in 0..spans.len() {
        if used[j] {
            continue;
        }
        let next_ceiling = match (spans[j], ceiling) {
            (None, c) => c,
            (Some((_, hi)), None) => Some(hi),
            (Some((lo, hi)), Some(c)) if lo >= c => Some(hi),
            _ => continue,
        };
        used[j] = true;
        placed.push(j);
        place_columns(spans, placed, used, next_ceiling, first_only, out);
        placed.pop();
        used[j] = false;
        if first_only && !out.is_empty() {
            return;
        }
    }
}

fn search(m: &TransportationMatrix, first_only: bool) -> Result<Vec<PlaneOrders>> {
    require_extremal(m)?;
    let mat = m.matrix();
    let rows: Vec<usize> = (0..mat.rows()).collect();
    let mut found = Vec::new();
    for out_order in permutations(&rows) {
        let mut row_pos = vec![0; mat.rows()];
        for (p, &i) in out_order.iter().enumerate() {
            row_pos[i] = p;
        }
        let spans = column_spans(mat, &row_pos);
        let mut cols = Vec::new();
        place_columns(
            &spans,
            &mut Vec::new(),
            &mut vec![false; mat.cols()],
            None,
            first_only,
            &mut cols,
        );
        for in_order in cols {
            found.push(PlaneOrders {
                out_order: out_order.clone(),
                in_order,
            });
            if first_only {
                return Ok(found);
            }
        }
    }
    Ok(found)
}

/// One witness pair of non-crossing orders, or `None` if `m` is not
/// biplanar.
pub fn plane_orders(m: &TransportationMatrix) -> Result<Option<PlaneOrders>> {
    Ok(search(m, true)?.into_iter().next())
}

/// Every witness pair, rows varying slowest.
pub fn all_plane_orders(m: &TransportationMatrix) -> Result<Vec<PlaneOrders>> {
    search(m, false)
}

fn positions(order: &[usize], len: usize) -> Option<Vec<usize>> {
    if order.len() != len {
        return None;
    }
    let mut pos = vec![usize::MAX; len];
    for (p, &v) in order.iter().enumerate() {
        if v >= len || pos[v] != usize::MAX {
            return None;
        }
        pos[v] = p;
    }
    Some(pos)
}

/// Checks directly that no two support edges cross under `orders`.
pub fn is_non_crossing(m: &Matrix, orders: &PlaneOrders) -> bool {
    let (Some(rp), Some(cp)) = (
        positions(&orders.out_order, m.rows()),
        positions(&orders.in_order, m.cols()),
    ) else {
        return false;
    };
    let edges = m.support();
    edges.iter().enumerate().all(|(k, &(i, j))| {
        edges[k + 1..].iter().all(|&(i2, j2)| {
            let dr = rp[i] as i64 - rp[i2] as i64;
            let dc = cp[j] as i64 - cp[j2] as i64;
            dr * dc >= 0
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, Rational};

    fn tm(rows: Vec<Vec<Rational>>) -> TransportationMatrix {
        TransportationMatrix::from_matrix(Matrix::from_rows(rows).unwrap()).unwrap()
    }

    /// Transportation image of the four-level non-biplanar process.
    fn spider(q1: Rational, q2: Rational, q3: Rational) -> TransportationMatrix {
        let z = int(0);
        tm(vec![
            vec![int(1) - &q1, q1.clone(), z.clone(), z.clone()],
            vec![&q1 - &q2, z.clone(), q2.clone(), z.clone()],
            vec![&q2 - &q3, z.clone(), z.clone(), q3.clone()],
            vec![q3, z.clone(), z.clone(), z],
        ])
    }

    #[test]
    fn diagonal_is_biplanar() {
        let m = tm(vec![vec![int(1), int(0)], vec![int(0), rat(1, 2)]]);
        assert!(is_biplanar(&m).unwrap());
        let all = all_plane_orders(&m).unwrap();
        assert!(all.contains(&PlaneOrders {
            out_order: vec![0, 1],
            in_order: vec![0, 1]
        }));
    }

    #[test]
    fn path_is_biplanar() {
        let m = tm(vec![vec![rat(1, 2), rat(1, 2)], vec![rat(1, 2), int(0)]]);
        for test in biplanarity_tests().iter() {
            assert!(test.is_biplanar(&m).unwrap(), "{}", test.name());
        }
        let witness = PlaneOrders {
            out_order: vec![1, 0],
            in_order: vec![0, 1],
        };
        assert!(is_non_crossing(m.matrix(), &witness));
        assert!(all_plane_orders(&m).unwrap().contains(&witness));
        assert!(is_non_crossing(
            m.matrix(),
            &plane_orders(&m).unwrap().unwrap()
        ));
    }

    #[test]
    fn spider_is_not_biplanar() {
        let m = spider(rat(1, 2), rat(1, 4), rat(1, 8));
        assert!(is_extremal(&m));
        for test in biplanarity_tests().iter() {
            assert!(!test.is_biplanar(&m).unwrap(), "{}", test.name());
        }
        assert_eq!(plane_orders(&m).unwrap(), None);
    }

    #[test]
    fn non_vertices_are_rejected() {
        let full = tm(vec![vec![rat(1, 4), rat(1, 4)], vec![rat(1, 4), rat(1, 4)]]);
        assert_eq!(is_biplanar(&full), Err(Error::NotExtremal));
        assert_eq!(plane_orders(&full), Err(Error::NotExtremal));
    }

    #[test]
    fn malformed_orders_never_pass() {
        let m = Matrix::identity(2);
        let bad = PlaneOrders {
            out_order: vec![0, 0],
            in_order: vec![0, 1],
        };
        assert!(!is_non_crossing(&m, &bad));
    }
}
