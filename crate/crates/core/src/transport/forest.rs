//! Support graphs of transportation matrices.

use std::fmt::Write as _;

use super::TransportationMatrix;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::format_rational;

/// Bipartite graph on `rows + cols` vertices with an edge for every
/// positive entry. Row `i` is vertex `i`, column `j` is vertex `rows + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteForest {
    rows: usize,
    cols: usize,
    edges: Vec<(usize, usize)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// False if `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

fn support_is_acyclic(m: &Matrix) -> bool {
    let mut uf = UnionFind::new(m.rows() + m.cols());
    m.support()
        .into_iter()
        .all(|(i, j)| uf.union(i, m.rows() + j))
}

impl BipartiteForest {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `(row, column)` pairs in row-major order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Connected components as sorted `(rows, columns)` pairs, ordered by
    /// their smallest vertex. Isolated vertices form their own component.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.rows + self.cols;
        let mut uf = UnionFind::new(n);
        for &(i, j) in &self.edges {
            uf.union(i, self.rows + j);
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for v in 0..n {
            let root = uf.find(v);
            if slot[root] == usize::MAX {
                slot[root] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[root]].push(v);
        }
        groups
            .into_iter()
            .map(|g| {
                let (r, c): (Vec<usize>, Vec<usize>) = g.into_iter().partition(|&v| v < self.rows);
                (r, c.into_iter().map(|v| v - self.rows).collect())
            })
            .collect()
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.rows + self.cols
    }
}

/// Support forest of `m`, or `NotExtremal` if the support has a cycle.
pub fn forest_of(m: &TransportationMatrix) -> Result<BipartiteForest> {
    let mat = m.matrix();
    if !support_is_acyclic(mat) {
        return Err(Error::NotExtremal);
    }
    Ok(BipartiteForest {
        rows: mat.rows(),
        cols: mat.cols(),
        edges: mat.support(),
    })
}

/// A point of a transportation polytope is a vertex exactly when its support
/// graph has no cycle.
pub fn is_extremal(m: &TransportationMatrix) -> bool {
    support_is_acyclic(m.matrix())
}

impl TransportationMatrix {
    /// Graphviz rendering of the support graph, rows on the left and columns
    /// on the right, edges labelled by their entries.
    pub fn to_dot(&self) -> String {
        let mat = self.matrix();
        let mut out = String::from("graph support {\n  rankdir=LR;\n");
        out.push_str("  subgraph rows { rank=same;");
        for i in 0..mat.rows() {
            let _ = write!(out, " r{i};");
        }
        out.push_str(" }\n  subgraph cols { rank=same;");
        for j in 0..mat.cols() {
            let _ = write!(out, " c{j};");
        }
        out.push_str(" }\n");
        for (i, j) in mat.support() {
            let _ = writeln!(
                out,
                "  r{i} -- c{j} [label=\"{}\"];",
                format_rational(&mat[(i, j)])
            );
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn tm(rows: Vec<Vec<crate::rational::Rational>>) -> TransportationMatrix {
        TransportationMatrix::from_matrix(Matrix::from_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn cycle_is_not_extremal() {
        let full = tm(vec![vec![rat(1, 4), rat(1, 4)], vec![rat(1, 4), rat(1, 4)]]);
        assert!(!is_extremal(&full));
        assert_eq!(forest_of(&full), Err(Error::NotExtremal));
    }

    #[test]
    fn forest_components() {
        let m = tm(vec![vec![int(1), int(0)], vec![int(0), rat(1, 2)]]);
        assert!(is_extremal(&m));
        let f = forest_of(&m).unwrap();
        assert_eq!(f.edges(), &[(0, 0), (1, 1)]);
        assert!(!f.is_tree());
        assert_eq!(f.components(), vec![(vec![0], vec![0]), (vec![1], vec![1])]);
    }

    #[test]
    fn dot_lists_edges() {
        let m = tm(vec![vec![rat(1, 2), rat(1, 2)], vec![rat(1, 2), int(0)]]);
        let dot = m.to_dot();
        assert!(dot.contains("r0 -- c1 [label=\"1/2\"]"));
        assert!(!dot.contains("r1 -- c1"));
    }
}
