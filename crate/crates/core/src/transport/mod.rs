//! Transportation polytopes: vertex enumeration, support forests and the
//! biplanar class of vertices, plus the extremal thermal processes they
//! induce.

mod biplanar;
mod extremal;
mod forest;
mod vertices;

pub use biplanar::{
    all_plane_orders, biplanarity_tests, is_biplanar, is_non_crossing, plane_orders,
    BiplanarityTest, ChainConstruction, PlaneOrderSearch, PlaneOrders,
};
pub use extremal::{enumerate_extremal_tps, zero_temperature_extremals, ExtremalProcess};
pub use forest::{forest_of, is_extremal, BipartiteForest};
pub use vertices::{enumerate_vertices, EnumerationOptions};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{format_rational, Rational};

/// Non-negative matrix together with its prescribed row and column sums.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransportationMatrix {
    matrix: Matrix,
    rows: Vec<Rational>,
    cols: Vec<Rational>,
}

impl TransportationMatrix {
    pub fn new(matrix: Matrix, rows: Vec<Rational>, cols: Vec<Rational>) -> Result<Self> {
        if matrix.rows() != rows.len() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: rows.len(),
            });
        }
        if matrix.cols() != cols.len() {
            return Err(Error::DimensionMismatch {
                expected: matrix.cols(),
                found: cols.len(),
            });
        }
        if matrix.entries().iter().any(Signed::is_negative) {
            return Err(Error::InvalidTransportation("negative entry".into()));
        }
        for (i, (got, want)) in matrix.row_sums().iter().zip(&rows).enumerate() {
            if got != want {
                return Err(Error::MarginMismatch(format!(
                    "row {i} sums to {}, expected {}",
                    format_rational(got),
                    format_rational(want)
                )));
            }
        }
        for (j, (got, want)) in matrix.col_sums().iter().zip(&cols).enumerate() {
            if got != want {
                return Err(Error::MarginMismatch(format!(
                    "column {j} sums to {}, expected {}",
                    format_rational(got),
                    format_rational(want)
                )));
            }
        }
        Ok(TransportationMatrix { matrix, rows, cols })
    }

    /// Takes the margins from the matrix itself.
    pub fn from_matrix(matrix: Matrix) -> Result<Self> {
        let rows = matrix.row_sums();
        let cols = matrix.col_sums();
        TransportationMatrix::new(matrix, rows, cols)
    }

    pub(crate) fn from_parts_unchecked(
        matrix: Matrix,
        rows: Vec<Rational>,
        cols: Vec<Rational>,
    ) -> Self {
        TransportationMatrix { matrix, rows, cols }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn row_margins(&self) -> &[Rational] {
        &self.rows
    }

    pub fn col_margins(&self) -> &[Rational] {
        &self.cols
    }

    pub fn is_extremal(&self) -> bool {
        is_extremal(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn validates_margins() {
        let m =
            Matrix::from_rows(vec![vec![rat(1, 2), rat(1, 2)], vec![rat(1, 2), int(0)]]).unwrap();
        let ok =
            TransportationMatrix::new(m.clone(), vec![int(1), rat(1, 2)], vec![int(1), rat(1, 2)]);
        assert!(ok.is_ok());
        let bad =
            TransportationMatrix::new(m.clone(), vec![int(1), int(1)], vec![int(1), rat(1, 2)]);
        assert!(matches!(bad, Err(Error::MarginMismatch(_))));
        let short = TransportationMatrix::new(m, vec![int(1)], vec![int(1), rat(1, 2)]);
        assert!(matches!(short, Err(Error::DimensionMismatch { .. })));
        let neg = Matrix::from_rows(vec![vec![int(-1), int(2)]]).unwrap();
        assert!(matches!(
            TransportationMatrix::from_matrix(neg),
            Err(Error::InvalidTransportation(_))
        ));
    }
}
