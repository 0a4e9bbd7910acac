//! Extremal thermal processes, read off the vertices of the transportation
//! polytope with both margins equal to the Gibbs weights.

use num_traits::One;

use super::{enumerate_vertices, is_biplanar, EnumerationOptions, TransportationMatrix};
use crate::error::Result;
use crate::gibbs::GibbsContext;
use crate::matrix::Matrix;
use crate::process::{from_transportation, ThermalProcess};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalProcess {
    pub process: ThermalProcess,
    pub transport: TransportationMatrix,
    pub biplanar: bool,
}

/// Every extremal thermal process for `ctx`, in the lexicographic order of
/// their transportation matrices.
pub fn enumerate_extremal_tps(
    ctx: &GibbsContext,
    options: &EnumerationOptions,
) -> Result<Vec<ExtremalProcess>> {
    enumerate_vertices(ctx.weights(), ctx.weights(), options)?
        .into_iter()
        .map(|transport| {
            let process = from_transportation(ctx, &transport)?;
            let biplanar = is_biplanar(&transport)?;
            Ok(ExtremalProcess {
                process,
                transport,
                biplanar,
            })
        })
        .collect()
}

/// The `d^(d-1)` zero-temperature extremal processes: column 0 is `e_0` and
/// every other column is an arbitrary standard basis vector.
pub fn zero_temperature_extremals(d: usize) -> Vec<Matrix> {
    if d == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; d];
    loop {
        let mut m = Matrix::zeros(d, d);
        for (j, &i) in choice.iter().enumerate() {
            m[(i, j)] = Rational::one();
        }
        out.push(m);
        // Odometer over columns 1..d; column 0 stays fixed.
        let mut k = d - 1;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            choice[k] += 1;
            if choice[k] < d {
                break;
            }
            choice[k] = 0;
            k -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gibbs::make_context_exact;
    use crate::rational::{int, rat};

    #[test]
    fn two_levels() {
        let ctx = make_context_exact(vec![int(1), rat(1, 2)]).unwrap();
        let all = enumerate_extremal_tps(&ctx, &EnumerationOptions::default()).unwrap();
        let b = Matrix::from_rows(vec![vec![rat(1, 2), int(1)], vec![rat(1, 2), int(0)]]).unwrap();
        let got: Vec<(&Matrix, bool)> = all
            .iter()
            .map(|e| (e.process.matrix(), e.biplanar))
            .collect();
        assert_eq!(got.len(), 2);
        assert!(got.contains(&(&Matrix::identity(2), true)));
        assert!(got.contains(&(&b, true)));
    }

    #[test]
    fn zero_temperature_counts() {
        assert_eq!(zero_temperature_extremals(1), vec![Matrix::identity(1)]);
        let two = zero_temperature_extremals(2);
        let flat = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(0)]]).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.contains(&flat));
        assert!(two.contains(&Matrix::identity(2)));
        assert_eq!(zero_temperature_extremals(3).len(), 9);
        assert!(zero_temperature_extremals(0).is_empty());
    }
}
