//! Thermal processes: column-stochastic matrices that fix the Gibbs vector.

use num_traits::{One, Signed, Zero};

use crate::curve::{build_curve, tightly_thermomajorizes};
use crate::error::{Error, Result};
use crate::gibbs::GibbsContext;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::state::State;
use crate::transport::TransportationMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThermalProcess(Matrix);

impl ThermalProcess {
    pub fn new(ctx: &GibbsContext, m: Matrix) -> Result<Self> {
        match violation(ctx, &m)? {
            None => Ok(ThermalProcess(m)),
            Some(why) => Err(Error::NotThermalProcess(why)),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn apply(&self, p: &State) -> Result<State> {
        let out = self.0.mul_vec(p.as_slice())?;
        State::new(out)
    }
}

fn violation(ctx: &GibbsContext, m: &Matrix) -> Result<Option<String>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    ctx.check_dim(m.rows())?;
    if m.entries().iter().any(Signed::is_negative) {
        return Ok(Some("negative entry".into()));
    }
    if let Some(j) = m.col_sums().iter().position(|c| !c.is_one()) {
        return Ok(Some(format!("column {j} does not sum to 1")));
    }
    if m.mul_vec(ctx.gibbs())? != ctx.gibbs() {
        return Ok(Some("Gibbs vector is not preserved".into()));
    }
    Ok(None)
}

/// Exact check of non-negativity, column-stochasticity and `T g = g`.
pub fn is_thermal_process(ctx: &GibbsContext, m: &Matrix) -> Result<bool> {
    Ok(violation(ctx, m)?.is_none())
}

pub fn apply(t: &ThermalProcess, p: &State) -> Result<State> {
    t.apply(p)
}

/// The thermal process mapping `p` onto a state `r` whose curve is tightly
/// thermomajorized by that of `p`.
///
/// Both curves share the x-axis `[0, Z]`. Level `b` of `p` occupies the
/// interval of its segment on `β(p)`, level `w` of `r` the interval of its
/// segment on `β(r)`; the entry `T[w][b]` is the overlap of the two
/// intervals divided by `s[b]`. This is the chained transportation
/// construction run along `(π(β(p)), π(β(r)))`, so the result is an
/// extremal, biplanar process. It is the unique one when all slopes of
/// `β(p)` differ, which is required.
pub fn tp_from_pair(ctx: &GibbsContext, p: &State, r: &State) -> Result<ThermalProcess> {
    let from = build_curve(ctx, p)?;
    let to = build_curve(ctx, r)?;
    if !tightly_thermomajorizes(&from, &to)? {
        return Err(Error::NotTight);
    }
    if !from.has_distinct_slopes() {
        return Err(Error::DegenerateSlopes);
    }
    let s = ctx.weights();
    let starts = |order: &[usize]| {
        let mut at = vec![Rational::zero(); s.len()];
        let mut x = Rational::zero();
        for &level in order {
            at[level] = x.clone();
            x += &s[level];
        }
        at
    };
    let src = starts(from.order());
    let dst = starts(to.order());

    let d = ctx.dim();
    let mut t = Matrix::zeros(d, d);
    for w in 0..d {
        let (w_lo, w_hi) = (&dst[w], &dst[w] + &s[w]);
        for b in 0..d {
            let (b_lo, b_hi) = (&src[b], &src[b] + &s[b]);
            let lo = std::cmp::max(w_lo, b_lo);
            let hi = std::cmp::min(&w_hi, &b_hi);
            if hi > lo {
                t[(w, b)] = (hi - lo) / &s[b];
            }
        }
    }
    let t = ThermalProcess::new(ctx, t)?;
    if &t.apply(p)? != r {
        return Err(Error::Internal(
            "overlap construction does not reproduce the target".into(),
        ));
    }
    Ok(t)
}

/// Slope map `∂x`: the slope `x_i / s_i` of each level's segment.
pub fn slope_vector(ctx: &GibbsContext, x: &[Rational]) -> Result<Vec<Rational>> {
    ctx.check_dim(x.len())?;
    Ok(x.iter().zip(ctx.weights()).map(|(v, w)| v / w).collect())
}

/// `T^s = diag(q_{0,i}) T diag(q_{i,0})`, so that `T x = y` iff
/// `T^s ∂x = ∂y` with `∂` from [`slope_vector`].
pub fn slope_transformer(ctx: &GibbsContext, t: &ThermalProcess) -> Result<Matrix> {
    ctx.check_dim(t.dim())?;
    let inv: Vec<Rational> = ctx.weights().iter().map(|w| w.recip()).collect();
    Ok(t.matrix().scale(&inv, ctx.weights()))
}

/// `P = T diag(s)`: a transportation matrix with both margins equal to `s`.
pub fn to_transportation(ctx: &GibbsContext, t: &ThermalProcess) -> Result<TransportationMatrix> {
    ctx.check_dim(t.dim())?;
    let ones = vec![Rational::one(); t.dim()];
    let p = t.matrix().scale(&ones, ctx.weights());
    TransportationMatrix::new(p, ctx.weights().to_vec(), ctx.weights().to_vec())
}

pub fn from_transportation(ctx: &GibbsContext, p: &TransportationMatrix) -> Result<ThermalProcess> {
    ctx.check_dim(p.matrix().rows())?;
    if p.row_margins() != ctx.weights() || p.col_margins() != ctx.weights() {
        return Err(Error::MarginMismatch(
            "thermal processes need row and column margins equal to the Gibbs weights".into(),
        ));
    }
    let ones = vec![Rational::one(); ctx.dim()];
    let inv: Vec<Rational> = ctx.weights().iter().map(|w| w.recip()).collect();
    ThermalProcess::new(ctx, p.matrix().scale(&ones, &inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gibbs::make_context_exact;
    use crate::rational::{int, rat};

    fn ctx2() -> GibbsContext {
        make_context_exact(vec![int(1), rat(1, 2)]).unwrap()
    }

    fn mat(rows: &[&[(i64, i64)]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| rat(n, d)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn state(v: &[(i64, i64)]) -> State {
        State::new(v.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    fn b_matrix() -> Matrix {
        mat(&[&[(1, 2), (1, 1)], &[(1, 2), (0, 1)]])
    }

    #[test]
    fn recognizes_thermal_processes() {
        let ctx = ctx2();
        assert!(is_thermal_process(&ctx, &Matrix::identity(2)).unwrap());
        assert!(is_thermal_process(&ctx, &b_matrix()).unwrap());
        let swap = mat(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]]);
        assert!(!is_thermal_process(&ctx, &swap).unwrap());
        let negative = mat(&[&[(3, 2), (-1, 1)], &[(-1, 2), (2, 1)]]);
        assert!(!is_thermal_process(&ctx, &negative).unwrap());
        assert!(matches!(
            is_thermal_process(&ctx, &Matrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            ThermalProcess::new(&ctx, swap),
            Err(Error::NotThermalProcess(_))
        ));
    }

    #[test]
    fn application_examples() {
        let ctx = ctx2();
        let id = ThermalProcess::new(&ctx, Matrix::identity(2)).unwrap();
        let p = state(&[(3, 4), (1, 4)]);
        assert_eq!(apply(&id, &p).unwrap(), p);
        let b = ThermalProcess::new(&ctx, b_matrix()).unwrap();
        assert_eq!(apply(&b, &p).unwrap(), state(&[(5, 8), (3, 8)]));
        assert_eq!(apply(&b, &ctx.gibbs_state()).unwrap(), ctx.gibbs_state());
        assert!(matches!(
            apply(&b, &state(&[(1, 3), (1, 3), (1, 3)])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tp_from_pair_two_levels() {
        let ctx = ctx2();
        let p = state(&[(3, 4), (1, 4)]);
        let t = tp_from_pair(&ctx, &p, &p).unwrap();
        assert_eq!(t.matrix(), &Matrix::identity(2));
        let t = tp_from_pair(&ctx, &p, &state(&[(5, 8), (3, 8)])).unwrap();
        assert_eq!(t.matrix(), &b_matrix());
    }

    #[test]
    fn tp_from_pair_errors() {
        let ctx = ctx2();
        let p = state(&[(3, 4), (1, 4)]);
        assert_eq!(
            tp_from_pair(&ctx, &p, &ctx.gibbs_state()),
            Err(Error::NotTight)
        );
        let g = ctx.gibbs_state();
        assert_eq!(tp_from_pair(&ctx, &g, &g), Err(Error::DegenerateSlopes));
    }

    #[test]
    fn tp_from_pair_three_levels() {
        let ctx = make_context_exact(vec![int(1), rat(1, 2), rat(1, 4)]).unwrap();
        let p = state(&[(1, 2), (3, 10), (1, 5)]);
        let init = build_curve(&ctx, &p).unwrap();
        // Segments in natural order (0, 1, 2) with elbows lifted onto β(p).
        let y0 = init.eval_at(&int(1)).unwrap();
        let y1 = init.eval_at(&rat(3, 2)).unwrap();
        let r = State::new(vec![y0.clone(), &y1 - &y0, int(1) - &y1]).unwrap();
        assert_eq!(build_curve(&ctx, &r).unwrap().order(), &[0, 1, 2]);
        let t = tp_from_pair(&ctx, &p, &r).unwrap();
        assert_eq!(apply(&t, &p).unwrap(), r);
        // Interval overlaps: levels 2 and 1 of p fall entirely inside level 0
        // of r, level 0 of p spreads over all three levels of r.
        let expected = mat(&[
            &[(1, 4), (1, 1), (1, 1)],
            &[(1, 2), (0, 1), (0, 1)],
            &[(1, 4), (0, 1), (0, 1)],
        ]);
        assert_eq!(t.matrix(), &expected);
        let transport = to_transportation(&ctx, &t).unwrap();
        assert!(transport.is_extremal());
    }

    #[test]
    fn slope_transformer_contract_on_b() {
        let ctx = ctx2();
        let b = ThermalProcess::new(&ctx, b_matrix()).unwrap();
        let ts = slope_transformer(&ctx, &b).unwrap();
        let p = state(&[(3, 4), (1, 4)]);
        let lhs = ts
            .mul_vec(&slope_vector(&ctx, p.as_slice()).unwrap())
            .unwrap();
        let rhs = slope_vector(&ctx, apply(&b, &p).unwrap().as_slice()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(ts.adjacency(), b.matrix().adjacency());

        let id = ThermalProcess::new(&ctx, Matrix::identity(2)).unwrap();
        assert_eq!(slope_transformer(&ctx, &id).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn transportation_conversion_round_trips() {
        let ctx = make_context_exact(vec![int(1), rat(1, 2), rat(1, 4)]).unwrap();
        let id = ThermalProcess::new(&ctx, Matrix::identity(3)).unwrap();
        let p = to_transportation(&ctx, &id).unwrap();
        assert_eq!(p.matrix(), &Matrix::from_diagonal(ctx.weights()));
        assert_eq!(from_transportation(&ctx, &p).unwrap(), id);

        let ctx = ctx2();
        let b = ThermalProcess::new(&ctx, b_matrix()).unwrap();
        let p = to_transportation(&ctx, &b).unwrap();
        assert_eq!(p.matrix(), &mat(&[&[(1, 2), (1, 2)], &[(1, 2), (0, 1)]]));
        assert_eq!(from_transportation(&ctx, &p).unwrap(), b);
    }

    #[test]
    fn from_transportation_checks_margins() {
        let ctx = ctx2();
        let wrong = TransportationMatrix::from_matrix(Matrix::identity(2)).unwrap();
        assert!(matches!(
            from_transportation(&ctx, &wrong),
            Err(Error::MarginMismatch(_))
        ));
    }
}
