//! Thermomajorization curves and the (tight) thermomajorization relations.
//!
//! A curve is laid out by sorting levels by descending slope `p_i / s_i`
//! and stacking segments of width `s_i` and height `p_i` from the origin.
//! Ties are broken by ascending level index so every state has exactly one
//! canonical curve.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gibbs::GibbsContext;
use crate::rational::{format_rational, Rational};
use crate::state::State;

pub type Point = (Rational, Rational);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThermoCurve {
    order: Vec<usize>,
    elbows: Vec<Point>,
    widths: Vec<Rational>,
}

/// Elbows of a curve that sit exactly on a reference curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceSignature {
    pub contacts: Vec<Point>,
}

impl FaceSignature {
    /// No contact other than the shared end point `(Z, 1)`.
    pub fn is_interior(&self, end: &Point) -> bool {
        self.contacts.iter().all(|c| c == end)
    }
}

/// Compares slopes `a_p / a_s` and `b_p / b_s` with positive widths.
fn cmp_slope(a_p: &Rational, a_s: &Rational, b_p: &Rational, b_s: &Rational) -> Ordering {
    (a_p * b_s).cmp(&(b_p * a_s))
}

impl ThermoCurve {
    pub fn new(ctx: &GibbsContext, p: &State) -> Result<Self> {
        ctx.check_dim(p.dim())?;
        let s = ctx.weights();
        let mut order: Vec<usize> = (0..p.dim()).collect();
        order.sort_by(|&i, &j| cmp_slope(&p[j], &s[j], &p[i], &s[i]).then(i.cmp(&j)));
        Ok(ThermoCurve::from_order(s, p.as_slice(), order))
    }

    /// Lays out `p` in the given segment order without sorting. The result
    /// is only concave when `order` is a valid β-order of `p`.
    pub(crate) fn from_order(s: &[Rational], p: &[Rational], order: Vec<usize>) -> Self {
        let mut x = Rational::zero();
        let mut y = Rational::zero();
        let elbows = order
            .iter()
            .map(|&i| {
                x += &s[i];
                y += &p[i];
                (x.clone(), y.clone())
            })
            .collect();
        ThermoCurve {
            order,
            elbows,
            widths: s.to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    /// β-order: level index of each segment, left to right.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn elbows(&self) -> &[Point] {
        &self.elbows
    }

    pub fn end(&self) -> &Point {
        self.elbows.last().expect("curves have at least one level")
    }

    pub fn widths(&self) -> &[Rational] {
        &self.widths
    }

    /// Occupation vector read back from the segment heights.
    pub fn occupations(&self) -> Vec<Rational> {
        let mut p = vec![Rational::zero(); self.dim()];
        let mut prev = Rational::zero();
        for (k, &level) in self.order.iter().enumerate() {
            p[level] = &self.elbows[k].1 - &prev;
            prev = self.elbows[k].1.clone();
        }
        p
    }

    /// Slope of each segment, in curve order.
    pub fn slopes(&self) -> Vec<Rational> {
        let p = self.occupations();
        self.order
            .iter()
            .map(|&i| &p[i] / &self.widths[i])
            .collect()
    }

    /// True when no two segments share a slope.
    pub fn has_distinct_slopes(&self) -> bool {
        self.slopes().windows(2).all(|w| w[0] != w[1])
    }

    /// Height of the piecewise-linear curve at `x`, for `0 <= x <= Z`.
    pub fn eval_at(&self, x: &Rational) -> Result<Rational> {
        let z = &self.end().0;
        if x.is_negative() || x > z {
            return Err(Error::OutOfRange(format_rational(x)));
        }
        let (mut px, mut py) = (Rational::zero(), Rational::zero());
        for (ex, ey) in &self.elbows {
            if x <= ex {
                return Ok(&py + (ey - &py) * (x - &px) / (ex - &px));
            }
            px = ex.clone();
            py = ey.clone();
        }
        unreachable!("x <= Z is covered by the last elbow")
    }

    /// All β-orders of this curve: the canonical one with every reordering
    /// of runs of equal slopes.
    pub fn valid_orders(&self) -> Vec<Vec<usize>> {
        let slopes = self.slopes();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (k, level) in self.order.iter().enumerate() {
            if k > 0 && slopes[k] == slopes[k - 1] {
                groups.last_mut().unwrap().push(*level);
            } else {
                groups.push(vec![*level]);
            }
        }
        let mut out = vec![Vec::new()];
        for group in groups {
            let perms = permutations(&group);
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<usize>| {
                    perms.iter().map(move |perm| {
                        let mut v = prefix.clone();
                        v.extend(perm);
                        v
                    })
                })
                .collect();
        }
        out
    }

    fn check_same_context(&self, other: &ThermoCurve) -> Result<()> {
        if self.widths != other.widths {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }
}

/// All permutations of `items`, in lexicographic order of positions.
pub(crate) fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

pub fn build_curve(ctx: &GibbsContext, p: &State) -> Result<ThermoCurve> {
    ThermoCurve::new(ctx, p)
}

pub fn eval_at(curve: &ThermoCurve, x: &Rational) -> Result<Rational> {
    curve.eval_at(x)
}

/// Every elbow of `b` lies on or below `a`.
pub fn thermomajorizes(a: &ThermoCurve, b: &ThermoCurve) -> Result<bool> {
    a.check_same_context(b)?;
    for (x, y) in b.elbows() {
        if y > &a.eval_at(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every elbow of `b` lies exactly on `a`.
pub fn tightly_thermomajorizes(a: &ThermoCurve, b: &ThermoCurve) -> Result<bool> {
    a.check_same_context(b)?;
    for (x, y) in b.elbows() {
        if y != &a.eval_at(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn face_signature(init: &ThermoCurve, b: &ThermoCurve) -> Result<FaceSignature> {
    if !thermomajorizes(init, b)? {
        return Err(Error::NotAchievable);
    }
    let mut contacts = Vec::new();
    for (x, y) in b.elbows() {
        if y == &init.eval_at(x)? {
            contacts.push((x.clone(), y.clone()));
        }
    }
    Ok(FaceSignature { contacts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gibbs::make_context_exact;
    use crate::rational::{int, rat};

    fn ctx3() -> GibbsContext {
        make_context_exact(vec![int(1), rat(1, 2), rat(1, 4)]).unwrap()
    }

    fn ctx2() -> GibbsContext {
        make_context_exact(vec![int(1), rat(1, 2)]).unwrap()
    }

    fn state(v: &[(i64, i64)]) -> State {
        State::new(v.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    fn pt(a: (i64, i64), b: (i64, i64)) -> Point {
        (rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn gibbs_state_gives_a_straight_line() {
        let ctx = ctx3();
        let c = build_curve(&ctx, &ctx.gibbs_state()).unwrap();
        assert_eq!(c.order(), &[0, 1, 2]);
        assert_eq!(
            c.elbows(),
            &[pt((1, 1), (4, 7)), pt((3, 2), (6, 7)), pt((7, 4), (1, 1))]
        );
    }

    #[test]
    fn curve_sorts_by_descending_slope() {
        let c = build_curve(&ctx3(), &state(&[(1, 2), (3, 10), (1, 5)])).unwrap();
        assert_eq!(c.order(), &[2, 1, 0]);
        assert_eq!(
            c.elbows(),
            &[pt((1, 4), (1, 5)), pt((3, 4), (1, 2)), pt((7, 4), (1, 1))]
        );

        let c = build_curve(&ctx2(), &state(&[(3, 4), (1, 4)])).unwrap();
        assert_eq!(c.order(), &[0, 1]);
        assert_eq!(c.elbows(), &[pt((1, 1), (3, 4)), pt((3, 2), (1, 1))]);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = build_curve(&ctx3(), &state(&[(1, 2), (1, 2)]));
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn evaluation_is_piecewise_linear() {
        let ctx = ctx3();
        let gibbs = build_curve(&ctx, &ctx.gibbs_state()).unwrap();
        assert_eq!(gibbs.eval_at(&int(0)).unwrap(), int(0));
        assert_eq!(gibbs.eval_at(&rat(7, 4)).unwrap(), int(1));
        assert_eq!(gibbs.eval_at(&rat(7, 8)).unwrap(), rat(1, 2));
        assert!(matches!(gibbs.eval_at(&int(2)), Err(Error::OutOfRange(_))));
        assert!(matches!(gibbs.eval_at(&int(-1)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn thermomajorization_examples() {
        let ctx = ctx3();
        let a = build_curve(&ctx, &state(&[(1, 2), (3, 10), (1, 5)])).unwrap();
        let g = build_curve(&ctx, &ctx.gibbs_state()).unwrap();
        assert!(thermomajorizes(&a, &g).unwrap());
        assert!(thermomajorizes(&a, &a).unwrap());

        let ground = build_curve(&ctx, &state(&[(1, 1), (0, 1), (0, 1)])).unwrap();
        let top = build_curve(&ctx, &state(&[(0, 1), (0, 1), (1, 1)])).unwrap();
        assert_eq!(top.elbows()[0], pt((1, 4), (1, 1)));
        assert!(!thermomajorizes(&ground, &top).unwrap());
    }

    #[test]
    fn tight_thermomajorization_examples() {
        let ctx = ctx2();
        let a = build_curve(&ctx, &state(&[(3, 4), (1, 4)])).unwrap();
        assert!(tightly_thermomajorizes(&a, &a).unwrap());

        let b = build_curve(&ctx, &state(&[(5, 8), (3, 8)])).unwrap();
        assert_eq!(b.order(), &[1, 0]);
        assert_eq!(b.elbows(), &[pt((1, 2), (3, 8)), pt((3, 2), (1, 1))]);
        assert!(tightly_thermomajorizes(&a, &b).unwrap());

        let g = build_curve(&ctx, &ctx.gibbs_state()).unwrap();
        assert!(!tightly_thermomajorizes(&a, &g).unwrap());
        assert!(thermomajorizes(&a, &g).unwrap());
    }

    #[test]
    fn mixing_contexts_is_rejected() {
        let a = build_curve(&ctx2(), &state(&[(3, 4), (1, 4)])).unwrap();
        let other = make_context_exact(vec![int(1), rat(1, 3)]).unwrap();
        let b = build_curve(&other, &state(&[(3, 4), (1, 4)])).unwrap();
        assert_eq!(thermomajorizes(&a, &b), Err(Error::ContextMismatch));
        assert_eq!(tightly_thermomajorizes(&a, &b), Err(Error::ContextMismatch));
    }

    #[test]
    fn face_signature_examples() {
        let ctx = ctx2();
        let init = build_curve(&ctx, &state(&[(3, 4), (1, 4)])).unwrap();
        let own = face_signature(&init, &init).unwrap();
        assert_eq!(own.contacts.len(), 2);
        assert!(!own.is_interior(init.end()));

        let b = build_curve(&ctx, &state(&[(11, 16), (5, 16)])).unwrap();
        let sig = face_signature(&init, &b).unwrap();
        assert_eq!(sig.contacts, vec![pt((3, 2), (1, 1))]);
        assert!(sig.is_interior(init.end()));

        // The Gibbs line only touches at the shared end point.
        let g = build_curve(&ctx, &ctx.gibbs_state()).unwrap();
        let sig = face_signature(&init, &g).unwrap();
        assert_eq!(sig.contacts, vec![pt((3, 2), (1, 1))]);
        assert!(sig.is_interior(init.end()));

        let unreachable = build_curve(&ctx, &state(&[(1, 1), (0, 1)])).unwrap();
        assert_eq!(
            face_signature(&init, &unreachable),
            Err(Error::NotAchievable)
        );
    }

    #[test]
    fn valid_orders_expand_ties() {
        let ctx = make_context_exact(vec![int(1), int(1), int(1)]).unwrap();
        let c = build_curve(&ctx, &state(&[(1, 4), (1, 2), (1, 4)])).unwrap();
        assert_eq!(c.order(), &[1, 0, 2]);
        assert_eq!(c.valid_orders(), vec![vec![1, 0, 2], vec![1, 2, 0]]);
        assert_eq!(c.occupations(), vec![rat(1, 4), rat(1, 2), rat(1, 4)]);
    }
}
