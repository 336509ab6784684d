//! Divided differences (recursive table and symmetric sum), q-B-splines as
//! divided differences of truncated q-powers, and the integral identity
//! tying the two together.
//!
//! The q-B-spline of degree n over knots `t_k < … < t_{k+n+1}` is
//!
//! ```text
//! N_{k,n}(t;q) = (t_{k+n+1} - t_k) · [t_k,…,t_{k+n+1}]_x (x - t)_+^{n,q},
//! ```
//!
//! where the divided difference acts on the x-argument of the truncated
//! power and t is the evaluation variable. That orientation is fixed by the
//! kernel derivation: the same symmetric-sum functional, viewed through its
//! q-Peano kernel, gives
//!
//! ```text
//! f[t_0,…,t_{n+1}] = q^{n(n+1)/2}/[n]_q! ∫ₐᵇ N_{0,n}(t;q)/(t_{n+1}-t_0)
//!                    (D_{1/q}^{n+1} f)(qⁿ t) d_{1/q} t.
//! ```

use crate::error::{QError, QResult};
use crate::funcrep::{FunctionSpec, PolynomialSpec};
use crate::interp::KnotVector;
use crate::peano::{LinearFunctional, PeanoKernel, PointTerm};
use crate::qarith::{truncated_q_power, QParam};
use crate::qcalc::IntegralConfig;
use crate::scalar::QScalar;

/// Triangular table of recursive divided differences over distinct knots.
#[derive(Clone, Debug, PartialEq)]
pub struct DividedDifferenceTable<T> {
    knots: KnotVector<T>,
    levels: Vec<Vec<T>>,
}

impl<T: QScalar> DividedDifferenceTable<T> {
    pub fn from_values(knots: KnotVector<T>, values: Vec<T>) -> QResult<Self> {
        if values.len() != knots.len() {
            return Err(QError::WeightCountMismatch {
                nodes: knots.len(),
                weights: values.len(),
            });
        }
        let ts = knots.as_slice();
        let mut levels = vec![values];
        for k in 1..ts.len() {
            let prev = &levels[k - 1];
            let mut row = Vec::with_capacity(prev.len() - 1);
            for i in 0..prev.len() - 1 {
                row.push((prev[i + 1] - prev[i]) / (ts[i + k] - ts[i]));
            }
            levels.push(row);
        }
        Ok(DividedDifferenceTable { knots, levels })
    }

    pub fn from_function(f: &FunctionSpec<T>, knots: KnotVector<T>) -> QResult<Self> {
        let values = knots.as_slice().iter().map(|&t| f.evaluate(t)).collect();
        Self::from_values(knots, values)
    }

    pub fn knots(&self) -> &KnotVector<T> {
        &self.knots
    }

    /// Row k holds the order-k divided differences.
    pub fn level(&self, k: usize) -> &[T] {
        &self.levels[k]
    }

    /// The full-order divided difference `f[t_0,…,t_N]`.
    pub fn top(&self) -> T {
        *self.levels.last().unwrap().first().unwrap()
    }
}

/// `f[t_0,…,t_N]` through the recursive table (better conditioned than the
/// symmetric sum, which is kept as the test oracle).
pub fn divided_difference<T: QScalar>(f: &FunctionSpec<T>, knots: &KnotVector<T>) -> QResult<T> {
    Ok(DividedDifferenceTable::from_function(f, knots.clone())?.top())
}

/// Symmetric-sum form `Σ_i f(t_i) / ∏_{j≠i} (t_i - t_j)`.
pub fn divided_difference_symmetric<T: QScalar>(
    f: &FunctionSpec<T>,
    knots: &KnotVector<T>,
) -> QResult<T> {
    let ts = knots.as_slice();
    let mut sum = T::zero();
    for (i, &ti) in ts.iter().enumerate() {
        let mut denom = T::one();
        for (j, &tj) in ts.iter().enumerate() {
            if j != i {
                denom = denom * (ti - tj);
            }
        }
        sum += f.evaluate(ti) / denom;
    }
    Ok(sum)
}

fn spline_knot_range<T: QScalar>(
    k: usize,
    n: usize,
    knots: &KnotVector<T>,
) -> QResult<&[T]> {
    let needed = k + n + 2;
    if knots.len() < needed {
        return Err(QError::InsufficientKnots {
            needed,
            got: knots.len(),
        });
    }
    Ok(&knots.as_slice()[k..k + n + 2])
}

/// Symmetric-sum weights `1/∏_{j≠i}(t_i - t_j)` over a knot window.
fn symmetric_weights<T: QScalar>(ts: &[T]) -> Vec<T> {
    let mut ws = Vec::with_capacity(ts.len());
    for (i, &ti) in ts.iter().enumerate() {
        let mut denom = T::one();
        for (j, &tj) in ts.iter().enumerate() {
            if j != i {
                denom = denom * (ti - tj);
            }
        }
        ws.push(denom.recip());
    }
    ws
}

/// q-B-spline `N_{k,n}(t;q)` by the symmetric sum of truncated q-powers in
/// the x-argument. Vanishes outside `(t_k, t_{k+n+1})`.
pub fn q_bspline<T: QScalar>(
    k: usize,
    n: usize,
    knots: &KnotVector<T>,
    t: T,
    q: QParam<T>,
) -> QResult<T> {
    let ts = spline_knot_range(k, n, knots)?;
    let span = ts[ts.len() - 1] - ts[0];
    let ws = symmetric_weights(ts);
    let mut sum = T::zero();
    for (&ti, &wi) in ts.iter().zip(&ws) {
        sum += wi * truncated_q_power(ti, t, n, q);
    }
    Ok(span * sum)
}

/// `∫ N_{k,n}(t;q) d_{1/q} t` over the spline's support, split additively at
/// the knots with each polynomial branch integrated in closed form.
pub fn q_bspline_integral<T: QScalar>(
    k: usize,
    n: usize,
    knots: &KnotVector<T>,
    q: QParam<T>,
) -> QResult<T> {
    q.require_gt_one()?;
    let base = q.reciprocal();
    let ts = spline_knot_range(k, n, knots)?;
    let span = ts[ts.len() - 1] - ts[0];
    let ws = symmetric_weights(ts);
    let mut total = T::zero();
    for r in 0..ts.len() - 1 {
        // branch polynomial on (t_r, t_{r+1}]: knots above the piece keep
        // their full Pochhammer product
        let mut branch = PolynomialSpec::zero();
        for (i, (&ti, &wi)) in ts.iter().zip(&ws).enumerate() {
            if i > r {
                branch.add_scaled(&PolynomialSpec::from_scaled_linear_factors(ti, n, q), wi);
            }
        }
        let anti = branch.q_antiderivative(base);
        total += anti.eval(ts[r + 1]) - anti.eval(ts[r]);
    }
    Ok(span * total)
}

/// Both sides of the divided-difference integral identity over n+2 distinct
/// knots: `lhs = f[t_0,…,t_{n+1}]` from the recursive table, `rhs` the
/// kernel-form integral of `N_{0,n}/(t_{n+1}-t_0)` against the composed
/// (n+1)-st 1/q-derivative.
pub fn divdiff_integral_identity<T: QScalar>(
    f: &FunctionSpec<T>,
    knots: &KnotVector<T>,
    q: QParam<T>,
    cfg: &IntegralConfig<T>,
) -> QResult<(T, T)> {
    q.require_gt_one()?;
    if knots.len() < 2 {
        return Err(QError::InsufficientKnots {
            needed: 2,
            got: knots.len(),
        });
    }
    let n = knots.len() - 2;
    let lhs = divided_difference(f, knots)?;
    let ts = knots.as_slice();
    let ws = symmetric_weights(ts);
    let points = ts
        .iter()
        .zip(&ws)
        .map(|(&t, &w)| PointTerm { coeff: w, at: t })
        .collect();
    let functional =
        LinearFunctional::new(points, vec![], (ts[0], ts[ts.len() - 1]), q)?;
    let kernel = PeanoKernel::new(functional, n)?;
    let rhs = kernel.reconstruct(f, cfg)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcrep::example2_spline;
    use crate::peano::kernel_prefactor;
    use crate::qarith::{q_int, QParam};

    fn qp(q: f64) -> QParam<f64> {
        QParam::new(q).unwrap()
    }

    fn cfg() -> IntegralConfig<f64> {
        IntegralConfig::default()
    }

    fn poly(c: &[f64]) -> FunctionSpec<f64> {
        FunctionSpec::polynomial(c.to_vec())
    }

    fn knots(v: &[f64]) -> KnotVector<f64> {
        KnotVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn divided_difference_examples() {
        // leading coefficient of the interpolant
        let cube = poly(&[0.0, 0.0, 0.0, 1.0]);
        let k3 = knots(&[-0.7, 0.1, 0.9, 1.4]);
        assert!((divided_difference(&cube, &k3).unwrap() - 1.0).abs() < 1e-12);
        // degree too low
        let sq = poly(&[3.0, -1.0, 1.0]);
        assert!(divided_difference(&sq, &k3).unwrap().abs() < 1e-12);
        // hand table for x² over {0, 1, 3}
        let t = DividedDifferenceTable::from_function(&poly(&[0.0, 0.0, 1.0]), knots(&[0.0, 1.0, 3.0]))
            .unwrap();
        assert_eq!(t.level(1), &[1.0, 4.0]);
        assert_eq!(t.top(), 1.0);
    }

    #[test]
    fn recursive_table_matches_symmetric_sum() {
        let f = poly(&[0.3, -1.1, 0.0, 0.7, 0.2]);
        for ks in [
            vec![-1.0, -0.2, 0.5, 1.3],
            vec![0.1, 0.4, 0.9, 1.6, 2.2],
            vec![-2.0, 1.0],
        ] {
            let kv = knots(&ks);
            let rec = divided_difference(&f, &kv).unwrap();
            let sym = divided_difference_symmetric(&f, &kv).unwrap();
            assert!(
                (rec - sym).abs() <= 1e-9 * (1.0 + sym.abs()),
                "{ks:?}: {rec} vs {sym}"
            );
        }
    }

    #[test]
    fn bspline_matches_quantum_spline() {
        let kv = knots(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        for q in [1.0, 1.5, 2.0] {
            let spline = example2_spline(qp(q));
            for i in 0..=64 {
                let t = 4.0 * i as f64 / 64.0;
                let n = q_bspline(0, 3, &kv, t, qp(q)).unwrap();
                let s = spline.evaluate(t);
                assert!(
                    (n - s).abs() <= 1e-10 * (1.0 + s.abs()),
                    "q={q} t={t}: {n} vs {s}"
                );
            }
        }
        // the displayed value at t = 1 is q³/6
        let v = q_bspline(0, 3, &kv, 1.0, qp(2.0)).unwrap();
        assert!((v - 8.0 / 6.0).abs() < 1e-13);
        // classical cubic B-spline peak at q = 1
        let v = q_bspline(0, 3, &kv, 2.0, qp(1.0)).unwrap();
        assert!((v - 4.0 / 6.0).abs() < 1e-13);
    }

    #[test]
    fn bspline_vanishes_outside_support() {
        let kv = knots(&[0.0, 0.7, 1.1, 2.0, 3.5]);
        for q in [1.0, 2.0] {
            for t in [-0.5, 0.0, 3.5, 4.2] {
                let v = q_bspline(0, 3, &kv, t, qp(q)).unwrap();
                assert!(v.abs() < 1e-10, "q={q} t={t}: {v}");
            }
        }
        assert!(q_bspline(1, 3, &kv, 1.0, qp(2.0)).is_err());
    }

    #[test]
    fn bspline_integral_law() {
        // ∫ N_{0,n} d_{1/q} t = (t_{n+1} - t_0)/[n+1]_q
        let kv = knots(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        let v = q_bspline_integral(0, 3, &kv, qp(2.0)).unwrap();
        assert!((v - 4.0 / 15.0).abs() < 1e-12, "{v}");
        for (ks, n, q) in [
            (vec![0.2, 0.9, 1.7, 2.0], 2usize, 1.5),
            (vec![0.5, 1.0, 1.8], 1, 3.0),
            (vec![0.1, 0.6, 1.2, 2.3, 2.9, 3.3], 4, 2.0),
        ] {
            let kv = knots(&ks);
            let span = ks[ks.len() - 1] - ks[0];
            let v = q_bspline_integral(0, n, &kv, qp(q)).unwrap();
            let expect = span / q_int(n + 1, qp(q));
            assert!(
                (v - expect).abs() <= 1e-10 * (1.0 + expect.abs()),
                "{ks:?} n={n} q={q}: {v} vs {expect}"
            );
        }
    }

    #[test]
    fn identity_examples() {
        let c = cfg();
        // f = x^{n+1}: lhs = 1
        let kv = knots(&[0.1, 0.5, 1.1, 1.9]);
        let f = poly(&[0.0, 0.0, 0.0, 1.0]);
        let (lhs, rhs) = divdiff_integral_identity(&f, &kv, qp(2.0), &c).unwrap();
        assert!((lhs - 1.0).abs() < 1e-12);
        assert!((rhs - 1.0).abs() < 1e-9, "{rhs}");
        // annihilated class
        let low = poly(&[1.0, -2.0, 0.5]);
        let (l0, r0) = divdiff_integral_identity(&low, &kv, qp(2.0), &c).unwrap();
        assert!(l0.abs() < 1e-12 && r0.abs() < 1e-10);
    }

    #[test]
    fn identity_random_polynomials() {
        let c = cfg();
        for (ks, coeffs, q) in [
            (vec![0.2, 0.7, 1.3], vec![0.4, -1.0, 2.0, 0.3], 1.5),
            (vec![0.5, 1.0, 2.0, 3.0], vec![1.0, 0.0, -0.7, 0.2, 0.1], 2.0),
            (vec![0.1, 0.4, 0.9, 1.4, 2.1], vec![0.3, 1.2, -0.2, 0.5, 0.0, 0.25], 3.0),
        ] {
            let kv = knots(&ks);
            let f = poly(&coeffs);
            let (lhs, rhs) = divdiff_integral_identity(&f, &kv, qp(q), &c).unwrap();
            assert!(
                (lhs - rhs).abs() <= 1e-8 * (1.0 + lhs.abs()),
                "{ks:?} q={q}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn kernel_is_normalized_bspline() {
        // the symmetric-sum functional's kernel equals
        // q^{n(n+1)/2}/[n]_q! · N_{0,n}(t)/(t_{n+1} - t_0) pointwise
        let kv = knots(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        let q = qp(2.0);
        let n = 3usize;
        let ts = kv.as_slice();
        let ws = symmetric_weights(ts);
        let points = ts
            .iter()
            .zip(&ws)
            .map(|(&t, &w)| PointTerm { coeff: w, at: t })
            .collect();
        let functional = LinearFunctional::new(points, vec![], (0.0, 4.0), q).unwrap();
        let kernel = PeanoKernel::new(functional, n).unwrap();
        for i in 0..=40 {
            let t = 4.0 * i as f64 / 40.0;
            let lhs = kernel.kernel_value(t);
            let rhs =
                kernel_prefactor(n, q) * q_bspline(0, n, &kv, t, q).unwrap() / 4.0;
            assert!(
                (lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()),
                "t={t}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn duplicate_knots_rejected() {
        assert!(KnotVector::new(vec![0.0, 1.0, 1.0]).is_err());
    }
}
