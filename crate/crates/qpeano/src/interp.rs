//! Lagrange interpolation, its q-remainder in Kowalewski form, and the
//! hand-coded piecewise kernels for the two worked interpolation setups
//! (three nodes on `[-1,1]` with m = 2, and nodes `{0,2,4}` with m = 1)
//! kept verbatim as independent fixtures against the generic kernel
//! machinery.

use crate::error::{QError, QResult};
use crate::funcrep::FunctionSpec;
use crate::qarith::{q_factorial, q_pochhammer_power, q_triangular_power, QParam};
use crate::qcalc::{jackson_ab_fn, DerivEval, IntegralConfig};
use crate::scalar::QScalar;

/// Strictly increasing sequence of real knots.
#[derive(Clone, Debug, PartialEq)]
pub struct KnotVector<T> {
    nodes: Vec<T>,
}

impl<T: QScalar> KnotVector<T> {
    pub fn new(nodes: Vec<T>) -> QResult<Self> {
        if nodes.is_empty() {
            return Err(QError::InsufficientKnots { needed: 1, got: 0 });
        }
        if nodes.iter().any(|x| !x.is_finite()) || nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(QError::UnsortedKnots);
        }
        Ok(KnotVector { nodes })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.nodes
    }
}

/// Lagrange basis polynomial `l_{nk}(x) = ∏_{v≠k} (x - t_v)/(t_k - t_v)`.
pub fn lagrange_basis<T: QScalar>(nodes: &KnotVector<T>, k: usize, x: T) -> T {
    let ts = nodes.as_slice();
    let mut prod = T::one();
    for (v, &tv) in ts.iter().enumerate() {
        if v != k {
            prod = prod * (x - tv) / (ts[k] - tv);
        }
    }
    prod
}

/// Interpolation error `f(x) - Σ_k f(t_k) l_{nk}(x)`, the oracle every
/// remainder formula is checked against.
pub fn interp_error_direct<T: QScalar>(f: &FunctionSpec<T>, nodes: &KnotVector<T>, x: T) -> T {
    let mut interpolant = T::zero();
    for (k, &tk) in nodes.as_slice().iter().enumerate() {
        interpolant += f.evaluate(tk) * lagrange_basis(nodes, k, x);
    }
    f.evaluate(x) - interpolant
}

/// Kowalewski form of the interpolation remainder:
///
/// ```text
/// L(f) = q^{m(m+1)/2}/[m]_q! Σ_k l_{nk}(x) ∫_{t_k}^{x} (t_k - t)^{m,q}
///        (D_{1/q}^{m+1} f)(q^m t) d_{1/q} t,
/// ```
///
/// valid for each m = 0..n. The integrals are signed, so nodes on either
/// side of x need no special casing.
pub fn kowalewski_remainder<T: QScalar>(
    f: &FunctionSpec<T>,
    nodes: &KnotVector<T>,
    x: T,
    m: usize,
    q: QParam<T>,
    cfg: &IntegralConfig<T>,
) -> QResult<T> {
    let qv = q.require_gt_one()?;
    if m + 1 > nodes.len() {
        return Err(QError::InsufficientKnots {
            needed: m + 1,
            got: nodes.len(),
        });
    }
    let base = q.reciprocal();
    let deriv = DerivEval::new(f, m + 1, base)?;
    let qm = qv.powi(m as i32);
    let mut sum = T::zero();
    for (k, &tk) in nodes.as_slice().iter().enumerate() {
        let mut failure = None;
        let est = jackson_ab_fn(
            |t| match deriv.eval(qm * t) {
                Ok(v) => q_pochhammer_power(tk, t, m, q) * v,
                Err(e) => {
                    failure = Some(e);
                    T::zero()
                }
            },
            tk,
            x,
            base,
            cfg,
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        sum += lagrange_basis(nodes, k, x) * est.value;
    }
    Ok(q_triangular_power(m, q) / q_factorial(m, q) * sum)
}

/// Hand-coded kernel for quadratic interpolation at nodes `{-1, 0, 1}` with
/// m = 2, exactly as displayed (the Theorem normalization
/// `q^{m(m+1)/2}/[m]_q!` is factored out). Zero outside `[-1, 1]`.
///
/// The middle branch of the `x >= 0` case drops the `(1-t)^{2,q}` term:
/// only the first two basis terms survive truncation there, as the
/// case-splitting of the node-to-x integrals shows.
pub fn example1_kernel<T: QScalar>(x: T, t: T, q: QParam<T>) -> T {
    let one = T::one();
    if t < -one || t > one {
        return T::zero();
    }
    let half = one / (one + one);
    let l20 = half * x * (x - one);
    let l21 = one - x * x;
    let l22 = half * x * (x + one);
    let poch = |c: T| q_pochhammer_power(c, t, 2, q);
    if x <= T::zero() {
        if t <= x {
            l20 * poch(-one)
        } else if t <= T::zero() {
            -l21 * poch(T::zero()) - l22 * poch(one)
        } else {
            -l22 * poch(one)
        }
    } else if t <= T::zero() {
        l20 * poch(-one)
    } else if t <= x {
        l20 * poch(-one) + l21 * poch(T::zero())
    } else {
        -l22 * poch(one)
    }
}

/// Hand-coded kernel for linear-data interpolation at nodes `{0, 2, 4}`
/// with m = 1, as displayed (normalization factored out); zero outside
/// `[0, 4]`.
///
/// The `x < 2` middle branch is `-l21(x)(2-t) - l22(x)(4-t)` and the
/// `x >= 2` last branch is `-l22(x)(4-t)`: both signs follow from which
/// truncated powers survive on each t-range, and match the generic kernel.
pub fn example2_kernel<T: QScalar>(x: T, t: T, _q: QParam<T>) -> T {
    let two = T::one() + T::one();
    let four = two + two;
    let eight = four + four;
    if t < T::zero() || t >= four {
        return T::zero();
    }
    let l20 = (x - two) * (x - four) / eight;
    let l21 = -x * (x - four) / four;
    let l22 = x * (x - two) / eight;
    if x < two {
        if t < x {
            -l20 * t
        } else if t < two {
            -l21 * (two - t) - l22 * (four - t)
        } else {
            -l22 * (four - t)
        }
    } else if t < two {
        -l20 * t
    } else if t < x {
        -l20 * t + l21 * (two - t)
    } else {
        -l22 * (four - t)
    }
}
