//! q-Taylor expansion around a base point, with the remainder in both its
//! node-to-x form and its truncated-power form.
//!
//! For q > 1 and f sufficiently 1/q-differentiable,
//!
//! ```text
//! f(x) = Σ_{k=0}^{n} q^{k(k-1)/2} (D_{1/q}^k f)(q^k a) / [k]_q! · (x-a)^{k,q} + R_n(f),
//!
//! R_n(f) = q^{n(n+1)/2}/[n]_q! ∫ₐˣ (D_{1/q}^{n+1} f)(qⁿ t) (x-t)^{n,q} d_{1/q} t,
//! ```
//!
//! and `R_n` can also be written with the truncated power `(x-t)_+^{n,q}`
//! over a fixed interval `[a, b]`. The two integral forms coincide termwise
//! when `b = x` (the default) and n >= 1; for caller-supplied `b > x` the
//! truncated series samples different Jackson points and the forms genuinely
//! differ unless x lies on the sample orbit of b.

use crate::error::QResult;
use crate::funcrep::FunctionSpec;
use crate::qarith::{q_factorial, q_pochhammer_power, truncated_q_power, QParam};
use crate::qcalc::{jackson_ab_fn, DerivEval, IntegralConfig};
use crate::scalar::QScalar;

/// A computed q-Taylor expansion: base point, degree, base q, and the
/// coefficients `c_k = q^{k(k-1)/2} (D_{1/q}^k f)(q^k a) / [k]_q!`.
#[derive(Clone, Debug, PartialEq)]
pub struct QTaylorExpansion<T> {
    base_point: T,
    q: QParam<T>,
    coeffs: Vec<T>,
}

impl<T: QScalar> QTaylorExpansion<T> {
    pub fn base_point(&self) -> T {
        self.base_point
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn q(&self) -> QParam<T> {
        self.q
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    /// `Σ_k c_k (x-a)^{k,q}` with the Pochhammer powers in `(x-a)`.
    pub fn eval(&self, x: T) -> T {
        let mut sum = T::zero();
        for (k, &c) in self.coeffs.iter().enumerate() {
            sum += c * q_pochhammer_power(x, self.base_point, k, self.q);
        }
        sum
    }
}

/// Expand f to degree n around a. Requires q > 1; for black-box f the
/// 1/q-derivatives must be evaluable at the points `q^k a`, so `a = 0` is
/// refused rather than regularized.
pub fn q_taylor_expand<T: QScalar>(
    f: &FunctionSpec<T>,
    a: T,
    n: usize,
    q: QParam<T>,
) -> QResult<QTaylorExpansion<T>> {
    let qv = q.require_gt_one()?;
    let base = q.reciprocal();
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut qk = T::one(); // q^k
    let mut tri = T::one(); // q^{k(k-1)/2}
    for k in 0..=n {
        let deriv = DerivEval::new(f, k, base)?;
        let c = tri * deriv.eval(qk * a)? / q_factorial(k, q);
        coeffs.push(c);
        tri = tri * qk; // q^{k(k+1)/2} after multiplying by q^k
        qk = qk * qv;
    }
    Ok(QTaylorExpansion {
        base_point: a,
        q,
        coeffs,
    })
}

fn remainder_prefactor<T: QScalar>(n: usize, q: QParam<T>) -> T {
    crate::qarith::q_triangular_power(n, q) / q_factorial(n, q)
}

/// Degree-n remainder `R_n(f)` at x, in the node-to-x form
/// `q^{n(n+1)/2}/[n]_q! ∫ₐˣ (D_{1/q}^{n+1} f)(qⁿ t) (x-t)^{n,q} d_{1/q} t`.
pub fn q_taylor_remainder<T: QScalar>(
    f: &FunctionSpec<T>,
    a: T,
    x: T,
    n: usize,
    q: QParam<T>,
    cfg: &IntegralConfig<T>,
) -> QResult<T> {
    let qv = q.require_gt_one()?;
    let base = q.reciprocal();
    let deriv = DerivEval::new(f, n + 1, base)?;
    let qn = qv.powi(n as i32);
    let mut err = None;
    let est = jackson_ab_fn(
        |t| match deriv.eval(qn * t) {
            Ok(v) => v * q_pochhammer_power(x, t, n, q),
            Err(e) => {
                err = Some(e);
                T::zero()
            }
        },
        a,
        x,
        base,
        cfg,
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(remainder_prefactor(n, q) * est.value)
}

/// The truncated-power form of the remainder,
/// `q^{n(n+1)/2}/[n]_q! ∫ₐᵇ (D_{1/q}^{n+1} f)(qⁿ t) (x-t)_+^{n,q} d_{1/q} t`,
/// summed literally over the Jackson points of `[a, b]`.
pub fn q_taylor_remainder_truncated<T: QScalar>(
    f: &FunctionSpec<T>,
    a: T,
    x: T,
    b: T,
    n: usize,
    q: QParam<T>,
    cfg: &IntegralConfig<T>,
) -> QResult<T> {
    let qv = q.require_gt_one()?;
    let base = q.reciprocal();
    let deriv = DerivEval::new(f, n + 1, base)?;
    let qn = qv.powi(n as i32);
    let mut err = None;
    let est = jackson_ab_fn(
        |t| match deriv.eval(qn * t) {
            Ok(v) => v * truncated_q_power(x, t, n, q),
            Err(e) => {
                err = Some(e);
                T::zero()
            }
        },
        a,
        b,
        base,
        cfg,
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(remainder_prefactor(n, q) * est.value)
}
