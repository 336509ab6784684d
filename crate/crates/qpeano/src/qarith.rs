//! Exact q-arithmetic primitives: q-integers, q-factorials, q-Pochhammer
//! powers, and truncated q-power functions.
//!
//! The q-integer is `[n]_q = 1 + q + … + q^{n-1}` (so `[n]_1 = n`), the
//! q-factorial is `[n]_q! = [1]_q⋯[n]_q`, and the q-Pochhammer power is
//!
//! ```text
//! (x - t)^{n,q} = (x - q^{n-1} t) ⋯ (x - q t)(x - t).
//! ```
//!
//! The truncated variant clamps only the final factor to `(x - t)_+`; the
//! other factors are never clamped, so the value can be negative for q > 1
//! when some `q^j t` exceeds `x > t`.

use crate::error::{QError, QResult};
use crate::scalar::{to_f64, QScalar};
use serde::{Deserialize, Serialize};

/// The base q of the calculus.
///
/// Any positive finite value is accepted at construction; operations that
/// need a particular range (Jackson series want q in (0,1), `d_{1/q}`
/// operations want q > 1, difference quotients want q ≠ 1) check it at the
/// call site and reject the wrong range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QParam<T> {
    q: T,
}

impl<T: QScalar> QParam<T> {
    pub fn new(q: T) -> QResult<Self> {
        if !q.is_finite() || q <= T::zero() {
            return Err(QError::BaseOutOfRange {
                required: "q > 0 and finite",
                got: to_f64(q),
            });
        }
        Ok(QParam { q })
    }

    pub fn value(self) -> T {
        self.q
    }

    /// Base 1/q, used wherever the calculus differentiates or integrates
    /// with respect to `d_{1/q}`.
    pub fn reciprocal(self) -> QParam<T> {
        QParam { q: self.q.recip() }
    }

    pub fn is_one(self) -> bool {
        self.q == T::one()
    }

    pub(crate) fn require_unit_interval(self) -> QResult<T> {
        if self.q > T::zero() && self.q < T::one() {
            Ok(self.q)
        } else {
            Err(QError::BaseOutOfRange {
                required: "q in (0,1)",
                got: to_f64(self.q),
            })
        }
    }

    pub(crate) fn require_gt_one(self) -> QResult<T> {
        if self.q > T::one() {
            Ok(self.q)
        } else {
            Err(QError::BaseOutOfRange {
                required: "q > 1",
                got: to_f64(self.q),
            })
        }
    }

    pub(crate) fn require_ne_one(self) -> QResult<T> {
        if self.q == T::one() {
            Err(QError::BaseOutOfRange {
                required: "q != 1",
                got: to_f64(self.q),
            })
        } else {
            Ok(self.q)
        }
    }
}

/// q-integer `[n]_q = 1 + q + … + q^{n-1}`.
///
/// Computed by direct summation rather than `(1-q^n)/(1-q)`, which keeps the
/// value continuous through q = 1 and avoids cancellation nearby.
pub fn q_int<T: QScalar>(n: usize, q: QParam<T>) -> T {
    let qv = q.value();
    let mut sum = T::zero();
    let mut pow = T::one();
    for _ in 0..n {
        sum += pow;
        pow *= qv;
    }
    sum
}

/// q-factorial `[n]_q! = [1]_q [2]_q ⋯ [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial<T: QScalar>(n: usize, q: QParam<T>) -> T {
    let mut prod = T::one();
    for k in 1..=n {
        prod = prod * q_int(k, q);
    }
    prod
}

/// q-Pochhammer power `(x - t)^{n,q} = ∏_{j=0}^{n-1} (x - q^j t)`.
pub fn q_pochhammer_power<T: QScalar>(x: T, t: T, n: usize, q: QParam<T>) -> T {
    let qv = q.value();
    let mut prod = T::one();
    let mut scaled = t;
    for _ in 0..n {
        prod = prod * (x - scaled);
        scaled *= qv;
    }
    prod
}

/// `q^{n(n+1)/2}`, the triangular power that normalizes kernels and
/// remainders.
pub(crate) fn q_triangular_power<T: QScalar>(n: usize, q: QParam<T>) -> T {
    let qv = q.value();
    let mut acc = T::one();
    for j in 1..=n {
        acc = acc * qv.powi(j as i32);
    }
    acc
}

/// Truncated q-power `(x - t)_+^{n,q}`.
///
/// Only the last factor carries the truncation: the value is 0 whenever
/// `t >= x` (for n >= 1) and the full Pochhammer product otherwise. For
/// n = 0 the convention is the step value: 1 for `x > t`, 0 for `x <= t`.
pub fn truncated_q_power<T: QScalar>(x: T, t: T, n: usize, q: QParam<T>) -> T {
    if x > t {
        q_pochhammer_power(x, t, n, q)
    } else {
        T::zero()
    }
}
