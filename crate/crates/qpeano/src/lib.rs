//! Quantum-calculus toolkit built around the q-Peano kernel.
//!
//! The crate implements the 1/q-flavored remainder calculus end to end:
//!
//! * [`qarith`] — q-integers, q-factorials, q-Pochhammer powers, truncated
//!   q-powers;
//! * [`funcrep`] — polynomial, piecewise-polynomial, and registered builtin
//!   function representations (with a JSON wire format);
//! * [`qcalc`] — q-derivatives, Jackson q-integrals, `L_{p,q}` norms, the
//!   q-Hölder inequality, and the q-mean-value search;
//! * [`qtaylor`] — q-Taylor expansions with both remainder forms;
//! * [`peano`] — polynomial-annihilating functionals, their kernels, and
//!   kernel reconstruction;
//! * [`interp`] — Lagrange interpolation, the Kowalewski remainder, and two
//!   hand-coded piecewise kernels kept as fixtures;
//! * [`quad`] — the q-trapezoidal rule, quadrature remainder bounds, and
//!   L²-optimal weights;
//! * [`qspline`] — divided differences, q-B-splines, and the
//!   divided-difference integral identity.
//!
//! Everything is generic over the scalar type through [`QScalar`]; the
//! `*64` aliases below fix `f64`, which is what the CLI and the test suite
//! use.
//!
//! ```
//! use qpeano::{jackson_integral_0b, FunctionSpec64, IntegralConfig64, QParam64};
//!
//! let f = FunctionSpec64::polynomial(vec![0.0, 1.0]); // x
//! let base = QParam64::new(0.5).unwrap();
//! let est = jackson_integral_0b(&f, 1.0, base, &IntegralConfig64::default()).unwrap();
//! assert!((est.value - 2.0 / 3.0).abs() < 1e-12);
//! ```

pub mod error;
pub mod funcrep;
pub mod interp;
pub mod peano;
pub mod qarith;
pub mod qcalc;
pub mod qspline;
pub mod qtaylor;
pub mod quad;
mod scalar;

pub use error::{QError, QResult};
pub use funcrep::{
    builtin_names, example2_spline, BuiltinFunction, FunctionSpec, PiecewisePolynomialSpec,
    PolynomialSpec,
};
pub use interp::{
    example1_kernel, example2_kernel, interp_error_direct, kowalewski_remainder, lagrange_basis,
    KnotVector,
};
pub use peano::{IntegralTerm, LinearFunctional, PeanoKernel, PointTerm};
pub use qarith::{q_factorial, q_int, q_pochhammer_power, truncated_q_power, QParam};
pub use qcalc::{
    holder_check, jackson_integral_0b, jackson_integral_ab, jackson_integral_fn, mean_value_xi,
    q_derivative, q_derivative_n, q_norm, IntegralConfig, IntegralEstimate,
};
pub use qspline::{
    divdiff_integral_identity, divided_difference, divided_difference_symmetric, q_bspline,
    q_bspline_integral, DividedDifferenceTable,
};
pub use qtaylor::{q_taylor_expand, q_taylor_remainder, q_taylor_remainder_truncated, QTaylorExpansion};
pub use quad::{
    kernel_l2_norm_sq, optimize_weights_l2, q_trapezoid, quad_kernel, remainder_bound,
    trapezoid_error, trapezoid_error_constant, QuadratureRule, TrapezoidErrorReport,
};
pub use scalar::QScalar;

/// `f64`-concrete aliases for the main types.
pub type QParam64 = QParam<f64>;
pub type FunctionSpec64 = FunctionSpec<f64>;
pub type PolynomialSpec64 = PolynomialSpec<f64>;
pub type PiecewisePolynomialSpec64 = PiecewisePolynomialSpec<f64>;
pub type IntegralConfig64 = IntegralConfig<f64>;
pub type IntegralEstimate64 = IntegralEstimate<f64>;
pub type LinearFunctional64 = LinearFunctional<f64>;
pub type PeanoKernel64 = PeanoKernel<f64>;
pub type KnotVector64 = KnotVector<f64>;
pub type QuadratureRule64 = QuadratureRule<f64>;
pub type QTaylorExpansion64 = QTaylorExpansion<f64>;
