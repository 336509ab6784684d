//! Function representations consumed by the rest of the crate: exact
//! polynomials, piecewise polynomials (quantum splines), and registered
//! black-box evaluators.
//!
//! The JSON wire format (used by the CLI) is
//!
//! ```json
//! {"type":"polynomial","coeffs":[0.0,0.0,1.0]}
//! {"type":"piecewise","breakpoints":[0.0,1.0],"pieces":[[1.0]],"outside":0.0}
//! {"type":"builtin","name":"exp","params":{"scale":1.0}}
//! ```

use crate::error::{QError, QResult};
use crate::qarith::{q_int, QParam};
use crate::scalar::{real, QScalar};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Dense polynomial in the monomial basis; `coeffs[k]` multiplies `x^k`.
/// The empty list is the zero polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialSpec<T> {
    coeffs: Vec<T>,
}

impl<T: QScalar> PolynomialSpec<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        PolynomialSpec { coeffs }
    }

    pub fn zero() -> Self {
        PolynomialSpec { coeffs: Vec::new() }
    }

    /// The monomial x^k.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = T::one();
        PolynomialSpec { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Index of the last structurally present coefficient.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: T) -> T {
        let mut acc = T::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficient rule `D_q x^k = [k]_q x^{k-1}`, exact for any q > 0.
    pub fn q_derivative(&self, q: QParam<T>) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = (1..self.coeffs.len())
            .map(|k| self.coeffs[k] * q_int(k, q))
            .collect();
        PolynomialSpec { coeffs }
    }

    /// Classical derivative (used for the q = 1 comparisons).
    pub fn classical_derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = (1..self.coeffs.len())
            .map(|k| self.coeffs[k] * crate::scalar::usize_to_scalar::<T>(k))
            .collect();
        PolynomialSpec { coeffs }
    }

    /// q-antiderivative with respect to the given base: `x^k` maps to
    /// `x^{k+1}/[k+1]_base`, so that the Jackson integral over `[u, v]`
    /// equals `F(v) - F(u)` exactly.
    pub(crate) fn q_antiderivative(&self, base: QParam<T>) -> Self {
        let mut coeffs = vec![T::zero(); self.coeffs.len() + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k + 1] = c / q_int(k + 1, base);
        }
        PolynomialSpec { coeffs }
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolynomialSpec { coeffs }
    }

    pub(crate) fn add_scaled(&mut self, other: &Self, s: T) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), T::zero());
        }
        for (k, &c) in other.coeffs.iter().enumerate() {
            self.coeffs[k] += s * c;
        }
    }

    /// Expand `∏_{j=0}^{n-1} (c - q^j x)` as a polynomial in x.
    pub(crate) fn from_scaled_linear_factors(c: T, n: usize, q: QParam<T>) -> Self {
        let qv = q.value();
        let mut poly = PolynomialSpec::new(vec![T::one()]);
        let mut scale = T::one();
        for _ in 0..n {
            poly = poly.mul(&PolynomialSpec::new(vec![c, -scale]));
            scale *= qv;
        }
        poly
    }

    /// Expand the monic product `∏ (x - r)` over the given roots.
    pub(crate) fn from_monic_roots(roots: impl Iterator<Item = T>) -> Self {
        let mut poly = PolynomialSpec::new(vec![T::one()]);
        for r in roots {
            poly = poly.mul(&PolynomialSpec::new(vec![-r, T::one()]));
        }
        poly
    }
}

/// Piecewise polynomial over half-open intervals `[b_i, b_{i+1})`; outside
/// the breakpoint span the value is `outside_value`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePolynomialSpec<T> {
    breakpoints: Vec<T>,
    pieces: Vec<PolynomialSpec<T>>,
    outside_value: T,
}

impl<T: QScalar> PiecewisePolynomialSpec<T> {
    pub fn new(
        breakpoints: Vec<T>,
        pieces: Vec<PolynomialSpec<T>>,
        outside_value: T,
    ) -> QResult<Self> {
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) || breakpoints.iter().any(|b| !b.is_finite())
        {
            return Err(QError::UnsortedKnots);
        }
        let intervals = breakpoints.len().saturating_sub(1);
        if pieces.len() != intervals || breakpoints.len() < 2 {
            return Err(QError::PieceCountMismatch {
                pieces: pieces.len(),
                intervals,
            });
        }
        Ok(PiecewisePolynomialSpec {
            breakpoints,
            pieces,
            outside_value,
        })
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[PolynomialSpec<T>] {
        &self.pieces
    }

    pub fn outside_value(&self) -> T {
        self.outside_value
    }

    pub fn eval(&self, x: T) -> T {
        if x < self.breakpoints[0] || x >= *self.breakpoints.last().unwrap() {
            return self.outside_value;
        }
        let idx = self.breakpoints.partition_point(|&b| b <= x) - 1;
        self.pieces[idx].eval(x)
    }

    /// Evaluate one piece's polynomial regardless of x, e.g. to compare the
    /// two sides of a knot.
    pub fn eval_piece(&self, idx: usize, x: T) -> T {
        self.pieces[idx].eval(x)
    }

    /// Apply the coefficient rule to each piece. For a quantum spline this is
    /// the object whose continuity across knots expresses q-smoothness.
    pub fn piecewise_q_derivative(&self, base: QParam<T>) -> Self {
        PiecewisePolynomialSpec {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.q_derivative(base)).collect(),
            outside_value: T::zero(),
        }
    }
}

/// Names accepted by [`FunctionSpec::builtin`].
pub fn builtin_names() -> &'static [&'static str] {
    &["monomial", "exp"]
}

#[derive(Clone, Debug, PartialEq)]
enum BuiltinKind<T> {
    Monomial(i32),
    Exp(T),
}

/// A registered black-box evaluator, kept by name + parameters so it can
/// round-trip through JSON.
#[derive(Clone, Debug, PartialEq)]
pub struct BuiltinFunction<T> {
    name: String,
    params: BTreeMap<String, T>,
    kind: BuiltinKind<T>,
}

impl<T: QScalar> BuiltinFunction<T> {
    fn resolve(name: &str, params: &BTreeMap<String, T>) -> QResult<BuiltinKind<T>> {
        match name {
            "monomial" => {
                let d = params.get("degree").copied().ok_or(QError::InvalidParameter {
                    name: "degree".into(),
                    reason: "monomial requires a `degree` parameter",
                })?;
                let df = crate::scalar::to_f64(d);
                if df < 0.0 || df.fract() != 0.0 || df > 64.0 {
                    return Err(QError::InvalidParameter {
                        name: "degree".into(),
                        reason: "degree must be an integer in 0..=64",
                    });
                }
                Ok(BuiltinKind::Monomial(df as i32))
            }
            "exp" => {
                let s = params.get("scale").copied().unwrap_or_else(T::one);
                Ok(BuiltinKind::Exp(s))
            }
            other => Err(QError::UnknownBuiltin(other.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn eval(&self, x: T) -> T {
        match self.kind {
            BuiltinKind::Monomial(d) => x.powi(d),
            BuiltinKind::Exp(s) => (s * x).exp(),
        }
    }
}

/// Exact representation of a function: polynomial, piecewise polynomial, or
/// registered black-box evaluator. Immutable after construction; safe to
/// share across threads.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec<T> {
    Polynomial(PolynomialSpec<T>),
    Piecewise(PiecewisePolynomialSpec<T>),
    Builtin(BuiltinFunction<T>),
}

impl<T: QScalar> FunctionSpec<T> {
    pub fn polynomial(coeffs: Vec<T>) -> Self {
        FunctionSpec::Polynomial(PolynomialSpec::new(coeffs))
    }

    pub fn piecewise(
        breakpoints: Vec<T>,
        pieces: Vec<PolynomialSpec<T>>,
        outside_value: T,
    ) -> QResult<Self> {
        Ok(FunctionSpec::Piecewise(PiecewisePolynomialSpec::new(
            breakpoints,
            pieces,
            outside_value,
        )?))
    }

    pub fn builtin(name: &str, params: BTreeMap<String, T>) -> QResult<Self> {
        let kind = BuiltinFunction::resolve(name, &params)?;
        Ok(FunctionSpec::Builtin(BuiltinFunction {
            name: name.to_string(),
            params,
            kind,
        }))
    }

    /// Pointwise value. Piecewise variants use half-open `[b_i, b_{i+1})`.
    pub fn evaluate(&self, x: T) -> T {
        match self {
            FunctionSpec::Polynomial(p) => p.eval(x),
            FunctionSpec::Piecewise(p) => p.eval(x),
            FunctionSpec::Builtin(b) => b.eval(x),
        }
    }

    pub fn as_polynomial(&self) -> Option<&PolynomialSpec<T>> {
        match self {
            FunctionSpec::Polynomial(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_piecewise(&self) -> Option<&PiecewisePolynomialSpec<T>> {
        match self {
            FunctionSpec::Piecewise(p) => Some(p),
            _ => None,
        }
    }

    /// Breakpoints falling inside `[lo, hi]`; used by the discretized
    /// sup-norm and sign scans.
    pub(crate) fn breakpoints_within(&self, lo: T, hi: T) -> Vec<T> {
        match self {
            FunctionSpec::Piecewise(p) => p
                .breakpoints
                .iter()
                .copied()
                .filter(|&b| b >= lo && b <= hi)
                .collect(),
            _ => Vec::new(),
        }
    }
}

impl<T: QScalar> From<PolynomialSpec<T>> for FunctionSpec<T> {
    fn from(p: PolynomialSpec<T>) -> Self {
        FunctionSpec::Polynomial(p)
    }
}

/// The cubic quantum B-spline over breakpoints {0,1,2,3,4}:
///
/// ```text
/// q³x³/6                                   on [0,1)
/// (4 - 4[3]_q x + 4q[3]_q x² - 3q³x³)/6    on [1,2)
/// (-44 + 20[3]_q x - 8q[3]_q x² + 3q³x³)/6 on [2,3)
/// -(x-4)(qx-4)(q²x-4)/6                    on [3,4)
/// 0                                        otherwise
/// ```
///
/// Continuous for every q > 0; classically C¹ only at q = 1, but its
/// piecewise 1/q-derivatives match at every interior knot.
pub fn example2_spline<T: QScalar>(q: QParam<T>) -> FunctionSpec<T> {
    let qv = q.value();
    let six = real::<T>(6.0);
    let three = q_int(3, q); // [3]_q
    let q3 = qv * qv * qv;
    let c = |v: T| v / six;
    let pieces = vec![
        PolynomialSpec::new(vec![T::zero(), T::zero(), T::zero(), c(q3)]),
        PolynomialSpec::new(vec![
            c(real::<T>(4.0)),
            c(-real::<T>(4.0) * three),
            c(real::<T>(4.0) * qv * three),
            c(-real::<T>(3.0) * q3),
        ]),
        PolynomialSpec::new(vec![
            c(-real::<T>(44.0)),
            c(real::<T>(20.0) * three),
            c(-real::<T>(8.0) * qv * three),
            c(real::<T>(3.0) * q3),
        ]),
        // -(x-4)(qx-4)(q²x-4)/6 = (64 - 16[3]_q x + 4q[3]_q x² - q³x³)/6
        PolynomialSpec::new(vec![
            c(real::<T>(64.0)),
            c(-real::<T>(16.0) * three),
            c(real::<T>(4.0) * qv * three),
            c(-q3),
        ]),
    ];
    let breakpoints = vec![
        T::zero(),
        T::one(),
        real(2.0),
        real(3.0),
        real(4.0),
    ];
    FunctionSpec::Piecewise(
        PiecewisePolynomialSpec::new(breakpoints, pieces, T::zero())
            .expect("static breakpoints are sorted"),
    )
}

// --- serde wire format -----------------------------------------------------

fn num_zero<T: num_traits::Zero>() -> T {
    T::zero()
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
#[serde(bound(
    serialize = "T: Serialize",
    deserialize = "T: serde::de::Deserialize<'de> + num_traits::Zero"
))]
enum RawFunctionSpec<T> {
    Polynomial {
        coeffs: Vec<T>,
    },
    Piecewise {
        breakpoints: Vec<T>,
        pieces: Vec<Vec<T>>,
        #[serde(default = "num_zero")]
        outside: T,
    },
    Builtin {
        name: String,
        #[serde(default)]
        params: BTreeMap<String, T>,
    },
}

impl<T: QScalar> TryFrom<RawFunctionSpec<T>> for FunctionSpec<T> {
    type Error = QError;

    fn try_from(raw: RawFunctionSpec<T>) -> QResult<Self> {
        match raw {
            RawFunctionSpec::Polynomial { coeffs } => Ok(FunctionSpec::polynomial(coeffs)),
            RawFunctionSpec::Piecewise {
                breakpoints,
                pieces,
                outside,
            } => FunctionSpec::piecewise(
                breakpoints,
                pieces.into_iter().map(PolynomialSpec::new).collect(),
                outside,
            ),
            RawFunctionSpec::Builtin { name, params } => FunctionSpec::builtin(&name, params),
        }
    }
}

impl<T: QScalar + Serialize> Serialize for FunctionSpec<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = match self {
            FunctionSpec::Polynomial(p) => RawFunctionSpec::Polynomial {
                coeffs: p.coeffs.clone(),
            },
            FunctionSpec::Piecewise(p) => RawFunctionSpec::Piecewise {
                breakpoints: p.breakpoints.clone(),
                pieces: p.pieces.iter().map(|q| q.coeffs.clone()).collect(),
                outside: p.outside_value,
            },
            FunctionSpec::Builtin(b) => RawFunctionSpec::Builtin {
                name: b.name.clone(),
                params: b.params.clone(),
            },
        };
        raw.serialize(serializer)
    }
}

impl<'de, T: QScalar + Deserialize<'de>> Deserialize<'de> for FunctionSpec<T> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawFunctionSpec::<T>::deserialize(deserializer)?;
        FunctionSpec::try_from(raw).map_err(serde::de::Error::custom)
    }
}
