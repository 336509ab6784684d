//! The q-Peano kernel theorem as executable machinery: represent a
//! polynomial-annihilating linear functional by its kernel, evaluate the
//! kernel, reconstruct `L(f)` by 1/q-integration, and apply the one-signed
//! mean-value corollary.
//!
//! A functional here is a finite combination of point evaluations and
//! definite 1/q-integrals,
//!
//! ```text
//! L(f) = Σ c_i f(x_i) + Σ w_j ∫_{a_j}^{b_j} f d_{1/q},
//! ```
//!
//! a class that commutes with q-integration by termwise summation. When L
//! annihilates polynomials of degree n, it is represented by
//!
//! ```text
//! L(f) = ∫ₐᵇ (D_{1/q}^{n+1} f)(qⁿ t) K(t) d_{1/q} t,
//! K(t) = q^{n(n+1)/2}/[n]_q! · L((x - t)_+^{n,q}),
//! ```
//!
//! with L applied in the x-argument.
//!
//! # Integration convention
//!
//! A Jackson integral is a sum over the sample orbit of its endpoints, so a
//! truncated-power integrand must be integrated interval-additively: the
//! inner integrals split at `x = t` (e.g. `∫ₐᵇ (x-t)_+ d_{1/q}x =
//! ∫ₜᵇ (x-t) d_{1/q}x` for t in `[a,b]`), and the reconstruction integral
//! splits at the kernel's breakpoints, integrating each polynomial branch.
//! Summing the raw truncated series instead satisfies the representation
//! only when every evaluation point of L lies on the sample orbit of the
//! domain endpoints. Kernel branches are evaluated in closed form through
//! the monomial rule `∫₀ᶜ x^k d_p x = c^{k+1}/[k+1]_p`, which stays exact
//! arbitrarily close to q = 1.

use crate::error::{QError, QResult};
use crate::funcrep::{FunctionSpec, PolynomialSpec};
use crate::qarith::{q_factorial, q_int, q_pochhammer_power, q_triangular_power, truncated_q_power, QParam};
use crate::qcalc::{jackson_ab_fn, mean_value_search, DerivEval, IntegralConfig};
use crate::scalar::{real, to_f64, usize_to_scalar, QScalar};
use serde::{Deserialize, Serialize};

/// One point-evaluation term `coeff · f(at)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointTerm<T> {
    pub coeff: T,
    pub at: T,
}

/// One integral term `weight · ∫_{from}^{to} f d_{1/q}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralTerm<T> {
    pub weight: T,
    pub from: T,
    pub to: T,
}

/// A finite combination of point evaluations and definite 1/q-integrals on
/// a domain `[a, b]`, with q > 1.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFunctional<T> {
    point_terms: Vec<PointTerm<T>>,
    integral_terms: Vec<IntegralTerm<T>>,
    domain: (T, T),
    q: QParam<T>,
}

impl<T: QScalar> LinearFunctional<T> {
    /// Build a functional. All evaluation points and integral endpoints must
    /// lie inside the domain; reversed integral intervals are normalized by
    /// flipping the weight sign.
    pub fn new(
        point_terms: Vec<PointTerm<T>>,
        integral_terms: Vec<IntegralTerm<T>>,
        domain: (T, T),
        q: QParam<T>,
    ) -> QResult<Self> {
        q.require_gt_one()?;
        let (a, b) = domain;
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(QError::UnsortedKnots);
        }
        for pt in &point_terms {
            if pt.at < a || pt.at > b {
                return Err(QError::OutsideDomain {
                    value: to_f64(pt.at),
                });
            }
        }
        let mut normalized = Vec::with_capacity(integral_terms.len());
        for it in integral_terms {
            let term = if it.from <= it.to {
                it
            } else {
                IntegralTerm {
                    weight: -it.weight,
                    from: it.to,
                    to: it.from,
                }
            };
            if term.from < a || term.to > b {
                return Err(QError::OutsideDomain {
                    value: to_f64(term.from),
                });
            }
            if term.from < term.to {
                normalized.push(term);
            }
        }
        Ok(LinearFunctional {
            point_terms,
            integral_terms: normalized,
            domain,
            q,
        })
    }

    pub fn point_terms(&self) -> &[PointTerm<T>] {
        &self.point_terms
    }

    pub fn integral_terms(&self) -> &[IntegralTerm<T>] {
        &self.integral_terms
    }

    pub fn domain(&self) -> (T, T) {
        self.domain
    }

    pub fn q(&self) -> QParam<T> {
        self.q
    }

    /// `L(f) = Σ c_i f(x_i) + Σ w_j ∫ f d_{1/q}` by Jackson summation.
    pub fn apply(&self, f: &FunctionSpec<T>, cfg: &IntegralConfig<T>) -> QResult<T> {
        let base = self.q.reciprocal();
        let mut sum = T::zero();
        for pt in &self.point_terms {
            sum += pt.coeff * f.evaluate(pt.at);
        }
        for it in &self.integral_terms {
            sum += it.weight * jackson_ab_fn(|x| f.evaluate(x), it.from, it.to, base, cfg)?.value;
        }
        Ok(sum)
    }

    /// `L(x^k)` in closed form via the monomial rule; exact for every q > 1,
    /// including arbitrarily close to 1 where Jackson summation would need
    /// ~1/(q-1) terms.
    pub fn monomial_moment(&self, k: usize) -> T {
        let base = self.q.reciprocal();
        let mut sum = T::zero();
        for pt in &self.point_terms {
            sum += pt.coeff * pt.at.powi(k as i32);
        }
        let denom = q_int(k + 1, base);
        for it in &self.integral_terms {
            let anti = |u: T| u.powi(k as i32 + 1) / denom;
            sum += it.weight * (anti(it.to) - anti(it.from));
        }
        sum
    }

    /// Largest n <= `max_n` with `|L(x^k)| <= tol·scale_k` for all k <= n,
    /// or -1 when already `L(1)` fails. The scale grows with the functional's
    /// mass and the k-th power of the domain radius.
    pub fn annihilation_degree(&self, max_n: usize, tol: T) -> i64 {
        let radius = self.domain_radius();
        let mass = self.mass();
        let mut degree: i64 = -1;
        for k in 0..=max_n {
            let scale = (T::one() + mass) * radius.powi(k as i32);
            if self.monomial_moment(k).abs() > tol * scale {
                break;
            }
            degree = k as i64;
        }
        degree
    }

    fn mass(&self) -> T {
        let mut m = T::zero();
        for pt in &self.point_terms {
            m += pt.coeff.abs();
        }
        for it in &self.integral_terms {
            m += it.weight.abs() * (it.to - it.from).abs();
        }
        m
    }

    fn domain_radius(&self) -> T {
        let (a, b) = self.domain;
        a.abs().max(b.abs()).max(T::one())
    }

    /// Sorted breakpoints of the induced kernel: domain endpoints, point
    /// locations, and integral endpoints.
    fn kernel_breakpoints(&self) -> Vec<T> {
        let (a, b) = self.domain;
        let mut beta = vec![a, b];
        beta.extend(self.point_terms.iter().map(|pt| pt.at));
        for it in &self.integral_terms {
            beta.push(it.from);
            beta.push(it.to);
        }
        beta.sort_by(|x, y| x.partial_cmp(y).unwrap());
        beta.dedup_by(|x, y| x == y);
        beta
    }
}

/// `∫_{lo}^{hi} (x - t)^{n,q} d_p x` in closed form: expand the Pochhammer
/// product in x and integrate monomials exactly.
fn poch_integral_closed<T: QScalar>(
    t: T,
    n: usize,
    q: QParam<T>,
    base: QParam<T>,
    lo: T,
    hi: T,
) -> T {
    let qv = q.value();
    let poly = PolynomialSpec::from_monic_roots((0..n).map(|j| qv.powi(j as i32) * t));
    let anti = poly.q_antiderivative(base);
    anti.eval(hi) - anti.eval(lo)
}

pub(crate) fn kernel_prefactor<T: QScalar>(n: usize, q: QParam<T>) -> T {
    q_triangular_power(n, q) / q_factorial(n, q)
}

/// The map `t ↦ K(x,t)` induced by a 𝒫ₙ-annihilating functional.
#[derive(Clone, Debug)]
pub struct PeanoKernel<T> {
    functional: LinearFunctional<T>,
    degree: usize,
}

impl<T: QScalar> PeanoKernel<T> {
    /// Verify at construction that the functional annihilates 𝒫ₙ: each
    /// moment `|L(x^k)|`, k <= n, must stay below
    /// `1e-9 (1 + Σ|c_i| + Σ|w_j||b_j - a_j|)` scaled by the domain radius
    /// to the k-th power.
    pub fn new(functional: LinearFunctional<T>, degree: usize) -> QResult<Self> {
        let tol = real::<T>(1e-9) * (T::one() + functional.mass());
        let radius = functional.domain_radius();
        for k in 0..=degree {
            let m = functional.monomial_moment(k);
            if m.abs() > tol * radius.powi(k as i32) {
                return Err(QError::NotAnnihilating {
                    degree: k,
                    moment: to_f64(m),
                });
            }
        }
        Ok(PeanoKernel { functional, degree })
    }

    pub fn functional(&self) -> &LinearFunctional<T> {
        &self.functional
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `K(t) = q^{n(n+1)/2}/[n]_q! · L((x-t)_+^{n,q})`.
    ///
    /// Point terms evaluate the truncated power directly; integral terms
    /// resolve the truncation additively (`∫_{a_j}^{b_j} → ∫_t^{b_j}` once
    /// t enters the interval) and integrate the full product in closed form.
    pub fn kernel_value(&self, t: T) -> T {
        let q = self.functional.q;
        let base = q.reciprocal();
        let n = self.degree;
        let mut sum = T::zero();
        for pt in &self.functional.point_terms {
            sum += pt.coeff * truncated_q_power(pt.at, t, n, q);
        }
        for it in &self.functional.integral_terms {
            if t >= it.to {
                continue;
            }
            let lo = if t > it.from { t } else { it.from };
            sum += it.weight * poch_integral_closed(t, n, q, base, lo, it.to);
        }
        kernel_prefactor(n, q) * sum
    }

    /// Kernel branch valid on the piece `(lo, hi]` of the breakpoint
    /// partition, as a globally evaluable formula (the additive pieces
    /// sample it outside the piece).
    fn branch_value(&self, lo: T, hi: T, t: T) -> T {
        let q = self.functional.q;
        let base = q.reciprocal();
        let n = self.degree;
        let mut sum = T::zero();
        for pt in &self.functional.point_terms {
            if pt.at >= hi {
                sum += pt.coeff * q_pochhammer_power(pt.at, t, n, q);
            }
        }
        for it in &self.functional.integral_terms {
            if it.to <= lo {
                continue;
            }
            let from = if hi <= it.from { it.from } else { t };
            sum += it.weight * poch_integral_closed(t, n, q, base, from, it.to);
        }
        kernel_prefactor(n, q) * sum
    }

    /// `∫ₐᵇ (D_{1/q}^{n+1} f)(qⁿ t) K(t) d_{1/q} t`, evaluated additively
    /// over the kernel's breakpoint pieces; equals `apply(L, f)` for
    /// 1/q-smooth f.
    pub fn reconstruct(&self, f: &FunctionSpec<T>, cfg: &IntegralConfig<T>) -> QResult<T> {
        let q = self.functional.q;
        let base = q.reciprocal();
        let n = self.degree;
        let deriv = DerivEval::new(f, n + 1, base)?;
        let qn = q.value().powi(n as i32);
        let beta = self.functional.kernel_breakpoints();
        let mut total = T::zero();
        for w in beta.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let mut failure = None;
            let est = jackson_ab_fn(
                |t| match deriv.eval(qn * t) {
                    Ok(v) => v * self.branch_value(lo, hi, t),
                    Err(e) => {
                        failure = Some(e);
                        T::zero()
                    }
                },
                lo,
                hi,
                base,
                cfg,
            )?;
            if let Some(e) = failure {
                return Err(e);
            }
            total += est.value;
        }
        Ok(total)
    }

    /// Additive `∫ₐᵇ K(t) d_{1/q} t`.
    pub fn kernel_integral(&self, cfg: &IntegralConfig<T>) -> QResult<T> {
        let base = self.functional.q.reciprocal();
        let beta = self.functional.kernel_breakpoints();
        let mut total = T::zero();
        for w in beta.windows(2) {
            let est = jackson_ab_fn(|t| self.branch_value(w[0], w[1], t), w[0], w[1], base, cfg)?;
            total += est.value;
        }
        Ok(total)
    }

    /// Mean-value form of the corollary: when the kernel is one-signed on
    /// the domain,
    ///
    /// ```text
    /// L(f) = (D_{1/q}^{n+1} f)(ξ) / [n+1]_q! · q^{n(n+1)/2} · L(x^{n+1})
    /// ```
    ///
    /// for some ξ. Returns `None` when no ξ is bracketed (permissible for
    /// small q: the mean-value theorem only guarantees ξ beyond an unknown
    /// threshold). A detected sign change is a precondition violation.
    pub fn mean_value_form(
        &self,
        f: &FunctionSpec<T>,
        cfg: &IntegralConfig<T>,
    ) -> QResult<Option<(T, T)>> {
        self.check_kernel_one_signed(cfg)?;
        let q = self.functional.q;
        let base = q.reciprocal();
        let n = self.degree;
        let rec = self.reconstruct(f, cfg)?;
        let kappa = self.kernel_integral(cfg)?;
        let target = rec / kappa;
        let deriv = DerivEval::new(f, n + 1, base)?;
        let (a, b) = self.functional.domain;
        let xi = mean_value_search(
            |u| deriv.eval(u).unwrap_or_else(|_| T::nan()),
            target,
            a,
            b,
        );
        match xi {
            None => Ok(None),
            Some(xi) => {
                let dval = deriv.eval(xi)?;
                let value = q_triangular_power(n, q) / q_factorial(n + 1, q)
                    * dval
                    * self.functional.monomial_moment(n + 1);
                Ok(Some((xi, value)))
            }
        }
    }

    /// Sampled sign-constancy check: 4096 uniform points plus the Jackson
    /// orbits of the breakpoints. A sampled check is heuristic by nature.
    fn check_kernel_one_signed(&self, cfg: &IntegralConfig<T>) -> QResult<()> {
        let (a, b) = self.functional.domain;
        let p = self.functional.q.reciprocal().value();
        let mut samples: Vec<T> = Vec::new();
        let cells = 4096usize;
        let step = (b - a) / usize_to_scalar(cells);
        for i in 0..=cells {
            samples.push(a + step * usize_to_scalar(i));
        }
        let floor = a.abs().max(b.abs()) * T::epsilon();
        for c in self.functional.kernel_breakpoints() {
            let mut x = c;
            for _ in 0..cfg.max_terms.min(512) {
                if x >= a && x <= b {
                    samples.push(x);
                }
                x = x * p;
                if x.abs() <= floor {
                    break;
                }
            }
        }
        let values: Vec<T> = samples.iter().map(|&t| self.kernel_value(t)).collect();
        let maxabs = values
            .iter()
            .fold(T::zero(), |acc, v| acc.max(v.abs()));
        let tol = real::<T>(1e-12) * maxabs;
        let mut pos = false;
        let mut neg_at = None;
        for (&t, &v) in samples.iter().zip(&values) {
            if v > tol {
                pos = true;
            }
            if v < -tol && neg_at.is_none() {
                neg_at = Some(t);
            }
        }
        if pos {
            if let Some(t) = neg_at {
                return Err(QError::SignChange { at: to_f64(t) });
            }
        }
        Ok(())
    }
}

// --- serde wire format -----------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RawFunctional<T> {
    #[serde(default = "Vec::new")]
    point_terms: Vec<PointTerm<T>>,
    #[serde(default = "Vec::new")]
    integral_terms: Vec<IntegralTerm<T>>,
    domain: (T, T),
    q: T,
}

impl<T: QScalar + Serialize> Serialize for LinearFunctional<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawFunctional {
            point_terms: self.point_terms.clone(),
            integral_terms: self.integral_terms.clone(),
            domain: self.domain,
            q: self.q.value(),
        }
        .serialize(serializer)
    }
}

impl<'de, T: QScalar + Deserialize<'de>> Deserialize<'de> for LinearFunctional<T> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawFunctional::<T>::deserialize(deserializer)?;
        let q = QParam::new(raw.q).map_err(serde::de::Error::custom)?;
        LinearFunctional::new(raw.point_terms, raw.integral_terms, raw.domain, q)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(q: f64) -> QParam<f64> {
        QParam::new(q).unwrap()
    }

    fn cfg() -> IntegralConfig<f64> {
        IntegralConfig::default()
    }

    fn poly(c: &[f64]) -> FunctionSpec<f64> {
        FunctionSpec::polynomial(c.to_vec())
    }

    fn delta_pair(q: f64) -> LinearFunctional<f64> {
        // δ_1 - δ_0 on [0,1]
        LinearFunctional::new(
            vec![
                PointTerm { coeff: 1.0, at: 1.0 },
                PointTerm { coeff: -1.0, at: 0.0 },
            ],
            vec![],
            (0.0, 1.0),
            qp(q),
        )
        .unwrap()
    }

    fn trapezoid_functional(a: f64, b: f64, q: f64) -> LinearFunctional<f64> {
        let q2 = 1.0 + q;
        LinearFunctional::new(
            vec![
                PointTerm {
                    coeff: -(b - a * q) / q2,
                    at: a,
                },
                PointTerm {
                    coeff: -(b * q - a) / q2,
                    at: b,
                },
            ],
            vec![IntegralTerm {
                weight: 1.0,
                from: a,
                to: b,
            }],
            (a, b),
            qp(q),
        )
        .unwrap()
    }

    #[test]
    fn apply_examples() {
        let c = cfg();
        let id = poly(&[0.0, 1.0]);
        assert_eq!(delta_pair(2.0).apply(&id, &c).unwrap(), 1.0);
        let integral = LinearFunctional::new(
            vec![],
            vec![IntegralTerm {
                weight: 1.0,
                from: 0.0,
                to: 1.0,
            }],
            (0.0, 1.0),
            qp(2.0),
        )
        .unwrap();
        assert!((integral.apply(&id, &c).unwrap() - 2.0 / 3.0).abs() < 1e-13);
        let zero = LinearFunctional::new(vec![], vec![], (0.0, 1.0), qp(2.0)).unwrap();
        assert_eq!(zero.apply(&id, &c).unwrap(), 0.0);
    }

    #[test]
    fn annihilation_degrees() {
        assert_eq!(delta_pair(2.0).annihilation_degree(4, 1e-9), 0);
        assert_eq!(trapezoid_functional(0.0, 1.0, 2.0).annihilation_degree(4, 1e-9), 1);
        // Lagrange error functional on 3 nodes reproduces quadratics
        let x = 0.3;
        let nodes = [-1.0, 0.0, 1.0];
        let l = |k: usize| {
            nodes
                .iter()
                .enumerate()
                .filter(|(v, _)| *v != k)
                .map(|(_, &tv)| (x - tv) / (nodes[k] - tv))
                .product::<f64>()
        };
        let lag = LinearFunctional::new(
            vec![
                PointTerm { coeff: 1.0, at: x },
                PointTerm { coeff: -l(0), at: -1.0 },
                PointTerm { coeff: -l(1), at: 0.0 },
                PointTerm { coeff: -l(2), at: 1.0 },
            ],
            vec![],
            (-1.0, 1.0),
            qp(2.0),
        )
        .unwrap();
        assert_eq!(lag.annihilation_degree(5, 1e-9), 2);
    }

    #[test]
    fn trapezoid_kernel_closed_form() {
        // K(t) = (q/[2]_q)(b-t)(a-t), including off the sample orbit
        for (a, b, q) in [(0.0, 1.0, 2.0), (1.0, 2.0, 3.0), (0.5, 1.7, 1.5)] {
            let k = PeanoKernel::new(trapezoid_functional(a, b, q), 1).unwrap();
            for i in 0..=20 {
                let t = a + (b - a) * i as f64 / 20.0;
                let expected = q / (1.0 + q) * (b - t) * (a - t);
                let got = k.kernel_value(t);
                assert!(
                    (got - expected).abs() <= 1e-12 * (1.0 + expected.abs()),
                    "a={a} b={b} q={q} t={t}: {got} vs {expected}"
                );
            }
            assert_eq!(k.kernel_value(b), 0.0);
        }
    }

    #[test]
    fn kernel_vanishes_outside_support() {
        let k = PeanoKernel::new(trapezoid_functional(1.0, 2.0, 3.0), 1).unwrap();
        for t in [0.2, 0.7, 0.99] {
            assert!(k.kernel_value(t).abs() < 1e-12, "t={t}");
        }
        for t in [2.0, 2.5] {
            assert_eq!(k.kernel_value(t), 0.0);
        }
    }

    #[test]
    fn reconstruct_matches_apply_for_trapezoid() {
        let c = cfg();
        let sq = poly(&[0.0, 0.0, 1.0]);
        let k = PeanoKernel::new(trapezoid_functional(0.0, 1.0, 2.0), 1).unwrap();
        let direct = k.functional().apply(&sq, &c).unwrap();
        assert!((direct + 2.0 / 21.0).abs() < 1e-13); // 4/7 - 2/3
        let rec = k.reconstruct(&sq, &c).unwrap();
        assert!((rec - direct).abs() < 1e-12);
        // off the unit interval and off the q = 2 orbit structure
        let k2 = PeanoKernel::new(trapezoid_functional(1.0, 2.0, 3.0), 1).unwrap();
        let direct2 = k2.functional().apply(&sq, &c).unwrap();
        assert!((direct2 - 5.0 / 52.0).abs() < 1e-12);
        let rec2 = k2.reconstruct(&sq, &c).unwrap();
        assert!((rec2 - direct2).abs() <= 1e-11 * (1.0 + direct2.abs()));
    }

    #[test]
    fn reconstruct_point_functional_off_orbit() {
        // L(f) = f(0.7) - 0.3 f(0) - 0.7 f(1) annihilates degree 1; 0.7 is
        // not a Jackson point of [0,1] for q = 2, which is exactly the case
        // that breaks raw truncated summation.
        let c = cfg();
        let l = LinearFunctional::new(
            vec![
                PointTerm { coeff: 1.0, at: 0.7 },
                PointTerm { coeff: -0.3, at: 0.0 },
                PointTerm { coeff: -0.7, at: 1.0 },
            ],
            vec![],
            (0.0, 1.0),
            qp(2.0),
        )
        .unwrap();
        let k = PeanoKernel::new(l, 1).unwrap();
        let sq = poly(&[0.0, 0.0, 1.0]);
        let direct = k.functional().apply(&sq, &c).unwrap();
        assert!((direct + 0.21).abs() < 1e-13);
        let rec = k.reconstruct(&sq, &c).unwrap();
        assert!((rec - direct).abs() < 1e-12, "{rec} vs {direct}");
    }

    #[test]
    fn degree_zero_point_functional_reconstructs() {
        let c = cfg();
        let k = PeanoKernel::new(delta_pair(2.0), 0).unwrap();
        for f in [poly(&[0.0, 1.0]), poly(&[1.0, -2.0, 3.0]), poly(&[0.5, 0.1, 0.0, 2.0])] {
            let direct = k.functional().apply(&f, &c).unwrap();
            let rec = k.reconstruct(&f, &c).unwrap();
            assert!(
                (rec - direct).abs() <= 1e-11 * (1.0 + direct.abs()),
                "{rec} vs {direct}"
            );
        }
    }

    #[test]
    fn reconstruct_zero_on_annihilated_polynomials() {
        let c = cfg();
        let k = PeanoKernel::new(trapezoid_functional(0.0, 2.0, 2.0), 1).unwrap();
        let f = poly(&[3.0, -1.5]);
        assert!(k.reconstruct(&f, &c).unwrap().abs() < 1e-12);
    }

    #[test]
    fn not_annihilating_rejected() {
        let l = LinearFunctional::new(
            vec![PointTerm { coeff: 1.0, at: 0.5 }],
            vec![],
            (0.0, 1.0),
            qp(2.0),
        )
        .unwrap();
        assert!(matches!(
            PeanoKernel::new(l, 0),
            Err(QError::NotAnnihilating { .. })
        ));
    }

    #[test]
    fn mean_value_form_trapezoid() {
        let c = cfg();
        let k = PeanoKernel::new(trapezoid_functional(0.0, 1.0, 2.0), 1).unwrap();
        let sq = poly(&[0.0, 0.0, 1.0]);
        // constant second 1/q-derivative makes the form exact
        let (xi, value) = k.mean_value_form(&sq, &c).unwrap().unwrap();
        assert!(xi >= 0.0 && xi <= 1.0);
        assert!((value + 2.0 / 21.0).abs() < 1e-10);
        // f = x^{n+1}: the triangular-power identity collapses to apply(L, f)
        let direct = k.functional().apply(&sq, &c).unwrap();
        assert!((value - direct).abs() < 1e-10);
        // annihilated class
        let lin = poly(&[1.0, 1.0]);
        let (_, v0) = k.mean_value_form(&lin, &c).unwrap().unwrap();
        assert!(v0.abs() < 1e-10);
    }

    #[test]
    fn mean_value_form_rejects_sign_changing_kernel() {
        // δ_{0.5} - (δ_0 + δ_1)/2 annihilates constants with an
        // indicator-shaped kernel that changes sign on [0,1]
        let l = LinearFunctional::new(
            vec![
                PointTerm { coeff: 1.0, at: 0.5 },
                PointTerm { coeff: -0.5, at: 0.0 },
                PointTerm { coeff: -0.5, at: 1.0 },
            ],
            vec![],
            (0.0, 1.0),
            qp(2.0),
        )
        .unwrap();
        let k = PeanoKernel::new(l, 0).unwrap();
        let sq = poly(&[0.0, 0.0, 1.0]);
        assert!(matches!(
            k.mean_value_form(&sq, &cfg()),
            Err(QError::SignChange { .. })
        ));
    }

    #[test]
    fn kernel_classical_limit() {
        // q → 1⁺: the trapezoid kernel approaches (b-t)(a-t)/2 and a
        // divided-point functional approaches its classical Peano kernel
        let q = 1.0 + 1e-6;
        let k = PeanoKernel::new(trapezoid_functional(0.0, 1.0, q), 1).unwrap();
        for t in [0.1, 0.37, 0.5, 0.88] {
            let classical = 0.5 * (1.0 - t) * (0.0 - t);
            let got = k.kernel_value(t);
            assert!(
                (got - classical).abs() <= 1e-4 * (1.0 + classical.abs()),
                "t={t}: {got} vs {classical}"
            );
        }
        let l = LinearFunctional::new(
            vec![
                PointTerm { coeff: 1.0, at: 0.6 },
                PointTerm { coeff: -0.4, at: 0.0 },
                PointTerm { coeff: -0.6, at: 1.0 },
            ],
            vec![],
            (0.0, 1.0),
            qp(q),
        )
        .unwrap();
        let k = PeanoKernel::new(l, 1).unwrap();
        for t in [0.15, 0.45, 0.81] {
            let classical = if t <= 0.6 { -0.4 * t } else { -0.6 * (1.0 - t) };
            let got = k.kernel_value(t);
            assert!(
                (got - classical).abs() <= 1e-4 * (1.0 + classical.abs()),
                "t={t}: {got} vs {classical}"
            );
        }
    }

    #[test]
    fn functional_json_round_trip() {
        let src = r#"{
            "point_terms": [{"coeff": 1.0, "at": 1.0}, {"coeff": -1.0, "at": 0.0}],
            "integral_terms": [{"weight": 0.5, "from": 0.0, "to": 1.0}],
            "domain": [0.0, 1.0],
            "q": 2.0
        }"#;
        let l: LinearFunctional<f64> = serde_json::from_str(src).unwrap();
        assert_eq!(l.point_terms().len(), 2);
        let back = serde_json::to_string(&l).unwrap();
        let l2: LinearFunctional<f64> = serde_json::from_str(&back).unwrap();
        assert_eq!(l, l2);
        // q <= 1 rejected at parse time
        let bad = r#"{"point_terms": [], "integral_terms": [], "domain": [0.0, 1.0], "q": 0.5}"#;
        assert!(serde_json::from_str::<LinearFunctional<f64>>(bad).is_err());
    }

    #[test]
    fn outside_domain_rejected() {
        assert!(matches!(
            LinearFunctional::new(
                vec![PointTerm { coeff: 1.0, at: 3.0 }],
                vec![],
                (0.0, 1.0),
                qp(2.0)
            ),
            Err(QError::OutsideDomain { .. })
        ));
    }
}
