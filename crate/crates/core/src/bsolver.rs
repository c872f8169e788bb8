//! The ODE `ḃ = b·θ(φĊ) − a²·θ(Ċ) + (2/a)·√(a⁴ + b²)` for `b = g(Ċ, φĊ)`.
//!
//! When `b` satisfies it along a slant null curve on an F₁-manifold, the
//! distinguished frame has `k₁ = 1`, so it is a Cartan frame. With `θ = 0`
//! (F₀) the equation integrates in closed form.

use std::fmt;
use std::sync::Arc;

use crate::error::{GeometryError, Result};

pub type ThetaFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct BOdeProblem {
    pub a: f64,
    /// `t ↦ θ(Ċ(t))`
    pub theta_c: ThetaFn,
    /// `t ↦ θ(φĊ(t))`
    pub theta_phi_c: ThetaFn,
    pub b0: f64,
    pub t0: f64,
    pub t1: f64,
    pub step: f64,
}

impl fmt::Debug for BOdeProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BOdeProblem")
            .field("a", &self.a)
            .field("b0", &self.b0)
            .field("t0", &self.t0)
            .field("t1", &self.t1)
            .field("step", &self.step)
            .finish_non_exhaustive()
    }
}

impl BOdeProblem {
    pub fn new(
        a: f64,
        theta_c: ThetaFn,
        theta_phi_c: ThetaFn,
        b0: f64,
        (t0, t1): (f64, f64),
        step: f64,
    ) -> Result<Self> {
        if a == 0.0 {
            return Err(GeometryError::ZeroSlant);
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(GeometryError::Config(format!("step must be positive, got {step}")));
        }
        if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
            return Err(GeometryError::Config(format!("need t0 < t1, got [{t0}, {t1}]")));
        }
        if !(a.is_finite() && b0.is_finite()) {
            return Err(GeometryError::NonFinite { t: t0 });
        }
        Ok(Self {
            a,
            theta_c,
            theta_phi_c,
            b0,
            t0,
            t1,
            step,
        })
    }

    /// `θ(Ċ)` and `θ(φĊ)` constant along the curve, as for left-invariant
    /// curves on the Lie group model.
    pub fn with_constant_theta(
        a: f64,
        theta_c: f64,
        theta_phi_c: f64,
        b0: f64,
        interval: (f64, f64),
        step: f64,
    ) -> Result<Self> {
        Self::new(
            a,
            Arc::new(move |_| theta_c),
            Arc::new(move |_| theta_phi_c),
            b0,
            interval,
            step,
        )
    }

    /// Right-hand side of the ODE.
    pub fn rhs(&self, t: f64, b: f64) -> f64 {
        let a = self.a;
        b * (self.theta_phi_c)(t) - a * a * (self.theta_c)(t) + (2.0 / a) * (a.powi(4) + b * b).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BSolution {
    pub t: Vec<f64>,
    pub b: Vec<f64>,
    /// Integration constant of the closed-form F₀ solution, when known.
    pub u: Option<f64>,
}

impl BSolution {
    pub fn last(&self) -> Option<(f64, f64)> {
        Some((*self.t.last()?, *self.b.last()?))
    }
}

/// Classical fourth-order Runge–Kutta with a fixed step; the final step is
/// shortened to land on `t₁`.
pub fn solve_b_numeric(p: &BOdeProblem) -> Result<BSolution> {
    let span = p.t1 - p.t0;
    let steps = ((span / p.step) - 1e-9).ceil().max(1.0) as usize;
    let mut t = Vec::with_capacity(steps + 1);
    let mut b = Vec::with_capacity(steps + 1);
    t.push(p.t0);
    b.push(p.b0);
    let (mut tk, mut bk) = (p.t0, p.b0);
    for k in 0..steps {
        let next = if k + 1 == steps { p.t1 } else { p.t0 + (k + 1) as f64 * p.step };
        let h = next - tk;
        let k1 = p.rhs(tk, bk);
        let k2 = p.rhs(tk + h / 2.0, bk + h / 2.0 * k1);
        let k3 = p.rhs(tk + h / 2.0, bk + h / 2.0 * k2);
        let k4 = p.rhs(tk + h, bk + h * k3);
        bk += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        tk = next;
        if !bk.is_finite() {
            return Err(GeometryError::NonFinite { t: tk });
        }
        t.push(tk);
        b.push(bk);
    }
    Ok(BSolution { t, b, u: None })
}

/// `b(t) = ½[exp(2(t+u)/a) − a⁴·exp(−2(t+u)/a)]`, the F₀ solution.
pub fn analytic_b_f0(a: f64, u: f64, t: f64) -> Result<f64> {
    if a == 0.0 {
        return Err(GeometryError::ZeroSlant);
    }
    let s = 2.0 * (t + u) / a;
    Ok(0.5 * (s.exp() - a.powi(4) * (-s).exp()))
}

/// Solves `(a/2)·ln(b₀ + √(a⁴ + b₀²)) = t₀ + u` for `u`.
pub fn invert_b_for_u(a: f64, t0: f64, b0: f64) -> Result<f64> {
    if a == 0.0 {
        return Err(GeometryError::ZeroSlant);
    }
    // ln(b + √(a⁴+b²)) = ln a² + asinh(b/a²), stable for b ≪ 0
    let log_term = 2.0 * a.abs().ln() + (b0 / (a * a)).asinh();
    Ok(a / 2.0 * log_term - t0)
}

/// The closed-form F₀ solution through `(t₀, b₀)`, sampled like
/// [`solve_b_numeric`] would sample it.
pub fn analytic_solution(a: f64, b0: f64, (t0, t1): (f64, f64), step: f64) -> Result<BSolution> {
    let u = invert_b_for_u(a, t0, b0)?;
    let p = BOdeProblem::with_constant_theta(a, 0.0, 0.0, b0, (t0, t1), step)?;
    let span = p.t1 - p.t0;
    let steps = ((span / p.step) - 1e-9).ceil().max(1.0) as usize;
    let t: Vec<f64> = (0..=steps)
        .map(|k| if k == steps { t1 } else { t0 + k as f64 * step })
        .collect();
    let b = t
        .iter()
        .map(|&tk| analytic_b_f0(a, u, tk))
        .collect::<Result<Vec<_>>>()?;
    Ok(BSolution { t, b, u: Some(u) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(analytic_b_f0(1.0, 0.0, 0.0).unwrap(), 0.0);
        assert!((analytic_b_f0(1.0, 0.0, 2f64.ln()).unwrap() - 15.0 / 8.0).abs() < 1e-14);
        assert_eq!(analytic_b_f0(2.0, 0.0, 0.0).unwrap(), -7.5);
        assert_eq!(analytic_b_f0(0.0, 0.0, 0.0), Err(GeometryError::ZeroSlant));
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(invert_b_for_u(1.0, 0.0, 0.0).unwrap(), 0.0);
        assert!((invert_b_for_u(1.0, 0.0, 15.0 / 8.0).unwrap() - 2f64.ln()).abs() < 1e-14);
        let b0 = analytic_b_f0(2.0, 0.3, 1.0).unwrap();
        assert!((invert_b_for_u(2.0, 1.0, b0).unwrap() - 0.3).abs() < 1e-12);
        assert!((invert_b_for_u(2.0, 0.0, -7.5).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn rk4_matches_closed_form() {
        let p = BOdeProblem::with_constant_theta(1.0, 0.0, 0.0, 0.0, (0.0, 1.0), 1e-3).unwrap();
        let sol = solve_b_numeric(&p).unwrap();
        assert_eq!(sol.t[0], 0.0);
        assert_eq!(sol.b[0], 0.0);
        let (t_end, b_end) = sol.last().unwrap();
        assert_eq!(t_end, 1.0);
        let exact = 0.5 * (2f64.exp() - (-2f64).exp());
        assert!((exact - 3.626860407847019).abs() < 1e-12);
        assert!((b_end - exact).abs() < 1e-8);
    }

    #[test]
    fn rk4_self_convergence_with_theta() {
        let coarse = BOdeProblem::with_constant_theta(1.0, 0.0, 0.7, 0.2, (0.0, 1.0), 1e-2).unwrap();
        let mut fine = coarse.clone();
        fine.step = 1e-3;
        let (_, bc) = solve_b_numeric(&coarse).unwrap().last().unwrap();
        let (_, bf) = solve_b_numeric(&fine).unwrap().last().unwrap();
        assert!((bc - bf).abs() < 1e-7, "{bc} vs {bf}");
    }

    #[test]
    fn invalid_problems() {
        assert_eq!(
            BOdeProblem::with_constant_theta(0.0, 0.0, 0.0, 0.0, (0.0, 1.0), 1e-3).unwrap_err(),
            GeometryError::ZeroSlant
        );
        assert!(BOdeProblem::with_constant_theta(1.0, 0.0, 0.0, 0.0, (0.0, 1.0), 0.0).is_err());
        assert!(BOdeProblem::with_constant_theta(1.0, 0.0, 0.0, 0.0, (1.0, 0.0), 0.1).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let p = BOdeProblem::with_constant_theta(0.01, 0.0, 0.0, 1.0, (0.0, 100.0), 0.1).unwrap();
        assert!(matches!(solve_b_numeric(&p), Err(GeometryError::NonFinite { .. })));
    }

    #[test]
    fn monotone_growth_for_positive_slant() {
        for a in [0.5, 1.0, 2.0] {
            let p = BOdeProblem::with_constant_theta(a, 0.0, 0.0, -3.0, (0.0, 1.0), 1e-2).unwrap();
            let sol = solve_b_numeric(&p).unwrap();
            assert!(sol.b.windows(2).all(|w| w[1] > w[0]));
        }
    }

    proptest! {
        #[test]
        fn round_trip_u(a in prop_oneof![-3.0f64..-0.2, 0.2f64..3.0], u in -1.0f64..1.0, t in -1.0f64..1.0) {
            let b = analytic_b_f0(a, u, t).unwrap();
            prop_assert!((invert_b_for_u(a, t, b).unwrap() - u).abs() < 1e-10);
        }

        #[test]
        fn cartan_curvature_from_rhs_is_one(
            a in prop_oneof![-3.0f64..-0.2, 0.2f64..3.0],
            b in -10.0f64..10.0,
            th_c in -2.0f64..2.0,
            th_pc in -2.0f64..2.0,
        ) {
            let p = BOdeProblem::with_constant_theta(a, th_c, th_pc, b, (0.0, 1.0), 0.1).unwrap();
            let db = p.rhs(0.0, b);
            let gamma = a / (a.powi(4) + b * b).sqrt();
            let k1 = gamma / 2.0 * (db + a * a * th_c - b * th_pc);
            prop_assert!((k1 - 1.0).abs() < 1e-6);
        }
    }
}
