//! Frenet frames along slant null curves.
//!
//! Along a null curve with `η(Ċ) = a ≠ 0` the triple `{Ċ, ξ, φĊ}` is a basis,
//! and every Frenet frame `{Ċ, N, W}` with the same orientation is
//!
//! ```text
//! W = αξ + βĊ + γφĊ,   N = λξ + μĊ + νφĊ
//! ```
//!
//! with `β` free and `α, γ, λ, μ, ν` fixed by `a`, `b = g(Ċ, φĊ)` and `β`.
//! The choice `β = −α/a` gives `ν = 0`, which on F₁-manifolds is the unique
//! frame making the curve parameter distinguished (`h = 0`).

use crate::curve::{compute_b, normalized_basis_det, slant_null_check, CurveRep, SlantNullCertificate, Station};
use crate::error::{GeometryError, Result};
use crate::linalg::add3;
use crate::models::{classify, lee_forms, ManifoldClass, ManifoldModel, CLASSIFY_TOL};
use crate::scalar::{int, Scalar};
use crate::structure::Tangent3;

/// `|k₁|` below this at any sample means the curve is treated as geodesic.
pub const GEODESIC_TOL: f64 = 1e-8;

/// Allowed `|g(Ċ,Ċ)|` and `|η(Ċ) − a|` before a frame is built.
pub const CERTIFICATE_TOL: f64 = 1e-6;

/// Minimum normalized `|det[Ċ, ξ, φĊ]|`.
pub const BASIS_DET_TOL: f64 = 1e-8;

/// Coefficients of `W` and `N` over `{ξ, Ċ, φĊ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameCoefficients<T = f64> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
    pub lambda: T,
    pub mu: T,
    pub nu: T,
}

fn root_a4_b2<T: Scalar>(a: T, b: T) -> Result<T> {
    (a * a * a * a + b * b)
        .sqrt_checked()
        .ok_or(GeometryError::NotRepresentable("sqrt(a^4 + b^2)"))
}

/// Frame coefficients for an arbitrary `β`:
///
/// ```text
/// α = −b/s,  γ = a/s,  s = √(a⁴ + b²)
/// λ = (a³ + βbs)/s²,  μ = −(a² + β²s²)/(2s²),  ν = (b − βas)/s²
/// ```
pub fn general_frame_coefficients<T: Scalar>(a: T, b: T, beta: T) -> Result<FrameCoefficients<T>> {
    if a == T::zero() {
        return Err(GeometryError::ZeroSlant);
    }
    let s = root_a4_b2(a, b)?;
    let s2 = s * s;
    Ok(FrameCoefficients {
        alpha: -b / s,
        beta,
        gamma: a / s,
        lambda: (a * a * a + beta * b * s) / s2,
        mu: -(a * a + beta * beta * s2) / (int::<T>(2) * s2),
        nu: (b - beta * a * s) / s2,
    })
}

/// The distinguished choice `β = −α/a`, for which `λ = 1/a`,
/// `μ = −1/(2a²)` and `ν = 0`.
pub fn distinguished_coefficients<T: Scalar>(a: T, b: T) -> Result<FrameCoefficients<T>> {
    if a == T::zero() {
        return Err(GeometryError::ZeroSlant);
    }
    let s = root_a4_b2(a, b)?;
    let alpha = -b / s;
    Ok(FrameCoefficients {
        alpha,
        beta: -alpha / a,
        gamma: a / s,
        lambda: T::one() / a,
        mu: -T::one() / (int::<T>(2) * a * a),
        nu: T::zero(),
    })
}

impl<T: Scalar> FrameCoefficients<T> {
    /// `(N, W)` at a tangent vector.
    pub fn vectors(&self, model: &ManifoldModel<T>, tangent: &Tangent3<T>) -> (Tangent3<T>, Tangent3<T>) {
        let xi = model.xi();
        let phi_c = model.phi(tangent);
        let w = xi.scale(self.alpha) + tangent.scale(self.beta) + phi_c.scale(self.gamma);
        let n = xi.scale(self.lambda) + tangent.scale(self.mu) + phi_c.scale(self.nu);
        (n, w)
    }
}

/// How `β` is chosen at each point of the curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BetaRule<T = f64> {
    /// `β = −α/a`
    Distinguished,
    Constant(T),
    /// `β = −α/a + δ`
    Offset(T),
}

/// Deviations from `g(Ċ,N) = g(W,W) = 1`, `g(N,N) = g(N,W) = g(Ċ,W) = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GramResiduals {
    pub c_n: f64,
    pub w_w: f64,
    pub n_n: f64,
    pub n_w: f64,
    pub c_w: f64,
}

impl GramResiduals {
    pub fn max(&self) -> f64 {
        [self.c_n, self.w_w, self.n_n, self.n_w, self.c_w]
            .into_iter()
            .fold(0.0, f64::max)
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.c_n, self.w_w, self.n_n, self.n_w, self.c_w]
    }
}

pub fn gram_residuals<T: Scalar>(
    model: &ManifoldModel<T>,
    c: &Tangent3<T>,
    n: &Tangent3<T>,
    w: &Tangent3<T>,
) -> GramResiduals {
    let one = T::one();
    GramResiduals {
        c_n: (model.g(c, n) - one).magnitude(),
        w_w: (model.g(w, w) - one).magnitude(),
        n_n: model.g(n, n).magnitude(),
        n_w: model.g(n, w).magnitude(),
        c_w: model.g(c, w).magnitude(),
    }
}

/// The frame at one point of the curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FramePoint<T = f64> {
    pub t: f64,
    pub tangent: Tangent3<T>,
    pub n: Tangent3<T>,
    pub w: Tangent3<T>,
    pub coefficients: FrameCoefficients<T>,
}

/// Builds the frame at a single tangent vector, with `a` the slant constant
/// of the curve it belongs to.
pub fn frame_at<T: Scalar>(
    model: &ManifoldModel<T>,
    t: f64,
    tangent: Tangent3<T>,
    a: T,
    rule: BetaRule<T>,
) -> Result<FramePoint<T>> {
    let b = crate::curve::b_value(model, &tangent);
    let coefficients = match rule {
        BetaRule::Distinguished => distinguished_coefficients(a, b)?,
        BetaRule::Constant(beta) => general_frame_coefficients(a, b, beta)?,
        BetaRule::Offset(delta) => {
            let d = distinguished_coefficients(a, b)?;
            general_frame_coefficients(a, b, d.beta + delta)?
        }
    };
    let (n, w) = coefficients.vectors(model, &tangent);
    Ok(FramePoint {
        t,
        tangent,
        n,
        w,
        coefficients,
    })
}

/// A Frenet frame sampled along a curve.
#[derive(Clone, Debug, PartialEq)]
pub struct FrenetFrame {
    pub a: f64,
    pub rule: BetaRule,
    pub points: Vec<FramePoint>,
}

impl FrenetFrame {
    /// `γ > 0` at every sample. For `a < 0` the printed choice `γ = a/s`
    /// is kept, and this reports `false`.
    pub fn orientation_positive(&self) -> bool {
        self.points.iter().all(|p| p.coefficients.gamma > 0.0)
    }

    pub fn gram_residuals(&self, model: &ManifoldModel) -> Vec<GramResiduals> {
        self.points
            .iter()
            .map(|p| gram_residuals(model, &p.tangent, &p.n, &p.w))
            .collect()
    }

    pub fn max_gram_residual(&self, model: &ManifoldModel) -> f64 {
        self.gram_residuals(model).iter().map(GramResiduals::max).fold(0.0, f64::max)
    }

    fn at_station(&self, curve: &CurveRep, model: &ManifoldModel, st: Station) -> Result<FramePoint> {
        frame_at(model, curve.station_time(st), curve.tangent_at(st), self.a, self.rule)
    }
}

fn certify(curve: &CurveRep, model: &ManifoldModel) -> Result<SlantNullCertificate> {
    let cert = slant_null_check(curve, model)?;
    if !cert.is_valid(CERTIFICATE_TOL) {
        return Err(GeometryError::InvalidCurve(format!(
            "not a slant null curve: max |g(C',C')| = {:e}, max |eta(C') - a| = {:e}",
            cert.max_null_residual, cert.max_slant_residual
        )));
    }
    cert.nonzero_slant()?;
    Ok(cert)
}

/// A general Frenet frame for the given `β` rule.
pub fn build_frame(curve: &CurveRep, model: &ManifoldModel, rule: BetaRule) -> Result<FrenetFrame> {
    let cert = certify(curve, model)?;
    let a = cert.a;
    let points = (0..curve.len())
        .map(|i| {
            let tangent = curve.tangent(i);
            let det = normalized_basis_det(model, &tangent);
            if det.abs() <= BASIS_DET_TOL {
                return Err(GeometryError::DegenerateBasis { t: curve.time(i), det });
            }
            frame_at(model, curve.time(i), tangent, a, rule)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FrenetFrame { a, rule, points })
}

/// The unique frame for which the curve parameter is distinguished.
///
/// Fails with [`GeometryError::GeodesicCurve`] if `|k₁| < GEODESIC_TOL`
/// anywhere, since uniqueness needs a non-geodesic curve.
pub fn unique_distinguished_frame(curve: &CurveRep, model: &ManifoldModel) -> Result<FrenetFrame> {
    let frame = build_frame(curve, model, BetaRule::Distinguished)?;
    for (i, p) in frame.points.iter().enumerate() {
        let acc = acceleration(curve, model, i)?;
        let k1 = model.g(&acc, &p.w);
        if !(k1.abs() >= GEODESIC_TOL) {
            return Err(GeometryError::GeodesicCurve { t: p.t, k1 });
        }
    }
    Ok(frame)
}

/// `∇_Ċ Ċ` at sample `i`.
pub fn acceleration(curve: &CurveRep, model: &ManifoldModel, i: usize) -> Result<Tangent3> {
    let c = curve.tangent(i);
    let dc = curve.differentiate(i, |st| Ok(curve.tangent_at(st).components))?;
    Ok(Tangent3::new(add3(dc, model.nabla(&c, &c).components), c.basis))
}

/// `∇_Ċ V` at sample `i` for a field along the curve given per station.
fn covariant_along<F>(curve: &CurveRep, model: &ManifoldModel, i: usize, field: F) -> Result<Tangent3>
where
    F: Fn(Station) -> Result<Tangent3>,
{
    let c = curve.tangent(i);
    let value = field(curve.station(i))?;
    let dv = curve.differentiate(i, |st| Ok(field(st)?.components))?;
    Ok(Tangent3::new(add3(dv, model.nabla(&c, &value).components), c.basis))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvaturePoint {
    pub t: f64,
    /// `g(∇_Ċ Ċ, N)`
    pub h: f64,
    /// `g(∇_Ċ Ċ, W)`
    pub k1: f64,
    /// `g(∇_Ċ N, W)`
    pub k2: f64,
    pub b: f64,
    pub db_dt: f64,
    pub theta_c: f64,
    pub theta_phi_c: f64,
    /// `(h, k₁)` from the F₁ closed form, when the model is F₀ or F₁.
    pub closed_form: Option<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureData {
    pub points: Vec<CurvaturePoint>,
    /// Mean of `k₂`; the torsion `τ` when the frame is Cartan.
    pub tau: f64,
}

impl CurvatureData {
    pub fn max_abs_h(&self) -> f64 {
        self.points.iter().map(|p| p.h.abs()).fold(0.0, f64::max)
    }

    pub fn max_k1_error(&self) -> f64 {
        self.points.iter().map(|p| (p.k1 - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Largest disagreement between direct and closed-form `(h, k₁)`.
    pub fn max_closed_form_gap(&self) -> Option<f64> {
        self.points
            .iter()
            .map(|p| p.closed_form.map(|(h, k1)| (p.h - h).abs().max((p.k1 - k1).abs())))
            .try_fold(0.0f64, |m, g| g.map(|g| m.max(g)))
    }
}

/// `h = (ν/2)·Q`, `k₁ = (γ/2)·Q` with `Q = ḃ + a²θ(Ċ) − bθ(φĊ)`.
pub fn curvatures_closed_form_f1<T: Scalar>(
    a: T,
    b: T,
    db_dt: T,
    theta_c: T,
    theta_phi_c: T,
    gamma: T,
    nu: T,
) -> (T, T) {
    let q = db_dt + a * a * theta_c - b * theta_phi_c;
    let two = int::<T>(2);
    (nu / two * q, gamma / two * q)
}

/// `h`, `k₁`, `k₂` by inner products of `∇_Ċ Ċ` and `∇_Ċ N` with the frame,
/// cross-checked against the closed form on F₀/F₁ models.
pub fn curvatures(curve: &CurveRep, model: &ManifoldModel, frame: &FrenetFrame) -> Result<CurvatureData> {
    let lee = lee_forms(model);
    let closed = classify(model, CLASSIFY_TOL).class != ManifoldClass::Neither;
    let bprof = compute_b(curve, model)?;
    let mut points = Vec::with_capacity(frame.points.len());
    for (i, p) in frame.points.iter().enumerate() {
        let acc = acceleration(curve, model, i)?;
        let nabla_n = covariant_along(curve, model, i, |st| Ok(frame.at_station(curve, model, st)?.n))?;
        let theta_c = lee.theta_of(&p.tangent);
        let theta_phi_c = lee.theta_of(&model.phi(&p.tangent));
        let (b, db_dt) = (bprof.b[i], bprof.db_dt[i]);
        let closed_form = closed.then(|| {
            curvatures_closed_form_f1(
                frame.a,
                b,
                db_dt,
                theta_c,
                theta_phi_c,
                p.coefficients.gamma,
                p.coefficients.nu,
            )
        });
        points.push(CurvaturePoint {
            t: p.t,
            h: model.g(&acc, &p.n),
            k1: model.g(&acc, &p.w),
            k2: model.g(&nabla_n, &p.w),
            b,
            db_dt,
            theta_c,
            theta_phi_c,
            closed_form,
        });
    }
    let tau = points.iter().map(|p| p.k2).sum::<f64>() / points.len() as f64;
    Ok(CurvatureData { points, tau })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicReport {
    pub geodesic: bool,
    /// `|ḃ − bθ(φĊ) + a²θ(Ċ)|` per sample.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub tolerance: f64,
}

/// A slant null curve on an F₁-manifold is geodesic exactly when
/// `ḃ = bθ(φĊ) − a²θ(Ċ)` along it.
pub fn geodesic_test(curve: &CurveRep, model: &ManifoldModel, tolerance: f64) -> Result<GeodesicReport> {
    let cert = slant_null_check(curve, model)?;
    let a = cert.a;
    let lee = lee_forms(model);
    let bprof = compute_b(curve, model)?;
    let residuals: Vec<f64> = (0..curve.len())
        .map(|i| {
            let c = curve.tangent(i);
            let th_c = lee.theta_of(&c);
            let th_pc = lee.theta_of(&model.phi(&c));
            (bprof.db_dt[i] - bprof.b[i] * th_pc + a * a * th_c).abs()
        })
        .collect();
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(GeodesicReport {
        geodesic: max_residual < tolerance,
        residuals,
        max_residual,
        tolerance,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CartanSample {
    pub t: f64,
    /// `|∇_Ċ Ċ − W|`
    pub tangent_eq: f64,
    /// `|∇_Ċ N − τW|`
    pub normal_eq: f64,
    /// `|∇_Ċ W + τĊ + N|`
    pub screen_eq: f64,
    pub k1_error: f64,
    pub h_abs: f64,
    /// `|g(∇_Ċ Ċ, ∇_Ċ Ċ) − 1|`
    pub acc_norm_error: f64,
    pub tau: f64,
}

impl CartanSample {
    pub fn max_residual(&self) -> f64 {
        [
            self.tangent_eq,
            self.normal_eq,
            self.screen_eq,
            self.k1_error,
            self.h_abs,
            self.acc_norm_error,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CartanReport {
    pub samples: Vec<CartanSample>,
    pub max_equation_residual: f64,
    pub max_k1_error: f64,
    pub max_h: f64,
    pub max_acc_norm_error: f64,
    pub tau: f64,
    pub orientation_positive: bool,
    pub tolerance: f64,
    pub passes: bool,
}

/// Checks the Cartan equations `∇_Ċ Ċ = W`, `∇_Ċ N = τW`,
/// `∇_Ċ W = −τĊ − N` together with `k₁ = 1`, `h = 0` and
/// `g(∇_Ċ Ċ, ∇_Ċ Ċ) = 1`. Vector residuals are max-abs components.
pub fn verify_cartan(
    curve: &CurveRep,
    model: &ManifoldModel,
    frame: &FrenetFrame,
    curv: &CurvatureData,
    tolerance: f64,
) -> Result<CartanReport> {
    let mut samples = Vec::with_capacity(frame.points.len());
    for (i, (p, k)) in frame.points.iter().zip(&curv.points).enumerate() {
        let tau = k.k2;
        let acc = acceleration(curve, model, i)?;
        let nabla_n = covariant_along(curve, model, i, |st| Ok(frame.at_station(curve, model, st)?.n))?;
        let nabla_w = covariant_along(curve, model, i, |st| Ok(frame.at_station(curve, model, st)?.w))?;
        samples.push(CartanSample {
            t: p.t,
            tangent_eq: (acc - p.w).max_abs(),
            normal_eq: (nabla_n - p.w.scale(tau)).max_abs(),
            screen_eq: (nabla_w + p.tangent.scale(tau) + p.n).max_abs(),
            k1_error: (k.k1 - 1.0).abs(),
            h_abs: k.h.abs(),
            acc_norm_error: (model.g(&acc, &acc) - 1.0).abs(),
            tau,
        });
    }
    let fold = |f: fn(&CartanSample) -> f64| samples.iter().map(f).fold(0.0, f64::max);
    let max_equation_residual = fold(|s| s.tangent_eq.max(s.normal_eq).max(s.screen_eq));
    let max_k1_error = fold(|s| s.k1_error);
    let max_h = fold(|s| s.h_abs);
    let max_acc_norm_error = fold(|s| s.acc_norm_error);
    let passes = samples.iter().all(|s| s.max_residual() < tolerance);
    Ok(CartanReport {
        max_equation_residual,
        max_k1_error,
        max_h,
        max_acc_norm_error,
        tau: curv.tau,
        orientation_positive: frame.orientation_positive(),
        tolerance,
        passes,
        samples,
    })
}

/// Distinguished frame, curvatures and Cartan residuals of a left-invariant
/// curve `exp(tX)`, computed algebraically in any scalar field.
///
/// All quantities are constant in the left-invariant frame, so covariant
/// derivatives reduce to `∇_X V = Γ(X, V)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeftInvariantCartan<T> {
    pub a: T,
    pub b: T,
    pub frame: FramePoint<T>,
    pub acceleration: Tangent3<T>,
    pub nabla_n: Tangent3<T>,
    pub nabla_w: Tangent3<T>,
    pub h: T,
    pub k1: T,
    pub tau: T,
    pub gram: GramResiduals,
    /// `[∇_X X − W, ∇_X N − τW, ∇_X W + τX + N]`
    pub equation_residuals: [Tangent3<T>; 3],
}

impl<T: Scalar> LeftInvariantCartan<T> {
    pub fn is_cartan(&self) -> bool {
        self.k1 == T::one()
            && self.h == T::zero()
            && self.equation_residuals.iter().all(|r| r.max_abs() == 0.0)
    }

    pub fn max_equation_residual(&self) -> f64 {
        self.equation_residuals.iter().map(Tangent3::max_abs).fold(0.0, f64::max)
    }
}

pub fn left_invariant_cartan<T: Scalar>(model: &ManifoldModel<T>, x: Tangent3<T>) -> Result<LeftInvariantCartan<T>> {
    if x.basis != model.basis() {
        return Err(GeometryError::InvalidCurve("vector and model use different frames".into()));
    }
    if x.max_abs() < crate::curve::VANISHING_TANGENT {
        return Err(GeometryError::TangentVanishes { index: 0, t: 0.0 });
    }
    let null = model.g(&x, &x).magnitude();
    if null > 1e-12 {
        return Err(GeometryError::InvalidCurve(format!("g(X,X) = {null:e} is not null")));
    }
    let a = model.eta(&x);
    let frame = frame_at(model, 0.0, x, a, BetaRule::Distinguished)?;
    let acceleration = model.nabla(&x, &x);
    let nabla_n = model.nabla(&x, &frame.n);
    let nabla_w = model.nabla(&x, &frame.w);
    let h = model.g(&acceleration, &frame.n);
    let k1 = model.g(&acceleration, &frame.w);
    if k1.magnitude() < GEODESIC_TOL {
        return Err(GeometryError::GeodesicCurve { t: 0.0, k1: k1.to_f64() });
    }
    let tau = model.g(&nabla_n, &frame.w);
    let equation_residuals = [
        acceleration - frame.w,
        nabla_n - frame.w.scale(tau),
        nabla_w + x.scale(tau) + frame.n,
    ];
    Ok(LeftInvariantCartan {
        a,
        b: crate::curve::b_value(model, &x),
        gram: gram_residuals(model, &x, &frame.n, &frame.w),
        frame,
        acceleration,
        nabla_n,
        nabla_w,
        h,
        k1,
        tau,
        equation_residuals,
    })
}
