//! Curve representations and the slant/null certificate.
//!
//! A curve is sampled on a uniform grid `t₀, …, t₁` with `n` points. Its
//! tangent comes from an analytic callback, from finite differences of
//! sampled positions, or is a constant left-invariant vector. Derivatives of
//! quantities along the curve use five-point central differences (central
//! differences with one Richardson step) on the same grid.

use std::fmt;
use std::sync::Arc;

use crate::error::{GeometryError, Result};
use crate::linalg::{add3, norm3, scale3, sub3, Mat3};
use crate::models::ManifoldModel;
use crate::scalar::Scalar;
use crate::structure::{Basis, Tangent3};

/// Components below this count as zero when testing regularity.
pub const VANISHING_TANGENT: f64 = 1e-14;

/// Upper bound on the finite-difference step used for analytic curves.
pub const MAX_FD_STEP: f64 = 1e-2;

pub type VectorFn = Arc<dyn Fn(f64) -> [f64; 3] + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    CoordinateAnalytic,
    CoordinateSampled,
    LeftInvariantConstant,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveKind::CoordinateAnalytic => "coordinate-analytic",
            CurveKind::CoordinateSampled => "coordinate-sampled",
            CurveKind::LeftInvariantConstant => "left-invariant-constant",
        })
    }
}

/// Where along the curve a quantity is evaluated: an arbitrary parameter
/// value for analytic curves, a grid index for sampled ones.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Station {
    Time(f64),
    Index(usize),
}

#[derive(Clone)]
enum Repr {
    Analytic {
        tangent: VectorFn,
        position: Option<VectorFn>,
    },
    Sampled {
        positions: Vec<[f64; 3]>,
        tangents: Vec<[f64; 3]>,
    },
    LeftInvariant {
        x: [f64; 3],
    },
}

#[derive(Clone)]
pub struct CurveRep {
    repr: Repr,
    t0: f64,
    t1: f64,
    n: usize,
}

impl fmt::Debug for CurveRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurveRep")
            .field("kind", &self.kind())
            .field("t0", &self.t0)
            .field("t1", &self.t1)
            .field("n", &self.n)
            .finish()
    }
}

fn check_grid(t0: f64, t1: f64, n: usize) -> Result<()> {
    if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
        return Err(GeometryError::InvalidCurve(format!("need t0 < t1, got [{t0}, {t1}]")));
    }
    if n < 3 {
        return Err(GeometryError::InvalidCurve(format!("need at least 3 samples, got {n}")));
    }
    Ok(())
}

impl CurveRep {
    /// Coordinate curve with an analytic tangent `t ↦ Ċ(t)`.
    pub fn analytic(tangent: VectorFn, position: Option<VectorFn>, t0: f64, t1: f64, n: usize) -> Result<Self> {
        check_grid(t0, t1, n)?;
        Ok(Self {
            repr: Repr::Analytic { tangent, position },
            t0,
            t1,
            n,
        })
    }

    /// Coordinate curve given by positions on a uniform grid over `[t0, t1]`.
    pub fn sampled(positions: Vec<[f64; 3]>, t0: f64, t1: f64) -> Result<Self> {
        let n = positions.len();
        check_grid(t0, t1, n)?;
        if positions.iter().flatten().any(|x| !x.is_finite()) {
            return Err(GeometryError::InvalidCurve("non-finite position".into()));
        }
        let h = (t1 - t0) / (n - 1) as f64;
        let tangents = (0..n)
            .map(|i| grid_derivative(n, i, h, |j| Ok(positions[j])))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            repr: Repr::Sampled { positions, tangents },
            t0,
            t1,
            n,
        })
    }

    /// The one-parameter subgroup `t ↦ exp(tX)`; its tangent has the
    /// constant components `x` in the left-invariant frame.
    pub fn left_invariant(x: [f64; 3], t0: f64, t1: f64, n: usize) -> Result<Self> {
        check_grid(t0, t1, n)?;
        Ok(Self {
            repr: Repr::LeftInvariant { x },
            t0,
            t1,
            n,
        })
    }

    pub fn kind(&self) -> CurveKind {
        match self.repr {
            Repr::Analytic { .. } => CurveKind::CoordinateAnalytic,
            Repr::Sampled { .. } => CurveKind::CoordinateSampled,
            Repr::LeftInvariant { .. } => CurveKind::LeftInvariantConstant,
        }
    }

    pub fn basis(&self) -> Basis {
        match self.repr {
            Repr::LeftInvariant { .. } => Basis::LeftInvariant,
            _ => Basis::Coordinate,
        }
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.t0, self.t1)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Grid spacing `(t₁ − t₀)/(n − 1)`.
    pub fn grid_step(&self) -> f64 {
        (self.t1 - self.t0) / (self.n - 1) as f64
    }

    pub fn time(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.t1
        } else {
            self.t0 + i as f64 * self.grid_step()
        }
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.time(i)).collect()
    }

    pub fn station(&self, i: usize) -> Station {
        match self.repr {
            Repr::Sampled { .. } => Station::Index(i),
            _ => Station::Time(self.time(i)),
        }
    }

    pub fn stations(&self) -> Vec<Station> {
        (0..self.n).map(|i| self.station(i)).collect()
    }

    pub fn station_time(&self, st: Station) -> f64 {
        match st {
            Station::Time(t) => t,
            Station::Index(i) => self.time(i),
        }
    }

    /// `true` when every component of the tangent is independent of `t`.
    pub fn is_left_invariant(&self) -> bool {
        matches!(self.repr, Repr::LeftInvariant { .. })
    }

    pub fn tangent_at(&self, st: Station) -> Tangent3 {
        let c = match (&self.repr, st) {
            (Repr::Analytic { tangent, .. }, Station::Time(t)) => tangent(t),
            (Repr::Analytic { tangent, .. }, Station::Index(i)) => tangent(self.time(i)),
            (Repr::Sampled { tangents, .. }, Station::Index(i)) => tangents[i],
            (Repr::Sampled { tangents, .. }, Station::Time(t)) => tangents[self.nearest_index(t)],
            (Repr::LeftInvariant { x }, _) => *x,
        };
        Tangent3::new(c, self.basis())
    }

    pub fn tangent(&self, i: usize) -> Tangent3 {
        self.tangent_at(self.station(i))
    }

    /// Position at sample `i`, when the representation has one.
    pub fn position(&self, i: usize) -> Option<[f64; 3]> {
        match &self.repr {
            Repr::Analytic { position, .. } => position.as_ref().map(|p| p(self.time(i))),
            Repr::Sampled { positions, .. } => Some(positions[i]),
            Repr::LeftInvariant { .. } => None,
        }
    }

    fn nearest_index(&self, t: f64) -> usize {
        let i = ((t - self.t0) / self.grid_step()).round();
        (i.max(0.0) as usize).min(self.n - 1)
    }

    /// Finite-difference step for analytic callbacks.
    pub fn fd_step(&self) -> f64 {
        self.grid_step().min(MAX_FD_STEP)
    }

    /// Derivative in `t` of a component-valued quantity along the curve,
    /// at sample `i`. Quantities on left-invariant curves are constant in
    /// the left-invariant frame, so their derivative is exactly zero.
    pub fn differentiate<F>(&self, i: usize, f: F) -> Result<[f64; 3]>
    where
        F: Fn(Station) -> Result<[f64; 3]>,
    {
        match self.repr {
            Repr::LeftInvariant { .. } => Ok([0.0; 3]),
            Repr::Analytic { .. } => {
                let t = self.time(i);
                let h = self.fd_step();
                let at = |k: f64| f(Station::Time(t + k * h));
                let d1 = sub3(at(1.0)?, at(-1.0)?);
                let d2 = sub3(at(2.0)?, at(-2.0)?);
                // (8[f(t+h) − f(t−h)] − [f(t+2h) − f(t−2h)]) / 12h
                Ok(scale3(1.0 / (12.0 * h), sub3(scale3(8.0, d1), d2)))
            }
            Repr::Sampled { .. } => grid_derivative(self.n, i, self.grid_step(), |j| f(Station::Index(j))),
        }
    }

    pub fn differentiate_scalar<F>(&self, i: usize, f: F) -> Result<f64>
    where
        F: Fn(Station) -> Result<f64>,
    {
        Ok(self.differentiate(i, |st| Ok([f(st)?, 0.0, 0.0]))?[0])
    }
}

/// Fourth-order finite differences on a uniform grid of `n` values (second
/// order when `n < 5`), one-sided at the ends.
fn grid_derivative<F>(n: usize, i: usize, h: f64, f: F) -> Result<[f64; 3]>
where
    F: Fn(usize) -> Result<[f64; 3]>,
{
    let combo = |weights: &[(usize, f64)], denom: f64| -> Result<[f64; 3]> {
        let mut acc = [0.0; 3];
        for &(j, w) in weights {
            acc = add3(acc, scale3(w, f(j)?));
        }
        Ok(scale3(1.0 / (denom * h), acc))
    };
    if n >= 5 {
        let last = n - 1;
        match i {
            0 => combo(&[(0, -25.0), (1, 48.0), (2, -36.0), (3, 16.0), (4, -3.0)], 12.0),
            1 => combo(&[(0, -3.0), (1, -10.0), (2, 18.0), (3, -6.0), (4, 1.0)], 12.0),
            _ if i == last => combo(
                &[(last, 25.0), (last - 1, -48.0), (last - 2, 36.0), (last - 3, -16.0), (last - 4, 3.0)],
                12.0,
            ),
            _ if i + 1 == last => combo(
                &[(last, 3.0), (last - 1, 10.0), (last - 2, -18.0), (last - 3, 6.0), (last - 4, -1.0)],
                12.0,
            ),
            _ => combo(&[(i - 2, 1.0), (i - 1, -8.0), (i + 1, 8.0), (i + 2, -1.0)], 12.0),
        }
    } else {
        let last = n - 1;
        match i {
            0 => combo(&[(0, -3.0), (1, 4.0), (2, -1.0)], 2.0),
            _ if i == last => combo(&[(last, 3.0), (last - 1, -4.0), (last - 2, 1.0)], 2.0),
            _ => combo(&[(i - 1, -1.0), (i + 1, 1.0)], 2.0),
        }
    }
}

/// `b = g(Ċ, φĊ)` at one tangent vector.
pub fn b_value<T: Scalar>(model: &ManifoldModel<T>, tangent: &Tangent3<T>) -> T {
    model.g(tangent, &model.phi(tangent))
}

/// `det[Ċ, ξ, φĊ]` with each column scaled to unit Euclidean length.
pub fn normalized_basis_det<T: Scalar>(model: &ManifoldModel<T>, tangent: &Tangent3<T>) -> f64 {
    let cols = [
        tangent.to_f64().components,
        model.xi().to_f64().components,
        model.phi(tangent).to_f64().components,
    ];
    let scaled = cols.map(|c| {
        let n = norm3(c);
        if n == 0.0 {
            c
        } else {
            scale3(1.0 / n, c)
        }
    });
    Mat3::from_columns(scaled).det()
}

/// Evidence that a curve is null and slant with constant `a = η(Ċ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlantNullCertificate {
    /// Mean of `η(Ċ)` over the samples.
    pub a: f64,
    /// `max |g(Ċ, Ċ)|`.
    pub max_null_residual: f64,
    /// `max |η(Ċ) − a|`.
    pub max_slant_residual: f64,
}

impl SlantNullCertificate {
    pub fn is_valid(&self, tolerance: f64) -> bool {
        self.max_null_residual < tolerance && self.max_slant_residual < tolerance
    }

    /// `a`, or [`GeometryError::ZeroSlant`] for a Legendre curve.
    pub fn nonzero_slant(&self) -> Result<f64> {
        if self.a.abs() < 1e-12 {
            Err(GeometryError::ZeroSlant)
        } else {
            Ok(self.a)
        }
    }
}

fn require_same_basis(curve: &CurveRep, model: &ManifoldModel) -> Result<()> {
    if curve.basis() != model.basis() {
        return Err(GeometryError::InvalidCurve(format!(
            "{} curve on a model framed by the {} basis",
            curve.kind(),
            model.basis()
        )));
    }
    Ok(())
}

/// Measures nullity `g(Ċ, Ċ) = 0` and the slant condition `η(Ċ) = a`.
pub fn slant_null_check(curve: &CurveRep, model: &ManifoldModel) -> Result<SlantNullCertificate> {
    require_same_basis(curve, model)?;
    let mut etas = Vec::with_capacity(curve.len());
    let mut max_null = 0.0f64;
    for i in 0..curve.len() {
        let c = curve.tangent(i);
        if !c.is_finite() {
            return Err(GeometryError::NonFinite { t: curve.time(i) });
        }
        if c.components.iter().all(|x| x.abs() < VANISHING_TANGENT) {
            return Err(GeometryError::TangentVanishes {
                index: i,
                t: curve.time(i),
            });
        }
        max_null = max_null.max(model.g(&c, &c).abs());
        etas.push(model.eta(&c));
    }
    let a = etas.iter().sum::<f64>() / etas.len() as f64;
    let max_slant = etas.iter().fold(0.0f64, |m, e| m.max((e - a).abs()));
    Ok(SlantNullCertificate {
        a,
        max_null_residual: max_null,
        max_slant_residual: max_slant,
    })
}

/// `b(t)` and `ḃ(t)` at every sample.
#[derive(Clone, Debug, PartialEq)]
pub struct BProfile {
    pub t: Vec<f64>,
    pub b: Vec<f64>,
    pub db_dt: Vec<f64>,
}

pub fn compute_b(curve: &CurveRep, model: &ManifoldModel) -> Result<BProfile> {
    require_same_basis(curve, model)?;
    let b_at = |st: Station| Ok(b_value(model, &curve.tangent_at(st)));
    let mut profile = BProfile {
        t: curve.times(),
        b: Vec::with_capacity(curve.len()),
        db_dt: Vec::with_capacity(curve.len()),
    };
    for i in 0..curve.len() {
        profile.b.push(b_at(curve.station(i))?);
        profile.db_dt.push(curve.differentiate_scalar(i, b_at)?);
    }
    Ok(profile)
}
