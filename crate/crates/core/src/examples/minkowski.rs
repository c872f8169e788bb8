use std::fmt;
use std::sync::Arc;

use crate::curve::{CurveRep, VectorFn};
use crate::error::{GeometryError, Result};
use crate::frenet::distinguished_coefficients;
use crate::structure::{Basis, Tangent3};

/// Sign of `ẋ₁ = ±√(ẋ₂² + a²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    C1,
    C2,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::C1 => 1.0,
            Branch::C2 => -1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::C1 => "c1",
            Branch::C2 => "c2",
        })
    }
}

/// `C(t) = (±(a/2)(E − a²/E) + o₁, ±(a/2)(E + a²/E) + o₂, at + o₃)` with
/// `E = exp((t+u)/a)`, the upper sign for [`Branch::C1`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinkowskiCartanCurve {
    pub branch: Branch,
    pub a: f64,
    pub u: f64,
    pub offsets: [f64; 3],
}

pub fn make_minkowski_curve(branch: Branch, a: f64, u: f64, offsets: [f64; 3]) -> Result<MinkowskiCartanCurve> {
    if a == 0.0 {
        return Err(GeometryError::ZeroSlant);
    }
    if !(a.is_finite() && u.is_finite() && offsets.iter().all(|o| o.is_finite())) {
        return Err(GeometryError::NonFinite { t: 0.0 });
    }
    Ok(MinkowskiCartanCurve {
        branch,
        a,
        u,
        offsets,
    })
}

impl MinkowskiCartanCurve {
    /// `E = exp((t+u)/a)`
    pub fn e(&self, t: f64) -> f64 {
        ((t + self.u) / self.a).exp()
    }

    pub fn position(&self, t: f64) -> [f64; 3] {
        let (a, e, s) = (self.a, self.e(t), self.branch.sign());
        let a2e = a * a / e;
        [
            s * a / 2.0 * (e - a2e) + self.offsets[0],
            s * a / 2.0 * (e + a2e) + self.offsets[1],
            a * t + self.offsets[2],
        ]
    }

    pub fn tangent(&self, t: f64) -> [f64; 3] {
        let (a, e, s) = (self.a, self.e(t), self.branch.sign());
        let a2e = a * a / e;
        [s * (e + a2e) / 2.0, s * (e - a2e) / 2.0, a]
    }

    /// `φĊ = (−ẋ₂, ẋ₁, 0)`
    pub fn phi_tangent(&self, t: f64) -> [f64; 3] {
        let c = self.tangent(t);
        [-c[1], c[0], 0.0]
    }

    /// `b = 2ẋ₁ẋ₂ = ½(E² − a⁴E⁻²)`
    pub fn b(&self, t: f64) -> f64 {
        let c = self.tangent(t);
        2.0 * c[0] * c[1]
    }

    /// `ρ = (E² − a⁴E⁻²)/(E² + a⁴E⁻²)`
    pub fn rho(&self, t: f64) -> f64 {
        let (num, den) = self.rho_parts(t);
        num / den
    }

    fn rho_parts(&self, t: f64) -> (f64, f64) {
        let e2 = self.e(t).powi(2);
        let tail = self.a.powi(4) / e2;
        (e2 - tail, e2 + tail)
    }

    pub fn n(&self, t: f64) -> [f64; 3] {
        minkowski_cartan_frame(self, t).0.components
    }

    pub fn w(&self, t: f64) -> [f64; 3] {
        minkowski_cartan_frame(self, t).1.components
    }

    /// Analytic sampling on `n` points of `[t₀, t₁]`.
    pub fn curve_rep(&self, t0: f64, t1: f64, n: usize) -> Result<CurveRep> {
        let me = *self;
        let tangent: VectorFn = Arc::new(move |t| me.tangent(t));
        let position: VectorFn = Arc::new(move |t| me.position(t));
        CurveRep::analytic(tangent, Some(position), t0, t1, n)
    }
}

/// `(N, W)` of the Cartan frame at `t`:
///
/// ```text
/// N = ξ/a − Ċ/(2a²)
/// W = −ρ(ξ − Ċ/a − [2a/(E² − a⁴E⁻²)]φĊ)
/// ```
///
/// Where `E² = a⁴E⁻²` (so `b = 0`) the bracket is singular and the regular
/// form `W = αξ − (α/a)Ċ + γφĊ` is used.
pub fn minkowski_cartan_frame(curve: &MinkowskiCartanCurve, t: f64) -> (Tangent3, Tangent3) {
    let a = curve.a;
    let c = curve.tangent(t);
    let pc = curve.phi_tangent(t);
    let xi = [0.0, 0.0, 1.0];
    let n = std::array::from_fn(|i| xi[i] / a - c[i] / (2.0 * a * a));
    let (num, den) = curve.rho_parts(t);
    let w = if num.abs() > 1e-12 * den {
        let rho = num / den;
        let k = 2.0 * a / num;
        std::array::from_fn(|i| -rho * (xi[i] - c[i] / a - k * pc[i]))
    } else {
        let d = distinguished_coefficients(a, curve.b(t)).expect("a is nonzero");
        std::array::from_fn(|i| d.alpha * xi[i] + d.beta * c[i] + d.gamma * pc[i])
    };
    (Tangent3::new(n, Basis::Coordinate), Tangent3::new(w, Basis::Coordinate))
}
