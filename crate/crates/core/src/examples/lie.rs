use crate::error::{GeometryError, Result};
use crate::frenet::distinguished_coefficients;
use crate::scalar::{int, Scalar};
use crate::structure::{Basis, Tangent3};

/// The slant null vector `X = (p, q, r)` on the Lie group model with
/// `c₁ = c₂ = c`, chosen so that `exp(tX)` is Cartan framed:
///
/// ```text
/// p = a,  q = (c²a⁴ − 1)/(2ca),  r = (c²a⁴ + 1)/(2ca)
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LieSlantVector<T = f64> {
    pub c: T,
    pub a: T,
    pub p: T,
    pub q: T,
    pub r: T,
    pub x: Tangent3<T>,
    pub phi_x: Tangent3<T>,
    pub n1: Tangent3<T>,
    pub w1: Tangent3<T>,
}

/// Requires `ca > 0` and `c²a⁴ ≠ 1` (equivalently `b ≠ 0`).
pub fn make_lie_slant_vector<T: Scalar>(c: T, a: T) -> Result<LieSlantVector<T>> {
    let zero = T::zero();
    if a == zero {
        return Err(GeometryError::ZeroSlant);
    }
    if !(c * a > zero) {
        return Err(GeometryError::OrientationDomain);
    }
    let c2a4 = c * c * a * a * a * a;
    if c2a4 == T::one() {
        return Err(GeometryError::DegenerateB);
    }
    let two_ca = int::<T>(2) * c * a;
    let p = a;
    let q = (c2a4 - T::one()) / two_ca;
    let r = (c2a4 + T::one()) / two_ca;
    let li = |v: [T; 3]| Tangent3::new(v, Basis::LeftInvariant);
    let x = li([p, q, r]);
    let phi_x = li([zero, -r, q]);
    let b = int::<T>(-2) * q * r;
    let d = distinguished_coefficients(a, b)?;
    let xi = li([T::one(), zero, zero]);
    let w1 = xi.scale(d.alpha) + x.scale(d.beta) + phi_x.scale(d.gamma);
    let n1 = xi.scale(d.lambda) + x.scale(d.mu);
    Ok(LieSlantVector {
        c,
        a,
        p,
        q,
        r,
        x,
        phi_x,
        n1,
        w1,
    })
}

impl<T: Scalar> LieSlantVector<T> {
    /// `b = g(X, φX) = −2qr`
    pub fn b(&self) -> T {
        int::<T>(-2) * self.q * self.r
    }

    /// `|ca√(a² + q²) − 1 − caq|`, which vanishes for the solution.
    pub fn defining_residual(&self) -> Result<f64> {
        let (c, a, q) = (self.c, self.a, self.q);
        let root = (a * a + q * q)
            .sqrt_checked()
            .ok_or(GeometryError::NotRepresentable("sqrt(a^2 + q^2)"))?;
        Ok((c * a * root - T::one() - c * a * q).magnitude())
    }

    /// `W₁` in the printed form
    /// `((c⁴a⁸ − 1)/(c⁴a⁸ + 1))(ξ − X/a + (2c²a³/(c⁴a⁸ − 1))φX)`.
    pub fn w1_displayed(&self) -> Tangent3<T> {
        let (c, a) = (self.c, self.a);
        let c2 = c * c;
        let a3 = a * a * a;
        let k = c2 * c2 * a3 * a3 * a * a;
        let xi = Tangent3::new([T::one(), T::zero(), T::zero()], Basis::LeftInvariant);
        let inner = xi - self.x.scale(T::one() / a) + self.phi_x.scale(int::<T>(2) * c2 * a3 / (k - T::one()));
        inner.scale((k - T::one()) / (k + T::one()))
    }

    pub fn to_f64(&self) -> LieSlantVector<f64> {
        LieSlantVector {
            c: self.c.to_f64(),
            a: self.a.to_f64(),
            p: self.p.to_f64(),
            q: self.q.to_f64(),
            r: self.r.to_f64(),
            x: self.x.to_f64(),
            phi_x: self.phi_x.to_f64(),
            n1: self.n1.to_f64(),
            w1: self.w1.to_f64(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{lee_forms, ManifoldModel};
    use crate::scalar::{ratio, Rational};
    use proptest::prelude::*;

    fn li(v: [Rational; 3]) -> Tangent3<Rational> {
        Tangent3::new(v, Basis::LeftInvariant)
    }

    #[test]
    fn worked_example_is_exact() {
        let v = make_lie_slant_vector(ratio(1, 1), ratio(2, 1)).unwrap();
        assert_eq!(v.x, li([ratio(2, 1), ratio(15, 4), ratio(17, 4)]));
        assert_eq!(v.phi_x, li([ratio(0, 1), ratio(-17, 4), ratio(15, 4)]));
        assert_eq!(v.b(), ratio(-255, 8));
        assert_eq!(v.w1, li([ratio(0, 1), ratio(-17, 8), ratio(-15, 8)]));
        assert_eq!(v.n1, li([ratio(1, 4), ratio(-15, 32), ratio(-17, 32)]));
        assert_eq!(v.w1_displayed(), v.w1);
        assert_eq!(v.defining_residual().unwrap(), 0.0);

        let s = (ratio(16, 1) + v.b() * v.b()).sqrt_checked().unwrap();
        assert_eq!(s, ratio(257, 8));

        let m = ManifoldModel::<Rational>::lie_group(ratio(1, 1), ratio(1, 1)).unwrap();
        assert_eq!(m.g(&v.x, &v.x), ratio(0, 1));
        assert_eq!(m.eta(&v.x), ratio(2, 1));
        assert_eq!(m.phi(&v.x), v.phi_x);
        assert_eq!(m.nabla(&v.x, &v.x), v.w1);
        assert_eq!(m.nabla(&v.x, &v.n1), v.w1.scale(ratio(-1, 8)));
        let lee = lee_forms(&m);
        assert_eq!(lee.theta_of(&v.x), ratio(16, 1));
        assert_eq!(lee.theta_of(&v.phi_x), ratio(-1, 1));
    }

    #[test]
    fn domain_errors() {
        assert_eq!(make_lie_slant_vector(1.0, 1.0), Err(GeometryError::DegenerateB));
        assert_eq!(make_lie_slant_vector(-1.0, -1.0), Err(GeometryError::DegenerateB));
        assert_eq!(make_lie_slant_vector(1.0, -2.0), Err(GeometryError::OrientationDomain));
        assert_eq!(make_lie_slant_vector(0.0, 2.0), Err(GeometryError::OrientationDomain));
        assert_eq!(make_lie_slant_vector(1.0, 0.0), Err(GeometryError::ZeroSlant));
    }

    #[test]
    fn float_matches_rational() {
        let f = make_lie_slant_vector(1.0, 2.0).unwrap();
        let r = make_lie_slant_vector(ratio(1, 1), ratio(2, 1)).unwrap().to_f64();
        assert_eq!(f, r);
    }

    proptest! {
        #[test]
        fn solution_properties(c in 0.2f64..3.0, a in 0.2f64..3.0, neg in any::<bool>()) {
            let (c, a) = if neg { (-c, -a) } else { (c, a) };
            prop_assume!((c * c * a.powi(4) - 1.0).abs() > 1e-3);
            let v = make_lie_slant_vector(c, a).unwrap();
            let scale = 1.0 + v.q.abs() + v.r.abs();
            prop_assert!((v.p * v.p + v.q * v.q - v.r * v.r).abs() < 1e-12 * scale * scale);
            prop_assert!(v.defining_residual().unwrap() < 1e-12 * scale * (1.0 + (c * a).abs()));
            // W₁ = (0, −r/a, −q/a)
            let want = [0.0, -v.r / a, -v.q / a];
            for i in 0..3 {
                prop_assert!((v.w1.components[i] - want[i]).abs() < 1e-9 * scale);
                prop_assert!((v.w1_displayed().components[i] - want[i]).abs() < 1e-9 * scale);
            }
            let m = ManifoldModel::lie_group(c, c).unwrap();
            let acc = m.nabla(&v.x, &v.x);
            prop_assert!((acc - v.w1).max_abs() < 1e-9 * scale * scale);
        }
    }
}
