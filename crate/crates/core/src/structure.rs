//! Tangent vectors, metrics and the almost contact B-metric structure
//! `(φ, ξ, η, g)` on a 3-dimensional tangent space.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{GeometryError, Result};
use crate::linalg::{add3, dot3, max_abs3, scale3, sub3, Mat3};
use crate::scalar::Scalar;

/// Default tolerance for the structure axioms.
pub const STRUCTURE_TOL: f64 = 1e-10;

/// Which global frame the components of a vector refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Coordinate frame `∂/∂x₁, ∂/∂x₂, ∂/∂x₃` of ℝ³.
    Coordinate,
    /// Left-invariant frame `E₀, E₁, E₂` of a Lie group.
    LeftInvariant,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Coordinate => f.write_str("coordinate"),
            Basis::LeftInvariant => f.write_str("left-invariant"),
        }
    }
}

/// A tangent vector given by its components in a fixed global frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tangent3<T = f64> {
    pub components: [T; 3],
    pub basis: Basis,
}

impl<T: Scalar> Tangent3<T> {
    pub fn new(components: [T; 3], basis: Basis) -> Self {
        Self { components, basis }
    }

    pub fn zero(basis: Basis) -> Self {
        Self::new([T::zero(); 3], basis)
    }

    /// The `i`-th frame vector.
    pub fn unit(i: usize, basis: Basis) -> Self {
        let mut c = [T::zero(); 3];
        c[i] = T::one();
        Self::new(c, basis)
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(scale3(s, self.components), self.basis)
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        max_abs3(self.components)
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|c| c.is_finite_value())
    }

    pub fn to_f64(&self) -> Tangent3<f64> {
        Tangent3::new(self.components.map(Scalar::to_f64), self.basis)
    }
}

impl<T: Scalar> Add for Tangent3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.basis, rhs.basis, "mixing frames");
        Self::new(add3(self.components, rhs.components), self.basis)
    }
}

impl<T: Scalar> Sub for Tangent3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.basis, rhs.basis, "mixing frames");
        Self::new(sub3(self.components, rhs.components), self.basis)
    }
}

impl<T: Scalar> Neg for Tangent3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

/// Symmetric non-degenerate bilinear form of signature (2,1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Metric3<T = f64> {
    matrix: Mat3<T>,
}

impl<T: Scalar> Metric3<T> {
    /// Validates symmetry (to 1e-12), invertibility and Lorentzian signature.
    pub fn new(matrix: Mat3<T>) -> Result<Self> {
        Self::with_tolerance(matrix, 1e-12)
    }

    pub fn with_tolerance(matrix: Mat3<T>, symmetry_tol: f64) -> Result<Self> {
        let defect = matrix.asymmetry();
        if defect > symmetry_tol {
            return Err(GeometryError::Asymmetric { defect });
        }
        if matrix.det() == T::zero() {
            return Err(GeometryError::DegenerateMetric);
        }
        let (positive, negative) = matrix.signature();
        if (positive, negative) != (2, 1) {
            return Err(GeometryError::WrongSignature { positive, negative });
        }
        Ok(Self { matrix })
    }

    pub fn diag(d: [T; 3]) -> Result<Self> {
        Self::new(Mat3::diag(d))
    }

    pub fn matrix(&self) -> &Mat3<T> {
        &self.matrix
    }

    pub fn inverse(&self) -> Mat3<T> {
        // non-degeneracy is checked at construction
        self.matrix.inverse().expect("metric is non-degenerate")
    }

    pub fn signature(&self) -> (usize, usize) {
        self.matrix.signature()
    }

    /// `g(u, v)` on raw component arrays.
    pub fn apply(&self, u: [T; 3], v: [T; 3]) -> T {
        dot3(u, self.matrix.mul_vec(v))
    }
}

/// `g(u, v) = uᵀ·G·v`.
pub fn metric_eval<T: Scalar>(g: &Metric3<T>, u: &Tangent3<T>, v: &Tangent3<T>) -> T {
    g.apply(u.components, v.components)
}

/// The structure quadruple `(φ, ξ, η, g)` expressed in one global frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructureTensors<T = f64> {
    pub phi: Mat3<T>,
    pub xi: Tangent3<T>,
    pub eta: [T; 3],
    pub g: Metric3<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// `φ²v = −v + η(v)ξ`
    PhiSquared,
    /// `η(ξ) = 1`
    EtaOfXi,
    /// `η∘φ = 0`
    EtaPhi,
    /// `φξ = 0`
    PhiXi,
    /// `rank φ = 2`
    PhiRank,
    /// `g(φu, φv) = −g(u, v) + η(u)η(v)`
    BMetric,
    /// `η(v) = g(v, ξ)`
    EtaMetricDual,
    /// `g(ξ, ξ) = 1`
    XiUnit,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::PhiSquared,
        Axiom::EtaOfXi,
        Axiom::EtaPhi,
        Axiom::PhiXi,
        Axiom::PhiRank,
        Axiom::BMetric,
        Axiom::EtaMetricDual,
        Axiom::XiUnit,
    ];

    pub fn describe(&self) -> &'static str {
        match self {
            Axiom::PhiSquared => "phi^2 = -id + eta(x)xi",
            Axiom::EtaOfXi => "eta(xi) = 1",
            Axiom::EtaPhi => "eta o phi = 0",
            Axiom::PhiXi => "phi xi = 0",
            Axiom::PhiRank => "rank(phi) = 2",
            Axiom::BMetric => "g(phi u, phi v) = -g(u,v) + eta(u)eta(v)",
            Axiom::EtaMetricDual => "eta(v) = g(v, xi)",
            Axiom::XiUnit => "g(xi, xi) = 1",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    pub residuals: Vec<(Axiom, f64)>,
    pub tolerance: f64,
}

impl StructureReport {
    pub fn passes(&self) -> bool {
        self.residuals.iter().all(|(_, r)| *r < self.tolerance)
    }

    pub fn residual(&self, axiom: Axiom) -> f64 {
        self.residuals
            .iter()
            .find(|(a, _)| *a == axiom)
            .map(|(_, r)| *r)
            .unwrap_or(f64::NAN)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, (_, r)| m.max(*r))
    }
}

impl<T: Scalar> StructureTensors<T> {
    pub fn new(phi: Mat3<T>, xi: Tangent3<T>, eta: [T; 3], g: Metric3<T>) -> Self {
        Self { phi, xi, eta, g }
    }

    pub fn basis(&self) -> Basis {
        self.xi.basis
    }

    pub fn eta_of(&self, v: &Tangent3<T>) -> T {
        dot3(self.eta, v.components)
    }

    pub fn metric(&self, u: &Tangent3<T>, v: &Tangent3<T>) -> T {
        metric_eval(&self.g, u, v)
    }

    /// Residuals of every defining relation, with the default tolerance.
    pub fn check(&self) -> StructureReport {
        check_structure(self, STRUCTURE_TOL)
    }
}

/// Evaluates every axiom of an almost contact B-metric structure on the frame
/// vectors and reports the largest residual of each.
pub fn check_structure<T: Scalar>(s: &StructureTensors<T>, tolerance: f64) -> StructureReport {
    let phi = s.phi;
    let g = *s.g.matrix();
    let xi = s.xi.components;
    let eta = s.eta;
    let outer = |u: [T; 3], v: [T; 3]| {
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.rows[i][j] = u[i] * v[j];
            }
        }
        m
    };

    let phi_sq = (phi * phi + Mat3::identity() - outer(xi, eta)).max_abs();
    let eta_xi = (dot3(eta, xi) - T::one()).magnitude();
    let eta_phi = max_abs3(phi.transpose().mul_vec(eta));
    let phi_xi = max_abs3(phi.mul_vec(xi));
    let rank = if phi.max_minor_2x2() > tolerance {
        phi.det().magnitude()
    } else {
        1.0
    };
    let b_metric = (phi.transpose() * g * phi + g - outer(eta, eta)).max_abs();
    let dual = max_abs3(sub3(eta, g.mul_vec(xi)));
    let unit = (dot3(xi, g.mul_vec(xi)) - T::one()).magnitude();

    StructureReport {
        residuals: vec![
            (Axiom::PhiSquared, phi_sq),
            (Axiom::EtaOfXi, eta_xi),
            (Axiom::EtaPhi, eta_phi),
            (Axiom::PhiXi, phi_xi),
            (Axiom::PhiRank, rank),
            (Axiom::BMetric, b_metric),
            (Axiom::EtaMetricDual, dual),
            (Axiom::XiUnit, unit),
        ],
        tolerance,
    }
}

/// The associated metric `g̃(u, v) = g(u, φv) + η(u)η(v)`.
pub fn associated_metric<T: Scalar>(s: &StructureTensors<T>) -> Result<Metric3<T>> {
    let mut m = *s.g.matrix() * s.phi;
    for i in 0..3 {
        for j in 0..3 {
            m.rows[i][j] = m.rows[i][j] + s.eta[i] * s.eta[j];
        }
    }
    Metric3::with_tolerance(m, STRUCTURE_TOL)
}

pub fn apply_phi<T: Scalar>(s: &StructureTensors<T>, v: &Tangent3<T>) -> Tangent3<T> {
    Tangent3::new(s.phi.mul_vec(v.components), v.basis)
}
