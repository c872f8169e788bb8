use crate::error::{GeometryError, Result};
use crate::linalg::Mat3;
use crate::scalar::{int, Scalar};
use crate::structure::Tangent3;

use super::lie::LieSlantVector;

/// `|tr A|` below this has no group-exponential closed form.
pub const TRACE_TOL: f64 = 1e-12;
/// Allowed `‖A² − (tr A)A‖`.
pub const PROJECTIVE_TOL: f64 = 1e-10;

/// The representation `π` of the Lie algebra with `c₁ = c₂ = c` on a
/// 3-dimensional space, evaluated at the frame of a slant null vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixRep<T = f64> {
    pub pi_e0: Mat3<T>,
    pub pi_e1: Mat3<T>,
    pub pi_e2: Mat3<T>,
    pub pi_x: Mat3<T>,
    pub pi_phi_x: Mat3<T>,
    pub pi_n1: Mat3<T>,
    pub pi_w1: Mat3<T>,
}

fn lower_block<T: Scalar>(row1: T, row2: T) -> Mat3<T> {
    let z = T::zero();
    Mat3::new([[z, z, z], [z, row1, row1], [z, row2, row2]])
}

/// `π(E₀) = 0`, `π(E₁)` has last row `(0, −c₁, −c₂)`, `π(E₂)` has middle
/// row `(0, c₁, c₂)`.
pub fn generators<T: Scalar>(c1: T, c2: T) -> [Mat3<T>; 3] {
    let z = T::zero();
    [
        Mat3::zero(),
        Mat3::new([[z, z, z], [z, z, z], [z, -c1, -c2]]),
        Mat3::new([[z, z, z], [z, c1, c2], [z, z, z]]),
    ]
}

/// `π` extended by linearity.
pub fn pi_of<T: Scalar>(gens: &[Mat3<T>; 3], v: &Tangent3<T>) -> Mat3<T> {
    (0..3).fold(Mat3::zero(), |acc, i| acc + gens[i].scale(v.components[i]))
}

pub fn lie_matrix_rep<T: Scalar>(v: &LieSlantVector<T>) -> MatrixRep<T> {
    let [pi_e0, pi_e1, pi_e2] = generators(v.c, v.c);
    let gens = [pi_e0, pi_e1, pi_e2];
    MatrixRep {
        pi_e0,
        pi_e1,
        pi_e2,
        pi_x: pi_of(&gens, &v.x),
        pi_phi_x: pi_of(&gens, &v.phi_x),
        pi_n1: pi_of(&gens, &v.n1),
        pi_w1: pi_of(&gens, &v.w1),
    }
}

impl<T: Scalar> MatrixRep<T> {
    /// The matrices written out in closed form in `c` and `a`:
    ///
    /// ```text
    /// π(X):  rows (c²a⁴+1)/(2a),   (1−c²a⁴)/(2a)
    /// π(φX): rows (c²a⁴−1)/(2a),   (c²a⁴+1)/(2a)
    /// π(N₁): rows −(c²a⁴+1)/(4a³), (c²a⁴−1)/(4a³)
    /// π(W₁): rows (1−c²a⁴)/(2a²),  (1+c²a⁴)/(2a²)
    /// ```
    pub fn displayed(c: T, a: T) -> Self {
        let one = T::one();
        let k = c * c * a * a * a * a;
        let two_a = int::<T>(2) * a;
        let four_a3 = int::<T>(4) * a * a * a;
        let two_a2 = int::<T>(2) * a * a;
        let [pi_e0, pi_e1, pi_e2] = generators(c, c);
        MatrixRep {
            pi_e0,
            pi_e1,
            pi_e2,
            pi_x: lower_block((k + one) / two_a, (one - k) / two_a),
            pi_phi_x: lower_block((k - one) / two_a, (k + one) / two_a),
            pi_n1: lower_block(-(k + one) / four_a3, (k - one) / four_a3),
            pi_w1: lower_block((one - k) / two_a2, (one + k) / two_a2),
        }
    }

    /// Largest entrywise gap to another representation.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        [
            self.pi_e0.max_abs_diff(&other.pi_e0),
            self.pi_e1.max_abs_diff(&other.pi_e1),
            self.pi_e2.max_abs_diff(&other.pi_e2),
            self.pi_x.max_abs_diff(&other.pi_x),
            self.pi_phi_x.max_abs_diff(&other.pi_phi_x),
            self.pi_n1.max_abs_diff(&other.pi_n1),
            self.pi_w1.max_abs_diff(&other.pi_w1),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// `‖[π(E₁), π(E₂)] − π([E₁, E₂])‖` with `[E₁, E₂] = c₁E₁ + c₂E₂`, and
    /// `‖[π(E₀), π(Eᵢ)]‖` for the central `E₀`.
    pub fn homomorphism_residual(&self, c1: T, c2: T) -> f64 {
        let lhs = self.pi_e1.commutator(&self.pi_e2);
        let rhs = self.pi_e1.scale(c1) + self.pi_e2.scale(c2);
        lhs.max_abs_diff(&rhs)
            .max(self.pi_e0.commutator(&self.pi_e1).max_abs())
            .max(self.pi_e0.commutator(&self.pi_e2).max_abs())
    }

    /// `‖π(X)² − tr(π(X))·π(X)‖`
    pub fn projective_residual(&self) -> f64 {
        (self.pi_x * self.pi_x).max_abs_diff(&self.pi_x.scale(self.pi_x.trace()))
    }
}

/// `exp(A) = E + ((e^{tr A} − 1)/tr A)·A`, exact when `A² = (tr A)·A`.
pub fn group_exponential(a: &Mat3<f64>) -> Result<Mat3<f64>> {
    let tr = a.trace();
    if tr.abs() < TRACE_TOL {
        return Err(GeometryError::TraceZero);
    }
    let residual = (*a * *a).max_abs_diff(&a.scale(tr));
    if !(residual <= PROJECTIVE_TOL) {
        return Err(GeometryError::NotProjectiveFamily { residual });
    }
    Ok(Mat3::identity() + a.scale(tr.exp_m1() / tr))
}

/// `Π(C(t)) = exp(π(tX))`; the identity at `t = 0`.
pub fn group_curve<T: Scalar>(v: &LieSlantVector<T>, t: f64) -> Result<Mat3<f64>> {
    if t == 0.0 {
        return Ok(Mat3::identity());
    }
    let pi_x = lie_matrix_rep(&v.to_f64()).pi_x;
    group_exponential(&pi_x.scale(t))
}

/// `Π(C(t)) = E + a(e^{t/a} − 1)·π(X)`, written out entrywise.
pub fn group_curve_closed_form<T: Scalar>(v: &LieSlantVector<T>, t: f64) -> Mat3<f64> {
    let (c, a) = (v.c.to_f64(), v.a.to_f64());
    let k = c * c * a.powi(4);
    let f = (t / a).exp_m1();
    let top = f * (k + 1.0) / 2.0;
    let bottom = f * (1.0 - k) / 2.0;
    Mat3::new([[1.0, 0.0, 0.0], [0.0, 1.0 + top, top], [0.0, bottom, 1.0 + bottom]])
}
