//! Fixed-size 3×3 linear algebra over any [`Scalar`].

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::scalar::{int, Scalar};

/// Row-major 3×3 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3<T> {
    pub rows: [[T; 3]; 3],
}

impl<T: Scalar> Mat3<T> {
    pub fn new(rows: [[T; 3]; 3]) -> Self {
        Self { rows }
    }

    pub fn zero() -> Self {
        Self::new([[T::zero(); 3]; 3])
    }

    pub fn identity() -> Self {
        Self::diag([T::one(); 3])
    }

    pub fn diag(d: [T; 3]) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.rows[i][i] = d[i];
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: [[T; 3]; 3]) -> Self {
        let mut m = Self::zero();
        for (j, col) in cols.iter().enumerate() {
            for i in 0..3 {
                m.rows[i][j] = col[i];
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> [T; 3] {
        [self.rows[0][j], self.rows[1][j], self.rows[2][j]]
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.rows[j][i] = self.rows[i][j];
            }
        }
        m
    }

    pub fn mul_vec(&self, v: [T; 3]) -> [T; 3] {
        let r = &self.rows;
        [
            r[0][0] * v[0] + r[0][1] * v[1] + r[0][2] * v[2],
            r[1][0] * v[0] + r[1][1] * v[1] + r[1][2] * v[2],
            r[2][0] * v[0] + r[2][1] * v[1] + r[2][2] * v[2],
        ]
    }

    pub fn scale(&self, s: T) -> Self {
        let mut m = *self;
        m.rows.iter_mut().flatten().for_each(|x| *x = *x * s);
        m
    }

    pub fn trace(&self) -> T {
        self.rows[0][0] + self.rows[1][1] + self.rows[2][2]
    }

    pub fn det(&self) -> T {
        let m = &self.rows;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Sum of the principal 2×2 minors (second invariant).
    pub fn principal_minor_sum(&self) -> T {
        let m = &self.rows;
        (m[0][0] * m[1][1] - m[0][1] * m[1][0])
            + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
            + (m[1][1] * m[2][2] - m[1][2] * m[2][1])
    }

    /// Largest absolute 2×2 minor, as a float.
    pub fn max_minor_2x2(&self) -> f64 {
        let m = &self.rows;
        let mut best = 0.0f64;
        for (r0, r1) in [(0, 1), (0, 2), (1, 2)] {
            for (c0, c1) in [(0, 1), (0, 2), (1, 2)] {
                let minor = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
                best = best.max(minor.magnitude());
            }
        }
        best
    }

    /// Closed-form inverse via the adjugate; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == T::zero() {
            return None;
        }
        let m = &self.rows;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
        };
        let adj = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        Some(Self::new(adj).scale(T::one() / d))
    }

    /// Matrix commutator `self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn max_abs(&self) -> f64 {
        self.rows
            .iter()
            .flatten()
            .fold(0.0, |acc, x| acc.max(x.magnitude()))
    }

    /// Max absolute entrywise difference, as a float.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Symmetry defect `max |m_ij − m_ji|`.
    pub fn asymmetry(&self) -> f64 {
        self.max_abs_diff(&self.transpose())
    }

    /// Signature `(positive, negative)` of a symmetric matrix.
    ///
    /// The characteristic polynomial of a real symmetric matrix has only real
    /// roots, so Descartes' rule of signs counts them exactly; no eigensolver
    /// is needed and the count is exact over the rationals.
    pub fn signature(&self) -> (usize, usize) {
        // p(x) = x³ − c2·x² + c1·x − c0
        let c2 = self.trace();
        let c1 = self.principal_minor_sum();
        let c0 = self.det();
        let positive = sign_changes(&[T::one(), -c2, c1, -c0]);
        let negative = sign_changes(&[-T::one(), -c2, -c1, -c0]);
        (positive, negative)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Mat3<U> {
        let mut out = Mat3::<U>::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.rows[i][j] = f(self.rows[i][j]);
            }
        }
        out
    }

    pub fn to_f64(&self) -> Mat3<f64> {
        self.map(Scalar::to_f64)
    }
}

fn sign_changes<T: Scalar>(coeffs: &[T]) -> usize {
    let signs: Vec<bool> = coeffs
        .iter()
        .filter(|c| **c != T::zero())
        .map(|c| c.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

impl<T> Index<(usize, usize)> for Mat3<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.rows[i][j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat3<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.rows[i][j]
    }
}

impl<T: Scalar> Add for Mat3<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.rows[i][j] = self.rows[i][j] + rhs.rows[i][j];
            }
        }
        self
    }
}

impl<T: Scalar> Sub for Mat3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for Mat3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Mul for Mat3<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.rows[i][j] = (0..3).fold(T::zero(), |acc, k| acc + self.rows[i][k] * rhs.rows[k][j]);
            }
        }
        m
    }
}

// Plain component helpers, shared by tangent-vector code.

pub fn add3<T: Scalar>(u: [T; 3], v: [T; 3]) -> [T; 3] {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

pub fn sub3<T: Scalar>(u: [T; 3], v: [T; 3]) -> [T; 3] {
    [u[0] - v[0], u[1] - v[1], u[2] - v[2]]
}

pub fn scale3<T: Scalar>(s: T, v: [T; 3]) -> [T; 3] {
    [s * v[0], s * v[1], s * v[2]]
}

pub fn dot3<T: Scalar>(u: [T; 3], v: [T; 3]) -> T {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub fn max_abs3<T: Scalar>(v: [T; 3]) -> f64 {
    v.iter().fold(0.0, |acc, x| acc.max(x.magnitude()))
}

pub fn norm3(v: [f64; 3]) -> f64 {
    dot3(v, v).sqrt()
}

/// `n·v` for a small integer `n`.
pub fn times3<T: Scalar>(n: i64, v: [T; 3]) -> [T; 3] {
    scale3(int(n), v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    #[test]
    fn inverse_of_lorentz_diagonal() {
        let g = Mat3::<f64>::diag([1.0, 1.0, -1.0]);
        assert_eq!(g.inverse().unwrap(), g);
        assert!(Mat3::<f64>::zero().inverse().is_none());
    }

    #[test]
    fn inverse_round_trip_rational() {
        let m = Mat3::new([
            [ratio(2, 1), ratio(1, 3), ratio(0, 1)],
            [ratio(-1, 2), ratio(5, 1), ratio(7, 4)],
            [ratio(1, 1), ratio(0, 1), ratio(-3, 1)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m * inv, Mat3::<Rational>::identity());
    }

    #[test]
    fn signature_counts() {
        assert_eq!(Mat3::<f64>::diag([-1.0, 1.0, 1.0]).signature(), (2, 1));
        assert_eq!(Mat3::<f64>::diag([1.0, 1.0, 1.0]).signature(), (3, 0));
        assert_eq!(Mat3::<f64>::diag([1.0, 0.0, -1.0]).signature(), (1, 1));
        let off = Mat3::<f64>::new([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        assert_eq!(off.signature(), (2, 1));
    }

    #[test]
    fn commutator_is_antisymmetric() {
        let a = Mat3::<f64>::new([[0.0, 1.0, 2.0], [3.0, 4.0, 5.0], [6.0, 7.0, 8.0]]);
        let b = Mat3::<f64>::diag([1.0, -2.0, 0.5]);
        assert_eq!(a.commutator(&b), -b.commutator(&a));
    }
}
