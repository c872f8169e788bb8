//! The two concrete manifold models and their Levi-Civita connections.
//!
//! * flat ℝ³ with the cosymplectic B-metric structure (`F ≡ 0`), written in
//!   the coordinate frame;
//! * the Lie group with algebra `[E₀,E₁] = [E₀,E₂] = 0`,
//!   `[E₁,E₂] = c₁E₁ + c₂E₂`, carrying a left-invariant structure of class F₁,
//!   written in the left-invariant frame `{E₀, E₁, E₂}`.
//!
//! Both are globally framed and homogeneous: the connection coefficients are
//! constants in the chosen frame and are computed once, from the Koszul
//! formula, when the model is built.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{GeometryError, Result};
use crate::linalg::{add3, max_abs3, scale3, sub3, Mat3};
use crate::scalar::{int, Scalar};
use crate::structure::{apply_phi, Basis, Metric3, StructureTensors, Tangent3};

/// Default tolerance used by [`classify`].
pub const CLASSIFY_TOL: f64 = 1e-8;

/// `φ: ∂₁ ↦ ∂₂, ∂₂ ↦ −∂₁, ∂₃ ↦ 0`, `ξ = ∂₃`, `η = dx₃`,
/// `g = diag(−1, 1, 1)`.
pub fn flat_structure<T: Scalar>() -> StructureTensors<T> {
    let (o, l) = (T::zero(), T::one());
    let phi = Mat3::from_columns([[o, l, o], [-l, o, o], [o, o, o]]);
    let g = Metric3::diag([-l, l, l]).expect("flat metric is Lorentzian");
    StructureTensors::new(phi, Tangent3::new([o, o, l], Basis::Coordinate), [o, o, l], g)
}

/// `φE₀ = 0, φE₁ = E₂, φE₂ = −E₁`, `ξ = E₀`, `η = E⁰`,
/// `g = diag(1, 1, −1)` in `{E₀, E₁, E₂}`.
pub fn lie_structure<T: Scalar>() -> StructureTensors<T> {
    let (o, l) = (T::zero(), T::one());
    let phi = Mat3::from_columns([[o, o, o], [o, o, l], [o, -l, o]]);
    let g = Metric3::diag([l, l, -l]).expect("Lie metric is Lorentzian");
    StructureTensors::new(phi, Tangent3::new([l, o, o], Basis::LeftInvariant), [l, o, o], g)
}

/// Structure constants of a frame: `[Eᵢ, Eⱼ] = Σₖ constants[i][j][k] Eₖ`.
///
/// A coordinate frame has all brackets zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Brackets<T = f64> {
    constants: [[[T; 3]; 3]; 3],
}

impl<T: Scalar> Brackets<T> {
    pub fn zero() -> Self {
        Self {
            constants: [[[T::zero(); 3]; 3]; 3],
        }
    }

    /// The algebra `g₁`: `[E₁, E₂] = c₁E₁ + c₂E₂`, all other brackets zero.
    pub fn g1(c1: T, c2: T) -> Self {
        Self::zero().with(1, 2, [T::zero(), c1, c2])
    }

    /// Sets `[Eᵢ, Eⱼ] = value` (and `[Eⱼ, Eᵢ] = −value`).
    pub fn with(mut self, i: usize, j: usize, value: [T; 3]) -> Self {
        self.constants[i][j] = value;
        self.constants[j][i] = scale3(-T::one(), value);
        self
    }

    pub fn of_frame(&self, i: usize, j: usize) -> [T; 3] {
        self.constants[i][j]
    }

    /// Bracket of two constant-coefficient fields.
    pub fn bracket(&self, u: [T; 3], v: [T; 3]) -> [T; 3] {
        let mut out = [T::zero(); 3];
        for i in 0..3 {
            for j in 0..3 {
                out = add3(out, scale3(u[i] * v[j], self.constants[i][j]));
            }
        }
        out
    }
}

/// Connection coefficients in a fixed frame:
/// `∇_{Eᵢ} Eⱼ = Σₖ Γᵏᵢⱼ Eₖ`, stored as `nabla[i][j] = (Γ⁰ᵢⱼ, Γ¹ᵢⱼ, Γ²ᵢⱼ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConnectionModel<T = f64> {
    nabla: [[[T; 3]; 3]; 3],
}

impl<T: Scalar> ConnectionModel<T> {
    pub fn zero() -> Self {
        Self {
            nabla: [[[T::zero(); 3]; 3]; 3],
        }
    }

    /// `Γᵏᵢⱼ`.
    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> T {
        self.nabla[i][j][k]
    }

    /// `∇_{Eᵢ} Eⱼ` as components.
    pub fn of_frame(&self, i: usize, j: usize) -> [T; 3] {
        self.nabla[i][j]
    }

    /// `Γ(u, v) = Σ uⁱ vʲ ∇_{Eᵢ}Eⱼ`, i.e. `∇_u v` for constant-coefficient `v`.
    pub fn gamma(&self, u: [T; 3], v: [T; 3]) -> [T; 3] {
        let mut out = [T::zero(); 3];
        for i in 0..3 {
            for j in 0..3 {
                let w = u[i] * v[j];
                if w != T::zero() {
                    out = add3(out, scale3(w, self.nabla[i][j]));
                }
            }
        }
        out
    }

    /// `max |∇ᵢEⱼ − ∇ⱼEᵢ − [Eᵢ,Eⱼ]|`.
    pub fn torsion_residual(&self, brackets: &Brackets<T>) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let t = sub3(sub3(self.nabla[i][j], self.nabla[j][i]), brackets.of_frame(i, j));
                worst = worst.max(max_abs3(t));
            }
        }
        worst
    }

    /// `max |g(∇ᵢEⱼ, Eₖ) + g(Eⱼ, ∇ᵢEₖ)|` for a constant metric.
    pub fn metric_compatibility_residual(&self, g: &Metric3<T>) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let e_j = Tangent3::<T>::unit(j, Basis::Coordinate).components;
                    let e_k = Tangent3::<T>::unit(k, Basis::Coordinate).components;
                    let r = g.apply(self.nabla[i][j], e_k) + g.apply(e_j, self.nabla[i][k]);
                    worst = worst.max(r.magnitude());
                }
            }
        }
        worst
    }
}

/// Levi-Civita connection of a constant metric in a frame with the given
/// structure constants:
///
/// `2g(∇ᵢEⱼ, Eₖ) = g([Eᵢ,Eⱼ],Eₖ) − g([Eⱼ,Eₖ],Eᵢ) + g([Eₖ,Eᵢ],Eⱼ)`.
pub fn koszul_from_brackets<T: Scalar>(g: &Metric3<T>, brackets: &Brackets<T>) -> ConnectionModel<T> {
    let g_inv = g.inverse();
    let unit = |i: usize| Tangent3::<T>::unit(i, Basis::Coordinate).components;
    let half = T::one() / int::<T>(2);
    let mut conn = ConnectionModel::zero();
    for i in 0..3 {
        for j in 0..3 {
            // lowered components g(∇ᵢEⱼ, Eₖ)
            let mut lowered = [T::zero(); 3];
            for (k, slot) in lowered.iter_mut().enumerate() {
                let v = g.apply(brackets.of_frame(i, j), unit(k))
                    - g.apply(brackets.of_frame(j, k), unit(i))
                    + g.apply(brackets.of_frame(k, i), unit(j));
                *slot = v * half;
            }
            conn.nabla[i][j] = g_inv.mul_vec(lowered);
        }
    }
    conn
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModelKind {
    FlatCosymplectic,
    LieGroup { c1: f64, c2: f64 },
    Custom,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::FlatCosymplectic => f.write_str("flat"),
            ModelKind::LieGroup { c1, c2 } => write!(f, "lie(c1={c1}, c2={c2})"),
            ModelKind::Custom => f.write_str("custom"),
        }
    }
}

/// A globally framed almost contact B-metric 3-manifold with constant
/// structure coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ManifoldModel<T = f64> {
    pub kind: ModelKind,
    pub structure: StructureTensors<T>,
    pub brackets: Brackets<T>,
    pub connection: ConnectionModel<T>,
}

impl<T: Scalar> ManifoldModel<T> {
    /// Flat ℝ³ with the cosymplectic structure; all Christoffel symbols vanish.
    pub fn flat() -> Self {
        Self {
            kind: ModelKind::FlatCosymplectic,
            structure: flat_structure(),
            brackets: Brackets::zero(),
            connection: ConnectionModel::zero(),
        }
    }

    /// Lie group with `[E₁, E₂] = c₁E₁ + c₂E₂`.
    pub fn lie_group(c1: T, c2: T) -> Result<Self> {
        if c1 == T::zero() && c2 == T::zero() {
            return Err(GeometryError::ZeroLieParameters);
        }
        let mut model = Self::from_brackets(lie_structure(), Brackets::g1(c1, c2));
        model.kind = ModelKind::LieGroup {
            c1: c1.to_f64(),
            c2: c2.to_f64(),
        };
        Ok(model)
    }

    /// Arbitrary structure constants on a given structure; the connection
    /// comes from the Koszul formula.
    pub fn from_brackets(structure: StructureTensors<T>, brackets: Brackets<T>) -> Self {
        let connection = koszul_from_brackets(&structure.g, &brackets);
        Self {
            kind: ModelKind::Custom,
            structure,
            brackets,
            connection,
        }
    }

    pub fn basis(&self) -> Basis {
        self.structure.basis()
    }

    pub fn tangent(&self, components: [T; 3]) -> Tangent3<T> {
        Tangent3::new(components, self.basis())
    }

    /// `∇_u v` for constant-coefficient `u`, `v`.
    pub fn nabla(&self, u: &Tangent3<T>, v: &Tangent3<T>) -> Tangent3<T> {
        Tangent3::new(self.connection.gamma(u.components, v.components), u.basis)
    }

    pub fn phi(&self, v: &Tangent3<T>) -> Tangent3<T> {
        apply_phi(&self.structure, v)
    }

    pub fn g(&self, u: &Tangent3<T>, v: &Tangent3<T>) -> T {
        self.structure.metric(u, v)
    }

    pub fn eta(&self, v: &Tangent3<T>) -> T {
        self.structure.eta_of(v)
    }

    pub fn xi(&self) -> Tangent3<T> {
        self.structure.xi
    }

    /// `max |∇_{Eᵢ} ξ|`.
    pub fn nabla_xi_residual(&self) -> f64 {
        (0..3)
            .map(|i| {
                let e = Tangent3::unit(i, self.basis());
                self.nabla(&e, &self.xi()).max_abs()
            })
            .fold(0.0, f64::max)
    }
}

impl ManifoldModel<f64> {
    /// Builds a model from `key=value` settings: `model = flat | lie`, plus
    /// `c1`, `c2` for the Lie group.
    pub fn from_config(settings: &BTreeMap<String, String>) -> Result<Self> {
        let get_f64 = |key: &str| -> Result<Option<f64>> {
            settings
                .get(key)
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| GeometryError::Config(format!("{key} must be a number, got {v:?}")))
                })
                .transpose()
        };
        match settings.get("model").map(|s| s.trim()) {
            None | Some("flat") => Ok(Self::flat()),
            Some("lie") => {
                let c1 = get_f64("c1")?.unwrap_or(0.0);
                let c2 = get_f64("c2")?.unwrap_or(0.0);
                Self::lie_group(c1, c2)
            }
            Some(other) => Err(GeometryError::Config(format!(
                "unknown model {other:?}, expected flat or lie"
            ))),
        }
    }
}

/// Parses plain `key = value` lines. Blank lines and `#` comments are ignored.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| GeometryError::Config(format!("line {}: expected key=value", n + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// Levi-Civita connection of a model, via [`koszul_from_brackets`].
pub fn koszul_connection<T: Scalar>(model: &ManifoldModel<T>) -> ConnectionModel<T> {
    koszul_from_brackets(&model.structure.g, &model.brackets)
}

/// `(∇_along V)ᵏ = (dV/ds)ᵏ + Γᵏᵢⱼ alongⁱ Vʲ`, where `field_derivative` holds
/// the directional derivative of the components of `V` along `along`.
pub fn covariant_derivative<T: Scalar>(
    conn: &ConnectionModel<T>,
    along: &Tangent3<T>,
    field_value: &Tangent3<T>,
    field_derivative: &Tangent3<T>,
) -> Tangent3<T> {
    let gamma = conn.gamma(along.components, field_value.components);
    Tangent3::new(add3(field_derivative.components, gamma), along.basis)
}

/// `F(u, v, w) = g((∇_u φ)v, w) = g(∇_u(φv) − φ(∇_u v), w)` for
/// constant-coefficient fields.
pub fn tensor_f<T: Scalar>(model: &ManifoldModel<T>, u: &Tangent3<T>, v: &Tangent3<T>, w: &Tangent3<T>) -> T {
    let phi_v = model.phi(v);
    let dphi = model.nabla(u, &phi_v) - model.phi(&model.nabla(u, v));
    model.g(&dphi, w)
}

/// The Lee forms `θ, θ*, ω` as covectors (values on the frame vectors).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeeForms<T = f64> {
    pub theta: [T; 3],
    pub theta_star: [T; 3],
    pub omega: [T; 3],
}

impl<T: Scalar> LeeForms<T> {
    pub fn theta_of(&self, v: &Tangent3<T>) -> T {
        crate::linalg::dot3(self.theta, v.components)
    }
}

/// `θ(v) = gⁱʲF(eᵢ,eⱼ,v)`, `θ*(v) = gⁱʲF(eᵢ,φeⱼ,v)`, `ω(v) = F(ξ,ξ,v)`,
/// summed over the full frame.
pub fn lee_forms<T: Scalar>(model: &ManifoldModel<T>) -> LeeForms<T> {
    let basis = model.basis();
    let e = |i: usize| Tangent3::<T>::unit(i, basis);
    let g_inv = model.structure.g.inverse();
    let xi = model.xi();
    let mut forms = LeeForms {
        theta: [T::zero(); 3],
        theta_star: [T::zero(); 3],
        omega: [T::zero(); 3],
    };
    for k in 0..3 {
        let v = e(k);
        for i in 0..3 {
            for j in 0..3 {
                let gij = g_inv[(i, j)];
                if gij == T::zero() {
                    continue;
                }
                forms.theta[k] = forms.theta[k] + gij * tensor_f(model, &e(i), &e(j), &v);
                forms.theta_star[k] = forms.theta_star[k] + gij * tensor_f(model, &e(i), &model.phi(&e(j)), &v);
            }
        }
        forms.omega[k] = tensor_f(model, &xi, &xi, &v);
    }
    forms
}

/// Right-hand side of the F₁ identity:
///
/// `½{g(u,φv)θ(φw) + g(φu,φv)θ(φ²w) + g(u,φw)θ(φv) + g(φu,φw)θ(φ²v)}`.
pub fn f1_form<T: Scalar>(
    model: &ManifoldModel<T>,
    theta: &LeeForms<T>,
    u: &Tangent3<T>,
    v: &Tangent3<T>,
    w: &Tangent3<T>,
) -> T {
    let phi = |x: &Tangent3<T>| model.phi(x);
    let th = |x: &Tangent3<T>| theta.theta_of(x);
    let sum = model.g(u, &phi(v)) * th(&phi(w))
        + model.g(&phi(u), &phi(v)) * th(&phi(&phi(w)))
        + model.g(u, &phi(w)) * th(&phi(v))
        + model.g(&phi(u), &phi(w)) * th(&phi(&phi(v)));
    sum / int::<T>(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManifoldClass {
    F0,
    F1,
    Neither,
}

impl fmt::Display for ManifoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldClass::F0 => f.write_str("F0"),
            ManifoldClass::F1 => f.write_str("F1"),
            ManifoldClass::Neither => f.write_str("neither"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub class: ManifoldClass,
    /// `max |F|` over the 27 frame triples.
    pub max_f: f64,
    /// `max |F − F₁-form|` over the same triples.
    pub f1_residual: f64,
    /// `max |∇_{Eᵢ} ξ|`.
    pub nabla_xi_residual: f64,
    pub tolerance: f64,
}

/// Decides F₀ / F₁ membership on the deterministic grid of frame triples.
///
/// F₁ requires both the F₁ identity and `∇ξ = 0`; the two are checked
/// independently.
pub fn classify<T: Scalar>(model: &ManifoldModel<T>, tolerance: f64) -> Classification {
    let basis = model.basis();
    let lee = lee_forms(model);
    let mut max_f = 0.0f64;
    let mut f1_residual = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let (u, v, w) = (
                    Tangent3::unit(i, basis),
                    Tangent3::unit(j, basis),
                    Tangent3::unit(k, basis),
                );
                let f = tensor_f(model, &u, &v, &w);
                max_f = max_f.max(f.magnitude());
                f1_residual = f1_residual.max((f - f1_form(model, &lee, &u, &v, &w)).magnitude());
            }
        }
    }
    let nabla_xi_residual = model.nabla_xi_residual();
    let class = if max_f < tolerance {
        ManifoldClass::F0
    } else if f1_residual < tolerance && nabla_xi_residual < tolerance {
        ManifoldClass::F1
    } else {
        ManifoldClass::Neither
    };
    Classification {
        class,
        max_f,
        f1_residual,
        nabla_xi_residual,
        tolerance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};
    use proptest::prelude::*;

    /// Independent oracle: assemble the 27 Koszul equations
    /// `2 Σₗ g_{lk} Γˡᵢⱼ = rhs(i,j,k)` as one dense linear system and solve it
    /// by Gaussian elimination.
    fn koszul_by_linear_solve(g: [[f64; 3]; 3], br: &Brackets<f64>) -> [[[f64; 3]; 3]; 3] {
        let n = 27;
        let idx = |l: usize, i: usize, j: usize| 9 * i + 3 * j + l;
        let mut a = vec![vec![0.0; n + 1]; n];
        let gm = |x: [f64; 3], y: [f64; 3]| -> f64 {
            (0..3).map(|p| (0..3).map(|q| x[p] * g[p][q] * y[q]).sum::<f64>()).sum()
        };
        let unit = |i: usize| {
            let mut v = [0.0; 3];
            v[i] = 1.0;
            v
        };
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let row = 9 * i + 3 * j + k;
                    for l in 0..3 {
                        a[row][idx(l, i, j)] = 2.0 * g[l][k];
                    }
                    a[row][n] = gm(br.of_frame(i, j), unit(k)) - gm(br.of_frame(j, k), unit(i))
                        + gm(br.of_frame(k, i), unit(j));
                }
            }
        }
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).unwrap())
                .unwrap();
            a.swap(col, piv);
            let p = a[col][col];
            for c in col..=n {
                a[col][c] /= p;
            }
            for r in 0..n {
                if r != col {
                    let f = a[r][col];
                    for c in col..=n {
                        a[r][c] -= f * a[col][c];
                    }
                }
            }
        }
        let mut out = [[[0.0; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    out[i][j][l] = a[idx(l, i, j)][n];
                }
            }
        }
        out
    }

    fn lie(c1: f64, c2: f64) -> ManifoldModel {
        ManifoldModel::lie_group(c1, c2).unwrap()
    }

    #[test]
    fn koszul_matches_linear_solve_oracle() {
        for (c1, c2) in [(1.0, 1.0), (0.3, -2.0), (0.0, 1.5)] {
            let m = lie(c1, c2);
            let oracle = koszul_by_linear_solve(m.structure.g.matrix().rows, &m.brackets);
            for i in 0..3 {
                for j in 0..3 {
                    for l in 0..3 {
                        assert!((m.connection.christoffel(l, i, j) - oracle[i][j][l]).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn koszul_hand_values() {
        let m = ManifoldModel::<Rational>::lie_group(ratio(3, 2), ratio(-1, 3)).unwrap();
        let (c1, c2) = (ratio(3, 2), ratio(-1, 3));
        let z = ratio(0, 1);
        assert_eq!(m.connection.of_frame(1, 1), [z, z, c1]);
        assert_eq!(m.connection.of_frame(1, 2), [z, c1, z]);
        assert_eq!(m.connection.of_frame(2, 1), [z, z, -c2]);
        assert_eq!(m.connection.of_frame(2, 2), [z, -c2, z]);
        for i in 0..3 {
            assert_eq!(m.connection.of_frame(i, 0), [z; 3]);
            assert_eq!(m.connection.of_frame(0, i), [z; 3]);
        }
        assert_eq!(koszul_connection(&m), m.connection);
    }

    #[test]
    fn zero_lie_parameters_rejected() {
        assert_eq!(
            ManifoldModel::<f64>::lie_group(0.0, 0.0).unwrap_err(),
            GeometryError::ZeroLieParameters
        );
    }

    #[test]
    fn connection_is_torsion_free_and_metric() {
        for m in [ManifoldModel::flat(), lie(1.0, 1.0), lie(-0.7, 2.5)] {
            assert!(m.connection.torsion_residual(&m.brackets) < 1e-12);
            assert!(m.connection.metric_compatibility_residual(&m.structure.g) < 1e-12);
        }
    }

    #[test]
    fn covariant_derivative_examples() {
        let flat = ManifoldModel::<f64>::flat();
        let v = flat.tangent([1.0, 2.0, 3.0]);
        let dv = flat.tangent([0.5, -1.0, 0.0]);
        assert_eq!(covariant_derivative(&flat.connection, &v, &v, &dv), dv);

        let (c1, c2) = (0.8, -1.3);
        let m = lie(c1, c2);
        let (p, q, r) = (0.4, 1.1, -2.0);
        let x = m.tangent([p, q, r]);
        let zero = Tangent3::zero(Basis::LeftInvariant);
        let got = covariant_derivative(&m.connection, &x, &x, &zero);
        let want = [0.0, q * r * c1 - r * r * c2, q * q * c1 - q * r * c2];
        for k in 0..3 {
            assert!((got.components[k] - want[k]).abs() < 1e-14);
        }
        let e0 = Tangent3::unit(0, Basis::LeftInvariant);
        assert_eq!(covariant_derivative(&m.connection, &e0, &x, &zero).max_abs(), 0.0);
    }

    #[test]
    fn flat_model_has_vanishing_f_and_lee_forms() {
        let m = ManifoldModel::<f64>::flat();
        let c = classify(&m, CLASSIFY_TOL);
        assert_eq!(c.class, ManifoldClass::F0);
        assert_eq!(c.max_f, 0.0);
        let lee = lee_forms(&m);
        assert_eq!(lee.theta, [0.0; 3]);
        assert_eq!(lee.theta_star, [0.0; 3]);
        assert_eq!(lee.omega, [0.0; 3]);
    }

    #[test]
    fn lie_model_lee_forms() {
        let (c1, c2) = (ratio(2, 3), ratio(-5, 1));
        let m = ManifoldModel::<Rational>::lie_group(c1, c2).unwrap();
        let lee = lee_forms(&m);
        assert_eq!(lee.theta, [ratio(0, 1), c1 * ratio(2, 1), c2 * ratio(2, 1)]);
        assert_eq!(lee.omega, [ratio(0, 1); 3]);
    }

    #[test]
    fn lie_model_is_f1_and_matches_closed_form() {
        let m = ManifoldModel::<Rational>::lie_group(ratio(1, 1), ratio(1, 1)).unwrap();
        let c = classify(&m, CLASSIFY_TOL);
        assert_eq!(c.class, ManifoldClass::F1);
        assert_eq!(c.f1_residual, 0.0);
        assert_eq!(c.nabla_xi_residual, 0.0);
        // F(E₁,E₁,E₁) equals the F₁ form
        let lee = lee_forms(&m);
        let e1 = Tangent3::unit(1, Basis::LeftInvariant);
        assert_eq!(tensor_f(&m, &e1, &e1, &e1), f1_form(&m, &lee, &e1, &e1, &e1));
        assert_eq!(tensor_f(&m, &e1, &e1, &e1), ratio(2, 1));
    }

    #[test]
    fn perturbed_brackets_leave_f1() {
        let brackets = Brackets::g1(1.0, 1.0).with(0, 1, [0.0, 0.0, 1.0]);
        let m = ManifoldModel::from_brackets(lie_structure(), brackets);
        let c = classify(&m, CLASSIFY_TOL);
        assert_eq!(c.class, ManifoldClass::Neither);
        assert!(c.nabla_xi_residual > 0.1);
    }

    #[test]
    fn config_parsing() {
        let kv = parse_key_values("# model\nmodel = lie\nc1=1\n c2 = 0.5 \n").unwrap();
        let m = ManifoldModel::from_config(&kv).unwrap();
        assert_eq!(m.kind, ModelKind::LieGroup { c1: 1.0, c2: 0.5 });
        let flat = ManifoldModel::from_config(&parse_key_values("model=flat").unwrap()).unwrap();
        assert_eq!(flat.kind, ModelKind::FlatCosymplectic);
        let zero = parse_key_values("model=lie\nc1=0\nc2=0").unwrap();
        assert_eq!(ManifoldModel::from_config(&zero).unwrap_err(), GeometryError::ZeroLieParameters);
        assert!(parse_key_values("nonsense").is_err());
        assert!(ManifoldModel::from_config(&parse_key_values("model=torus").unwrap()).is_err());
    }

    proptest! {
        #[test]
        fn f_is_symmetric_in_last_two_slots(
            c1 in -3.0f64..3.0, c2 in 0.1f64..3.0,
            u in prop::array::uniform3(-2.0f64..2.0),
            v in prop::array::uniform3(-2.0f64..2.0),
            w in prop::array::uniform3(-2.0f64..2.0),
        ) {
            let m = lie(c1, c2);
            let (u, v, w) = (m.tangent(u), m.tangent(v), m.tangent(w));
            let lhs = tensor_f(&m, &u, &v, &w);
            prop_assert!((lhs - tensor_f(&m, &u, &w, &v)).abs() < 1e-10);
            prop_assert!(tensor_f(&m, &u, &v, &m.xi()).abs() < 1e-12);
            let lee = lee_forms(&m);
            prop_assert!((lhs - f1_form(&m, &lee, &u, &v, &w)).abs() < 1e-10);
            prop_assert!(lee.theta[0].abs() < 1e-14);
            prop_assert!((lee.theta[1] - 2.0 * c1).abs() < 1e-12);
            prop_assert!((lee.theta[2] - 2.0 * c2).abs() < 1e-12);
        }
    }
}
