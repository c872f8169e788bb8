//! Closed-form Cartan framed slant null curves.
//!
//! * [`minkowski`]: the two families `C₁`, `C₂` in the flat model.
//! * [`lie`]: the left-invariant slant null direction on the Lie group model
//!   with `c₁ = c₂`.
//! * [`matrix_rep`]: its 3×3 matrix representation and group exponential.

pub mod lie;
pub mod matrix_rep;
pub mod minkowski;

pub use lie::{make_lie_slant_vector, LieSlantVector};
pub use matrix_rep::{group_curve, group_curve_closed_form, group_exponential, lie_matrix_rep, MatrixRep};
pub use minkowski::{make_minkowski_curve, minkowski_cartan_frame, Branch, MinkowskiCartanCurve};
