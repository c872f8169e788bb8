//! Frenet frames, curvature functions and Cartan framings of slant null
//! curves on 3-dimensional almost contact B-metric manifolds.
//!
//! The crate is organised bottom-up:
//!
//! * [`structure`]: tangent vectors, metrics and the structure `(φ, ξ, η, g)`;
//! * [`models`]: the flat cosymplectic model and the left-invariant Lie group
//!   model, with Koszul connections, the tensor `F`, Lee forms and class checks;
//! * [`curve`]: curve representations, slant/null certificates and `b = g(Ċ, φĊ)`;
//! * [`frenet`]: general and distinguished Frenet frames, curvatures, the
//!   geodesic criterion and Cartan frame verification;
//! * [`bsolver`]: the ODE for `b` that makes the distinguished frame Cartan;
//! * [`examples`]: closed-form curves and frames on both models, and the matrix
//!   representation of the Lie group example.

pub mod bsolver;
pub mod curve;
pub mod error;
pub mod examples;
pub mod frenet;
pub mod linalg;
pub mod models;
pub mod scalar;
pub mod structure;

pub use error::{GeometryError, Result};
pub use linalg::Mat3;
pub use models::{ManifoldClass, ManifoldModel};
pub use scalar::{Rational, Scalar};
pub use structure::{Basis, Metric3, StructureTensors, Tangent3};
