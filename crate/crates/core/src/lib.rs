//! Algebraic-geometric structure of pure multi-qubit states.
//!
//! A state on `m` qubits is separable exactly when it lies on the Segre
//! variety, the common zero set of the 2×2 minors of its `m` flattenings.
//! This crate evaluates those minors, relates the two-qubit minor to the
//! deformation parameter of the conifold, checks the ε/Λ rewriting of the
//! minors as commutation relations, and implements the quantum plane
//! `ℂ_q[u, v]` by rewriting.
//!
//! Everything is generic over a real field implementing [`Real`]:
//! [`BigRational`] for exact arithmetic, `f64`/`f32` for floating point.
//! The aliases below fix the common choices.

pub mod conifold;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod matrix;
pub mod ncg;
pub mod qplane;
pub mod random;
pub mod scalar;
pub mod segre;
pub mod state;

pub use num_rational::BigRational;

pub use conifold::{deformation, ConifoldPoint, RealSplit};
pub use error::{Error, Result};
pub use matrix::{Mat2, SquareMatrix};
pub use ncg::{Lambda, PhiTensor, RMatrix, RMatrixKind, RowPair};
pub use qplane::{NormalForm, QPolynomial, Word};
pub use scalar::{approx_zero, AnyScalar, Backend, Real, Scalar, DEFAULT_FLOAT_TOL};
pub use segre::{
    flatten, is_separable, minor_count, minors, Flattening, MinorReport, Separability,
};
pub use state::{BasisIndex, MultiQubitState, QubitFactor};

/// Exact complex rational.
pub type ExactScalar = Scalar<BigRational>;
/// Double-precision complex.
pub type FloatScalar = Scalar<f64>;

pub type ExactState = MultiQubitState<BigRational>;
pub type FloatState = MultiQubitState<f64>;

pub type ExactFlattening = Flattening<BigRational>;
pub type FloatFlattening = Flattening<f64>;

pub type ExactLambda = Lambda<BigRational>;
pub type FloatLambda = Lambda<f64>;
