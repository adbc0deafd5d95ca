//! Exact symbolic engine for the quantum disc algebra, its two-dimensional
//! differential calculus, the quantum cone subalgebras, and the associated
//! integral.
//!
//! Everything is computed over the exact field `Q(q)` of rational functions
//! in the deformation parameter, so the identity checks in [`suite`] are
//! genuine proofs-by-normal-form rather than floating-point comparisons.

pub mod calculus;
pub mod cone;
pub mod disc;
pub mod error;
pub mod integral;
pub mod par;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod value;

pub use calculus::{d0, d1, project_circle, wedge, CircleElement, OneForm, TwoForm};
pub use cone::{
    cone_relation_sides, crit_values, dy_formula, ext_gcd_x, witness_volume, witness_zn2_omega,
    witness_zstar2_omega, ConeError, ConeParams, ConeWitness, PolyX,
};
pub use disc::DiscElement;
pub use error::{EvalError, ScalarError};
pub use integral::{
    cokernel_reduce, cone_integral, divergence, integral_lambda, CokernelDecomposition,
    CotangentFunctional,
};
pub use poly::IntPoly;
pub use report::{CheckRecord, Report, Status};
pub use scalar::Scalar;
pub use value::AlgValue;
