//! Scalar non-autonomous linear ODEs `y' = f(t) y`, `y(0) = 1`, solved through
//! the ★-resolvent of the kernel `f(t) Θ(t - s)` discretized in a shifted
//! orthonormal Legendre basis.
//!
//! The resolvent becomes one (banded) linear solve `(I - F) x = φ(0)` and the
//! solution coefficients are `u = Θ x`.
//!
//! ```
//! use star_resolvent::{solve_ode, Basis, FunctionSpec, SolveConfig};
//!
//! let basis = Basis::unit(40).unwrap();
//! let sol = solve_ode(&FunctionSpec::Cos, &basis, &SolveConfig::default()).unwrap();
//! let y1 = sol.evaluate(1.0).unwrap();
//! assert!((y1 - 1f64.sin().exp()).abs() < 1e-13);
//! ```

pub mod basis;
pub mod cli;
pub mod coeff;
pub mod diagnostics;
pub mod error;
pub mod format;
pub mod function;
pub mod linalg;
pub mod quadrature;
pub mod reference;
mod special;
pub mod star;

pub use basis::{Basis, BasisVector};
pub use coeff::{build_coeff_matrix, build_theta_matrix, CoeffMatrix};
pub use diagnostics::{Diagnostics, DiagnosticsConfig, Normalization, Threshold};
pub use error::{Error, Result};
pub use function::FunctionSpec;
pub use quadrature::{gauss_legendre, QuadratureConfig, QuadratureRule};
pub use reference::{reference_solution, rk_baseline, ReferenceSolution, RkOutput};
pub use star::{
    evaluate_solution, solve_ode, solve_with_matrix, star_neumann, star_product, star_resolvent_solve,
    SolveConfig, SolveResult,
};
