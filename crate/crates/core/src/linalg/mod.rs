//! Dense and banded kernels used by the solver and the diagnostics.

pub mod eigen;
pub mod lu;

pub use eigen::eigenvalues;
pub use lu::{BandLu, BandMatrix};
