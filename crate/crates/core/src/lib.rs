//! Exact computer algebra for supercommutative superalgebras, their graded
//! companions, Hopf and Lie superalgebras, truncated hyperalgebras and
//! Harish-Chandra pairs.

pub mod algebra;
pub mod error;
pub mod filtration;
pub mod gamma;
pub mod hcp;
pub mod hopf;
pub mod hyp;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use report::Report;
pub use scalar::{Field, Scalar};
