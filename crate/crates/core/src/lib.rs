//! Exact CDGA machinery for rational models of complements and of
//! configuration spaces of two points in manifolds with boundary.

pub mod analysis;
pub mod conf;
pub mod cones;
pub mod duality;
pub mod error;
pub mod fixtures;
pub mod graded;
pub mod linalg;
pub mod presentation;
pub mod pretty;
pub mod vector;

pub use error::{Error, ErrorKind, Result};
pub use graded::{Cdga, CdgaMorphism, Cohomology, DgModule, DgMorphism, GradedSpace};
pub use linalg::{Matrix, Scalar};
pub use vector::Vector;
#[cfg(feature = "testkit")]
pub mod testkit;
