//! Exact computations for principal bundles on elliptic curves and their
//! spectral-cover description over a rational base.

pub mod acceptance;
pub mod ecurve;
pub mod error;
pub mod field;
pub mod fp_poly;
pub mod linalg;
pub mod modquot;
pub mod poly;
pub mod report;
pub mod rootsys;
pub mod spectral;
pub mod tbundle;

pub use error::{Error, Result};
