//! Regulated-curve calculus and constructive atlases for path spaces of
//! finite-dimensional manifolds and vector bundles.

// `!(a < b)` is used deliberately so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atlas;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod path;
pub mod regulated;
pub mod transport;

pub use error::{Error, Result};
