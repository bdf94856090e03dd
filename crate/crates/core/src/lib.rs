//! Air-ground channel toolkit for vertically flying UAVs.
//!
//! The forward direction ([`synthesis`]) turns a deterministic altitude model
//! plus Gaussian shadowing and log-logistic fast fading into path-loss
//! traces. The inverse direction ([`extraction`]) splits a trace into path
//! loss, shadowing and fast fading and fits each part.

// `!(x > y)` is used on purpose so NaN lands in the error branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod extraction;
pub mod geometry;
pub mod io;
pub mod propagation;
pub mod roundtrip;
pub mod stochastic;
pub mod synthesis;

pub use error::{Error, Result};
