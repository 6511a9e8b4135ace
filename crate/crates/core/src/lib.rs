//! Exact tensor calculus on homogeneous frame models.
//!
//! A model is a frame with constant structure constants and a constant
//! metric. On top of its Levi-Civita geometry the crate verifies almost
//! contact and Kenmotsu structures, solves the conformal η-Ricci soliton
//! equation for `(λ, μ)`, checks gradient solitons and studies the
//! generalized D-conformal deformation with constant parameters. All
//! arithmetic is over the rationals.

pub mod calculus;
pub mod catalog;
pub mod contact;
pub mod deformation;
pub mod document;
pub mod error;
pub mod frame;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod soliton;
pub mod validation;
pub mod workbench;

pub use error::{Error, Result};
pub use rational::Rational;
