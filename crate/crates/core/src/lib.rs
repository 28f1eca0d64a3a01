//! Mean residual life ageing intensity (MRLAI) toolkit.
//!
//! The MRLAI of a lifetime `X` is `L(t) = μ(t) / ((1/t)∫_0^t μ(u) du)` where
//! `μ(t) = E[X - t | X > t]`. This crate evaluates it for closed-form,
//! MRL-specified and composite distributions, classifies ageing behaviour,
//! checks stochastic orders and replays a corpus of worked examples.

pub mod classify;
pub mod corpus;
pub mod distmodel;
mod error;
pub mod mrlai;
pub mod ops;
pub mod orders;
pub mod quadrature;

pub use distmodel::{Dist, DistSpec};
pub use error::{Error, Result};
pub use mrlai::Convention;
