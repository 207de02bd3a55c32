//! Numerical toolkit for separately holomorphic functions on crosses
//! `X = (D×B) ∪ (A×G)` in `ℂ²`: relative extremal functions of planar
//! condensers, the envelope `{ω_{A,D}(z) + ω_{B,G}(w) < 1}`, algebraic
//! singular sets, and rational re-extension with its checks.

pub mod acceptance;
pub mod cli;
pub mod config;
pub mod cross;
pub mod error;
pub mod extension;
pub mod extremal;
pub mod geometry;
pub mod poly;
pub mod singularity;

pub use error::{Error, Result};
pub use num_complex::Complex64;
