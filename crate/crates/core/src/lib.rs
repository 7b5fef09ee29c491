//! Algebraic spectra of signals.
//!
//! A signal on `t ≥ 0` is written as an expression ([`sigexpr`]) and mapped
//! to its operational image in ℂ(s) ([`opcalc`], [`ratfield`]) or, for the
//! catalog signals without a rational image, to the linear differential
//! equation that image satisfies ([`weylode`]). Its frequencies are the
//! imaginary parts of the poles or singular points. [`instfreq`] computes the
//! curvature-based instantaneous frequency, and [`fourier`] the classical
//! quantities the algebraic spectrum is contrasted with.
//!
//! ```
//! use algspec::{pipeline, sigexpr};
//!
//! let e = sigexpr::parse("(t^2 + 1)*sin(3*t + 0.5)").unwrap();
//! let s = pipeline::spectrum(&e).unwrap();
//! assert_eq!(s.frequencies, vec![-3.0, 3.0]);
//! ```

// `!(x > 0.0)` style checks are meant to reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fourier;
pub mod instfreq;
pub mod opcalc;
pub mod pipeline;
pub mod ratfield;
pub mod scalar;
pub mod selftest;
pub mod sigexpr;
pub mod weylode;

pub use error::{Error, Result};
