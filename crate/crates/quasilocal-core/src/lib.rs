//! Numerical quasi-local mass toolkit for axisymmetric initial data.
//!
//! The crate is `no_std` and only needs an allocator. Everything here is a pure
//! function of its inputs: exact black-hole slices, surface data on a polar
//! Gauss-Legendre grid, rotational isometric embeddings, the radial Jang
//! equation, Shi-Tam and inverse mean curvature flows, the conformal-factor
//! problem on the glued manifold, and the Brown-York, Liu-Yau and Wang-Yau
//! quasi-local masses built on top of them.
#![no_std]

extern crate alloc;

pub mod conformal;
pub mod embedding;
pub mod error;
pub mod flows;
pub mod jang;
pub mod linalg;
pub mod masses;
pub mod math;
pub mod ode;
pub mod optimize;
pub mod quad;
pub mod slices;
pub mod surface;
pub mod verdict;

pub use error::{Error, Result};
