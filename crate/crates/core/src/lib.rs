//! Two-dimensional acoustic scattering of narrow tapered beams by sound-soft
//! obstacles, and point-by-point boundary recovery by direct imaging.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: Bessel and Hankel functions of integer order.
//! - [`geometry`]: parametric obstacle boundaries.
//! - [`incident`]: tapered beams, plane waves and point sources.
//! - [`linalg`]: dense complex matrices and LU.
//! - [`forward`]: combined-field Nyström solver for the exterior Dirichlet problem.
//! - [`synthesis`]: measurement layouts, noise, and the dataset file format.
//! - [`imaging`]: indicator evaluation and the reconstruction pipeline.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` deliberately rejects NaN

pub mod error;
pub mod forward;
pub mod geometry;
pub mod imaging;
pub mod incident;
pub mod linalg;
pub mod specfun;
pub mod synthesis;
pub mod vec2;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use vec2::Vec2;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;
