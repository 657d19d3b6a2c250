//! Multibody acoustic (Helmholtz) scattering solver.
//!
//! Each scatterer gets a compressed scattering matrix built locally via the
//! method of fundamental solutions (MFS) and proxy-surface skeletonization;
//! the bodies are then coupled through the global system
//! `(I + S*Ghat) qhat = S*vhat`, which is solved iteratively with GMRES.
//!
//! Module map:
//! - [`specfun`]: Helmholtz fundamental solutions (2D Hankel, 3D outgoing wave).
//! - [`densela`]: complex dense linear algebra (pivoted QR / ID, truncated-SVD
//!   pseudo-inverse, GMRES, condition numbers).
//! - [`geometry2d`] / [`geometry3d`]: contours, surfaces, discretizations and
//!   proxy surfaces.
//! - [`mfs`]: the local single-body collocation system.
//! - [`skeleton`]: proxy-based skeletonization (B matrix, column ID, U).
//! - [`scatmat`]: translation operator C and scattering matrix S.
//! - [`multibody`]: global assembly, solve, reconstruction and field/error
//!   evaluation.
//! - [`selftest`]: the built-in invariant suites exposed to the CLI.

pub mod densela;
mod error;
pub mod geometry2d;
pub mod geometry3d;
pub mod mfs;
pub mod multibody;
pub mod scatmat;
pub mod selftest;
pub mod skeleton;
pub mod specfun;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Dense complex matrix (column-major).
pub type CMat = faer::Mat<C64>;

/// A point in 2D or 3D; 2D geometry stores a zero third component.
pub type Point = [f64; 3];

/// Euclidean distance between two points.
#[inline]
pub fn dist(a: Point, b: Point) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}
