//! Numerical toolkit for the buckling load of clamped plates and for
//! perimeter-constrained shape optimization of its eigenvalues.
//!
//! The buckling eigenvalues of a planar domain are the stationary values of
//! the Rayleigh quotient `∫(Δu)² / ∫|∇u|²` over functions clamped at the
//! boundary (`u = ∂u/∂ν = 0`). This crate discretizes that quotient on a
//! uniform grid by zero extension outside the domain, solves the resulting
//! generalized symmetric eigenproblem, and drives a derivative-free shape
//! optimizer over families of domains with the perimeter constraint enforced
//! by exact rescaling.
//!
//! Modules follow the pipeline:
//!
//! - [`geometry`]: domain descriptions (polygons, Fourier star shapes, disks,
//!   rectangles) with perimeter, area, diameter, convex hull, Hausdorff
//!   distance, and perimeter saturation.
//! - [`raster`]: embedding a domain into a grid of interior unknowns.
//! - [`operators`]: the discrete bilaplacian and negative Laplacian.
//! - [`eigensolve`]: smallest eigenpairs of the pencil `A x = Λ B x`.
//! - [`shapeopt`]: objectives, equivalent formulations, and the Nelder–Mead
//!   shape optimizer.
//! - [`verify`]: a property-check suite that turns the model's structural
//!   identities (scaling, monotonicity, Payne, penalization, convexification,
//!   connectedness) into machine-checked assertions.
//!
//! The long-form guide lives in `book/` and its code listings are compiled
//! as doctests of this crate.

pub mod eigensolve;
pub mod geometry;
pub mod linalg;
pub mod operators;
pub mod raster;
pub mod shapeopt;
pub mod verify;

mod error;

#[cfg(doctest)]
mod book;

pub use error::Error;

/// Crate version string, echoed into run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
