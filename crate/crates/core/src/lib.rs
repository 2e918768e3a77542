//! Boundary seminorms and chord-arc geometry of sampled Jordan curves.
//!
//! For a closed polyline `Γ` the crate computes the Besov seminorm
//! `‖u‖_{B_p(Γ)}` of boundary data, the p-Dirichlet energies of its harmonic
//! extensions into both complementary domains (via conformal maps onto the
//! disk), and three geometric constants: the chord-arc constant `K̂`, a ball
//! regularity constant `M̂` and the dual-integral constant
//! `Ĉ = sup d(w) ∫_Γ |dz| / |z - w|²`.
//!
//! - [`curve`]: sampled curves, named families, distances and `K̂`.
//! - [`conformal`]: closed-form and zipper conformal maps, welding.
//! - [`harmonic`]: Poisson extension on the disk and its p-energy.
//! - [`seminorms`]: Besov seminorm, interior and exterior energies, pole
//!   identities and bounds.
//! - [`regularity`]: `M̂`, `Ĉ` and the sine comparison.
//! - [`lab`]: experiment configs, runners and reports behind the `lab` binary.

// `!(x > 0.0)` is the NaN-rejecting form of a positivity check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conformal;
pub mod curve;
pub mod error;
pub mod harmonic;
pub mod lab;
pub mod quadrature;
pub mod regularity;
pub mod seminorms;

pub use error::{Error, Result};
