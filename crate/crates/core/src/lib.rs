//! Entanglement swapping, teleportation, and entanglement quantifiers for
//! qudit (d-level) quantum systems.
//!
//! The crate is organized around two redundant computation routes that are
//! cross-checked against each other throughout the test suite:
//!
//! - closed-form expressions for Schmidt-form pure inputs and isotropic
//!   (white-noise) mixtures — per-branch and averaged I-concurrence and
//!   negativity, visibility composition under swapping, fidelity laws;
//! - a dense density-matrix route built on the [`linalg`] kernel — explicit
//!   Bell projections, partial traces and transposes, spectra.
//!
//! Module map:
//!
//! - [`linalg`] — row-major complex matrices, Kronecker products, partial
//!   trace/transpose, realignment, Hermitian spectra, singular values;
//! - [`states`] — Schmidt vectors, the generalized Bell basis, Weyl
//!   operators, SU(d) generators, isotropic states, density matrices;
//! - [`swap`] — the entanglement-swapping engine (pure closed form, dense
//!   projection, isotropic composition, branch canonicalization);
//! - [`measures`] — I-concurrence and negativity in all the flavors above;
//! - [`separability`] — Bloch correlation matrices and the realignment
//!   (CCNR) entanglement witness;
//! - [`teleport`] — Weyl-corrected qudit teleportation and repeater chains.
//!
//! # Example
//!
//! ```
//! use qswap::measures::{avg_iconcurrence, avg_negativity};
//! use qswap::states::SchmidtVector;
//! use qswap::swap::swap_pure;
//!
//! let p = SchmidtVector::new(vec![0.8, 0.2])?;
//! // Both averaged measures of the swapped pair evaluate to 0.64.
//! assert!((avg_iconcurrence(&p, &p)? - 0.64).abs() < 1e-12);
//! assert!((avg_negativity(&p, &p)? - 0.64).abs() < 1e-12);
//! // The (u, v) = (0, 1) branch occurs with probability 0.16 and leaves
//! // the outer pair maximally entangled.
//! let branch = swap_pure(&p, &p, 0, 1)?;
//! assert!((branch.probability - 0.16).abs() < 1e-12);
//! # Ok::<(), qswap::Error>(())
//! ```

pub mod error;
pub mod linalg;
pub mod measures;
pub mod separability;
pub mod states;
pub mod swap;
pub mod teleport;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
