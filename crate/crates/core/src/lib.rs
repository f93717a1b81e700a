//! Relativistic bound states and particle/antiparticle ingredient ratios for
//! hydrogenlike systems.
//!
//! Everything is in natural units (hbar = c = 1): masses, energies and inverse
//! lengths share one unit.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod model;
pub mod radial;
pub mod rsse;
pub mod spectra;
pub mod wavepacket;

pub use error::{Error, Result};
pub use model::{AlphaMode, Coupling, Mass, ModelTag, TwoBodyMasses};
