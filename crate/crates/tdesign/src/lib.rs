//! Spherical t-designs and the rotational-coherence numerics built on them:
//! design construction and certification, multipole fields, dephasing and
//! entangling rates between body orientations, and spin decoherence-free
//! subspaces.
//!
//! See the crate examples for runnable entry points into each capability,
//! and the `tdesign` binary for the scriptable command-line surface.

pub mod cli;
pub mod config;
pub mod constants;
pub mod dd;
pub mod designs;
pub mod entangle;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod harmonics;
pub mod monomials;
pub mod optimize;
pub mod phases;
pub mod pointset;
pub mod solver;
pub mod spindfs;
pub mod svg;

pub use error::{Error, Result};
