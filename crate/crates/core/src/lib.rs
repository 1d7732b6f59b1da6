//! Compatibility constraints for triples of fundamental and essential
//! matrices.
//!
//! The crate evaluates the polynomial conditions that decide whether three
//! pairwise fundamental (or essential) matrices come from a single triple of
//! cameras, diagnoses failures through epipoles, and rediscovers the
//! degree-4 generators with a representation-theoretic interpolation
//! pipeline.

pub mod camera;
pub mod cli;
pub mod constraints;
pub mod epipolar;
pub mod error;
pub mod io;
pub mod poly;
pub mod smallalg;
pub mod syminterp;

pub use error::{Error, Result};
