//! Braid-group representation constructions: Long-Moody, Dettweiler-Reiter,
//! twisted and Katz-Long-Moody convolutions, Haraoka's multiplicative middle
//! convolution on pure-braid anti-representations, the invariant Hermitian
//! form of the twisted construction, and a recursive signature algorithm.

pub mod braidwords;
pub mod convolutions;
pub mod correspond;
pub mod error;
pub mod hermitian;
pub mod klm;
pub mod linalg;
pub mod repfile;
pub mod reps;
pub mod samples;

pub use error::{Error, Result};
