//! Explicit binary and q-ary codes with distance growing as sqrt(k),
//! built from Bose-Chowla Sidon sets inside the cyclic ring
//! F_q[x]/(x^k' - 1).
//!
//! The pipeline: pick an Artin prime k' for q, take the Sidon set of order
//! d (the largest prime below sqrt(k)), turn it into the multiplier
//! alpha*, and encode messages as (y, first kept coordinates of
//! reduce(alpha* y)). `analysis` verifies the distance story three ways:
//! combinatorial claims per support, certification by low-weight
//! enumeration, and exhaustive search at desk scales.

pub mod analysis;
pub mod cli;
pub mod codec;
pub mod cyclic;
pub mod galois;
pub mod params;
mod poly;
pub mod rng;
pub mod sidon;

use thiserror::Error as ThisError;

/// Any failure the library can produce, one variant per module.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error(transparent)]
    Galois(#[from] galois::GaloisError),
    #[error(transparent)]
    Cyclic(#[from] cyclic::CyclicError),
    #[error(transparent)]
    Sidon(#[from] sidon::SidonError),
    #[error(transparent)]
    Params(#[from] params::ParamsError),
    #[error(transparent)]
    Codec(#[from] codec::CodecError),
    #[error(transparent)]
    Analysis(#[from] analysis::AnalysisError),
}
