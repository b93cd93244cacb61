//! Exact computation of prime normal subgroups, their closed-set topology,
//! radicals and direct-product decompositions for finite groups, together
//! with Smith normal form for finitely generated abelian groups and
//! p-prime ideals of finite rings.

pub mod bitset;
pub mod classification;
pub mod comma;
pub mod decomposition;
mod error;
pub mod group;
pub mod io;
pub mod ring;
pub mod snf;
mod limits;
pub mod spectrum;

pub use error::{Error, Result};
pub use limits::{Limits, ENV_MAX_ORDER};
