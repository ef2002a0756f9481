//! Newton non-degeneracy, Newton and Milnor numbers, and stable-equivalence
//! rewriting for hypersurface singularity germs, with exact arithmetic
//! throughout.

#![allow(clippy::needless_range_loop)]

pub mod curves;
pub mod diagram;
pub mod error;
pub mod gallery;
pub mod groebner;
pub mod milnor;
pub mod ndeg;
pub mod ring;
pub mod stabilize;

pub use error::{Error, Result};

#[cfg(test)]
mod testutil;
