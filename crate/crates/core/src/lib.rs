//! Exact constructions of rational-curve witnesses for central simple
//! algebras: ideals and flags, étale subalgebras, involutions, quadrics and
//! zero-cycle linkage graphs over finite fields and `Q`.

pub mod error;
pub mod etale;
pub mod csa;
pub mod exactalg;
pub mod ideals;
pub mod io;
pub mod cli;
pub mod pointcount;
pub mod witness;

pub use error::{Error, Result};
