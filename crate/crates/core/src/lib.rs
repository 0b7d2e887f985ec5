//! The Ptolemy–Alhazen reflection problem in the unit circle and the
//! triangular ratio metric of the unit disk.

pub mod classify;
pub mod conic;
pub mod error;
pub mod literal;
pub mod metric;
pub mod numerics;
pub mod reflect;
pub mod sample;
pub mod verify;

pub use error::{Error, Result};
pub use numerics::{Complex, Polynomial, Root, RootSet, Tolerances};
