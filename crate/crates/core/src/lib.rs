//! Oriented circle geometry in pentacyclic coordinates, and projective lines,
//! distant graphs and chain geometries over finite rings.

pub mod chain;
pub mod cli;
pub mod error;
pub mod grassmann;
pub mod lie;
pub mod linalg;
pub mod pline;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
