//! Finite simplicial sets and the constructions built on them: nerves,
//! twisted arrow and Burnside-type span models, duals of (co)cartesian
//! fibrations, bounded lifting checks, staircase certificates and the
//! duality pairing.

pub mod anodyne;
pub mod cat;
pub mod dual;
pub mod error;
pub mod fib;
pub mod format;
pub mod pairing;
pub mod sset;
pub mod twist;

pub use error::{Error, Result};
