//! Staircase paths in the arrow poset of `[n]`, marked complexes and
//! replayable certificates for the inclusions built from them.

mod certificate;
mod complex;
mod emit;
mod staircase;

pub use certificate::{check_certificate, inner_horn_filling, CertVerdict, Certificate, Generator, Position, Step};
pub use complex::{Ambient, Closure, MarkedComplex};
pub use emit::{
    certify_iota, certify_long_simplex, contiguity_certificate, fill_certificate, generalized_horn_certificate,
    CERTIFY_BOUND,
};
pub use staircase::{
    area, enumerate_paths, filtration, flip, flip_positions, flipvertices, from_flipvertices, Attachment, Layer,
    LayerCell, Point, StaircasePath,
};
