//! Finite categories, functors, nerves and Grothendieck fibrations.

pub mod category;
pub mod examples;
pub mod functor;
pub mod groth;
pub mod homotopy;
pub mod nerve;
pub mod twisted;

pub use category::{FinCategory, Morphism};
pub use functor::{cat_equivalence, find_equivalence, CatFunctor, EquivalenceVerdict};
pub use groth::{
    classical_span_dual, grothendieck, is_cartesian_morphism, is_groth_fibration, Diagram,
    FibrationVerdict, GrothFibration, SpanDual,
};
pub use homotopy::{homotopy_category, HomotopyCategory};
pub use nerve::{full_nerve, nerve, nerve_map, Nerve};
pub use twisted::twisted_arrow_cat;
