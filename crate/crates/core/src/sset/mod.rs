//! Finite simplicial sets in Eilenberg-Zilber normal form.

pub mod builder;
pub mod constructions;
pub mod iso;
pub mod map;
pub mod mapspace;
pub mod marked;
pub mod poset;
pub mod search;
pub mod simplicial;
pub mod surjection;

pub use builder::{build, Built, SimplexModel};
pub use constructions::{
    boundary_and_horns, fiber, join, opposite, opposite_map, product, product_capped, pullback, standard_simplex,
    HornSpec, PairSet, Subcomplex,
};
pub use iso::is_isomorphic;
pub use map::SSetMap;
pub use mapspace::{exponential, FunctionSpace, PosetFamily, PosetShape};
pub use marked::MarkedSSet;
pub use poset::{FinPoset, PosetNerve};
pub use search::{DomainPlan, MapSearch};
pub use simplicial::{Cell, CellId, SimplexRef, SimplicialSet};
pub use surjection::SurjectionWord;
