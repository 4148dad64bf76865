//! The 2-categorical layer over finite groupoids: functor enumeration,
//! natural transformations, mapping groupoids and equivalence checking.

mod enumerate;
mod equivalence;
mod exponential;
mod mapping;
mod transformation;

pub use enumerate::{enumerate_functors, enumerate_functors_with, EnumError};
pub use equivalence::{categorical_equivalence, find_nat_iso, Equivalence, EquivalenceVerdict};
pub use exponential::{curry, exponential_compare, uncurry, ExponentialReport};
pub use gpd_core::{Functor as GroupoidFunctor, MapMode};
pub use mapping::{conj_action_model, mapping_groupoid, mapping_groupoid_with, MappingGroupoid};
pub use transformation::NatTransformation;
