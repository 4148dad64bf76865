//! Exact finite groups and groupoids.
//!
//! Groupoids use dense integer ids for objects and arrows. Constructors
//! emit ids in a documented lexicographic order so every derived table is
//! reproducible bit for bit.

pub mod budget;
pub mod construct;
pub mod cosets;
pub mod exec;
pub mod functor;
pub mod group;
pub mod groupoid;
pub mod gset;
pub mod iso;
pub mod structure;

pub use budget::{Budget, Exhausted, Meter};
pub use construct::{
    action_groupoid, coproduct, coproduct_all, delooping, empty_groupoid, gauge_groupoid,
    gauge_groupoid_of_group, gauge_groupoid_with_classes, groupoid_action_groupoid, pair_arrow, pair_groupoid, product,
    restriction, restriction_unchecked, shear_inverse, terminal_groupoid, translation_groupoid,
    unit_groupoid, NotACover, NotPrincipal, Restricted,
};
pub use exec::Exec;
pub use functor::{Functor, FunctorError, MapMode};
pub use group::{find_isomorphism, homomorphisms, FinGroup, GroupError};
pub use groupoid::{validate_groupoid, Arr, FinGroupoid, GroupoidError, Labeled, Obj, RawGroupoid};
pub use gset::{coset_space, ActionError, GSet};
pub use iso::{iso_check, iso_check_with, GroupoidIso, IsoVerdict};
pub use structure::{component_index, components, spanning_tree, vertex_group};
