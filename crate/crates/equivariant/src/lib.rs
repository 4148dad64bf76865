//! Orbit categories `Orb_G` of a finite group on a family of subgroups,
//! the auxiliary category `O` and the comparison `Orb_G <- O -> Orb` with
//! the abstract orbit category.

mod aux;
mod orbit;
mod tvc;

pub use aux::{aux_category, AuxCategory, AuxHom};
pub use orbit::{check_family, conjugate_into, cosets, orbit_category, EquivariantError, OrbitCategory, Subgroup};
pub use tvc::{comparison, f_contractible_check, tvc_compare, tvc_compare_with, PairReport, TvcReport};
