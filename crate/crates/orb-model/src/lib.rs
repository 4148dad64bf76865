//! Orbit categories of finite groups, groupoid-valued presheaves on them,
//! and the adjunction `L ⊣ R` with the groupoids of spaces.

mod adjoint;
mod coeq;
mod orb;
mod space;

pub use adjoint::{
    adjunction_check, adjunction_check_with, counit_check, counit_check_with, hom_orb, l_functor, unit_check,
    unit_check_with, AdjunctionReport, CounitReport, LPresentation, OrbError, OrbHom, UnitReport,
};
pub use coeq::{coequalizer_check, CoequalizerReport};
pub use orb::{build_orb, build_orb_with, OrbCategory};
pub use space::{
    delta, free_orbspace, orbspace_weq, r_functor, r_map, r_functor_with, validate_map, validate_orbspace, FreeOrbSpace,
    OrbMap, OrbSpace, OrbSpaceError, RSpace,
};
