//! Principal bundles over finite sets and groupoids, the dictionary between
//! cocycles and Hilsum–Skandalis bundles, moduli groupoids of bundles, and
//! the explicit holim model used to test descent.

mod bundle;
mod holim;
mod hs;
mod moduli;

pub use bundle::{bgstr_check, trivial_bundle, validate_bundle, BundleData, BundleError, PrincipalBundle};
pub use holim::{
    cech_diagram, descent_check, holim_gamma, holim_gamma_with, DescentError, DescentReport,
    DiagramError, GammaDiagram, HolimError, HolimGroupoid, LevelMap, PowerGroupoid,
    HOLIM_CANDIDATES, VERTEX,
};
pub use hs::{
    bundle_iso, bundle_isos, cocycle_iso, cocycle_to_hs, cocycle_to_hs_points, glue, hs_to_cocycle, BundleIso, Cocycle,
    CocycleError, CocycleIso, HSBundle, HsError,
};
pub use moduli::{moduli_groupoid, moduli_groupoid_with, ModuliError, ModuliGroupoid};
