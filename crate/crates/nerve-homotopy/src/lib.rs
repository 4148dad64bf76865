//! Nerves of finite groupoids, their fat-realization chain complexes,
//! integer homology via Smith normal form, and homotopy invariants.

mod chain;
mod homotopy;
mod nerve;
mod quotient;
mod snf;

pub use chain::{chain_complex, homology, homology_with, ChainComplex, Coeffs, HomologyGroup, HomologyTable};
pub use homotopy::{pi0, pi1, weak_equivalence_check};
pub use nerve::{nerve, nerve_with, NerveLevels, SizeLimit};
pub use quotient::{homotopy_quotient_check, QuotientReport};
pub use snf::{invariant_factors, rank_mod_p};
