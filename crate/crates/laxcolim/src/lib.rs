//! Lax diagrams of finite groupoids over 2-categories, their lax colimits by
//! generators and relations, and the universal property of that colimit.

mod conj;
pub mod cone;
pub mod diagram;
pub mod index;
pub mod pbasm;
pub mod presentation;
pub mod realize;
pub mod solver;

pub use cone::{
    cone_category, cone_category_with, cone_of, universal_property_check, universal_property_report, Cone,
    ConeCategory, ConeError, UniversalReport,
};
pub use diagram::{hom_diagram, hom_diagram_default, validate_diagram, DiagramError, HomDiagram, LaxDiagram};
pub use index::{cov2_builder, Cells, Cov2, IndexCategory2, IndexError, Mor};
pub use pbasm::{pbasm_check, pbasm_check_with, PbasmError, PbasmReport};
pub use presentation::{
    hocolim_presentation, Family, Generator, GeneratorKind, GroupoidPresentation, Letter, Relation,
};
pub use realize::{realize, Realized};
pub use solver::{hom_solver, hom_solver_with, satisfies, spanning_forest, tietze, Assignment, HomGroupoid, Reduced, SolveError};
