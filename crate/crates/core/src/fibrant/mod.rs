//! Categories of fibrant objects and the homotopical calculus of cocycles.
//!
//! A [`CfoStructure`] carries weak equivalences, fibrations, a terminal object
//! and chosen products and path objects on a finite category. Pullbacks are
//! not stored: [`find_pullback`] returns the least one by exhaustive search, so
//! every construction built from pullbacks is reproducible.
//!
//! The cocycle category `Cocyc(X, Y)` is `C^{[-1;1]}(X, Y)`; its objects are
//! stored as zigzags `[X, Z, Y]` with arrows `[v, f]`. A functional
//! correspondence is a cocycle whose pairing `Z -> Y × X` is a fibration.

mod calculus;
mod cocycles;
mod limits;
mod structure;

pub use calculus::{
    build_R, calculus_conditions, certify_cocycle_calculus, certify_with_class, cofinality_instance,
    fibre_comma_isomorphism, insert_identity, is_weq_ladder, pullback_closure_defect, reduce_zigzag,
    reduction_directions, replacement_for, CalculusReport, ConditionStatus, FibreComparison, PairOutcome, RCategory,
    RObject, Reduction,
};
pub use cocycles::{
    cocycle_category, compose_cocycles, correspondence_fibration, functional_correspondence,
    functional_correspondences, homotopy_hom, mapping_path_factorization, pullback_correspondence, Cocycle,
    CocycleSubcategory, CorrespondenceFibration, FunctionalCorrespondence, HomotopyClasses, PathFactorization,
    PulledCorrespondence,
};
pub use limits::{find_product, find_pullback, is_product, is_pullback, mediating, Product, Pullback};
pub use structure::{
    check_cfo_axioms, check_cisinski_axioms, find_path_object, slice_structure, AxiomOutcome, AxiomReport,
    CfoStructure, CisinskiStructure, PathObject,
};
