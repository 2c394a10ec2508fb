//! Truncated simplicial sets, nerves, the Bousfield–Kan homotopy colimit,
//! integral homology through Smith normal form, and three-valued evidence
//! for weak homotopy equivalences.
//!
//! Every simplicial set is truncated at some dimension `T` and homology is
//! reported in degrees `0 … T-1`, the range in which the truncated chain
//! complex computes it exactly.

mod chains;
mod simplicial;
mod snf;
mod verdict;

pub use chains::{
    functor_chain_map, homology, normalized_chain_map, normalized_chains, CategoryChains, ChainComplex, ChainMap,
    HomologyGroup, HomologyProfile, NormalizedChains,
};
pub use simplicial::{
    elements_comparison, homotopy_colimit, nerve, nerve_map, thomason_comparison, ElementsComparison, HomotopyColimit, Nerve, SSetDiagram, SimplicialMap,
    SimplicialSet, ThomasonComparison,
};
pub use snf::{dense_invariant_factors, invariant_factors, rank, SparseMatrix};
pub use verdict::{
    compare_complexes, is_homotopy_cofinal, is_weakly_contractible, is_weakly_contractible_sset,
    simplicial_map_evidence, weak_equivalence_evidence, Certificate, Discrepancy, Verdict, DEFAULT_TRUNCATION,
};

#[cfg(test)]
mod tests;
