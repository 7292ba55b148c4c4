//! The Terwilliger algebra `T(D)` of `H(D, q)` acting on the standard module.

mod closure;
mod decompose;
mod forms;
mod split;

pub use closure::{algebra_dimension, word_closure_dimension, MAX_CLOSURE_ROUNDS};
pub use decompose::{
    classify_pairwise, decompose_standard_module, module_invariants, DecompositionReport, ExtractedCopy,
    ModuleClass, ModuleInvariants, GLOBAL_RANK_LIMIT,
};
pub use forms::{
    class_multiplicity, dr_to_pk, labels, module_matrices, module_matrices_dr, pk_to_dr, wedderburn_dimension,
    Gauge, ModuleDescriptor,
};
pub use split::{block_labels, block_relation_checks, rs_representation, split_standard_module, BlockRep, SplitBasis};
