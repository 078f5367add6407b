//! Executable instances of structural lemmas on permutation groups, each
//! checked against direct computation.

mod chain;
mod decompose;
mod factors;

pub use chain::{
    is_affine_primitive, transitive_by_affine_chain, transitive_by_solvable_quotient, ChainSpec,
    StepClass, TransitivityReport, Verdict,
};
pub use decompose::{
    block_kernel_socle, descent_refinement, direct_product, goursat_split_check,
    subdirect_decompose, BlockKernelSocle, DescentWitness, GoursatReport, KernelSocle,
    SplitEntry, SubdirectDecomposition,
};
pub use factors::{
    nonabelian_composition_factors, no_nonsolvable_proper_quotient, simple_group_names,
    SimpleFactor,
};
