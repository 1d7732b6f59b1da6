//! Rediscovery of the degree-4 generators by weight-space decomposition and
//! interpolation on sampled triples.

pub mod lie;

pub use lie::{
    lie_generators, lowering_ops, raising_ops, weight_basis_degree1, weight_ops, GeneratorKind, LabeledForm,
    LieGenerator, WeightCoordinates, WeightLabel, WeightOp,
};
pub mod decompose;

pub use decompose::{
    direct_decomposition, highest_weight_vectors, irrep_from_highest, staged_decomposition, summarize,
    weight_decomposition, HighestWeightSpace, Irrep, IsotypicSummary, StagedDecomposition, WeightSpace,
    DEFAULT_DECOMPOSITION_TOL,
};
pub mod discovery;

pub use discovery::{
    calibrated_cubic_multiple_space, cubic_multiple_space, exact_orbit, filter_new, interpolate_component,
    rationalize, run_discovery, span_rank, ComponentReport, Discovery, DiscoveryConfig, DiscoveryReport,
    Interpolation, QuarticSpace, SamplePool,
};
pub mod oracle;

pub use oracle::family_polynomials;
