//! Dense density-matrix toolkit for small multipartite qudit systems:
//! state families, Kraus channels, entanglement criteria, masking checks,
//! and dephasing sweeps. Everything is exact dense linear algebra over
//! `Complex64`; subsystem 0 is the most significant index digit throughout.

pub mod channels;
pub mod criteria;
pub mod dephasing;
pub mod eig;
pub mod error;
pub mod io;
pub mod masking;
pub mod mat;
pub mod states;
pub mod tensor;
pub mod tol;

pub use channels::{
    apply_channel, canonical_pauli_channel, dur_channel_corrected, dur_channel_literal,
    generalized_pauli, literal_theorem1_kraus, loo_set, tripartite_pauli_channel, verify_channel,
    ChannelReport, CompletenessPolicy, KrausChannel, KrausTerm,
};
pub use criteria::{
    map_witness, ppt_min_eigenvalue, projection_witness, realignment_excess, thresholds,
    CriterionResult, ThresholdSet, Verdict,
};
pub use dephasing::{
    canonical_cut, dephasing_kraus, evolve, find_crossing, find_crossing_in_gamma, metric_value,
    sweep, sweep_point, CrossingMetric, DephasingParameters, SweepRecord,
};
pub use eig::{hermitian_eigenvalues, hermitian_eigensystem, singular_values, trace_norm};
pub use io::{
    load_channel, load_density, load_state, save_channel, save_density, save_state_vector,
    LoadedState,
};
pub use masking::{mask_messages, noisy_masking_pipeline, uniformity_check, MaskingReport};
pub use states::{
    dur_block, dur_state, fourier_masked_state, ghz, ghz_basis_state, isotropic_ghz, rho0,
    DurBlock,
};
pub use error::{Error, Result};
pub use mat::{kron, CMat};
pub use tensor::{
    partial_trace, partial_transpose, permute_subsystems, realign, Bipartition, DensityMatrix,
    StateVector, ValidationMode,
};
