//! m-uniform quantum-information masking checks: build the Fourier-masked
//! message states, verify that every m-party marginal is message
//! independent, and re-verify after noise channels.

use crate::channels::{apply_channel, canonical_pauli_channel};
use crate::eig::trace_norm;
use crate::error::{Error, Result};
use crate::states::fourier_masked_state;
use crate::tensor::{partial_trace, DensityMatrix, StateVector};
use crate::tol::MASK_UNIFORM_TOL;
use itertools::Itertools;
use serde::Serialize;

/// Outcome of a uniformity check over all m-party marginals.
#[derive(Debug, Clone, Serialize)]
pub struct MaskingReport {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    /// Largest trace-norm distance between marginals of different messages,
    /// over all C(n, m) subsets.
    pub max_marginal_distance: f64,
    pub uniform: bool,
    pub noisy: bool,
    /// Identifier of the noise channel when `noisy` is set.
    pub channel: Option<String>,
}

/// The d masked message states: |k> is encoded as the phase-twisted GHZ
/// state (1/sqrt d) sum_j e^{2 pi i jk/d} |j...j> on n parties.
pub fn mask_messages(d: usize, n: usize) -> Result<Vec<StateVector>> {
    (0..d).map(|k| fourier_masked_state(d, n, k)).collect()
}

/// Check that every m-party marginal is identical across the given message
/// states. Subsets are enumerated lexicographically; the distance metric is
/// the trace norm of the marginal difference.
pub fn uniformity_check(states: &[DensityMatrix], m: usize) -> Result<MaskingReport> {
    let first = states
        .first()
        .ok_or_else(|| Error::BadParameter("no message states given".into()))?;
    let dims = first.dims().to_vec();
    let n = dims.len();
    for s in states {
        if s.dims() != dims {
            return Err(Error::DimMismatch(format!(
                "message dims differ: {:?} vs {:?}",
                s.dims(),
                dims
            )));
        }
    }
    if m < 1 || m > n - 1 {
        return Err(Error::BadParameter(format!(
            "marginal size m = {m} must lie in 1..={}",
            n - 1
        )));
    }
    let mut max_dist: f64 = 0.0;
    for keep in (0..n).combinations(m) {
        let marginals: Vec<DensityMatrix> = states
            .iter()
            .map(|s| partial_trace(s, &keep))
            .collect::<Result<_>>()?;
        for i in 0..marginals.len() {
            for j in i + 1..marginals.len() {
                let diff = marginals[i].matrix() - marginals[j].matrix();
                max_dist = max_dist.max(trace_norm(&diff));
            }
        }
    }
    Ok(MaskingReport {
        d: dims[0],
        n,
        m,
        max_marginal_distance: max_dist,
        uniform: max_dist <= MASK_UNIFORM_TOL,
        noisy: false,
        channel: None,
    })
}

/// Push every masked message through the canonical Pauli channel with
/// identity weight p, then run the uniformity check on the outputs.
pub fn noisy_masking_pipeline(d: usize, n: usize, p: f64, m: usize) -> Result<MaskingReport> {
    let channel = canonical_pauli_channel(d, n, p)?;
    let outputs: Vec<DensityMatrix> = mask_messages(d, n)?
        .into_iter()
        .map(|psi| apply_channel(&channel, &psi.projector()))
        .collect::<Result<_>>()?;
    let mut report = uniformity_check(&outputs, m)?;
    report.noisy = true;
    report.channel = Some(format!("canonical-pauli(d={d},n={n},p={p})"));
    Ok(report)
}
