//! Entanglement and distillability criteria: partial-transpose spectra, the
//! two-level projection witness, realignment excess, closed-form threshold
//! values, and the one-parameter indecomposable positive map on qutrits.

use crate::eig::{hermitian_eigenvalues, trace_norm};
use crate::error::{Error, Result};
use crate::mat::CMat;
use crate::tensor::{partial_transpose, realign, Bipartition, DensityMatrix};
use crate::tol::VERDICT_TOL;
use serde::Serialize;

/// How a signed witness value reads: which sign certifies entanglement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessOrientation {
    NegativeIsEntangled,
    PositiveIsEntangled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Entangled,
    Undecided,
    Threshold,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Entangled => "entangled",
            Verdict::Undecided => "undecided",
            Verdict::Threshold => "threshold",
        };
        f.write_str(s)
    }
}

/// One evaluated criterion: the raw signed value plus its reading.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub name: String,
    pub value: f64,
    pub verdict: Verdict,
    pub cut: Bipartition,
    pub tolerance: f64,
}

/// Attach a verdict to a witness value: within `tolerance` of zero reads
/// "threshold", beyond it the certifying sign reads "entangled" and the
/// other "undecided" (these criteria are one-sided, the safe sign proves
/// nothing).
pub fn assess(
    name: &str,
    value: f64,
    orientation: WitnessOrientation,
    cut: Bipartition,
    tolerance: f64,
) -> CriterionResult {
    let verdict = if value.abs() <= tolerance {
        Verdict::Threshold
    } else {
        let certifies = match orientation {
            WitnessOrientation::NegativeIsEntangled => value < 0.0,
            WitnessOrientation::PositiveIsEntangled => value > 0.0,
        };
        if certifies {
            Verdict::Entangled
        } else {
            Verdict::Undecided
        }
    };
    CriterionResult {
        name: name.to_string(),
        value,
        verdict,
        cut,
        tolerance,
    }
}

/// Default verdict tolerance; the cli can override it per run.
pub fn default_tolerance() -> f64 {
    VERDICT_TOL
}

/// The four closed-form decision boundaries for the (d, n) family. The Dür
/// entries read n as the party count N of the qubit family.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThresholdSet {
    pub ge_threshold: f64,
    pub distill_threshold: f64,
    pub dur_bound_boundary: f64,
    pub dur_bisep_boundary: f64,
}

pub fn thresholds(d: usize, n: usize) -> Result<ThresholdSet> {
    if d < 2 || n < 2 {
        return Err(Error::BadDims { dims: vec![d, n] });
    }
    let dn1 = (d as f64).powi(n as i32 - 1);
    Ok(ThresholdSet {
        ge_threshold: 3.0 / (dn1 + 3.0),
        distill_threshold: 1.0 / (1.0 + dn1),
        dur_bound_boundary: 1.0 / (n as f64 + 1.0),
        dur_bisep_boundary: 0.5,
    })
}

/// Minimum eigenvalue of the partial transpose across the cut; negative
/// certifies NPT, hence entanglement across that cut.
pub fn ppt_min_eigenvalue(rho: &DensityMatrix, cut: &Bipartition) -> Result<f64> {
    let pt = partial_transpose(rho, cut)?;
    let vals = hermitian_eigenvalues(&pt)?;
    Ok(vals.first().copied().unwrap_or(0.0))
}

/// Trace norm of the realignment across the cut, minus one; positive
/// certifies entanglement (including some PPT-entangled states).
pub fn realignment_excess(rho: &DensityMatrix, cut: &Bipartition) -> Result<f64> {
    let r = realign(rho, cut)?;
    Ok(trace_norm(&r) - 1.0)
}

/// The projection distillability witness: compress the state onto the span
/// of the four vectors whose first k digits all equal i and remaining
/// digits all equal j (i, j in {0, 1} for every d), then return the minimum
/// eigenvalue of the partial transpose of that two-qubit-shaped block. For
/// the isotropic GHZ family the sign flips exactly at p = 1/(1+d^{n-1}),
/// independent of k.
pub fn projection_witness(rho: &DensityMatrix, k: usize) -> Result<f64> {
    let dims = rho.dims();
    let n = dims.len();
    if k < 1 || k > n / 2 {
        return Err(Error::BadParameter(format!(
            "left-group size k = {k} must lie in 1..={}",
            n / 2
        )));
    }
    // Composite index of the vector with digit `i` on the first k parties
    // and digit `j` on the rest.
    let st = crate::tensor::strides(dims);
    let left_w: usize = st[..k].iter().sum();
    let right_w: usize = st[k..].iter().sum();
    let idx = |i: usize, j: usize| i * left_w + j * right_w;
    let m = rho.matrix();
    let mut block = CMat::zeros((4, 4));
    for ri in 0..2 {
        for rj in 0..2 {
            for ci in 0..2 {
                for cj in 0..2 {
                    block[[ri * 2 + rj, ci * 2 + cj]] = m[[idx(ri, rj), idx(ci, cj)]];
                }
            }
        }
    }
    let dm = DensityMatrix::from_parts(block, vec![2, 2])?;
    let cut = Bipartition::new(&[0], 2)?;
    let pt = partial_transpose(&dm, &cut)?;
    let vals = hermitian_eigenvalues(&pt)?;
    Ok(vals.first().copied().unwrap_or(0.0))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::BadParameter(format!(
            "alpha = {alpha} is outside (0, 1]"
        )));
    }
    Ok(())
}

/// The one-parameter trace-preserving positive map on 3x3 matrices, taken
/// entry for entry from its published form (note the transposed roles of
/// x_23 and x_32 in the output):
///
/// (1/(a + 1/a)) * [ a(x11+x22)    -x12          -a x13
///                   -x21          (1/a)(x22+x33) -x32
///                   -a x31        -x23           a x33 + (1/a) x11 ]
pub fn lambda_alpha_map(x: &CMat, alpha: f64) -> Result<CMat> {
    check_alpha(alpha)?;
    let (r, c) = x.dim();
    if r != 3 || c != 3 {
        return Err(Error::ShapeMismatch {
            rows: r,
            cols: c,
            expected: 3,
        });
    }
    let s = 1.0 / (alpha + 1.0 / alpha);
    let a = alpha;
    let mut out = CMat::zeros((3, 3));
    out[[0, 0]] = (x[[0, 0]] + x[[1, 1]]) * a;
    out[[0, 1]] = -x[[0, 1]];
    out[[0, 2]] = -x[[0, 2]] * a;
    out[[1, 0]] = -x[[1, 0]];
    out[[1, 1]] = (x[[1, 1]] + x[[2, 2]]) / a;
    out[[1, 2]] = -x[[2, 1]];
    out[[2, 0]] = -x[[2, 0]] * a;
    out[[2, 1]] = -x[[1, 2]];
    out[[2, 2]] = x[[2, 2]] * a + x[[0, 0]] / a;
    out.mapv_inplace(|z| z * s);
    Ok(out)
}

/// Minimum eigenvalue of (I_9 (x) Lambda_alpha) rho for a three-qutrit
/// state, the map acting on the last qutrit. Negative on a PPT state
/// certifies PPT entanglement.
pub fn map_witness(rho: &DensityMatrix, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if rho.dims() != [3, 3, 3] {
        return Err(Error::DimMismatch(format!(
            "map witness needs dims [3, 3, 3], got {:?}",
            rho.dims()
        )));
    }
    let m = rho.matrix();
    let mut out = CMat::zeros((27, 27));
    let mut block = CMat::zeros((3, 3));
    for bi in 0..9 {
        for bj in 0..9 {
            for a in 0..3 {
                for b in 0..3 {
                    block[[a, b]] = m[[bi * 3 + a, bj * 3 + b]];
                }
            }
            let mapped = lambda_alpha_map(&block, alpha)?;
            for a in 0..3 {
                for b in 0..3 {
                    out[[bi * 3 + a, bj * 3 + b]] = mapped[[a, b]];
                }
            }
        }
    }
    let vals = hermitian_eigenvalues(&out)?;
    Ok(vals.first().copied().unwrap_or(0.0))
}

/// Minimum of [`map_witness`] over an alpha grid, with the first alpha
/// attaining it.
pub fn map_witness_min(rho: &DensityMatrix, alphas: &[f64]) -> Result<(f64, f64)> {
    if alphas.is_empty() {
        return Err(Error::BadParameter("empty alpha grid".into()));
    }
    let mut best = f64::INFINITY;
    let mut best_alpha = alphas[0];
    for &a in alphas {
        let v = map_witness(rho, a)?;
        if v < best {
            best = v;
            best_alpha = a;
        }
    }
    Ok((best, best_alpha))
}

/// The standard alpha grid 0.01, 0.02, ..., 1.00.
pub fn default_alpha_grid() -> Vec<f64> {
    (1..=100).map(|i| i as f64 / 100.0).collect()
}
