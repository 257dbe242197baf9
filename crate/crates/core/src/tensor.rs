//! Multipartite index bookkeeping: density matrices and state vectors with
//! attached subsystem dimensions, bipartitions, partial trace, partial
//! transpose, realignment, and subsystem permutation.

use crate::eig::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::mat::{hermitian_defect, outer, trace, CMat};
use crate::tol::{NORM_TOL, PSD_TOL, PSD_TOL_STRICT, STATE_TOL, STATE_TOL_STRICT};
use num_complex::Complex64;

/// Validation strength for [`DensityMatrix::validate`]. `Strict` is meant for
/// outputs of exactly-trace-preserving constructions (channel outputs, state
/// constructors), where only rounding noise is acceptable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    Default,
    Strict,
}

impl ValidationMode {
    fn psd_tol(self) -> f64 {
        match self {
            ValidationMode::Default => PSD_TOL,
            ValidationMode::Strict => PSD_TOL_STRICT,
        }
    }
    fn state_tol(self) -> f64 {
        match self {
            ValidationMode::Default => STATE_TOL,
            ValidationMode::Strict => STATE_TOL_STRICT,
        }
    }
}

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(Error::BadDims {
            dims: dims.to_vec(),
        });
    }
    Ok(dims.iter().product())
}

/// Stride of each subsystem digit in the composite index; subsystem 0 is the
/// most significant.
pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let n = dims.len();
    let mut s = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

/// Composite index of a digit tuple.
pub(crate) fn compose(digits: &[usize], dims: &[usize]) -> usize {
    debug_assert_eq!(digits.len(), dims.len());
    let mut idx = 0;
    for (k, &dig) in digits.iter().enumerate() {
        debug_assert!(dig < dims[k]);
        idx = idx * dims[k] + dig;
    }
    idx
}

/// Digit tuple of a composite index.
pub(crate) fn decompose(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0usize; dims.len()];
    for k in (0..dims.len()).rev() {
        digits[k] = idx % dims[k];
        idx /= dims[k];
    }
    digits
}

/// A square complex matrix together with the subsystem dimensions its row and
/// column indices factor over. The carrier of every state in the crate.
///
/// Construction through [`DensityMatrix::new`] checks shape, Hermiticity and
/// unit trace (cheap, no eigensolve); [`DensityMatrix::from_parts`] checks
/// shape only and exists for intermediate values that are not claimed to be
/// physical (channel outputs before verification, unnormalized blocks).
/// Positivity is only ever checked by the explicit [`validate`] call, which
/// costs an eigensolve.
///
/// [`validate`]: DensityMatrix::validate
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMat,
    dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(mat: CMat, dims: Vec<usize>) -> Result<Self> {
        let dm = Self::from_parts(mat, dims)?;
        let norm_scale = crate::mat::frobenius(&dm.mat).max(1.0);
        let defect = hermitian_defect(&dm.mat);
        if defect > STATE_TOL * norm_scale {
            return Err(Error::NotHermitian {
                residual: defect,
                tol: STATE_TOL * norm_scale,
            });
        }
        let tr = trace(&dm.mat);
        if (tr - Complex64::new(1.0, 0.0)).norm() > STATE_TOL {
            return Err(Error::TraceNotOne {
                trace: tr.re,
                tol: STATE_TOL,
            });
        }
        Ok(dm)
    }

    /// Shape-checked construction without physicality checks.
    pub fn from_parts(mat: CMat, dims: Vec<usize>) -> Result<Self> {
        let side = check_dims(&dims)?;
        let (rows, cols) = mat.dim();
        if rows != cols || rows != side {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                expected: side,
            });
        }
        Ok(DensityMatrix { mat, dims })
    }

    /// The maximally mixed state I/D on the given dimensions.
    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let side = check_dims(&dims)?;
        let mat = crate::mat::identity(side).mapv(|z| z / side as f64);
        Ok(DensityMatrix { mat, dims })
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn into_matrix(self) -> CMat {
        self.mat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_subsystems(&self) -> usize {
        self.dims.len()
    }

    /// Composite Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        trace(&self.mat)
    }

    /// Full physicality check: Hermitian, unit trace, and minimum eigenvalue
    /// above `-psd_tol` for the chosen mode. Costs one eigensolve.
    pub fn validate(&self, mode: ValidationMode) -> Result<()> {
        let tol = mode.state_tol();
        let norm_scale = crate::mat::frobenius(&self.mat).max(1.0);
        let defect = hermitian_defect(&self.mat);
        if defect > tol * norm_scale {
            return Err(Error::NotHermitian {
                residual: defect,
                tol: tol * norm_scale,
            });
        }
        let tr = trace(&self.mat);
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol {
            return Err(Error::TraceNotOne {
                trace: tr.re,
                tol,
            });
        }
        let vals = hermitian_eigenvalues(&self.mat)?;
        let lambda_min = vals.first().copied().unwrap_or(0.0);
        if lambda_min < -mode.psd_tol() {
            return Err(Error::NotPositive {
                lambda_min,
                tol: mode.psd_tol(),
            });
        }
        Ok(())
    }
}

/// A pure state: complex amplitudes over a multipartite basis, unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
    dims: Vec<usize>,
}

impl StateVector {
    pub fn new(amps: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        let side = check_dims(&dims)?;
        if amps.len() != side {
            return Err(Error::ShapeMismatch {
                rows: amps.len(),
                cols: 1,
                expected: side,
            });
        }
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                norm,
                tol: NORM_TOL,
            });
        }
        Ok(StateVector { amps, dims })
    }

    /// Scale an unnormalized amplitude list to unit norm. Errors on the zero
    /// vector.
    pub fn normalized(mut amps: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NotNormalized {
                norm: 0.0,
                tol: NORM_TOL,
            });
        }
        for a in &mut amps {
            *a /= norm;
        }
        Self::new(amps, dims)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// <self|other>.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dims != other.dims {
            return Err(Error::DimMismatch(format!(
                "inner product between dims {:?} and {:?}",
                self.dims, other.dims
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// The rank-one density matrix |psi><psi|.
    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix {
            mat: outer(&self.amps, &self.amps),
            dims: self.dims.clone(),
        }
    }
}

/// An ordered split of the subsystem positions into two nonempty groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    left: Vec<usize>,
    right: Vec<usize>,
    n: usize,
}

impl Bipartition {
    /// Build from the left group; the right group is the complement in
    /// `0..n`. Both groups must end up nonempty.
    pub fn new(left: &[usize], n: usize) -> Result<Self> {
        let mut l = left.to_vec();
        l.sort_unstable();
        l.dedup();
        if l.len() != left.len()
            || l.is_empty()
            || l.len() >= n
            || l.iter().any(|&i| i >= n)
        {
            return Err(Error::BadBipartition {
                left: left.to_vec(),
                n,
            });
        }
        let right: Vec<usize> = (0..n).filter(|i| !l.contains(i)).collect();
        Ok(Bipartition { left: l, right, n })
    }

    /// The cut isolating subsystem `k` from the rest.
    pub fn one_vs_rest(k: usize, n: usize) -> Result<Self> {
        Self::new(&[k], n)
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn n_subsystems(&self) -> usize {
        self.n
    }

    /// Compact text form, e.g. "0|12".
    pub fn label(&self) -> String {
        let side = |v: &[usize]| {
            v.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        // Single digits read fine without separators; keep commas only when
        // an index needs more than one digit.
        if self.n <= 10 {
            let compact = |v: &[usize]| v.iter().map(|i| i.to_string()).collect::<String>();
            format!("{}|{}", compact(&self.left), compact(&self.right))
        } else {
            format!("{}|{}", side(&self.left), side(&self.right))
        }
    }

    fn check_against(&self, dims: &[usize]) -> Result<()> {
        if self.n != dims.len() {
            return Err(Error::BadBipartition {
                left: self.left.clone(),
                n: dims.len(),
            });
        }
        Ok(())
    }

    /// Composite dimensions (product over each group).
    pub fn group_dims(&self, dims: &[usize]) -> (usize, usize) {
        let m = self.left.iter().map(|&i| dims[i]).product();
        let n = self.right.iter().map(|&i| dims[i]).product();
        (m, n)
    }
}

/// Reduction onto the kept subsystems; `keep` need not be contiguous but is
/// used in sorted order, so the output dims are the kept dims in their
/// original relative order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let dims = rho.dims();
    let n = dims.len();
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() || kept.len() != keep.len() {
        return Err(Error::BadParameter(format!(
            "partial_trace keep set {keep:?} must be nonempty without duplicates"
        )));
    }
    if let Some(&bad) = kept.iter().find(|&&i| i >= n) {
        return Err(Error::SubsystemOutOfRange { index: bad, n });
    }
    let traced: Vec<usize> = (0..n).filter(|i| !kept.contains(i)).collect();
    let st = strides(dims);

    let kept_dims: Vec<usize> = kept.iter().map(|&i| dims[i]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&i| dims[i]).collect();
    let dk: usize = kept_dims.iter().product();
    let dt: usize = traced_dims.iter().product::<usize>().max(1);

    // Offset of each group index into the full composite index.
    let offsets = |group: &[usize], group_dims: &[usize], count: usize| -> Vec<usize> {
        (0..count)
            .map(|gidx| {
                let digs = decompose(gidx, group_dims);
                digs.iter()
                    .zip(group)
                    .map(|(&dig, &pos)| dig * st[pos])
                    .sum()
            })
            .collect()
    };
    let keep_off = offsets(&kept, &kept_dims, dk);
    let traced_off = if traced.is_empty() {
        vec![0usize]
    } else {
        offsets(&traced, &traced_dims, dt)
    };

    let m = rho.matrix();
    let mut out = CMat::zeros((dk, dk));
    for rk in 0..dk {
        for ck in 0..dk {
            let mut s = Complex64::new(0.0, 0.0);
            for &toff in &traced_off {
                s += m[[keep_off[rk] + toff, keep_off[ck] + toff]];
            }
            out[[rk, ck]] = s;
        }
    }
    Ok(DensityMatrix {
        mat: out,
        dims: kept_dims,
    })
}

/// Left/right split of every composite index: `idx = l[idx] + r[idx]` where
/// `l` collects the digit contributions of the left-group positions.
fn split_contributions(dims: &[usize], left: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let d: usize = dims.iter().product();
    let st = strides(dims);
    let mut l = vec![0usize; d];
    let mut r = vec![0usize; d];
    for idx in 0..d {
        let digs = decompose(idx, dims);
        let lp: usize = left.iter().map(|&pos| digs[pos] * st[pos]).sum();
        l[idx] = lp;
        r[idx] = idx - lp;
    }
    (l, r)
}

/// Transpose the indices of the left group only. Pure entry permutation, so
/// applying it twice returns the input bit for bit. The result is generally
/// not positive, hence a plain matrix.
pub fn partial_transpose(rho: &DensityMatrix, cut: &Bipartition) -> Result<CMat> {
    cut.check_against(rho.dims())?;
    let d = rho.dim();
    let (l, r) = split_contributions(rho.dims(), cut.left());
    let m = rho.matrix();
    let mut out = CMat::zeros((d, d));
    for row in 0..d {
        for col in 0..d {
            out[[l[col] + r[row], l[row] + r[col]]] = m[[row, col]];
        }
    }
    Ok(out)
}

/// Reorder subsystems: entry `p` of `perm` names the old position that moves
/// to new position `p`.
pub fn permute_subsystems(rho: &DensityMatrix, perm: &[usize]) -> Result<DensityMatrix> {
    let dims = rho.dims();
    let n = dims.len();
    let mut seen = perm.to_vec();
    seen.sort_unstable();
    if perm.len() != n || seen != (0..n).collect::<Vec<_>>() {
        return Err(Error::BadParameter(format!(
            "{perm:?} is not a permutation of 0..{n}"
        )));
    }
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let d = rho.dim();
    let mut map = vec![0usize; d];
    for (idx, slot) in map.iter_mut().enumerate() {
        let digs = decompose(idx, dims);
        let new_digs: Vec<usize> = perm.iter().map(|&p| digs[p]).collect();
        *slot = compose(&new_digs, &new_dims);
    }
    let m = rho.matrix();
    let mut out = CMat::zeros((d, d));
    for row in 0..d {
        for col in 0..d {
            out[[map[row], map[col]]] = m[[row, col]];
        }
    }
    Ok(DensityMatrix {
        mat: out,
        dims: new_dims,
    })
}

/// Realignment across a cut: with the left group (composite dimension m)
/// ahead of the right group (composite dimension n), the output is the
/// m^2 x n^2 matrix R[(i,j),(k,l)] = rho[(i,k),(j,l)]. Non-contiguous or
/// interleaved cuts are handled by an explicit subsystem permutation first,
/// lexicographic within each group.
pub fn realign(rho: &DensityMatrix, cut: &Bipartition) -> Result<CMat> {
    cut.check_against(rho.dims())?;
    let perm: Vec<usize> = cut.left().iter().chain(cut.right()).copied().collect();
    let already_ordered = perm.iter().enumerate().all(|(i, &p)| i == p);
    let reordered;
    let rho_m: &CMat = if already_ordered {
        rho.matrix()
    } else {
        reordered = permute_subsystems(rho, &perm)?;
        reordered.matrix()
    };
    let (m, nr) = cut.group_dims(rho.dims());
    let mut out = CMat::zeros((m * m, nr * nr));
    for i in 0..m {
        for j in 0..m {
            for k in 0..nr {
                for l in 0..nr {
                    out[[i * m + j, k * nr + l]] = rho_m[[i * nr + k, j * nr + l]];
                }
            }
        }
    }
    Ok(out)
}
