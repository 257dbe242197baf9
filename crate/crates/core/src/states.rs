//! State families: GHZ and its phase-shifted basis, isotropic noise
//! mixtures, the Dür multiqubit family with its per-party blocks, and the
//! three-qutrit rank-five state built from an unextendible biseparable base.

use crate::error::{Error, Result};
use crate::mat::{identity, CMat};
use crate::tensor::{compose, DensityMatrix, StateVector};
use crate::tol::DEFAULT_DIM_CAP;
use num_complex::Complex64;
use std::f64::consts::TAU;

pub(crate) fn composite_dim(d: usize, n: usize, cap: usize) -> Result<usize> {
    if d < 2 || n < 2 {
        return Err(Error::BadDims { dims: vec![d; n] });
    }
    let big = (d as u128).pow(n as u32);
    if big > cap as u128 {
        return Err(Error::DimensionCap {
            dim: big.min(usize::MAX as u128) as usize,
            cap,
        });
    }
    Ok(big as usize)
}

fn check_weight(value: f64, name: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::BadParameter(format!(
            "{name} = {value} is outside [0, 1]"
        )));
    }
    Ok(())
}

/// |GHZ_{d,n}> = (1/sqrt d) sum_j |j,...,j>.
pub fn ghz(d: usize, n: usize) -> Result<StateVector> {
    ghz_capped(d, n, DEFAULT_DIM_CAP)
}

/// [`ghz`] with an explicit composite-dimension cap.
pub fn ghz_capped(d: usize, n: usize, cap: usize) -> Result<StateVector> {
    let dim = composite_dim(d, n, cap)?;
    let dims = vec![d; n];
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    for j in 0..d {
        amps[compose(&vec![j; n], &dims)] = amp;
    }
    StateVector::new(amps, dims)
}

/// p |GHZ><GHZ| + (1-p)/d^n I: the GHZ state under isotropic (white) noise.
pub fn isotropic_ghz(d: usize, n: usize, p: f64) -> Result<DensityMatrix> {
    check_weight(p, "p")?;
    let g = ghz(d, n)?;
    let dim = g.dim();
    let mut mat = g.projector().into_matrix();
    mat.mapv_inplace(|z| z * p);
    let w = (1.0 - p) / dim as f64;
    for i in 0..dim {
        mat[[i, i]] += w;
    }
    DensityMatrix::new(mat, vec![d; n])
}

/// The GHZ-diagonal basis member with phase index `q` and digit shifts
/// `i_1..i_{n-1}`: (1/sqrt d) sum_j w^{jq} |j, j+i_1, ..., j+i_{n-1}> with
/// additions mod d. The d^n of them are orthonormal and resolve the identity.
pub fn ghz_basis_state(d: usize, n: usize, q: usize, shifts: &[usize]) -> Result<StateVector> {
    let dim = composite_dim(d, n, DEFAULT_DIM_CAP)?;
    if q >= d {
        return Err(Error::BadParameter(format!(
            "phase index q = {q} out of range for d = {d}"
        )));
    }
    if shifts.len() != n - 1 {
        return Err(Error::BadParameter(format!(
            "expected {} shifts, got {}",
            n - 1,
            shifts.len()
        )));
    }
    if let Some(&s) = shifts.iter().find(|&&s| s >= d) {
        return Err(Error::BadParameter(format!(
            "shift {s} out of range for d = {d}"
        )));
    }
    let dims = vec![d; n];
    let scale = 1.0 / (d as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let mut digits = vec![0usize; n];
    for j in 0..d {
        digits[0] = j;
        for (slot, &s) in digits[1..].iter_mut().zip(shifts) {
            *slot = (j + s) % d;
        }
        let angle = TAU * (j * q) as f64 / d as f64;
        amps[compose(&digits, &dims)] = Complex64::from_polar(scale, angle);
    }
    StateVector::new(amps, dims)
}

/// Message state |psi_k>: the zero-shift GHZ basis member with phase index k.
pub fn fourier_masked_state(d: usize, n: usize, k: usize) -> Result<StateVector> {
    if k >= d {
        return Err(Error::BadParameter(format!(
            "message index k = {k} out of range for d = {d}"
        )));
    }
    ghz_basis_state(d, n, k, &vec![0; n - 1])
}

/// Basis index of |phi_k> (a single excitation at party k, 1-based) or of
/// its global spin flip |phi-bar_k>.
pub(crate) fn dur_basis_index(n_parties: usize, k: usize, flipped: bool) -> usize {
    let stride = 1usize << (n_parties - k);
    if flipped {
        ((1usize << n_parties) - 1) ^ stride
    } else {
        stride
    }
}

/// rho_N(x) = x |Psi_G><Psi_G| + (1-x)/2N sum_k (P_k + P-bar_k) on N qubits.
pub fn dur_state(n_parties: usize, x: f64) -> Result<DensityMatrix> {
    dur_state_capped(n_parties, x, DEFAULT_DIM_CAP)
}

/// [`dur_state`] with an explicit composite-dimension cap.
pub fn dur_state_capped(n_parties: usize, x: f64, cap: usize) -> Result<DensityMatrix> {
    check_weight(x, "x")?;
    if n_parties < 3 {
        return Err(Error::BadParameter(format!(
            "the family needs at least 3 parties, got {n_parties}"
        )));
    }
    let mut mat = ghz_capped(2, n_parties, cap)?.projector().into_matrix();
    mat.mapv_inplace(|z| z * x);
    let w = (1.0 - x) / (2 * n_parties) as f64;
    for k in 1..=n_parties {
        for flipped in [false, true] {
            let idx = dur_basis_index(n_parties, k, flipped);
            mat[[idx, idx]] += w;
        }
    }
    DensityMatrix::new(mat, vec![2; n_parties])
}

/// One summand alpha^(k) of [`dur_state`], kept unnormalized on purpose: its
/// trace is 1/N, so it is never a density matrix on its own. The only way at
/// the raw entries is [`DurBlock::unnormalized_matrix`], which keeps every
/// use of the unscaled block an explicit decision.
#[derive(Debug, Clone)]
pub struct DurBlock {
    mat: CMat,
    n_parties: usize,
    k: usize,
}

impl DurBlock {
    /// The raw block; trace 1/N, not 1.
    pub fn unnormalized_matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn dims(&self) -> Vec<usize> {
        vec![2; self.n_parties]
    }

    /// 1-based party index the block belongs to.
    pub fn party(&self) -> usize {
        self.k
    }

    pub fn trace(&self) -> f64 {
        crate::mat::trace(&self.mat).re
    }

    /// The block restricted to its four-dimensional support, written as a
    /// two-qubit system: the first factor distinguishes |0...0> from |1...1>
    /// on the parties other than k, the second factor is party k itself.
    pub fn compressed(&self) -> CMat {
        let full = (1usize << self.n_parties) - 1;
        let stride = 1usize << (self.n_parties - self.k);
        let idx = |rest: usize, own: usize| rest * (full - stride) + own * stride;
        let mut out = CMat::zeros((4, 4));
        for rb in 0..2 {
            for ra in 0..2 {
                for cb in 0..2 {
                    for ca in 0..2 {
                        out[[rb * 2 + ra, cb * 2 + ca]] = self.mat[[idx(rb, ra), idx(cb, ca)]];
                    }
                }
            }
        }
        out
    }
}

/// alpha^(k) = (x/N)|Psi_G><Psi_G| + (1-x)/2N (P_k + P-bar_k), k 1-based.
pub fn dur_block(n_parties: usize, x: f64, k: usize) -> Result<DurBlock> {
    check_weight(x, "x")?;
    if n_parties < 3 {
        return Err(Error::BadParameter(format!(
            "the family needs at least 3 parties, got {n_parties}"
        )));
    }
    if k < 1 || k > n_parties {
        return Err(Error::SubsystemOutOfRange {
            index: k,
            n: n_parties,
        });
    }
    let mut mat = ghz_capped(2, n_parties, DEFAULT_DIM_CAP)?
        .projector()
        .into_matrix();
    mat.mapv_inplace(|z| z * (x / n_parties as f64));
    let w = (1.0 - x) / (2 * n_parties) as f64;
    for flipped in [false, true] {
        let idx = dur_basis_index(n_parties, k, flipped);
        mat[[idx, idx]] += w;
    }
    Ok(DurBlock { mat, n_parties, k })
}

// Qutrit factors of the biseparable base; unnormalized on purpose, the
// member states are scaled to unit norm as a whole.
fn eta(i: usize) -> [f64; 3] {
    [1.0, if i == 0 { 1.0 } else { -1.0 }, 0.0]
}

fn xi(j: usize) -> [f64; 3] {
    [0.0, 1.0, if j == 0 { 1.0 } else { -1.0 }]
}

const KET0: [f64; 3] = [1.0, 0.0, 0.0];
const KET2: [f64; 3] = [0.0, 0.0, 1.0];
const PLUS: [f64; 3] = [1.0, 1.0, 1.0];

fn product3(a: &[f64; 3], b: &[f64; 3], c3: &[f64; 3]) -> Vec<Complex64> {
    let mut amps = Vec::with_capacity(27);
    for x in a {
        for y in b {
            for z in c3 {
                amps.push(Complex64::new(x * y * z, 0.0));
            }
        }
    }
    amps
}

/// |psi(i,j)>_ell before normalization.
fn ubb_member(i: usize, j: usize, ell: usize) -> Vec<Complex64> {
    let e = eta(i);
    let x = xi(j);
    match ell {
        1 => product3(&KET0, &e, &x),
        2 => product3(&e, &KET2, &x),
        3 => product3(&KET2, &x, &e),
        4 => product3(&e, &x, &KET0),
        5 => product3(&x, &KET0, &e),
        6 => product3(&x, &e, &KET2),
        _ => unreachable!("ell ranges over 1..=6"),
    }
}

/// The unextendible biseparable base B (28 states) and its subset B1 (22
/// states, B minus the six |psi(0,0)>_ell). Order of B: the 24 product
/// members with (i,j) lexicographic and ell = 1..6 inner, then the three
/// difference states, then the all-plus product state. All normalized.
pub fn ubb_states() -> (Vec<StateVector>, Vec<StateVector>) {
    let dims = vec![3usize, 3, 3];
    let normalize =
        |amps: Vec<Complex64>| StateVector::normalized(amps, dims.clone()).expect("nonzero");
    let mut b = Vec::with_capacity(28);
    for i in 0..2 {
        for j in 0..2 {
            for ell in 1..=6 {
                b.push(normalize(ubb_member(i, j, ell)));
            }
        }
    }
    for (l1, l2) in [(1, 2), (3, 4), (5, 6)] {
        let a1 = ubb_member(0, 0, l1);
        let a2 = ubb_member(0, 0, l2);
        b.push(normalize(a1.iter().zip(&a2).map(|(u, v)| u - v).collect()));
    }
    b.push(normalize(product3(&PLUS, &PLUS, &PLUS)));
    // (i,j) = (0,0) occupies the first six slots, so B1 is the tail.
    let b1 = b[6..].to_vec();
    (b, b1)
}

/// rho(0) = (1/5)(I_27 - sum over B1 of |psi~><psi~|): trace 1, rank 5 with
/// eigenvalue 1/5, NPT across every one-vs-rest cut.
pub fn rho0() -> DensityMatrix {
    let (_, b1) = ubb_states();
    let mut mat = identity(27);
    for psi in &b1 {
        mat -= psi.projector().matrix();
    }
    mat.mapv_inplace(|z| z / 5.0);
    DensityMatrix::from_parts(mat, vec![3, 3, 3]).expect("27 = 3*3*3")
}
