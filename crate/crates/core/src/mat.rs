//! Dense complex matrices and the handful of primitive operations everything
//! else is built from.
//!
//! Matrices are `ndarray::Array2<Complex64>`, row-major. Composite indices
//! follow one fixed convention crate-wide: subsystem 0 is the most
//! significant digit of the row/column index.

use ndarray::Array2;
use num_complex::Complex64;

pub type CMat = Array2<Complex64>;

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> CMat {
    Array2::eye(n)
}

/// Conjugate transpose.
pub fn dagger(a: &CMat) -> CMat {
    a.t().mapv(|z| z.conj())
}

pub fn matmul(a: &CMat, b: &CMat) -> CMat {
    a.dot(b)
}

/// Kronecker product; subsystem order left-to-right matches index
/// significance (left factor owns the most significant digits).
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    ndarray::linalg::kron(a, b)
}

/// Fold `kron` over a list of factors, left to right.
pub fn kron_all(factors: &[CMat]) -> CMat {
    assert!(!factors.is_empty(), "kron_all needs at least one factor");
    let mut out = factors[0].clone();
    for f in &factors[1..] {
        out = kron(&out, f);
    }
    out
}

pub fn trace(a: &CMat) -> Complex64 {
    a.diag().sum()
}

pub fn frobenius(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// ||A - A^dag||_F, the Hermiticity defect.
pub fn hermitian_defect(a: &CMat) -> f64 {
    let n = a.nrows();
    debug_assert_eq!(n, a.ncols());
    let mut s = 0.0;
    for r in 0..n {
        for col in 0..n {
            let d = a[[r, col]] - a[[col, r]].conj();
            s += d.norm_sqr();
        }
    }
    s.sqrt()
}

/// Largest entrywise absolute difference between two same-shaped matrices.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    debug_assert_eq!(a.dim(), b.dim());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Rank-one |u><v|.
pub fn outer(u: &[Complex64], v: &[Complex64]) -> CMat {
    let mut out = Array2::zeros((u.len(), v.len()));
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            out[[i, j]] = ui * vj.conj();
        }
    }
    out
}
