//! Tolerance and size constants used across the crate.
//!
//! Every threshold that decides a pass/fail or a verdict lives here with its
//! rationale, so no module carries a magic number of its own.

/// Jacobi sweep convergence: stop once the off-diagonal Frobenius norm falls
/// below this factor times the Frobenius norm of the input matrix.
pub const JACOBI_REL_TOL: f64 = 1e-12;

/// Hard cap on Jacobi sweeps. Convergence is quadratic once rotations are
/// small; at the dimensions handled here (<= a few hundred) fewer than 20
/// sweeps are ever observed, so hitting the cap signals a bug, not slowness.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Accepted Hermiticity defect ||H - H^dag||_F, relative to max(1, ||H||_F),
/// for eigensolver inputs.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-9;

/// Positivity gate for density-matrix validation: lambda_min >= -PSD_TOL.
pub const PSD_TOL: f64 = 1e-9;

/// Stricter positivity gate applied to channel outputs, where the input state
/// and the Kraus construction are both exact to rounding.
pub const PSD_TOL_STRICT: f64 = 1e-11;

/// Trace and Hermiticity gates for density-matrix validation (default mode).
pub const STATE_TOL: f64 = 1e-9;

/// Trace and Hermiticity gates in strict mode.
pub const STATE_TOL_STRICT: f64 = 1e-11;

/// State vectors must be normalized to within this of unit norm.
pub const NORM_TOL: f64 = 1e-12;

/// A channel counts as globally trace preserving when
/// ||sum_i w_i K_i^dag K_i - I||_F stays below this.
pub const CPTP_RESIDUAL_TOL: f64 = 1e-13;

/// Verdict band for criterion values: within +/- this of zero reports
/// "threshold" rather than a sign. Jacobi accuracy at dimension <= 81 is
/// comfortably better than this.
pub const VERDICT_TOL: f64 = 1e-9;

/// Masking uniformity: marginals count as message-independent when the
/// largest pairwise trace-norm distance stays below this. Far above
/// accumulated eigensolver error, far below any physical signal.
pub const MASK_UNIFORM_TOL: f64 = 1e-10;

/// Bisection stops when the bracket width reaches this.
pub const CROSSING_BRACKET_TOL: f64 = 1e-4;

/// Default cap on the composite Hilbert-space dimension; protects the
/// O(D^3) eigensolver from accidental huge inputs. Constructors take an
/// explicit cap where callers legitimately need more.
pub const DEFAULT_DIM_CAP: usize = 4096;
