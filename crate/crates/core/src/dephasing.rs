//! Global-dephasing experiment on the three-qutrit state rho(0): diagonal
//! Kraus families on qutrit A and on the joint BC block, (t, Gamma_1)
//! parameter sweeps over the three criteria, and bisection for the
//! sign-change boundaries.

use crate::channels::{CompletenessPolicy, KrausChannel, KrausTerm};
use crate::criteria::{map_witness_min, ppt_min_eigenvalue, realignment_excess};
use crate::error::{Error, Result};
use crate::mat::{dagger, CMat};
use crate::states::rho0;
use crate::tensor::{Bipartition, DensityMatrix};
use crate::tol::CROSSING_BRACKET_TOL;
use num_complex::Complex64;

/// Time point and dephasing rate, with the derived decay factors
/// gamma = e^{-Gamma_1 t/2} and omega = sqrt(1 - gamma^2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingParameters {
    t: f64,
    gamma1: f64,
}

impl DephasingParameters {
    pub fn new(t: f64, gamma1: f64) -> Result<Self> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::BadParameter(format!("time t = {t} must be >= 0")));
        }
        if !(0.0..=1.0).contains(&gamma1) {
            return Err(Error::BadParameter(format!(
                "rate gamma1 = {gamma1} is outside [0, 1]"
            )));
        }
        Ok(DephasingParameters { t, gamma1 })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma(&self) -> f64 {
        (-self.gamma1 * self.t / 2.0).exp()
    }

    pub fn omega(&self) -> f64 {
        (1.0 - self.gamma().powi(2)).max(0.0).sqrt()
    }
}

/// One sweep point: both scalar criteria plus the map witness on the whole
/// alpha grid.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub t: f64,
    pub gamma1: f64,
    pub ppt_lambda_min: f64,
    pub realign_excess: f64,
    pub map_lambda_min_by_alpha: Vec<(f64, f64)>,
}

impl SweepRecord {
    /// Minimum witness over the alpha grid with its first attaining alpha.
    pub fn map_min(&self) -> (f64, f64) {
        let mut best = f64::INFINITY;
        let mut best_alpha = f64::NAN;
        for &(a, v) in &self.map_lambda_min_by_alpha {
            if v < best {
                best = v;
                best_alpha = a;
            }
        }
        (best, best_alpha)
    }
}

fn diag27(entries: &[f64; 27]) -> CMat {
    let mut m = CMat::zeros((27, 27));
    for (i, &e) in entries.iter().enumerate() {
        m[[i, i]] = Complex64::new(e, 0.0);
    }
    m
}

/// The two diagonal Kraus families: three operators dephasing qutrit A and
/// nine dephasing the joint 9-level BC block. Each family alone sums to the
/// identity.
pub fn dephasing_families(params: &DephasingParameters) -> (Vec<CMat>, Vec<CMat>) {
    let g = params.gamma();
    let w = params.omega();

    let mut e_family = Vec::with_capacity(3);
    let mut e1 = [0.0; 27];
    for b in 0..9 {
        e1[b] = 1.0;
        e1[9 + b] = g;
        e1[18 + b] = g;
    }
    e_family.push(diag27(&e1));
    for level in 1..3 {
        let mut e = [0.0; 27];
        for b in 0..9 {
            e[9 * level + b] = w;
        }
        e_family.push(diag27(&e));
    }

    let mut f_family = Vec::with_capacity(9);
    let mut f1 = [0.0; 27];
    for a in 0..3 {
        f1[9 * a] = 1.0;
        for b in 1..9 {
            f1[9 * a + b] = g;
        }
    }
    f_family.push(diag27(&f1));
    for slot in 1..9 {
        let mut f = [0.0; 27];
        for a in 0..3 {
            f[9 * a + slot] = w;
        }
        f_family.push(diag27(&f));
    }
    (e_family, f_family)
}

/// The combined 27-term channel (products F_j E_i; the families commute,
/// all operators being diagonal). Strictly trace preserving.
pub fn dephasing_kraus(params: &DephasingParameters) -> Result<KrausChannel> {
    let (e_family, f_family) = dephasing_families(params);
    let mut terms = Vec::with_capacity(27);
    for f in &f_family {
        for e in &e_family {
            terms.push(KrausTerm {
                weight: 1.0,
                op: f.dot(e),
            });
        }
    }
    KrausChannel::new(vec![3, 3, 3], CompletenessPolicy::StrictCptp, terms)
}

/// Evolve a three-qutrit state: apply the A family, then the BC family.
/// All operators are real diagonal, so K^dagger = K and the order is
/// immaterial.
pub fn evolve(rho_in: &DensityMatrix, params: &DephasingParameters) -> Result<DensityMatrix> {
    if rho_in.dims() != [3, 3, 3] {
        return Err(Error::DimMismatch(format!(
            "dephasing needs dims [3, 3, 3], got {:?}",
            rho_in.dims()
        )));
    }
    let (e_family, f_family) = dephasing_families(params);
    let mut mid = CMat::zeros((27, 27));
    for e in &e_family {
        mid = mid + e.dot(rho_in.matrix()).dot(&dagger(e));
    }
    let mut out = CMat::zeros((27, 27));
    for f in &f_family {
        out = out + f.dot(&mid).dot(&dagger(f));
    }
    DensityMatrix::from_parts(out, vec![3, 3, 3])
}

/// The t -> infinity endpoint at positive rate: every off-diagonal entry
/// dies, leaving the diagonal part.
pub fn fully_dephased_limit(rho_in: &DensityMatrix) -> Result<DensityMatrix> {
    let m = rho_in.matrix();
    let side = m.nrows();
    let mut out = CMat::zeros((side, side));
    for i in 0..side {
        out[[i, i]] = m[[i, i]];
    }
    DensityMatrix::from_parts(out, rho_in.dims().to_vec())
}

/// The canonical cut A|BC for the experiment's bipartite criteria.
pub fn canonical_cut() -> Bipartition {
    Bipartition::one_vs_rest(0, 3).expect("cut 0|12 on three parties is valid")
}

/// Evaluate all three criteria at one (t, gamma1) point.
pub fn sweep_point(
    rho_in: &DensityMatrix,
    t: f64,
    gamma1: f64,
    alpha_grid: &[f64],
    cut: &Bipartition,
) -> Result<SweepRecord> {
    let params = DephasingParameters::new(t, gamma1)?;
    let rho_t = evolve(rho_in, &params)?;
    let ppt = ppt_min_eigenvalue(&rho_t, cut)?;
    let realign = realignment_excess(&rho_t, cut)?;
    let map = alpha_grid
        .iter()
        .map(|&a| crate::criteria::map_witness(&rho_t, a).map(|v| (a, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepRecord {
        t,
        gamma1,
        ppt_lambda_min: ppt,
        realign_excess: realign,
        map_lambda_min_by_alpha: map,
    })
}

/// Full grid sweep over (t, gamma1) in t-major order, starting from rho(0).
pub fn sweep(
    t_grid: &[f64],
    gamma_grid: &[f64],
    alpha_grid: &[f64],
    cut: &Bipartition,
) -> Result<Vec<SweepRecord>> {
    if t_grid.is_empty() || gamma_grid.is_empty() || alpha_grid.is_empty() {
        return Err(Error::BadParameter("empty sweep grid".into()));
    }
    let rho_in = rho0();
    let mut out = Vec::with_capacity(t_grid.len() * gamma_grid.len());
    for &t in t_grid {
        for &g in gamma_grid {
            out.push(sweep_point(&rho_in, t, g, alpha_grid, cut)?);
        }
    }
    Ok(out)
}

/// Which signed quantity a crossing search tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingMetric {
    Ppt,
    Realign,
    Map,
}

impl std::str::FromStr for CrossingMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ppt" => Ok(CrossingMetric::Ppt),
            "realign" => Ok(CrossingMetric::Realign),
            "map" => Ok(CrossingMetric::Map),
            other => Err(Error::BadParameter(format!(
                "unknown metric '{other}', expected ppt | realign | map"
            ))),
        }
    }
}

impl std::fmt::Display for CrossingMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CrossingMetric::Ppt => "ppt",
            CrossingMetric::Realign => "realign",
            CrossingMetric::Map => "map",
        };
        f.write_str(s)
    }
}

/// The metric value at one parameter point (map is minimized over the
/// alpha grid).
pub fn metric_value(
    rho_in: &DensityMatrix,
    metric: CrossingMetric,
    t: f64,
    gamma1: f64,
    alpha_grid: &[f64],
    cut: &Bipartition,
) -> Result<f64> {
    let params = DephasingParameters::new(t, gamma1)?;
    let rho_t = evolve(rho_in, &params)?;
    match metric {
        CrossingMetric::Ppt => ppt_min_eigenvalue(&rho_t, cut),
        CrossingMetric::Realign => realignment_excess(&rho_t, cut),
        CrossingMetric::Map => map_witness_min(&rho_t, alpha_grid).map(|(v, _)| v),
    }
}

fn bisect<F>(f: F, bracket: (f64, f64)) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut a, mut b) = bracket;
    if b <= a || !a.is_finite() || !b.is_finite() {
        return Err(Error::BadParameter(format!("bad bracket [{a}, {b}]")));
    }
    let fa = f(a)?;
    let fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if (fa > 0.0) == (fb > 0.0) {
        return Err(Error::NoSignChange { a, b, fa, fb });
    }
    let a_positive = fa > 0.0;
    while b - a > CROSSING_BRACKET_TOL {
        let mid = 0.5 * (a + b);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == a_positive {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Bisect the metric's sign change in t at fixed gamma1, to a bracket width
/// of 1e-4. Errors when the metric does not change sign on the bracket.
pub fn find_crossing(metric: CrossingMetric, fixed_gamma1: f64, bracket: (f64, f64)) -> Result<f64> {
    let rho_in = rho0();
    let alphas = crate::criteria::default_alpha_grid();
    let cut = canonical_cut();
    bisect(
        |t| metric_value(&rho_in, metric, t, fixed_gamma1, &alphas, &cut),
        bracket,
    )
}

/// Bisect the metric's sign change in gamma1 at fixed t.
pub fn find_crossing_in_gamma(
    metric: CrossingMetric,
    fixed_t: f64,
    bracket: (f64, f64),
) -> Result<f64> {
    let rho_in = rho0();
    let alphas = crate::criteria::default_alpha_grid();
    let cut = canonical_cut();
    bisect(
        |g| metric_value(&rho_in, metric, fixed_t, g, &alphas, &cut),
        bracket,
    )
}
