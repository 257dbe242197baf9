//! Subcommand bodies. Every function returns the process exit code on
//! success; errors bubble to main where they map onto the documented codes
//! (1 usage, 2 numerical validation).

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use entanglia::criteria::{
    assess, default_alpha_grid, default_tolerance, map_witness_min, WitnessOrientation,
};
use entanglia::mat::frobenius;
use entanglia::{
    apply_channel, canonical_cut, canonical_pauli_channel, dur_block, dur_channel_literal,
    dur_state, find_crossing, find_crossing_in_gamma, ghz, hermitian_eigenvalues, isotropic_ghz,
    load_channel, load_state, noisy_masking_pipeline, partial_transpose, ppt_min_eigenvalue,
    projection_witness, realignment_excess, rho0, sweep_point, thresholds,
    tripartite_pauli_channel, uniformity_check, verify_channel, Bipartition, CompletenessPolicy,
    CrossingMetric, DensityMatrix, Error, KrausChannel, Result, StateVector,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

use crate::grid::{parse_grid, sig12};
use crate::{
    AnalyzeArgs, DephaseArgs, DurArgs, GhzNoiseArgs, MaskVerifyArgs, VerifyChannelArgs,
};

/// Tolerance for the builtin example1 claim that the channel output equals
/// the isotropic state exactly.
const EXAMPLE1_GAP_TOL: f64 = 1e-12;

pub fn code_for(err: &Error) -> u8 {
    match err {
        Error::NotHermitian { .. }
        | Error::TraceNotOne { .. }
        | Error::NotPositive { .. }
        | Error::NotNormalized { .. }
        | Error::NoSignChange { .. } => 2,
        _ => 1,
    }
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::BadParameter(format!("thread pool: {e}")))
}

fn write_lines(out: Option<&Path>, header: &str, rows: &[String]) -> Result<()> {
    let emit = |w: &mut dyn Write| -> std::io::Result<()> {
        writeln!(w, "{header}")?;
        for r in rows {
            writeln!(w, "{r}")?;
        }
        w.flush()
    };
    match out {
        Some(path) => emit(&mut BufWriter::new(File::create(path)?))?,
        None => emit(&mut std::io::stdout().lock())?,
    }
    Ok(())
}

fn verdict_tolerance() -> Result<f64> {
    match std::env::var("ENTANGLIA_TOL") {
        Ok(text) => {
            let v: f64 = text
                .trim()
                .parse()
                .map_err(|_| Error::BadParameter(format!("ENTANGLIA_TOL `{text}` is not a number")))?;
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::BadParameter(format!(
                    "ENTANGLIA_TOL must be a positive number, got {v}"
                )));
            }
            Ok(v)
        }
        Err(_) => Ok(default_tolerance()),
    }
}

pub fn ghz_noise(args: &GhzNoiseArgs, threads: Option<usize>) -> Result<u8> {
    let grid = parse_grid(&args.p)?;
    let thr = thresholds(args.d, args.n)?;
    let cut = Bipartition::one_vs_rest(0, args.n)?;
    let rows = pool(threads)?.install(|| {
        grid.par_iter()
            .map(|&p| {
                let rho = isotropic_ghz(args.d, args.n, p)?;
                let ppt = ppt_min_eigenvalue(&rho, &cut)?;
                let witness = projection_witness(&rho, 1)?;
                let excess = realignment_excess(&rho, &cut)?;
                Ok(format!(
                    "{},{},{},{},{}",
                    sig12(p),
                    p > thr.ge_threshold,
                    sig12(ppt),
                    sig12(witness),
                    sig12(excess)
                ))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    write_lines(
        args.out.as_deref(),
        "p,ge_certified,ppt_lambda_min,projection_witness,realign_excess",
        &rows,
    )?;
    Ok(0)
}

pub fn dur(args: &DurArgs, threads: Option<usize>) -> Result<u8> {
    let grid = parse_grid(&args.x)?;
    let n = args.n_parties;
    let rows = pool(threads)?.install(|| {
        grid.par_iter()
            .map(|&x| {
                let rho = dur_state(n, x)?;
                let mut ppt = f64::INFINITY;
                for k in 0..n {
                    ppt = ppt
                        .min(ppt_min_eigenvalue(&rho, &Bipartition::one_vs_rest(k, n)?)?);
                }
                let block = dur_block(n, x, 1)?;
                let compressed = DensityMatrix::from_parts(block.compressed(), vec![2, 2])?;
                let pt = partial_transpose(&compressed, &Bipartition::one_vs_rest(0, 2)?)?;
                let eigs = hermitian_eigenvalues(&pt)?;
                Ok(format!(
                    "{},{},{},{},{},{},{}",
                    sig12(x),
                    sig12(ppt),
                    sig12(eigs[0]),
                    sig12(eigs[1]),
                    sig12(eigs[2]),
                    sig12(eigs[3]),
                    x <= 0.5
                ))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    write_lines(
        args.out.as_deref(),
        "x,ppt_lambda_min_1vsRest,block_gamma_eig1,block_gamma_eig2,block_gamma_eig3,block_gamma_eig4,bisep_flag",
        &rows,
    )?;
    Ok(0)
}

pub fn dephase(args: &DephaseArgs, threads: Option<usize>) -> Result<u8> {
    let t_grid = parse_grid(&args.t)?;
    let g_grid = parse_grid(&args.gamma1)?;

    if let Some(metric_text) = &args.find_crossing {
        let metric: CrossingMetric = metric_text.parse()?;
        let result = if g_grid.len() == 1 {
            let bracket = (t_grid[0], *t_grid.last().unwrap());
            let t_star = find_crossing(metric, g_grid[0], bracket)?;
            json!({
                "metric": metric.to_string(),
                "fixed_gamma1": g_grid[0],
                "bracket": [bracket.0, bracket.1],
                "crossing_t": t_star,
            })
        } else if t_grid.len() == 1 {
            let bracket = (g_grid[0], *g_grid.last().unwrap());
            let g_star = find_crossing_in_gamma(metric, t_grid[0], bracket)?;
            json!({
                "metric": metric.to_string(),
                "fixed_t": t_grid[0],
                "bracket": [bracket.0, bracket.1],
                "crossing_gamma1": g_star,
            })
        } else {
            return Err(Error::BadParameter(
                "--find-crossing bisects along one axis; fix the other to a single value".into(),
            ));
        };
        println!("{}", serde_json::to_string_pretty(&result)?);
        return Ok(0);
    }

    let alphas = default_alpha_grid();
    let cut = canonical_cut();
    let rho_in = rho0();
    let mut points = Vec::with_capacity(t_grid.len() * g_grid.len());
    for &t in &t_grid {
        for &g in &g_grid {
            points.push((t, g));
        }
    }
    let rows = pool(threads)?.install(|| {
        points
            .par_iter()
            .map(|&(t, g)| {
                let rec = sweep_point(&rho_in, t, g, &alphas, &cut)?;
                let (map_min, map_alpha) = rec.map_min();
                Ok(format!(
                    "{},{},{},{},{},{}",
                    sig12(rec.t),
                    sig12(rec.gamma1),
                    sig12(rec.ppt_lambda_min),
                    sig12(rec.realign_excess),
                    sig12(map_min),
                    sig12(map_alpha)
                ))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    write_lines(
        args.out.as_deref(),
        "t,gamma1,ppt_lambda_min,realign_excess,map_lambda_min,map_argmin_alpha",
        &rows,
    )?;
    Ok(0)
}

fn repeated_basis_state(d: usize, n: usize, j: usize) -> Result<StateVector> {
    let dim = d.pow(n as u32);
    let mut idx = 0usize;
    for _ in 0..n {
        idx = idx * d + j;
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[idx] = Complex64::new(1.0, 0.0);
    StateVector::new(amps, vec![d; n])
}

pub fn mask_verify(args: &MaskVerifyArgs) -> Result<u8> {
    let report = match args.control.as_str() {
        "fourier" => noisy_masking_pipeline(args.d, args.n, args.p, args.m)?,
        "product" => {
            // Control run: push unmasked computational messages through the
            // same channel; their marginals should give the game away.
            let ch = canonical_pauli_channel(args.d, args.n, args.p)?;
            let outputs = (0..args.d)
                .map(|j| {
                    let msg = repeated_basis_state(args.d, args.n, j)?;
                    apply_channel(&ch, &msg.projector())
                })
                .collect::<Result<Vec<_>>>()?;
            let mut report = uniformity_check(&outputs, args.m)?;
            report.noisy = true;
            report.channel = Some(format!(
                "canonical-pauli(d={}, n={}, p={}) on computational product messages",
                args.d, args.n, args.p
            ));
            report
        }
        other => {
            return Err(Error::BadParameter(format!(
                "unknown control set `{other}` (expected fourier or product)"
            )))
        }
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if report.uniform { 0 } else { 2 })
}

pub fn analyze(args: &AnalyzeArgs) -> Result<u8> {
    let tol = verdict_tolerance()?;
    let rho = load_state(&args.state)?.into_density();
    let n = rho.dims().len();
    let cut = Bipartition::one_vs_rest(args.cut, n)?;

    let mut criteria = vec![
        assess(
            "ppt_lambda_min",
            ppt_min_eigenvalue(&rho, &cut)?,
            WitnessOrientation::NegativeIsEntangled,
            Bipartition::one_vs_rest(args.cut, n)?,
            tol,
        ),
        assess(
            "realign_excess",
            realignment_excess(&rho, &cut)?,
            WitnessOrientation::PositiveIsEntangled,
            Bipartition::one_vs_rest(args.cut, n)?,
            tol,
        ),
        assess(
            "projection_witness",
            projection_witness(&rho, 1)?,
            WitnessOrientation::NegativeIsEntangled,
            Bipartition::one_vs_rest(0, n)?,
            tol,
        ),
    ];

    let mut map_argmin_alpha = None;
    if rho.dims() == [3, 3, 3] {
        let (value, alpha) = map_witness_min(&rho, &default_alpha_grid())?;
        map_argmin_alpha = Some(alpha);
        criteria.push(assess(
            "map_lambda_min",
            value,
            WitnessOrientation::NegativeIsEntangled,
            Bipartition::new(&[0, 1], 3)?,
            tol,
        ));
    }

    let payload = json!({
        "state": args.state.display().to_string(),
        "dims": rho.dims(),
        "tolerance": tol,
        "map_argmin_alpha": map_argmin_alpha,
        "criteria": criteria
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "value": r.value,
                    "verdict": r.verdict,
                    "cut": r.cut.label(),
                    "tolerance": r.tolerance,
                })
            })
            .collect::<Vec<_>>(),
    });
    println!("{}", serde_json::to_string_pretty(&payload)?);
    Ok(0)
}

fn probes_for(ch: &KrausChannel) -> Result<Vec<DensityMatrix>> {
    let dims = ch.input_dims().to_vec();
    let mut probes = vec![DensityMatrix::maximally_mixed(dims.clone())?];
    let d = dims[0];
    if dims.len() >= 2 && dims.iter().all(|&x| x == d) {
        probes.push(ghz(d, dims.len())?.projector());
    }
    Ok(probes)
}

fn report_is_finite(r: &entanglia::ChannelReport) -> bool {
    r.global_residual.is_finite()
        && r.probe_trace_residuals.iter().all(|v| v.is_finite())
        && r.extras.values().all(|v| v.is_finite())
}

fn require<T>(opt: Option<T>, what: &str) -> Result<T> {
    opt.ok_or_else(|| Error::BadParameter(format!("builtin requires {what}")))
}

pub fn verify_channel_cmd(args: &VerifyChannelArgs) -> Result<u8> {
    let mut extras = BTreeMap::new();
    let mut claim_ok = true;

    let (source, ch) = match (&args.builtin, &args.file) {
        (Some(name), None) => {
            let ch = match name.as_str() {
                "canonical-pauli" => canonical_pauli_channel(
                    require(args.d, "--d")?,
                    require(args.n, "--n")?,
                    require(args.p, "--p")?,
                )?,
                "dur-literal" => {
                    dur_channel_literal(require(args.n_parties, "--N")?, require(args.x, "--x")?)?
                }
                "example1" => {
                    let p = require(args.p, "--p")?;
                    let ch = tripartite_pauli_channel(p)?;
                    let output = apply_channel(&ch, &ghz(2, 3)?.projector())?;
                    let target = isotropic_ghz(2, 3, p)?;
                    let gap: f64 = frobenius(&(output.matrix() - target.matrix()));
                    extras.insert("output_vs_isotropic_gap".to_string(), gap);
                    claim_ok = gap <= EXAMPLE1_GAP_TOL;
                    ch
                }
                other => {
                    return Err(Error::BadParameter(format!(
                        "unknown builtin `{other}` (expected canonical-pauli, dur-literal or example1)"
                    )))
                }
            };
            (format!("builtin:{name}"), ch)
        }
        (None, Some(path)) => (format!("file:{}", path.display()), load_channel(path)?),
        _ => {
            return Err(Error::BadParameter(
                "give exactly one of a builtin name or --file".into(),
            ))
        }
    };

    let mut report = verify_channel(&ch, &probes_for(&ch)?)?;
    report.extras.extend(extras);

    let verified = match ch.policy() {
        CompletenessPolicy::StrictCptp => {
            report.trace_preserving_globally && report.output_psd && claim_ok
        }
        // The literal constructions carry their residuals as data; a finite
        // report is the whole claim.
        CompletenessPolicy::VerifiedOnInputs => report_is_finite(&report),
    };

    let payload = json!({
        "source": source,
        "policy": ch.policy(),
        "verified": verified,
        "construction_report": ch.report(),
        "probe_report": report,
    });
    println!("{}", serde_json::to_string_pretty(&payload)?);
    Ok(if verified { 0 } else { 2 })
}
