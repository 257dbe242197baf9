//! Parameter grids given on the command line: either a bare number or
//! `start:end:step` with both endpoints included (the end within half a
//! step, so `0:1:0.01` really has 101 points despite rounding).

use entanglia::{Error, Result};

const MAX_GRID_POINTS: usize = 1_000_000;

pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.len() {
        1 => Ok(vec![parse_number(parts[0])?]),
        3 => build(
            parse_number(parts[0])?,
            parse_number(parts[1])?,
            parse_number(parts[2])?,
        ),
        _ => Err(Error::BadParameter(format!(
            "grid `{text}` is neither a number nor start:end:step"
        ))),
    }
}

fn parse_number(s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::BadParameter(format!("`{s}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::BadParameter(format!("`{s}` is not finite")));
    }
    Ok(v)
}

fn build(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if end < start {
        return Err(Error::BadParameter(format!(
            "grid end {end} below start {start}"
        )));
    }
    if start == end {
        return Ok(vec![start]);
    }
    if step <= 0.0 {
        return Err(Error::BadParameter(format!(
            "grid step {step} must be positive"
        )));
    }
    let mut out = Vec::new();
    // start + i * step, not repeated addition: the grid must be identical
    // however the points are later distributed over threads.
    for i in 0..=MAX_GRID_POINTS {
        let v = start + i as f64 * step;
        if v > end + step / 2.0 {
            return Ok(out);
        }
        out.push(v);
    }
    Err(Error::BadParameter(format!(
        "grid has more than {MAX_GRID_POINTS} points"
    )))
}

/// 12 significant digits, the CSV float format.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}
