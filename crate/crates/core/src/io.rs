//! JSON persistence for states and channels. Complex entries are stored as
//! [re, im] pairs in row-major order; floats survive a save/load round trip
//! bit for bit.

use crate::channels::{CompletenessPolicy, KrausChannel, KrausTerm};
use crate::error::{Error, Result};
use crate::mat::CMat;
use crate::tensor::{DensityMatrix, StateVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;

#[derive(Serialize, Deserialize)]
struct StateFile {
    dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vector: Option<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct TermFile {
    weight: f64,
    op: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct ChannelFile {
    input_dims: Vec<usize>,
    policy: CompletenessPolicy,
    terms: Vec<TermFile>,
}

/// Either kind of state file.
pub enum LoadedState {
    Density(DensityMatrix),
    Pure(StateVector),
}

impl LoadedState {
    /// View the contents as a density matrix, turning a pure state into its
    /// projector.
    pub fn into_density(self) -> DensityMatrix {
        match self {
            LoadedState::Density(rho) => rho,
            LoadedState::Pure(psi) => psi.projector(),
        }
    }
}

fn pack(m: &CMat) -> Vec<[f64; 2]> {
    m.iter().map(|z| [z.re, z.im]).collect()
}

fn unpack_square(pairs: &[[f64; 2]], side: usize) -> Result<CMat> {
    if pairs.len() != side * side {
        return Err(Error::BadFile(format!(
            "matrix has {} entries, expected {}",
            pairs.len(),
            side * side
        )));
    }
    let data: Vec<Complex64> = pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect();
    CMat::from_shape_vec((side, side), data)
        .map_err(|e| Error::BadFile(format!("bad matrix shape: {e}")))
}

fn side_of(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::BadFile("empty dims".into()));
    }
    Ok(dims.iter().product())
}

pub fn save_density(path: impl AsRef<Path>, rho: &DensityMatrix) -> Result<()> {
    let file = StateFile {
        dims: rho.dims().to_vec(),
        matrix: Some(pack(rho.matrix())),
        vector: None,
    };
    let w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(w, &file)?;
    Ok(())
}

pub fn save_state_vector(path: impl AsRef<Path>, psi: &StateVector) -> Result<()> {
    let file = StateFile {
        dims: psi.dims().to_vec(),
        matrix: None,
        vector: Some(psi.amplitudes().iter().map(|z| [z.re, z.im]).collect()),
    };
    let w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(w, &file)?;
    Ok(())
}

/// Load a state file holding either a density matrix or a pure state.
/// Loaded objects pass the usual construction checks, so a corrupted file
/// fails here rather than downstream.
pub fn load_state(path: impl AsRef<Path>) -> Result<LoadedState> {
    let r = BufReader::new(File::open(path)?);
    let file: StateFile = serde_json::from_reader(r)?;
    let side = side_of(&file.dims)?;
    match (file.matrix, file.vector) {
        (Some(pairs), None) => {
            let mat = unpack_square(&pairs, side)?;
            Ok(LoadedState::Density(DensityMatrix::new(mat, file.dims)?))
        }
        (None, Some(pairs)) => {
            if pairs.len() != side {
                return Err(Error::BadFile(format!(
                    "vector has {} entries, expected {side}",
                    pairs.len()
                )));
            }
            let amps: Vec<Complex64> =
                pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect();
            Ok(LoadedState::Pure(StateVector::new(amps, file.dims)?))
        }
        (Some(_), Some(_)) => Err(Error::BadFile(
            "state file has both 'matrix' and 'vector'".into(),
        )),
        (None, None) => Err(Error::BadFile(
            "state file has neither 'matrix' nor 'vector'".into(),
        )),
    }
}

pub fn load_density(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    Ok(load_state(path)?.into_density())
}

pub fn save_channel(path: impl AsRef<Path>, ch: &KrausChannel) -> Result<()> {
    let file = ChannelFile {
        input_dims: ch.input_dims().to_vec(),
        policy: ch.policy(),
        terms: ch
            .terms()
            .iter()
            .map(|t| TermFile {
                weight: t.weight,
                op: pack(&t.op),
            })
            .collect(),
    };
    let w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(w, &file)?;
    Ok(())
}

pub fn load_channel(path: impl AsRef<Path>) -> Result<KrausChannel> {
    let r = BufReader::new(File::open(path)?);
    let file: ChannelFile = serde_json::from_reader(r)?;
    let side = side_of(&file.input_dims)?;
    let terms = file
        .terms
        .iter()
        .map(|t| {
            Ok(KrausTerm {
                weight: t.weight,
                op: unpack_square(&t.op, side)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    KrausChannel::new(file.input_dims, file.policy, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::canonical_pauli_channel;
    use crate::states::{fourier_masked_state, isotropic_ghz};
    use tempfile::tempdir;

    fn bits_equal(a: &CMat, b: &CMat) -> bool {
        a.dim() == b.dim()
            && a.iter().zip(b.iter()).all(|(x, y)| {
                x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()
            })
    }

    #[test]
    fn density_round_trip_is_bit_exact() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("state.json");
        let rho = isotropic_ghz(2, 3, 0.37).unwrap();
        save_density(&path, &rho).unwrap();
        match load_state(&path).unwrap() {
            LoadedState::Density(back) => {
                assert_eq!(back.dims(), rho.dims());
                assert!(bits_equal(back.matrix(), rho.matrix()));
            }
            LoadedState::Pure(_) => panic!("expected a density matrix"),
        }
    }

    #[test]
    fn vector_round_trip_and_projector_view() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("psi.json");
        let psi = fourier_masked_state(3, 2, 1).unwrap();
        save_state_vector(&path, &psi).unwrap();
        match load_state(&path).unwrap() {
            LoadedState::Pure(back) => {
                assert_eq!(back.dims(), psi.dims());
                for (x, y) in back.amplitudes().iter().zip(psi.amplitudes()) {
                    assert_eq!(x.re.to_bits(), y.re.to_bits());
                    assert_eq!(x.im.to_bits(), y.im.to_bits());
                }
            }
            LoadedState::Density(_) => panic!("expected a pure state"),
        }
        let rho = load_density(&path).unwrap();
        assert!(bits_equal(rho.matrix(), psi.projector().matrix()));
    }

    #[test]
    fn channel_round_trip_is_bit_exact() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("channel.json");
        let ch = canonical_pauli_channel(2, 2, 0.3).unwrap();
        save_channel(&path, &ch).unwrap();
        let back = load_channel(&path).unwrap();
        assert_eq!(back.input_dims(), ch.input_dims());
        assert_eq!(back.policy(), ch.policy());
        assert_eq!(back.terms().len(), ch.terms().len());
        for (a, b) in back.terms().iter().zip(ch.terms()) {
            assert_eq!(a.weight.to_bits(), b.weight.to_bits());
            assert!(bits_equal(&a.op, &b.op));
        }
    }

    #[test]
    fn malformed_files_are_rejected() {
        let dir = tempdir().unwrap();
        let both = dir.path().join("both.json");
        std::fs::write(
            &both,
            r#"{"dims":[2],"matrix":[[1,0],[0,0],[0,0],[0,0]],"vector":[[1,0],[0,0]]}"#,
        )
        .unwrap();
        assert!(matches!(load_state(&both), Err(Error::BadFile(_))));

        let neither = dir.path().join("neither.json");
        std::fs::write(&neither, r#"{"dims":[2]}"#).unwrap();
        assert!(matches!(load_state(&neither), Err(Error::BadFile(_))));

        let short = dir.path().join("short.json");
        std::fs::write(&short, r#"{"dims":[2],"matrix":[[1,0]]}"#).unwrap();
        assert!(matches!(load_state(&short), Err(Error::BadFile(_))));

        let garbage = dir.path().join("garbage.json");
        std::fs::write(&garbage, "not json at all").unwrap();
        assert!(matches!(load_state(&garbage), Err(Error::Json(_))));

        // A non-state (trace 2) must fail construction checks on load.
        let invalid = dir.path().join("invalid.json");
        std::fs::write(
            &invalid,
            r#"{"dims":[2],"matrix":[[1,0],[0,0],[0,0],[1,0]]}"#,
        )
        .unwrap();
        assert!(load_state(&invalid).is_err());
    }
}
