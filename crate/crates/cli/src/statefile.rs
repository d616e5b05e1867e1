//! JSON state files: `{"dims": [...], "re": [[...]], "im": [[...]]}` with
//! row-major matrices. Loading validates the full density-matrix contract.

use std::path::Path;

use condsteer::qmat::{cx, CMat};
use condsteer::DensityMatrix;
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl StateFile {
    pub fn from_state(state: &DensityMatrix) -> Self {
        let d = state.dim();
        let grid = |imag: bool| -> Vec<Vec<f64>> {
            (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| {
                            let z = state.mat()[(i, j)];
                            if imag {
                                z.im
                            } else {
                                z.re
                            }
                        })
                        .collect()
                })
                .collect()
        };
        Self {
            dims: state.dims().to_vec(),
            re: grid(false),
            im: grid(true),
        }
    }

    pub fn into_state(self) -> CliResult<DensityMatrix> {
        let d: usize = self.dims.iter().product();
        if self.re.len() != d
            || self.im.len() != d
            || self.re.iter().any(|r| r.len() != d)
            || self.im.iter().any(|r| r.len() != d)
        {
            return Err(CliError::Validation(format!(
                "state file matrices must be {d}x{d} to match dims {:?}",
                self.dims
            )));
        }
        let mat = CMat::from_fn(d, d, |i, j| cx(self.re[i][j], self.im[i][j]));
        Ok(DensityMatrix::new(mat, self.dims)?)
    }
}

pub fn load_state(path: &Path) -> CliResult<DensityMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("cannot parse {}: {e}", path.display())))?;
    file.into_state()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_a_state() {
        let rho = condsteer::states::ghz_plus();
        let file = StateFile::from_state(&rho);
        let text = serde_json::to_string(&file).unwrap();
        let back: StateFile = serde_json::from_str(&text).unwrap();
        let rebuilt = back.into_state().unwrap();
        assert!((rebuilt.mat() - rho.mat()).norm() < 1e-12);
        assert_eq!(rebuilt.dims(), rho.dims());
    }

    #[test]
    fn rejects_unphysical_matrices() {
        let mut file = StateFile::from_state(&condsteer::states::ghz_plus());
        file.re[0][0] = 2.0;
        assert!(file.into_state().is_err());
    }
}
