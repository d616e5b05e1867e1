//! Noise channels: global depolarization and per-qubit amplitude damping.

use crate::error::{Error, Result};
use crate::qmat::{cx, identity, kron3, CMat, DensityMatrix};

/// A two-operator Kraus decomposition of a qubit channel.
///
/// Completeness F0'F0 + F1'F1 = I is validated to 1e-12 on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausPair {
    f0: CMat,
    f1: CMat,
}

impl KrausPair {
    pub fn new(f0: CMat, f1: CMat) -> Result<Self> {
        let sum = f0.adjoint() * &f0 + f1.adjoint() * &f1;
        let dev = (sum - identity(2)).norm();
        if dev > 1e-12 {
            return Err(Error::KrausIncomplete { deviation: dev });
        }
        Ok(Self { f0, f1 })
    }

    pub fn f0(&self) -> &CMat {
        &self.f0
    }

    pub fn f1(&self) -> &CMat {
        &self.f1
    }
}

fn require_three_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() != [2, 2, 2] {
        return Err(Error::WrongDims {
            expected: vec![2, 2, 2],
            got: rho.dims().to_vec(),
        });
    }
    Ok(())
}

/// Global depolarization: alpha rho + (1-alpha) I/8.
pub fn depolarize(rho: &DensityMatrix, alpha: f64) -> Result<DensityMatrix> {
    require_three_qubits(rho)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::ParamOutOfRange {
            name: "alpha",
            value: alpha,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let mat = rho.mat().scale(alpha) + identity(8).scale((1.0 - alpha) / 8.0);
    DensityMatrix::new(mat, vec![2, 2, 2])
}

/// Kraus pair of the amplitude damping channel:
/// F0 = diag(1, sqrt(1-gamma)), F1 = sqrt(gamma) |0><1|.
pub fn amp_damp_kraus(gamma: f64) -> Result<KrausPair> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::ParamOutOfRange {
            name: "gamma",
            value: gamma,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let mut f0 = CMat::zeros(2, 2);
    f0[(0, 0)] = cx(1.0, 0.0);
    f0[(1, 1)] = cx((1.0 - gamma).sqrt(), 0.0);
    let mut f1 = CMat::zeros(2, 2);
    f1[(0, 1)] = cx(gamma.sqrt(), 0.0);
    KrausPair::new(f0, f1)
}

/// Amplitude damping applied independently to each of the three qubits:
/// the sum over all eight operator triples (F_i (x) F_j (x) F_k).
pub fn amp_damp_all(rho: &DensityMatrix, gamma: f64) -> Result<DensityMatrix> {
    require_three_qubits(rho)?;
    let pair = amp_damp_kraus(gamma)?;
    let ops = [pair.f0().clone(), pair.f1().clone()];
    let mut out = CMat::zeros(8, 8);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let w = kron3(&ops[i], &ops[j], &ops[k]);
                out += &w * rho.mat() * w.adjoint();
            }
        }
    }
    DensityMatrix::new(out, vec![2, 2, 2])
}
