//! Constructors for the state families under study.
//!
//! All tripartite states are ordered |abc> with subsystem 0 = A (leftmost
//! factor). Every constructor returns a validated [`DensityMatrix`].

use crate::error::{Error, Result};
use crate::qmat::{cx, identity, CMat, CVec, DensityMatrix};

const SQRT3: f64 = 1.732_050_807_568_877_2;
/// Slack applied to inequality checks so boundary parameters are accepted.
const CONSTRAINT_SLACK: f64 = 1e-12;

fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::ParamOutOfRange {
            name,
            value,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(())
}

fn pure_from_amplitudes(amps: &[(usize, f64)], dim: usize, dims: Vec<usize>) -> DensityMatrix {
    let mut v = CVec::zeros(dim);
    for &(i, a) in amps {
        v[i] = cx(a, 0.0);
    }
    DensityMatrix::from_pure(&v, dims).expect("amplitudes form a unit vector")
}

/// Projector onto (|000> + |111>)/sqrt(2).
pub fn ghz_plus() -> DensityMatrix {
    let a = std::f64::consts::FRAC_1_SQRT_2;
    pure_from_amplitudes(&[(0, a), (7, a)], 8, vec![2, 2, 2])
}

/// Projector onto (|000> - |111>)/sqrt(2).
pub fn ghz_minus() -> DensityMatrix {
    let a = std::f64::consts::FRAC_1_SQRT_2;
    pure_from_amplitudes(&[(0, a), (7, -a)], 8, vec![2, 2, 2])
}

/// Two-qubit Bell state (|00> + |11>)/sqrt(2).
pub fn phi_plus() -> DensityMatrix {
    let a = std::f64::consts::FRAC_1_SQRT_2;
    pure_from_amplitudes(&[(0, a), (3, a)], 4, vec![2, 2])
}

/// GHZ state mixed with white noise: p |GHZ+><GHZ+| + (1-p) I/8.
pub fn noisy_ghz(p: f64) -> Result<DensityMatrix> {
    check_unit_interval("p", p)?;
    let mat = ghz_plus().mat().scale(p) + identity(8).scale((1.0 - p) / 8.0);
    DensityMatrix::new(mat, vec![2, 2, 2])
}

/// Parameters of the GHZ-symmetric family, validated against the positivity
/// constraints -1/(4 sqrt(3)) <= q <= sqrt(3)/4 and |p| <= 1/8 + (sqrt(3)/2) q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzSymmetricParams {
    p: f64,
    q: f64,
}

impl GhzSymmetricParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        let q_lo = -1.0 / (4.0 * SQRT3);
        let q_hi = SQRT3 / 4.0;
        if q.is_nan() || q < q_lo - CONSTRAINT_SLACK || q > q_hi + CONSTRAINT_SLACK {
            return Err(Error::GhzSymmetricWeightRange { q });
        }
        let bound = 0.125 + (SQRT3 / 2.0) * q;
        if p.is_nan() || p.abs() > bound + CONSTRAINT_SLACK {
            return Err(Error::GhzSymmetricMixingBound { p, q, bound });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

/// Mixture of |GHZ+>, |GHZ-> and white noise with weights
/// (2q/sqrt(3) + p), (2q/sqrt(3) - p) and (1 - 4q/sqrt(3)).
pub fn ghz_symmetric(params: &GhzSymmetricParams) -> DensityMatrix {
    let (p, q) = (params.p(), params.q());
    let w_plus = 2.0 * q / SQRT3 + p;
    let w_minus = 2.0 * q / SQRT3 - p;
    let w_noise = 1.0 - 4.0 * q / SQRT3;
    let mat = ghz_plus().mat().scale(w_plus)
        + ghz_minus().mat().scale(w_minus)
        + identity(8).scale(w_noise / 8.0);
    DensityMatrix::new(mat, vec![2, 2, 2]).expect("positivity follows from the parameter bounds")
}

/// How the leading amplitude of the pure family is derived from
/// (lambda1, lambda2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaConvention {
    /// lambda0 = +sqrt(1 - lambda1^2 - lambda2^2); the default.
    Sqrt,
    /// lambda0 = 1 - lambda1 - lambda2, then the full vector is renormalized.
    Affine,
}

/// Amplitudes of the pure state lambda0 |000> + lambda1 |101> + lambda2 |110>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiParams {
    lambda0: f64,
    lambda1: f64,
    lambda2: f64,
}

impl PsiParams {
    pub fn new(lambda1: f64, lambda2: f64, convention: LambdaConvention) -> Result<Self> {
        match convention {
            LambdaConvention::Sqrt => {
                let sum = lambda1 * lambda1 + lambda2 * lambda2;
                if sum.is_nan() || sum > 1.0 + CONSTRAINT_SLACK {
                    return Err(Error::UnnormalizableAmplitudes { sum });
                }
                Ok(Self {
                    lambda0: (1.0 - sum).max(0.0).sqrt(),
                    lambda1,
                    lambda2,
                })
            }
            LambdaConvention::Affine => {
                let l0 = 1.0 - lambda1 - lambda2;
                let norm = (l0 * l0 + lambda1 * lambda1 + lambda2 * lambda2).sqrt();
                if !norm.is_finite() {
                    return Err(Error::UnnormalizableAmplitudes { sum: norm });
                }
                Ok(Self {
                    lambda0: l0 / norm,
                    lambda1: lambda1 / norm,
                    lambda2: lambda2 / norm,
                })
            }
        }
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }
}

/// Projector onto lambda0 |000> + lambda1 |101> + lambda2 |110>.
pub fn psi_pure(params: &PsiParams) -> DensityMatrix {
    pure_from_amplitudes(
        &[
            (0, params.lambda0()),
            (5, params.lambda1()),
            (6, params.lambda2()),
        ],
        8,
        vec![2, 2, 2],
    )
}

/// Noisy biseparable family: p |psi><psi| + (1-p) I/8 with
/// |psi> = (|00> + |11>)/sqrt(2) (x) (|0> + |1>)/sqrt(2).
pub fn biseparable(p: f64) -> Result<DensityMatrix> {
    check_unit_interval("p", p)?;
    let pure = pure_from_amplitudes(&[(0, 0.5), (1, 0.5), (6, 0.5), (7, 0.5)], 8, vec![2, 2, 2]);
    let mat = pure.mat().scale(p) + identity(8).scale((1.0 - p) / 8.0);
    DensityMatrix::new(mat, vec![2, 2, 2])
}

/// Permutation operator sending qubit i of the input to slot `perm[i]`.
pub fn qubit_permutation(perm: &[usize; 3]) -> CMat {
    let mut m = CMat::zeros(8, 8);
    for src in 0..8usize {
        let bits = [(src >> 2) & 1, (src >> 1) & 1, src & 1];
        let mut dst = 0usize;
        for (i, &b) in bits.iter().enumerate() {
            dst |= b << (2 - perm[i]);
        }
        m[(dst, src)] = cx(1.0, 0.0);
    }
    m
}
