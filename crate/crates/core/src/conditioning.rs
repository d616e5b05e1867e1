//! Von Neumann measurements on one qubit and the resulting normalized
//! conditional states of the remaining pair.

use crate::error::{Error, Result};
use crate::qmat::{cx, hermiticity_deviation, identity, kron, partial_trace, CMat, DensityMatrix};

/// Outcomes below this probability are treated as unobtainable.
pub const ZERO_PROBABILITY_TOL: f64 = 1e-12;

/// A measurement direction on the Bloch sphere, in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDirection {
    pub theta: f64,
    pub phi: f64,
}

impl BlochDirection {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// Cartesian unit vector (sin t cos p, sin t sin p, cos t).
    pub fn unit_vector(&self) -> [f64; 3] {
        [
            self.theta.sin() * self.phi.cos(),
            self.theta.sin() * self.phi.sin(),
            self.theta.cos(),
        ]
    }
}

/// Projection along (+1) or against (-1) the measurement direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn sign(&self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Plus => "+1",
            Outcome::Minus => "-1",
        }
    }
}

/// Rank-1 projector (I + outcome * n.sigma)/2 for the given direction.
pub fn projector(dir: &BlochDirection, outcome: Outcome) -> CMat {
    let [nx, ny, nz] = dir.unit_vector();
    let s = outcome.sign();
    let mut m = CMat::zeros(2, 2);
    m[(0, 0)] = cx(0.5 * (1.0 + s * nz), 0.0);
    m[(1, 1)] = cx(0.5 * (1.0 - s * nz), 0.0);
    m[(0, 1)] = cx(0.5 * s * nx, -0.5 * s * ny);
    m[(1, 0)] = cx(0.5 * s * nx, 0.5 * s * ny);
    m
}

/// A normalized conditional state together with the probability of the
/// outcome that produced it.
#[derive(Debug, Clone)]
pub struct ConditionalOutcome {
    pub state: DensityMatrix,
    pub probability: f64,
    pub party: usize,
    pub outcome: Outcome,
}

/// Project one subsystem with an explicit rank-1 projector and return the
/// normalized state of the remaining subsystems plus the outcome probability.
pub fn condition_with_projector(
    rho: &DensityMatrix,
    party: usize,
    proj: &CMat,
) -> Result<(DensityMatrix, f64)> {
    let dims = rho.dims();
    if party >= dims.len() {
        return Err(Error::SubsystemOutOfRange {
            index: party,
            count: dims.len(),
        });
    }
    if proj.nrows() != dims[party] || proj.ncols() != dims[party] {
        return Err(Error::DimensionMismatch {
            rows: proj.nrows(),
            cols: proj.ncols(),
            expected: dims[party],
        });
    }
    let herm = hermiticity_deviation(proj);
    let idem = (proj * proj - proj).norm();
    let tr = proj.trace();
    let dev = herm.max(idem).max((tr - cx(1.0, 0.0)).norm());
    if dev > 1e-10 {
        return Err(Error::NotProjector { deviation: dev });
    }

    let mut op = CMat::identity(1, 1);
    for (i, &d) in dims.iter().enumerate() {
        let factor = if i == party {
            proj.clone()
        } else {
            identity(d)
        };
        op = kron(&op, &factor);
    }
    let projected = &op * rho.mat() * &op;
    let probability = projected.trace().re;
    if probability < ZERO_PROBABILITY_TOL {
        return Err(Error::ZeroProbabilityOutcome);
    }
    let normalized = DensityMatrix::new(projected.scale(1.0 / probability), dims.to_vec())?;
    let keep: Vec<usize> = (0..dims.len()).filter(|&i| i != party).collect();
    let reduced = partial_trace(&normalized, &keep)?;
    Ok((reduced, probability))
}

/// Measure `party` along `dir` and condition on `outcome`.
pub fn condition(
    rho: &DensityMatrix,
    party: usize,
    dir: &BlochDirection,
    outcome: Outcome,
) -> Result<ConditionalOutcome> {
    let proj = projector(dir, outcome);
    let (state, probability) = condition_with_projector(rho, party, &proj)?;
    Ok(ConditionalOutcome {
        state,
        probability,
        party,
        outcome,
    })
}
