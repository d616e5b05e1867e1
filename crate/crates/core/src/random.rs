//! Seedable random states, unitaries and directions, used by the property
//! suites and available for exploratory sampling.

use rand::Rng;

use crate::conditioning::BlochDirection;
use crate::qmat::{cx, CMat, CVec, DensityMatrix};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller; u1 kept away from zero
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    CMat::from_fn(n, n, |_, _| cx(gaussian(rng), gaussian(rng)))
}

/// Full-rank random density matrix with the given subsystem dimensions,
/// drawn by normalizing G G' for a square Ginibre matrix G.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> DensityMatrix {
    let n: usize = dims.iter().product();
    loop {
        let g = ginibre(rng, n);
        let rho = &g * g.adjoint();
        let tr = rho.trace().re;
        if tr > 1e-6 {
            return DensityMatrix::new(rho.scale(1.0 / tr), dims.to_vec())
                .expect("normalized Gram matrix is a state");
        }
    }
}

/// Haar-ish random pure state with the given subsystem dimensions.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> DensityMatrix {
    let n: usize = dims.iter().product();
    loop {
        let v = CVec::from_fn(n, |_, _| cx(gaussian(rng), gaussian(rng)));
        if v.norm() > 1e-6 {
            return DensityMatrix::from_pure(&v, dims.to_vec()).expect("nonzero vector");
        }
    }
}

/// Random 2x2 special unitary.
pub fn random_qubit_unitary<R: Rng + ?Sized>(rng: &mut R) -> CMat {
    let half = rng.gen::<f64>() * std::f64::consts::FRAC_PI_2;
    let (p1, p2) = (
        rng.gen::<f64>() * std::f64::consts::TAU,
        rng.gen::<f64>() * std::f64::consts::TAU,
    );
    let alpha = cx(half.cos() * p1.cos(), half.cos() * p1.sin());
    let beta = cx(half.sin() * p2.cos(), half.sin() * p2.sin());
    CMat::from_row_slice(2, 2, &[alpha, beta, -beta.conj(), alpha.conj()])
}

/// Direction drawn uniformly on the sphere.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> BlochDirection {
    let z: f64 = rng.gen_range(-1.0..1.0);
    BlochDirection::new(z.acos(), rng.gen::<f64>() * std::f64::consts::TAU)
}
