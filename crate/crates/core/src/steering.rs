//! Two-qubit steering detection: Pauli correlation tensor, the linear
//! norm-based criterion S1, the canonical-frame nonlinear criterion S2 and
//! the CHSH bound of the correlation matrix.
//!
//! Both steering criteria are one-sided detectors. S1 < 0 or S2 > 0
//! certifies steerability from the first party to the second; neither sign
//! failing says anything.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::qmat::{kron, pauli, DensityMatrix};

/// Off-diagonal magnitude below which a correlation matrix is treated as
/// exactly diagonal when building the canonical form.
const DIAGONAL_TOL: f64 = 1e-12;

/// Local Bloch vectors and 3x3 correlation block of a two-qubit state:
/// a_i = tr(rho sigma_i (x) I), b_i = tr(rho I (x) sigma_i),
/// t_ij = tr(rho sigma_i (x) sigma_j).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTensor {
    pub a: Vector3<f64>,
    pub b: Vector3<f64>,
    pub t: Matrix3<f64>,
}

impl PauliTensor {
    /// The same state with the two parties' roles swapped.
    pub fn transposed(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            t: self.t.transpose(),
        }
    }
}

/// Pauli expectations of a two-qubit state.
pub fn pauli_tensor(rho: &DensityMatrix) -> Result<PauliTensor> {
    if rho.dims() != [2, 2] {
        return Err(Error::WrongDims {
            expected: vec![2, 2],
            got: rho.dims().to_vec(),
        });
    }
    let mut t = [[0.0f64; 4]; 4];
    for (i, row) in t.iter_mut().enumerate() {
        let si = pauli(i);
        for (j, entry) in row.iter_mut().enumerate() {
            let op = kron(&si, &pauli(j));
            *entry = (rho.mat() * op).trace().re;
        }
    }
    Ok(PauliTensor {
        a: Vector3::new(t[1][0], t[2][0], t[3][0]),
        b: Vector3::new(t[0][1], t[0][2], t[0][3]),
        t: Matrix3::new(
            t[1][1], t[1][2], t[1][3], t[2][1], t[2][2], t[2][3], t[3][1], t[3][2], t[3][3],
        ),
    })
}

/// Linear steering detector: spectral norm of the correlation block minus
/// two thirds of its squared Frobenius norm. Negative values certify
/// steerability.
pub fn s1(pt: &PauliTensor) -> f64 {
    let spectral = pt.t.singular_values().max();
    let frob = pt.t.norm();
    spectral - (2.0 / 3.0) * frob * frob
}

/// Correlation data rotated into the frame where the correlation block is
/// diagonal, with both local rotations proper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalForm {
    /// Diagonal correlation entries; |t1| >= |t2| >= |t3| and any sign
    /// deficit of the rotations is absorbed into the last entry.
    pub t_diag: Vector3<f64>,
    /// First party's Bloch vector in the canonical frame.
    pub a: Vector3<f64>,
    /// Second party's Bloch vector in the canonical frame.
    pub b: Vector3<f64>,
    pub rot_a: Matrix3<f64>,
    pub rot_b: Matrix3<f64>,
}

fn negate_row(m: &mut Matrix3<f64>, r: usize) {
    for c in 0..3 {
        m[(r, c)] = -m[(r, c)];
    }
}

fn canonical_from_diagonal(pt: &PauliTensor) -> CanonicalForm {
    let d = [pt.t[(0, 0)], pt.t[(1, 1)], pt.t[(2, 2)]];
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| d[j].abs().partial_cmp(&d[i].abs()).unwrap());
    let mut rot_a = Matrix3::zeros();
    for (slot, &axis) in order.iter().enumerate() {
        rot_a[(slot, axis)] = 1.0;
    }
    let mut rot_b = rot_a;
    let mut t_diag = Vector3::new(d[order[0]], d[order[1]], d[order[2]]);
    for i in 0..2 {
        if t_diag[i] < 0.0 {
            t_diag[i] = -t_diag[i];
            negate_row(&mut rot_b, i);
        }
    }
    if rot_a.determinant() < 0.0 {
        negate_row(&mut rot_a, 2);
        t_diag[2] = -t_diag[2];
    }
    if rot_b.determinant() < 0.0 {
        negate_row(&mut rot_b, 2);
        t_diag[2] = -t_diag[2];
    }
    CanonicalForm {
        t_diag,
        a: rot_a * pt.a,
        b: rot_b * pt.b,
        rot_a,
        rot_b,
    }
}

fn canonical_from_svd(pt: &PauliTensor) -> CanonicalForm {
    let svd = pt.t.svd(true, true);
    let u0 = svd.u.expect("3x3 svd always yields u");
    let v0 = svd.v_t.expect("3x3 svd always yields v_t").transpose();
    let sv = svd.singular_values;

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| sv[j].partial_cmp(&sv[i]).unwrap());
    let mut u = Matrix3::zeros();
    let mut v = Matrix3::zeros();
    let mut t_diag = Vector3::zeros();
    for (slot, &k) in order.iter().enumerate() {
        u.set_column(slot, &u0.column(k));
        v.set_column(slot, &v0.column(k));
        t_diag[slot] = sv[k];
    }
    if u.determinant() < 0.0 {
        let flipped = -u.column(2);
        u.set_column(2, &flipped);
        t_diag[2] = -t_diag[2];
    }
    if v.determinant() < 0.0 {
        let flipped = -v.column(2);
        v.set_column(2, &flipped);
        t_diag[2] = -t_diag[2];
    }
    let rot_a = u.transpose();
    let rot_b = v.transpose();
    CanonicalForm {
        t_diag,
        a: rot_a * pt.a,
        b: rot_b * pt.b,
        rot_a,
        rot_b,
    }
}

/// Diagonalize the correlation block as O_A t O_B' = diag(t1, t2, t3) with
/// proper rotations, rotating the Bloch vectors along.
pub fn canonical_form(pt: &PauliTensor) -> CanonicalForm {
    let mut off = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                off = off.max(pt.t[(i, j)].abs());
            }
        }
    }
    if off <= DIAGONAL_TOL {
        canonical_from_diagonal(pt)
    } else {
        canonical_from_svd(pt)
    }
}

/// Value of the nonlinear criterion plus a flag recording whether any
/// radicand had to be clamped at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct S2Outcome {
    pub value: f64,
    pub clamped: bool,
}

fn h_term(cf: &CanonicalForm, i: usize, j: usize, k: usize) -> (f64, bool) {
    let rad1 = (1.0 + cf.a[k]).powi(2) - (cf.t_diag[k] + cf.b[k]).powi(2);
    let rad2 = (1.0 - cf.a[k]).powi(2) - (cf.t_diag[k] - cf.b[k]).powi(2);
    let clamped = rad1 < 0.0 || rad2 < 0.0;
    let value = cf.t_diag[i].abs() + cf.t_diag[j].abs()
        - std::f64::consts::FRAC_2_PI * (rad1.max(0.0).sqrt() + rad2.max(0.0).sqrt());
    (value, clamped)
}

fn s2_over(cf: &CanonicalForm, perms: &[[usize; 3]]) -> S2Outcome {
    let mut value = f64::NEG_INFINITY;
    let mut clamped = false;
    for &[i, j, k] in perms {
        let (v, c) = h_term(cf, i, j, k);
        value = value.max(v);
        clamped |= c;
    }
    S2Outcome { value, clamped }
}

/// Nonlinear steering detector: max of h over the three cyclic index
/// permutations. Positive values certify steerability from the first party
/// to the second. Negative radicands are clamped at zero, which can only
/// weaken detection.
pub fn s2(cf: &CanonicalForm) -> S2Outcome {
    s2_over(cf, &[[0, 1, 2], [1, 2, 0], [2, 0, 1]])
}

/// Variant of [`s2`] maximizing over all six index permutations.
pub fn s2_all_permutations(cf: &CanonicalForm) -> S2Outcome {
    s2_over(
        cf,
        &[
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ],
    )
}

/// Sum of the two largest eigenvalues of t't. Values above 1 certify a
/// CHSH violation; values at or below 1 certify CHSH locality for
/// two-setting projective measurements.
pub fn horodecki_m(pt: &PauliTensor) -> f64 {
    let gram = pt.t.transpose() * pt.t;
    let eigs = nalgebra::linalg::SymmetricEigen::new(gram).eigenvalues;
    let mut v = [eigs[0], eigs[1], eigs[2]];
    v.sort_by(f64::total_cmp);
    v[1] + v[2]
}

/// Which party of a two-qubit state plays the untrusted, steering role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteerDirection {
    /// The first subsystem steers the second.
    Forward,
    /// The second subsystem steers the first.
    Reverse,
}

/// All detection criteria evaluated on one two-qubit state for one steering
/// direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringReport {
    pub s1: f64,
    pub s2: f64,
    pub horodecki_m: f64,
    pub s1_detects: bool,
    pub s2_detects: bool,
    pub chsh_nonlocal: bool,
    pub s2_clamped: bool,
    pub direction: SteerDirection,
}

/// Evaluate S1, S2 and the CHSH bound on a two-qubit state.
pub fn steering_report(rho: &DensityMatrix, direction: SteerDirection) -> Result<SteeringReport> {
    let tensor = pauli_tensor(rho)?;
    let pt = match direction {
        SteerDirection::Forward => tensor,
        SteerDirection::Reverse => tensor.transposed(),
    };
    let s1_value = s1(&pt);
    let cf = canonical_form(&pt);
    let s2_outcome = s2(&cf);
    let m = horodecki_m(&pt);
    Ok(SteeringReport {
        s1: s1_value,
        s2: s2_outcome.value,
        horodecki_m: m,
        s1_detects: s1_value < 0.0,
        s2_detects: s2_outcome.value > 0.0,
        chsh_nonlocal: m > 1.0,
        s2_clamped: s2_outcome.clamped,
        direction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditioning::{condition, BlochDirection, Outcome};
    use crate::qmat::{identity, DensityMatrix};
    use crate::states::{noisy_ghz, phi_plus};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn max_mixed_two_qubit() -> DensityMatrix {
        DensityMatrix::new(identity(4).scale(0.25), vec![2, 2]).unwrap()
    }

    fn ghz_conditional(p: f64, theta: f64) -> DensityMatrix {
        let rho = noisy_ghz(p).unwrap();
        condition(&rho, 0, &BlochDirection::new(theta, 0.0), Outcome::Plus)
            .unwrap()
            .state
    }

    #[test]
    fn tensor_of_maximally_mixed_vanishes() {
        let pt = pauli_tensor(&max_mixed_two_qubit()).unwrap();
        assert!(pt.a.norm() < 1e-12);
        assert!(pt.b.norm() < 1e-12);
        assert!(pt.t.norm() < 1e-12);
    }

    #[test]
    fn tensor_of_bell_state_is_diagonal() {
        let pt = pauli_tensor(&phi_plus()).unwrap();
        let expected = Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, 1.0));
        assert!((pt.t - expected).norm() < 1e-12);
        assert!(pt.a.norm() < 1e-12);
        assert!(pt.b.norm() < 1e-12);
    }

    #[test]
    fn tensor_rejects_wrong_dimensions() {
        let rho = noisy_ghz(0.5).unwrap();
        assert!(pauli_tensor(&rho).is_err());
    }

    #[test]
    fn conditional_ghz_tensor_matches_closed_form() {
        let (p, theta) = (0.7, 1.1);
        let pt = pauli_tensor(&ghz_conditional(p, theta)).unwrap();
        let expected = Matrix3::from_diagonal(&Vector3::new(p * theta.sin(), -p * theta.sin(), p));
        assert!((pt.t - expected).norm() < 1e-10);
        assert_abs_diff_eq!(pt.a[2], p * theta.cos(), epsilon = 1e-10);
        assert_abs_diff_eq!(pt.b[2], p * theta.cos(), epsilon = 1e-10);
        assert!(pt.a[0].abs() + pt.a[1].abs() + pt.b[0].abs() + pt.b[1].abs() < 1e-10);
    }

    #[test]
    fn s1_of_vanishing_block_is_zero() {
        let pt = pauli_tensor(&max_mixed_two_qubit()).unwrap();
        assert_abs_diff_eq!(s1(&pt), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn s1_detects_equatorial_ghz_conditional_above_half() {
        let pt = pauli_tensor(&ghz_conditional(0.6, FRAC_PI_2)).unwrap();
        assert_abs_diff_eq!(s1(&pt), -0.12, epsilon = 1e-10);

        let boundary = pauli_tensor(&ghz_conditional(0.5, FRAC_PI_2)).unwrap();
        assert_abs_diff_eq!(s1(&boundary), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn canonical_form_of_sorted_positive_diagonal_is_trivial() {
        let pt = PauliTensor {
            a: Vector3::new(0.1, 0.2, 0.3),
            b: Vector3::new(-0.1, 0.0, 0.2),
            t: Matrix3::from_diagonal(&Vector3::new(0.5, 0.4, 0.3)),
        };
        let cf = canonical_form(&pt);
        assert!((cf.rot_a - Matrix3::identity()).norm() < 1e-12);
        assert!((cf.rot_b - Matrix3::identity()).norm() < 1e-12);
        assert!((cf.t_diag - Vector3::new(0.5, 0.4, 0.3)).norm() < 1e-12);
        assert!((cf.a - pt.a).norm() < 1e-12);
    }

    fn check_canonical(pt: &PauliTensor, tol: f64) {
        let cf = canonical_form(pt);
        assert_abs_diff_eq!(cf.rot_a.determinant(), 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(cf.rot_b.determinant(), 1.0, epsilon = 1e-10);
        let rebuilt = cf.rot_a * pt.t * cf.rot_b.transpose();
        let expected = Matrix3::from_diagonal(&cf.t_diag);
        assert!((rebuilt - expected).norm() < tol, "not diagonalized");
        assert!(cf.t_diag[0].abs() + 1e-12 >= cf.t_diag[1].abs());
        assert!(cf.t_diag[1].abs() + 1e-12 >= cf.t_diag[2].abs());
        assert!((cf.a - cf.rot_a * pt.a).norm() < 1e-12);
        assert!((cf.b - cf.rot_b * pt.b).norm() < 1e-12);
    }

    #[test]
    fn canonical_form_of_signed_diagonal_keeps_magnitudes() {
        let pt = PauliTensor {
            a: Vector3::zeros(),
            b: Vector3::zeros(),
            t: Matrix3::from_diagonal(&Vector3::new(0.5, -0.5, 0.5)),
        };
        check_canonical(&pt, 1e-12);
        let cf = canonical_form(&pt);
        for i in 0..3 {
            assert_abs_diff_eq!(cf.t_diag[i].abs(), 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn canonical_form_diagonalizes_random_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..50 {
            let pt = PauliTensor {
                a: Vector3::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5, rng.gen()),
                b: Vector3::new(rng.gen::<f64>() - 0.5, rng.gen(), rng.gen::<f64>() - 0.5),
                t: Matrix3::from_fn(|_, _| rng.gen::<f64>() * 2.0 - 1.0),
            };
            check_canonical(&pt, 1e-10);

            // singular values survive up to the sign of the last entry
            let mut sv: Vec<f64> = pt.t.singular_values().iter().copied().collect();
            sv.sort_by(f64::total_cmp);
            let cf = canonical_form(&pt);
            let mut got: Vec<f64> = (0..3).map(|i| cf.t_diag[i].abs()).collect();
            got.sort_by(f64::total_cmp);
            for (x, y) in sv.iter().zip(&got) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn s2_of_product_of_maximally_mixed_is_negative() {
        let cf = canonical_form(&pauli_tensor(&max_mixed_two_qubit()).unwrap());
        assert_abs_diff_eq!(s2(&cf).value, -4.0 / PI, epsilon = 1e-12);
        assert!(!s2(&cf).clamped);
    }

    #[test]
    fn s2_matches_equatorial_closed_form() {
        let p = 0.6;
        let cf = canonical_form(&pauli_tensor(&ghz_conditional(p, FRAC_PI_2)).unwrap());
        let expected = 2.0 * p - (4.0 / PI) * (1.0 - p * p).sqrt();
        assert_abs_diff_eq!(s2(&cf).value, expected, epsilon = 1e-10);
        assert!(s2(&cf).value > 0.0);
    }

    #[test]
    fn s2_threshold_sits_between_half_and_chsh_bound() {
        let threshold = 2.0 / (PI * PI + 4.0).sqrt();
        let below =
            canonical_form(&pauli_tensor(&ghz_conditional(threshold - 1e-3, FRAC_PI_2)).unwrap());
        let above =
            canonical_form(&pauli_tensor(&ghz_conditional(threshold + 1e-3, FRAC_PI_2)).unwrap());
        assert!(s2(&below).value < 0.0);
        assert!(s2(&above).value > 0.0);
    }

    #[test]
    fn s2_on_diagonal_tensor_reduces_to_pairwise_form() {
        let t = Vector3::new(0.62, -0.31, 0.17);
        let pt = PauliTensor {
            a: Vector3::zeros(),
            b: Vector3::zeros(),
            t: Matrix3::from_diagonal(&t),
        };
        let cf = canonical_form(&pt);
        let pair = |i: usize, j: usize, k: usize| {
            t[i].abs() + t[j].abs() - (4.0 / PI) * (1.0 - t[k] * t[k]).sqrt()
        };
        let expected = pair(0, 1, 2).max(pair(1, 2, 0)).max(pair(2, 0, 1));
        assert_abs_diff_eq!(s2(&cf).value, expected, epsilon = 1e-12);
    }

    #[test]
    fn full_permutation_variant_dominates_the_cyclic_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..20 {
            let rho = crate::random::random_density_matrix(&mut rng, &[2, 2]);
            let cf = canonical_form(&pauli_tensor(&rho).unwrap());
            let cyclic = s2(&cf).value;
            let full = s2_all_permutations(&cf).value;
            assert!(full >= cyclic - 1e-12);
        }
        // with vanishing Bloch vectors h is symmetric in (i, j), so the
        // variants coincide
        let pt = PauliTensor {
            a: Vector3::zeros(),
            b: Vector3::zeros(),
            t: Matrix3::from_diagonal(&Vector3::new(0.7, -0.4, 0.2)),
        };
        let cf = canonical_form(&pt);
        assert_abs_diff_eq!(
            s2(&cf).value,
            s2_all_permutations(&cf).value,
            epsilon = 1e-12
        );
    }

    #[test]
    fn horodecki_of_bell_state_is_two() {
        let pt = pauli_tensor(&phi_plus()).unwrap();
        assert_abs_diff_eq!(horodecki_m(&pt), 2.0, epsilon = 1e-10);
    }

    #[test]
    fn horodecki_matches_conditional_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..20 {
            let p: f64 = rng.gen();
            let theta: f64 = rng.gen::<f64>() * PI;
            let pt = pauli_tensor(&ghz_conditional(p, theta)).unwrap();
            let s2t = theta.sin() * theta.sin();
            let expected = (2.0 * p * p * s2t).max(p * p * (1.0 + s2t));
            assert_abs_diff_eq!(horodecki_m(&pt), expected, epsilon = 1e-9);
        }
    }

    #[test]
    fn chsh_threshold_of_equatorial_conditional() {
        let near = pauli_tensor(&ghz_conditional(
            std::f64::consts::FRAC_1_SQRT_2 - 1e-3,
            FRAC_PI_2,
        ))
        .unwrap();
        let past = pauli_tensor(&ghz_conditional(
            std::f64::consts::FRAC_1_SQRT_2 + 1e-3,
            FRAC_PI_2,
        ))
        .unwrap();
        assert!(horodecki_m(&near) < 1.0);
        assert!(horodecki_m(&past) > 1.0);
    }

    #[test]
    fn report_on_maximally_mixed_detects_nothing() {
        let rep = steering_report(&max_mixed_two_qubit(), SteerDirection::Forward).unwrap();
        assert!(!rep.s1_detects && !rep.s2_detects && !rep.chsh_nonlocal);
    }

    #[test]
    fn report_on_bell_state_detects_everything() {
        let rep = steering_report(&phi_plus(), SteerDirection::Forward).unwrap();
        assert!(rep.s1_detects && rep.s2_detects && rep.chsh_nonlocal);
    }

    #[test]
    fn report_on_werner_like_mixture() {
        let mat = phi_plus().mat().scale(0.6) + identity(4).scale(0.1);
        let rho = DensityMatrix::new(mat, vec![2, 2]).unwrap();
        let rep = steering_report(&rho, SteerDirection::Forward).unwrap();
        assert_abs_diff_eq!(rep.s1, -0.12, epsilon = 1e-10);
        assert!(rep.s1_detects);
    }

    #[test]
    fn s1_is_direction_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..20 {
            let rho = crate::random::random_density_matrix(&mut rng, &[2, 2]);
            let fwd = steering_report(&rho, SteerDirection::Forward).unwrap();
            let rev = steering_report(&rho, SteerDirection::Reverse).unwrap();
            assert_abs_diff_eq!(fwd.s1, rev.s1, epsilon = 1e-12);
            assert_abs_diff_eq!(fwd.horodecki_m, rev.horodecki_m, epsilon = 1e-12);
        }
    }

    #[test]
    fn criteria_are_invariant_under_local_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..20 {
            let rho = crate::random::random_density_matrix(&mut rng, &[2, 2]);
            let ua = crate::random::random_qubit_unitary(&mut rng);
            let ub = crate::random::random_qubit_unitary(&mut rng);
            let u = kron(&ua, &ub);
            let rotated = DensityMatrix::new(&u * rho.mat() * u.adjoint(), vec![2, 2]).unwrap();

            let before = steering_report(&rho, SteerDirection::Forward).unwrap();
            let after = steering_report(&rotated, SteerDirection::Forward).unwrap();
            assert_abs_diff_eq!(before.s1, after.s1, epsilon = 1e-9);
            assert_abs_diff_eq!(before.s2, after.s2, epsilon = 1e-9);
            assert_abs_diff_eq!(before.horodecki_m, after.horodecki_m, epsilon = 1e-9);
        }
    }
}
