//! Dense complex linear algebra for small multi-qubit systems.
//!
//! Everything in this crate runs on explicit dense matrices of size at most
//! 8x8: Kronecker products, partial trace and partial transpose over a
//! declared subsystem split, Hermitian eigendecompositions and the matrix
//! norms used by the detection criteria. Subsystem index 0 is the leftmost
//! tensor factor, matching the ket ordering |abc>.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix, the carrier for every operator in this crate.
pub type CMat = DMatrix<Complex64>;
/// Dense complex vector, used for pure-state amplitudes.
pub type CVec = DVector<Complex64>;

/// Validation tolerance for Hermiticity, unit trace and positivity.
pub const STATE_TOL: f64 = 1e-9;

/// Shorthand complex constructor.
#[inline]
pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// n x n identity.
pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Pauli matrix by index: 0 is the 2x2 identity, 1..=3 are x, y, z.
pub fn pauli(i: usize) -> CMat {
    let (a, b, c, d) = match i {
        0 => (cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0)),
        1 => (cx(0.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)),
        2 => (cx(0.0, 0.0), cx(0.0, -1.0), cx(0.0, 1.0), cx(0.0, 0.0)),
        3 => (cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(-1.0, 0.0)),
        _ => panic!("pauli index must be 0..=3"),
    };
    CMat::from_row_slice(2, 2, &[a, b, c, d])
}

/// Kronecker product a (x) b.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Three-factor Kronecker product.
pub fn kron3(a: &CMat, b: &CMat, c: &CMat) -> CMat {
    kron(&kron(a, b), c)
}

/// Max |M_ij - conj(M_ji)| over all entries.
pub fn hermiticity_deviation(m: &CMat) -> f64 {
    let mut dev = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Frobenius (Hilbert-Schmidt) norm.
pub fn frobenius_norm(m: &CMat) -> f64 {
    m.norm()
}

/// Largest singular value.
pub fn spectral_norm(m: &CMat) -> f64 {
    m.singular_values().max()
}

/// Sum of singular values. For Hermitian input this equals the sum of
/// absolute eigenvalues.
pub fn trace_norm(m: &CMat) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.singular_values().iter().sum())
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn eig_hermitian(m: &CMat) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let dev = hermiticity_deviation(m);
    if dev > STATE_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let eig = nalgebra::linalg::SymmetricEigen::new(m.clone());
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Row-major strides of a subsystem dimension list.
fn strides(dims: &[usize]) -> Vec<usize> {
    let mut st = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        st[i] = st[i + 1] * dims[i + 1];
    }
    st
}

/// Linear offsets of every multi-index over the listed subsystem positions.
fn offsets(positions: &[usize], dims: &[usize], st: &[usize]) -> Vec<usize> {
    let total: usize = positions.iter().map(|&p| dims[p]).product();
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut off = 0usize;
        for &p in positions.iter().rev() {
            off += (idx % dims[p]) * st[p];
            idx /= dims[p];
        }
        out.push(off);
    }
    out
}

/// A density matrix together with its subsystem dimension list.
///
/// Construction validates Hermiticity, unit trace and positivity at the
/// [`STATE_TOL`] tolerance, so every value of this type is a physical state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMat,
    dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(mat: CMat, dims: Vec<usize>) -> Result<Self> {
        let expected: usize = dims.iter().product();
        if dims.is_empty() || mat.nrows() != expected || mat.ncols() != expected {
            return Err(Error::DimensionMismatch {
                rows: mat.nrows(),
                cols: mat.ncols(),
                expected,
            });
        }
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntries);
        }
        let dev = hermiticity_deviation(&mat);
        if dev > STATE_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::TraceNotOne { trace: tr.re });
        }
        let eigs = eig_hermitian(&mat)?;
        if eigs[0] < -STATE_TOL {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: eigs[0],
            });
        }
        Ok(Self { mat, dims })
    }

    /// Projector onto a pure state; the amplitude vector is normalized first.
    pub fn from_pure(amplitudes: &CVec, dims: Vec<usize>) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm < 1e-12 {
            return Err(Error::ZeroNormVector);
        }
        let v = amplitudes / cx(norm, 0.0);
        let mat = &v * v.adjoint();
        Self::new(mat, dims)
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn into_mat(self) -> CMat {
        self.mat
    }

    /// Tr(rho^2).
    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }
}

/// Trace out every subsystem not listed in `keep`; kept subsystems stay in
/// their original order. Keeping all subsystems returns a copy.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let dims = rho.dims();
    let n = dims.len();
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    if let Some(&bad) = kept.iter().find(|&&k| k >= n) {
        return Err(Error::SubsystemOutOfRange {
            index: bad,
            count: n,
        });
    }
    let traced: Vec<usize> = (0..n).filter(|i| !kept.contains(i)).collect();
    let st = strides(dims);
    let kept_off = offsets(&kept, dims, &st);
    let traced_off = offsets(&traced, dims, &st);
    let kd = kept_off.len();
    let mut out = CMat::zeros(kd, kd);
    for (ri, &ro) in kept_off.iter().enumerate() {
        for (ci, &co) in kept_off.iter().enumerate() {
            let mut acc = cx(0.0, 0.0);
            for &to in &traced_off {
                acc += rho.mat()[(ro + to, co + to)];
            }
            out[(ri, ci)] = acc;
        }
    }
    let kept_dims: Vec<usize> = kept.iter().map(|&k| dims[k]).collect();
    DensityMatrix::new(out, kept_dims)
}

/// Transpose the indices of one subsystem, realizing the partial transpose
/// across the cut that isolates it. The result is Hermitian with trace 1 but
/// in general not positive.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: usize) -> Result<CMat> {
    let dims = rho.dims();
    let n = dims.len();
    if n < 2 {
        return Err(Error::CutNotBinary);
    }
    if subsystem >= n {
        return Err(Error::SubsystemOutOfRange {
            index: subsystem,
            count: n,
        });
    }
    let st = strides(dims);
    let ds = dims[subsystem];
    let stride = st[subsystem];
    let d = rho.dim();
    let mut out = CMat::zeros(d, d);
    for r in 0..d {
        let rs = (r / stride) % ds;
        for c in 0..d {
            let cs = (c / stride) % ds;
            let r2 = r - rs * stride + cs * stride;
            let c2 = c - cs * stride + rs * stride;
            out[(r2, c2)] = rho.mat()[(r, c)];
        }
    }
    Ok(out)
}
