//! Finite-dimensional operator numerics on contraction balls.
//!
//! Polar decomposition with explicit partial-isometry support, the
//! two-unitary convex splitting of a contraction, the diagonal tensor
//! multiplicativity residual, and closed-form spectrum membership for the
//! classical matrix families.

mod eigen;
mod spectrum;
mod walter;

pub use eigen::{hermitian_eigen, pivoted_column_norms, singular_values};
pub use spectrum::{
    sample_closure, spectrum_membership, GeneratedMatrixGroup, GroupFamily, MembershipCertificate,
    SpectrumMembership,
};
pub use walter::walter_residual_diagonal;

use nalgebra::DMatrix;

use crate::{CMatrix, Error, Result, C64};

/// Singular values below this are treated as the kernel of a polar factor.
const KERNEL_TOL: f64 = 1e-12;

/// Largest singular value.
pub fn operator_norm(x: &CMatrix) -> f64 {
    singular_values(x).first().copied().unwrap_or(0.0)
}

/// Max absolute entry of a matrix difference, for residual reporting.
pub fn max_entry_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// A complex square matrix with operator norm at most 1 (up to 1e-10).
#[derive(Debug, Clone, PartialEq)]
pub struct Contraction {
    entries: CMatrix,
}

impl Contraction {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::InvalidInput("contraction must be square".into()));
        }
        let norm = operator_norm(&entries);
        if norm > 1.0 + 1e-10 {
            return Err(Error::InvalidInput(format!(
                "operator norm {norm} exceeds 1"
            )));
        }
        Ok(Contraction { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }
}

/// Eigendecomposition of a Hermitian PSD matrix with eigenvalues clamped at
/// zero (rounding may produce tiny negative values).
fn psd_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let (vals, vecs) = hermitian_eigen(h);
    (vals.into_iter().map(|l| l.max(0.0)).collect(), vecs)
}

/// Polar decomposition x = v·p of a contraction.
///
/// p = (x*x)^{1/2} comes from a Hermitian eigendecomposition, v = x·p⁺ is
/// zero on the kernel of p, so v is a partial isometry whose initial
/// projection v*v is the support projection of p.
pub fn polar_decompose(x: &Contraction) -> (CMatrix, CMatrix) {
    let m = x.matrix();
    let d = x.dim();
    let (vals, u) = psd_eigen(&(m.adjoint() * m));
    let s: Vec<f64> = vals.iter().map(|l| l.sqrt()).collect();
    let p = &u * DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        d,
        s.iter().map(|&x| C64::new(x, 0.0)),
    )) * u.adjoint();
    let p_pinv = &u * DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        d,
        s.iter()
            .map(|&x| C64::new(if x > KERNEL_TOL { 1.0 / x } else { 0.0 }, 0.0)),
    )) * u.adjoint();
    let v = m * p_pinv;
    (v, p)
}

/// Writes a contraction as the average of two unitaries:
/// x = ½(u₊ + u₋) with u± = w(p ± i√(1−p²)), where x = wp extends the
/// polar partial isometry to a unitary w acting as the identity between
/// the kernel of p and the cokernel of x.
pub fn convex_unitary_split(x: &Contraction) -> (CMatrix, CMatrix) {
    let d = x.dim();
    let m = x.matrix();
    if operator_norm(m) <= KERNEL_TOL {
        // w = I, p = 0: the split degenerates to ±i·I
        let i_mat = CMatrix::from_diagonal_element(d, d, C64::i());
        return (i_mat.clone(), -i_mat);
    }
    let (vals, u) = psd_eigen(&(m.adjoint() * m));
    let s: Vec<f64> = vals.iter().map(|l| l.sqrt()).collect();

    // columns of w: x u_i / s_i on the support, completed to a unitary
    // basis on the kernel by Gram-Schmidt against identity columns.
    let mut cols: Vec<nalgebra::DVector<C64>> = Vec::with_capacity(d);
    let mut kernel_idx: Vec<usize> = Vec::new();
    for (i, &si) in s.iter().enumerate() {
        if si > KERNEL_TOL {
            cols.push(m * u.column(i) / C64::new(si, 0.0));
        } else {
            kernel_idx.push(i);
            cols.push(nalgebra::DVector::zeros(d)); // placeholder
        }
    }
    if !kernel_idx.is_empty() {
        let mut completion: Vec<nalgebra::DVector<C64>> = Vec::new();
        for j in 0..d {
            if completion.len() == kernel_idx.len() {
                break;
            }
            let mut cand = nalgebra::DVector::<C64>::zeros(d);
            cand[j] = C64::new(1.0, 0.0);
            for c in cols.iter().filter(|c| c.norm() > 0.5) {
                let inner = c.dotc(&cand);
                cand -= c * inner;
            }
            for c in &completion {
                let inner = c.dotc(&cand);
                cand -= c * inner;
            }
            let n = cand.norm();
            if n > 1e-8 {
                completion.push(cand / C64::new(n, 0.0));
            }
        }
        for (slot, vec) in kernel_idx.into_iter().zip(completion) {
            cols[slot] = vec;
        }
    }
    let mut w_cols = CMatrix::zeros(d, d);
    for (i, c) in cols.iter().enumerate() {
        w_cols.set_column(i, c);
    }
    let w = &w_cols * u.adjoint();

    let p = &u * DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        d,
        s.iter().map(|&x| C64::new(x, 0.0)),
    )) * u.adjoint();
    let q = &u * DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        d,
        s.iter()
            .map(|&x| C64::new(0.0, (1.0 - (x * x).min(1.0)).max(0.0).sqrt())),
    )) * u.adjoint();
    let u_plus = &w * (&p + &q);
    let u_minus = &w * (&p - &q);
    (u_plus, u_minus)
}
