//! Spectrum membership for classical matrix families and closure sampling.
//!
//! For the full unitary family the spectrum is the punctured contraction
//! ball.  For the scaled orthogonal and symplectic families, membership of
//! a contraction x reduces to a scalar-form identity: xᵀx = c·I, resp.
//! xᵀJx = c·J, for a single complex c recovered from a trace.

use nalgebra::DMatrix;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{max_entry_distance, operator_norm, Contraction};
use crate::{CMatrix, Error, Result, C64};

/// Classical family tags for generated matrix groups.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupFamily {
    /// Full unitary group U(d).
    Unitary,
    /// Circle times orthogonal: {z·u, |z| = 1, u ∈ O(d)}.
    ScaledOrthogonal,
    /// Circle times compact symplectic, with the stored symplectic form.
    ScaledSymplectic { form: CMatrix },
    /// No closed-form membership test.
    Custom(String),
}

/// A matrix group described by finitely many unitary generators plus a
/// family tag driving the spectrum membership test.
#[derive(Debug, Clone)]
pub struct GeneratedMatrixGroup {
    generators: Vec<CMatrix>,
    family: GroupFamily,
    dim: usize,
}

impl GeneratedMatrixGroup {
    pub fn new(generators: Vec<CMatrix>, family: GroupFamily) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("no generators".into()));
        }
        let dim = generators[0].nrows();
        for g in &generators {
            if g.nrows() != dim || g.ncols() != dim {
                return Err(Error::InvalidInput("generator shape mismatch".into()));
            }
            let dev = operator_norm(&(g.adjoint() * g - CMatrix::identity(dim, dim)));
            if dev > 1e-10 {
                return Err(Error::InvalidInput(format!(
                    "generator is not unitary (deviation {dev:.3e})"
                )));
            }
        }
        if let GroupFamily::ScaledSymplectic { form } = &family {
            if !dim.is_multiple_of(2) {
                return Err(Error::InvalidInput(
                    "symplectic family needs even dimension".into(),
                ));
            }
            if form.nrows() != dim || form.ncols() != dim {
                return Err(Error::InvalidInput("symplectic form shape mismatch".into()));
            }
        }
        Ok(GeneratedMatrixGroup {
            generators,
            family,
            dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn family(&self) -> &GroupFamily {
        &self.family
    }

    /// The standard symplectic form on C^{2m}: J = [[0, I], [-I, 0]].
    pub fn standard_symplectic_form(dim: usize) -> CMatrix {
        let m = dim / 2;
        let mut j = CMatrix::zeros(dim, dim);
        for k in 0..m {
            j[(k, m + k)] = C64::new(1.0, 0.0);
            j[(m + k, k)] = C64::new(-1.0, 0.0);
        }
        j
    }
}

/// Certificate attached to a membership verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum MembershipCertificate {
    /// The scalar c of the closed-form identity, with the residual of the fit.
    Scalar { c: C64, deviation: f64 },
    /// The worst-violating entry of the scalar-form identity.
    Violation {
        row: usize,
        col: usize,
        deviation: f64,
    },
    /// x = 0: the adjoined zero of the compactification, not a spectrum point.
    ZeroAdjoined,
    /// Family U: membership is plain contraction-ball membership.
    ContractionBall { norm: f64 },
}

/// Membership verdict with its certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMembership {
    pub in_spectrum: bool,
    pub certificate: MembershipCertificate,
}

/// Decides membership of a contraction in the spectrum attached to a
/// classical family, with a certificate.
pub fn spectrum_membership(
    x: &Contraction,
    group: &GeneratedMatrixGroup,
    tol: f64,
) -> Result<SpectrumMembership> {
    if x.dim() != group.dim() {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    let m = x.matrix();
    let norm = operator_norm(m);
    if norm <= 1e-14 {
        return Ok(SpectrumMembership {
            in_spectrum: false,
            certificate: MembershipCertificate::ZeroAdjoined,
        });
    }
    match &group.family {
        GroupFamily::Unitary => Ok(SpectrumMembership {
            in_spectrum: true,
            certificate: MembershipCertificate::ContractionBall { norm },
        }),
        GroupFamily::ScaledOrthogonal => {
            let gram = m.transpose() * m;
            Ok(scalar_form_verdict(&gram, &CMatrix::identity(x.dim(), x.dim()), x.dim(), tol))
        }
        GroupFamily::ScaledSymplectic { form } => {
            let gram = m.transpose() * form * m;
            Ok(scalar_form_verdict(&gram, form, x.dim(), tol))
        }
        GroupFamily::Custom(name) => Err(Error::UnsupportedFamily(name.clone())),
    }
}

/// Tests gram = c·reference with c = tr(reference⁻¹·gram)/d estimated from
/// the trace pairing, reporting the max-entry deviation.
fn scalar_form_verdict(
    gram: &CMatrix,
    reference: &CMatrix,
    dim: usize,
    tol: f64,
) -> SpectrumMembership {
    // the references used here (I and J) satisfy ref⁻¹ = refᵀ
    let c = (reference.transpose() * gram).trace() / C64::new(dim as f64, 0.0);
    let target = reference * c;
    let mut worst = (0usize, 0usize, 0.0f64);
    for i in 0..dim {
        for j in 0..dim {
            let dev = (gram[(i, j)] - target[(i, j)]).norm();
            if dev > worst.2 {
                worst = (i, j, dev);
            }
        }
    }
    if worst.2 <= tol {
        SpectrumMembership {
            in_spectrum: true,
            certificate: MembershipCertificate::Scalar {
                c,
                deviation: worst.2,
            },
        }
    } else {
        SpectrumMembership {
            in_spectrum: false,
            certificate: MembershipCertificate::Violation {
                row: worst.0,
                col: worst.1,
                deviation: worst.2,
            },
        }
    }
}

/// Samples the closure of the generated group by random words of bounded
/// length, deduplicated to 1e-8 in max-entry distance.
pub fn sample_closure(
    group: &GeneratedMatrixGroup,
    max_word_len: usize,
    count: usize,
    seed: u64,
) -> Vec<CMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<CMatrix> = Vec::new();
    let gens = group.generators();
    for _ in 0..count {
        let len = rng.random_range(1..=max_word_len.max(1));
        let mut w = DMatrix::identity(group.dim(), group.dim());
        for _ in 0..len {
            let g = &gens[rng.random_range(0..gens.len())];
            w = &w * g;
        }
        if out.iter().all(|m| max_entry_distance(m, &w) > 1e-8) {
            out.push(w);
        }
    }
    out
}
