//! Cyclic Jacobi eigendecomposition for Hermitian complex matrices.
//!
//! Each sweep diagonalizes every 2x2 principal block exactly (eigenpairs
//! in closed form, no angle recurrences), which converges unconditionally
//! and keeps the accumulated transform unitary to rounding.  Singular
//! values and operator norms are derived through the Gram matrix.

use crate::{CMatrix, C64};

/// Eigendecomposition h = U·diag(λ)·U* of a Hermitian matrix, eigenvalues
/// ascending.  The Hermitian part of the input is used; skew components
/// from rounding are ignored.
pub fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let d = h.nrows();
    assert_eq!(d, h.ncols(), "hermitian_eigen needs a square matrix");
    let mut a = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            a[(i, j)] = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = CMatrix::identity(d, d);
    let scale: f64 = a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt().max(1e-300);
    for _sweep in 0..100 {
        let off: f64 = (0..d)
            .flat_map(|p| ((p + 1)..d).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let beta = a[(p, q)];
                if beta.norm() <= 1e-300 {
                    continue;
                }
                let alpha = a[(p, p)].re;
                let gamma = a[(q, q)].re;
                let mid = 0.5 * (alpha + gamma);
                let half_gap = 0.5 * (alpha - gamma);
                let radius = (half_gap * half_gap + beta.norm_sqr()).sqrt();
                let lambda_hi = mid + radius;
                // eigenvector of [[alpha, beta], [conj(beta), gamma]] for
                // the larger eigenvalue; pick the better-conditioned form
                let (mut u0, mut u1) = if half_gap >= 0.0 {
                    (
                        C64::new(lambda_hi - gamma, 0.0),
                        beta.conj(),
                    )
                } else {
                    (beta, C64::new(lambda_hi - alpha, 0.0))
                };
                let norm = (u0.norm_sqr() + u1.norm_sqr()).sqrt();
                if norm <= 1e-300 {
                    continue;
                }
                u0 /= norm;
                u1 /= norm;
                // J restricted to (p, q): columns (u0, u1) and the
                // orthogonal complement (-conj(u1), conj(u0))
                let (w0, w1) = (-u1.conj(), u0.conj());
                // A <- J* A J on rows/cols p, q
                for k in 0..d {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * u0 + akq * u1;
                    a[(k, q)] = akp * w0 + akq * w1;
                }
                for k in 0..d {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = u0.conj() * apk + u1.conj() * aqk;
                    a[(q, k)] = w0.conj() * apk + w1.conj() * aqk;
                }
                // keep the block exactly Hermitian against drift
                a[(p, q)] = (a[(p, q)] + a[(q, p)].conj()) * 0.5;
                a[(q, p)] = a[(p, q)].conj();
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for k in 0..d {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * u0 + vkq * u1;
                    v[(k, q)] = vkp * w0 + vkq * w1;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(d, d);
    for (col, &src) in order.iter().enumerate() {
        vectors.set_column(col, &v.column(src));
    }
    (values, vectors)
}

/// Singular values of any matrix, descending, via the Gram matrix of the
/// thinner side.  Relative accuracy of small values is limited to the
/// square root of machine epsilon by the squaring; rank decisions near
/// that floor should use [`pivoted_column_norms`] instead.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let gram = if m.nrows() >= m.ncols() {
        m.adjoint() * m
    } else {
        m * m.adjoint()
    };
    let (vals, _) = hermitian_eigen(&gram);
    vals.iter().rev().map(|&l| l.max(0.0).sqrt()).collect()
}

/// Diagonal magnitudes of a column-pivoted Householder QR factorization,
/// in pivot order.  They track the singular values well enough for rank
/// cutoffs without squaring the condition number.
pub fn pivoted_column_norms(m: &CMatrix) -> Vec<f64> {
    let rows = m.nrows();
    let cols = m.ncols();
    let steps = rows.min(cols);
    if steps == 0 {
        return Vec::new();
    }
    let mut a = m.clone();
    let mut diags = Vec::with_capacity(steps);
    for j in 0..steps {
        // pivot: bring the largest remaining column into position j
        let mut best = j;
        let mut best_norm = 0.0f64;
        for c in j..cols {
            let n: f64 = (j..rows).map(|r| a[(r, c)].norm_sqr()).sum();
            if n > best_norm {
                best_norm = n;
                best = c;
            }
        }
        if best != j {
            a.swap_columns(j, best);
        }
        let alpha = best_norm.sqrt();
        diags.push(alpha);
        if alpha <= 1e-300 {
            break;
        }
        // Householder reflection zeroing column j below the diagonal
        let x0 = a[(j, j)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let mut v: Vec<C64> = (j..rows).map(|r| a[(r, j)]).collect();
        v[0] += phase * alpha;
        let vnorm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if vnorm <= 1e-300 {
            continue;
        }
        for c in v.iter_mut() {
            *c /= vnorm;
        }
        for col in j..cols {
            let inner: C64 = v
                .iter()
                .enumerate()
                .map(|(i, &vi)| vi.conj() * a[(j + i, col)])
                .sum();
            let twice = inner * 2.0;
            for (i, &vi) in v.iter().enumerate() {
                a[(j + i, col)] -= vi * twice;
            }
        }
    }
    diags
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(vals: &[f64], vecs: &CMatrix) -> CMatrix {
        let d = vals.len();
        let diag = CMatrix::from_fn(d, d, |i, j| {
            if i == j {
                C64::new(vals[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        vecs * diag * vecs.adjoint()
    }

    #[test]
    fn diagonalizes_random_hermitian() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for d in [1usize, 2, 3, 5, 8, 16] {
            for _ in 0..5 {
                let raw = CMatrix::from_fn(d, d, |_, _| {
                    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                });
                let h = &raw + raw.adjoint();
                let (vals, vecs) = hermitian_eigen(&h);
                let err = (reconstruct(&vals, &vecs) - &h).norm();
                assert!(err <= 1e-12 * (1.0 + h.norm()), "d = {d}: err {err:.3e}");
                let unit = (vecs.adjoint() * &vecs - CMatrix::identity(d, d)).norm();
                assert!(unit <= 1e-13, "d = {d}: unitarity {unit:.3e}");
                assert!(vals.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn known_eigenvalues() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let h = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(2.0, 0.0),
                C64::new(0.0, 1.0),
                C64::new(0.0, -1.0),
                C64::new(2.0, 0.0),
            ],
        );
        let (vals, _) = hermitian_eigen(&h);
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn singular_values_of_ones() {
        let ones = CMatrix::from_element(2, 2, C64::new(1.0, 0.0));
        let sv = singular_values(&ones);
        assert!((sv[0] - 2.0).abs() < 1e-13);
        assert!(sv[1].abs() < 1e-13);
    }

    #[test]
    fn zero_and_empty() {
        let (vals, _) = hermitian_eigen(&CMatrix::zeros(3, 3));
        assert_eq!(vals, vec![0.0; 3]);
        assert!(singular_values(&CMatrix::zeros(0, 0)).is_empty());
        assert!(pivoted_column_norms(&CMatrix::zeros(0, 0)).is_empty());
    }

    #[test]
    fn pivoted_norms_resolve_tiny_rank_gaps() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        // 8x4 with an exact linear dependency among the columns
        let mut m = CMatrix::from_fn(8, 4, |_, _| {
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let dep = m.column(0) * C64::new(0.3, -0.7) + m.column(1) * C64::new(-1.1, 0.2);
        m.set_column(3, &dep);
        let d = pivoted_column_norms(&m);
        assert_eq!(d.len(), 4);
        // three solid pivots, the fourth at rounding level well under 1e-8
        assert!(d[2] > 1e-3 * d[0]);
        assert!(d[3] < 1e-12 * d[0], "dependency pivot {:.3e}", d[3] / d[0]);
    }
}
