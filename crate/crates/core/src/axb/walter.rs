//! Tensor-square residual for the discretized extension semigroup.
//!
//! The tensor square of the half-line representation is unitarily
//! equivalent to a direct integral of copies of the representation, with
//! the intertwiner acting by the shear (s, t) ↦ (s + t, t).  On the grid
//! the shear is an exact index shift onto an integer-spaced field grid of
//! 2n levels, the direct-integral operator is a phase times a bilinear
//! interpolation, and elements of the extension semigroup make the two
//! sides agree up to discretization error.

use super::grid::line_weights;
use super::{GridRep, TildeAxb};
use crate::{Error, Result, C64};

/// Tensor field on the grid: entry (k, l) is the coefficient at the node
/// pair (s_k, t_l), stored row-major with k major.
type Field = Vec<C64>;

fn tensor_index(n: usize, k: usize, l: usize) -> usize {
    k * n + l
}

/// Applies the representation matrix on both tensor legs: ξ ↦ (T⊗T)ξ.
fn apply_tensor_square(t: &crate::CMatrix, n: usize, xi: &[C64]) -> Field {
    // rows: out(k,·) = Σ_k' T[k,k'] ξ(k',·), then columns likewise
    let mut mid = vec![C64::new(0.0, 0.0); n * n];
    for k in 0..n {
        for kp in 0..n {
            let w = t[(k, kp)];
            if w != C64::new(0.0, 0.0) {
                let src = &xi[tensor_index(n, kp, 0)..tensor_index(n, kp, 0) + n];
                let dst = &mut mid[tensor_index(n, k, 0)..tensor_index(n, k, 0) + n];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += w * s;
                }
            }
        }
    }
    let mut out = vec![C64::new(0.0, 0.0); n * n];
    for k in 0..n {
        for l in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for lp in 0..n {
                let w = t[(l, lp)];
                if w != C64::new(0.0, 0.0) {
                    acc += w * mid[tensor_index(n, k, lp)];
                }
            }
            out[tensor_index(n, k, l)] = acc;
        }
    }
    out
}

/// The shear intertwiner: field(m, l) = ξ(m − l, l) on integer-spaced
/// levels σ_m = (m+1)h, m < 2n.  An exact isometry on the grid.
fn apply_shear(n: usize, xi: &[C64]) -> Field {
    let mut field = vec![C64::new(0.0, 0.0); 2 * n * n];
    for m in 0..2 * n {
        for l in 0..n.min(m + 1) {
            let k = m - l;
            if k < n {
                field[m * n + l] = xi[tensor_index(n, k, l)];
            }
        }
    }
    field
}

/// Adjoint of the shear: ξ(k, l) = field(k + l, l).
fn apply_shear_adjoint(n: usize, field: &[C64]) -> Field {
    let mut xi = vec![C64::new(0.0, 0.0); n * n];
    for k in 0..n {
        for l in 0..n {
            xi[tensor_index(n, k, l)] = field[(k + l) * n + l];
        }
    }
    xi
}

/// Direct-integral operator on the field grid:
/// (Πv)(σ, t) = a·e^{izσ}·ṽ(aσ, at), with ṽ bilinearly interpolated over
/// the 2n integer σ-levels and the n midpoint t-fibers.
fn apply_direct_integral(grid: &GridRep, p: &TildeAxb, field: &[C64]) -> Field {
    let n = grid.len();
    let h = grid.step();
    let a = p.a;
    let mut out = vec![C64::new(0.0, 0.0); 2 * n * n];
    for m in 0..2 * n {
        let sigma = (m as f64 + 1.0) * h;
        let phase = C64::new(a, 0.0) * (C64::i() * p.z * sigma).exp();
        let Some(sw) = line_weights(2 * n, h, h, a * sigma) else {
            continue;
        };
        for l in 0..n {
            let t_l = (l as f64 + 0.5) * h;
            let Some(tw) = line_weights(n, h, 0.5 * h, a * t_l) else {
                continue;
            };
            let mut acc = C64::new(0.0, 0.0);
            for &(mi, wmi) in &sw {
                if wmi == 0.0 {
                    continue;
                }
                for &(li, wli) in &tw {
                    if wli != 0.0 {
                        acc += field[mi * n + li] * (wmi * wli);
                    }
                }
            }
            out[m * n + l] = phase * acc;
        }
    }
    out
}

fn l2_norm(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Per-vector residuals ‖(U*ΠU − T⊗T)ξ‖/‖ξ‖ over the trial vectors.
pub fn walter_residuals_axb(
    grid: &GridRep,
    p: &TildeAxb,
    trial_vectors: &[Vec<C64>],
) -> Result<Vec<f64>> {
    let n = grid.len();
    if n > 64 {
        return Err(Error::ResourceLimit(format!(
            "tensor residual supports n <= 64, got {n}"
        )));
    }
    if trial_vectors.is_empty() {
        return Err(Error::InvalidInput("no trial vectors".into()));
    }
    let t = grid.build_operator(p)?;
    let mut residuals = Vec::with_capacity(trial_vectors.len());
    for xi in trial_vectors {
        if xi.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "trial vector length {} is not n^2 = {}",
                xi.len(),
                n * n
            )));
        }
        let denom = l2_norm(xi);
        if denom == 0.0 {
            return Err(Error::InvalidInput("zero trial vector".into()));
        }
        let direct = apply_tensor_square(&t, n, xi);
        let via_field =
            apply_shear_adjoint(n, &apply_direct_integral(grid, p, &apply_shear(n, xi)));
        let diff: f64 = direct
            .iter()
            .zip(&via_field)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        residuals.push(diff / denom);
    }
    Ok(residuals)
}

/// Max residual over the trial vectors.
pub fn walter_residual_axb(
    grid: &GridRep,
    p: &TildeAxb,
    trial_vectors: &[Vec<C64>],
) -> Result<f64> {
    Ok(walter_residuals_axb(grid, p, trial_vectors)?
        .into_iter()
        .fold(0.0, f64::max))
}

/// Smooth compactly supported trial vectors for the residual check: bump
/// profiles in each leg, modulated by a few fixed phases.  Supports stay
/// well inside a quarter of the grid so dilations in [1/4, 4] keep every
/// evaluation on the grid.
pub fn default_trial_vectors(grid: &GridRep) -> Vec<Vec<C64>> {
    let n = grid.len();
    let w = grid.s_max() * 0.22;
    let bump = move |x: f64| {
        let u = x / w;
        if u <= 0.0 || u >= 1.0 {
            0.0
        } else {
            (u * (1.0 - u)).powi(2) * 16.0
        }
    };
    let modulations = [
        (0.0, 0.0),
        (1.0, -0.6),
        (2.3, 0.9),
    ];
    modulations
        .iter()
        .map(|&(om, nu)| {
            let mut xi = vec![C64::new(0.0, 0.0); n * n];
            for k in 0..n {
                let s = grid.node(k);
                for l in 0..n {
                    let t = grid.node(l);
                    let amp = bump(s) * bump(t);
                    if amp != 0.0 {
                        xi[tensor_index(n, k, l)] =
                            amp * (C64::i() * (om * s + nu * t)).exp();
                    }
                }
            }
            xi
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shear_is_isometric_and_adjoint_inverts() {
        let grid = GridRep::new(8, 4.0).unwrap();
        let xi: Vec<C64> = (0..64)
            .map(|i| C64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
            .collect();
        let field = apply_shear(8, &xi);
        assert!((l2_norm(&field) - l2_norm(&xi)).abs() < 1e-13);
        let back = apply_shear_adjoint(8, &field);
        let diff: f64 = xi
            .iter()
            .zip(&back)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(diff < 1e-14);
        let _ = grid;
    }

    #[test]
    fn identity_has_zero_residual() {
        let grid = GridRep::new(16, 10.0).unwrap();
        let trials = default_trial_vectors(&grid);
        let r = walter_residual_axb(&grid, &TildeAxb::identity(), &trials).unwrap();
        assert!(r <= 1e-12, "identity residual {r}");
    }

    #[test]
    fn pure_multiplication_is_exact_on_grid() {
        let grid = GridRep::new(16, 10.0).unwrap();
        let trials = default_trial_vectors(&grid);
        let p = TildeAxb::new(1.0, C64::new(0.4, 0.5)).unwrap();
        let r = walter_residual_axb(&grid, &p, &trials).unwrap();
        assert!(r <= 1e-10, "multiplication residual {r}");
    }

    #[test]
    fn dilation_residual_shrinks_under_refinement() {
        let p = TildeAxb::new(2.0, C64::new(0.5, 0.3)).unwrap();
        let mut rs = Vec::new();
        for n in [16usize, 32] {
            let grid = GridRep::new(n, 10.0).unwrap();
            let trials = default_trial_vectors(&grid);
            rs.push(walter_residual_axb(&grid, &p, &trials).unwrap());
        }
        assert!(
            rs[1] * 1.5 <= rs[0],
            "residuals did not shrink: {rs:?}"
        );
    }

    #[test]
    fn resource_limit_enforced() {
        let grid = GridRep::new(128, 10.0).unwrap();
        let p = TildeAxb::identity();
        let xi = vec![C64::new(1.0, 0.0); 128 * 128];
        assert!(matches!(
            walter_residual_axb(&grid, &p, &[xi]),
            Err(Error::ResourceLimit(_))
        ));
    }
}
