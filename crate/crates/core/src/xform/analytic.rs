//! Cayley pullbacks, span-equality ranks and maximum-modulus sampling.

use super::{factorial, laplace, ExpPolyFunction};
use crate::{CMatrix, Error, Result, C64};

/// Cayley transform γ(z) = (z − i)/(z + i), mapping the closed upper half
/// plane onto the closed disc minus {1}.
pub fn cayley(z: C64) -> Result<C64> {
    let denom = z + C64::i();
    if denom.norm() < 1e-300 {
        return Err(Error::Domain("z = -i is the Cayley pole".into()));
    }
    Ok((z - C64::i()) / denom)
}

/// Inverse Cayley transform γ⁻¹(w) = i(1 + w)/(1 − w) for w ≠ 1.
pub fn cayley_inv(w: C64) -> Result<C64> {
    let denom = C64::new(1.0, 0.0) - w;
    if denom.norm() < 1e-300 {
        return Err(Error::Domain("w = 1 is the inverse Cayley pole".into()));
    }
    Ok(C64::i() * (C64::new(1.0, 0.0) + w) / denom)
}

/// Transform of the basis density tⁿe^{−t}: n!/(1 − iz)^{n+1}.
pub fn laplace_basis(n: u32, z: C64) -> C64 {
    let denom = C64::new(1.0, 0.0) - C64::i() * z;
    factorial(n) / denom.powi(n as i32 + 1)
}

/// The disc polynomial gₙ(w) = wⁿ − w^{n+1} pulled back through the Cayley
/// transform; its modulus is 2|z−i|ⁿ/|z+i|^{n+1}.  Index 0 is the factor
/// 1 − w itself.
pub fn gn_pullback(n: u32, z: C64) -> Result<C64> {
    let w = cayley(z)?;
    let wn = w.powi(n as i32);
    Ok(wn - wn * w)
}

/// Numerical rank: pivoted-QR diagonal magnitudes above `rel_tol` times
/// the largest.  Gram-matrix singular values would square the condition
/// number and floor small ratios near the rank threshold.
pub fn numerical_rank(m: &CMatrix, rel_tol: f64) -> usize {
    let d = crate::op::pivoted_column_norms(m);
    let top = d.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    d.iter().filter(|&&s| s > rel_tol * top).count()
}

fn normalized_columns(mut m: CMatrix) -> CMatrix {
    for j in 0..m.ncols() {
        let n = m.column(j).norm();
        if n > 0.0 {
            let scaled = m.column(j) / C64::new(n, 0.0);
            m.set_column(j, &scaled);
        }
    }
    m
}

/// Ranks of the two evaluation matrices spanned by the first n transformed
/// basis densities and the first n Cayley pullbacks (both indexed from 0),
/// plus the rank of their concatenation.  Equal n-dimensional spans show
/// up as (n, n, n); starting either family at index 1 instead would leave
/// the pullbacks with a 1/(z+i) component the basis span lacks.
///
/// Columns are normalized before the SVD so the factorial growth of the
/// basis transforms does not mask small singular values; the rank
/// threshold is 1e-8 relative to the top singular value.
pub fn span_equality_rank(n: u32, sample_points: &[C64]) -> Result<(usize, usize, usize)> {
    let m = sample_points.len();
    if n == 0 {
        return Err(Error::InvalidInput("span size must be positive".into()));
    }
    if m < 2 * n as usize + 2 {
        return Err(Error::InvalidInput(format!(
            "need at least {} sample points, got {m}",
            2 * n + 2
        )));
    }
    if sample_points.iter().any(|z| z.im < 0.0) {
        return Err(Error::InvalidInput(
            "sample points must lie in the closed upper half plane".into(),
        ));
    }
    let a = CMatrix::from_fn(m, n as usize, |i, k| {
        laplace_basis(k as u32, sample_points[i])
    });
    let mut b = CMatrix::zeros(m, n as usize);
    for i in 0..m {
        for k in 0..n as usize {
            b[(i, k)] = gn_pullback(k as u32, sample_points[i])?;
        }
    }
    let mut joint = CMatrix::zeros(m, 2 * n as usize);
    joint.view_mut((0, 0), (m, n as usize)).copy_from(&a);
    joint
        .view_mut((0, n as usize), (m, n as usize))
        .copy_from(&b);
    const REL_TOL: f64 = 1e-8;
    Ok((
        numerical_rank(&normalized_columns(a), REL_TOL),
        numerical_rank(&normalized_columns(b), REL_TOL),
        numerical_rank(&normalized_columns(joint), REL_TOL),
    ))
}

/// Largest modulus of `f` over a grid.
pub fn sup_modulus<F: Fn(C64) -> C64>(f: F, grid: &[C64]) -> f64 {
    grid.iter().map(|&z| f(z).norm()).fold(0.0, f64::max)
}

/// Sup of the transform modulus over an interior half-plane grid and over
/// a real boundary grid.  Maximum modulus for these algebras puts the
/// boundary sup on top, up to grid resolution.
pub fn silov_max_modulus(
    f: &ExpPolyFunction,
    interior_grid: &[C64],
    boundary_grid: &[f64],
) -> Result<(f64, f64)> {
    if interior_grid.is_empty() || boundary_grid.is_empty() {
        return Err(Error::InvalidInput("grids must be nonempty".into()));
    }
    if interior_grid.iter().any(|z| z.im <= 0.0) {
        return Err(Error::InvalidInput(
            "interior grid must lie in the open upper half plane".into(),
        ));
    }
    let mut sup_interior: f64 = 0.0;
    for &z in interior_grid {
        sup_interior = sup_interior.max(laplace(f, z)?.norm());
    }
    let mut sup_boundary: f64 = 0.0;
    for &x in boundary_grid {
        sup_boundary = sup_boundary.max(laplace(f, C64::new(x, 0.0))?.norm());
    }
    Ok((sup_interior, sup_boundary))
}
