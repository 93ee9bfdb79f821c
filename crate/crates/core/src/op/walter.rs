//! Tensor multiplicativity residual on diagonal character windows.
//!
//! A functional on a multiplication-closed window of characters lies on a
//! semicharacter exactly when x(χχ') = x(χ)x(χ') for every pair whose
//! product stays inside the window; the residual is the worst deviation.

use std::collections::HashMap;
use std::hash::Hash;

use crate::{Error, Result, C64};

/// Max over in-window pairs (χ, χ') of |x(χχ') − x(χ)x(χ')|.
///
/// `values` lists the window as (character key, value); `product` is the
/// character multiplication.  Pairs whose product leaves the window are
/// skipped; a window admitting no in-window product at all cannot be
/// checked and is rejected, as are values outside the closed unit disc.
pub fn walter_residual_diagonal<K, F>(values: &[(K, C64)], product: F) -> Result<f64>
where
    K: Eq + Hash + Clone,
    F: Fn(&K, &K) -> K,
{
    if values.is_empty() {
        return Err(Error::InvalidInput("empty character window".into()));
    }
    for (_, v) in values {
        if v.norm() > 1.0 + 1e-9 {
            return Err(Error::InvalidInput(format!(
                "value modulus {} exceeds 1",
                v.norm()
            )));
        }
    }
    let table: HashMap<&K, C64> = values.iter().map(|(k, v)| (k, *v)).collect();
    let mut residual: f64 = 0.0;
    let mut pairs = 0usize;
    for (a, va) in values {
        for (b, vb) in values {
            let ab = product(a, b);
            if let Some(vab) = table.get(&ab) {
                residual = residual.max((vab - va * vb).norm());
                pairs += 1;
            }
        }
    }
    if pairs == 0 {
        return Err(Error::InvalidInput(
            "window is not closed under any product".into(),
        ));
    }
    Ok(residual)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicative_values_have_zero_residual() {
        // x(s) = 0.5^s on the members of <2,3> within [2, 6]
        let window: Vec<(u64, C64)> = [2u64, 3, 4, 5, 6]
            .iter()
            .map(|&s| (s, C64::new(0.5f64.powi(s as i32), 0.0)))
            .collect();
        let r = walter_residual_diagonal(&window, |a, b| a + b).unwrap();
        assert!(r <= 1e-12);
    }

    #[test]
    fn constant_one_has_zero_residual() {
        let window: Vec<(u64, C64)> = (2..=6).map(|s| (s, C64::new(1.0, 0.0))).collect();
        let r = walter_residual_diagonal(&window, |a, b| a + b).unwrap();
        assert!(r == 0.0);
    }

    #[test]
    fn perturbation_shows_up() {
        let mut window: Vec<(u64, C64)> = [2u64, 3, 4, 5, 6]
            .iter()
            .map(|&s| (s, C64::new(0.5f64.powi(s as i32), 0.0)))
            .collect();
        // bump the value at the decomposable point 5 by 0.1
        for (s, v) in window.iter_mut() {
            if *s == 5 {
                *v += C64::new(0.1, 0.0);
            }
        }
        let r = walter_residual_diagonal(&window, |a, b| a + b).unwrap();
        assert!(r >= 0.09, "residual {r} too small");
    }

    #[test]
    fn window_without_products_rejected() {
        let window: Vec<(u64, C64)> = vec![(5, C64::new(0.5, 0.0)), (7, C64::new(0.25, 0.0))];
        assert!(walter_residual_diagonal(&window, |a, b| a + b).is_err());
    }

    #[test]
    fn values_above_one_rejected() {
        let window: Vec<(u64, C64)> = vec![(2, C64::new(2.0, 0.0)), (4, C64::new(4.0, 0.0))];
        assert!(walter_residual_diagonal(&window, |a, b| a + b).is_err());
    }
}
