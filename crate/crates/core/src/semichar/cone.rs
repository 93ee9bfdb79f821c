//! Open product cones in ℝⁿ and their half-plane duals.
//!
//! A product cone is spanned by a basis h₁…hₙ with the first l coordinates
//! free and the remaining ones constrained above thresholds aⱼ ≥ 0.  Its
//! semicharacters are σ_{x,z}(s) = exp(i(x₁s₁ + … + z_{n−l}sₙ)) in basis
//! coordinates, with x real and z in the closed upper half plane, so the
//! dual is ℝˡ × ℍ^{n−l}.

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result, C64};

/// Open product-cone subsemigroup of ℝⁿ.
#[derive(Debug, Clone)]
pub struct ProductCone {
    n: usize,
    l: usize,
    thresholds: Vec<f64>,
    /// Basis vectors h₁…hₙ as matrix columns.
    basis: DMatrix<f64>,
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl ProductCone {
    /// Builds a cone from `l` free directions, per-direction thresholds for
    /// the remaining n−l, and the basis vectors (one per row of `basis`).
    pub fn new(l: usize, thresholds: &[f64], basis: &[Vec<f64>]) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty basis".into()));
        }
        if l > n {
            return Err(Error::InvalidInput(format!("l = {l} exceeds n = {n}")));
        }
        if thresholds.len() != n - l {
            return Err(Error::InvalidInput(format!(
                "expected {} thresholds, got {}",
                n - l,
                thresholds.len()
            )));
        }
        if thresholds.iter().any(|&a| a < 0.0 || !a.is_finite()) {
            return Err(Error::InvalidInput(
                "thresholds must be finite and nonnegative".into(),
            ));
        }
        if basis.iter().any(|h| h.len() != n) {
            return Err(Error::InvalidInput("basis vectors must have length n".into()));
        }
        let mut m = DMatrix::<f64>::zeros(n, n);
        for (j, h) in basis.iter().enumerate() {
            for (i, &v) in h.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        let scale = m.amax().max(1.0);
        let lu = m.clone().lu();
        if lu.determinant().abs() <= 1e-12 * scale.powi(n as i32) {
            return Err(Error::InvalidInput("basis is singular".into()));
        }
        Ok(ProductCone {
            n,
            l,
            thresholds: thresholds.to_vec(),
            basis: m,
            lu,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of full-line directions.
    pub fn line_count(&self) -> usize {
        self.l
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Coordinates of `s` in the cone basis.
    pub fn coordinates(&self, s: &[f64]) -> Result<DVector<f64>> {
        if s.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "point has dimension {}, cone has {}",
                s.len(),
                self.n
            )));
        }
        let rhs = DVector::from_row_slice(s);
        let coords = self
            .lu
            .solve(&rhs)
            .ok_or_else(|| Error::InvalidInput("basis solve failed".into()))?;
        let residual = (&self.basis * &coords - &rhs).norm();
        if residual > 1e-12 * (1.0 + rhs.norm()) {
            return Err(Error::InvalidInput(format!(
                "basis solve residual {residual:.3e} too large"
            )));
        }
        Ok(coords)
    }

    /// Membership: the free coordinates are unconstrained, the cone
    /// coordinates must exceed their thresholds strictly (no epsilon slack;
    /// only the linear solve carries tolerance).
    pub fn member(&self, s: &[f64]) -> Result<bool> {
        let coords = self.coordinates(s)?;
        Ok(self
            .thresholds
            .iter()
            .enumerate()
            .all(|(j, &a)| coords[self.l + j] > a))
    }

    /// The ℝ^{≥1}-stable interior subsemigroup.
    ///
    /// Product cones with nonnegative thresholds are stable under scaling
    /// by reals ≥ 1, so the interior semigroup is the cone itself, carrying
    /// the same (l, basis) decomposition the evaluation map uses.
    pub fn interior_semigroup(&self) -> ProductCone {
        self.clone()
    }
}

/// A dual point (x, z) ∈ ℝˡ × ℍ^{n−l} of a [`ProductCone`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConeSemicharacter {
    x: Vec<f64>,
    z: Vec<C64>,
}

impl ConeSemicharacter {
    pub fn new(x: &[f64], z: &[C64]) -> Result<Self> {
        if z.iter().any(|w| w.im < 0.0) {
            return Err(Error::InvalidInput(
                "half-plane components need Im z >= 0".into(),
            ));
        }
        Ok(ConeSemicharacter {
            x: x.to_vec(),
            z: z.to_vec(),
        })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn z(&self) -> &[C64] {
        &self.z
    }

    /// Evaluates σ_{x,z} at a member of the cone.
    pub fn eval(&self, cone: &ProductCone, s: &[f64]) -> Result<C64> {
        if self.x.len() != cone.line_count() || self.z.len() != cone.dim() - cone.line_count() {
            return Err(Error::InvalidInput(
                "semicharacter shape does not match cone".into(),
            ));
        }
        if !cone.member(s)? {
            return Err(Error::Domain("point is not in the cone".into()));
        }
        let coords = cone.coordinates(s)?;
        let mut exponent = C64::new(0.0, 0.0);
        for (j, &xj) in self.x.iter().enumerate() {
            exponent += C64::new(xj, 0.0) * coords[j];
        }
        for (j, &zj) in self.z.iter().enumerate() {
            exponent += zj * coords[self.x.len() + j];
        }
        Ok((C64::i() * exponent).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_plane_cone() -> ProductCone {
        // S = R x R^{>0} in the standard basis
        ProductCone::new(1, &[0.0], &[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn membership_strict_on_boundary() {
        let c = half_plane_cone();
        assert!(c.member(&[5.0, 1.0]).unwrap());
        assert!(!c.member(&[5.0, 0.0]).unwrap());
        assert!(!c.member(&[5.0, -0.3]).unwrap());
    }

    #[test]
    fn shifted_ray_membership() {
        let c = ProductCone::new(0, &[1.0], &[vec![1.0]]).unwrap();
        assert!(c.member(&[1.5]).unwrap());
        assert!(!c.member(&[1.0]).unwrap());
        assert!(!c.member(&[0.5]).unwrap());
    }

    #[test]
    fn singular_basis_rejected() {
        let r = ProductCone::new(1, &[0.0], &[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn unitary_on_real_characters() {
        let c = half_plane_cone();
        let chi = ConeSemicharacter::new(&[0.7], &[C64::new(-1.3, 0.0)]).unwrap();
        let v = chi.eval(&c, &[2.0, 3.0]).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pure_decay_value() {
        // n = 1, l = 0, z = i, s = 1 evaluates to e^{-1}
        let c = ProductCone::new(0, &[0.0], &[vec![1.0]]).unwrap();
        let chi = ConeSemicharacter::new(&[], &[C64::i()]).unwrap();
        let v = chi.eval(&c, &[1.0]).unwrap();
        assert!((v - C64::new((-1.0f64).exp(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn multiplicative_on_random_pairs() {
        let c = half_plane_cone();
        let chi = ConeSemicharacter::new(&[0.4], &[C64::new(0.9, 0.35)]).unwrap();
        let pairs = [
            ([0.3, 0.4], [1.7, 2.0]),
            ([-2.0, 0.1], [5.0, 0.9]),
            ([10.0, 3.0], [-10.0, 0.5]),
        ];
        for (s, t) in pairs {
            let sum = [s[0] + t[0], s[1] + t[1]];
            let lhs = chi.eval(&c, &sum).unwrap();
            let rhs = chi.eval(&c, &s).unwrap() * chi.eval(&c, &t).unwrap();
            assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
        }
    }

    #[test]
    fn eval_outside_cone_is_domain_error() {
        let c = half_plane_cone();
        let chi = ConeSemicharacter::new(&[0.0], &[C64::i()]).unwrap();
        assert!(matches!(chi.eval(&c, &[1.0, -1.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn interior_semigroup_is_identity_on_product_cones() {
        let c = half_plane_cone();
        let s0 = c.interior_semigroup();
        assert_eq!(s0.line_count(), 1);
        assert_eq!(s0.thresholds(), c.thresholds());
        // full space: l = n, dual is R^n
        let full = ProductCone::new(2, &[], &[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(full.interior_semigroup().line_count(), 2);
    }
}
