//! Grid discretization of the half-line representation.
//!
//! Functions on (0, S_max] are sampled at midpoints s_k = (k+½)h.  The
//! representation operator acts by (Tf)(s) = a^{1/2}·e^{izs}·f̃(as) with
//! f̃ the piecewise-linear interpolant through the samples, anchored to
//! zero at phantom nodes one step outside the node range.

use super::TildeAxb;
use crate::{CMatrix, Error, Result, C64};

/// Uniform midpoint grid on (0, S_max] with n nodes of step h.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRep {
    n: usize,
    h: f64,
}

/// At most two interpolation weights cover any sample point.
pub(crate) type Weights = [(usize, f64); 2];

/// Linear interpolation weights on nodes x_j = offset + j·h, j < n, with
/// value zero at offset and at offset + n·h (one step past the last node).
/// Points snapped onto a node within 1e-12·h keep an exact unit weight.
pub(crate) fn line_weights(n: usize, h: f64, offset: f64, x: f64) -> Option<Weights> {
    let rel = (x - offset) / h;
    if rel <= -1.0 || rel >= n as f64 {
        return None;
    }
    let snap = rel.round();
    if (rel - snap).abs() < 1e-12 && snap >= 0.0 && (snap as usize) < n {
        return Some([(snap as usize, 1.0), (0, 0.0)]);
    }
    let lo = rel.floor();
    let frac = rel - lo;
    let lo = lo as i64;
    let mut w: Weights = [(0, 0.0); 2];
    if lo >= 0 && (lo as usize) < n {
        w[0] = (lo as usize, 1.0 - frac);
    }
    let hi = lo + 1;
    if hi >= 0 && (hi as usize) < n {
        w[1] = (hi as usize, frac);
    }
    Some(w)
}

impl GridRep {
    /// n nodes (at least 8) covering (0, s_max].
    pub fn new(n: usize, s_max: f64) -> Result<Self> {
        if n < 8 {
            return Err(Error::InvalidInput(format!("grid needs n >= 8, got {n}")));
        }
        if s_max <= 0.0 || !s_max.is_finite() {
            return Err(Error::InvalidInput("s_max must be positive".into()));
        }
        Ok(GridRep {
            n,
            h: s_max / n as f64,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn s_max(&self) -> f64 {
        self.n as f64 * self.h
    }

    /// Midpoint node s_k = (k+½)h.
    pub fn node(&self, k: usize) -> f64 {
        (k as f64 + 0.5) * self.h
    }

    /// Interpolation weights for a point on the midpoint grid.
    pub(crate) fn weights(&self, x: f64) -> Option<Weights> {
        line_weights(self.n, self.h, 0.5 * self.h, x)
    }

    /// Samples a density on the grid nodes.
    pub fn sample(&self, f: impl Fn(f64) -> C64) -> Vec<C64> {
        (0..self.n).map(|k| f(self.node(k))).collect()
    }

    /// The matrix of the representation operator for p = (a, z):
    /// row k holds a^{1/2}·e^{iz·s_k} times the interpolation weights of
    /// a·s_k.  Unitary up to O(h) for real z, a contraction up to O(h)
    /// in general.
    pub fn build_operator(&self, p: &TildeAxb) -> Result<CMatrix> {
        if p.a * self.node(0) >= self.s_max() + 0.5 * self.h {
            return Err(Error::DegenerateOperator(format!(
                "dilation a = {} maps every node past the grid support",
                p.a
            )));
        }
        let sqrt_a = C64::new(p.a.sqrt(), 0.0);
        let mut t = CMatrix::zeros(self.n, self.n);
        for k in 0..self.n {
            let s_k = self.node(k);
            let phase = (C64::i() * p.z * s_k).exp() * sqrt_a;
            if let Some(w) = self.weights(p.a * s_k) {
                for &(j, wj) in &w {
                    if wj != 0.0 {
                        t[(k, j)] += phase * wj;
                    }
                }
            }
        }
        Ok(t)
    }

    /// Smooth compactly supported single-leg trial vectors; supports stay
    /// inside a quarter of the grid so dilations in [1/4, 4] keep every
    /// composition on the grid.
    pub fn default_line_trials(&self) -> Vec<Vec<C64>> {
        let w = self.s_max() * 0.22;
        let bump = move |x: f64| {
            let u = x / w;
            if u <= 0.0 || u >= 1.0 {
                0.0
            } else {
                (u * (1.0 - u)).powi(2) * 16.0
            }
        };
        [(0.0f64, 0.0f64), (1.4, -0.3), (-0.8, 0.9)]
            .iter()
            .map(|&(om, ph)| {
                self.sample(|s| C64::from_polar(bump(s), om * s + ph))
            })
            .collect()
    }

    /// Representation residual max_v ‖T(p)T(q)v − T(pq)v‖/‖v‖ over smooth
    /// trial vectors.  The raw operator norm of the difference would be
    /// dominated by grid-frequency modes the interpolation cannot carry,
    /// so the residual is measured where the continuum limit lives.
    pub fn representation_residual(
        &self,
        p: &TildeAxb,
        q: &TildeAxb,
        trials: &[Vec<C64>],
    ) -> Result<f64> {
        let tp = self.build_operator(p)?;
        let tq = self.build_operator(q)?;
        let tpq = self.build_operator(&super::tilde_mul(p, q))?;
        let mut worst: f64 = 0.0;
        for v in trials {
            if v.len() != self.n {
                return Err(Error::InvalidInput("trial vector length mismatch".into()));
            }
            let v = nalgebra::DVector::from_column_slice(v);
            let norm = v.norm();
            if norm == 0.0 {
                return Err(Error::InvalidInput("zero trial vector".into()));
            }
            let diff = &tp * (&tq * &v) - &tpq * &v;
            worst = worst.max(diff.norm() / norm);
        }
        Ok(worst)
    }

    /// Matrix coefficient ⟨T(p)f, g⟩ with the grid quadrature weight h.
    pub fn matrix_coefficient(&self, p: &TildeAxb, f: &[C64], g: &[C64]) -> Result<C64> {
        if f.len() != self.n || g.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "vectors must have grid length {}, got {} and {}",
                self.n,
                f.len(),
                g.len()
            )));
        }
        let t = self.build_operator(p)?;
        let tf = t * nalgebra::DVector::from_column_slice(f);
        Ok(self.h
            * tf.iter()
                .zip(g)
                .map(|(a, b)| a * b.conj())
                .sum::<C64>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::op::operator_norm;

    #[test]
    fn identity_element_builds_identity_matrix() {
        let g = GridRep::new(16, 8.0).unwrap();
        let t = g
            .build_operator(&TildeAxb::new(1.0, C64::new(0.0, 0.0)).unwrap())
            .unwrap();
        assert_eq!(t, CMatrix::identity(16, 16));
    }

    #[test]
    fn pure_phase_is_diagonal() {
        let g = GridRep::new(16, 8.0).unwrap();
        let z = C64::new(0.7, 0.2);
        let t = g.build_operator(&TildeAxb::new(1.0, z).unwrap()).unwrap();
        for k in 0..16 {
            for j in 0..16 {
                if k == j {
                    let expect = (C64::i() * z * g.node(k)).exp();
                    assert!((t[(k, k)] - expect).norm() < 1e-14);
                } else {
                    assert_eq!(t[(k, j)], C64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn group_elements_are_nearly_unitary() {
        for n in [32usize, 64] {
            let g = GridRep::new(n, 12.0).unwrap();
            let p = TildeAxb::new(2.0, C64::new(1.0, 0.0)).unwrap();
            let t = g.build_operator(&p).unwrap();
            let norm = operator_norm(&t);
            assert!(norm <= 1.0 + 4.0 * g.step(), "norm {norm} at n = {n}");
        }
    }

    #[test]
    fn representation_error_shrinks_under_refinement() {
        let p = TildeAxb::new(2.0, C64::new(1.0, 0.0)).unwrap();
        let q = TildeAxb::new(0.5, C64::new(-1.0, 0.0)).unwrap();
        let mut errs = Vec::new();
        for n in [16usize, 32] {
            let g = GridRep::new(n, 12.0).unwrap();
            let trials = g.default_line_trials();
            errs.push(g.representation_residual(&p, &q, &trials).unwrap());
        }
        assert!(
            errs[1] * 1.5 <= errs[0],
            "no refinement gain: {errs:?}"
        );
    }

    #[test]
    fn degenerate_dilation_rejected() {
        let g = GridRep::new(8, 4.0).unwrap();
        let p = TildeAxb::new(64.0, C64::new(0.0, 0.0)).unwrap();
        assert!(matches!(
            g.build_operator(&p),
            Err(Error::DegenerateOperator(_))
        ));
    }

    #[test]
    fn matrix_coefficient_of_identity_is_norm() {
        let g = GridRep::new(16, 8.0).unwrap();
        let f = g.sample(|s| C64::new((-s).exp(), 0.0));
        let norm_sq: f64 = g.step() * f.iter().map(|v| v.norm_sqr()).sum::<f64>();
        let coeff = g
            .matrix_coefficient(&TildeAxb::identity(), &f, &f)
            .unwrap();
        assert!((coeff - C64::new(norm_sq, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn coefficient_slices_are_laplace_transforms_in_b() {
        // at a = 1 the coefficient <T(1,b)f, f> with f = e^{-s} samples the
        // transform of e^{-2t}, i.e. 1/(2 - ib), up to grid quadrature
        use crate::xform::{laplace, ExpPolyFunction, ExpPolyTerm};
        let g = GridRep::new(256, 24.0).unwrap();
        let f = g.sample(|s| C64::new((-s).exp(), 0.0));
        let density = ExpPolyFunction::new(vec![ExpPolyTerm {
            coeff: C64::new(1.0, 0.0),
            power: 0,
            decay: 2.0,
        }])
        .unwrap();
        for b in [-1.5, 0.0, 0.7, 3.0] {
            let p = TildeAxb::new(1.0, C64::new(b, 0.0)).unwrap();
            let coeff = g.matrix_coefficient(&p, &f, &f).unwrap();
            let closed = laplace(&density, C64::new(b, 0.0)).unwrap();
            assert!(
                (coeff - closed).norm() < 2.0 * g.step(),
                "b = {b}: grid {coeff} vs transform {closed}"
            );
        }
    }

    #[test]
    fn coefficient_vanishes_for_large_dilations() {
        // fixed b, the coefficient is a C0 function of the dilation
        let g = GridRep::new(64, 12.0).unwrap();
        let f = g.sample(|s| C64::new((-s).exp(), 0.0));
        let value = |a: f64| {
            let p = TildeAxb::new(a, C64::new(0.5, 0.0)).unwrap();
            g.matrix_coefficient(&p, &f, &f).unwrap().norm()
        };
        assert!(value(64.0) < value(1.0) * 0.2);
        assert!(value(1.0 / 64.0) < value(1.0) * 0.4);
    }

    #[test]
    fn tiny_grids_rejected() {
        assert!(GridRep::new(4, 4.0).is_err());
        assert!(GridRep::new(8, 0.0).is_err());
    }

    #[test]
    fn matrix_coefficient_checks_lengths() {
        let g = GridRep::new(8, 4.0).unwrap();
        let f = vec![C64::new(1.0, 0.0); 8];
        let bad = vec![C64::new(1.0, 0.0); 7];
        assert!(g.matrix_coefficient(&TildeAxb::identity(), &f, &bad).is_err());
    }

    #[test]
    fn tensor_coefficient_factorizes() {
        let g = GridRep::new(12, 6.0).unwrap();
        let p = TildeAxb::new(2.0, C64::new(0.3, 0.1)).unwrap();
        let f = g.sample(|s| C64::new((-s).exp(), 0.0));
        let gg = g.sample(|s| C64::new(s * (-2.0 * s).exp(), 0.1));
        let h = g.sample(|s| C64::new((-0.5 * (s - 2.0).powi(2)).exp(), 0.0));
        let k = g.sample(|s| C64::new(0.2, -0.3 * (-s).exp()));
        // Kronecker identity: <(T⊗T)(f⊗g), h⊗k> = <Tf,h><Tg,k>
        let lhs = g.matrix_coefficient(&p, &f, &h).unwrap()
            * g.matrix_coefficient(&p, &gg, &k).unwrap();
        let t = g.build_operator(&p).unwrap();
        let tf = &t * nalgebra::DVector::from_column_slice(&f);
        let tg = &t * nalgebra::DVector::from_column_slice(&gg);
        let mut rhs = C64::new(0.0, 0.0);
        for a in 0..12 {
            for b in 0..12 {
                rhs += tf[a] * tg[b] * (h[a] * k[b]).conj();
            }
        }
        rhs *= g.step() * g.step();
        assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
    }
}
