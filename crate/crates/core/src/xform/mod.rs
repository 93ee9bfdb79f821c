//! Laplace-transform numerics for exponential-polynomial densities on
//! the positive half line.
//!
//! Every density here is a finite sum of terms α·tⁿ·e^{−ct} with c > 0,
//! so transforms have closed forms and the half-plane function theory
//! (maximum modulus, span identities, Cayley pullbacks) can be checked to
//! rounding accuracy.

mod analytic;

pub use analytic::{
    cayley, cayley_inv, gn_pullback, laplace_basis, numerical_rank, silov_max_modulus,
    span_equality_rank, sup_modulus,
};

use crate::{Error, Result, C64};

/// One term α·t^n·e^{−ct} of an exponential-polynomial density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpPolyTerm {
    pub coeff: C64,
    pub power: u32,
    pub decay: f64,
}

/// A density t ↦ Σ αₖ t^{nₖ} e^{−cₖ t} on t > 0 with all cₖ > 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPolyFunction {
    terms: Vec<ExpPolyTerm>,
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn binomial(n: u32, k: u32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

impl ExpPolyFunction {
    pub fn new(terms: Vec<ExpPolyTerm>) -> Result<Self> {
        if terms.iter().any(|t| t.decay <= 0.0 || !t.decay.is_finite()) {
            return Err(Error::InvalidInput(
                "decay rates must be positive for integrability".into(),
            ));
        }
        Ok(ExpPolyFunction { terms })
    }

    /// The basis density t^n e^{−t}.
    pub fn basis(n: u32) -> Self {
        ExpPolyFunction {
            terms: vec![ExpPolyTerm {
                coeff: C64::new(1.0, 0.0),
                power: n,
                decay: 1.0,
            }],
        }
    }

    pub fn terms(&self) -> &[ExpPolyTerm] {
        &self.terms
    }

    /// Pointwise value at t.
    pub fn eval(&self, t: f64) -> C64 {
        self.terms
            .iter()
            .map(|term| term.coeff * t.powi(term.power as i32) * (-term.decay * t).exp())
            .sum()
    }

    /// Upper bound Σ |αₖ| nₖ!/cₖ^{nₖ+1} on the L¹ norm.
    pub fn l1_norm_bound(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff.norm() * factorial(t.power) / t.decay.powi(t.power as i32 + 1))
            .sum()
    }

    /// The translated density t ↦ f(t + a), expanded binomially back into
    /// exponential-polynomial form.
    pub fn translate(&self, a: f64) -> Self {
        let mut terms = Vec::new();
        for t in &self.terms {
            let damp = (-t.decay * a).exp();
            for k in 0..=t.power {
                terms.push(ExpPolyTerm {
                    coeff: t.coeff * damp * binomial(t.power, k) * a.powi((t.power - k) as i32),
                    power: k,
                    decay: t.decay,
                });
            }
        }
        ExpPolyFunction { terms }
    }

    /// Conjugated coefficients (the density t ↦ conj(f(t))).
    pub fn conj(&self) -> Self {
        ExpPolyFunction {
            terms: self
                .terms
                .iter()
                .map(|t| ExpPolyTerm {
                    coeff: t.coeff.conj(),
                    ..*t
                })
                .collect(),
        }
    }
}

/// Laplace transform ∫₀^∞ f(t)e^{izt}dt for Im z ≥ 0, in closed form:
/// each term contributes αₖ·nₖ!/(cₖ − iz)^{nₖ+1}.
pub fn laplace(f: &ExpPolyFunction, z: C64) -> Result<C64> {
    if z.im < 0.0 {
        return Err(Error::Domain(format!(
            "Im z = {} is negative; the transform lives on the closed upper half plane",
            z.im
        )));
    }
    Ok(f.terms()
        .iter()
        .map(|t| {
            let denom = C64::new(t.decay, 0.0) - C64::i() * z;
            t.coeff * factorial(t.power) / denom.powi(t.power as i32 + 1)
        })
        .sum())
}

/// Transform of f over the shifted ray t > a: e^{iaz}·∫₀^∞ f(u+a)e^{izu}du.
pub fn shifted_cone_transform(a: f64, f: &ExpPolyFunction, z: C64) -> Result<C64> {
    if a <= 0.0 || !a.is_finite() {
        return Err(Error::Domain(format!("shift a = {a} must be positive")));
    }
    let inner = laplace(&f.translate(a), z)?;
    Ok((C64::i() * z * a).exp() * inner)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplace_of_pure_exponential() {
        let f = ExpPolyFunction::basis(0);
        let v = laplace(&f, C64::new(0.0, 0.0)).unwrap();
        assert!((v - C64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn laplace_of_t_exponential() {
        let f = ExpPolyFunction::basis(1);
        let v = laplace(&f, C64::new(0.0, 0.0)).unwrap();
        assert!((v - C64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn laplace_rejects_lower_half_plane() {
        let f = ExpPolyFunction::basis(0);
        assert!(matches!(
            laplace(&f, C64::new(0.0, -0.1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn transform_bounded_by_l1_norm() {
        let f = ExpPolyFunction::new(vec![
            ExpPolyTerm {
                coeff: C64::new(0.3, -0.7),
                power: 2,
                decay: 1.5,
            },
            ExpPolyTerm {
                coeff: C64::new(-1.0, 0.2),
                power: 0,
                decay: 0.8,
            },
        ])
        .unwrap();
        let bound = f.l1_norm_bound();
        for &z in &[
            C64::new(0.0, 0.0),
            C64::new(3.0, 1.0),
            C64::new(-2.0, 0.2),
            C64::new(0.5, 7.0),
        ] {
            assert!(laplace(&f, z).unwrap().norm() <= bound + 1e-12);
        }
    }

    #[test]
    fn translate_matches_pointwise() {
        let f = ExpPolyFunction::new(vec![ExpPolyTerm {
            coeff: C64::new(1.0, 0.5),
            power: 3,
            decay: 1.2,
        }])
        .unwrap();
        let g = f.translate(0.7);
        for &t in &[0.0, 0.4, 1.0, 3.3] {
            assert!((g.eval(t) - f.eval(t + 0.7)).norm() < 1e-12);
        }
    }

    #[test]
    fn shifted_transform_closed_form() {
        // transform of e^{-t} over t > a is e^{iaz}e^{-a}/(1 - iz)
        let f = ExpPolyFunction::basis(0);
        let a = 0.9;
        for &z in &[C64::new(0.3, 0.0), C64::new(-1.0, 2.0), C64::new(0.0, 0.5)] {
            let got = shifted_cone_transform(a, &f, z).unwrap();
            let expect =
                (C64::i() * z * a).exp() * (-a).exp() / (C64::new(1.0, 0.0) - C64::i() * z);
            assert!((got - expect).norm() < 1e-13 * (1.0 + expect.norm()));
        }
    }

    #[test]
    fn shifted_transform_modulus_bound() {
        let f = ExpPolyFunction::basis(2);
        let a = 1.3;
        for &z in &[C64::new(1.0, 0.4), C64::new(-2.0, 2.0)] {
            let got = shifted_cone_transform(a, &f, z).unwrap().norm();
            let bound = (-a * z.im).exp() * f.translate(a).l1_norm_bound();
            assert!(got <= bound + 1e-12);
        }
    }

    #[test]
    fn shifted_transform_small_a_recovers_laplace() {
        let f = ExpPolyFunction::basis(1);
        let z = C64::new(0.7, 0.3);
        let direct = laplace(&f, z).unwrap();
        let shifted = shifted_cone_transform(1e-9, &f, z).unwrap();
        assert!((direct - shifted).norm() < 1e-7);
    }

    #[test]
    fn shifted_transform_rejects_nonpositive_a() {
        let f = ExpPolyFunction::basis(0);
        assert!(shifted_cone_transform(0.0, &f, C64::new(0.0, 0.0)).is_err());
        assert!(shifted_cone_transform(-1.0, &f, C64::new(0.0, 0.0)).is_err());
    }
}
