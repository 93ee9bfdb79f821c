//! The ax+b group and its analytic extension semigroup.
//!
//! Group elements are pairs (a, b) with a > 0 acting on the line; the
//! extension replaces the translation parameter by a complex z in the
//! closed upper half plane, giving a *-semigroup with product
//! (a,z)(a',z') = (aa', az' + z), involution (a,z)* = (a⁻¹, −a⁻¹z̄) and an
//! explicit polar factorization (a,z) = (a, Re z)·(1, a⁻¹·i·Im z).

mod grid;
mod walter;

pub use grid::GridRep;
pub use walter::{default_trial_vectors, walter_residual_axb, walter_residuals_axb};

use crate::{Error, Result, C64};

/// An element (a, b) of the ax+b group, a > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxbElement {
    pub a: f64,
    pub b: f64,
}

impl AxbElement {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a <= 0.0 || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInput(format!("need a > 0, got a = {a}")));
        }
        Ok(AxbElement { a, b })
    }

    pub fn mul(&self, other: &AxbElement) -> AxbElement {
        AxbElement {
            a: self.a * other.a,
            b: self.a * other.b + self.b,
        }
    }

    pub fn inverse(&self) -> AxbElement {
        AxbElement {
            a: 1.0 / self.a,
            b: -self.b / self.a,
        }
    }
}

/// An element (a, z) of the analytic extension semigroup: a > 0, Im z ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TildeAxb {
    pub a: f64,
    pub z: C64,
}

impl TildeAxb {
    pub fn new(a: f64, z: C64) -> Result<Self> {
        if a <= 0.0 || !a.is_finite() {
            return Err(Error::InvalidInput(format!("need a > 0, got a = {a}")));
        }
        if z.im < 0.0 {
            return Err(Error::InvalidInput(format!(
                "need Im z >= 0, got Im z = {}",
                z.im
            )));
        }
        Ok(TildeAxb { a, z })
    }

    pub fn identity() -> TildeAxb {
        TildeAxb {
            a: 1.0,
            z: C64::new(0.0, 0.0),
        }
    }

    /// Embeds a group element (real translation parameter).
    pub fn from_group(g: &AxbElement) -> TildeAxb {
        TildeAxb {
            a: g.a,
            z: C64::new(g.b, 0.0),
        }
    }
}

/// Semigroup product (a,z)(a',z') = (aa', az' + z); the upper half plane
/// is preserved because a > 0.
pub fn tilde_mul(p: &TildeAxb, q: &TildeAxb) -> TildeAxb {
    TildeAxb {
        a: p.a * q.a,
        z: q.z * p.a + p.z,
    }
}

/// Involution (a,z)* = (a⁻¹, −a⁻¹·z̄).
pub fn tilde_star(p: &TildeAxb) -> TildeAxb {
    TildeAxb {
        a: 1.0 / p.a,
        z: -p.z.conj() / p.a,
    }
}

/// Polar factorization (a,z) = (a, Re z)·(1, a⁻¹·i·Im z): a group element
/// (the unitary part) times a positive element with a = 1 and purely
/// imaginary parameter.
pub fn tilde_polar(p: &TildeAxb) -> (AxbElement, TildeAxb) {
    (
        AxbElement {
            a: p.a,
            b: p.z.re,
        },
        TildeAxb {
            a: 1.0,
            z: C64::new(0.0, p.z.im / p.a),
        },
    )
}
