//! Bounded-semicharacter duals of concrete abelian semigroups.
//!
//! Two families are covered exactly: subsemigroups of the nonnegative
//! integers, whose dual is a closed disc or a punctured disc, and open
//! product cones in ℝⁿ, whose dual is ℝˡ × ℍ^{n−l}.

pub mod cone;
pub mod disc;

pub use cone::{ConeSemicharacter, ProductCone};
pub use disc::{fit_semicharacter, DiscSemicharacter, DualClassification, DualShape, NumericalSemigroup};
