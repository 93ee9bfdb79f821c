//! Subsemigroups of ℤ≥0 and their disc-shaped semicharacter duals.
//!
//! A finitely generated subsemigroup S of the nonnegative integers has
//! gcd d = gcd(S∖{0}), and every bounded semicharacter is s ↦ z^{s/d} for
//! a single z in the closed unit disc.  The dual is the full disc when
//! 0 ∈ S and the punctured disc otherwise, in which case the zero
//! functional is adjoined by the compactification.

use crate::{Error, Result, C64};

/// A finitely generated subsemigroup of ℤ≥0.
///
/// Stores the generators, whether 0 is a member, the gcd `d` of the
/// generators, the minimal conductor, and a membership sieve covering
/// everything below the conductor threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    include_zero: bool,
    d: u64,
    conductor: u64,
    sieve: Vec<bool>,
}

/// Shape of the semicharacter dual of a [`NumericalSemigroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualShape {
    /// 0 ∈ S: the dual is the whole closed disc.
    FullDisc,
    /// 0 ∉ S: the dual is the punctured closed disc.
    PuncturedDisc,
}

/// Classification report for the dual of a numerical semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualClassification {
    pub shape: DualShape,
    /// Whether the compactification adjoins the zero functional as an
    /// extra point (equivalently, the constants are missing from the
    /// generated C*-algebra).
    pub zero_adjoined: bool,
    pub d: u64,
    pub conductor: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `generators` (all positive),
    /// optionally together with 0.
    pub fn new(generators: &[u64], include_zero: bool) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput(
                "semigroup needs at least one positive generator".into(),
            ));
        }
        if generators.contains(&0) {
            return Err(Error::InvalidInput(
                "generators must be positive; use include_zero for 0".into(),
            ));
        }
        let mut gens: Vec<u64> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();

        let d = gens.iter().copied().fold(0, gcd);
        let (conductor, sieve) = Self::conductor_sieve(&gens, d, include_zero)?;
        Ok(NumericalSemigroup {
            generators: gens,
            include_zero,
            d,
            conductor,
            sieve,
        })
    }

    /// Membership sieve up to `limit` inclusive.
    fn sieve_to(gens: &[u64], include_zero: bool, limit: u64) -> Vec<bool> {
        let n = limit as usize + 1;
        let mut reach = vec![false; n];
        reach[0] = true; // combination origin; 0-membership handled separately
        for s in 1..n {
            for &g in gens {
                let g = g as usize;
                if g <= s && reach[s - g] {
                    reach[s] = true;
                    break;
                }
            }
        }
        if !include_zero {
            reach[0] = false;
        }
        reach
    }

    /// Minimal conductor by dynamic-programming sieve.
    ///
    /// The conductor is the least multiple of d such that every multiple
    /// of d at or above it is a member.  The sieve horizon grows until the
    /// run argument applies: once g_min/d consecutive member multiples sit
    /// above the largest gap, adding the smallest generator propagates
    /// membership forever.  The coarse Bézout bound caps the growth but is
    /// never reported as the answer.
    fn conductor_sieve(gens: &[u64], d: u64, include_zero: bool) -> Result<(u64, Vec<bool>)> {
        const HORIZON_CAP: u64 = 1 << 27;
        let g_min = gens[0];
        let mut limit = (gens[gens.len() - 1].saturating_mul(g_min) / d + g_min)
            .max(4 * g_min)
            .min(HORIZON_CAP);
        loop {
            if limit > HORIZON_CAP {
                return Err(Error::ResourceLimit(format!(
                    "conductor sieve horizon {limit} exceeds the supported range"
                )));
            }
            let sieve = Self::sieve_to(gens, include_zero, limit);
            // largest non-member multiple of d within [0, limit]
            let largest_gap = (0..=limit / d)
                .rev()
                .map(|k| k * d)
                .find(|&m| !sieve[m as usize]);
            match largest_gap {
                None => {
                    // every multiple of d up to the horizon is a member
                    return Ok((if include_zero { 0 } else { d }, sieve));
                }
                Some(f) if f + g_min <= limit => {
                    // the run (f, f + g_min] of member multiples certifies f + d
                    return Ok((f + d, sieve));
                }
                Some(_) => limit *= 2,
            }
        }
    }

    /// gcd of the generators.
    pub fn d(&self) -> u64 {
        self.d
    }

    /// Minimal threshold past which every multiple of d is a member.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn includes_zero(&self) -> bool {
        self.include_zero
    }

    /// Membership test: is `s` a finite ℤ≥0-combination of the generators
    /// (or 0, when the semigroup includes 0)?
    pub fn member(&self, s: u64) -> bool {
        if s == 0 {
            return self.include_zero;
        }
        if !s.is_multiple_of(self.d) {
            return false;
        }
        if s >= self.conductor {
            return true;
        }
        self.sieve
            .get(s as usize)
            .copied()
            .unwrap_or(s >= self.conductor)
    }

    /// Members of S within [0, limit], in increasing order.
    pub fn members_upto(&self, limit: u64) -> Vec<u64> {
        (0..=limit).filter(|&s| self.member(s)).collect()
    }

    /// Dual classification: full disc iff 0 ∈ S; the zero functional is
    /// adjoined by the compactification exactly in the punctured case.
    pub fn classify_dual(&self) -> DualClassification {
        let shape = if self.include_zero {
            DualShape::FullDisc
        } else {
            DualShape::PuncturedDisc
        };
        DualClassification {
            shape,
            zero_adjoined: !self.include_zero,
            d: self.d,
            conductor: self.conductor,
        }
    }

    /// Coarse Bézout bound (|m₁|+…+|mₙ|)·s₁…sₙ on the conductor threshold.
    ///
    /// Saturates at u64::MAX; only used as a cross-check, never to compute
    /// the conductor.
    pub fn coarse_conductor_bound(&self) -> u64 {
        let mut g = self.generators[0] as i128;
        let mut coeffs: Vec<i128> = vec![1];
        for &s in &self.generators[1..] {
            let (g2, x, y) = ext_gcd(g, s as i128);
            for c in coeffs.iter_mut() {
                *c *= x;
            }
            coeffs.push(y);
            g = g2;
        }
        let mut bound: i128 = coeffs.iter().map(|c| c.abs()).sum();
        for &s in &self.generators {
            bound = bound.saturating_mul(s as i128);
            if bound > u64::MAX as i128 {
                return u64::MAX;
            }
        }
        bound as u64
    }
}

/// A point of the disc dual: either σ_z for |z| ≤ 1, or the functional
/// that vanishes on S∖{0} (flagged explicitly, since z = 0 already names
/// a genuine semicharacter when 0 ∈ S).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscSemicharacter {
    z: C64,
    zero_flag: bool,
}

impl DiscSemicharacter {
    /// Semicharacter σ_z; requires |z| ≤ 1 up to 1e-12.
    pub fn new(z: C64) -> Result<Self> {
        if z.norm() > 1.0 + 1e-12 {
            return Err(Error::InvalidInput(format!(
                "|z| = {} exceeds 1",
                z.norm()
            )));
        }
        Ok(DiscSemicharacter {
            z,
            zero_flag: false,
        })
    }

    /// The dual point vanishing on S∖{0}.
    pub fn zero() -> Self {
        DiscSemicharacter {
            z: C64::new(0.0, 0.0),
            zero_flag: true,
        }
    }

    pub fn z(&self) -> C64 {
        self.z
    }

    pub fn is_zero_functional(&self) -> bool {
        self.zero_flag
    }

    /// Evaluates the semicharacter at a member s of S: z^{s/d}.
    ///
    /// The zero-flagged point evaluates to 0 on S∖{0} and to 1 at 0 when
    /// 0 ∈ S.  Non-members are rejected.
    pub fn eval(&self, semigroup: &NumericalSemigroup, s: u64) -> Result<C64> {
        if !semigroup.member(s) {
            return Err(Error::Domain(format!("{s} is not a member")));
        }
        if self.zero_flag {
            return Ok(if s == 0 {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            });
        }
        Ok(pow_u(self.z, s / semigroup.d()))
    }

    /// Pointwise complex conjugate (the dual involution): σ_z ↦ σ_{z̄}.
    pub fn conj(&self) -> Self {
        DiscSemicharacter {
            z: self.z.conj(),
            zero_flag: self.zero_flag,
        }
    }
}

/// Recovers z from nonvanishing samples whose exponents reach gcd d.
///
/// The cheap route divides values at consecutive exponents s and s + d,
/// exactly the quotient that defines the generator.  When no such pair is
/// sampled, a Bézout combination over a gcd-reducing subset is evaluated
/// in log space: coefficients of the combination can be large, but the
/// weighted logs cancel down to log z, and phases only move by full turns.
fn recover_generator(positive: &[(u64, C64)], d: u64) -> C64 {
    let mut best: Option<(f64, C64)> = None;
    for &(s, v) in positive {
        if let Some(&(_, w)) = positive.iter().find(|&&(t, _)| t == s + d) {
            if best.as_ref().is_none_or(|&(n, _)| v.norm() > n) {
                best = Some((v.norm(), w / v));
            }
        }
    }
    if let Some((_, z)) = best {
        return z;
    }
    // gcd-reducing subset keeps the Bézout chain short
    let mut subset: Vec<(u64, C64)> = Vec::new();
    let mut g = 0u64;
    for &(s, v) in positive {
        if gcd(g, s) < g || g == 0 {
            g = gcd(g, s);
            subset.push((s, v));
        }
        if g == d {
            break;
        }
    }
    let mut g = subset[0].0 as i128;
    let mut coeffs: Vec<i128> = vec![1];
    for &(s, _) in &subset[1..] {
        let (g2, x, y) = ext_gcd(g, s as i128);
        for c in coeffs.iter_mut() {
            *c *= x;
        }
        coeffs.push(y);
        g = g2;
    }
    let mut log_mod = 0.0f64;
    let mut arg = 0.0f64;
    for (&(_, v), &m) in subset.iter().zip(&coeffs) {
        log_mod += m as f64 * v.norm().ln();
        arg += m as f64 * v.arg();
    }
    C64::from_polar(log_mod.exp(), arg)
}

/// Binary exponentiation with the convention z^0 = 1.
fn pow_u(z: C64, mut e: u64) -> C64 {
    let mut base = z;
    let mut acc = C64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// Recovers a semicharacter from sample values (s, σ(s)).
///
/// The generator z is obtained from a Bézout combination of sample
/// exponents: if Σ mᵢsᵢ = d then z = Π σ(sᵢ)^{mᵢ}.  A sample set that
/// vanishes on all positive members yields the zero-flagged point.  The
/// largest deviation |σ(sᵢ) − z^{sᵢ/d}| is checked against `tol`.
pub fn fit_semicharacter(
    semigroup: &NumericalSemigroup,
    samples: &[(u64, C64)],
    tol: f64,
) -> Result<DiscSemicharacter> {
    if samples.is_empty() {
        return Err(Error::InvalidInput("no samples".into()));
    }
    for &(s, _) in samples {
        if !semigroup.member(s) {
            return Err(Error::Domain(format!("sample point {s} is not a member")));
        }
    }
    // The value at 0 must be 1 (semicharacters are nonzero and idempotent there).
    let mut max_residual: f64 = 0.0;
    for &(s, v) in samples {
        if s == 0 {
            max_residual = max_residual.max((v - C64::new(1.0, 0.0)).norm());
        }
    }
    let positive: Vec<(u64, C64)> = samples.iter().copied().filter(|&(s, _)| s > 0).collect();
    if positive.is_empty() {
        return Err(Error::Underdetermined {
            sample_gcd: 0,
            required: semigroup.d(),
        });
    }
    if positive.iter().all(|&(_, v)| v.norm() <= tol) {
        if max_residual > tol {
            return Err(Error::FitFailure { max_residual });
        }
        return Ok(DiscSemicharacter::zero());
    }
    if positive.iter().any(|&(_, v)| v.norm() > 1.0 + tol.max(1e-9)) {
        let max_residual = positive
            .iter()
            .map(|&(_, v)| (v.norm() - 1.0).max(0.0))
            .fold(0.0, f64::max);
        return Err(Error::FitFailure { max_residual });
    }

    // Tiny values still carry full relative precision, so only literal
    // zeros and subnormal-range values are excluded from recovery; the
    // residual check arbitrates consistency afterwards.
    let informative: Vec<(u64, C64)> = positive
        .iter()
        .copied()
        .filter(|&(_, v)| v.norm() > 1e-250)
        .collect();
    let d = semigroup.d();
    let sample_gcd = informative.iter().fold(0u64, |g, &(s, _)| gcd(g, s));
    if sample_gcd != d {
        return Err(Error::Underdetermined {
            sample_gcd,
            required: d,
        });
    }
    let mut z = recover_generator(&informative, d);
    if z.norm() > 1.0 + tol.max(1e-9) {
        return Err(Error::FitFailure {
            max_residual: z.norm() - 1.0,
        });
    }
    if z.norm() > 1.0 {
        z /= z.norm(); // round |z| = 1 + ulp back to the circle
    }
    let candidate = DiscSemicharacter {
        z,
        zero_flag: false,
    };
    for &(s, v) in &positive {
        let predicted = pow_u(z, s / d);
        max_residual = max_residual.max((predicted - v).norm());
    }
    if max_residual > tol {
        return Err(Error::FitFailure { max_residual });
    }
    Ok(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::new(gens, false).unwrap()
    }

    #[test]
    fn gcd_of_generators() {
        assert_eq!(sg(&[3]).d(), 3);
        assert_eq!(sg(&[4, 6]).d(), 2);
        assert_eq!(sg(&[6, 10, 15]).d(), 1);
    }

    #[test]
    fn empty_generators_rejected() {
        assert!(matches!(
            NumericalSemigroup::new(&[], true),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn conductor_values() {
        assert_eq!(sg(&[2, 3]).conductor(), 2);
        assert_eq!(sg(&[3, 5]).conductor(), 8);
        assert_eq!(sg(&[7]).conductor(), 7);
        // with 0 adjoined the arithmetic progression has no gaps at all
        assert_eq!(NumericalSemigroup::new(&[5], true).unwrap().conductor(), 0);
        assert_eq!(NumericalSemigroup::new(&[2, 3], true).unwrap().conductor(), 2);
    }

    #[test]
    fn oversized_generators_hit_the_resource_guard() {
        let r = NumericalSemigroup::new(&[1_000_000_007, 998_244_353], false);
        assert!(matches!(r, Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn conductor_below_coarse_bound() {
        for gens in [&[2u64, 3][..], &[3, 5], &[4, 6], &[6, 10, 15]] {
            let s = sg(gens);
            assert!(s.conductor() <= s.coarse_conductor_bound());
        }
    }

    #[test]
    fn membership_sieve() {
        let s = sg(&[3, 5]);
        assert!(!s.member(7));
        assert!(s.member(8));
        assert!(!s.member(0));
        assert!(NumericalSemigroup::new(&[3, 5], true).unwrap().member(0));
        // gaps of <3,5> are exactly 1,2,4,7
        let gaps: Vec<u64> = (0..=10).filter(|&x| !s.member(x)).collect();
        assert_eq!(gaps, vec![0, 1, 2, 4, 7]);
    }

    #[test]
    fn eval_examples() {
        let s = sg(&[2, 3]);
        let one = DiscSemicharacter::new(C64::new(1.0, 0.0)).unwrap();
        for m in s.members_upto(20) {
            assert_eq!(one.eval(&s, m).unwrap(), C64::new(1.0, 0.0));
        }
        let zero_z = DiscSemicharacter::new(C64::new(0.0, 0.0)).unwrap();
        assert_eq!(zero_z.eval(&s, 5).unwrap(), C64::new(0.0, 0.0));

        // d = 2 case: z = i at s = 6 evaluates to i^3 = -i
        let s24 = sg(&[2, 4]);
        let chi = DiscSemicharacter::new(C64::new(0.0, 1.0)).unwrap();
        let v = chi.eval(&s24, 6).unwrap();
        assert!((v - C64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn eval_rejects_non_members() {
        let s = sg(&[3, 5]);
        let chi = DiscSemicharacter::new(C64::new(0.5, 0.0)).unwrap();
        assert!(matches!(chi.eval(&s, 7), Err(Error::Domain(_))));
    }

    #[test]
    fn classification() {
        let with_zero = NumericalSemigroup::new(&[2, 3], true).unwrap();
        let c = with_zero.classify_dual();
        assert_eq!(c.shape, DualShape::FullDisc);
        assert!(!c.zero_adjoined);

        let without = sg(&[2, 3]);
        let c = without.classify_dual();
        assert_eq!(c.shape, DualShape::PuncturedDisc);
        assert!(c.zero_adjoined);
    }

    #[test]
    fn fit_recovers_z() {
        let s = sg(&[2, 3]);
        let samples = vec![
            (2, C64::new(0.25, 0.0)),
            (3, C64::new(0.125, 0.0)),
        ];
        let chi = fit_semicharacter(&s, &samples, 1e-10).unwrap();
        assert!((chi.z() - C64::new(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn fit_detects_inconsistency() {
        let s = sg(&[2, 3]);
        let samples = vec![(2, C64::new(0.25, 0.0)), (3, C64::new(0.5, 0.0))];
        assert!(matches!(
            fit_semicharacter(&s, &samples, 1e-10),
            Err(Error::FitFailure { .. })
        ));
    }

    #[test]
    fn fit_zero_functional() {
        let s = sg(&[2, 3]);
        let samples = vec![(2, C64::new(0.0, 0.0)), (3, C64::new(0.0, 0.0))];
        let chi = fit_semicharacter(&s, &samples, 1e-10).unwrap();
        assert!(chi.is_zero_functional());
        assert_eq!(chi.eval(&s, 5).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn fit_underdetermined() {
        let s = sg(&[2, 3]); // d = 1
        let samples = vec![(2, C64::new(0.25, 0.0)), (4, C64::new(0.0625, 0.0))];
        assert!(matches!(
            fit_semicharacter(&s, &samples, 1e-10),
            Err(Error::Underdetermined {
                sample_gcd: 2,
                required: 1
            })
        ));
    }

    #[test]
    fn involution_is_pointwise_conjugation() {
        let s = sg(&[3, 5]);
        let chi = DiscSemicharacter::new(C64::new(0.3, 0.4)).unwrap();
        let conj = chi.conj();
        for m in s.members_upto(30) {
            let a = chi.eval(&s, m).unwrap().conj();
            let b = conj.eval(&s, m).unwrap();
            assert!((a - b).norm() < 1e-14);
        }
    }
}
