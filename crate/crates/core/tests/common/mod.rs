//! Shared independent oracles for the integration tests: adaptive
//! Gauss-Kronrod quadrature for half-line transforms, a brute-force
//! membership sieve, and small helpers.  Everything here stays deliberately
//! separate from the library's closed-form code paths.

#![allow(dead_code)]
// the quadrature tables carry their full published precision
#![allow(clippy::excessive_precision)]

use eberlein::C64;

// 15-point Kronrod nodes with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// One Gauss-Kronrod 7-15 panel: (kronrod value, |kronrod - gauss|).
fn gk15<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> (C64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kronrod = C64::new(0.0, 0.0);
    let mut gauss = C64::new(0.0, 0.0);
    for (j, &x) in XGK.iter().enumerate() {
        let fl = f(c - h * x);
        let fr = f(c + h * x);
        let pair = if x == 0.0 { fl } else { fl + fr };
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    kronrod *= h;
    gauss *= h;
    (kronrod, (kronrod - gauss).norm())
}

/// Adaptive bisection quadrature over a finite interval.
pub fn integrate<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64, rel_tol: f64) -> C64 {
    fn recurse<F: Fn(f64) -> C64>(
        f: &F,
        a: f64,
        b: f64,
        tol: f64,
        depth: u32,
    ) -> C64 {
        let (value, err) = gk15(f, a, b);
        if err <= tol * (1.0 + value.norm()) || depth >= 24 {
            return value;
        }
        let c = 0.5 * (a + b);
        recurse(f, a, c, tol, depth + 1) + recurse(f, c, b, tol, depth + 1)
    }
    recurse(f, a, b, rel_tol.max(1e-14), 0)
}

/// Quadrature oracle for ∫₀^∞ g(t)·e^{izt} dt where g decays at least as
/// fast as e^{-min_decay·t}.
pub fn laplace_quadrature<G: Fn(f64) -> C64>(g: &G, z: C64, min_decay: f64) -> C64 {
    let rate = min_decay + z.im;
    let horizon = (45.0 / rate).min(2000.0);
    let f = |t: f64| g(t) * (C64::i() * z * t).exp();
    integrate(&f, 0.0, horizon, 1e-12)
}

/// Brute-force membership sieve, independent of the library's.
pub fn sieve_members(generators: &[u64], include_zero: bool, limit: u64) -> Vec<bool> {
    let mut reach = vec![false; limit as usize + 1];
    reach[0] = true;
    for s in 1..reach.len() {
        for &g in generators {
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

/// Oracle conductor: least multiple of d whose entire multiple-tail within
/// the horizon is reachable, where the horizon extends past the coarse
/// bound so the tail test is conclusive.
pub fn oracle_conductor(generators: &[u64], include_zero: bool) -> u64 {
    let d = generators.iter().copied().fold(0, gcd);
    let gmax = *generators.iter().max().unwrap();
    let horizon = (gmax * gmax + 4 * gmax).max(64);
    let reach = sieve_members(generators, include_zero, horizon);
    let mut last_gap = None;
    let mut m = 0;
    while m <= horizon - gmax {
        if m % d == 0 && !reach[m as usize] {
            last_gap = Some(m);
        }
        m += 1;
    }
    match last_gap {
        None => 0,
        Some(f) => f + d,
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
