//! Integer-valued evaluation of the real bounds used by kernels and
//! extractors.

use num_rational::Rational64;

/// Ceiling of a real bound computed in floating point, shaved by half an ulp
/// so that values which are mathematically integers do not round up.
pub fn ceil_with_slack(x: f64) -> u64 {
    let shaved = x - x.abs() * f64::EPSILON;
    shaved.ceil().max(0.0) as u64
}

pub fn ratio_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    base.checked_pow(exp)
}

/// `⌊n^δ⌋` for a non-negative rational `δ = p/q`, computed exactly as the
/// largest `s` with `s^q ≤ n^p`.
pub fn floor_pow(n: u64, delta: Rational64) -> u64 {
    let (p, q) = (*delta.numer(), *delta.denom());
    assert!(p >= 0 && q > 0, "exponent must be non-negative");
    let (p, q) = (p as u32, q as u32);
    if p == 0 {
        return 1;
    }
    let Some(target) = checked_pow(n as u128, p) else {
        return (n as f64).powf(p as f64 / q as f64).floor() as u64;
    };
    let fits = |s: u64| checked_pow(s as u128, q).is_some_and(|v| v <= target);
    let mut s = (n as f64).powf(p as f64 / q as f64).floor() as u64;
    while s > 0 && !fits(s) {
        s -= 1;
    }
    while fits(s + 1) {
        s += 1;
    }
    s
}

/// Integer cube root, rounded down.
pub fn icbrt(n: u64) -> u64 {
    floor_pow(n, Rational64::new(1, 3))
}
