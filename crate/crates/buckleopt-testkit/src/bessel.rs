//! Bessel function J1 by its ascending power series, plus root bracketing.
//!
//! The series J1(x) = sum_m (-1)^m / (m! (m+1)!) (x/2)^(2m+1) converges
//! absolutely for every x; for |x| <= 8 (all we need) the terms decay fast
//! enough that f64 keeps ~13 significant digits.

/// J1 evaluated by the ascending series.
pub fn bessel_j1(x: f64) -> f64 {
    let half = x / 2.0;
    let half_sq = half * half;
    let mut term = half;
    let mut sum = half;
    for m in 1..200u32 {
        term *= -half_sq / (m as f64 * (m as f64 + 1.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

/// First positive zero of J1, bisected to ~1e-14.
pub fn j1_first_zero() -> f64 {
    let mut lo = 3.0;
    let mut hi = 4.5;
    assert!(bessel_j1(lo) > 0.0 && bessel_j1(hi) < 0.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if bessel_j1(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Buckling eigenvalue of the unit disk: square of the first zero of J1.
pub fn disk_buckling_lambda1() -> f64 {
    let j11 = j1_first_zero();
    j11 * j11
}

/// Scale-invariant objective P^2 * Lambda_1 of any disk in the plane.
pub fn disk_scale_invariant_objective() -> f64 {
    let p = 2.0 * std::f64::consts::PI;
    p * p * disk_buckling_lambda1()
}
