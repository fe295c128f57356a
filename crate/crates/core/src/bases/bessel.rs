//! Bessel function of the first kind `J_ν` for `ν >= 0`, `x >= 0`.
//!
//! Ascending power series up to `x = max(12, 2ν)`, Hankel's large-argument
//! expansion beyond. Validated for `ν <= 5`.

use statrs::function::gamma::ln_gamma;
use std::f64::consts::{FRAC_PI_4, PI};

fn crossover(nu: f64) -> f64 {
    (2.0 * nu).max(12.0)
}

/// `Σ_k (-1)^k (x/2)^{2k} / (k! Γ(k+ν+1))`, i.e. `(x/2)^{-ν} J_ν(x)`.
fn reduced_series(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = (-ln_gamma(nu + 1.0)).exp();
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= -q / (k * (k + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && k * k > q {
            break;
        }
        if k > 500.0 {
            break;
        }
    }
    sum
}

fn hankel_asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = term * (mu - odd * odd) / (kf * 8.0 * x);
        // Stop at the smallest term: the series is asymptotic, not convergent.
        if next.abs() >= last.min(term.abs()) && k > 2 {
            break;
        }
        last = term.abs();
        term = next;
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (0.5 * nu * PI + FRAC_PI_4);
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// `J_ν(x)`.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    debug_assert!(nu >= 0.0 && x >= 0.0);
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x <= crossover(nu) {
        (nu * (0.5 * x).ln()).exp() * reduced_series(nu, x)
    } else {
        hankel_asymptotic(nu, x)
    }
}

/// `x^{-ν} J_ν(x)`, continuously extended to `x = 0` by `2^{-ν}/Γ(ν+1)`.
pub fn bessel_j_reduced(nu: f64, x: f64) -> f64 {
    debug_assert!(nu >= 0.0 && x >= 0.0);
    if x <= crossover(nu) {
        (-nu * std::f64::consts::LN_2).exp() * reduced_series(nu, x)
    } else {
        hankel_asymptotic(nu, x) * (-nu * x.ln()).exp()
    }
}
