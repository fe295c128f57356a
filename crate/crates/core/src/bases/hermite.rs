//! Hermite functions `h_j(t) = (2^j j! √π)^{-1/2} e^{-t²/2} H_j(t)`.

use super::recurrence::{scaled_row, Scaled};

const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Orthonormal Hermite polynomial parts `h_k(t) e^{t²/2}` for `k = 0..=nmax`;
/// `with_envelope` folds `e^{-t²/2}` back in.
pub(crate) fn hermite_row_scaled(nmax: usize, t: f64, with_envelope: bool) -> Vec<Scaled> {
    let mut log0 = -0.25 * LN_PI;
    if with_envelope {
        log0 -= 0.5 * t * t;
    }
    scaled_row(nmax, log0, std::f64::consts::SQRT_2 * t, |j, cur, prev| {
        let jf = j as f64;
        (2.0 / (jf + 1.0)).sqrt() * t * cur - (jf / (jf + 1.0)).sqrt() * prev
    })
}

/// `h_k(t)` for `k = 0..=nmax`.
pub fn hermite_fn_row(nmax: usize, t: f64) -> Vec<f64> {
    hermite_row_scaled(nmax, t, true)
        .iter()
        .map(Scaled::value)
        .collect()
}

/// `h_j(t)`, evaluated on the function values directly.
pub fn hermite_fn(j: usize, t: f64) -> f64 {
    hermite_row_scaled(j, t, true)[j].value()
}

/// Tensor Hermite function `∏_l h_{n_l}(x_l)`.
pub fn hermite_fn_nd(n: &[usize], x: &[f64]) -> f64 {
    n.iter().zip(x).map(|(&n, &x)| hermite_fn(n, x)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ground_state_at_origin() {
        assert_relative_eq!(hermite_fn(0, 0.0), 0.751_125_544_464_942_5, max_relative = 1e-15);
        assert_eq!(hermite_fn(1, 0.0), 0.0);
    }

    #[test]
    fn matches_physicists_polynomials_at_low_order() {
        // H_2 = 4t² - 2, H_3 = 8t³ - 12t
        let norm = |j: i32, f: f64| (2f64.powi(j) * f * std::f64::consts::PI.sqrt()).sqrt();
        for &t in &[-1.3f64, 0.2, 2.5] {
            let env = (-t * t / 2.0).exp();
            assert_relative_eq!(hermite_fn(2, t), (4.0 * t * t - 2.0) * env / norm(2, 2.0), max_relative = 1e-13);
            assert_relative_eq!(hermite_fn(3, t), (8.0 * t * t * t - 12.0 * t) * env / norm(3, 6.0), max_relative = 1e-13);
        }
    }

    #[test]
    fn parity() {
        for j in 0..12 {
            let s = if j % 2 == 0 { 1.0 } else { -1.0 };
            assert_relative_eq!(hermite_fn(j, -1.7), s * hermite_fn(j, 1.7), max_relative = 1e-14);
        }
    }

    #[test]
    fn finite_on_validated_range() {
        for &t in &[-30.0, -12.5, 0.0, 7.0, 30.0] {
            let row = hermite_fn_row(512, t);
            assert!(row.iter().all(|v| v.is_finite()));
        }
        // Near the turning point √(2j+1) the function is O(1), not flushed.
        assert!(hermite_fn(450, 30.0).abs() > 1e-3);
    }
}
