//! Wigner transforms of Hermite functions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::bases::laguerre_fn_1d;
use crate::bases::quadrature::hermite_rule;
use crate::coeff::{Basis, CoeffSeq};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::tensor::grid_points;
use crate::transform::{self_converge, synthesize, value_change, GATE_RTOL};

/// One axis of `W(h_m, h_k)(x, ξ)`. With `t = 2(x²+ξ²)` and `η = x + iξ`,
/// for `m >= k` this is `2(-1)^k (2π)^{-1/2} (η̄/|η|)^{m-k} t^{(m-k)/2} 𝓛_k^{m-k}(t)`.
pub(crate) fn wigner_axis(m: usize, k: usize, x: f64, xi: f64) -> Complex64 {
    if m < k {
        return wigner_axis(k, m, x, xi).conj();
    }
    let g = m - k;
    let t = 2.0 * (x * x + xi * xi);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let radial = sign * 2.0 / (2.0 * PI).sqrt() * laguerre_fn_1d(k, g as f64, t);
    if g == 0 {
        return Complex64::new(radial, 0.0);
    }
    // (√2 η̄)^g without forming |η|^g / |η|^g.
    let eta_bar = Complex64::new(x, -xi) * std::f64::consts::SQRT_2;
    radial * eta_bar.powu(g as u32)
}

/// `W(h_m, h_k)(x, ξ)` in closed form, as a tensor product over axes.
pub fn wigner_hermite(m: &MultiIndex, k: &MultiIndex, x: &[f64], xi: &[f64]) -> Complex64 {
    (0..m.dim()).map(|l| wigner_axis(m[l], k[l], x[l], xi[l])).product()
}

fn check_hermite(seq: &CoeffSeq) -> Result<()> {
    if *seq.basis() != Basis::Hermite {
        return Err(Error::BasisMismatch("Wigner transforms need Hermite expansions".into()));
    }
    Ok(())
}

/// `W(f, g)(x, ξ) = (2π)^{-d/2} ∫ e^{-iξ·p} f(x + p/2) conj(g(x - p/2)) dp`
/// by Gauss–Hermite quadrature in `p`, with the `e^{-p²/4}` envelope of
/// the Hermite product folded into the rule.
pub fn wigner_direct(f: &CoeffSeq, g: &CoeffSeq, x: &[f64], xi: &[f64], rule_order: usize) -> Result<Complex64> {
    check_hermite(f)?;
    check_hermite(g)?;
    let d = f.dim();
    for len in [g.dim(), x.len(), xi.len()] {
        if len != d {
            return Err(Error::DimensionMismatch { expected: d, got: len });
        }
    }
    let at_order = |order: usize| -> Result<Complex64> {
        let rule = hermite_rule(order)?.envelope(0.25);
        let axes: Vec<&[f64]> = vec![rule.nodes.as_slice(); d];
        let mut sum = Complex64::new(0.0, 0.0);
        let mut plus = vec![0.0; d];
        let mut minus = vec![0.0; d];
        for (flat, p) in grid_points(&axes).iter().enumerate() {
            let mut rem = flat;
            let mut w = 1.0;
            for _ in 0..d {
                w *= rule.weights[rem % rule.nodes.len()];
                rem /= rule.nodes.len();
            }
            let mut phase = 0.0;
            for l in 0..d {
                plus[l] = x[l] + 0.5 * p[l];
                minus[l] = x[l] - 0.5 * p[l];
                phase -= xi[l] * p[l];
            }
            let fv = synthesize(f, &plus)?;
            let gv = synthesize(g, &minus)?;
            sum += w * Complex64::from_polar(1.0, phase) * fv * gv.conj();
        }
        Ok(sum * (2.0 * PI).powf(-0.5 * d as f64))
    };
    self_converge(rule_order, at_order, |a, b| value_change(*a, *b, GATE_RTOL, 1e-13))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::quadrature::hermite_rule;
    use approx::assert_relative_eq;

    fn unit(n: usize, trunc: usize) -> CoeffSeq {
        let mut v = vec![0.0; trunc + 1];
        v[n] = 1.0;
        CoeffSeq::from_real_1d(Basis::Hermite, &v).unwrap()
    }

    fn mi(n: usize) -> MultiIndex {
        MultiIndex::new(vec![n])
    }

    #[test]
    fn closed_form_fixtures() {
        let w00 = wigner_hermite(&mi(0), &mi(0), &[0.0], &[0.0]);
        assert_relative_eq!(w00.re, 2.0 / (2.0 * PI).sqrt(), max_relative = 1e-15);
        let w10 = wigner_hermite(&mi(1), &mi(0), &[1.0], &[0.0]);
        assert_relative_eq!(w10.re, 2.0 * 2f64.sqrt() / (2.0 * PI).sqrt() * (-1f64).exp(), max_relative = 1e-14);
        assert_relative_eq!(w10.re, 0.4151, epsilon = 1e-4);
    }

    #[test]
    fn hermitian_symmetry() {
        for m in 0..5 {
            for k in 0..5 {
                let a = wigner_hermite(&mi(m), &mi(k), &[0.3], &[-1.2]);
                let b = wigner_hermite(&mi(k), &mi(m), &[0.3], &[-1.2]);
                assert!((a - b.conj()).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn quadrature_matches_closed_form() {
        for (m, k) in [(0, 0), (1, 0), (0, 1), (3, 1), (2, 4)] {
            for &(x, xi) in &[(0.0, 0.0), (1.0, 0.0), (-0.5, 1.5), (2.0, -1.0)] {
                let direct = wigner_direct(&unit(m, 4), &unit(k, 4), &[x], &[xi], 32).unwrap();
                let closed = wigner_hermite(&mi(m), &mi(k), &[x], &[xi]);
                assert!((direct - closed).norm() < 1e-10, "({m},{k}) at ({x},{xi}): {direct} vs {closed}");
            }
        }
    }

    #[test]
    fn moyal_norm_identity() {
        // ‖W(h_0, h_0 + h_1)‖² over phase space equals ‖h_0‖²‖h_0 + h_1‖² = 2.
        let rule = hermite_rule(32).unwrap().envelope(2.0);
        let mut total = 0.0;
        for (i, &x) in rule.nodes.iter().enumerate() {
            for (j, &xi) in rule.nodes.iter().enumerate() {
                let w = wigner_hermite(&mi(0), &mi(0), &[x], &[xi]) + wigner_hermite(&mi(0), &mi(1), &[x], &[xi]);
                total += rule.weights[i] * rule.weights[j] * w.norm_sqr();
            }
        }
        assert_relative_eq!(total.sqrt(), 2f64.sqrt(), max_relative = 1e-12);
    }
}
