use lagweyl::bases::quadrature::{gauss_hermite_rule, gauss_laguerre_rule, gauss_legendre_rule, laguerre_moment};
use lagweyl::bases::{
    hermite_fn_row, laguerre_derivative_bound, laguerre_exp_derivative, laguerre_fn_1d, laguerre_fn_row, laguerre_norm,
    laguerre_poly,
};
use proptest::prelude::*;
use statrs::function::gamma::gamma;

#[test]
fn laguerre_orthonormal_with_order_200_rule() {
    for g in [0.0, 0.5, 1.0, 2.0] {
        let rule = gauss_laguerre_rule(200, g).unwrap().envelope(1.0);
        let rows: Vec<Vec<f64>> = rule.nodes.iter().map(|&t| laguerre_fn_row(40, g, t)).collect();
        for m in 0..=40 {
            for n in 0..=m {
                let ip: f64 = rows.iter().zip(&rule.weights).map(|(r, w)| w * r[m] * r[n]).sum();
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((ip - want).abs() < 1e-10, "γ={g} m={m} n={n} ip={ip}");
            }
        }
    }
}

#[test]
fn hermite_orthonormal_with_order_200_rule() {
    let rule = gauss_hermite_rule(200).unwrap().envelope(1.0);
    let rows: Vec<Vec<f64>> = rule.nodes.iter().map(|&x| hermite_fn_row(40, x)).collect();
    for m in 0..=40 {
        for n in 0..=m {
            let ip: f64 = rows.iter().zip(&rule.weights).map(|(r, w)| w * r[m] * r[n]).sum();
            let want = if m == n { 1.0 } else { 0.0 };
            assert!((ip - want).abs() < 1e-10, "m={m} n={n} ip={ip}");
        }
    }
}

/// Explicit power sum; only trustworthy at small `t` where terms barely cancel.
fn laguerre_poly_sum(n: usize, g: f64, t: f64) -> f64 {
    (0..=n)
        .map(|k| {
            // binom(n+γ, n-k) t^k / k!
            let binom: f64 = (1..=n - k).map(|i| (k as f64 + g + i as f64) / i as f64).product();
            let fact: f64 = (1..=k).map(|i| i as f64).product();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * binom * t.powi(k as i32) / fact
        })
        .sum()
}

#[test]
fn poly_matches_power_sum_at_small_argument() {
    for n in 0..=12 {
        for g in [0.0, 0.5, 3.0] {
            for t in [0.05, 0.3, 1.0] {
                let (a, b) = (laguerre_poly(n, g, t), laguerre_poly_sum(n, g, t));
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "n={n} γ={g} t={t}: {a} vs {b}");
            }
        }
    }
}

proptest! {
    #[test]
    fn normalized_recurrence_matches_polynomial(n in 0usize..=100, g in 0.0f64..5.0, t in 0.01f64..60.0) {
        let poly = laguerre_poly(n, g, t);
        prop_assume!(poly.abs() > 1e-6);
        let lifted = laguerre_fn_1d(n, g, t) * (0.5 * t).exp() / laguerre_norm(n, g);
        prop_assert!((lifted - poly).abs() <= 1e-10 * poly.abs(), "{lifted} vs {poly}");
    }

    #[test]
    fn laguerre_rule_integrates_monomials(order in 1usize..=64, g in 0.0f64..3.0, frac in 0.0f64..1.0) {
        let k = ((2 * order - 1) as f64 * frac).round() as i32;
        let rule = gauss_laguerre_rule(order, g).unwrap();
        let got = rule.integrate(|t| t.powi(k));
        let want = laguerre_moment(k as usize, g);
        prop_assert!((got - want).abs() <= 1e-12 * want, "N={order} k={k}: {got} vs {want}");
    }

    #[test]
    fn hermite_rule_integrates_monomials(order in 1usize..=64, frac in 0.0f64..1.0) {
        let k = ((2 * order - 1) as f64 * frac).round() as i32;
        let rule = gauss_hermite_rule(order).unwrap();
        let got = rule.integrate(|x| x.powi(k));
        // Odd moments vanish by symmetry; measure against ∫|x|^k e^{-x²}.
        let scale = gamma((k as f64 + 1.0) / 2.0);
        let want = if k % 2 == 1 { 0.0 } else { scale };
        prop_assert!((got - want).abs() <= 1e-12 * scale, "N={order} k={k}: {got} vs {want}");
    }

    #[test]
    fn legendre_rule_integrates_monomials(order in 1usize..=64, frac in 0.0f64..1.0) {
        let k = ((2 * order - 1) as f64 * frac).round() as i32;
        let rule = gauss_legendre_rule(order).unwrap();
        let got = rule.integrate(|x| x.powi(k));
        let scale = 2.0 / (k as f64 + 1.0);
        let want = if k % 2 == 1 { 0.0 } else { scale };
        prop_assert!((got - want).abs() <= 1e-12 * scale, "N={order} k={k}: {got} vs {want}");
    }

    #[test]
    fn derivative_bound_holds_on_grid(n in 0usize..=30, g in 0.0f64..3.0, p in 0usize..=3, k in 0usize..=3) {
        let bound = laguerre_derivative_bound(n, g, p, k);
        for i in 1..=400 {
            let t = 0.25 * i as f64;
            let v = t.powi(k as i32) * laguerre_exp_derivative(n, g, p, t) * laguerre_norm(n, g);
            prop_assert!(v.abs() <= bound, "t={t}: {v} > {bound}");
        }
    }
}
