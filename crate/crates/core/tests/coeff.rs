use lagweyl::coeff::{
    classify, coeff_tensor, dual_seminorm, fit_decay, lcoef, s_alpha_norm, DecayConfig, Verdict,
};
use lagweyl::hankel::hc_coeff;
use lagweyl::{Basis, CoeffSeq, MultiIndex};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1e3f64..1e3, -1e3f64..1e3).prop_map(|(re, im)| Complex64::new(re, im))
}

fn basis() -> impl Strategy<Value = (Basis, usize)> {
    prop_oneof![
        Just((Basis::Hermite, 1)),
        Just((Basis::Hermite, 2)),
        prop::collection::vec(0.0f64..4.0, 1..=2).prop_map(|g| {
            let d = g.len();
            (Basis::laguerre(g), d)
        }),
    ]
}

fn seq() -> impl Strategy<Value = CoeffSeq> {
    (basis(), prop::collection::vec(0usize..6, 2)).prop_flat_map(|((b, d), t)| {
        let trunc = t[..d].to_vec();
        let len: usize = trunc.iter().map(|n| n + 1).product();
        prop::collection::vec(complex(), len).prop_map(move |v| CoeffSeq::new(b.clone(), trunc.clone(), v).unwrap())
    })
}

fn geometric(d: usize, trunc: usize, c0: f64, a0: f64, alpha0: f64) -> CoeffSeq {
    CoeffSeq::from_fn(Basis::laguerre(vec![0.0; d]), vec![trunc; d], |n| {
        Complex64::new(c0 * a0.powf(-(n.order() as f64).powf(1.0 / alpha0)), 0.0)
    })
    .unwrap()
}

#[test]
fn fit_recovers_rate_and_constant() {
    for a0 in [1.5, 2.0, 3.0, std::f64::consts::E] {
        for alpha0 in [1.0, 2.0] {
            for d in 1..=2 {
                let trunc = if d == 1 { 40 } else { 20 };
                let fit = fit_decay(&geometric(d, trunc, 0.8, a0, alpha0), alpha0).unwrap();
                assert!((fit.a - a0).abs() < 1e-6 * a0, "a0={a0} α0={alpha0} d={d}: {}", fit.a);
                assert!((fit.c - 0.8).abs() < 1e-6 * 0.8, "a0={a0} α0={alpha0} d={d}: c={}", fit.c);
            }
        }
    }
}

#[test]
fn finite_support_is_member_at_every_alpha() {
    let seq = CoeffSeq::from_real_1d(Basis::laguerre(vec![0.0]), &[1.0, -2.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
    for alpha in DecayConfig::default().alpha_grid {
        let cfg = DecayConfig { alpha_grid: vec![alpha], ..DecayConfig::default() };
        let r = classify(&seq, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Member, "α={alpha}");
        assert_eq!(r.alpha, alpha);
    }
}

proptest! {
    #[test]
    fn norms_are_absolutely_homogeneous(s in seq(), lambda in complex(), alpha in 1.0f64..3.0, a in 1.1f64..4.0) {
        prop_assume!(lambda.norm() > 1e-3);
        let scaled = s.scale(lambda).unwrap();
        let k = lambda.norm();
        let (d0, d1) = (dual_seminorm(&s, alpha, a).unwrap(), dual_seminorm(&scaled, alpha, a).unwrap());
        prop_assert!((d1 - k * d0).abs() <= 1e-12 * k * d0);
        let (n0, n1) = (s_alpha_norm(&s, alpha, a).unwrap(), s_alpha_norm(&scaled, alpha, a).unwrap());
        prop_assert!((n1 - k * n0).abs() <= 1e-12 * k * n0);
    }

    #[test]
    fn tensor_projection_recovers_factor(x in seq(), y in seq()) {
        prop_assume!(x.basis().name() == y.basis().name());
        let t = coeff_tensor(&x, &y).unwrap();
        let zero = MultiIndex::zeros(y.dim());
        for (n, v) in x.graded() {
            prop_assert_eq!(t.get(&n.concat(&zero)), v * y.get(&zero));
        }
    }

    #[test]
    fn lcoef_round_trip_is_bit_exact(s in seq()) {
        let back = lcoef::from_str(&lcoef::to_string(&s)).unwrap();
        prop_assert_eq!(back.basis(), s.basis());
        prop_assert_eq!(back.trunc(), s.trunc());
        for (a, b) in back.values().iter().zip(s.values()) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn lcoef_read_ignores_line_order(s in seq(), rot in 0usize..50) {
        let text = lcoef::to_string(&s);
        let mut lines: Vec<&str> = text.lines().collect();
        let body = &mut lines[1..];
        if !body.is_empty() {
            let r = rot % body.len();
            body.rotate_left(r);
        }
        let back = lcoef::from_str(&lines.join("\n")).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn hankel_sign_flip_preserves_classification(a0 in 1.5f64..4.0, axis in 0usize..2) {
        let s = geometric(2, 16, 1.0, a0, 1.0);
        let flipped = hc_coeff(&s, &[axis]).unwrap();
        let (r0, r1) = (classify(&s, &DecayConfig::default()).unwrap(), classify(&flipped, &DecayConfig::default()).unwrap());
        prop_assert_eq!((r0.alpha, r0.a, r0.c, r0.verdict), (r1.alpha, r1.a, r1.c, r1.verdict));
    }
}
