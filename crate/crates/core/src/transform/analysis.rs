use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use super::{check_rule_order, self_converge, self_converge_traced, seq_change, Convergence, Domain, FunctionHandle, GATE_RTOL};
use crate::bases::quadrature::{hermite_rule, laguerre_rule, EnvelopeRule};
use crate::bases::{hermite_fn_row, laguerre_fn_row};
use crate::coeff::{Basis, CoeffSeq, DecayReport};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::tensor::{grid_points, multi_mode_product, Matrix};

fn sample(f: &FunctionHandle, rules: &[EnvelopeRule]) -> Vec<Complex64> {
    let axes: Vec<&[f64]> = rules.iter().map(|r| r.nodes.as_slice()).collect();
    grid_points(&axes).iter().map(|p| f.eval(p)).collect()
}

fn project(samples: &[Complex64], rules: &[EnvelopeRule], mats: Vec<Matrix>, basis: Basis, trunc: &[usize]) -> Result<CoeffSeq> {
    let shape: Vec<usize> = rules.iter().map(EnvelopeRule::len).collect();
    let (values, _) = multi_mode_product(samples, &shape, &mats);
    CoeffSeq::new(basis, trunc.to_vec(), values)
}

fn analyze_at(f: &FunctionHandle, gamma: &[f64], trunc: &[usize], order: usize) -> Result<CoeffSeq> {
    let mut rules = Vec::with_capacity(gamma.len());
    for (l, &g) in gamma.iter().enumerate() {
        rules.push(laguerre_rule(order, g)?.envelope(f.decay()[l] + 0.5));
    }
    let mats: Vec<Matrix> = rules
        .iter()
        .zip(gamma)
        .zip(trunc)
        .map(|((r, &g), &nmax)| {
            let rows: Vec<Vec<f64>> = r.nodes.iter().map(|&x| laguerre_fn_row(nmax, g, x)).collect();
            Matrix::from_real(nmax + 1, r.len(), |n, i| rows[i][n] * r.weights[i])
        })
        .collect();
    project(&sample(f, &rules), &rules, mats, Basis::laguerre(gamma.to_vec()), trunc)
}

/// Laguerre coefficients `a_n = ∫ f 𝓛_n^γ t^γ dt` by tensor Gauss–Laguerre
/// quadrature stretched to `f`'s envelope, with a rule-doubling check.
pub fn analyze(f: &FunctionHandle, gamma: &[f64], trunc: &[usize], rule_order: usize) -> Result<CoeffSeq> {
    analyze_traced(f, gamma, trunc, rule_order).map(|(seq, _)| seq)
}

/// [`analyze`], also returning the rule-doubling trail.
pub fn analyze_traced(
    f: &FunctionHandle,
    gamma: &[f64],
    trunc: &[usize],
    rule_order: usize,
) -> Result<(CoeffSeq, Convergence)> {
    f.expect(Domain::Orthant, gamma.len())?;
    if trunc.len() != gamma.len() {
        return Err(Error::DimensionMismatch {
            expected: gamma.len(),
            got: trunc.len(),
        });
    }
    check_rule_order(rule_order, trunc)?;
    self_converge_traced(
        rule_order,
        |order| analyze_at(f, gamma, trunc, order),
        |a, b| seq_change(a.values(), b.values(), GATE_RTOL),
    )
}

fn hermite_analyze_at(f: &FunctionHandle, trunc: &[usize], order: usize) -> Result<CoeffSeq> {
    let base = hermite_rule(order)?;
    let rules: Vec<EnvelopeRule> = f.decay().iter().map(|&beta| base.envelope(beta + 0.5)).collect();
    let mats: Vec<Matrix> = rules
        .iter()
        .zip(trunc)
        .map(|(r, &nmax)| {
            let rows: Vec<Vec<f64>> = r.nodes.iter().map(|&x| hermite_fn_row(nmax, x)).collect();
            Matrix::from_real(nmax + 1, r.len(), |n, i| rows[i][n] * r.weights[i])
        })
        .collect();
    project(&sample(f, &rules), &rules, mats, Basis::Hermite, trunc)
}

/// Hermite coefficients `f_n = ⟨f, h_n⟩` on `R^d`.
pub fn hermite_analyze(f: &FunctionHandle, trunc: &[usize], rule_order: usize) -> Result<CoeffSeq> {
    f.expect(Domain::Real, trunc.len())?;
    check_rule_order(rule_order, trunc)?;
    self_converge(
        rule_order,
        |order| hermite_analyze_at(f, trunc, order),
        |a, b| seq_change(a.values(), b.values(), GATE_RTOL),
    )
}

fn basis_rows(seq: &CoeffSeq, t: &[f64]) -> Result<Vec<Vec<f64>>> {
    if t.len() != seq.dim() {
        return Err(Error::DimensionMismatch {
            expected: seq.dim(),
            got: t.len(),
        });
    }
    Ok(match seq.basis() {
        Basis::Laguerre { gamma } => t
            .iter()
            .zip(gamma)
            .zip(seq.trunc())
            .map(|((&x, &g), &n)| laguerre_fn_row(n, g, x))
            .collect(),
        Basis::Hermite => t
            .iter()
            .zip(seq.trunc())
            .map(|(&x, &n)| hermite_fn_row(n, x))
            .collect(),
    })
}

/// `Σ a_n φ_n(t)` in graded-lex order, `φ_n` the sequence's basis.
pub fn synthesize(seq: &CoeffSeq, t: &[f64]) -> Result<Complex64> {
    let rows = basis_rows(seq, t)?;
    let b = seq.index_box();
    Ok(b.graded_lex()
        .into_iter()
        .map(|i| {
            let n = b.unflat(i);
            let phi: f64 = n.entries().iter().zip(&rows).map(|(&k, r)| r[k]).product();
            seq.values()[i] * phi
        })
        .sum())
}

/// Hermite expansion evaluated at `x`.
pub fn hermite_synthesize(seq: &CoeffSeq, x: &[f64]) -> Result<Complex64> {
    if seq.basis() != &Basis::Hermite {
        return Err(Error::BasisMismatch("expected Hermite coefficients".into()));
    }
    synthesize(seq, x)
}

/// `ln sup_t |φ_n(t)|` bound for one axis.
fn ln_axis_bound(basis: &Basis, axis: usize, n: usize) -> f64 {
    match basis {
        // |L_n^γ(t) e^{-t/2}| <= binom(n+γ, n), times the normalization.
        Basis::Laguerre { gamma } => {
            let g = gamma[axis];
            let nf = n as f64;
            0.5 * (ln_gamma(nf + g + 1.0) - ln_gamma(nf + 1.0)) - ln_gamma(g + 1.0)
        }
        // |h_n| <= π^{-1/4}.
        Basis::Hermite => -0.25 * std::f64::consts::PI.ln(),
    }
}

const MAX_TAIL_SHELLS: usize = 10_000_000;

/// Bound on `Σ_{n ∉ box} |a_n| sup|φ_n|` under the fitted decay
/// `|a_n| <= c a^{-|n|^{1/α}}`, summed over shells `|n| = s` beyond the box.
/// Returns `∞` when the shells do not become negligible in time.
pub fn tail_bound(seq: &CoeffSeq, report: &DecayReport) -> f64 {
    if !(report.a > 1.0) {
        return f64::INFINITY;
    }
    let d = seq.dim();
    let start = seq.trunc().iter().copied().min().unwrap_or(0) + 1;
    let ln_a = report.a.ln();
    let ln_c = report.c.ln();
    let mut sum = 0.0;
    for s in start..start + MAX_TAIL_SHELLS {
        let sf = s as f64;
        let ln_count = (d as f64 - 1.0) * (sf + 1.0).ln();
        let ln_basis: f64 = (0..d).map(|l| ln_axis_bound(seq.basis(), l, s)).sum();
        let term = (ln_count + ln_c - sf.powf(1.0 / report.alpha) * ln_a + ln_basis).exp();
        sum += term;
        if term <= 1e-17 * sum || (sum == 0.0 && term == 0.0 && s > start + 64) {
            return sum;
        }
    }
    f64::INFINITY
}

/// [`synthesize`] plus the [`tail_bound`] implied by `report`.
pub fn synthesize_with_tail(seq: &CoeffSeq, t: &[f64], report: &DecayReport) -> Result<(Complex64, f64)> {
    Ok((synthesize(seq, t)?, tail_bound(seq, report)))
}

/// Exact Laguerre coefficients of `e^{-b(t_1+...+t_d)}`:
/// `∫ e^{-bt} 𝓛_n^γ t^γ dt = (Γ(n+γ+1)/n!)^{1/2} (b-1/2)^n / (b+1/2)^{n+γ+1}`.
pub fn exp_coefficients(b: f64, gamma: &[f64], trunc: &[usize]) -> Result<CoeffSeq> {
    if !(b > 0.0) {
        return Err(Error::InvalidArgument(format!("rate b = {b} must be positive")));
    }
    let one = |n: usize, g: f64| {
        let nf = n as f64;
        let s = b + 0.5;
        let ln_mag = 0.5 * (ln_gamma(nf + g + 1.0) - ln_gamma(nf + 1.0)) - (nf + g + 1.0) * s.ln();
        let r = b - 0.5;
        if n == 0 {
            ln_mag.exp()
        } else if r == 0.0 {
            0.0
        } else {
            r.signum().powi(n as i32) * (ln_mag + nf * r.abs().ln()).exp()
        }
    };
    CoeffSeq::from_fn(Basis::laguerre(gamma.to_vec()), trunc.to_vec(), |n: &MultiIndex| {
        let v: f64 = n.entries().iter().zip(gamma).map(|(&k, &g)| one(k, g)).product();
        Complex64::new(v, 0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{hermite_fn, laguerre_fn_1d};
    use approx::assert_relative_eq;

    fn lag_delta(n: usize, trunc: usize, gamma: f64) -> CoeffSeq {
        let mut v = vec![0.0; trunc + 1];
        v[n] = 1.0;
        CoeffSeq::from_real_1d(Basis::laguerre(vec![gamma]), &v).unwrap()
    }

    #[test]
    fn laguerre_function_has_unit_coefficient() {
        let f = FunctionHandle::orthant(1, |t| Complex64::new(laguerre_fn_1d(3, 0.0, t[0]), 0.0));
        let a = analyze(&f, &[0.0], &[10], 200).unwrap();
        for (k, v) in a.values().iter().enumerate() {
            let expected = if k == 3 { 1.0 } else { 0.0 };
            assert!((v.re - expected).abs() < 1e-10 && v.im.abs() < 1e-10, "a_{k} = {v}");
        }
    }

    #[test]
    fn exponential_matches_laplace_values() {
        let f = FunctionHandle::exp_decay(1, 1.0).unwrap();
        let a = analyze(&f, &[0.0], &[32], 200).unwrap();
        assert_relative_eq!(a.values()[0].re, 2.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(a.values()[1].re, 2.0 / 9.0, max_relative = 1e-12);
        for n in 0..=32 {
            assert!((a.values()[n].re - (2.0 / 3.0) * 3f64.powi(-(n as i32))).abs() < 1e-9);
        }
    }

    #[test]
    fn closed_form_agrees_with_quadrature_for_general_gamma() {
        for &g in &[0.0, 0.5, 2.0] {
            for &b in &[0.75, 1.0, 2.0] {
                let f = FunctionHandle::exp_decay(1, b).unwrap();
                let q = analyze(&f, &[g], &[20], 200).unwrap();
                let c = exp_coefficients(b, &[g], &[20]).unwrap();
                for (x, y) in q.values().iter().zip(c.values()) {
                    assert!((x - y).norm() < 1e-12, "γ={g} b={b}: {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn two_dimensional_product() {
        let f = FunctionHandle::exp_decay(2, 1.0).unwrap();
        let a = analyze(&f, &[0.0, 0.0], &[6, 6], 64).unwrap();
        for n in 0..=6 {
            for m in 0..=6 {
                let v = a.get(&MultiIndex::new(vec![n, m])).re;
                let expected = (4.0 / 9.0) * 3f64.powi(-((n + m) as i32));
                assert!((v - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rule_order_precondition() {
        let f = FunctionHandle::exp_decay(1, 0.76).unwrap();
        assert!(matches!(analyze(&f, &[0.0], &[32], 8), Err(Error::UnderResolved(_))));
    }

    #[test]
    fn synthesis_round_trip() {
        let seq = lag_delta(3, 10, 0.0);
        assert_relative_eq!(synthesize(&seq, &[1.0]).unwrap().re, laguerre_fn_1d(3, 0.0, 1.0), max_relative = 1e-12);
        let geo: Vec<f64> = (0..=48).map(|n| (2.0 / 3.0) * 3f64.powi(-n)).collect();
        let s = CoeffSeq::from_real_1d(Basis::laguerre(vec![0.0]), &geo).unwrap();
        assert!((synthesize(&s, &[0.0]).unwrap().re - 1.0).abs() < 1e-8);
        let h = CoeffSeq::from_real_1d(Basis::Hermite, &[1.0]).unwrap();
        assert_relative_eq!(hermite_synthesize(&h, &[0.0]).unwrap().re, 0.751_125_544_464_942_5, max_relative = 1e-15);
    }

    #[test]
    fn hermite_analysis() {
        let f = FunctionHandle::real(1, |x| Complex64::new(hermite_fn(2, x[0]), 0.0));
        let a = hermite_analyze(&f, &[8], 64).unwrap();
        for (k, v) in a.values().iter().enumerate() {
            let expected = if k == 2 { 1.0 } else { 0.0 };
            assert!((v.re - expected).abs() < 1e-10);
        }
        let g = FunctionHandle::real(1, |x| Complex64::new((-x[0] * x[0] / 2.0).exp(), 0.0));
        let b = hermite_analyze(&g, &[8], 64).unwrap();
        assert_relative_eq!(b.values()[0].re, std::f64::consts::PI.powf(0.25), max_relative = 1e-12);
        assert!(b.values()[1..].iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn tail_bound_is_finite_and_shrinks() {
        let geo = |n: usize| -> CoeffSeq {
            let v: Vec<f64> = (0..=n).map(|k| (2.0 / 3.0) * 3f64.powi(-(k as i32))).collect();
            CoeffSeq::from_real_1d(Basis::laguerre(vec![0.0]), &v).unwrap()
        };
        let report = DecayReport {
            alpha: 1.0,
            a: 3.0,
            c: 2.0 / 3.0,
            rms_residual: 0.0,
            points_used: 33,
            verdict: crate::coeff::Verdict::Member,
            finite_support: false,
        };
        let small = tail_bound(&geo(16), &report);
        let large = tail_bound(&geo(32), &report);
        assert!(small.is_finite() && large < small);
        // The true tail at t = 0 is (2/3)Σ_{n>32} 3^{-n}.
        let true_tail = (2.0 / 3.0) * 3f64.powi(-33) * 1.5;
        assert!(large >= true_tail * (1.0 - 1e-12));
        let (v, bound) = synthesize_with_tail(&geo(32), &[0.0], &report).unwrap();
        assert!((v.re - 1.0).abs() <= bound * (1.0 + 1e-9) + 1e-15);
    }
}
