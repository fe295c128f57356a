//! `J_{z,γ}` and `I_{z,γ}` by quadrature against the real Bessel kernel.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::PhaseParam;
use crate::bases::bessel_j_reduced;
use crate::bases::quadrature::laguerre_rule;
use crate::error::{Error, Result};
use crate::tensor::grid_points;
use crate::transform::{Domain, FunctionHandle, GATE_RTOL};

/// Absolute floor of the self-convergence gate.
const GATE_ATOL: f64 = 1e-11;

fn check(f: &FunctionHandle, z: &PhaseParam, gamma: &[f64], ts: &[Vec<f64>]) -> Result<()> {
    let d = z.dim();
    f.expect(Domain::Orthant, d)?;
    if gamma.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: gamma.len() });
    }
    if let Some(g) = gamma.iter().find(|g| !(**g >= 0.0)) {
        return Err(Error::InvalidArgument(format!("γ = {g} must be non-negative")));
    }
    for t in ts {
        if t.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: t.len() });
        }
        if t.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("{t:?} is outside the closed orthant")));
        }
    }
    Ok(())
}

/// `∏ (1 - z_l)^{-1} e^{-iγθ/2} e^{iγπ sgn(θ)/2}`.
fn constant(z: &PhaseParam, gamma: &[f64]) -> Complex64 {
    z.thetas()
        .iter()
        .zip(gamma)
        .map(|(&th, &g)| {
            Complex64::from_polar(1.0, -0.5 * g * th + 0.5 * g * PI * th.signum())
                / (1.0 - Complex64::from_polar(1.0, th))
        })
        .product()
}

fn apply_at_order(
    f: &FunctionHandle,
    z: &PhaseParam,
    gamma: &[f64],
    ts: &[Vec<f64>],
    order: usize,
) -> Result<Vec<Complex64>> {
    let d = z.dim();
    let mut rules = Vec::with_capacity(d);
    for l in 0..d {
        rules.push(laguerre_rule(order, gamma[l])?.envelope(f.decay()[l]));
    }
    let axes: Vec<&[f64]> = rules.iter().map(|r| r.nodes.as_slice()).collect();
    // Weighted samples are shared by every output point.
    let mut samples: Vec<Complex64> = grid_points(&axes).iter().map(|x| f.eval(x)).collect();
    for (l, r) in rules.iter().enumerate() {
        let inner: usize = rules[l + 1..].iter().map(|r| r.len()).product();
        for (flat, v) in samples.iter_mut().enumerate() {
            *v *= r.weights[(flat / inner) % r.len()];
        }
    }
    let c = constant(z, gamma);
    let abs_s: Vec<f64> = z.thetas().iter().map(|&th| (0.5 * th).sin().abs()).collect();
    let mut out = Vec::with_capacity(ts.len());
    for t in ts {
        let mut acc = samples.clone();
        for l in (0..d).rev() {
            let n = rules[l].len();
            let pre = abs_s[l].powf(-gamma[l]);
            let kernel: Vec<f64> = rules[l]
                .nodes
                .iter()
                .map(|&x| pre * bessel_j_reduced(gamma[l], (x * t[l]).sqrt() / abs_s[l]))
                .collect();
            acc = acc
                .chunks(n)
                .map(|row| row.iter().zip(&kernel).map(|(v, k)| v * k).sum())
                .collect();
        }
        out.push(c * acc[0]);
    }
    Ok(out)
}

fn max_change(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| crate::transform::value_change(*x, *y, GATE_RTOL, GATE_ATOL))
        .fold(0.0, f64::max)
}

/// `J_{z,γ} f` at each point of `ts`, by tensor Gauss–Laguerre quadrature
/// stretched to `f`'s decay rates and checked against a doubled order.
pub fn jz_apply_many(
    f: &FunctionHandle,
    z: &PhaseParam,
    gamma: &[f64],
    ts: &[Vec<f64>],
    rule_order: usize,
) -> Result<Vec<Complex64>> {
    check(f, z, gamma, ts)?;
    crate::transform::self_converge(
        rule_order,
        |order| apply_at_order(f, z, gamma, ts, order),
        |a, b| max_change(a, b),
    )
}

pub fn jz_apply(
    f: &FunctionHandle,
    z: &PhaseParam,
    gamma: &[f64],
    t: &[f64],
    rule_order: usize,
) -> Result<Complex64> {
    Ok(jz_apply_many(f, z, gamma, &[t.to_vec()], rule_order)?[0])
}

/// `∏ e^{-κ_l t_l / 2}` with `κ = (1+z)/(1-z)`, unimodular on the circle.
fn chirp(z: &[Complex64], t: &[f64]) -> Complex64 {
    z.iter()
        .zip(t)
        .map(|(&zl, &tl)| (-0.5 * (1.0 + zl) / (1.0 - zl) * tl).exp())
        .product()
}

/// `I_{z,γ} f = Φ_z · J_{z,γ}(Φ_z f)`, where `Φ_z` is the chirp
/// `∏ e^{-κ_l t_l/2}`.
pub fn iz_apply_many(
    f: &FunctionHandle,
    z: &PhaseParam,
    gamma: &[f64],
    ts: &[Vec<f64>],
    rule_order: usize,
) -> Result<Vec<Complex64>> {
    check(f, z, gamma, ts)?;
    let zs = z.z();
    let inner = f.clone();
    let zc = zs.clone();
    let g = FunctionHandle::orthant(z.dim(), move |t| chirp(&zc, t) * inner.eval(t)).with_decay(f.decay().to_vec())?;
    let j = jz_apply_many(&g, z, gamma, ts, rule_order)?;
    Ok(j.iter().zip(ts).map(|(v, t)| chirp(&zs, t) * v).collect())
}

pub fn iz_apply(
    f: &FunctionHandle,
    z: &PhaseParam,
    gamma: &[f64],
    t: &[f64],
    rule_order: usize,
) -> Result<Complex64> {
    Ok(iz_apply_many(f, z, gamma, &[t.to_vec()], rule_order)?[0])
}
