//! The polydisc generating function `F_D`.

use num_complex::Complex64;

use super::{self_converge, value_change, Domain, FunctionHandle, GATE_RTOL};
use crate::bases::quadrature::laguerre_rule;
use crate::coeff::{Basis, CoeffSeq};
use crate::error::{Error, Result};
use crate::tensor::grid_points;

/// A point of the open unit polydisc.
#[derive(Debug, Clone, PartialEq)]
pub struct PolydiscPoint {
    w: Vec<Complex64>,
}

impl PolydiscPoint {
    pub fn new(w: Vec<Complex64>) -> Result<Self> {
        if let Some(z) = w.iter().find(|z| !(z.norm() < 1.0)) {
            return Err(Error::InvalidArgument(format!("|w| = {} is not inside the unit disc", z.norm())));
        }
        Ok(PolydiscPoint { w })
    }

    pub fn real(w: &[f64]) -> Result<Self> {
        Self::new(w.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn w(&self) -> &[Complex64] {
        &self.w
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    /// `κ_l = (1 + w_l) / (1 - w_l)`, which has positive real part.
    pub fn kappa(&self) -> Vec<Complex64> {
        self.w.iter().map(|&z| (1.0 + z) / (1.0 - z)).collect()
    }
}

/// `F_D(w) = ∏(1 - w_l) Σ a_n w^n` from Laguerre (`γ = 0`) coefficients.
pub fn f_disc(seq: &CoeffSeq, w: &PolydiscPoint) -> Result<Complex64> {
    match seq.basis() {
        Basis::Laguerre { gamma } if gamma.iter().all(|&g| g == 0.0) => {}
        _ => return Err(Error::BasisMismatch("F_D needs Laguerre coefficients with γ = 0".into())),
    }
    if w.dim() != seq.dim() {
        return Err(Error::DimensionMismatch {
            expected: seq.dim(),
            got: w.dim(),
        });
    }
    let powers: Vec<Vec<Complex64>> = w
        .w
        .iter()
        .zip(seq.trunc())
        .map(|(&z, &n)| {
            let mut p = Vec::with_capacity(n + 1);
            let mut acc = Complex64::new(1.0, 0.0);
            for _ in 0..=n {
                p.push(acc);
                acc *= z;
            }
            p
        })
        .collect();
    let series: Complex64 = seq
        .graded()
        .iter()
        .map(|(n, v)| v * n.entries().iter().zip(&powers).map(|(&k, p)| p[k]).product::<Complex64>())
        .sum();
    let factor: Complex64 = w.w.iter().map(|&z| 1.0 - z).product();
    Ok(factor * series)
}

fn direct_at(f: &FunctionHandle, kappa: &[Complex64], order: usize) -> Result<Complex64> {
    let base = laguerre_rule(order, 0.0)?;
    let rules: Vec<_> = kappa
        .iter()
        .zip(f.decay())
        .map(|(k, &b)| base.envelope(b + 0.5 * k.re))
        .collect();
    let axes: Vec<&[f64]> = rules.iter().map(|r| r.nodes.as_slice()).collect();
    let shape: Vec<usize> = rules.iter().map(|r| r.len()).collect();
    let mut sum = Complex64::new(0.0, 0.0);
    for (flat, t) in grid_points(&axes).iter().enumerate() {
        let mut rem = flat;
        let mut weight = 1.0;
        let mut kernel = Complex64::new(0.0, 0.0);
        for l in (0..shape.len()).rev() {
            let i = rem % shape[l];
            rem /= shape[l];
            weight *= rules[l].weights[i];
            kernel -= 0.5 * kappa[l] * t[l];
        }
        sum += weight * f.eval(t) * kernel.exp();
    }
    Ok(sum)
}

/// `⟨f, ∏ e^{-κ_l t_l / 2}⟩` by direct quadrature over the orthant.
pub fn f_disc_direct(f: &FunctionHandle, w: &PolydiscPoint, rule_order: usize) -> Result<Complex64> {
    f.expect(Domain::Orthant, w.dim())?;
    let kappa = w.kappa();
    self_converge(
        rule_order,
        |order| direct_at(f, &kappa, order),
        |a, b| value_change(*a, *b, GATE_RTOL, 1e-14),
    )
}
