//! Finite-window evaluation of the G-space seminorm
//! `sup_{p,k} ‖t^{(p+k)/2} D^p f‖₂ / (A^{|p+k|} k^{(α/2)k} p^{(β/2)p})`.

use num_complex::Complex64;

use super::{Domain, FunctionHandle};
use crate::bases::quadrature::laguerre_rule;
use crate::error::{Error, Result};
use crate::multi_index::IndexBox;
use crate::tensor::grid_points;

#[derive(Debug, Clone, PartialEq)]
pub struct GspaceConfig {
    pub a: f64,
    pub alpha: f64,
    pub beta: f64,
    pub p_max: usize,
    pub k_max: usize,
    pub rule_order: usize,
    /// Base finite-difference step; grows with derivative order and `|t|`.
    pub step: f64,
    pub tolerance: f64,
}

impl GspaceConfig {
    pub fn new(a: f64, alpha: f64, beta: f64, p_max: usize, k_max: usize) -> Self {
        GspaceConfig {
            a,
            alpha,
            beta,
            p_max,
            k_max,
            rule_order: 64,
            step: 1e-3,
            tolerance: 1e-5,
        }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Finite-difference stencil `(offset multiplier, weight)` for `D^p`:
/// central differences in the interior, forward differences near 0.
fn stencil(p: usize, forward: bool) -> Vec<(f64, f64)> {
    (0..=p)
        .map(|j| {
            let sign = if (p - j).is_multiple_of(2) { 1.0 } else { -1.0 };
            let offset = if forward { j as f64 } else { j as f64 - p as f64 / 2.0 };
            (offset, sign * binomial(p, j))
        })
        .collect()
}

/// Richardson table on steps `h, h/2, h/4`; returns (best, next best).
fn richardson(d: [Complex64; 3], forward: bool) -> (Complex64, Complex64) {
    let (r1, r2) = if forward { (2.0, 4.0) } else { (4.0, 16.0) };
    let t11 = (r1 * d[1] - d[0]) / (r1 - 1.0);
    let t21 = (r1 * d[2] - d[1]) / (r1 - 1.0);
    let t22 = (r2 * t21 - t11) / (r2 - 1.0);
    (t22, t21)
}

/// `D^p f(t)`, extrapolated from three step sizes.
fn derivative(f: &FunctionHandle, p: &[usize], t: &[f64], base: f64) -> (Complex64, Complex64) {
    let d = t.len();
    let steps: Vec<f64> = (0..d)
        .map(|l| base * 4f64.powi(p[l].saturating_sub(1) as i32) * t[l].abs().max(1.0))
        .collect();
    let forward: Vec<bool> = (0..d)
        .map(|l| p[l] > 0 && t[l] - 0.5 * p[l] as f64 * steps[l] <= 0.0)
        .collect();
    let stencils: Vec<Vec<(f64, f64)>> = (0..d).map(|l| stencil(p[l], forward[l])).collect();
    let mut levels = [Complex64::new(0.0, 0.0); 3];
    for (lev, out) in levels.iter_mut().enumerate() {
        let scale = 0.5f64.powi(lev as i32);
        let shape: Vec<usize> = stencils.iter().map(Vec::len).collect();
        let b = IndexBox::new(&shape.iter().map(|s| s - 1).collect::<Vec<_>>());
        let mut acc = Complex64::new(0.0, 0.0);
        let mut point = vec![0.0; d];
        for idx in b.iter() {
            let mut w = 1.0;
            for l in 0..d {
                let (off, c) = stencils[l][idx[l]];
                let h = steps[l] * scale;
                point[l] = t[l] + off * h;
                w *= c / h.powi(p[l] as i32);
            }
            acc += w * f.eval(&point);
        }
        *out = acc;
    }
    // Mixed stencils are central unless any axis is one-sided.
    richardson(levels, forward.iter().any(|&x| x))
}

fn ln_factor(k: usize, exponent: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        exponent * k as f64 * (k as f64).ln()
    }
}

/// Finite-window supremum of the G-space seminorm over `p_l <= p_max`,
/// `k_l <= k_max`. Derivatives are Richardson-extrapolated finite
/// differences; L² norms use Gauss–Laguerre rules matched to `f`'s envelope.
pub fn gspace_seminorm(f: &FunctionHandle, cfg: &GspaceConfig) -> Result<f64> {
    let d = f.dim();
    f.expect(Domain::Orthant, d)?;
    if cfg.p_max > 3 {
        return Err(Error::Unsupported(format!("derivative order {} > 3", cfg.p_max)));
    }
    if !(cfg.a > 0.0) {
        return Err(Error::InvalidArgument(format!("A = {} must be positive", cfg.a)));
    }
    let base = laguerre_rule(cfg.rule_order, 0.0)?;
    let rules: Vec<_> = f.decay().iter().map(|&b| base.envelope(2.0 * b)).collect();
    let axes: Vec<&[f64]> = rules.iter().map(|r| r.nodes.as_slice()).collect();
    let points = grid_points(&axes);
    let shape: Vec<usize> = rules.iter().map(|r| r.len()).collect();
    let node_box = IndexBox::new(&shape.iter().map(|s| s - 1).collect::<Vec<_>>());
    let weights: Vec<f64> = node_box
        .iter()
        .map(|i| (0..d).map(|l| rules[l].weights[i[l]]).product())
        .collect();

    let pbox = IndexBox::new(&vec![cfg.p_max; d]);
    let kbox = IndexBox::new(&vec![cfg.k_max; d]);
    let mut sup: f64 = 0.0;
    for pi in pbox.graded_lex() {
        let p = pbox.unflat(pi);
        let derivs: Vec<(Complex64, Complex64)> = points
            .iter()
            .map(|t| derivative(f, p.entries(), t, cfg.step))
            .collect();
        for ki in kbox.graded_lex() {
            let k = kbox.unflat(ki);
            let mut best = 0.0;
            let mut alt = 0.0;
            for ((t, w), (db, da)) in points.iter().zip(&weights).zip(&derivs) {
                let weight: f64 = (0..d).map(|l| t[l].powi((p[l] + k[l]) as i32)).product::<f64>() * w;
                best += weight * db.norm_sqr();
                alt += weight * da.norm_sqr();
            }
            let (best, alt) = (best.sqrt(), alt.sqrt());
            let disagreement = (best - alt).abs() / best.max(f64::MIN_POSITIVE);
            if best > 0.0 && disagreement > cfg.tolerance {
                return Err(Error::DerivativeInstability {
                    disagreement,
                    tolerance: cfg.tolerance,
                });
            }
            let ln_den = (p.order() + k.order()) as f64 * cfg.a.ln()
                + (0..d)
                    .map(|l| ln_factor(k[l], cfg.alpha / 2.0) + ln_factor(p[l], cfg.beta / 2.0))
                    .sum::<f64>();
            sup = sup.max(best * (-ln_den).exp());
        }
    }
    Ok(sup)
}
