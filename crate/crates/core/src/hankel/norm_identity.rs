//! Exact evaluation of both sides of the weighted norm identity
//! `‖t^{(p+k+γ)/2} D^p f‖₂ = ∏|1-z_l|^{k_l-p_l} ‖t^{(p+k+γ)/2} D^k J_{z,γ} f‖₂`
//! for finite Laguerre expansions.

use num_complex::Complex64;

use super::{axis_prefactor, PhaseParam};
use crate::bases::quadrature::laguerre_rule;
use crate::bases::{laguerre_norm, laguerre_poly};
use crate::coeff::CoeffSeq;
use crate::error::{Error, Result};
use crate::tensor::{multi_mode_product, Matrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormIdentity {
    pub lhs: f64,
    pub rhs: f64,
}

impl NormIdentity {
    pub fn relative_gap(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.lhs.abs().max(self.rhs.abs()).max(f64::MIN_POSITIVE)
    }
}

/// `c · L_n^g(t/s) e^{-t/(2s)}`.
#[derive(Debug, Clone, Copy)]
struct Term {
    c: f64,
    n: usize,
    g: f64,
}

/// `D^p 𝓛_n^γ(t/s)` as a sum of terms sharing the scale `s`, from
/// `D[L_n^g(t/s) e^{-t/2s}] = -(1/s)[L_{n-1}^{g+1}(t/s) + L_n^g(t/s)/2] e^{-t/2s}`.
fn derivative_terms(n: usize, gamma: f64, s: f64, p: usize) -> Vec<Term> {
    let mut terms = vec![Term {
        c: laguerre_norm(n, gamma),
        n,
        g: gamma,
    }];
    for _ in 0..p {
        let mut next = Vec::with_capacity(2 * terms.len());
        for t in &terms {
            if t.n > 0 {
                next.push(Term {
                    c: -t.c / s,
                    n: t.n - 1,
                    g: t.g + 1.0,
                });
            }
            next.push(Term {
                c: -0.5 * t.c / s,
                n: t.n,
                g: t.g,
            });
        }
        terms = next;
    }
    terms
}

/// `‖t^{(p+k+γ)/2} D^p Σ a_n 𝓛_n(t/s)‖₂` over the orthant by Gauss rules
/// that are exact for the polynomial parts.
fn weighted_norm(values: &[Complex64], trunc: &[usize], gamma: &[f64], scales: &[f64], p: &[usize], k: &[usize]) -> Result<f64> {
    let d = trunc.len();
    let mut mats = Vec::with_capacity(d);
    let mut weights = Vec::with_capacity(d);
    for l in 0..d {
        let w = (p[l] + k[l]) as f64 + gamma[l];
        // t = s·y turns the weight t^w e^{-t/s} into s^{w+1} y^w e^{-y}.
        let rule = laguerre_rule(trunc[l] + 4, w)?;
        let jac = scales[l].powf(w + 1.0);
        let cols: Vec<Vec<Term>> = (0..=trunc[l])
            .map(|n| derivative_terms(n, gamma[l], scales[l], p[l]))
            .collect();
        mats.push(Matrix::from_real(rule.nodes().len(), trunc[l] + 1, |i, n| {
            let x = rule.nodes()[i];
            cols[n].iter().map(|t| t.c * laguerre_poly(t.n, t.g, x)).sum::<f64>()
        }));
        weights.push(rule.weights().iter().map(|w| w * jac).collect::<Vec<f64>>());
    }
    let shape: Vec<usize> = trunc.iter().map(|n| n + 1).collect();
    let (grid, gshape) = multi_mode_product(values, &shape, &mats);
    let mut total = 0.0;
    for (flat, v) in grid.iter().enumerate() {
        let mut rem = flat;
        let mut w = 1.0;
        for l in (0..d).rev() {
            w *= weights[l][rem % gshape[l]];
            rem /= gshape[l];
        }
        total += w * v.norm_sqr();
    }
    Ok(total.sqrt())
}

/// Both sides of the norm identity for `f = Σ a_n 𝓛_n^γ`, with `J_{z,γ} f`
/// taken in closed form.
pub fn norm_identity_check(f: &CoeffSeq, z: &PhaseParam, p: &[usize], k: &[usize]) -> Result<NormIdentity> {
    let gamma = f
        .basis()
        .gamma()
        .ok_or_else(|| Error::BasisMismatch("the norm identity needs Laguerre coefficients".into()))?
        .to_vec();
    let d = f.dim();
    for len in [z.dim(), p.len(), k.len()] {
        if len != d {
            return Err(Error::DimensionMismatch { expected: d, got: len });
        }
    }
    let lhs = weighted_norm(f.values(), f.trunc(), &gamma, &vec![1.0; d], p, k)?;

    let scales = z.scales();
    let flipped = f.map_indexed(|n, v| if n.order() % 2 == 0 { v } else { -v })?;
    let mut factor = 1.0;
    for l in 0..d {
        let theta = z.thetas()[l];
        let one_minus_z = (1.0 - Complex64::from_polar(1.0, theta)).norm();
        factor *= axis_prefactor(theta, gamma[l]).norm() * one_minus_z.powi(k[l] as i32 - p[l] as i32);
    }
    let rhs = factor * weighted_norm(flipped.values(), f.trunc(), &gamma, &scales, k, p)?;
    Ok(NormIdentity { lhs, rhs })
}
