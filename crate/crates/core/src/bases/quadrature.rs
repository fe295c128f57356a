//! Gauss quadrature rules from the symmetric tridiagonal Jacobi matrix.
//!
//! Nodes are the eigenvalues of the Jacobi matrix (implicit QL with a
//! Wilkinson shift), polished by Newton steps on the normalized recurrence.
//! Weights come from the Christoffel function `w_i = 1 / Σ_{k<N} p_k(x_i)²`,
//! evaluated in log space. Each rule also carries envelope-scaled weights
//! (`w_i e^{x_i}` for Laguerre, `w_i e^{x_i²}` for Hermite) which stay O(1)
//! at orders where the plain weights underflow.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use statrs::function::gamma::ln_gamma;

use super::hermite::hermite_row_scaled;
use super::laguerre::laguerre_row_scaled;
use super::recurrence::{ln_sum_squares, scaled_row, Scaled};
use crate::error::{invalid, Error, Result};

pub const MAX_ORDER: usize = 2048;
const MAX_QL_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    /// Weight `t^γ e^{-t}` on `(0, ∞)`.
    GaussLaguerre { gamma: f64 },
    /// Weight `e^{-t²}` on `R`.
    GaussHermite,
    /// Weight `1` on `(-1, 1)`.
    GaussLegendre,
}

#[derive(Debug, Clone)]
pub struct QuadratureRule {
    kind: RuleKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    scaled_weights: Vec<f64>,
}

/// Nodes and weights for `∫ F(x) x^γ dx` (Laguerre) or `∫ F(x) dx` (Hermite),
/// where `F` carries its own exponential envelope.
#[derive(Debug, Clone)]
pub struct EnvelopeRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl EnvelopeRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

impl QuadratureRule {
    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Plain Gauss weights; these underflow to zero at the far nodes of
    /// high-order rules.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn scaled_weights(&self) -> &[f64] {
        &self.scaled_weights
    }

    /// `Σ w_i f(x_i)`, approximating `∫ f(x) w(x) dx`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Rescales the rule so that `∫ F(x) x^γ dx` (Laguerre, `F ~ e^{-rate x}`)
    /// or `∫ F(x) dx` (Hermite, `F ~ e^{-rate x²}`) is exact whenever
    /// `F` divided by its envelope is a polynomial of degree `< 2N`.
    pub fn envelope(&self, rate: f64) -> EnvelopeRule {
        assert!(rate > 0.0, "envelope rate must be positive");
        match self.kind {
            RuleKind::GaussLaguerre { gamma } => {
                let wscale = rate.powf(-gamma - 1.0);
                EnvelopeRule {
                    nodes: self.nodes.iter().map(|y| y / rate).collect(),
                    weights: self.scaled_weights.iter().map(|w| w * wscale).collect(),
                }
            }
            RuleKind::GaussHermite => {
                let s = rate.sqrt();
                EnvelopeRule {
                    nodes: self.nodes.iter().map(|y| y / s).collect(),
                    weights: self.scaled_weights.iter().map(|w| w / s).collect(),
                }
            }
            RuleKind::GaussLegendre => EnvelopeRule {
                nodes: self.nodes.clone(),
                weights: self.weights.clone(),
            },
        }
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off[i]` couples `i` and `i+1`), ascending.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n.saturating_sub(1)].copy_from_slice(&off[..n.saturating_sub(1)]);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence {
                    index: l,
                    iterations: MAX_QL_ITERATIONS,
                });
            }
            // Wilkinson shift from the leading 2x2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(d)
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_ORDER {
        return Err(invalid(format!("quadrature order {order} outside 1..={MAX_ORDER}")));
    }
    Ok(())
}

/// Gauss–Laguerre rule for the weight `t^γ e^{-t}`.
pub fn gauss_laguerre_rule(order: usize, gamma: f64) -> Result<QuadratureRule> {
    check_order(order)?;
    if !(gamma >= 0.0) {
        return Err(invalid(format!("Laguerre order γ = {gamma} must be >= 0")));
    }
    let n = order;
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + 1.0 + gamma).collect();
    let off: Vec<f64> = (1..n)
        .map(|k| (k as f64 * (k as f64 + gamma)).sqrt())
        .collect();
    let mut nodes = tridiagonal_eigenvalues(&diag, &off)?;

    let nf = n as f64;
    for x in nodes.iter_mut() {
        for _ in 0..4 {
            let row = laguerre_row_scaled(n, gamma, *x, false);
            let (pn, pm) = (row[n].mantissa, row[n - 1].mantissa);
            let deriv = nf * pn - (nf * (nf + gamma)).sqrt() * pm;
            if deriv == 0.0 {
                break;
            }
            let step = *x * pn / deriv;
            let next = *x - step;
            if !(next > 0.0) {
                break;
            }
            *x = next;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs() {
                break;
            }
        }
    }

    let mut weights = Vec::with_capacity(n);
    let mut scaled = Vec::with_capacity(n);
    for &x in &nodes {
        let row = laguerre_row_scaled(n - 1, gamma, x, false);
        let ln_s = ln_sum_squares(&row);
        weights.push((-ln_s).exp());
        scaled.push((x - ln_s).exp());
    }
    Ok(QuadratureRule {
        kind: RuleKind::GaussLaguerre { gamma },
        nodes,
        weights,
        scaled_weights: scaled,
    })
}

/// Gauss–Hermite rule for the weight `e^{-t²}`.
pub fn gauss_hermite_rule(order: usize) -> Result<QuadratureRule> {
    check_order(order)?;
    let n = order;
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let mut nodes = tridiagonal_eigenvalues(&diag, &off)?;

    let nf = n as f64;
    for x in nodes.iter_mut() {
        for _ in 0..4 {
            let row = hermite_row_scaled(n, *x, false);
            let (pn, pm) = (row[n].mantissa, row[n - 1].mantissa);
            let deriv = (2.0 * nf).sqrt() * pm;
            if deriv == 0.0 {
                break;
            }
            let step = pn / deriv;
            *x -= step;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
                break;
            }
        }
    }
    // Enforce exact symmetry.
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let a = 0.5 * (nodes[j] - nodes[i]);
        nodes[i] = -a;
        nodes[j] = a;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }

    let mut weights = Vec::with_capacity(n);
    let mut scaled = Vec::with_capacity(n);
    for &x in &nodes {
        let row = hermite_row_scaled(n - 1, x, false);
        let ln_s = ln_sum_squares(&row);
        weights.push((-ln_s).exp());
        scaled.push((x * x - ln_s).exp());
    }
    Ok(QuadratureRule {
        kind: RuleKind::GaussHermite,
        nodes,
        weights,
        scaled_weights: scaled,
    })
}

fn legendre_row(nmax: usize, x: f64) -> Vec<Scaled> {
    // Orthonormal on (-1, 1): p_k = sqrt((2k+1)/2) P_k.
    scaled_row(nmax, -0.5 * std::f64::consts::LN_2, 3f64.sqrt() * x, |k, cur, prev| {
        let kf = k as f64;
        let a = ((2.0 * kf + 1.0) * (2.0 * kf + 3.0)).sqrt() / (kf + 1.0);
        let b = kf / (kf + 1.0) * ((2.0 * kf + 3.0) / (2.0 * kf - 1.0)).sqrt();
        a * x * cur - b * prev
    })
}

/// Gauss–Legendre rule on `(-1, 1)`.
pub fn gauss_legendre_rule(order: usize) -> Result<QuadratureRule> {
    check_order(order)?;
    let n = order;
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let kf = k as f64;
            kf / (4.0 * kf * kf - 1.0).sqrt()
        })
        .collect();
    let nodes = tridiagonal_eigenvalues(&diag, &off)?;
    let mut weights = Vec::with_capacity(n);
    for &x in &nodes {
        let row = legendre_row(n - 1, x);
        weights.push((-ln_sum_squares(&row)).exp());
    }
    Ok(QuadratureRule {
        kind: RuleKind::GaussLegendre,
        scaled_weights: weights.clone(),
        nodes,
        weights,
    })
}

type CacheKey = (u8, usize, u64);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<QuadratureRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<QuadratureRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached<F>(key: CacheKey, build: F) -> Result<Arc<QuadratureRule>>
where
    F: FnOnce() -> Result<QuadratureRule>,
{
    if let Some(rule) = cache().lock().expect("rule cache poisoned").get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(build()?);
    cache()
        .lock()
        .expect("rule cache poisoned")
        .insert(key, Arc::clone(&rule));
    Ok(rule)
}

/// Memoized [`gauss_laguerre_rule`].
pub fn laguerre_rule(order: usize, gamma: f64) -> Result<Arc<QuadratureRule>> {
    cached((0, order, gamma.to_bits()), || gauss_laguerre_rule(order, gamma))
}

/// Memoized [`gauss_hermite_rule`].
pub fn hermite_rule(order: usize) -> Result<Arc<QuadratureRule>> {
    cached((1, order, 0), || gauss_hermite_rule(order))
}

/// Memoized [`gauss_legendre_rule`].
pub fn legendre_rule(order: usize) -> Result<Arc<QuadratureRule>> {
    cached((2, order, 0), || gauss_legendre_rule(order))
}

/// `∫_0^∞ t^k · t^γ e^{-t} dt = Γ(k+γ+1)`.
pub fn laguerre_moment(k: usize, gamma: f64) -> f64 {
    ln_gamma(k as f64 + gamma + 1.0).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn one_point_rules() {
        let r = gauss_laguerre_rule(1, 0.0).unwrap();
        assert_relative_eq!(r.nodes()[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(r.weights()[0], 1.0, epsilon = 1e-15);
        let h = gauss_hermite_rule(1).unwrap();
        assert_eq!(h.nodes()[0], 0.0);
        assert_relative_eq!(h.weights()[0], PI.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn two_point_exactness() {
        let r = gauss_laguerre_rule(2, 0.0).unwrap();
        assert_relative_eq!(r.integrate(|t| t), 1.0, epsilon = 1e-14);
        let h = gauss_hermite_rule(2).unwrap();
        assert_relative_eq!(h.integrate(|t| t * t), PI.sqrt() / 2.0, epsilon = 1e-14);
    }

    #[test]
    fn laguerre_weight_sum_is_gamma() {
        for order in [1, 2, 7, 40, 200, 512] {
            let r = gauss_laguerre_rule(order, 2.0).unwrap();
            assert_relative_eq!(r.weights().iter().sum::<f64>(), 2.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn structural_invariants() {
        for order in [1, 3, 16, 64, 128] {
            for &g in &[0.0, 0.5, 3.0] {
                let r = gauss_laguerre_rule(order, g).unwrap();
                assert_eq!(r.nodes().len(), order);
                assert_eq!(r.weights().len(), order);
                assert!(r.nodes()[0] > 0.0);
                assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
                assert!(r.weights().iter().all(|&w| w > 0.0));
            }
            let h = gauss_hermite_rule(order).unwrap();
            assert!(h.nodes().windows(2).all(|w| w[0] < w[1]));
            assert!(h.weights().iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn monomial_exactness_up_to_order_64() {
        for order in [1usize, 2, 5, 16, 33, 64] {
            for &g in &[0.0, 0.5, 1.0, 2.0] {
                let r = gauss_laguerre_rule(order, g).unwrap();
                for k in 0..(2 * order) {
                    let exact = laguerre_moment(k, g);
                    let got = r.integrate(|t| t.powi(k as i32));
                    assert_relative_eq!(got, exact, max_relative = 1e-12);
                }
            }
            let h = gauss_hermite_rule(order).unwrap();
            for k in 0..(2 * order) {
                // ∫ t^k e^{-t²} dt = Γ((k+1)/2) for even k, 0 for odd k.
                let got = h.integrate(|t| t.powi(k as i32));
                if k % 2 == 1 {
                    let scale = ln_gamma(k as f64 / 2.0 + 1.0).exp();
                    assert!(got.abs() <= 1e-12 * scale, "odd moment {k} = {got}");
                } else {
                    let exact = ln_gamma((k as f64 + 1.0) / 2.0).exp();
                    assert_relative_eq!(got, exact, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn legendre_integrates_polynomials() {
        let r = gauss_legendre_rule(10).unwrap();
        assert_relative_eq!(r.weights().iter().sum::<f64>(), 2.0, epsilon = 1e-14);
        assert_relative_eq!(r.integrate(|x| x.powi(18)), 2.0 / 19.0, epsilon = 1e-14);
    }

    #[test]
    fn envelope_rule_handles_shifted_exponentials() {
        let r = gauss_laguerre_rule(20, 0.0).unwrap();
        // ∫ t³ e^{-3t/2} dt = 6 / (3/2)^4
        let e = r.envelope(1.5);
        let got: f64 = e
            .nodes
            .iter()
            .zip(&e.weights)
            .map(|(&x, &w)| w * x.powi(3) * (-1.5 * x).exp())
            .sum();
        assert_relative_eq!(got, 6.0 / 1.5f64.powi(4), max_relative = 1e-13);
    }

    #[test]
    fn high_order_scaled_weights_are_finite() {
        let r = gauss_laguerre_rule(800, 0.0).unwrap();
        assert!(r.scaled_weights().iter().all(|w| w.is_finite() && *w > 0.0));
        let h = gauss_hermite_rule(800).unwrap();
        assert!(h.scaled_weights().iter().all(|w| w.is_finite() && *w > 0.0));
    }
}
