//! Laguerre polynomials `L_n^γ` and the normalized Laguerre functions
//! `𝓛_n^γ(t) = (n!/Γ(n+γ+1))^{1/2} L_n^γ(t) e^{-t/2}`, orthonormal in
//! `L²(R_+, t^γ dt)`.

use statrs::function::gamma::ln_gamma;

use super::recurrence::{scaled_row, Scaled};

/// `L_n^γ(t)` by the forward three-term recurrence.
pub fn laguerre_poly(n: usize, gamma: f64, t: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + gamma - t;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + gamma - t) * cur - (kf + gamma) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Orthonormal polynomial parts `p_k(t) = 𝓛_k^γ(t) e^{t/2}`, `k = 0..=nmax`,
/// carried in scaled form. Set `with_envelope` to fold `e^{-t/2}` in.
pub(crate) fn laguerre_row_scaled(nmax: usize, gamma: f64, t: f64, with_envelope: bool) -> Vec<Scaled> {
    let mut log0 = -0.5 * ln_gamma(gamma + 1.0);
    if with_envelope {
        log0 -= 0.5 * t;
    }
    let first = (1.0 + gamma - t) / (1.0 + gamma).sqrt();
    scaled_row(nmax, log0, first, |n, cur, prev| {
        let nf = n as f64;
        ((2.0 * nf + 1.0 + gamma - t) * cur - (nf * (nf + gamma)).sqrt() * prev)
            / ((nf + 1.0) * (nf + 1.0 + gamma)).sqrt()
    })
}

/// `𝓛_k^γ(t)` for `k = 0..=nmax`.
pub fn laguerre_fn_row(nmax: usize, gamma: f64, t: f64) -> Vec<f64> {
    laguerre_row_scaled(nmax, gamma, t, true)
        .iter()
        .map(Scaled::value)
        .collect()
}

/// One-dimensional Laguerre function `𝓛_n^γ(t)`.
pub fn laguerre_fn_1d(n: usize, gamma: f64, t: f64) -> f64 {
    laguerre_row_scaled(n, gamma, t, true)[n].value()
}

/// Tensor Laguerre function `𝓛_n^γ(t) = ∏_l 𝓛_{n_l}^{γ_l}(t_l)`.
pub fn laguerre_fn(n: &[usize], gamma: &[f64], t: &[f64]) -> f64 {
    debug_assert_eq!(n.len(), gamma.len());
    debug_assert_eq!(n.len(), t.len());
    n.iter()
        .zip(gamma)
        .zip(t)
        .map(|((&n, &g), &t)| laguerre_fn_1d(n, g, t))
        .product()
}

/// `sqrt(n!/Γ(n+γ+1))`, the factor turning `L_n^γ e^{-t/2}` into `𝓛_n^γ`.
pub fn laguerre_norm(n: usize, gamma: f64) -> f64 {
    (0.5 * (ln_gamma(n as f64 + 1.0) - ln_gamma(n as f64 + gamma + 1.0))).exp()
}

/// Explicit bound `sup_t |t^k D^p (e^{-t/2} L_n^γ(t))|
/// <= 2^{-min(γ,k)} 4^k (n+1)...(n+k) binom(n + max(γ-k,0) + p, n)`,
/// scaled to the normalized function.
pub fn laguerre_derivative_bound(n: usize, gamma: f64, p: usize, k: usize) -> f64 {
    let nf = n as f64;
    let kf = k as f64;
    let shift = (gamma - kf).max(0.0) + p as f64;
    let ln_binom = ln_gamma(nf + shift + 1.0) - ln_gamma(nf + 1.0) - ln_gamma(shift + 1.0);
    let ln_rising = ln_gamma(nf + kf + 1.0) - ln_gamma(nf + 1.0);
    let ln_bound = -gamma.min(kf) * std::f64::consts::LN_2 + kf * 4f64.ln() + ln_rising + ln_binom;
    (ln_bound).exp() * laguerre_norm(n, gamma)
}

/// `D^p` of `L_n^γ(t) e^{-t/2}`: by `d/dt L_n^γ = -L_{n-1}^{γ+1}`,
/// `D^p = e^{-t/2} Σ_j binom(p,j) (-1/2)^{p-j} (-1)^j L_{n-j}^{γ+j}(t)`.
pub fn laguerre_exp_derivative(n: usize, gamma: f64, p: usize, t: f64) -> f64 {
    let mut sum = 0.0;
    let mut binom = 1.0;
    for j in 0..=p.min(n) {
        if j > 0 {
            binom *= (p - j + 1) as f64 / j as f64;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += binom * (-0.5f64).powi((p - j) as i32) * sign * laguerre_poly(n - j, gamma + j as f64, t);
    }
    sum * (-0.5 * t).exp()
}
