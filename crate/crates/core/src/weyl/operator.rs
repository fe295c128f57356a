//! Symbol coefficients, the diagonal Weyl operator and its phase-space oracle.

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use super::wigner::wigner_axis;
use super::{RadialSymbol, SymbolClass, SymbolFamily};
use crate::bases::laguerre_fn_row;
use crate::bases::quadrature::{hermite_rule, laguerre_rule};
use crate::coeff::{classify, Basis, CoeffSeq, DecayConfig, DecayReport};
use crate::error::{Error, Result};
use crate::multi_index::{IndexBox, MultiIndex};
use crate::transform::{analyze, self_converge, value_change, FunctionHandle, DEFAULT_RULE_ORDER, GATE_RTOL};

/// Starting Gauss–Hermite order per phase-space variable in [`weyl_direct`].
pub const DEFAULT_PHASE_RULE_ORDER: usize = 32;

fn check_dim(symbol: &RadialSymbol, trunc: &[usize]) -> Result<()> {
    if trunc.len() != symbol.dim() {
        return Err(Error::DimensionMismatch {
            expected: symbol.dim(),
            got: trunc.len(),
        });
    }
    Ok(())
}

/// `∫ ρ^m e^{-bρ} 𝓛_k(ρ) dρ` for `k <= nmax`; exact, the rule absorbs `ρ^m`.
fn power_exp_integrals(nmax: usize, m: u32, b: f64) -> Result<Vec<f64>> {
    let rule = laguerre_rule(nmax + 8, m as f64)?.envelope(b + 0.5);
    let mut out = vec![0.0; nmax + 1];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let damp = w * (-b * x).exp();
        for (o, v) in out.iter_mut().zip(laguerre_fn_row(nmax, 0.0, x)) {
            *o += damp * v;
        }
    }
    Ok(out)
}

/// `∫ σ(ρ) 𝓛_k(ρ) dρ` over the orthant, `k` in the box `trunc`.
fn laguerre_pairings(symbol: &RadialSymbol, trunc: &[usize], rule_order: usize) -> Result<CoeffSeq> {
    check_dim(symbol, trunc)?;
    let d = symbol.dim();
    let basis = Basis::laguerre(vec![0.0; d]);
    let (m, b, c) = match symbol.family() {
        SymbolFamily::Exp { b } => {
            return analyze(&FunctionHandle::exp_decay(d, *b)?, &vec![0.0; d], trunc, rule_order);
        }
        SymbolFamily::Laguerre(seq) => return seq.retruncate(trunc.to_vec()),
        SymbolFamily::Poly { m, b } => (*m, *b, 1.0),
        SymbolFamily::Const { c } => (0, 0.0, *c),
    };
    let axes: Vec<Vec<f64>> = trunc
        .iter()
        .map(|&n| power_exp_integrals(n, m, b))
        .collect::<Result<_>>()?;
    CoeffSeq::from_fn(basis, trunc.to_vec(), |k| {
        Complex64::new(c * (0..d).map(|l| axes[l][k[l]]).product::<f64>(), 0.0)
    })
}

/// `λ_k = (-1)^{|k|} 2^{-d} ∫σ𝓛_k`, on the Hermite index box.
fn eigenvalues_from(pairings: &CoeffSeq) -> Result<CoeffSeq> {
    let d = pairings.dim();
    let scale = 0.5f64.powi(d as i32);
    let signed = pairings.map_indexed(|k, v| if k.order() % 2 == 0 { scale * v } else { -scale * v })?;
    CoeffSeq::new(Basis::Hermite, signed.trunc().to_vec(), signed.values().to_vec())
}

fn require_smooth(symbol: &RadialSymbol) -> Result<()> {
    if symbol.class() == SymbolClass::WeightedDual {
        return Err(Error::ClassViolation(
            "weighted-dual symbols go through the dual route".into(),
        ));
    }
    Ok(())
}

/// `σ_k = (2π)^{d/2} (-1)^{|k|} 2^{-d} ∫σ𝓛_k` for G-type and Schwartz symbols.
pub fn symbol_sigma_k(symbol: &RadialSymbol, trunc: &[usize], rule_order: usize) -> Result<CoeffSeq> {
    require_smooth(symbol)?;
    let lambda = eigenvalues_from(&laguerre_pairings(symbol, trunc, rule_order)?)?;
    lambda.scale(Complex64::new((2.0 * PI).powf(0.5 * symbol.dim() as f64), 0.0))
}

/// The Weyl operator of `σ̃_0` restricted to a truncation box, stored as
/// its eigenvalues `λ_n = (2π)^{-d/2} σ_n` on the Hermite basis.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylOperator {
    eigenvalues: CoeffSeq,
}

impl WeylOperator {
    pub fn new(symbol: &RadialSymbol, trunc: &[usize], rule_order: usize) -> Result<Self> {
        require_smooth(symbol)?;
        Self::dual(symbol, trunc, rule_order)
    }

    /// Any class, including weighted-dual symbols.
    pub fn dual(symbol: &RadialSymbol, trunc: &[usize], rule_order: usize) -> Result<Self> {
        Ok(WeylOperator {
            eigenvalues: eigenvalues_from(&laguerre_pairings(symbol, trunc, rule_order)?)?,
        })
    }

    pub fn eigenvalues(&self) -> &CoeffSeq {
        &self.eigenvalues
    }

    pub fn apply(&self, f: &CoeffSeq) -> Result<CoeffSeq> {
        if *f.basis() != Basis::Hermite {
            return Err(Error::BasisMismatch("Weyl operators act on Hermite expansions".into()));
        }
        if f.dim() != self.eigenvalues.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.eigenvalues.dim(),
                got: f.dim(),
            });
        }
        if f.trunc() != self.eigenvalues.trunc() {
            return Err(Error::TruncationMismatch(format!(
                "expansion truncated at {:?}, operator at {:?}",
                f.trunc(),
                self.eigenvalues.trunc()
            )));
        }
        let values = f
            .values()
            .iter()
            .zip(self.eigenvalues.values())
            .map(|(a, l)| a * l)
            .collect();
        CoeffSeq::new(Basis::Hermite, f.trunc().to_vec(), values)
    }
}

/// `W_{σ̃_0} f` for a G-type or Schwartz symbol.
pub fn weyl_apply(symbol: &RadialSymbol, f: &CoeffSeq) -> Result<CoeffSeq> {
    WeylOperator::new(symbol, f.trunc(), DEFAULT_RULE_ORDER)?.apply(f)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualSpectrum {
    /// `s_k`, normalized like `σ_k`.
    pub s_k: CoeffSeq,
    /// Smallest `n` with `σ/(1+ρ)^{n/2}` square integrable on each axis.
    pub weight_exponent: u32,
    /// `‖σ/(1+ρ)^{n/2}‖₂` at that `n`.
    pub weighted_norm: f64,
    /// Least-squares slope of `ln|s_k|` against `ln(k+1)`; polynomial growth order.
    pub growth_exponent: Option<f64>,
}

/// One-axis `(n, ‖ρ^m e^{-bρ}/(1+ρ)^{n/2}‖₂²)`.
fn power_exp_weight(m: u32, b: f64) -> (u32, f64) {
    let two_m = 2.0 * m as f64;
    if b > 0.0 {
        (0, (ln_gamma(two_m + 1.0) - (two_m + 1.0) * (2.0 * b).ln()).exp())
    } else {
        // ∫ ρ^{2m} (1+ρ)^{-n} dρ = B(2m+1, n-2m-1).
        let n = 2 * m + 2;
        let nf = n as f64;
        (n, (ln_gamma(two_m + 1.0) + ln_gamma(nf - two_m - 1.0) - ln_gamma(nf)).exp())
    }
}

fn growth_exponent(seq: &CoeffSeq) -> Option<f64> {
    let floor = 1e-13 * seq.max_abs();
    let pts: Vec<(f64, f64)> = seq
        .graded()
        .iter()
        .filter(|(_, v)| v.norm() > floor && v.norm() > 0.0)
        .map(|(k, v)| (((k.order() + 1) as f64).ln(), v.norm().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}

/// `s_k` for symbols of any class, with the weighted-norm witness of the
/// dual class condition and the growth of `s_k`.
pub fn dual_symbol_sigma_k(symbol: &RadialSymbol, trunc: &[usize], rule_order: usize) -> Result<DualSpectrum> {
    let d = symbol.dim() as i32;
    let lambda = eigenvalues_from(&laguerre_pairings(symbol, trunc, rule_order)?)?;
    let s_k = lambda.scale(Complex64::new((2.0 * PI).powf(0.5 * d as f64), 0.0))?;
    let (weight_exponent, norm_sq) = match symbol.family() {
        SymbolFamily::Exp { b } => (0, (1.0 / (2.0 * b)).powi(d)),
        SymbolFamily::Laguerre(seq) => (0, seq.l2_norm_sq()),
        SymbolFamily::Poly { m, b } => {
            let (n, v) = power_exp_weight(*m, *b);
            (n, v.powi(d))
        }
        SymbolFamily::Const { c } => {
            let (n, v) = power_exp_weight(0, 0.0);
            (n, c * c * v.powi(d))
        }
    };
    if !norm_sq.is_finite() {
        return Err(Error::ClassViolation(format!(
            "weighted norm of the {} symbol is not finite",
            symbol.family().name()
        )));
    }
    let growth_exponent = growth_exponent(&s_k);
    Ok(DualSpectrum {
        s_k,
        weight_exponent,
        weighted_norm: norm_sq.sqrt(),
        growth_exponent,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualApplication {
    pub coeffs: CoeffSeq,
    /// Decay classification of the output, when enough coefficients are nonzero.
    pub decay: Option<DecayReport>,
}

/// `W_{σ̃} f = Σ λ_n f_n h_n` for a symbol of any class.
pub fn weyl_apply_dual(symbol: &RadialSymbol, f: &CoeffSeq) -> Result<DualApplication> {
    let coeffs = WeylOperator::dual(symbol, f.trunc(), DEFAULT_RULE_ORDER)?.apply(f)?;
    let decay = classify(&coeffs, &DecayConfig::default()).ok();
    Ok(DualApplication { coeffs, decay })
}

/// Per-axis table of `ψ_{m,k}` on the phase grid `(x_i, ξ_j)`, flat `i·N + j`
/// by flat `m·side + k`.
fn wigner_table(nodes: &[f64], side: usize) -> Vec<Vec<Complex64>> {
    let mut rows = Vec::with_capacity(nodes.len() * nodes.len());
    for &x in nodes {
        for &xi in nodes {
            let mut row = Vec::with_capacity(side * side);
            for m in 0..side {
                for k in 0..side {
                    row.push(wigner_axis(m, k, x, xi));
                }
            }
            rows.push(row);
        }
    }
    rows
}

struct PhaseSum<'a> {
    symbol: &'a RadialSymbol,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    tables: Vec<Vec<Vec<Complex64>>>,
    x: Vec<f64>,
    xi: Vec<f64>,
}

impl PhaseSum<'_> {
    /// Contracts axis `level` of `tensor` against each phase point in turn.
    fn accumulate(&mut self, level: usize, tensor: &[Complex64], weight: f64) -> Complex64 {
        let n = self.nodes.len();
        let width = self.tables[level][0].len();
        let rest = tensor.len() / width;
        let last = level + 1 == self.tables.len();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut reduced = vec![Complex64::new(0.0, 0.0); rest];
        for p in 0..n * n {
            let (i, j) = (p / n, p % n);
            self.x[level] = self.nodes[i];
            self.xi[level] = self.nodes[j];
            let w = weight * self.weights[i] * self.weights[j];
            let row = &self.tables[level][p];
            if last {
                let v: Complex64 = row.iter().zip(tensor).map(|(a, b)| a * b).sum();
                if v != Complex64::new(0.0, 0.0) {
                    sum += w * self.symbol.radialized().eval(&self.x, &self.xi) * v;
                }
            } else {
                reduced.iter_mut().for_each(|r| *r = Complex64::new(0.0, 0.0));
                for (c, a) in row.iter().enumerate() {
                    if *a == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for (r, t) in reduced.iter_mut().zip(&tensor[c * rest..(c + 1) * rest]) {
                        *r += a * t;
                    }
                }
                let next = reduced.clone();
                sum += self.accumulate(level + 1, &next, w);
            }
        }
        sum
    }
}

/// `(W_{σ̃_0} f)(g) = (2π)^{-d/2} ∫ σ̃_0 · W(f, ḡ)` over phase space, with
/// `W(f, ḡ) = Σ f_m g_k ψ_{m,k}` summed in closed form and the integral done
/// by tensor Gauss–Hermite rules in all `2d` variables.
pub fn weyl_direct(symbol: &RadialSymbol, f: &CoeffSeq, g: &CoeffSeq, rule_order: usize) -> Result<Complex64> {
    let d = symbol.dim();
    for s in [f, g] {
        if *s.basis() != Basis::Hermite {
            return Err(Error::BasisMismatch("Weyl operators act on Hermite expansions".into()));
        }
        if s.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: s.dim() });
        }
    }
    let sides: Vec<usize> = (0..d).map(|l| f.trunc()[l].max(g.trunc()[l]) + 1).collect();
    let shape: Vec<usize> = sides.iter().map(|s| s * s).collect();
    let pair_box = IndexBox::new(&shape.iter().map(|s| s - 1).collect::<Vec<_>>());
    let mut pairs = vec![Complex64::new(0.0, 0.0); pair_box.len()];
    for (m, fm) in f.graded() {
        for (k, gk) in g.graded() {
            let idx: Vec<usize> = (0..d).map(|l| m[l] * sides[l] + k[l]).collect();
            let flat = pair_box.flat(&MultiIndex::new(idx)).expect("inside the pair box");
            pairs[flat] += fm * gk;
        }
    }
    let rate = 1.0 + symbol.radialized().gaussian_rate();
    let norm = (2.0 * PI).powf(-0.5 * d as f64);
    let at_order = |order: usize| -> Result<Complex64> {
        let rule = hermite_rule(order)?.envelope(rate);
        let mut sum = PhaseSum {
            symbol,
            tables: sides.iter().map(|&s| wigner_table(&rule.nodes, s)).collect(),
            nodes: rule.nodes,
            weights: rule.weights,
            x: vec![0.0; d],
            xi: vec![0.0; d],
        };
        Ok(norm * sum.accumulate(0, &pairs, 1.0))
    };
    self_converge(rule_order, at_order, |a, b| value_change(*a, *b, GATE_RTOL, 1e-12))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    /// `distances[j][i]`: `max_n |((λ^{(j)}_n - λ_n) f_i)_n|`.
    pub distances: Vec<Vec<f64>>,
    /// Per test function, whether the distances never increase along `j`.
    pub monotone: Vec<bool>,
}

/// Strong-convergence probe of `W_{σ_j} → W_σ` on a finite test set.
pub fn convergence_probe(
    sequence: &[RadialSymbol],
    limit: &RadialSymbol,
    tests: &[CoeffSeq],
    rule_order: usize,
) -> Result<ProbeReport> {
    let d = limit.dim();
    let mut trunc = vec![0usize; d];
    for f in tests {
        if f.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: f.dim() });
        }
        for l in 0..d {
            trunc[l] = trunc[l].max(f.trunc()[l]);
        }
    }
    let reference = WeylOperator::dual(limit, &trunc, rule_order)?;
    let mut distances = Vec::with_capacity(sequence.len());
    for s in sequence {
        let op = WeylOperator::dual(s, &trunc, rule_order)?;
        let row = tests
            .iter()
            .map(|f| {
                f.graded()
                    .iter()
                    .map(|(n, v)| ((op.eigenvalues().get(n) - reference.eigenvalues().get(n)) * v).norm())
                    .fold(0.0, f64::max)
            })
            .collect();
        distances.push(row);
    }
    let monotone = (0..tests.len())
        .map(|i| distances.windows(2).all(|w: &[Vec<f64>]| w[1][i] <= w[0][i]))
        .collect();
    Ok(ProbeReport { distances, monotone })
}
