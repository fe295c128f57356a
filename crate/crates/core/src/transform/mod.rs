//! Analysis and synthesis between functions and coefficient sequences.

mod analysis;
mod disc;
mod gspace;

pub use analysis::{
    analyze, analyze_traced, exp_coefficients, hermite_analyze, hermite_synthesize, synthesize, synthesize_with_tail, tail_bound,
};
pub use disc::{f_disc, f_disc_direct, PolydiscPoint};
pub use gspace::{gspace_seminorm, GspaceConfig};

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::bases::quadrature::MAX_ORDER;
use crate::coeff::{Basis, CoeffSeq};
use crate::error::{Error, Result};

/// Default Gauss rule order per axis.
pub const DEFAULT_RULE_ORDER: usize = 200;

/// Relative change allowed between a rule and its doubled order.
pub const GATE_RTOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// The open orthant `(0, ∞)^d`.
    Orthant,
    /// All of `R^d`.
    Real,
}

type Evaluator = dyn Fn(&[f64]) -> Complex64 + Send + Sync;

/// A function on the orthant or on `R^d`, plus its envelope.
///
/// The per-axis `decay` rate fixes how quadrature rules are stretched: an
/// orthant function should behave like `e^{-b t_l}` times something of
/// polynomial growth, a function on `R^d` like `e^{-β x_l²}`.
#[derive(Clone)]
pub struct FunctionHandle {
    eval: Arc<Evaluator>,
    domain: Domain,
    decay: Vec<f64>,
    symbolic: Option<CoeffSeq>,
}

impl fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionHandle")
            .field("domain", &self.domain)
            .field("decay", &self.decay)
            .field("symbolic", &self.symbolic.is_some())
            .finish()
    }
}

impl FunctionHandle {
    /// Function on the orthant; default envelope `e^{-t_l/2}` per axis.
    pub fn orthant<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    {
        FunctionHandle {
            eval: Arc::new(f),
            domain: Domain::Orthant,
            decay: vec![0.5; dim],
            symbolic: None,
        }
    }

    /// Function on `R^d`; default envelope `e^{-x_l²/2}` per axis.
    pub fn real<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    {
        FunctionHandle {
            eval: Arc::new(f),
            domain: Domain::Real,
            decay: vec![0.5; dim],
            symbolic: None,
        }
    }

    pub fn with_decay(mut self, decay: Vec<f64>) -> Result<Self> {
        if decay.len() != self.decay.len() {
            return Err(Error::DimensionMismatch {
                expected: self.decay.len(),
                got: decay.len(),
            });
        }
        if let Some(b) = decay.iter().find(|b| !(**b > 0.0) || !b.is_finite()) {
            return Err(Error::InvalidArgument(format!("decay rate {b} must be positive")));
        }
        self.decay = decay;
        Ok(self)
    }

    /// `e^{-b(t_1 + ... + t_d)}`.
    pub fn exp_decay(dim: usize, b: f64) -> Result<Self> {
        FunctionHandle::orthant(dim, move |t| Complex64::new((-b * t.iter().sum::<f64>()).exp(), 0.0))
            .with_decay(vec![b; dim])
    }

    /// The finite expansion `Σ a_n φ_n` in the sequence's own basis.
    pub fn from_coefficients(seq: CoeffSeq) -> Self {
        let dim = seq.dim();
        let inner = seq.clone();
        let mut h = match seq.basis() {
            Basis::Laguerre { .. } => {
                FunctionHandle::orthant(dim, move |t| synthesize(&inner, t).expect("dimension checked"))
            }
            Basis::Hermite => FunctionHandle::real(dim, move |x| synthesize(&inner, x).expect("dimension checked")),
        };
        h.symbolic = Some(seq);
        h
    }

    pub fn dim(&self) -> usize {
        self.decay.len()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn decay(&self) -> &[f64] {
        &self.decay
    }

    /// Coefficients when the handle was built from a finite expansion.
    pub fn symbolic(&self) -> Option<&CoeffSeq> {
        self.symbolic.as_ref()
    }

    pub fn eval(&self, t: &[f64]) -> Complex64 {
        (self.eval)(t)
    }

    pub(crate) fn expect(&self, domain: Domain, dim: usize) -> Result<()> {
        if self.domain != domain {
            return Err(Error::InvalidArgument(format!(
                "function is defined on {:?}, expected {:?}",
                self.domain, domain
            )));
        }
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: self.dim(),
            });
        }
        Ok(())
    }
}

/// Rule orders tried by a self-convergence gate and the change between
/// consecutive orders, in units of the gate tolerance.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Convergence {
    pub orders: Vec<usize>,
    pub changes: Vec<f64>,
}

/// Evaluates `compute` at `order`, `2 order` and, if needed, `4 order`,
/// accepting the first doubling whose `change` is at most 1.
pub(crate) fn self_converge<T, C, D>(order: usize, compute: C, change: D) -> Result<T>
where
    C: Fn(usize) -> Result<T>,
    D: Fn(&T, &T) -> f64,
{
    self_converge_traced(order, compute, change).map(|(v, _)| v)
}

pub(crate) fn self_converge_traced<T, C, D>(order: usize, compute: C, change: D) -> Result<(T, Convergence)>
where
    C: Fn(usize) -> Result<T>,
    D: Fn(&T, &T) -> f64,
{
    let mut prev = compute(order)?;
    let mut trail = Convergence {
        orders: vec![order],
        changes: Vec::new(),
    };
    let mut cur_order = order;
    let mut worst = f64::INFINITY;
    for _ in 0..2 {
        let next_order = 2 * cur_order;
        if next_order > MAX_ORDER {
            break;
        }
        let next = compute(next_order)?;
        let delta = change(&prev, &next);
        trail.orders.push(next_order);
        trail.changes.push(delta);
        if delta <= 1.0 {
            return Ok((next, trail));
        }
        worst = delta;
        prev = next;
        cur_order = next_order;
    }
    Err(Error::UnderResolved(format!(
        "rule orders {}..={} disagree ({:.3e} x tolerance)",
        order, cur_order, worst
    )))
}

/// `max_n |a_n - b_n| / (rtol · max_n |b_n|)`, zero for identical data.
pub(crate) fn seq_change(a: &[Complex64], b: &[Complex64], rtol: f64) -> f64 {
    let scale = b.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let diff = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    if diff == 0.0 {
        return 0.0;
    }
    diff / (rtol * scale.max(f64::MIN_POSITIVE))
}

/// `|a - b| / (rtol |b| + atol)`.
pub(crate) fn value_change(a: Complex64, b: Complex64, rtol: f64, atol: f64) -> f64 {
    let diff = (a - b).norm();
    if diff == 0.0 {
        return 0.0;
    }
    diff / (rtol * b.norm() + atol)
}

pub(crate) fn check_rule_order(order: usize, trunc: &[usize]) -> Result<()> {
    let need = 2 * trunc.iter().copied().max().unwrap_or(0) + 8;
    if order < need {
        return Err(Error::UnderResolved(format!(
            "rule order {order} is below 2·max(trunc)+8 = {need}"
        )));
    }
    if order > MAX_ORDER {
        return Err(Error::InvalidArgument(format!("rule order {order} exceeds {MAX_ORDER}")));
    }
    Ok(())
}
