//! Weyl operators with radial symbols, which act diagonally on Hermite
//! expansions, together with the Wigner transforms that define them.

mod operator;
pub mod symspec;
mod wigner;

pub use operator::{
    convergence_probe, dual_symbol_sigma_k, symbol_sigma_k, weyl_apply, weyl_apply_dual, weyl_direct, DualApplication,
    DualSpectrum, ProbeReport, WeylOperator, DEFAULT_PHASE_RULE_ORDER,
};
pub use wigner::{wigner_direct, wigner_hermite};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::coeff::{Basis, CoeffSeq};
use crate::error::{Error, Result};
use crate::transform::synthesize;

/// Smallest exponential rate accepted for the `e^{-bρ}` family.
pub const MIN_EXP_RATE: f64 = 0.75;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolClass {
    GType,
    Schwartz,
    WeightedDual,
}

impl SymbolClass {
    pub fn name(self) -> &'static str {
        match self {
            SymbolClass::GType => "g-type",
            SymbolClass::Schwartz => "schwartz",
            SymbolClass::WeightedDual => "weighted-dual",
        }
    }
}

impl fmt::Display for SymbolClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SymbolClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g-type" => Ok(SymbolClass::GType),
            "schwartz" => Ok(SymbolClass::Schwartz),
            "weighted-dual" => Ok(SymbolClass::WeightedDual),
            _ => Err(Error::InvalidArgument(format!("unknown symbol class `{s}`"))),
        }
    }
}

/// Concrete radial profiles `σ(ρ_1, ..., ρ_d)`.
#[derive(Debug, Clone, PartialEq)]
pub enum SymbolFamily {
    /// `e^{-b(ρ_1 + ... + ρ_d)}`.
    Exp { b: f64 },
    /// A finite combination of `𝓛_n^0(ρ)`.
    Laguerre(CoeffSeq),
    /// `∏ ρ_l^m e^{-bρ_l}`, with `b = 0` allowed.
    Poly { m: u32, b: f64 },
    Const { c: f64 },
}

impl SymbolFamily {
    pub fn name(&self) -> &'static str {
        match self {
            SymbolFamily::Exp { .. } => "exp",
            SymbolFamily::Laguerre(_) => "laguerre",
            SymbolFamily::Poly { .. } => "poly",
            SymbolFamily::Const { .. } => "const",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSymbol {
    family: SymbolFamily,
    class: SymbolClass,
    dim: usize,
}

impl RadialSymbol {
    pub fn new(family: SymbolFamily, class: SymbolClass, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        match &family {
            SymbolFamily::Exp { b } => {
                if !(*b >= MIN_EXP_RATE) || !b.is_finite() {
                    return Err(Error::InvalidArgument(format!(
                        "exponential rate b = {b} is below the validated range b >= {MIN_EXP_RATE}"
                    )));
                }
            }
            SymbolFamily::Laguerre(seq) => {
                if seq.dim() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: seq.dim() });
                }
                match seq.basis() {
                    Basis::Laguerre { gamma } if gamma.iter().all(|&g| g == 0.0) => {}
                    _ => return Err(Error::BasisMismatch("symbol combinations use 𝓛_n with γ = 0".into())),
                }
            }
            SymbolFamily::Poly { b, .. } => {
                if !(*b >= 0.0) || !b.is_finite() {
                    return Err(Error::InvalidArgument(format!("rate b = {b} must be non-negative")));
                }
            }
            SymbolFamily::Const { c } => {
                if !c.is_finite() {
                    return Err(Error::InvalidArgument(format!("constant {c} is not finite")));
                }
            }
        }
        let decays = match &family {
            SymbolFamily::Poly { b, .. } => *b > 0.0,
            SymbolFamily::Const { c } => *c == 0.0,
            _ => true,
        };
        if !decays && class != SymbolClass::WeightedDual {
            return Err(Error::ClassViolation(format!(
                "a non-decaying {} symbol is not in the {class} class",
                family.name()
            )));
        }
        Ok(RadialSymbol { family, class, dim })
    }

    pub fn exp(dim: usize, b: f64) -> Result<Self> {
        Self::new(SymbolFamily::Exp { b }, SymbolClass::GType, dim)
    }

    pub fn laguerre(seq: CoeffSeq) -> Result<Self> {
        let d = seq.dim();
        Self::new(SymbolFamily::Laguerre(seq), SymbolClass::GType, d)
    }

    /// `∏ ρ_l^m e^{-bρ_l}`, in the weighted-dual class.
    pub fn poly(dim: usize, m: u32, b: f64) -> Result<Self> {
        Self::new(SymbolFamily::Poly { m, b }, SymbolClass::WeightedDual, dim)
    }

    pub fn constant(dim: usize, c: f64) -> Result<Self> {
        Self::new(SymbolFamily::Const { c }, SymbolClass::WeightedDual, dim)
    }

    pub fn family(&self) -> &SymbolFamily {
        &self.family
    }

    pub fn class(&self) -> SymbolClass {
        self.class
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `σ(ρ)`.
    pub fn eval(&self, rho: &[f64]) -> Complex64 {
        match &self.family {
            SymbolFamily::Exp { b } => Complex64::new((-b * rho.iter().sum::<f64>()).exp(), 0.0),
            SymbolFamily::Laguerre(seq) => synthesize(seq, rho).expect("dimension checked"),
            SymbolFamily::Poly { m, b } => Complex64::new(
                rho.iter().map(|&r| r.powi(*m as i32) * (-b * r).exp()).product(),
                0.0,
            ),
            SymbolFamily::Const { c } => Complex64::new(*c, 0.0),
        }
    }

    /// Per-axis rate `b` of the exponential factor `e^{-bρ_l}`.
    pub(crate) fn exp_rate(&self) -> f64 {
        match &self.family {
            SymbolFamily::Exp { b } | SymbolFamily::Poly { b, .. } => *b,
            SymbolFamily::Laguerre(_) => 0.5,
            SymbolFamily::Const { .. } => 0.0,
        }
    }

    pub fn radialized(&self) -> RadializedSymbol<'_> {
        RadializedSymbol { symbol: self }
    }
}

/// The phase-space function `σ̃_0(x, ξ) = σ(2(x_1² + ξ_1²), ..., 2(x_d² + ξ_d²))`.
#[derive(Debug, Clone, Copy)]
pub struct RadializedSymbol<'a> {
    symbol: &'a RadialSymbol,
}

impl RadializedSymbol<'_> {
    pub fn eval(&self, x: &[f64], xi: &[f64]) -> Complex64 {
        let rho: Vec<f64> = x.iter().zip(xi).map(|(a, b)| 2.0 * (a * a + b * b)).collect();
        self.symbol.eval(&rho)
    }

    /// Gaussian rate of `σ̃_0` per phase-space variable.
    pub fn gaussian_rate(&self) -> f64 {
        2.0 * self.symbol.exp_rate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_checks() {
        assert!(RadialSymbol::exp(1, 0.5).is_err());
        assert!(RadialSymbol::exp(1, 0.75).is_ok());
        assert!(matches!(
            RadialSymbol::new(SymbolFamily::Const { c: 1.0 }, SymbolClass::GType, 1),
            Err(Error::ClassViolation(_))
        ));
        assert!(RadialSymbol::new(SymbolFamily::Poly { m: 1, b: 1.0 }, SymbolClass::Schwartz, 1).is_ok());
        let g1 = CoeffSeq::from_real_1d(Basis::laguerre(vec![1.0]), &[1.0]).unwrap();
        assert!(RadialSymbol::laguerre(g1).is_err());
    }

    #[test]
    fn radialized_symbol_is_rotation_invariant() {
        let s = RadialSymbol::poly(2, 2, 1.0).unwrap();
        let r = s.radialized();
        let (x, xi) = ([0.7, -0.3], [0.2, 1.1]);
        let base = r.eval(&x, &xi);
        for k in 0..10 {
            let a = 0.37 * k as f64;
            let (c, s) = (a.cos(), a.sin());
            let xr = [c * x[0] - s * xi[0], x[1]];
            let xir = [s * x[0] + c * xi[0], xi[1]];
            assert!((r.eval(&xr, &xir) - base).norm() < 1e-12 * base.norm());
        }
    }

    #[test]
    fn ground_state_symbol_radializes_to_a_gaussian() {
        let seq = CoeffSeq::from_real_1d(Basis::laguerre(vec![0.0]), &[1.0]).unwrap();
        let s = RadialSymbol::laguerre(seq).unwrap();
        let v = s.radialized().eval(&[0.4], &[-0.9]);
        assert!((v.re - (-(0.16f64 + 0.81)).exp()).abs() < 1e-15);
    }
}
