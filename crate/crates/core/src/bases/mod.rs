//! Orthogonal function families, Bessel functions and Gauss rules.

mod bessel;
mod hermite;
mod laguerre;
pub mod quadrature;
mod recurrence;

pub use bessel::{bessel_j, bessel_j_reduced};
pub use hermite::{hermite_fn, hermite_fn_nd, hermite_fn_row};
pub use laguerre::{
    laguerre_derivative_bound, laguerre_exp_derivative, laguerre_fn, laguerre_fn_1d, laguerre_fn_row,
    laguerre_norm, laguerre_poly,
};
pub use quadrature::{
    gauss_hermite_rule, gauss_laguerre_rule, gauss_legendre_rule, EnvelopeRule, QuadratureRule, RuleKind,
};
