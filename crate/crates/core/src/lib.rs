//! Laguerre and Hermite spectral methods on the orthant and phase space.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bases;
pub mod coeff;
pub mod error;
pub mod hankel;
pub mod multi_index;
pub mod tensor;
pub mod transform;
pub mod weyl;

pub use coeff::{Basis, CoeffSeq};
pub use error::{Error, Result};
pub use multi_index::{IndexBox, MultiIndex};
pub use transform::{Convergence, FunctionHandle};
