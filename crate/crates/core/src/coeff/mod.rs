//! Truncated coefficient sequences and the sequence-space norms on them.

mod decay;
pub mod lcoef;

pub use decay::{classify, fit_decay, DecayConfig, DecayFit, DecayReport, Verdict};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::multi_index::{IndexBox, MultiIndex};

/// Which orthonormal family the coefficients refer to.
#[derive(Debug, Clone, PartialEq)]
pub enum Basis {
    /// Tensor Laguerre functions with one order `γ_l >= 0` per axis.
    Laguerre { gamma: Vec<f64> },
    Hermite,
}

impl Basis {
    pub fn laguerre(gamma: Vec<f64>) -> Self {
        Basis::Laguerre { gamma }
    }

    pub fn gamma(&self) -> Option<&[f64]> {
        match self {
            Basis::Laguerre { gamma } => Some(gamma),
            Basis::Hermite => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Basis::Laguerre { .. } => "laguerre",
            Basis::Hermite => "hermite",
        }
    }

    fn same_family(&self, other: &Basis) -> bool {
        matches!(
            (self, other),
            (Basis::Laguerre { .. }, Basis::Laguerre { .. }) | (Basis::Hermite, Basis::Hermite)
        )
    }
}

/// Dense complex coefficients over the box `n_l <= trunc_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq {
    basis: Basis,
    index_box: IndexBox,
    values: Vec<Complex64>,
}

impl CoeffSeq {
    /// Values are row-major over the truncation box (axis 0 slowest).
    pub fn new(basis: Basis, trunc: Vec<usize>, values: Vec<Complex64>) -> Result<Self> {
        if trunc.is_empty() {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if let Basis::Laguerre { gamma } = &basis {
            if gamma.len() != trunc.len() {
                return Err(Error::DimensionMismatch {
                    expected: trunc.len(),
                    got: gamma.len(),
                });
            }
            if let Some(g) = gamma.iter().find(|g| !(**g >= 0.0) || !g.is_finite()) {
                return Err(Error::InvalidArgument(format!("Laguerre order γ = {g} must be finite and >= 0")));
            }
        }
        let index_box = IndexBox::new(&trunc);
        if values.len() != index_box.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for truncation {:?}, got {}",
                index_box.len(),
                trunc,
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite coefficient at {}",
                index_box.unflat(pos)
            )));
        }
        Ok(CoeffSeq {
            basis,
            index_box,
            values,
        })
    }

    pub fn zeros(basis: Basis, trunc: Vec<usize>) -> Result<Self> {
        let len = IndexBox::new(&trunc).len();
        Self::new(basis, trunc, vec![Complex64::new(0.0, 0.0); len])
    }

    pub fn from_fn<F>(basis: Basis, trunc: Vec<usize>, mut f: F) -> Result<Self>
    where
        F: FnMut(&MultiIndex) -> Complex64,
    {
        let b = IndexBox::new(&trunc);
        let values = b.iter().map(|n| f(&n)).collect();
        Self::new(basis, trunc, values)
    }

    /// Real-valued one-dimensional sequence, convenient for tests and fixtures.
    pub fn from_real_1d(basis: Basis, values: &[f64]) -> Result<Self> {
        let trunc = vec![values.len().saturating_sub(1)];
        Self::new(basis, trunc, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.index_box.dim()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn trunc(&self) -> &[usize] {
        self.index_box.trunc()
    }

    pub fn index_box(&self) -> &IndexBox {
        &self.index_box
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `a_n`, or zero outside the truncation box.
    pub fn get(&self, n: &MultiIndex) -> Complex64 {
        self.index_box
            .flat(n)
            .map_or(Complex64::new(0.0, 0.0), |i| self.values[i])
    }

    pub fn set(&mut self, n: &MultiIndex, v: Complex64) -> Result<()> {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite coefficient at {n}")));
        }
        let i = self.index_box.flat(n).ok_or_else(|| {
            Error::TruncationMismatch(format!("index {n} outside truncation {:?}", self.trunc()))
        })?;
        self.values[i] = v;
        Ok(())
    }

    /// `(n, a_n)` in graded-lexicographic order.
    pub fn graded(&self) -> Vec<(MultiIndex, Complex64)> {
        self.index_box
            .graded_lex()
            .into_iter()
            .map(|i| (self.index_box.unflat(i), self.values[i]))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.norm() == 0.0)
    }

    /// New sequence with `b_n = f(n, a_n)` over the same basis and box.
    pub fn map_indexed<F>(&self, mut f: F) -> Result<CoeffSeq>
    where
        F: FnMut(&MultiIndex, Complex64) -> Complex64,
    {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| f(&self.index_box.unflat(i), v))
            .collect();
        CoeffSeq::new(self.basis.clone(), self.trunc().to_vec(), values)
    }

    pub fn scale(&self, lambda: Complex64) -> Result<CoeffSeq> {
        self.map_indexed(|_, v| lambda * v)
    }

    /// Copy with a different truncation: entries outside the new box are
    /// dropped, new entries are zero.
    pub fn retruncate(&self, trunc: Vec<usize>) -> Result<CoeffSeq> {
        if trunc.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: trunc.len(),
            });
        }
        CoeffSeq::from_fn(self.basis.clone(), trunc, |n| self.get(n))
    }

    /// `Σ |a_n|²` in graded-lex order.
    pub fn l2_norm_sq(&self) -> f64 {
        self.index_box
            .graded_lex()
            .into_iter()
            .map(|i| self.values[i].norm_sqr())
            .sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// `sup_n |a_n| (|n|+1)^j`.
pub fn s_seminorm(seq: &CoeffSeq, j: u32) -> f64 {
    seq.graded()
        .iter()
        .map(|(n, v)| v.norm() * ((n.order() + 1) as f64).powi(j as i32))
        .fold(0.0, f64::max)
}

fn check_alpha_a(alpha: f64, a: f64) -> Result<()> {
    if !(alpha >= 1.0) || !(a > 1.0) || !alpha.is_finite() || !a.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "need α >= 1 and a > 1, got α = {alpha}, a = {a}"
        )));
    }
    Ok(())
}

/// `sup_n |a_n| a^{|n|^{1/α}}`, evaluated in log space.
pub fn s_alpha_norm(seq: &CoeffSeq, alpha: f64, a: f64) -> Result<f64> {
    check_alpha_a(alpha, a)?;
    let ln_a = a.ln();
    Ok(seq
        .graded()
        .iter()
        .filter(|(_, v)| v.norm() > 0.0)
        .map(|(n, v)| (v.norm().ln() + (n.order() as f64).powf(1.0 / alpha) * ln_a).exp())
        .fold(0.0, f64::max))
}

/// `Σ_n |b_n| a^{-|n|^{1/α}}`, summed in graded-lex order.
pub fn dual_seminorm(seq: &CoeffSeq, alpha: f64, a: f64) -> Result<f64> {
    check_alpha_a(alpha, a)?;
    let ln_a = a.ln();
    Ok(seq
        .graded()
        .iter()
        .map(|(n, v)| v.norm() * (-(n.order() as f64).powf(1.0 / alpha) * ln_a).exp())
        .sum())
}

/// `{x_n y_m}_{(n,m)}` over the concatenated index space.
pub fn coeff_tensor(x: &CoeffSeq, y: &CoeffSeq) -> Result<CoeffSeq> {
    if !x.basis.same_family(&y.basis) {
        return Err(Error::BasisMismatch(format!(
            "cannot tensor {} with {} coefficients",
            x.basis.name(),
            y.basis.name()
        )));
    }
    let basis = match (&x.basis, &y.basis) {
        (Basis::Laguerre { gamma: gx }, Basis::Laguerre { gamma: gy }) => {
            Basis::laguerre(gx.iter().chain(gy).copied().collect())
        }
        _ => Basis::Hermite,
    };
    let trunc: Vec<usize> = x.trunc().iter().chain(y.trunc()).copied().collect();
    let mut values = Vec::with_capacity(x.len() * y.len());
    for &xv in &x.values {
        for &yv in &y.values {
            values.push(xv * yv);
        }
    }
    CoeffSeq::new(basis, trunc, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn lag1(values: &[f64]) -> CoeffSeq {
        CoeffSeq::from_real_1d(Basis::laguerre(vec![0.0]), values).unwrap()
    }

    fn delta0(n: usize) -> CoeffSeq {
        let mut v = vec![0.0; n + 1];
        v[0] = 1.0;
        lag1(&v)
    }

    #[test]
    fn rejects_bad_construction() {
        let b = Basis::laguerre(vec![0.0]);
        assert!(CoeffSeq::new(b.clone(), vec![2], vec![Complex64::new(1.0, 0.0); 2]).is_err());
        assert!(CoeffSeq::new(b.clone(), vec![0], vec![Complex64::new(f64::NAN, 0.0)]).is_err());
        assert!(CoeffSeq::new(Basis::laguerre(vec![0.0, 0.0]), vec![1], vec![Complex64::new(0.0, 0.0); 2]).is_err());
    }

    #[test]
    fn seminorm_fixtures() {
        assert_eq!(s_seminorm(&delta0(5), 3), 1.0);
        let ones = lag1(&[1.0; 21]);
        assert_eq!(s_seminorm(&ones, 1), 21.0);
    }

    #[test]
    fn seminorm_does_not_grow_when_tail_is_zeroed() {
        let full: Vec<f64> = (0..=32).map(|n| (2.0 / 3.0) * 3f64.powi(-n)).collect();
        let mut prev = s_seminorm(&lag1(&full), 2);
        assert!(prev.is_finite());
        for cut in (1..=32).rev() {
            let mut v = full.clone();
            for x in v.iter_mut().skip(cut) {
                *x = 0.0;
            }
            let cur = s_seminorm(&lag1(&v), 2);
            assert!(cur <= prev);
            prev = cur;
        }
        // Only a_0 remains once the peak at n = 1 is removed.
        assert_eq!(prev, 2.0 / 3.0);
    }

    #[test]
    fn s_alpha_fixtures() {
        assert_eq!(s_alpha_norm(&delta0(4), 1.0, 7.0).unwrap(), 1.0);
        let geo: Vec<f64> = (0..=32).map(|n| 3f64.powi(-n)).collect();
        assert_relative_eq!(s_alpha_norm(&lag1(&geo), 1.0, 2.0).unwrap(), 1.0);
        assert_relative_eq!(
            s_alpha_norm(&lag1(&geo), 1.0, 4.0).unwrap(),
            (4.0f64 / 3.0).powi(32),
            max_relative = 1e-12
        );
    }

    #[test]
    fn dual_fixtures() {
        assert_eq!(dual_seminorm(&delta0(3), 1.0, 2.0).unwrap(), 1.0);
        let ones = lag1(&[1.0; 61]);
        assert_relative_eq!(dual_seminorm(&ones, 1.0, 2.0).unwrap(), 2.0, max_relative = 1e-15);
        let lin: Vec<f64> = (0..=64).map(|n| n as f64 + 1.0).collect();
        let e = std::f64::consts::E;
        // Σ (n+1) x^n = 1/(1-x)² at x = 1/e; the tail beyond 64 is below 1e-25.
        let closed = 1.0 / (1.0 - 1.0 / e).powi(2);
        assert_relative_eq!(dual_seminorm(&lag1(&lin), 1.0, e).unwrap(), closed, max_relative = 1e-13);
        assert_relative_eq!(closed, e * e / ((e - 1.0) * (e - 1.0)), max_relative = 1e-15);
    }

    #[test]
    fn tensor_of_deltas_and_projection() {
        let t = coeff_tensor(&delta0(0), &delta0(0)).unwrap();
        assert_eq!(t.trunc(), &[0, 0]);
        assert_eq!(t.values()[0], Complex64::new(1.0, 0.0));

        let x = lag1(&[0.5, -0.25, 2.0]);
        let y = lag1(&[3.0, 1.0]);
        let t = coeff_tensor(&x, &y).unwrap();
        for n in 0..3 {
            assert_eq!(t.get(&MultiIndex::new(vec![n, 0])), x.values()[n] * y.values()[0]);
        }
        let h = CoeffSeq::from_real_1d(Basis::Hermite, &[1.0]).unwrap();
        assert!(matches!(coeff_tensor(&x, &h), Err(Error::BasisMismatch(_))));
    }
}
