//! The Hankel–Clifford transform and its fractional powers `J_{z,γ}`,
//! `I_{z,γ}`, on Laguerre functions (exact) and by quadrature.

mod apply;
mod norm_identity;

pub use apply::{iz_apply, iz_apply_many, jz_apply, jz_apply_many};
pub use norm_identity::{norm_identity_check, NormIdentity};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::bases::laguerre_fn_1d;
use crate::bases::quadrature::laguerre_rule;
use crate::bases::laguerre_fn_row;
use crate::coeff::{Basis, CoeffSeq};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::tensor::{multi_mode_product, Matrix};

/// Angles `θ_l ∈ (-π, π] \ {0}` with `z_l = e^{iθ_l}`.
///
/// The angle, not `z`, is stored: `sgn θ` enters the phase of the transform
/// and `θ = π` differs from `θ = -π` once `γ > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseParam {
    thetas: Vec<f64>,
}

impl PhaseParam {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        for &t in &thetas {
            if !(t > -PI && t <= PI) || t == 0.0 {
                return Err(Error::InvalidArgument(format!("θ = {t} must lie in (-π, π] \\ {{0}}")));
            }
        }
        Ok(PhaseParam { thetas })
    }

    /// `θ = π` on every axis, i.e. the Hankel–Clifford transform itself.
    pub fn hankel(dim: usize) -> Self {
        PhaseParam { thetas: vec![PI; dim] }
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn dim(&self) -> usize {
        self.thetas.len()
    }

    pub fn z(&self) -> Vec<Complex64> {
        self.thetas.iter().map(|&t| Complex64::from_polar(1.0, t)).collect()
    }

    /// The inverse parameter `z̄`. Maps `θ = π` to itself.
    pub fn conj(&self) -> Self {
        PhaseParam {
            thetas: self.thetas.iter().map(|&t| if t == PI { PI } else { -t }).collect(),
        }
    }

    /// `sin²(θ_l/2)`, the dilation each axis undergoes.
    pub fn scales(&self) -> Vec<f64> {
        self.thetas.iter().map(|&t| (0.5 * t).sin().powi(2)).collect()
    }
}

/// One axis of the closed form, without the `(-1)^n`:
/// `2 e^{-iγθ/2} e^{iγπ sgn(θ)/2} (1 - e^{iθ})^{-1} |sin(θ/2)|^{-γ}`.
pub(crate) fn axis_prefactor(theta: f64, gamma: f64) -> Complex64 {
    let phase = Complex64::from_polar(1.0, -0.5 * gamma * theta + 0.5 * gamma * PI * theta.signum());
    let s = (0.5 * theta).sin().abs();
    2.0 * phase / (1.0 - Complex64::from_polar(1.0, theta)) * s.powf(-gamma)
}

/// The function `t ↦ prefactor · 𝓛_n^γ(t_1/s_1, ..., t_d/s_d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledLaguerreForm {
    pub prefactor: Complex64,
    pub scales: Vec<f64>,
    pub index: MultiIndex,
    pub gamma: Vec<f64>,
}

impl ScaledLaguerreForm {
    /// The plain Laguerre function `𝓛_n^γ`.
    pub fn identity(index: MultiIndex, gamma: Vec<f64>) -> Self {
        let d = index.dim();
        ScaledLaguerreForm {
            prefactor: Complex64::new(1.0, 0.0),
            scales: vec![1.0; d],
            index,
            gamma,
        }
    }

    pub fn eval(&self, t: &[f64]) -> Complex64 {
        let v: f64 = (0..self.index.dim())
            .map(|l| laguerre_fn_1d(self.index[l], self.gamma[l], t[l] / self.scales[l]))
            .product();
        self.prefactor * v
    }

    /// `|prefactor|² ∏ s_l^{γ_l+1}`, the squared `L²(t^γ dt)` norm; 1 for
    /// every form produced by a transform of a Laguerre function.
    pub fn norm_sq(&self) -> f64 {
        self.prefactor.norm_sqr()
            * self
                .scales
                .iter()
                .zip(&self.gamma)
                .map(|(s, g)| s.powf(g + 1.0))
                .product::<f64>()
    }

    /// Applies `J_{z,γ}` on the axes in `axes` (0-based, one angle each).
    ///
    /// `J` has a kernel depending on `x_l t_l` only, so on `𝓛_n(t/S₀)` it
    /// yields `S₀^{γ+1} (J𝓛_n)(S₀ t)`: the dilations divide and the
    /// prefactors multiply.
    pub fn apply_partial(&self, z: &PhaseParam, axes: &[usize]) -> Result<Self> {
        let d = self.index.dim();
        if z.dim() != axes.len() {
            return Err(Error::DimensionMismatch {
                expected: axes.len(),
                got: z.dim(),
            });
        }
        let mut out = self.clone();
        for (k, &l) in axes.iter().enumerate() {
            if l >= d {
                return Err(Error::AxisOutOfRange { axis: l, dim: d });
            }
            if axes[..k].contains(&l) {
                return Err(Error::InvalidArgument(format!("axis {l} listed twice")));
            }
            let theta = z.thetas[k];
            let g = self.gamma[l];
            let s0 = self.scales[l];
            let sign = if self.index[l].is_multiple_of(2) { 1.0 } else { -1.0 };
            out.prefactor *= sign * axis_prefactor(theta, g) * s0.powf(g + 1.0);
            out.scales[l] = (0.5 * theta).sin().powi(2) / s0;
        }
        Ok(out)
    }

    pub fn apply(&self, z: &PhaseParam) -> Result<Self> {
        let axes: Vec<usize> = (0..self.index.dim()).collect();
        self.apply_partial(z, &axes)
    }
}

/// `J_{z,γ} 𝓛_n^γ` in closed form: a dilation by `sin²(θ_l/2)` per axis and
/// a unimodular-times-scale prefactor.
pub fn jz_on_laguerre(n: &MultiIndex, gamma: &[f64], z: &PhaseParam) -> Result<ScaledLaguerreForm> {
    check_gamma(n, gamma)?;
    ScaledLaguerreForm::identity(n.clone(), gamma.to_vec()).apply(z)
}

/// `J^{(Λ')}_{z',γ}` acting on the axes `axes` (0-based) only.
pub fn partial_jz_on_laguerre(
    n: &MultiIndex,
    gamma: &[f64],
    z: &PhaseParam,
    axes: &[usize],
) -> Result<ScaledLaguerreForm> {
    check_gamma(n, gamma)?;
    ScaledLaguerreForm::identity(n.clone(), gamma.to_vec()).apply_partial(z, axes)
}

fn check_gamma(n: &MultiIndex, gamma: &[f64]) -> Result<()> {
    if n.dim() != gamma.len() {
        return Err(Error::DimensionMismatch {
            expected: n.dim(),
            got: gamma.len(),
        });
    }
    Ok(())
}

/// Partial Hankel–Clifford transform on coefficients: the sign flip
/// `b_n = (-1)^{Σ_{λ∈Λ} n_λ} a_n` over the 0-based axes `axes`.
pub fn hc_coeff(seq: &CoeffSeq, axes: &[usize]) -> Result<CoeffSeq> {
    let gamma = match seq.basis() {
        Basis::Laguerre { gamma } => gamma,
        Basis::Hermite => return Err(Error::BasisMismatch("Hankel–Clifford needs Laguerre coefficients".into())),
    };
    for &l in axes {
        if l >= seq.dim() {
            return Err(Error::AxisOutOfRange { axis: l, dim: seq.dim() });
        }
        if gamma[l] != 0.0 {
            return Err(Error::BasisMismatch(format!(
                "axis {l} has γ = {}, the sign-flip form needs γ = 0",
                gamma[l]
            )));
        }
    }
    seq.map_indexed(|n, v| {
        let s: usize = axes.iter().map(|&l| n[l]).sum();
        if s.is_multiple_of(2) {
            v
        } else {
            -v
        }
    })
}

/// `⟨𝓛_j^γ(·/s), 𝓛_m^γ⟩_{t^γ dt}` for `m, j <= nmax`, as an
/// `(nmax+1) x (nmax+1)` matrix indexed `[m, j]`. Exact Gauss quadrature.
fn dilation_overlap(nmax: usize, gamma: f64, s: f64) -> Result<Matrix> {
    let rule = laguerre_rule(nmax + 8, gamma)?.envelope(0.5 * (1.0 + 1.0 / s));
    let plain: Vec<Vec<f64>> = rule.nodes.iter().map(|&x| laguerre_fn_row(nmax, gamma, x)).collect();
    let dilated: Vec<Vec<f64>> = rule.nodes.iter().map(|&x| laguerre_fn_row(nmax, gamma, x / s)).collect();
    Ok(Matrix::from_real(nmax + 1, nmax + 1, |m, j| {
        rule.weights
            .iter()
            .enumerate()
            .map(|(i, w)| w * plain[i][m] * dilated[i][j])
            .sum()
    }))
}

/// `J_{z,γ}` on a Laguerre expansion, re-expanded in the same truncated
/// basis. Exact up to the truncation of the dilated functions.
pub fn jz_coeff(seq: &CoeffSeq, z: &PhaseParam) -> Result<CoeffSeq> {
    let axes: Vec<usize> = (0..seq.dim()).collect();
    partial_jz_coeff(seq, z, &axes)
}

/// [`jz_coeff`] on the 0-based axes `axes` only.
pub fn partial_jz_coeff(seq: &CoeffSeq, z: &PhaseParam, axes: &[usize]) -> Result<CoeffSeq> {
    let gamma = seq
        .basis()
        .gamma()
        .ok_or_else(|| Error::BasisMismatch("fractional transforms need Laguerre coefficients".into()))?
        .to_vec();
    if z.dim() != axes.len() {
        return Err(Error::DimensionMismatch {
            expected: axes.len(),
            got: z.dim(),
        });
    }
    let d = seq.dim();
    let mut mats = Vec::with_capacity(d);
    for l in 0..d {
        let nmax = seq.trunc()[l];
        let m = match axes.iter().position(|&a| a == l) {
            None => Matrix::from_real(nmax + 1, nmax + 1, |i, j| if i == j { 1.0 } else { 0.0 }),
            Some(k) => {
                let theta = z.thetas()[k];
                let s = (0.5 * theta).sin().powi(2);
                let pre = axis_prefactor(theta, gamma[l]);
                let overlap = dilation_overlap(nmax, gamma[l], s)?;
                Matrix::from_fn(nmax + 1, nmax + 1, |m, j| {
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    overlap.get(m, j) * pre * sign
                })
            }
        };
        mats.push(m);
    }
    for &l in axes {
        if l >= d {
            return Err(Error::AxisOutOfRange { axis: l, dim: d });
        }
    }
    let shape: Vec<usize> = seq.trunc().iter().map(|n| n + 1).collect();
    let (values, _) = multi_mode_product(seq.values(), &shape, &mats);
    CoeffSeq::new(seq.basis().clone(), seq.trunc().to_vec(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn theta_pi_is_the_sign_eigenvalue() {
        for n in 0..6 {
            for &g in &[0.0, 1.0, 2.5] {
                let f = jz_on_laguerre(&MultiIndex::new(vec![n]), &[g], &PhaseParam::hankel(1)).unwrap();
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert!(close(f.prefactor, Complex64::new(sign, 0.0), 1e-14), "{:?}", f.prefactor);
                assert_relative_eq!(f.scales[0], 1.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn quarter_turn_fixture() {
        let z = PhaseParam::new(vec![FRAC_PI_2]).unwrap();
        for n in 0..4 {
            let f = jz_on_laguerre(&MultiIndex::new(vec![n]), &[0.0], &z).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!(close(f.prefactor, Complex64::new(sign, sign), 1e-14));
            assert_relative_eq!(f.scales[0], 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn closed_form_is_isometric_and_inverted_by_conjugate() {
        for i in 1..40 {
            let theta = -PI + i as f64 * (2.0 * PI / 40.0);
            if theta.abs() < 1e-12 {
                continue;
            }
            let z = PhaseParam::new(vec![theta]).unwrap();
            for &g in &[0.0, 1.0] {
                let f = jz_on_laguerre(&MultiIndex::new(vec![3]), &[g], &z).unwrap();
                assert_relative_eq!(f.norm_sq(), 1.0, max_relative = 1e-12);
                let back = f.apply(&z.conj()).unwrap();
                assert!(close(back.prefactor, Complex64::new(1.0, 0.0), 1e-12));
                assert_relative_eq!(back.scales[0], 1.0, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn partial_transform_touches_selected_axes() {
        let n = MultiIndex::new(vec![1, 1]);
        let gamma = [0.0, 0.0];
        let z = PhaseParam::new(vec![FRAC_PI_2, -PI / 3.0]).unwrap();
        let full = jz_on_laguerre(&n, &gamma, &z).unwrap();
        assert_eq!(partial_jz_on_laguerre(&n, &gamma, &z, &[0, 1]).unwrap(), full);
        let none = partial_jz_on_laguerre(&n, &gamma, &PhaseParam::new(vec![]).unwrap(), &[]).unwrap();
        assert_eq!(none, ScaledLaguerreForm::identity(n.clone(), gamma.to_vec()));
        let second = partial_jz_on_laguerre(&n, &gamma, &PhaseParam::hankel(1), &[1]).unwrap();
        assert!(close(second.prefactor, Complex64::new(-1.0, 0.0), 1e-14));
        assert_eq!(second.scales, vec![1.0, 1.0]);
        assert!(matches!(
            partial_jz_on_laguerre(&n, &gamma, &PhaseParam::hankel(1), &[2]),
            Err(Error::AxisOutOfRange { axis: 2, dim: 2 })
        ));
    }

    #[test]
    fn sign_flip_on_coefficients() {
        let seq = CoeffSeq::from_real_1d(Basis::laguerre(vec![0.0]), &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(hc_coeff(&seq, &[]).unwrap(), seq);
        let flipped = hc_coeff(&seq, &[0]).unwrap();
        assert_eq!(flipped.values()[1], Complex64::new(-2.0, 0.0));
        assert_eq!(flipped.values()[2], Complex64::new(3.0, 0.0));
        assert_eq!(hc_coeff(&flipped, &[0]).unwrap(), seq);
        let g1 = CoeffSeq::from_real_1d(Basis::laguerre(vec![1.0]), &[1.0]).unwrap();
        assert!(hc_coeff(&g1, &[0]).is_err());
    }

    #[test]
    fn coefficient_transform_round_trips() {
        let mut v = vec![0.0; 33];
        v[1] = 1.0;
        let seq = CoeffSeq::from_real_1d(Basis::laguerre(vec![0.0]), &v).unwrap();
        let z = PhaseParam::new(vec![FRAC_PI_2]).unwrap();
        let there = jz_coeff(&seq, &z).unwrap();
        let back = jz_coeff(&there, &z.conj()).unwrap();
        for (a, b) in back.values().iter().zip(seq.values()) {
            assert!((a - b).norm() < 1e-9);
        }
        // At θ = π the coefficient route is the sign flip.
        let h = jz_coeff(&seq, &PhaseParam::hankel(1)).unwrap();
        let flip = hc_coeff(&seq, &[0]).unwrap();
        for (a, b) in h.values().iter().zip(flip.values()) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
