//! Three-term recurrences carried with a shared exponent so that values far
//! outside the f64 range (tiny envelopes, huge polynomial parts) stay exact
//! up to round-off.

const RESCALE: f64 = 1.0e150;
const LN_RESCALE: f64 = 345.387_763_949_107; // ln(1e150)

/// A value `mantissa * exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: f64,
    pub log_scale: f64,
}

impl Scaled {
    /// `ln|value|`, or `-inf` for an exact zero.
    pub fn ln_abs(&self) -> f64 {
        if self.mantissa == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.mantissa.abs().ln() + self.log_scale
        }
    }

    pub fn value(&self) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        self.mantissa.signum() * self.ln_abs().exp()
    }
}

/// Runs `p_{k+1} = step(k, p_k, p_{k-1})` for `k = 1..nmax` from `p_0 = 1`,
/// `p_1 = first_ratio`, all scaled by `exp(log0)`. `step` must be linear and
/// homogeneous in `(p_k, p_{k-1})`.
pub fn scaled_row<F>(nmax: usize, log0: f64, first_ratio: f64, step: F) -> Vec<Scaled>
where
    F: Fn(usize, f64, f64) -> f64,
{
    let mut out = Vec::with_capacity(nmax + 1);
    let mut log_scale = log0;
    let mut prev = 1.0;
    out.push(Scaled {
        mantissa: prev,
        log_scale,
    });
    if nmax == 0 {
        return out;
    }
    let mut cur = first_ratio;
    out.push(Scaled {
        mantissa: cur,
        log_scale,
    });
    for k in 1..nmax {
        let next = step(k, cur, prev);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += LN_RESCALE;
        } else if cur.abs() < 1.0 / RESCALE && prev.abs() < 1.0 / RESCALE && cur != 0.0 {
            cur *= RESCALE;
            prev *= RESCALE;
            log_scale -= LN_RESCALE;
        }
        out.push(Scaled {
            mantissa: cur,
            log_scale,
        });
    }
    out
}

/// `ln(sum_k v_k^2)` over a scaled row, without leaving log space.
pub fn ln_sum_squares(row: &[Scaled]) -> f64 {
    let logs: Vec<f64> = row.iter().map(|s| 2.0 * s.ln_abs()).collect();
    let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + logs.iter().map(|l| (l - max).exp()).sum::<f64>().ln()
}
