use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use lagweyl::coeff::{classify, lcoef, s_seminorm, DecayConfig, DecayReport};
use lagweyl::hankel::{hc_coeff, partial_jz_coeff, PhaseParam};
use lagweyl::transform::analyze_traced;
use lagweyl::weyl::{
    convergence_probe, symspec, weyl_apply, weyl_apply_dual, weyl_direct, RadialSymbol, SymbolClass, SymbolFamily,
    WeylOperator,
};
use lagweyl::{Basis, CoeffSeq, Error, FunctionHandle, MultiIndex};
use num_complex::Complex64;

use crate::args::{ClassifyArgs, ExpandArgs, Family, Format, ReportArgs, SymbolArgs, TransformArgs, WeylAction};
use crate::CliError;

/// Everything a command produces; written in one go by `main`.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub files: Vec<(PathBuf, String)>,
}

impl Output {
    /// Routes `text` to `path`, or to stdout with `notes` moved to stderr.
    fn emit(&mut self, path: Option<&Path>, text: String, notes: String) {
        match path {
            Some(p) => {
                self.files.push((p.to_path_buf(), text));
                self.stdout.push_str(&notes);
            }
            None => {
                self.stdout.push_str(&text);
                self.stderr.push_str(&notes);
            }
        }
    }
}

pub struct Context {
    pub rule_order: usize,
    pub format: Format,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn broadcast<T: Copy>(v: &[T], dim: usize, what: &str) -> Result<Vec<T>, CliError> {
    match v.len() {
        1 => Ok(vec![v[0]; dim]),
        n if n == dim => Ok(v.to_vec()),
        n => Err(usage(format!("--{what} has {n} entries, expected 1 or {dim}"))),
    }
}

fn symbol_from(args: &SymbolArgs) -> Result<RadialSymbol, CliError> {
    if let Some(path) = &args.symbol {
        return Ok(symspec::read(path)?);
    }
    let family = args.family.ok_or_else(|| usage("give --symbol or --family"))?;
    let d = args.dim;
    let symbol = match family {
        Family::Exp => RadialSymbol::exp(d, args.b.ok_or_else(|| usage("--family exp needs --b"))?)?,
        Family::Poly => RadialSymbol::poly(
            d,
            args.power.ok_or_else(|| usage("--family poly needs --power"))?,
            args.b.unwrap_or(0.0),
        )?,
        Family::Const => RadialSymbol::constant(d, args.coef.unwrap_or(1.0))?,
        Family::Laguerre => {
            let idx = if args.index.is_empty() { vec![0; d] } else { args.index.clone() };
            if idx.len() != d {
                return Err(usage(format!("--index has {} entries, dim is {d}", idx.len())));
            }
            let mut seq = CoeffSeq::zeros(Basis::laguerre(vec![0.0; d]), idx.clone())?;
            seq.set(&MultiIndex::new(idx), Complex64::new(args.coef.unwrap_or(1.0), 0.0))?;
            RadialSymbol::laguerre(seq)?
        }
    };
    Ok(symbol)
}

/// The symbol's profile as a function on the orthant, when square integrable.
fn handle_from(symbol: &RadialSymbol) -> Result<FunctionHandle, CliError> {
    let d = symbol.dim();
    match symbol.family() {
        SymbolFamily::Exp { b } => Ok(FunctionHandle::exp_decay(d, *b)?),
        SymbolFamily::Laguerre(seq) => Ok(FunctionHandle::from_coefficients(seq.clone())),
        SymbolFamily::Poly { m, b } if *b > 0.0 => {
            let (m, b) = (*m as i32, *b);
            Ok(FunctionHandle::orthant(d, move |t| {
                Complex64::new(t.iter().map(|&x| x.powi(m) * (-b * x).exp()).product(), 0.0)
            })
            .with_decay(vec![b; d])?)
        }
        _ => Err(Error::ClassViolation(format!(
            "the {} profile has no exponential decay and cannot be expanded",
            symbol.family().name()
        ))
        .into()),
    }
}

pub fn expand(ctx: &Context, args: &ExpandArgs) -> Result<Output, CliError> {
    let symbol = match &args.input {
        Some(p) => symspec::read(p)?,
        None => symbol_from(&args.source)?,
    };
    let d = symbol.dim();
    let gamma = broadcast(&args.gamma, d, "gamma")?;
    let trunc = broadcast(&args.trunc, d, "trunc")?;
    let f = handle_from(&symbol)?;
    let (seq, trail) = analyze_traced(&f, &gamma, &trunc, ctx.rule_order)?;
    let mut notes = String::new();
    for (i, change) in trail.changes.iter().enumerate() {
        writeln!(
            notes,
            "gate order={} vs {} change={:.3e}",
            trail.orders[i], trail.orders[i + 1], change
        )
        .unwrap();
    }
    let mut out = Output::default();
    out.emit(args.out.as_deref(), lcoef::to_string(&seq), notes);
    Ok(out)
}

fn decay_config(alpha_grid: &[f64]) -> DecayConfig {
    let mut cfg = DecayConfig::default();
    if !alpha_grid.is_empty() {
        cfg.alpha_grid = alpha_grid.to_vec();
    }
    cfg
}

fn render_report(format: Format, r: &DecayReport) -> String {
    let mut s = String::new();
    match format {
        Format::Text => {
            writeln!(s, "{:<14}{:>16}", "alpha", r.alpha).unwrap();
            writeln!(s, "{:<14}{:>16.6e}", "a", r.a).unwrap();
            writeln!(s, "{:<14}{:>16.6e}", "c", r.c).unwrap();
            writeln!(s, "{:<14}{:>16.6e}", "rms residual", r.rms_residual).unwrap();
            writeln!(s, "{:<14}{:>16}", "points used", r.points_used).unwrap();
            writeln!(s, "{:<14}{:>16}", "finite support", r.finite_support).unwrap();
        }
        Format::Lines => {
            writeln!(s, "alpha={}", r.alpha).unwrap();
            writeln!(s, "a={:e}", r.a).unwrap();
            writeln!(s, "c={:e}", r.c).unwrap();
            writeln!(s, "rms={:e}", r.rms_residual).unwrap();
            writeln!(s, "points={}", r.points_used).unwrap();
            writeln!(s, "finite_support={}", r.finite_support).unwrap();
        }
    }
    writeln!(s, "{}", r.verdict_line()).unwrap();
    s
}

pub fn classify_cmd(ctx: &Context, args: &ClassifyArgs) -> Result<Output, CliError> {
    let seq = lcoef::read(&args.input)?;
    let report = classify(&seq, &decay_config(&args.alpha_grid))?;
    Ok(Output {
        stdout: render_report(ctx.format, &report),
        ..Output::default()
    })
}

fn read_coefficients(path: &Path, trunc: &[usize]) -> Result<CoeffSeq, CliError> {
    let text = fs::read_to_string(path).map_err(Error::from)?;
    if text.trim_start().starts_with("SYMSPEC") {
        let symbol = symspec::from_str(&text)?;
        return match symbol.family() {
            SymbolFamily::Laguerre(seq) => Ok(seq.retruncate(broadcast(trunc, seq.dim(), "trunc")?)?),
            _ => Err(usage("only laguerre SYMSPEC files hold coefficients; run `expand` first")),
        };
    }
    Ok(lcoef::from_str(&text)?)
}

pub fn transform(_ctx: &Context, args: &TransformArgs) -> Result<Output, CliError> {
    let seq = read_coefficients(&args.input, &args.trunc)?;
    let d = seq.dim();
    let axes: Vec<usize> = if args.partial.is_empty() {
        (0..d).collect()
    } else {
        args.partial
            .iter()
            .map(|&a| {
                if a == 0 || a > d {
                    Err(usage(format!("--partial axis {a} is outside 1..={d}")))
                } else {
                    Ok(a - 1)
                }
            })
            .collect::<Result<_, _>>()?
    };
    let result = if args.theta.is_empty() {
        hc_coeff(&seq, &axes)?
    } else {
        let thetas = broadcast(&args.theta, axes.len(), "theta")?;
        partial_jz_coeff(&seq, &PhaseParam::new(thetas)?, &axes)?
    };
    let mut out = Output::default();
    out.emit(args.out.as_deref(), lcoef::to_string(&result), String::new());
    Ok(out)
}

fn unit_hermite(n: &MultiIndex, trunc: &[usize]) -> Result<CoeffSeq, CliError> {
    let mut seq = CoeffSeq::zeros(Basis::Hermite, trunc.to_vec())?;
    seq.set(n, Complex64::new(1.0, 0.0))?;
    Ok(seq)
}

fn fmt_complex(v: Complex64) -> String {
    if v.im == 0.0 {
        format!("{:e}", v.re)
    } else {
        format!("{:e}{:+e}i", v.re, v.im)
    }
}

pub fn weyl(ctx: &Context, action: &WeylAction) -> Result<Output, CliError> {
    let mut out = Output::default();
    match action {
        WeylAction::Apply { symbol, input, out: path } => {
            let sigma = symbol_from(symbol)?;
            let f = lcoef::read(input)?;
            let (g, notes) = if sigma.class() == SymbolClass::WeightedDual {
                let r = weyl_apply_dual(&sigma, &f)?;
                let notes = r.decay.map(|d| format!("{}\n", d.verdict_line())).unwrap_or_default();
                (r.coeffs, notes)
            } else {
                (weyl_apply(&sigma, &f)?, String::new())
            };
            out.emit(path.as_deref(), lcoef::to_string(&g), notes);
        }
        WeylAction::Compare {
            symbol,
            kmax,
            phase_order,
            tolerance,
        } => {
            let sigma = symbol_from(symbol)?;
            let d = sigma.dim();
            let trunc = vec![*kmax; d];
            let op = WeylOperator::dual(&sigma, &trunc, ctx.rule_order)?;
            let indices: Vec<MultiIndex> = op.eigenvalues().graded().into_iter().map(|(n, _)| n).collect();
            // Off-diagonal pairs only in one dimension, where they stay cheap.
            let pairs: Vec<(&MultiIndex, &MultiIndex)> = if d == 1 {
                indices.iter().flat_map(|m| indices.iter().map(move |k| (m, k))).collect()
            } else {
                indices.iter().map(|m| (m, m)).collect()
            };
            let mut worst: f64 = 0.0;
            for (m, k) in pairs {
                let direct = weyl_direct(&sigma, &unit_hermite(m, &trunc)?, &unit_hermite(k, &trunc)?, *phase_order)?;
                let diag = if m == k { op.eigenvalues().get(m) } else { Complex64::new(0.0, 0.0) };
                let diff = (direct - diag).norm();
                worst = worst.max(diff);
                if m == k {
                    match ctx.format {
                        Format::Text => writeln!(
                            out.stdout,
                            "{:<10}{:>24}{:>24}{:>12.3e}",
                            m.to_string(),
                            fmt_complex(diag),
                            fmt_complex(direct),
                            diff
                        )
                        .unwrap(),
                        Format::Lines => writeln!(
                            out.stdout,
                            "k={m} diag={} direct={} diff={diff:e}",
                            fmt_complex(diag),
                            fmt_complex(direct)
                        )
                        .unwrap(),
                    }
                }
            }
            writeln!(out.stdout, "max_abs_diff={worst:e} tolerance={tolerance:e}").unwrap();
            if worst > *tolerance {
                return Err(CliError::Numerical(out, format!("diagonal and direct routes differ by {worst:e}")));
            }
        }
        WeylAction::Spectrum { symbol, kmax, out: path } => {
            let sigma = symbol_from(symbol)?;
            let op = WeylOperator::dual(&sigma, &vec![*kmax; sigma.dim()], ctx.rule_order)?;
            let mut table = String::new();
            for (k, v) in op.eigenvalues().graded() {
                match ctx.format {
                    Format::Text => writeln!(table, "lambda {:<10}{:>24}", k.to_string(), fmt_complex(v)).unwrap(),
                    Format::Lines => writeln!(table, "lambda k={k} value={}", fmt_complex(v)).unwrap(),
                }
            }
            match path {
                Some(p) => {
                    out.files.push((p.clone(), lcoef::to_string(op.eigenvalues())));
                    out.stdout = table;
                }
                None => out.stdout = table,
            }
        }
        WeylAction::Converge { b, dim, jmax } => {
            let limit = RadialSymbol::exp(*dim, *b)?;
            let seq: Vec<RadialSymbol> = (1..=*jmax)
                .map(|j| RadialSymbol::exp(*dim, b + 1.0 / j as f64))
                .collect::<Result<_, _>>()?;
            let h0 = unit_hermite(&MultiIndex::zeros(*dim), &vec![0; *dim])?;
            let report = convergence_probe(&seq, &limit, &[h0], ctx.rule_order)?;
            for (i, row) in report.distances.iter().enumerate() {
                let j = i + 1;
                if is_report_point(j) || j == *jmax {
                    writeln!(out.stdout, "j={j} distance={:e}", row[0]).unwrap();
                }
            }
            let last = report.distances.last().map_or(0.0, |r| r[0]);
            writeln!(out.stdout, "monotone={} final={last:e}", report.monotone[0]).unwrap();
            if !report.monotone[0] {
                return Err(CliError::Numerical(out, "distances are not monotone".into()));
            }
        }
    }
    Ok(out)
}

/// 1, 2, 5, 10, 20, 50, ...
fn is_report_point(j: usize) -> bool {
    let mut p = 1;
    while p <= j {
        if j == p || j == 2 * p || j == 5 * p {
            return true;
        }
        p *= 10;
    }
    false
}

pub fn report(ctx: &Context, args: &ReportArgs) -> Result<Output, CliError> {
    let seq = lcoef::read(&args.input)?;
    let nonzero = seq.values().iter().filter(|v| v.norm() != 0.0).count();
    let gamma = seq
        .basis()
        .gamma()
        .map(|g| g.iter().map(f64::to_string).collect::<Vec<_>>().join(","))
        .unwrap_or_else(|| "-".into());
    let trunc = seq.trunc().iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let rows: Vec<(&str, String)> = vec![
        ("dim", seq.dim().to_string()),
        ("basis", seq.basis().name().to_string()),
        ("gamma", gamma),
        ("trunc", trunc),
        ("nonzero", nonzero.to_string()),
        ("l2_norm", format!("{:e}", seq.l2_norm_sq().sqrt())),
        ("max_abs", format!("{:e}", seq.max_abs())),
        ("s1_seminorm", format!("{:e}", s_seminorm(&seq, 1))),
    ];
    let mut s = String::new();
    for (k, v) in &rows {
        match ctx.format {
            Format::Text => writeln!(s, "{k:<14}{v:>24}").unwrap(),
            Format::Lines => writeln!(s, "{k}={v}").unwrap(),
        }
    }
    match classify(&seq, &decay_config(&args.alpha_grid)) {
        Ok(r) => s.push_str(&render_report(ctx.format, &r)),
        Err(Error::InsufficientData { usable, required }) => {
            writeln!(s, "decay: {usable} usable coefficients, {required} needed").unwrap()
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Output {
        stdout: s,
        ..Output::default()
    })
}
