//! The `LCOEF 1` text format.
//!
//! ```text
//! LCOEF 1 dim=2 basis=laguerre gamma=0,0.5 trunc=8,8
//! 0 0 6.666666666666666e-1 0e0
//! 1 0 2.2222222222222224e-1 0e0
//! ```
//!
//! Omitted indices are zero. Lines are written in graded-lex order with
//! shortest round-trip float formatting, so write → read is exact.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use super::{Basis, CoeffSeq};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

pub fn to_string(seq: &CoeffSeq) -> String {
    let d = seq.dim();
    let gamma = seq.basis().gamma().map_or_else(|| vec![0.0; d], <[f64]>::to_vec);
    let mut out = format!(
        "LCOEF 1 dim={} basis={} gamma={} trunc={}\n",
        d,
        seq.basis().name(),
        join(&gamma),
        join(seq.trunc())
    );
    for (n, v) in seq.graded() {
        if v.re == 0.0 && v.im == 0.0 {
            continue;
        }
        for e in n.entries() {
            write!(out, "{e} ").expect("write to String");
        }
        writeln!(out, "{:e} {:e}", v.re, v.im).expect("write to String");
    }
    out
}

fn header_field<'a>(fields: &'a [(&'a str, &'a str)], key: &str) -> Result<&'a str> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| parse_err(1, format!("missing header field `{key}`")))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| parse_err(1, format!("bad {what} entry `{p}`"))))
        .collect()
}

pub fn from_str(text: &str) -> Result<CoeffSeq> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("LCOEF") || words.next() != Some("1") {
        return Err(parse_err(1, "expected `LCOEF 1` header"));
    }
    let fields: Vec<(&str, &str)> = words
        .map(|w| w.split_once('=').ok_or_else(|| parse_err(1, format!("bad header field `{w}`"))))
        .collect::<Result<_>>()?;
    let dim: usize = header_field(&fields, "dim")?
        .parse()
        .map_err(|_| parse_err(1, "bad dim"))?;
    let trunc: Vec<usize> = parse_list(header_field(&fields, "trunc")?, "trunc")?;
    let gamma: Vec<f64> = parse_list(header_field(&fields, "gamma")?, "gamma")?;
    if trunc.len() != dim || gamma.len() != dim {
        return Err(parse_err(1, format!("dim={dim} disagrees with gamma/trunc lengths")));
    }
    let basis = match header_field(&fields, "basis")? {
        "laguerre" => Basis::laguerre(gamma),
        "hermite" => Basis::Hermite,
        other => return Err(parse_err(1, format!("unknown basis `{other}`"))),
    };
    let mut seq = CoeffSeq::zeros(basis, trunc).map_err(|e| parse_err(1, e.to_string()))?;
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != dim + 2 {
            return Err(parse_err(lineno, format!("expected {} fields, got {}", dim + 2, parts.len())));
        }
        let n: Vec<usize> = parts[..dim]
            .iter()
            .map(|p| p.parse().map_err(|_| parse_err(lineno, format!("bad index `{p}`"))))
            .collect::<Result<_>>()?;
        let re: f64 = parts[dim]
            .parse()
            .map_err(|_| parse_err(lineno, format!("bad real part `{}`", parts[dim])))?;
        let im: f64 = parts[dim + 1]
            .parse()
            .map_err(|_| parse_err(lineno, format!("bad imaginary part `{}`", parts[dim + 1])))?;
        seq.set(&MultiIndex::new(n), Complex64::new(re, im))
            .map_err(|e| parse_err(lineno, e.to_string()))?;
    }
    Ok(seq)
}

pub fn read(path: &Path) -> Result<CoeffSeq> {
    from_str(&std::fs::read_to_string(path)?)
}

pub fn write(path: &Path, seq: &CoeffSeq) -> Result<()> {
    std::fs::write(path, to_string(seq))?;
    Ok(())
}
