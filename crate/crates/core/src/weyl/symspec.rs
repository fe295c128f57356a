//! The `SYMSPEC 1` text format for radial symbols.
//!
//! ```text
//! SYMSPEC 1
//! family=exp
//! params=b=1
//! class=g-type
//! dim=1
//! ```
//!
//! `params` is a `;`-separated list of `key=value` pairs:
//! `b` for `exp`; `m` and optional `b` for `poly`; `c` for `const`;
//! `terms=i,j:c|...` or `index=i,j` for `laguerre`.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use super::{RadialSymbol, SymbolClass, SymbolFamily};
use crate::coeff::{Basis, CoeffSeq};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;

const MAGIC: &str = "SYMSPEC 1";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn to_string(symbol: &RadialSymbol) -> Result<String> {
    let params = match symbol.family() {
        SymbolFamily::Exp { b } => format!("b={b}"),
        SymbolFamily::Poly { m, b } => format!("m={m};b={b}"),
        SymbolFamily::Const { c } => format!("c={c}"),
        SymbolFamily::Laguerre(seq) => {
            let mut terms = Vec::new();
            for (n, v) in seq.graded() {
                if v.im != 0.0 {
                    return Err(Error::Unsupported("complex symbol coefficients in SYMSPEC".into()));
                }
                if v.re != 0.0 {
                    let idx: Vec<String> = n.entries().iter().map(|k| k.to_string()).collect();
                    terms.push(format!("{}:{}", idx.join(","), v.re));
                }
            }
            format!("terms={}", terms.join("|"))
        }
    };
    Ok(format!(
        "{MAGIC}\nfamily={}\nparams={params}\nclass={}\ndim={}\n",
        symbol.family().name(),
        symbol.class(),
        symbol.dim()
    ))
}

fn number(line: usize, key: &str, value: &str) -> Result<f64> {
    value
        .trim()
        .parse::<f64>()
        .map_err(|_| parse_err(line, format!("`{key}` is not a number: `{value}`")))
}

fn index(line: usize, text: &str, dim: usize) -> Result<Vec<usize>> {
    let idx = text
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| parse_err(line, format!("bad index `{text}`")))?;
    if idx.len() != dim {
        return Err(parse_err(line, format!("index `{text}` has {} entries, dim is {dim}", idx.len())));
    }
    Ok(idx)
}

fn laguerre_terms(line: usize, params: &[(String, String)], dim: usize) -> Result<CoeffSeq> {
    let mut terms: Vec<(Vec<usize>, f64)> = Vec::new();
    for (k, v) in params {
        match k.as_str() {
            "index" => terms.push((index(line, v, dim)?, 1.0)),
            "terms" => {
                for t in v.split('|').filter(|t| !t.trim().is_empty()) {
                    let (i, c) = t
                        .split_once(':')
                        .ok_or_else(|| parse_err(line, format!("term `{t}` needs `index:coef`")))?;
                    terms.push((index(line, i, dim)?, number(line, "coef", c)?));
                }
            }
            _ => return Err(parse_err(line, format!("unknown laguerre parameter `{k}`"))),
        }
    }
    if terms.is_empty() {
        return Err(parse_err(line, "laguerre symbol has no terms"));
    }
    let mut trunc = vec![0; dim];
    for (i, _) in &terms {
        for l in 0..dim {
            trunc[l] = trunc[l].max(i[l]);
        }
    }
    let mut seq = CoeffSeq::zeros(Basis::laguerre(vec![0.0; dim]), trunc)?;
    for (i, c) in terms {
        let n = MultiIndex::new(i);
        let cur = seq.get(&n);
        seq.set(&n, cur + Complex64::new(c, 0.0))?;
    }
    Ok(seq)
}

pub fn from_str(text: &str) -> Result<RadialSymbol> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, l)) if l.trim() == MAGIC => {}
        Some((i, l)) => return Err(parse_err(i + 1, format!("expected `{MAGIC}`, found `{l}`"))),
        None => return Err(parse_err(1, "empty symbol file")),
    }
    let mut family = None;
    let mut params = None;
    let mut class = None;
    let mut dim = None;
    for (i, l) in lines {
        let line = i + 1;
        let (key, value) = l
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected `key=value`, found `{l}`")))?;
        let slot = match key.trim() {
            "family" => &mut family,
            "params" => &mut params,
            "class" => &mut class,
            "dim" => &mut dim,
            other => return Err(parse_err(line, format!("unknown key `{other}`"))),
        };
        if slot.is_some() {
            return Err(parse_err(line, format!("duplicate key `{}`", key.trim())));
        }
        *slot = Some((line, value.trim().to_string()));
    }
    let (fline, family) = family.ok_or_else(|| parse_err(0, "missing `family`"))?;
    let (dline, dim) = dim.ok_or_else(|| parse_err(0, "missing `dim`"))?;
    let dim: usize = dim
        .parse()
        .map_err(|_| parse_err(dline, format!("bad dimension `{dim}`")))?;
    let (pline, params) = params.unwrap_or((fline, String::new()));
    let pairs: Vec<(String, String)> = params
        .split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| parse_err(pline, format!("parameter `{p}` needs `key=value`")))
        })
        .collect::<Result<_>>()?;
    let get = |key: &str| pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
    let family = match family.as_str() {
        "exp" => SymbolFamily::Exp {
            b: number(pline, "b", get("b").ok_or_else(|| parse_err(pline, "exp needs `b`"))?)?,
        },
        "poly" => {
            let m = get("m").ok_or_else(|| parse_err(pline, "poly needs `m`"))?;
            SymbolFamily::Poly {
                m: m.parse().map_err(|_| parse_err(pline, format!("bad power `{m}`")))?,
                b: get("b").map(|b| number(pline, "b", b)).transpose()?.unwrap_or(0.0),
            }
        }
        "const" => SymbolFamily::Const {
            c: get("c").map(|c| number(pline, "c", c)).transpose()?.unwrap_or(1.0),
        },
        "laguerre" => SymbolFamily::Laguerre(laguerre_terms(pline, &pairs, dim)?),
        other => return Err(parse_err(fline, format!("unknown family `{other}`"))),
    };
    let class = match class {
        Some((_, c)) => c.parse()?,
        None => match family {
            SymbolFamily::Poly { .. } | SymbolFamily::Const { .. } => SymbolClass::WeightedDual,
            _ => SymbolClass::GType,
        },
    };
    RadialSymbol::new(family, class, dim)
}

pub fn read(path: &Path) -> Result<RadialSymbol> {
    from_str(&fs::read_to_string(path)?)
}

pub fn write(path: &Path, symbol: &RadialSymbol) -> Result<()> {
    fs::write(path, to_string(symbol)?)?;
    Ok(())
}
