//! Line-oriented function specs for tabulating kernels at points.
//!
//! One function per line, a kind followed by `key=value` tokens:
//!
//! ```text
//! V k=(2,0)            # V_k, points in R^(n+1)
//! E u=(1)              # E(u, x)
//! m2_kernel N=4        # K(x, x); add y=(..) for K(x, y)
//! B z=(0.3-0.2i) N=8   # conv=holomorphic for the other convention
//! coherent t=0.1 z=(0.4+0.2i)
//! gn_wavelet t=(0.1,0) a=(0.2,0.3,-0.1)   # points are (t; p; q)
//! reduced a=(0.2,0.3,-0.1)
//! ```
//!
//! Blank lines and `#` comments are ignored. Values are real or complex
//! literals (`1.5`, `-0.2i`, `0.3+0.1i`) or parenthesized tuples of them.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::clifford::Multivector;
use crate::cpoly::{mono_exp, v_monomial, DEFAULT_DEGREE_CAP};
use crate::monomodel::{b_kernel, m2_coherent, m2_repro_kernel, BConvention};
use crate::nilgroup::{g_wavelet_closed, reduced_wavelet, GElement};
use crate::oscillator::HElement;
use crate::{Error, MultiIndex, Result};

/// Largest truncation accepted for kernel sums.
pub const MAX_TRUNCATION: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionKind {
    V { k: MultiIndex },
    E { u: Vec<f64> },
    M2Kernel { truncation: usize, y: Option<Vec<f64>> },
    B { z: Vec<Complex64>, truncation: usize, conv: BConvention },
    Coherent { t: f64, z: Vec<Complex64> },
    GnWavelet { tp: Vec<f64>, a: Vec<f64> },
    Reduced { a: Vec<f64> },
}

/// A parsed line together with its source text and line number.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    pub line: usize,
    pub source: String,
    pub kind: FunctionKind,
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

struct Token<'a> {
    column: usize,
    key: &'a str,
    value: &'a str,
    value_column: usize,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Split `kind key=value key=(a, b) …` into the kind and its tokens.
fn tokenize(line_no: usize, line: &str) -> Result<(&str, usize, Vec<Token<'_>>)> {
    let bytes = line.as_bytes();
    let mut i = 0;
    let mut words = Vec::new();
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let mut depth = 0i32;
        while i < bytes.len() && (depth > 0 || !bytes[i].is_ascii_whitespace()) {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                _ => {}
            }
            if depth < 0 {
                return Err(parse_err(line_no, i + 1, "unbalanced ')'"));
            }
            i += 1;
        }
        if depth != 0 {
            return Err(parse_err(line_no, start + 1, "unclosed '('"));
        }
        words.push((start, &line[start..i]));
    }
    let (kind_col, kind) = words.first().copied().ok_or_else(|| parse_err(line_no, 1, "empty line"))?;
    let mut tokens = Vec::new();
    for &(col, w) in &words[1..] {
        let eq = w.find('=').ok_or_else(|| parse_err(line_no, col + 1, format!("expected key=value, found '{w}'")))?;
        if eq == 0 {
            return Err(parse_err(line_no, col + 1, "missing key before '='"));
        }
        tokens.push(Token { column: col + 1, key: &w[..eq], value: &w[eq + 1..], value_column: col + eq + 2 });
    }
    Ok((kind, kind_col + 1, tokens))
}

fn parse_complex(s: &str) -> Option<Complex64> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let b = body.as_bytes();
    let split = (1..b.len()).rev().find(|&k| (b[k] == b'+' || b[k] == b'-') && !matches!(b[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].parse::<f64>().ok()?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().ok()?,
    };
    Some(Complex64::new(re, im))
}

fn parse_tuple(line: usize, tok: &Token<'_>) -> Result<Vec<Complex64>> {
    let v = tok.value;
    let inner = v
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| parse_err(line, tok.value_column, format!("{} expects a tuple like (1,2)", tok.key)))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 1;
    for part in inner.split(',') {
        let lead = part.len() - part.trim_start().len();
        let c = parse_complex(part)
            .ok_or_else(|| parse_err(line, tok.value_column + offset + lead, format!("bad number '{}'", part.trim())))?;
        out.push(c);
        offset += part.len() + 1;
    }
    Ok(out)
}

fn real_tuple(line: usize, tok: &Token<'_>) -> Result<Vec<f64>> {
    parse_tuple(line, tok)?
        .into_iter()
        .map(|c| if c.im == 0.0 { Ok(c.re) } else { Err(parse_err(line, tok.value_column, format!("{} must be real", tok.key))) })
        .collect()
}

fn real_scalar(line: usize, tok: &Token<'_>) -> Result<f64> {
    tok.value
        .parse::<f64>()
        .map_err(|_| parse_err(line, tok.value_column, format!("{} expects a real number", tok.key)))
}

fn count(line: usize, tok: &Token<'_>, cap: usize) -> Result<usize> {
    let v = tok
        .value
        .parse::<usize>()
        .map_err(|_| parse_err(line, tok.value_column, format!("{} expects a non-negative integer", tok.key)))?;
    if v > cap {
        return Err(parse_err(line, tok.value_column, format!("{} = {v} exceeds the cap {cap}", tok.key)));
    }
    Ok(v)
}

struct Fields<'a, 'b> {
    line: usize,
    kind_column: usize,
    tokens: &'b [Token<'a>],
}

impl<'a, 'b> Fields<'a, 'b> {
    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for (i, t) in self.tokens.iter().enumerate() {
            if !allowed.contains(&t.key) {
                return Err(parse_err(self.line, t.column, format!("unknown key '{}'", t.key)));
            }
            if self.tokens[..i].iter().any(|u| u.key == t.key) {
                return Err(parse_err(self.line, t.column, format!("duplicate key '{}'", t.key)));
            }
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<&'b Token<'a>> {
        self.tokens.iter().find(|t| t.key == key)
    }

    fn require(&self, key: &str) -> Result<&'b Token<'a>> {
        self.get(key).ok_or_else(|| parse_err(self.line, self.kind_column, format!("missing key '{key}'")))
    }
}

fn parse_line(line: usize, text: &str) -> Result<FunctionKind> {
    let (kind, kind_column, tokens) = tokenize(line, text)?;
    let f = Fields { line, kind_column, tokens: &tokens };
    let dim_guard = |tok: &Token<'_>, want: usize| -> Result<()> {
        let n = count(line, tok, crate::clifford::MAX_GENERATORS)?;
        if n != want {
            return Err(parse_err(line, tok.value_column, format!("n = {n} disagrees with tuple length {want}")));
        }
        Ok(())
    };
    Ok(match kind {
        "V" => {
            f.check_keys(&["k", "n"])?;
            let tok = f.require("k")?;
            let mut k = Vec::new();
            for c in real_tuple(line, tok)? {
                if c < 0.0 || c.fract() != 0.0 || c > DEFAULT_DEGREE_CAP as f64 {
                    return Err(parse_err(line, tok.value_column, "k entries must be integers in 0..=12"));
                }
                k.push(c as u32);
            }
            if let Some(t) = f.get("n") {
                dim_guard(t, k.len())?;
            }
            FunctionKind::V { k: MultiIndex(k) }
        }
        "E" => {
            f.check_keys(&["u", "n"])?;
            let u = real_tuple(line, f.require("u")?)?;
            if let Some(t) = f.get("n") {
                dim_guard(t, u.len())?;
            }
            FunctionKind::E { u }
        }
        "m2_kernel" => {
            f.check_keys(&["N", "y"])?;
            let truncation = count(line, f.require("N")?, MAX_TRUNCATION)?;
            let y = f.get("y").map(|t| real_tuple(line, t)).transpose()?;
            FunctionKind::M2Kernel { truncation, y }
        }
        "B" => {
            f.check_keys(&["z", "N", "conv"])?;
            let z = parse_tuple(line, f.require("z")?)?;
            let truncation = count(line, f.require("N")?, MAX_TRUNCATION)?;
            let conv = match f.get("conv") {
                None => BConvention::Conjugate,
                Some(t) => match t.value {
                    "conjugate" => BConvention::Conjugate,
                    "holomorphic" => BConvention::Holomorphic,
                    _ => return Err(parse_err(line, t.value_column, "conv is 'conjugate' or 'holomorphic'")),
                },
            };
            FunctionKind::B { z, truncation, conv }
        }
        "coherent" => {
            f.check_keys(&["t", "z"])?;
            let t = f.get("t").map(|t| real_scalar(line, t)).transpose()?.unwrap_or(0.0);
            FunctionKind::Coherent { t, z: parse_tuple(line, f.require("z")?)? }
        }
        "gn_wavelet" => {
            f.check_keys(&["t", "a"])?;
            let a = real_tuple(line, f.require("a")?)?;
            let n = a.len().saturating_sub(1);
            let tp = match f.get("t") {
                Some(t) => real_tuple(line, t)?,
                None => vec![0.0; n],
            };
            if a.len() < 2 || tp.len() != n {
                return Err(parse_err(line, kind_column, "gn_wavelet needs a of length n+1 and t of length n, n >= 1"));
            }
            FunctionKind::GnWavelet { tp, a }
        }
        "reduced" => {
            f.check_keys(&["a"])?;
            let a = real_tuple(line, f.require("a")?)?;
            if a.len() < 2 {
                return Err(parse_err(line, kind_column, "reduced needs a of length n+1, n >= 1"));
            }
            FunctionKind::Reduced { a }
        }
        other => return Err(parse_err(line, kind_column, format!("unknown function kind '{other}'"))),
    })
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim_end()
}

/// Parse a spec file; errors carry 1-based line and column.
pub fn parse_spec(text: &str) -> Result<Vec<FunctionSpec>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        out.push(FunctionSpec { line: i + 1, source: body.trim().to_string(), kind: parse_line(i + 1, body)? });
    }
    Ok(out)
}

/// One point per line, coordinates separated by whitespace or commas.
pub fn parse_points(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = strip_comment(raw);
        let mut pt = Vec::new();
        let mut col = 0;
        for piece in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if !piece.is_empty() {
                let column = body[col..].find(piece).map_or(col, |k| col + k) + 1;
                pt.push(piece.parse::<f64>().map_err(|_| parse_err(i + 1, column, format!("bad coordinate '{piece}'")))?);
            }
            col += piece.len() + 1;
        }
        if !pt.is_empty() {
            out.push(pt);
        }
    }
    Ok(out)
}

fn need(len: usize, want: usize) -> Result<()> {
    if len == want {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: want, right: len })
    }
}

/// Value of a spec at a point.
pub fn eval_function(spec: &FunctionSpec, x: &[f64]) -> Result<Multivector> {
    match &spec.kind {
        FunctionKind::V { k } => {
            need(x.len(), k.len() + 1)?;
            Ok(v_monomial(k, DEFAULT_DEGREE_CAP)?.eval(x))
        }
        FunctionKind::E { u } => {
            need(x.len(), u.len() + 1)?;
            Ok(mono_exp(u, x))
        }
        FunctionKind::M2Kernel { truncation, y } => {
            let y = y.as_deref().unwrap_or(x);
            m2_repro_kernel(x, y, *truncation)
        }
        FunctionKind::B { z, truncation, conv } => b_kernel(z, x, *truncation, *conv),
        FunctionKind::Coherent { t, z } => {
            need(x.len(), z.len() + 1)?;
            Ok(m2_coherent(&HElement::new(*t, z.clone())).eval(x))
        }
        FunctionKind::GnWavelet { tp, a } => {
            need(x.len(), 2 * tp.len() + 1)?;
            Ok(g_wavelet_closed(tp, a, &GElement::from_coords(x)))
        }
        FunctionKind::Reduced { a } => {
            need(x.len(), a.len())?;
            Ok(reduced_wavelet(a, x))
        }
    }
}

/// A tabulated value: dense blade coefficients `[re, im]` by blade bitmask.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalRecord {
    pub spec: String,
    pub line: usize,
    pub point: Vec<f64>,
    pub blades: Vec<[f64; 2]>,
}

/// Evaluate every spec at every point.
pub fn tabulate(specs: &[FunctionSpec], points: &[Vec<f64>]) -> Result<Vec<EvalRecord>> {
    let mut out = Vec::with_capacity(specs.len() * points.len());
    for s in specs {
        for x in points {
            let v = eval_function(s, x)?;
            let n = v.dim();
            let blades = (0..1u16 << n)
                .map(|m| {
                    let c = v.coeff(crate::clifford::BladeIndex::from_mask(m));
                    [c.re, c.im]
                })
                .collect();
            out.push(EvalRecord { spec: s.source.clone(), line: s.line, point: x.clone(), blades });
        }
    }
    Ok(out)
}
