//! Text format for curve specifications.
//!
//! ```text
//! # comment
//! genus: 2
//! q1: [(p1,2), (p2,1), (p3,1)]
//!   p1: t^2 + t^3
//! q2: zero
//! expect: doubled
//! ```
//!
//! A differential is `zero`, a divisor list optionally followed by indented
//! `label: poly` chart lines, or an indented chart block alone (the
//! multiplicity of each zero is then the order of its chart at `t = 0`).
//! `q2: q1` repeats the first differential. Without `q2` the spec is the rank
//! two curve `eta^2 = q1`.

use std::collections::BTreeMap;

use super::curve::chart_vars;
use super::{CurveContext, CurveKind, Differential, QuadDiff, Result, SpectralCurveSpec, SpectralError};
use crate::poly::parse_poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpecFile {
    pub spec: SpectralCurveSpec,
    pub expect: Option<CurveKind>,
}

impl CurveSpecFile {
    /// The two differentials of a rank-four spec.
    pub fn pair(&self) -> Option<(&Differential, &Differential)> {
        match &self.spec.data {
            super::SpecData::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

fn err(line: usize, msg: impl Into<String>) -> SpectralError {
    SpectralError::Parse { line, msg: msg.into() }
}

enum RawDiff {
    Zero,
    Alias,
    Divisor(Vec<(String, u32)>),
    ChartsOnly,
}

struct Field {
    line: usize,
    raw: RawDiff,
    charts: Vec<(usize, String, String)>,
}

fn parse_divisor(line: usize, text: &str) -> Result<Vec<(String, u32)>> {
    let inner = text
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err(line, format!("expected `[(label, mult), ...]`, found `{text}`")))?;
    let mut out = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| err(line, format!("expected `(` at `{rest}`")))?;
        let close = body.find(')').ok_or_else(|| err(line, "unclosed `(`"))?;
        let (label, mult) = body[..close]
            .split_once(',')
            .ok_or_else(|| err(line, format!("expected `label, mult` in `({})`", &body[..close])))?;
        let label = label.trim();
        if label.is_empty() || !label.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(err(line, format!("bad point label `{label}`")));
        }
        let mult: u32 = mult
            .trim()
            .parse()
            .map_err(|_| err(line, format!("bad multiplicity `{}`", mult.trim())))?;
        out.push((label.to_string(), mult));
        rest = body[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        } else if !rest.is_empty() {
            return Err(err(line, format!("expected `,` at `{rest}`")));
        }
    }
    Ok(out)
}

fn build(ctx: CurveContext, field: &Field, first: Option<&Differential>) -> Result<Differential> {
    let mut charts = Vec::new();
    for (line, label, text) in &field.charts {
        let p = parse_poly(text, &chart_vars()).map_err(|e| err(*line, format!("chart `{label}`: {e}")))?;
        charts.push((label.clone(), p));
    }
    let located = |e: SpectralError| err(field.line, e.to_string());
    match &field.raw {
        RawDiff::Zero | RawDiff::Alias if !charts.is_empty() => {
            Err(err(field.charts[0].0, "chart lines need a divisor or chart block"))
        }
        RawDiff::Zero => Ok(Differential::Zero),
        RawDiff::Alias => first
            .cloned()
            .ok_or_else(|| err(field.line, "`q1` may only be used as the value of `q2`")),
        RawDiff::Divisor(zeros) => {
            let map: BTreeMap<String, _> = charts.into_iter().collect();
            Ok(Differential::NonZero(
                QuadDiff::new(ctx, zeros.clone(), map).map_err(located)?,
            ))
        }
        RawDiff::ChartsOnly => Ok(Differential::NonZero(
            QuadDiff::from_charts(ctx, charts).map_err(located)?,
        )),
    }
}

pub fn parse_curve_spec(text: &str) -> Result<CurveSpecFile> {
    let mut genus: Option<(usize, u32)> = None;
    let mut expect = None;
    let mut fields: BTreeMap<&str, Field> = BTreeMap::new();
    let mut current: Option<&str> = None;
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indented = content.starts_with([' ', '\t']);
        let (key, value) = content
            .trim()
            .split_once(':')
            .ok_or_else(|| err(line, format!("expected `key: value`, found `{}`", content.trim())))?;
        let (key, value) = (key.trim(), value.trim());
        if indented {
            let name = current.ok_or_else(|| err(line, "indented line outside a `q1`/`q2` block"))?;
            let field = fields.get_mut(name).expect("current field exists");
            if value.is_empty() {
                return Err(err(line, format!("chart `{key}` has no polynomial")));
            }
            field.charts.push((line, key.to_string(), value.to_string()));
            continue;
        }
        current = None;
        match key {
            "genus" => {
                if genus.is_some() {
                    return Err(err(line, "duplicate `genus`"));
                }
                let g = value.parse().map_err(|_| err(line, format!("bad genus `{value}`")))?;
                genus = Some((line, g));
            }
            "expect" => {
                let k =
                    CurveKind::from_label(value).ok_or_else(|| err(line, format!("unknown curve kind `{value}`")))?;
                expect = Some(k);
            }
            "q1" | "q2" => {
                let name = if key == "q1" { "q1" } else { "q2" };
                if fields.contains_key(name) {
                    return Err(err(line, format!("duplicate `{name}`")));
                }
                let raw = match value {
                    "zero" | "0" => RawDiff::Zero,
                    "q1" if name == "q2" => RawDiff::Alias,
                    "" => RawDiff::ChartsOnly,
                    v => RawDiff::Divisor(parse_divisor(line, v)?),
                };
                fields.insert(
                    name,
                    Field {
                        line,
                        raw,
                        charts: Vec::new(),
                    },
                );
                current = Some(name);
            }
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
    }
    let (gline, g) = genus.ok_or_else(|| err(0, "missing `genus`"))?;
    let ctx = CurveContext::new(g).map_err(|e| err(gline, e.to_string()))?;
    let f1 = fields.get("q1").ok_or_else(|| err(0, "missing `q1`"))?;
    if matches!(f1.raw, RawDiff::Alias) {
        return Err(err(f1.line, "`q1` cannot refer to itself"));
    }
    let q1 = build(ctx, f1, None)?;
    let spec = match fields.get("q2") {
        None => SpectralCurveSpec::double(ctx, q1),
        Some(f2) => {
            let q2 = build(ctx, f2, Some(&q1))?;
            SpectralCurveSpec::pair(ctx, q1, q2)
        }
    };
    Ok(CurveSpecFile { spec, expect })
}
