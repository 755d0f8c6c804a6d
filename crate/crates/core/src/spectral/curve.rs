use std::collections::BTreeMap;
use std::fmt;

use super::{Result, SpectralError};
use crate::poly::{Poly, Rational, UniPoly, Vars};

/// A compact Riemann surface, known only through its genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveContext {
    genus: u32,
}

impl CurveContext {
    pub fn new(genus: u32) -> Result<Self> {
        if genus < 2 {
            return Err(SpectralError::Genus(genus));
        }
        Ok(CurveContext { genus })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn canonical_degree(&self) -> i64 {
        2 * self.genus as i64 - 2
    }

    /// Number of zeros of a quadratic differential, with multiplicity.
    pub fn quadratic_zeros(&self) -> u32 {
        4 * self.genus - 4
    }
}

/// Local chart variable used for every chart polynomial.
pub const CHART_VAR: &str = "t";

pub fn chart_vars() -> Vars {
    Vars::new([CHART_VAR]).expect("single name")
}

/// A nonzero quadratic differential: its zero divisor (abstract labels with
/// multiplicities) and optional local models `qbar(t)` at the zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadDiff {
    ctx: CurveContext,
    zeros: Vec<(String, u32)>,
    charts: BTreeMap<String, Poly>,
}

impl QuadDiff {
    pub fn new(ctx: CurveContext, zeros: Vec<(String, u32)>, charts: BTreeMap<String, Poly>) -> Result<Self> {
        let mut total = 0;
        for (i, (label, m)) in zeros.iter().enumerate() {
            if *m == 0 {
                return Err(SpectralError::Divisor(format!("zero `{label}` has multiplicity 0")));
            }
            if zeros[..i].iter().any(|(l, _)| l == label) {
                return Err(SpectralError::Divisor(format!("zero `{label}` listed twice")));
            }
            total += m;
        }
        if total != ctx.quadratic_zeros() {
            return Err(SpectralError::Divisor(format!(
                "zeros have total multiplicity {total}, expected 4g-4 = {}",
                ctx.quadratic_zeros()
            )));
        }
        let mut normalized = BTreeMap::new();
        for (label, p) in charts {
            let Some(&(_, m)) = zeros.iter().find(|(l, _)| *l == label) else {
                return Err(SpectralError::Divisor(format!(
                    "chart for `{label}`, which is not a zero"
                )));
            };
            let p = to_chart(&p)?;
            let f = UniPoly::from_poly(&p, 0)?;
            match f.order_at_zero() {
                Some(k) if k as u32 == m => {}
                k => {
                    return Err(SpectralError::Divisor(format!(
                        "chart {p} at `{label}` vanishes to order {}, divisor says {m}",
                        k.map_or("infinity".to_string(), |k| k.to_string())
                    )))
                }
            }
            normalized.insert(label, p);
        }
        Ok(QuadDiff {
            ctx,
            zeros,
            charts: normalized,
        })
    }

    /// `4g - 4` simple zeros labeled `p1, p2, ..`, no explicit charts.
    pub fn simple(ctx: CurveContext) -> Self {
        let zeros = (1..=ctx.quadratic_zeros()).map(|i| (format!("p{i}"), 1)).collect();
        QuadDiff::new(ctx, zeros, BTreeMap::new()).expect("valid divisor")
    }

    /// Zeros read off chart polynomials (multiplicity = order at 0).
    pub fn from_charts(ctx: CurveContext, charts: Vec<(String, Poly)>) -> Result<Self> {
        let mut zeros = Vec::new();
        let mut map = BTreeMap::new();
        for (label, p) in charts {
            let p = to_chart(&p)?;
            let f = UniPoly::from_poly(&p, 0)?;
            let m = f.order_at_zero().unwrap_or(0) as u32;
            zeros.push((label.clone(), m));
            map.insert(label, p);
        }
        QuadDiff::new(ctx, zeros, map)
    }

    pub fn context(&self) -> CurveContext {
        self.ctx
    }

    pub fn zeros(&self) -> &[(String, u32)] {
        &self.zeros
    }

    pub fn multiplicity(&self, label: &str) -> Option<u32> {
        self.zeros.iter().find(|(l, _)| l == label).map(|(_, m)| *m)
    }

    pub fn is_simple(&self) -> bool {
        self.zeros.iter().all(|(_, m)| *m == 1)
    }

    pub fn chart(&self, label: &str) -> Option<&Poly> {
        self.charts.get(label)
    }

    /// The chart at a zero; a simple zero without an explicit chart gets the
    /// model `t`. Higher multiplicities need an explicit chart.
    pub fn chart_or_default(&self, label: &str) -> Result<Poly> {
        if let Some(p) = self.charts.get(label) {
            return Ok(p.clone());
        }
        match self.multiplicity(label) {
            Some(1) => Ok(Poly::var(&chart_vars(), CHART_VAR)?),
            Some(_) => Err(SpectralError::MissingChart(label.to_string())),
            None => Err(SpectralError::Divisor(format!("`{label}` is not a zero"))),
        }
    }

    /// `c * q` for a nonzero rational `c`; zeros are unchanged.
    pub fn scaled(&self, c: &Rational) -> Self {
        QuadDiff {
            ctx: self.ctx,
            zeros: self.zeros.clone(),
            charts: self.charts.iter().map(|(l, p)| (l.clone(), p.scale(c))).collect(),
        }
    }
}

impl fmt::Debug for QuadDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zs: Vec<String> = self.zeros.iter().map(|(l, m)| format!("({l},{m})")).collect();
        write!(f, "QuadDiff[{}]", zs.join(","))?;
        for (l, p) in &self.charts {
            write!(f, " {l}: {p}")?;
        }
        Ok(())
    }
}

/// Moves a univariate polynomial into the chart context `[t]`.
fn to_chart(p: &Poly) -> Result<Poly> {
    let used = p.used_vars();
    let cv = chart_vars();
    match used.as_slice() {
        [] => Ok(Poly::constant(&cv, p.constant_term())),
        [i] => {
            let f = UniPoly::from_poly(p, *i)?;
            Ok(f.to_poly(&cv, 0))
        }
        _ => Err(SpectralError::Divisor(format!("chart {p} is not univariate"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Differential {
    Zero,
    NonZero(QuadDiff),
}

impl Differential {
    pub fn is_zero(&self) -> bool {
        matches!(self, Differential::Zero)
    }

    pub fn zeros(&self) -> &[(String, u32)] {
        match self {
            Differential::Zero => &[],
            Differential::NonZero(q) => q.zeros(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecData {
    /// `eta^2 - q = 0`.
    Double(Differential),
    /// `eta^4 - 2(q1 + q2) eta^2 + (q1 - q2)^2 = 0`, the image of the isogeny.
    Pair(Differential, Differential),
    /// `(eta^2 - q)^2 = 0`.
    DoubledRibbon(QuadDiff),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralCurveSpec {
    pub ctx: CurveContext,
    pub data: SpecData,
}

impl SpectralCurveSpec {
    pub fn double(ctx: CurveContext, q: Differential) -> Self {
        SpectralCurveSpec {
            ctx,
            data: SpecData::Double(q),
        }
    }

    pub fn pair(ctx: CurveContext, q1: Differential, q2: Differential) -> Self {
        SpectralCurveSpec {
            ctx,
            data: SpecData::Pair(q1, q2),
        }
    }

    pub fn rank(&self) -> u32 {
        match self.data {
            SpecData::Double(_) => 2,
            SpecData::Pair(..) | SpecData::DoubledRibbon(_) => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointType {
    Node,
    NonReduced,
    Worse,
}

impl fmt::Display for PointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointType::Node => "node",
            PointType::NonReduced => "non-reduced",
            PointType::Worse => "worse",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub multiplicity: u32,
    /// Genus of the reduced component when it is smooth.
    pub genus: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub label: String,
    pub kind: PointType,
}

/// Coarse type of a spectral curve, stable enough to compare across inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    Smooth,
    /// Reduced, irreducible, with nodes only.
    Nodal,
    /// Reduced with worse singularities.
    Singular,
    /// `2Sigma`.
    Ribbon,
    /// `2S` over a smooth double cover.
    Doubled,
    /// `2Sigma ∪ S'`.
    SigmaUnion,
    /// `kSigma` with `k > 2`.
    MultipleSigma,
}

impl CurveKind {
    pub fn label(&self) -> &'static str {
        match self {
            CurveKind::Smooth => "smooth",
            CurveKind::Nodal => "nodal",
            CurveKind::Singular => "singular",
            CurveKind::Ribbon => "ribbon",
            CurveKind::Doubled => "doubled",
            CurveKind::SigmaUnion => "sigma-union",
            CurveKind::MultipleSigma => "multiple-sigma",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        [
            CurveKind::Smooth,
            CurveKind::Nodal,
            CurveKind::Singular,
            CurveKind::Ribbon,
            CurveKind::Doubled,
            CurveKind::SigmaUnion,
            CurveKind::MultipleSigma,
        ]
        .into_iter()
        .find(|k| k.label() == s)
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveClassification {
    pub kind: CurveKind,
    pub reduced: bool,
    pub components: Vec<Component>,
    pub singular_points: Vec<SingularPoint>,
    /// Arithmetic genus of the whole curve in the total space of `K`.
    pub arithmetic_genus: i64,
}

impl CurveClassification {
    pub fn is_smooth(&self) -> bool {
        self.kind == CurveKind::Smooth
    }
}

impl fmt::Display for CurveClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let mult = if c.multiplicity > 1 {
                    format!("{}", c.multiplicity)
                } else {
                    String::new()
                };
                match c.genus {
                    Some(g) => format!("{mult}{} (genus {g})", c.name),
                    None => format!("{mult}{}", c.name),
                }
            })
            .collect();
        write!(f, "{}: {}", self.kind, comps.join(" ∪ "))?;
        if !self.singular_points.is_empty() {
            let mut counts: BTreeMap<String, usize> = BTreeMap::new();
            for p in &self.singular_points {
                *counts.entry(p.kind.to_string()).or_default() += 1;
            }
            let parts: Vec<String> = counts.iter().map(|(k, n)| format!("{n} {k}")).collect();
            write!(f, "; singular points: {}", parts.join(", "))?;
        }
        write!(f, "; arithmetic genus {}", self.arithmetic_genus)
    }
}

/// Arithmetic genus of a degree-`n` spectral curve in the total space of `K`.
pub fn spectral_arithmetic_genus(n: i64, g: u32) -> i64 {
    1 + n * n * (g as i64 - 1)
}

/// Genus of the smooth double cover `eta^2 = q` branched at `4g - 4` points.
pub fn double_cover_genus(g: u32) -> u32 {
    4 * g - 3
}

/// Local type of `u^2 = qbar(t)` at `t = 0`.
fn double_point_type(qbar: &Poly) -> Result<Option<PointType>> {
    let f = UniPoly::from_poly(qbar, 0)?;
    Ok(match f.order_at_zero() {
        Some(0) | Some(1) => None,
        Some(2) => Some(PointType::Node),
        _ => Some(PointType::Worse),
    })
}

fn classify_double(ctx: CurveContext, q: &Differential) -> Result<CurveClassification> {
    let g = ctx.genus();
    let pa = spectral_arithmetic_genus(2, g);
    let q = match q {
        Differential::Zero => {
            return Ok(CurveClassification {
                kind: CurveKind::Ribbon,
                reduced: false,
                components: vec![Component {
                    name: "Sigma".into(),
                    multiplicity: 2,
                    genus: Some(g),
                }],
                singular_points: Vec::new(),
                arithmetic_genus: pa,
            })
        }
        Differential::NonZero(q) => q,
    };
    let mut singular = Vec::new();
    for (label, m) in q.zeros() {
        if *m == 1 {
            continue;
        }
        if let Some(kind) = double_point_type(&q.chart_or_default(label)?)? {
            singular.push(SingularPoint {
                label: label.clone(),
                kind,
            });
        }
    }
    let kind = if singular.is_empty() {
        CurveKind::Smooth
    } else if singular.iter().all(|p| p.kind == PointType::Node) {
        CurveKind::Nodal
    } else {
        CurveKind::Singular
    };
    Ok(CurveClassification {
        kind,
        reduced: true,
        components: vec![Component {
            name: "S".into(),
            multiplicity: 1,
            genus: singular.is_empty().then(|| double_cover_genus(g)),
        }],
        singular_points: singular,
        arithmetic_genus: pa,
    })
}

fn classify_pair(ctx: CurveContext, q1: &Differential, q2: &Differential) -> Result<CurveClassification> {
    let g = ctx.genus();
    let pa = spectral_arithmetic_genus(4, g);
    let sigma = |m| Component {
        name: "Sigma".into(),
        multiplicity: m,
        genus: Some(g),
    };
    let s_component = |name: &str, q: &QuadDiff, m| -> Result<Component> {
        let c = classify_double(ctx, &Differential::NonZero(q.clone()))?;
        Ok(Component {
            name: name.into(),
            multiplicity: m,
            genus: c.components[0].genus,
        })
    };
    match (q1, q2) {
        (Differential::Zero, Differential::Zero) => Ok(CurveClassification {
            kind: CurveKind::MultipleSigma,
            reduced: false,
            components: vec![sigma(4)],
            singular_points: Vec::new(),
            arithmetic_genus: pa,
        }),
        (Differential::Zero, Differential::NonZero(q)) | (Differential::NonZero(q), Differential::Zero) => {
            // (eta^2 - q)^2
            Ok(CurveClassification {
                kind: CurveKind::Doubled,
                reduced: false,
                components: vec![s_component("S", q, 2)?],
                singular_points: Vec::new(),
                arithmetic_genus: pa,
            })
        }
        (Differential::NonZero(a), Differential::NonZero(b)) if a == b => {
            // eta^2 (eta^2 - 4q): Sigma doubled and S' = {eta^2 = 4q}
            let mut points: Vec<SingularPoint> = a
                .zeros()
                .iter()
                .map(|(l, _)| SingularPoint {
                    label: l.clone(),
                    kind: PointType::NonReduced,
                })
                .collect();
            points.sort_by(|x, y| x.label.cmp(&y.label));
            Ok(CurveClassification {
                kind: CurveKind::SigmaUnion,
                reduced: false,
                components: vec![sigma(2), s_component("S'", a, 1)?],
                singular_points: points,
                arithmetic_genus: pa,
            })
        }
        (Differential::NonZero(a), Differential::NonZero(b)) => {
            // nodes over the zeros of q1 - q2 (a section of K^2)
            let mut points: Vec<SingularPoint> = (1..=ctx.quadratic_zeros())
                .map(|i| SingularPoint {
                    label: format!("d{i}"),
                    kind: PointType::Node,
                })
                .collect();
            let mut worse = false;
            for (label, m1) in a.zeros() {
                if let Some(m2) = b.multiplicity(label) {
                    worse = true;
                    let kind = if *m1 == 1 && m2 == 1 {
                        PointType::Node
                    } else {
                        PointType::Worse
                    };
                    points.push(SingularPoint {
                        label: label.clone(),
                        kind,
                    });
                }
            }
            let smooth_factors = a.is_simple() && b.is_simple();
            if !smooth_factors {
                for q in [a, b] {
                    for (label, m) in q.zeros() {
                        if *m > 1 && !points.iter().any(|p| &p.label == label) {
                            q.chart_or_default(label)?;
                            points.push(SingularPoint {
                                label: label.clone(),
                                kind: PointType::Worse,
                            });
                        }
                    }
                }
            }
            let nodal = !worse && smooth_factors;
            let normalization_genus = 12 * g - 11;
            Ok(CurveClassification {
                kind: if nodal { CurveKind::Nodal } else { CurveKind::Singular },
                reduced: true,
                components: vec![Component {
                    name: "S12".into(),
                    multiplicity: 1,
                    genus: nodal.then_some(normalization_genus),
                }],
                singular_points: points,
                arithmetic_genus: pa,
            })
        }
    }
}

/// Classification of the curve cut out by a spectral-curve spec. For a
/// reduced singular curve the reported component genus is that of the
/// normalization.
pub fn classify_spectral_curve(spec: &SpectralCurveSpec) -> Result<CurveClassification> {
    match &spec.data {
        SpecData::Double(q) => classify_double(spec.ctx, q),
        SpecData::Pair(q1, q2) => classify_pair(spec.ctx, q1, q2),
        SpecData::DoubledRibbon(q) => classify_pair(spec.ctx, &Differential::Zero, &Differential::NonZero(q.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ctx(g: u32) -> CurveContext {
        CurveContext::new(g).unwrap()
    }

    fn t(s: &str) -> Poly {
        parse_poly(s, &chart_vars()).unwrap()
    }

    #[test]
    fn smooth_double_cover() {
        for g in 2..6 {
            let spec = SpectralCurveSpec::double(ctx(g), Differential::NonZero(QuadDiff::simple(ctx(g))));
            let c = classify_spectral_curve(&spec).unwrap();
            assert_eq!(c.kind, CurveKind::Smooth);
            assert_eq!(c.components[0].genus, Some(4 * g - 3));
        }
    }

    #[test]
    fn zero_differential_gives_ribbon() {
        let spec = SpectralCurveSpec::double(ctx(2), Differential::Zero);
        let c = classify_spectral_curve(&spec).unwrap();
        assert_eq!(c.kind, CurveKind::Ribbon);
        assert!(!c.reduced);
    }

    #[test]
    fn double_zero_needs_chart() {
        let zeros = vec![("p1".to_string(), 2), ("p2".to_string(), 1), ("p3".to_string(), 1)];
        let q = QuadDiff::new(ctx(2), zeros.clone(), BTreeMap::new()).unwrap();
        let spec = SpectralCurveSpec::double(ctx(2), Differential::NonZero(q));
        assert!(matches!(
            classify_spectral_curve(&spec),
            Err(SpectralError::MissingChart(_))
        ));

        let charts = BTreeMap::from([("p1".to_string(), t("t^2 + t^3"))]);
        let q = QuadDiff::new(ctx(2), zeros, charts).unwrap();
        let c = classify_spectral_curve(&SpectralCurveSpec::double(ctx(2), Differential::NonZero(q))).unwrap();
        assert_eq!(c.kind, CurveKind::Nodal);
        assert_eq!(c.singular_points[0].kind, PointType::Node);
    }

    #[test]
    fn divisor_validation() {
        let bad = vec![("p1".to_string(), 3)];
        assert!(QuadDiff::new(ctx(2), bad, BTreeMap::new()).is_err());
        let zeros = vec![("p1".to_string(), 2), ("p2".to_string(), 2)];
        let charts = BTreeMap::from([("p1".to_string(), t("t"))]);
        assert!(QuadDiff::new(ctx(2), zeros, charts).is_err());
        assert!(CurveContext::new(1).is_err());
    }

    #[test]
    fn pairs() {
        let c2 = ctx(2);
        let q = QuadDiff::simple(c2);
        let other = QuadDiff::new(c2, (1..=4).map(|i| (format!("r{i}"), 1)).collect(), BTreeMap::new()).unwrap();
        let generic = classify_spectral_curve(&SpectralCurveSpec::pair(
            c2,
            Differential::NonZero(q.clone()),
            Differential::NonZero(other),
        ))
        .unwrap();
        assert_eq!(generic.kind, CurveKind::Nodal);
        assert_eq!(generic.singular_points.len(), 4);
        assert_eq!(generic.components[0].genus, Some(13));
        assert_eq!(generic.arithmetic_genus, 17);

        let diag = classify_spectral_curve(&SpectralCurveSpec::pair(
            c2,
            Differential::NonZero(q.clone()),
            Differential::NonZero(q.clone()),
        ))
        .unwrap();
        assert_eq!(diag.kind, CurveKind::SigmaUnion);
        assert_eq!(diag.components[1].genus, Some(5));

        let ribbon = classify_spectral_curve(&SpectralCurveSpec::pair(
            c2,
            Differential::Zero,
            Differential::NonZero(q),
        ))
        .unwrap();
        assert_eq!(ribbon.kind, CurveKind::Doubled);
    }
}
