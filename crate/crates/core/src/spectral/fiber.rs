use std::fmt;
use std::sync::Arc;

use super::curve::{chart_vars, CHART_VAR};
use super::{
    Component, CurveClassification, CurveContext, CurveKind, Differential, PointType, Result, SingularPoint,
    SpectralError,
};
use crate::linalg;
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, UniPoly, Vars};
use crate::quotient::{
    coimage, default_coeff_bound, diagonal_ideals, kernel_conditions, verify_blowup_local, BlowupReport,
    DiagonalComponent, KernelReport, RelationSet, RingMorphism,
};

/// Local model of `S1 x_Sigma S2` over one point of `Sigma`.
#[derive(Clone, Debug)]
pub struct FiberChart {
    pub label: String,
    pub q1: Poly,
    pub q2: Poly,
    /// `Q[t][u, v] / (u^2 - q1(t), v^2 - q2(t))`
    pub ring: Arc<RelationSet>,
    pub smooth: bool,
}

/// Local evidence that `2Sigma x_Sigma S` is a split ribbon on `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitRibbonCertificate {
    /// `u^2 = 0` in the chart ring.
    pub ideal_squares_to_zero: bool,
    /// `u*1, u*v` are independent over the base, so `(u)` is free of rank one
    /// over the `S`-chart ring `Q[t][v]/(v^2 - q)`.
    pub ideal_free_rank_one: bool,
}

impl SplitRibbonCertificate {
    pub fn holds(&self) -> bool {
        self.ideal_squares_to_zero && self.ideal_free_rank_one
    }
}

#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub charts: Vec<FiberChart>,
    pub classification: CurveClassification,
    pub ribbon: Vec<(String, SplitRibbonCertificate)>,
    pub diagonals: Vec<(String, Vec<DiagonalComponent>)>,
}

fn local_chart(q: &Differential, label: &str) -> Result<Poly> {
    let cv = chart_vars();
    match q {
        Differential::Zero => Ok(Poly::zero(&cv)),
        Differential::NonZero(d) if d.multiplicity(label).is_some() => d.chart_or_default(label),
        Differential::NonZero(_) => Ok(Poly::one(&cv)),
    }
}

/// `Q[t][u, v] / (u^2 - q1, v^2 - q2)`.
pub fn product_chart_ring(q1: &Poly, q2: &Poly) -> Result<Arc<RelationSet>> {
    let vars = Vars::new(["u", "v", CHART_VAR])?;
    let (u, v) = (Poly::var(&vars, "u")?, Poly::var(&vars, "v")?);
    let rels = vec![
        ("u", &u.pow(2) - &q1.embed(&vars)?),
        ("v", &v.pow(2) - &q2.embed(&vars)?),
    ];
    Ok(Arc::new(RelationSet::new(&vars, rels)?))
}

/// `Q[t][u] / (f)` with `f` given in the chart context extended by `u`.
fn single_chart_ring(f: &Poly) -> Result<Arc<RelationSet>> {
    Ok(Arc::new(RelationSet::new(f.vars(), vec![("u", f.clone())])?))
}

/// Jacobian criterion over `t = 0` for a ring whose relations read
/// `w^2 - c_w(t)`: a fiber variable with `c_w(0) = 0` is set to 0, the others
/// stay symbolic (and nonzero).
pub fn jacobian_smooth(ring: &RelationSet) -> Result<bool> {
    let vars = ring.vars();
    let t = vars.require(CHART_VAR)?;
    let zero = crate::poly::Rational::from_integer(0.into());
    let mut point: Vec<usize> = vec![t];
    for (pos, &w) in ring.fiber().iter().enumerate() {
        let x = Poly::var_at(vars, w);
        let c = &x.pow(ring.degrees()[pos]) - &ring.relations()[pos];
        if c.eval_var(t, &zero).is_zero() {
            point.push(w);
        }
    }
    let mut jac = PolyMatrix::zeros(vars, ring.relations().len(), vars.len());
    for (i, f) in ring.relations().iter().enumerate() {
        for j in 0..vars.len() {
            let mut d = f.derivative(j);
            for &k in &point {
                d = d.eval_var(k, &zero);
            }
            jac.set(i, j, d);
        }
    }
    Ok(linalg::rank(&jac) == ring.relations().len())
}

fn ribbon_certificate(ring: &Arc<RelationSet>) -> Result<SplitRibbonCertificate> {
    let u = ring.parse_elem("u")?;
    let ideal_squares_to_zero = u.mul(&u)?.is_zero();
    let base = ring.base_vars();
    let gens = [ring.parse_elem("u")?, ring.parse_elem("u*v")?];
    let mut m = PolyMatrix::zeros(&base, ring.rank(), gens.len());
    for (j, g) in gens.iter().enumerate() {
        for (i, c) in g.coords().iter().enumerate() {
            m.set(i, j, c.embed(&base)?);
        }
    }
    Ok(SplitRibbonCertificate {
        ideal_squares_to_zero,
        ideal_free_rank_one: linalg::rank(&m) == 2,
    })
}

fn labels(q1: &Differential, q2: &Differential) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for (l, _) in q1.zeros().iter().chain(q2.zeros()) {
        if !out.contains(l) {
            out.push(l.clone());
        }
    }
    if out.is_empty() {
        out.push("generic".into());
    }
    out
}

/// Genus of the smooth fourfold cover `S1 x_Sigma S2`, and the arithmetic
/// genus of every member of that flat family.
pub fn fourfold_genus(g: u32) -> u32 {
    12 * g - 11
}

pub fn fiber_product(ctx: CurveContext, q1: &Differential, q2: &Differential) -> Result<FiberProduct> {
    let g = ctx.genus();
    let pa = fourfold_genus(g) as i64;
    let mut charts = Vec::new();
    for label in labels(q1, q2) {
        let (c1, c2) = (local_chart(q1, &label)?, local_chart(q2, &label)?);
        let ring = product_chart_ring(&c1, &c2)?;
        let smooth = jacobian_smooth(&ring)?;
        charts.push(FiberChart {
            label,
            q1: c1,
            q2: c2,
            ring,
            smooth,
        });
    }
    let mut ribbon = Vec::new();
    let mut diagonals = Vec::new();
    let s_genus = 4 * g - 3;
    let classification = match (q1, q2) {
        (Differential::Zero, Differential::Zero) => CurveClassification {
            kind: CurveKind::MultipleSigma,
            reduced: false,
            components: vec![Component {
                name: "Sigma".into(),
                multiplicity: 4,
                genus: Some(g),
            }],
            singular_points: Vec::new(),
            arithmetic_genus: pa,
        },
        (Differential::Zero, Differential::NonZero(_)) | (Differential::NonZero(_), Differential::Zero) => {
            for c in &charts {
                // put the ribbon direction first
                let ring = if q1.is_zero() {
                    c.ring.clone()
                } else {
                    product_chart_ring(&c.q2, &c.q1)?
                };
                ribbon.push((c.label.clone(), ribbon_certificate(&ring)?));
            }
            CurveClassification {
                kind: CurveKind::Doubled,
                reduced: false,
                components: vec![Component {
                    name: "S".into(),
                    multiplicity: 2,
                    genus: Some(s_genus),
                }],
                singular_points: Vec::new(),
                arithmetic_genus: pa,
            }
        }
        (Differential::NonZero(a), Differential::NonZero(b)) if a == b => {
            for c in &charts {
                diagonals.push((c.label.clone(), diagonal_ideals(&c.ring)?));
            }
            let delta = |name: &str| Component {
                name: name.into(),
                multiplicity: 1,
                genus: Some(s_genus),
            };
            CurveClassification {
                kind: CurveKind::Nodal,
                reduced: true,
                components: vec![delta("Delta+"), delta("Delta-")],
                singular_points: charts
                    .iter()
                    .map(|c| SingularPoint {
                        label: c.label.clone(),
                        kind: PointType::Node,
                    })
                    .collect(),
                arithmetic_genus: pa,
            }
        }
        (Differential::NonZero(_), Differential::NonZero(_)) => {
            let singular: Vec<SingularPoint> = charts
                .iter()
                .filter(|c| !c.smooth)
                .map(|c| {
                    let both_simple = [&c.q1, &c.q2]
                        .iter()
                        .all(|q| UniPoly::from_poly(q, 0).is_ok_and(|f| f.order_at_zero() == Some(1)));
                    SingularPoint {
                        label: c.label.clone(),
                        kind: if both_simple { PointType::Node } else { PointType::Worse },
                    }
                })
                .collect();
            let smooth = singular.is_empty();
            CurveClassification {
                kind: if smooth { CurveKind::Smooth } else { CurveKind::Singular },
                reduced: true,
                components: vec![Component {
                    name: "S1xS2".into(),
                    multiplicity: 1,
                    genus: smooth.then_some(fourfold_genus(g)),
                }],
                singular_points: singular,
                arithmetic_genus: pa,
            }
        }
    };
    Ok(FiberProduct {
        charts,
        classification,
        ribbon,
        diagonals,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlusRegime {
    Generic,
    Diagonal,
    RibbonTimesSmooth,
    BothZero,
}

impl fmt::Display for PlusRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlusRegime::Generic => "generic",
            PlusRegime::Diagonal => "diagonal",
            PlusRegime::RibbonTimesSmooth => "ribbon-times-smooth",
            PlusRegime::BothZero => "both-zero",
        })
    }
}

/// The plus map on one chart: `Q[t][u]/(char poly) -> fiber product`, `u -> u + v`.
#[derive(Clone, Debug)]
pub struct PlusChart {
    pub label: String,
    pub morphism: RingMorphism,
    pub kernel: KernelReport,
    /// Presentation of the image when the kernel is nonzero.
    pub coimage: Option<Arc<RelationSet>>,
    /// Determinant of the co-map over the base.
    pub det: Poly,
    /// Order of vanishing of `det` at `t = 0` (`None` when `det = 0`).
    pub det_order: Option<usize>,
    pub source_smooth: bool,
    pub blowup: Option<BlowupReport>,
}

impl PlusChart {
    /// The co-map is an isomorphism of local rings.
    pub fn local_iso(&self) -> bool {
        self.det_order == Some(0)
    }

    /// Finite, injective and birational from a smooth source: the chart of a
    /// normalization.
    pub fn normalization(&self) -> bool {
        self.kernel.is_zero() && self.det_order.is_some() && self.source_smooth
    }
}

#[derive(Clone, Debug)]
pub struct PlusImage {
    pub regime: PlusRegime,
    pub image: CurveClassification,
    pub charts: Vec<PlusChart>,
    /// Generic regime: every chart is a local iso or a normalization chart.
    /// Ribbon regime: every blow-up certificate passed.
    pub certified: bool,
}

/// `(u^2 - q1 - q2)^2 - 4 q1 q2` in `[u, t]`.
pub fn composite_char_poly(q1: &Poly, q2: &Poly) -> Result<Poly> {
    let vars = Vars::new(["u", CHART_VAR])?;
    let (a, b) = (q1.embed(&vars)?, q2.embed(&vars)?);
    let u = Poly::var(&vars, "u")?;
    let four = Poly::from_int(&vars, 4);
    Ok((&(&u.pow(2) - &a) - &b).pow(2) - four * a * b)
}

pub fn plus_chart(label: &str, q1: &Poly, q2: &Poly, trunc: u32, want_blowup: bool) -> Result<PlusChart> {
    let source = single_chart_ring(&composite_char_poly(q1, q2)?)?;
    let target = product_chart_ring(q1, q2)?;
    let morphism = RingMorphism::parse(&source, &target, &[("u", "u + v")])?;
    if !morphism.check_well_defined()?.is_well_defined() {
        return Err(SpectralError::Internal(format!("plus map not well defined at {label}")));
    }
    let bound = default_coeff_bound(q1, q2);
    let kernel = kernel_conditions(&morphism, bound)?;
    let coimage = if kernel.is_zero() {
        None
    } else {
        Some(coimage(&morphism, bound)?.ring)
    };
    for g in &kernel.generators {
        if !morphism.apply_elem(g)?.is_zero() {
            return Err(SpectralError::Internal(format!(
                "kernel generator {g} survives at {label}"
            )));
        }
    }
    let det = morphism.matrix()?.det()?;
    let det_order = if det.is_zero() {
        None
    } else {
        let cv = chart_vars();
        UniPoly::from_poly(&det.embed(&cv)?, 0)?.order_at_zero()
    };
    let blowup = if want_blowup {
        let q = if q1.is_zero() { q2 } else { q1 };
        Some(verify_blowup_local(q, trunc)?)
    } else {
        None
    };
    Ok(PlusChart {
        label: label.to_string(),
        source_smooth: jacobian_smooth(&target)?,
        morphism,
        kernel,
        coimage,
        det,
        det_order,
        blowup,
    })
}

pub fn plus_image(ctx: CurveContext, q1: &Differential, q2: &Differential, trunc: u32) -> Result<PlusImage> {
    let g = ctx.genus();
    let cv = chart_vars();
    let s_genus = 4 * g - 3;
    let pa = super::curve::spectral_arithmetic_genus(4, g);
    let regime = match (q1, q2) {
        (Differential::Zero, Differential::Zero) => PlusRegime::BothZero,
        (Differential::Zero, _) | (_, Differential::Zero) => PlusRegime::RibbonTimesSmooth,
        (Differential::NonZero(a), Differential::NonZero(b)) if a == b => PlusRegime::Diagonal,
        _ => PlusRegime::Generic,
    };
    let mut charts = Vec::new();
    let image;
    let certified;
    match regime {
        PlusRegime::Generic => {
            for label in labels(q1, q2) {
                let (c1, c2) = (local_chart(q1, &label)?, local_chart(q2, &label)?);
                charts.push(plus_chart(&label, &c1, &c2, trunc, false)?);
            }
            // a node of S12: q1 - q2 has a simple zero, q1 and q2 do not vanish
            let t = Poly::var(&cv, CHART_VAR)?;
            let one = Poly::one(&cv);
            charts.push(plus_chart("node", &(&one + &t), &one, trunc, false)?);
            certified = charts.iter().all(|c| c.local_iso() || c.normalization());
            let nodes = (1..=ctx.quadratic_zeros())
                .map(|i| SingularPoint {
                    label: format!("d{i}"),
                    kind: PointType::Node,
                })
                .collect();
            image = CurveClassification {
                kind: if certified {
                    CurveKind::Nodal
                } else {
                    CurveKind::Singular
                },
                reduced: true,
                components: vec![Component {
                    name: "S12".into(),
                    multiplicity: 1,
                    genus: certified.then_some(fourfold_genus(g)),
                }],
                singular_points: nodes,
                arithmetic_genus: pa,
            };
        }
        PlusRegime::Diagonal => {
            let mut ls = labels(q1, q2);
            ls.push("generic".into());
            for label in ls {
                let c = local_chart(q1, &label)?;
                let c = if label == "generic" { Poly::one(&cv) } else { c };
                charts.push(plus_chart(&label, &c, &c, trunc, false)?);
            }
            certified = charts.iter().all(|c| c.coimage.is_some());
            image = CurveClassification {
                kind: CurveKind::SigmaUnion,
                reduced: true,
                components: vec![
                    Component {
                        name: "Sigma".into(),
                        multiplicity: 1,
                        genus: Some(g),
                    },
                    Component {
                        name: "S'".into(),
                        multiplicity: 1,
                        genus: Some(s_genus),
                    },
                ],
                singular_points: q1
                    .zeros()
                    .iter()
                    .map(|(l, _)| SingularPoint {
                        label: l.clone(),
                        kind: PointType::Node,
                    })
                    .collect(),
                arithmetic_genus: super::curve::spectral_arithmetic_genus(3, g),
            };
        }
        PlusRegime::RibbonTimesSmooth => {
            for label in labels(q1, q2) {
                let (c1, c2) = (local_chart(q1, &label)?, local_chart(q2, &label)?);
                charts.push(plus_chart(&label, &c1, &c2, trunc, true)?);
            }
            certified = charts
                .iter()
                .all(|c| c.kernel.is_zero() && c.blowup.as_ref().is_some_and(|b| b.all_passed()));
            image = CurveClassification {
                kind: CurveKind::Doubled,
                reduced: false,
                components: vec![Component {
                    name: "S".into(),
                    multiplicity: 2,
                    genus: Some(s_genus),
                }],
                singular_points: Vec::new(),
                arithmetic_genus: pa,
            };
        }
        PlusRegime::BothZero => {
            let z = Poly::zero(&cv);
            charts.push(plus_chart("generic", &z, &z, trunc, false)?);
            certified = charts[0].coimage.is_some();
            image = CurveClassification {
                kind: CurveKind::MultipleSigma,
                reduced: false,
                components: vec![Component {
                    name: "Sigma".into(),
                    multiplicity: 3,
                    genus: Some(g),
                }],
                singular_points: Vec::new(),
                arithmetic_genus: super::curve::spectral_arithmetic_genus(3, g),
            };
        }
    }
    Ok(PlusImage {
        regime,
        image,
        charts,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::QuadDiff;
    use std::collections::BTreeMap;

    fn ctx() -> CurveContext {
        CurveContext::new(2).unwrap()
    }

    fn simple(prefix: &str) -> Differential {
        let zeros = (1..=4).map(|i| (format!("{prefix}{i}"), 1)).collect();
        Differential::NonZero(QuadDiff::new(ctx(), zeros, BTreeMap::new()).unwrap())
    }

    #[test]
    fn disjoint_zeros_give_smooth_product() {
        let fp = fiber_product(ctx(), &simple("p"), &simple("r")).unwrap();
        assert_eq!(fp.classification.kind, CurveKind::Smooth);
        assert_eq!(fp.charts.len(), 8);
        assert!(fp.charts.iter().all(|c| c.smooth));
        assert_eq!(fp.classification.components[0].genus, Some(13));
    }

    #[test]
    fn shared_zeros_are_singular() {
        let fp = fiber_product(ctx(), &simple("p"), &simple("p")).unwrap();
        assert_eq!(fp.classification.components.len(), 2);
        assert!(fp.charts.iter().all(|c| !c.smooth));
        assert!(fp.diagonals.iter().all(|(_, d)| d.iter().all(|c| c.ideal_is_kernel)));
    }

    #[test]
    fn ribbon_fiber_product() {
        let fp = fiber_product(ctx(), &Differential::Zero, &simple("p")).unwrap();
        assert_eq!(fp.classification.kind, CurveKind::Doubled);
        assert!(fp.ribbon.iter().all(|(_, c)| c.holds()));
        assert_eq!(fp.charts[0].ring.relations()[0].to_string(), "u^2");
    }

    #[test]
    fn plus_regimes() {
        let generic = plus_image(ctx(), &simple("p"), &simple("r"), 8).unwrap();
        assert_eq!(generic.regime, PlusRegime::Generic);
        assert!(generic.certified);
        let node = generic.charts.last().unwrap();
        assert_eq!(node.det_order, Some(1));
        assert!(node.normalization());

        let diag = plus_image(ctx(), &simple("p"), &simple("p"), 8).unwrap();
        assert_eq!(diag.regime, PlusRegime::Diagonal);
        assert_eq!(
            diag.charts[0].coimage.as_ref().unwrap().relations()[0].to_string(),
            "u^3 - 4*u*t"
        );
        assert_eq!(
            diag.charts.last().unwrap().coimage.as_ref().unwrap().relations()[0].to_string(),
            "u^3 - 4*u"
        );

        let ribbon = plus_image(ctx(), &Differential::Zero, &simple("p"), 8).unwrap();
        assert!(ribbon.certified);
        assert_eq!(ribbon.image.kind, CurveKind::Doubled);

        let zero = plus_image(ctx(), &Differential::Zero, &Differential::Zero, 8).unwrap();
        assert_eq!(
            zero.charts[0].coimage.as_ref().unwrap().relations()[0].to_string(),
            "u^3"
        );
    }
}
