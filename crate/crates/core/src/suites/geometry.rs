use std::collections::BTreeMap;
use std::sync::Arc;

use super::{guarded, random_monic, SuiteConfig};
use crate::matrix::PolyMatrix;
use crate::poly::{parse_poly, Rational, Vars};
use crate::quotient::RelationSet;
use crate::report::CheckResult;
use crate::spectral::{
    box_product, chart_vars, classify_spectral_curve, diagonal_restriction, direct_image_higgs, fiber_product,
    plus_image, CurveContext, CurveKind, Differential, LocalModule, PlusRegime, QuadDiff, SpectralCurveSpec,
    SpectralError,
};

type R = Result<CheckResult, SpectralError>;

fn simple(ctx: CurveContext, prefix: &str) -> Differential {
    let zeros = (1..=ctx.quadratic_zeros())
        .map(|i| (format!("{prefix}{i}"), 1))
        .collect();
    Differential::NonZero(QuadDiff::new(ctx, zeros, BTreeMap::new()).expect("simple divisor"))
}

/// Direct image of `theta` on the free module over `ring`, compared with
/// `expected` read as a polynomial in `var`.
fn direct_image_check(c: CheckResult, ring: RelationSet, theta: &str, expected: &str, var: &str) -> R {
    let ring = Arc::new(ring);
    let m = LocalModule::free(ring.clone())?;
    let th = parse_poly(theta, ring.vars())?;
    let d = direct_image_higgs(&m, &th)?;
    let want = parse_poly(expected, ring.vars())?;
    let ok = d.char_matches(&want, var)?;
    Ok(c.witness("rank", d.rank)
        .witness("Phi", &d.phi)
        .witness("char_poly", &d.char_poly)
        .witness("expected", format!("{want} at {var} = eta"))
        .verdict(ok))
}

pub fn geometry_checks(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let ctx = match CurveContext::new(cfg.genus) {
        Ok(ctx) => ctx,
        Err(e) => return vec![CheckResult::errored("geometry.context", "curve of genus at least 2", e)],
    };
    let g = cfg.genus;
    let (p, r) = (simple(ctx, "p"), simple(ctx, "r"));

    out.push(guarded(
        "geometry.classify.smooth",
        "eta^2 = q with simple zeros is smooth of genus 4g - 3",
        |c| {
            let cl = classify_spectral_curve(&SpectralCurveSpec::double(ctx, p.clone()))?;
            Ok::<_, SpectralError>(
                c.witness("classification", &cl)
                    .verdict(cl.kind == CurveKind::Smooth && cl.components[0].genus == Some(4 * g - 3)),
            )
        },
    ));
    out.push(guarded(
        "geometry.classify.ribbon",
        "q = 0 gives the ribbon 2Sigma",
        |c| {
            let cl = classify_spectral_curve(&SpectralCurveSpec::double(ctx, Differential::Zero))?;
            Ok::<_, SpectralError>(
                c.witness("classification", &cl)
                    .verdict(cl.kind == CurveKind::Ribbon && !cl.reduced),
            )
        },
    ));
    out.push(guarded(
        "geometry.classify.generic_pair",
        "S12 is nodal over the zeros of q1 - q2",
        |c| {
            let cl = classify_spectral_curve(&SpectralCurveSpec::pair(ctx, p.clone(), r.clone()))?;
            Ok::<_, SpectralError>(
                c.witness("classification", &cl)
                    .verdict(cl.kind == CurveKind::Nodal && cl.singular_points.len() == ctx.quadratic_zeros() as usize),
            )
        },
    ));
    out.push(guarded(
        "geometry.classify.scaling",
        "classification is unchanged by q -> c^2 q",
        |c| {
            let t = chart_vars();
            let zeros: Vec<(String, u32)> = std::iter::once(("p1".to_string(), 2))
                .chain((2..ctx.quadratic_zeros()).map(|i| (format!("p{i}"), 1)))
                .collect();
            let charts = BTreeMap::from([("p1".to_string(), parse_poly("t^2 + t^3", &t)?)]);
            let q = QuadDiff::new(ctx, zeros, charts)?;
            let base = classify_spectral_curve(&SpectralCurveSpec::double(ctx, Differential::NonZero(q.clone())))?;
            let mut ok = true;
            for k in [2i64, 3, -5] {
                let s = q.scaled(&Rational::from_integer((k * k).into()));
                let cl = classify_spectral_curve(&SpectralCurveSpec::double(ctx, Differential::NonZero(s)))?;
                ok &= cl == base;
            }
            Ok::<_, SpectralError>(c.witness("classification", &base).verdict(ok))
        },
    ));

    out.push(guarded(
        "geometry.fiber.smooth",
        "S1 x S2 is smooth for disjoint simple zeros",
        |c| {
            let fp = fiber_product(ctx, &p, &r)?;
            Ok::<_, SpectralError>(
                c.witness("classification", &fp.classification)
                    .witness("charts", fp.charts.len())
                    .verdict(fp.classification.kind == CurveKind::Smooth && fp.charts.iter().all(|ch| ch.smooth)),
            )
        },
    ));
    out.push(guarded(
        "geometry.fiber.diagonal",
        "S x S = Delta+ ∪ Delta- meeting over the zeros of q",
        |c| {
            let fp = fiber_product(ctx, &p, &p)?;
            let ok = fp.classification.components.len() == 2
                && fp
                    .diagonals
                    .iter()
                    .all(|(_, d)| d.len() == 2 && d.iter().all(|x| x.ideal_is_kernel));
            Ok::<_, SpectralError>(c.witness("classification", &fp.classification).verdict(ok))
        },
    ));
    out.push(guarded(
        "geometry.fiber.split_ribbon",
        "2Sigma x S is a split ribbon on S",
        |c| {
            let fp = fiber_product(ctx, &Differential::Zero, &p)?;
            let ok = !fp.ribbon.is_empty() && fp.ribbon.iter().all(|(_, cert)| cert.holds());
            Ok::<_, SpectralError>(
                c.witness("chart_ring", &fp.charts[0].ring)
                    .witness("classification", &fp.classification)
                    .verdict(ok),
            )
        },
    ));

    out.push(guarded(
        "geometry.plus.generic",
        "plus image is S12, normalized by S1 x S2 at every node",
        |c| {
            let im = plus_image(ctx, &p, &r, cfg.trunc)?;
            let kernels_zero = im.charts.iter().all(|ch| ch.kernel.is_zero());
            Ok::<_, SpectralError>(
                c.witness("image", &im.image)
                    .witness(
                        "node_chart_det_order",
                        format!("{:?}", im.charts.last().and_then(|ch| ch.det_order)),
                    )
                    .verdict(im.regime == PlusRegime::Generic && im.certified && kernels_zero),
            )
        },
    ));
    out.push(guarded(
        "geometry.plus.diagonal",
        "plus image of S x S is Sigma ∪ S'",
        |c| {
            let im = plus_image(ctx, &p, &p, cfg.trunc)?;
            let rels: Vec<String> = im
                .charts
                .iter()
                .map(|ch| {
                    format!(
                        "{}: {}",
                        ch.label,
                        ch.coimage.as_ref().map_or("-".into(), |r| r.to_string())
                    )
                })
                .collect();
            Ok::<_, SpectralError>(
                c.witness("image", &im.image)
                    .witness("coimages", rels.join("; "))
                    .verdict(
                        im.regime == PlusRegime::Diagonal && im.certified && im.image.kind == CurveKind::SigmaUnion,
                    ),
            )
        },
    ));
    out.push(guarded(
        "geometry.plus.ribbon",
        "plus image of 2Sigma x S is 2S, a blow-up at the ramification",
        |c| {
            let im = plus_image(ctx, &Differential::Zero, &p, cfg.trunc)?;
            Ok::<_, SpectralError>(
                c.witness("image", &im.image)
                    .witness(
                        "blowup_charts",
                        im.charts.iter().filter(|ch| ch.blowup.is_some()).count(),
                    )
                    .verdict(im.certified && im.image.kind == CurveKind::Doubled),
            )
        },
    ));

    out.push(guarded(
        "geometry.direct_image.smooth",
        "free module over R[u]/(u^2 - q), theta = u",
        |c| direct_image_check(c, RelationSet::parse(&["q"], &[("u", "u^2 - q")])?, "u", "u^2 - q", "u"),
    ));
    out.push(guarded(
        "geometry.direct_image.product",
        "free module over the fiber product, theta = u + v",
        |c| {
            direct_image_check(
                c,
                RelationSet::parse(&["q1", "q2"], &[("u", "u^2 - q1"), ("v", "v^2 - q2")])?,
                "u + v",
                "u^4 - 2*(q1 + q2)*u^2 + (q1 - q2)^2",
                "u",
            )
        },
    ));
    out.push(guarded(
        "geometry.direct_image.ribbon",
        "free module over R[u,v]/(u^2, v^2 - q), theta = u + v",
        |c| {
            direct_image_check(
                c,
                RelationSet::parse(&["q"], &[("u", "u^2"), ("v", "v^2 - q")])?,
                "u + v",
                "(u^2 - q)^2",
                "u",
            )
        },
    ));

    let mut rng = cfg.rng(3);
    let tv = Vars::new(["u", "t"]).expect("distinct names");
    let mut failures = Vec::new();
    for _ in 0..10 {
        let f = random_monic(&mut rng, &tv, 4);
        let res = (|| -> Result<bool, SpectralError> {
            let ring = Arc::new(RelationSet::new(&tv, vec![("u", f.clone())])?);
            let d = direct_image_higgs(&LocalModule::free(ring)?, &parse_poly("u", &tv)?)?;
            d.char_matches(&f, "u")
        })();
        if !matches!(res, Ok(true)) {
            failures.push(format!("{f}: {res:?}"));
        }
    }
    out.push(if failures.is_empty() {
        CheckResult::new(
            "geometry.direct_image.random",
            "char poly of u on R[u]/(f) is f(eta), 10 random monic f",
        )
        .witness("samples", 10)
    } else {
        CheckResult::new(
            "geometry.direct_image.random",
            "char poly of u on R[u]/(f) is f(eta), 10 random monic f",
        )
        .witness("failures", failures.join("; "))
        .verdict(false)
    });

    out.push(guarded(
        "geometry.box.rank",
        "rank(M1 ⊠ M2) = rank(M1) rank(M2); u acts through M1",
        |c| {
            let nil = Arc::new(RelationSet::parse(&["t"], &[("u", "u^2")])?);
            let base = nil.base_vars();
            let e = LocalModule::new(nil.clone(), vec![("u", PolyMatrix::zeros(&base, 2, 2))])?;
            let l = LocalModule::free(Arc::new(RelationSet::parse(&["t"], &[("v", "v^2 - t")])?))?;
            let bx = box_product(&e, &l)?;
            let zero = box_product(&LocalModule::zero(nil), &l)?;
            let ok =
                bx.rank() == e.rank() * l.rank() && bx.action("u").is_some_and(|a| a.is_zero()) && zero.rank() == 0;
            Ok::<_, SpectralError>(c.witness("rank", bx.rank()).witness("ring", bx.ring()).verdict(ok))
        },
    ));

    out.push(
        CheckResult::new(
            "geometry.diagonal_restriction",
            "p1*L ⊗ p2*sigma*L restricts to O on Delta+, L^2 on Delta-",
        )
        .witness("deg L = 3", format!("{:?}", diagonal_restriction(3)))
        .verdict(diagonal_restriction(0) == (0, 0) && diagonal_restriction(3) == (0, 6)),
    );

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn geometry_suite_passes() {
        for genus in [2, 3] {
            let cfg = SuiteConfig {
                genus,
                ..SuiteConfig::default()
            };
            for c in geometry_checks(&cfg) {
                assert_eq!(c.status, Status::Pass, "{c}");
            }
        }
    }
}
