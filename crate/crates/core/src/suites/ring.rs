use std::sync::Arc;

use super::{guarded, random_univariate, SuiteConfig};
use crate::poly::{parse_poly, Poly, Rational};
use crate::quotient::{diagonal_ideals, verify_blowup_local, KernelStatus, RelationSet, RingInvolution};
use crate::report::{CheckResult, Status};
use crate::spectral::{chart_vars, composite_char_poly, plus_chart, CHART_VAR};

const PLUS_ANCHOR: &str = "plus map u -> u + v into the fiber product";
const DIAG_ANCHOR: &str = "diagonal plus map has kernel generated by u(u^2 - 4q)";
const BLOWUP_ANCHOR: &str = "(2Sigma, S) plus map is the blow-up of 2S at the ramification";

/// `u^3 - 4 qbar u` in the source context of the plus map.
fn diagonal_generator(qbar: &Poly) -> Poly {
    let src = composite_char_poly(qbar, qbar).expect("chart polynomial");
    let vars = src.vars().clone();
    let u = Poly::var(&vars, "u").expect("u");
    let q = qbar.embed(&vars).expect("chart context");
    &u.pow(3) - &(&u * &q).scale(&Rational::from_integer(4.into()))
}

pub fn ring_checks(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let cv = chart_vars();
    let mut rng = cfg.rng(1);

    for i in 1..=5 {
        let q1 = random_univariate(&mut rng, &cv, CHART_VAR, 6);
        let mut q2 = random_univariate(&mut rng, &cv, CHART_VAR, 6);
        while q2 == q1 {
            q2 = random_univariate(&mut rng, &cv, CHART_VAR, 6);
        }
        let id = format!("ring.plus.generic.{i}");
        out.push(guarded(&id, PLUS_ANCHOR, |c| {
            let chart = plus_chart(&id, &q1, &q2, cfg.trunc, false)?;
            let wd = chart.morphism.check_well_defined()?.is_well_defined();
            Ok::<_, crate::spectral::SpectralError>(
                c.witness("q1", &q1)
                    .witness("q2", &q2)
                    .witness("well_defined", wd)
                    .witness("kernel_generators", chart.kernel.generators.len())
                    .witness("co_map_det", &chart.det)
                    .verdict(wd && chart.kernel.is_zero()),
            )
        }));
    }

    let mut diag_cases: Vec<Poly> = vec![parse_poly("t", &cv).unwrap(), parse_poly("1 + t", &cv).unwrap()];
    diag_cases.extend((0..3).map(|_| random_univariate(&mut rng, &cv, CHART_VAR, 6)));
    for (i, q) in diag_cases.iter().enumerate() {
        let id = format!("ring.plus.diagonal.{}", i + 1);
        out.push(guarded(&id, DIAG_ANCHOR, |c| {
            let chart = plus_chart(&id, q, q, cfg.trunc, false)?;
            let want = diagonal_generator(q);
            let got: Vec<String> = chart.kernel.generators.iter().map(|g| g.value().to_string()).collect();
            let exact = chart.kernel.status == KernelStatus::Exact;
            let single = chart.kernel.generators.len() == 1 && chart.kernel.generators[0].value() == &want;
            let coimage_ok = chart
                .coimage
                .as_ref()
                .is_some_and(|r| r.relations().len() == 1 && r.relations()[0] == want);
            Ok::<_, crate::spectral::SpectralError>(
                c.witness("qbar", q)
                    .witness("kernel", got.join(", "))
                    .witness("expected", &want)
                    .witness(
                        "coimage",
                        chart.coimage.as_ref().map_or("-".to_string(), |r| r.to_string()),
                    )
                    .verdict(exact && single && coimage_ok),
            )
        }));
    }

    out.push(guarded(
        "ring.plus.both_zero",
        "2Sigma x 2Sigma: kernel generated by u^3",
        |c| {
            let z = Poly::zero(&cv);
            let chart = plus_chart("zero", &z, &z, cfg.trunc, false)?;
            let got: Vec<String> = chart.kernel.generators.iter().map(|g| g.value().to_string()).collect();
            Ok::<_, crate::spectral::SpectralError>(c.witness("kernel", got.join(", ")).verdict(got == ["u^3"]))
        },
    ));

    out.push(guarded("ring.plus.ribbon", "(2Sigma, S) plus map is injective", |c| {
        let z = Poly::zero(&cv);
        let t = parse_poly("t", &cv)?;
        let chart = plus_chart("ribbon", &z, &t, cfg.trunc, false)?;
        Ok::<_, crate::spectral::SpectralError>(
            c.witness("co_map_det", &chart.det)
                .witness("kernel_generators", chart.kernel.generators.len())
                .verdict(chart.kernel.is_zero()),
        )
    }));

    for (name, text) in [("t", "t"), ("t_1_plus_t", "t*(1 + t)"), ("t_minus_t3", "t - t^3")] {
        let id = format!("ring.blowup.{name}");
        out.push(guarded(&id, BLOWUP_ANCHOR, |c| {
            let q = parse_poly(text, &cv)?;
            let rep = verify_blowup_local(&q, cfg.trunc)?;
            let mut c = c.witness("qbar", &q).witness("order", rep.order);
            for check in &rep.checks {
                c = c.witness(
                    &check.name,
                    format!("{:?}{}", check.outcome, if check.exact { " (exact)" } else { "" }),
                );
            }
            let composite = rep.composite_u.to_string() == "ut" && rep.composite_eps.to_string() == "epst*ut";
            let c = c
                .witness("composite_u", &rep.composite_u)
                .witness("composite_eps", &rep.composite_eps);
            Ok::<_, crate::quotient::QuotientError>(if rep.is_inconclusive() {
                c.status(Status::Inconclusive)
            } else {
                c.verdict(rep.all_passed() && composite)
            })
        }));
    }

    out.push(guarded(
        "ring.involution.swap",
        "sheet swap splits S x S into +1 and -1 parts",
        |c| {
            let ring = Arc::new(RelationSet::parse(&["t"], &[("u", "u^2 - t"), ("v", "v^2 - t")])?);
            let split = RingInvolution::parse(&ring, &[("u", "v"), ("v", "u")])?.decompose()?;
            let inv: Vec<String> = split.invariant.iter().map(|e| e.value().to_string()).collect();
            let anti: Vec<String> = split.anti_invariant.iter().map(|e| e.value().to_string()).collect();
            let ok = inv == ["1", "u + v", "u*v"] && anti == ["u - v"];
            Ok::<_, crate::quotient::QuotientError>(
                c.witness("invariant", inv.join(", "))
                    .witness("anti_invariant", anti.join(", "))
                    .verdict(ok),
            )
        },
    ));

    out.push(guarded(
        "ring.diagonal_ideals",
        "S x S has components Delta+ = (u - v), Delta- = (u + v), each a copy of S",
        |c| {
            let ring = Arc::new(RelationSet::parse(&["t"], &[("u", "u^2 - t"), ("v", "v^2 - t")])?);
            let comps = diagonal_ideals(&ring)?;
            let mut c = c;
            let mut ok = comps.len() == 2;
            for d in &comps {
                let rel = d.quotient.relations()[0].to_string();
                ok &= d.ideal_is_kernel && rel.ends_with("^2 - t");
                c = c.witness(&d.label, format!("({}) -> {}", d.generator.value(), d.quotient));
            }
            Ok::<_, crate::quotient::QuotientError>(c.verdict(ok))
        },
    ));

    out
}
