//! One PASS/FAIL line per acceptance criterion. All comparisons are exact;
//! the only numeric tolerances are the wall-clock limits below.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isospec::poly::{parse_poly, Poly, Rational, Vars};
use isospec::report::{CheckResult, Report, Status};
use isospec::suites::{run, Suite, SuiteConfig};

/// Criterion 1 runtime limit.
const PLUS_MAP_LIMIT: Duration = Duration::from_secs(5);
/// Limit for the whole acceptance run.
const TOTAL_LIMIT: Duration = Duration::from_secs(60);
const ROUND_TRIP_SAMPLES: usize = 100;
const ROUND_TRIP_SEED: u64 = 20240611;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn find<'a>(r: &'a Report, id: &str) -> Result<&'a CheckResult, String> {
    r.results
        .iter()
        .find(|c| c.id == id)
        .ok_or(format!("missing check {id}"))
}

fn expect(r: &Report, id: &str, want: Status) -> Result<(), String> {
    let c = find(r, id)?;
    if c.status == want {
        Ok(())
    } else {
        Err(format!("{id}: {} (wanted {want})\n{c}", c.status))
    }
}

fn all_pass(r: &Report, prefix: &str, at_least: usize) -> Result<usize, String> {
    let hits: Vec<&CheckResult> = r.results.iter().filter(|c| c.id.starts_with(prefix)).collect();
    if hits.len() < at_least {
        return Err(format!("{prefix}: {} checks, wanted at least {at_least}", hits.len()));
    }
    for c in &hits {
        expect(r, &c.id, Status::Pass)?;
    }
    Ok(hits.len())
}

fn witness<'a>(c: &'a CheckResult, name: &str) -> Option<&'a str> {
    c.witnesses.iter().find(|w| w.name == name).map(|w| w.value.as_str())
}

fn c1_plus_kernels(cfg: &SuiteConfig) -> Outcome {
    let start = Instant::now();
    let r = run(Suite::Ring, cfg);
    let elapsed = start.elapsed();
    let generic = all_pass(&r, "ring.plus.generic.", 5)?;
    let diagonal = all_pass(&r, "ring.plus.diagonal.", 1)?;
    for c in r.results.iter().filter(|c| c.id.starts_with("ring.plus.generic.")) {
        if witness(c, "kernel_generators") != Some("0") {
            return Err(format!("{}: nonzero kernel", c.id));
        }
    }
    for c in r.results.iter().filter(|c| c.id.starts_with("ring.plus.diagonal.")) {
        if witness(c, "kernel") != witness(c, "expected") {
            return Err(format!("{}: kernel differs from u(u^2 - 4q)", c.id));
        }
    }
    if elapsed >= PLUS_MAP_LIMIT {
        return Err(format!("ring suite took {elapsed:?}, limit {PLUS_MAP_LIMIT:?}"));
    }
    Ok(format!(
        "{generic} generic pairs with zero kernel, {diagonal} diagonal kernels exact, {elapsed:.2?}"
    ))
}

fn c2_coimage(cfg: &SuiteConfig) -> Outcome {
    let r = run(Suite::Ring, cfg);
    for c in r.results.iter().filter(|c| c.id.starts_with("ring.plus.diagonal.")) {
        let want = format!("Q[t][u]/({})", witness(c, "expected").unwrap_or("?"));
        if witness(c, "coimage") != Some(want.as_str()) {
            return Err(format!("{}: coimage {:?}, wanted {want}", c.id, witness(c, "coimage")));
        }
    }
    let g = run(Suite::Geometry, cfg);
    expect(&g, "geometry.plus.diagonal", Status::Pass)?;
    Ok("coimage is R[u]/(u^3 - 4 qbar u) on every chart".into())
}

fn c3_blowup(cfg: &SuiteConfig) -> Outcome {
    let r = run(Suite::Ring, cfg);
    for name in ["t", "t_1_plus_t", "t_minus_t3"] {
        let id = format!("ring.blowup.{name}");
        expect(&r, &id, Status::Pass)?;
        let c = find(&r, &id)?;
        if witness(c, "order") != Some("8") {
            return Err(format!("{id}: order {:?}", witness(c, "order")));
        }
        if witness(c, "composite_u") != Some("ut") || witness(c, "composite_eps") != Some("epst*ut") {
            return Err(format!("{id}: composite differs"));
        }
    }
    Ok("alpha, beta invertible to order 8; composite u -> ut, eps -> ut*epst".into())
}

fn c4_isogeny(cfg: &SuiteConfig) -> Outcome {
    let r = run(Suite::Matrix, cfg);
    expect(&r, "matrix.so13.beta", Status::Pass)?;
    expect(&r, "matrix.frame.congruence", Status::Pass)?;
    let c = find(&r, "matrix.so13.beta")?;
    if witness(c, "beta") != Some("[-c, 2*a, b]") {
        return Err("beta differs".into());
    }
    Ok("beta = [-c, 2a, b]; P^t Q1 P = Q2; block form exact".into())
}

fn c5_cayley_hamilton(cfg: &SuiteConfig) -> Outcome {
    let r = run(Suite::Matrix, cfg);
    expect(&r, "matrix.ch.cube", Status::Pass)?;
    expect(&r, "matrix.ch.trace", Status::Flagged)?;
    expect(&r, "matrix.q_convention", Status::Pass)?;
    let c = find(&r, "matrix.ch.trace")?;
    if witness(c, "computed Tr(Phi^2)") != Some("8*a^2 + 8*b*c") {
        return Err("trace witness differs from 8q".into());
    }
    Ok("Phi^3 = 4q Phi; Tr(Phi^2) = 8q flagged".into())
}

fn c6_char_polys(cfg: &SuiteConfig) -> Outcome {
    let r = run(Suite::Matrix, cfg);
    for id in [
        "matrix.charpoly.tensor",
        "matrix.charpoly.so13",
        "matrix.charpoly.so_star4",
        "matrix.hitchin.a2",
        "matrix.pfaffian.random",
    ] {
        expect(&r, id, Status::Pass)?;
    }
    if witness(find(&r, "matrix.pfaffian.random")?, "samples") != Some("20") {
        return Err("Pf^2 = det sample count".into());
    }
    Ok("tensor, SO(1,3), SO*(4) char polys; a2; Pf^2 = det on 20 samples".into())
}

fn c7_direct_image(cfg: &SuiteConfig) -> Outcome {
    let r = run(Suite::Geometry, cfg);
    for id in ["smooth", "product", "ribbon", "random"] {
        expect(&r, &format!("geometry.direct_image.{id}"), Status::Pass)?;
    }
    if witness(find(&r, "geometry.direct_image.random")?, "samples") != Some("10") {
        return Err("random monic sample count".into());
    }
    Ok("three chart models and 10 random monic f".into())
}

fn c8_strata(cfg: &SuiteConfig) -> Outcome {
    let r = run(Suite::Numerology, cfg);
    for g in 2..=6 {
        expect(&r, &format!("numerology.strata.sl4.g{g}"), Status::Pass)?;
        expect(&r, &format!("numerology.strata.so4.g{g}"), Status::Pass)?;
    }
    expect(&r, "numerology.prym_audit.d0", Status::Pass)?;
    expect(&r, "numerology.prym_audit.dprime", Status::Flagged)?;
    Ok("SL4 totals 15(g-1), SO4 totals 6(g-1) symbolically in d'; audit ok at d' = 0, flagged for d' > 0".into())
}

fn c9_counts(cfg: &SuiteConfig) -> Outcome {
    let r = run(Suite::Numerology, cfg);
    for g in 2..=6 {
        expect(&r, &format!("numerology.counts.g{g}"), Status::Pass)?;
        expect(&r, &format!("numerology.dbar.g{g}"), Status::Pass)?;
    }
    Ok("component counts, g_S, deg L and both dbar formulas for g = 2..6".into())
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &Vars) -> Poly {
    let terms = rng.gen_range(0..6);
    Poly::from_terms(
        vars,
        (0..terms).map(|_| {
            let m = (0..vars.len()).map(|_| rng.gen_range(0..4)).collect();
            let c = Rational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=6).into());
            (m, c)
        }),
    )
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn c10_round_trip_and_exit_codes() -> Outcome {
    let vars = Vars::new(["u", "v", "t", "q1"]).expect("distinct");
    let mut rng = ChaCha8Rng::seed_from_u64(ROUND_TRIP_SEED);
    for i in 0..ROUND_TRIP_SAMPLES {
        let p = random_poly(&mut rng, &vars);
        let back = parse_poly(&p.to_string(), &vars).map_err(|e| format!("sample {i}: {e}"))?;
        if back != p {
            return Err(format!("sample {i}: {p} re-parsed as {back}"));
        }
    }
    let spec = |n: &str| fixture(n);
    let cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["verify".into(), "--suite".into(), "ring".into()], 0),
        (vec!["analyze".into(), "--spec".into(), spec("generic.spec")], 0),
        (vec!["analyze".into(), "--spec".into(), spec("diagonal.spec")], 0),
        (vec!["analyze".into(), "--spec".into(), spec("ribbon.spec")], 0),
        (vec!["analyze".into(), "--spec".into(), spec("bad_expect.spec")], 1),
        (vec!["analyze".into(), "--spec".into(), spec("malformed.spec")], 2),
        (vec!["verify".into(), "--genus".into(), "1".into()], 2),
        (
            vec![
                "strata".into(),
                "--group".into(),
                "so4".into(),
                "--genus".into(),
                "2".into(),
            ],
            0,
        ),
        (
            vec![
                "isogeny".into(),
                "--phi1".into(),
                "1,0,0,1".into(),
                "--phi2".into(),
                "a,b,c".into(),
            ],
            2,
        ),
    ];
    for (args, want) in &cases {
        let got = Command::new(env!("CARGO_BIN_EXE_isospec"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())?
            .status
            .code();
        if got != Some(*want) {
            return Err(format!("{args:?}: exit {got:?}, wanted {want}"));
        }
    }
    Ok(format!(
        "{ROUND_TRIP_SAMPLES} polynomials round-trip; {} exit-code cases",
        cases.len()
    ))
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let cfg = SuiteConfig::default();
    let criteria: Vec<Criterion> = vec![
        ("plus map kernels", Box::new(|| c1_plus_kernels(&cfg))),
        ("diagonal coimage", Box::new(|| c2_coimage(&cfg))),
        ("blow-up", Box::new(|| c3_blowup(&cfg))),
        ("isogeny identities", Box::new(|| c4_isogeny(&cfg))),
        ("Phi^3 = 4q Phi", Box::new(|| c5_cayley_hamilton(&cfg))),
        ("characteristic polynomials", Box::new(|| c6_char_polys(&cfg))),
        ("direct images", Box::new(|| c7_direct_image(&cfg))),
        ("strata dimensions", Box::new(|| c8_strata(&cfg))),
        ("counting formulas", Box::new(|| c9_counts(&cfg))),
        ("round-trip and exit codes", Box::new(c10_round_trip_and_exit_codes)),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    let total = start.elapsed();
    let in_time = total < TOTAL_LIMIT;
    println!(
        "{} total runtime {total:.2?} (limit {TOTAL_LIMIT:?})",
        if in_time { "PASS" } else { "FAIL" }
    );
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
    assert!(in_time);
}
