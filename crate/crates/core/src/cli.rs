//! Command-line surface. The binary only parses arguments and prints what
//! [`execute`] returns.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::higgs::{base_isogeny_map, char_poly, hitchin_point, is_q_skew, so13_reduce, tensor_higgs, Group, QuadForm};
use crate::matrix::PolyMatrix;
use crate::numerology::{strata_table_with, StrataGroup};
use crate::poly::{parse_poly, parse_poly_in, Vars};
use crate::report::{CheckResult, Report};
use crate::spectral::{classify_spectral_curve, fiber_product, parse_curve_spec, plus_image, PlusRegime, SpecData};
use crate::suites::{self, Suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "isospec",
    version,
    about = "Exact checks for spectral curves, Higgs-field isogenies and Hitchin fiber strata"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Ring,
    Matrix,
    Geometry,
    Numerology,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Sl4,
    So4,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
        genus: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Truncation order for power-series checks.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(4..))]
        trunc: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Classify a curve spec and decompose its plus image.
    Analyze {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(4..))]
        trunc: u32,
    },
    /// Strata of a singular Hitchin fiber with a dimension audit.
    Strata {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
        genus: u32,
        /// Degree of D' for the SO(4) rows.
        #[arg(long, default_value_t = 0)]
        dprime: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Tensor Higgs field of two traceless 2x2 fields given as "a,b,c" or "a,b,c,d".
    Isogeny {
        #[arg(long, allow_hyphen_values = true)]
        phi1: String,
        #[arg(long, allow_hyphen_values = true)]
        phi2: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// What a command printed and how it should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg.into() + "\n",
        }
    }

    fn report(report: &Report, format: Format, preamble: String) -> Self {
        let stdout = match format {
            Format::Text => preamble + &report.to_text(),
            Format::Structured => report.to_json_lines(),
        };
        Outcome {
            code: if report.has_failures() {
                EXIT_CHECK_FAILED
            } else {
                EXIT_OK
            },
            stdout,
            stderr: String::new(),
        }
    }
}

pub fn execute(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify {
            suite,
            genus,
            format,
            trunc,
            seed,
        } => {
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Ring => Suite::Ring,
                SuiteArg::Matrix => Suite::Matrix,
                SuiteArg::Geometry => Suite::Geometry,
                SuiteArg::Numerology => Suite::Numerology,
            };
            let report = suites::run(suite, &SuiteConfig { genus, trunc, seed });
            Outcome::report(&report, format, String::new())
        }
        Command::Analyze { spec, format, trunc } => match std::fs::read_to_string(&spec) {
            Err(e) => Outcome::usage(format!("cannot read {}: {e}", spec.display())),
            Ok(text) => analyze(&text, format, trunc),
        },
        Command::Strata {
            group,
            genus,
            dprime,
            format,
        } => strata(group, genus, dprime, format),
        Command::Isogeny { phi1, phi2, format } => isogeny(&phi1, &phi2, format),
    }
}

pub fn analyze(text: &str, format: Format, trunc: u32) -> Outcome {
    let file = match parse_curve_spec(text) {
        Ok(f) => f,
        Err(e) => return Outcome::usage(format!("spec error: {e}")),
    };
    let mut text_out = String::new();
    let mut checks = Vec::new();
    let cl = match classify_spectral_curve(&file.spec) {
        Ok(cl) => cl,
        Err(e) => return Outcome::usage(format!("spec error: {e}")),
    };
    let _ = writeln!(text_out, "genus {}, rank {}", file.spec.ctx.genus(), file.spec.rank());
    let _ = writeln!(text_out, "classification: {cl}");
    let mut c = CheckResult::new("analyze.classification", "classification of the spectral curve")
        .witness("kind", cl.kind)
        .witness("classification", &cl);
    if let Some(want) = file.expect {
        c = c.witness("expected", want).verdict(want == cl.kind);
    }
    checks.push(c);

    if let SpecData::Pair(q1, q2) = &file.spec.data {
        let ctx = file.spec.ctx;
        match fiber_product(ctx, q1, q2) {
            Ok(fp) => {
                let _ = writeln!(text_out, "fiber product: {}", fp.classification);
                let smooth: Vec<String> = fp
                    .charts
                    .iter()
                    .map(|ch| format!("{}={}", ch.label, if ch.smooth { "smooth" } else { "singular" }))
                    .collect();
                checks.push(
                    CheckResult::new("analyze.fiber_product", "local structure of S1 x S2")
                        .witness("classification", &fp.classification)
                        .witness("charts", smooth.join(" ")),
                );
            }
            Err(e) => checks.push(CheckResult::errored(
                "analyze.fiber_product",
                "local structure of S1 x S2",
                e,
            )),
        }
        match plus_image(ctx, q1, q2, trunc) {
            Ok(im) => {
                let summary = match im.regime {
                    PlusRegime::Generic if im.certified => {
                        "nodal S12, normalization certified at each node".to_string()
                    }
                    PlusRegime::Generic => "S12 with singularities beyond nodes; normalization not certified".into(),
                    PlusRegime::Diagonal => "Sigma ∪ S' decomposition".into(),
                    PlusRegime::RibbonTimesSmooth => "2S, blow-up at ramification".into(),
                    PlusRegime::BothZero => "3Sigma".into(),
                };
                let _ = writeln!(text_out, "plus image ({}): {summary}", im.regime);
                let _ = writeln!(text_out, "  {}", im.image);
                let mut c = CheckResult::new("analyze.plus_image", "scheme-theoretic image of the plus map")
                    .witness("regime", im.regime)
                    .witness("summary", &summary)
                    .witness("image", &im.image);
                for ch in &im.charts {
                    let kernel: Vec<String> = ch.kernel.generators.iter().map(|g| g.value().to_string()).collect();
                    let kernel = if kernel.is_empty() {
                        "0".to_string()
                    } else {
                        kernel.join(", ")
                    };
                    let _ = writeln!(
                        text_out,
                        "  chart {}: kernel {kernel}; co-map det {}{}",
                        ch.label,
                        ch.det,
                        ch.blowup.as_ref().map_or(String::new(), |b| format!(
                            "; blow-up checks {}",
                            if b.all_passed() { "pass" } else { "fail" }
                        ))
                    );
                    c = c.witness(format!("kernel[{}]", ch.label), kernel);
                }
                let uncertified = matches!(im.regime, PlusRegime::RibbonTimesSmooth) && !im.certified;
                checks.push(c.verdict(!uncertified));
            }
            Err(e) => checks.push(CheckResult::errored(
                "analyze.plus_image",
                "scheme-theoretic image of the plus map",
                e,
            )),
        }
    }
    Outcome::report(&Report::new(checks), format, text_out)
}

pub fn strata(group: GroupArg, genus: u32, dprime: i64, format: Format) -> Outcome {
    let group = match group {
        GroupArg::Sl4 => StrataGroup::Sl4,
        GroupArg::So4 => StrataGroup::So4,
    };
    let table = match strata_table_with(group, genus as i64, dprime) {
        Ok(t) => t,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let stdout = match format {
        Format::Text => format!("{group} strata, genus {genus}\n{table}\n"),
        Format::Structured => table
            .rows
            .iter()
            .map(|r| serde_json::to_string(r).expect("plain data serializes") + "\n")
            .collect(),
    };
    Outcome {
        code: if table.all_ok() { EXIT_OK } else { EXIT_CHECK_FAILED },
        stdout,
        stderr: String::new(),
    }
}

/// Entries of a 2x2 field: "a,b,c" for [[a, b], [c, -a]] or "a,b,c,d" for
/// [[a, b], [c, d]], which must be traceless.
fn entries(text: &str) -> Result<Vec<String>, String> {
    let parts: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    if !(parts.len() == 3 || parts.len() == 4) || parts.iter().any(String::is_empty) {
        return Err(format!("expected entries \"a,b,c\" or \"a,b,c,d\", got `{text}`"));
    }
    Ok(parts)
}

pub fn isogeny(phi1: &str, phi2: &str, format: Format) -> Outcome {
    let run = || -> Result<Report, String> {
        let (e1, e2) = (entries(phi1)?, entries(phi2)?);
        let mut names: Vec<String> = Vec::new();
        for e in e1.iter().chain(&e2) {
            let p = parse_poly_in(e, &[]).map_err(|err| format!("`{e}`: {err}"))?;
            names.extend(p.vars().names().iter().cloned());
        }
        let vars = Vars::default_order(names);
        let mk = |e: &[String]| -> Result<PolyMatrix, String> {
            let p = |t: &str| parse_poly(t, &vars).map_err(|x| x.to_string());
            let (a, d) = match e.get(3) {
                Some(d) => (p(&e[0])?, p(d)?),
                None => (p(&e[0])?, -p(&e[0])?),
            };
            if !(&a + &d).is_zero() {
                return Err(format!(
                    "field [[{}, {}], [{}, {}]] is not traceless",
                    e[0], e[1], e[2], d
                ));
            }
            PolyMatrix::from_rows(&vars, vec![vec![a, p(&e[1])?], vec![p(&e[2])?, d]]).map_err(|x| x.to_string())
        };
        let (f1, f2) = (mk(&e1)?, mk(&e2)?);
        let big = tensor_higgs(&f1, &f2).map_err(|e| e.to_string())?;
        let cp = char_poly(&big).map_err(|e| e.to_string())?;
        let form = QuadForm::omega_squared();
        let skew = is_q_skew(&big, &form);
        let (q1, q2) = (
            -f1.det().map_err(|e| e.to_string())?,
            -f2.det().map_err(|e| e.to_string())?,
        );
        let (a2, pf) = base_isogeny_map(&q1, &q2).map_err(|e| e.to_string())?;
        let mut checks = vec![
            CheckResult::new("isogeny.field", "Phi = phi1 ⊗ 1 + 1 ⊗ phi2")
                .witness("Phi", &big)
                .witness("char_poly", &cp)
                .witness("(q1, q2)", format!("({q1}, {q2})")),
            CheckResult::new("isogeny.q_skew", "Phi is skew for omega ⊗ omega")
                .witness("q_skew", skew)
                .verdict(skew),
        ];
        let hp = hitchin_point(&big, Group::So4(form));
        checks.push(match hp {
            Ok(pt) => CheckResult::new(
                "isogeny.hitchin",
                "(a2, Pf) matches the base map (-2(q1 + q2), ±(q1 - q2))",
            )
            .witness("(a2, Pf)", format!("({}, {})", pt.first, pt.second))
            .witness("base map", format!("({a2}, {pf})"))
            .verdict(pt.first == a2 && (pt.second == pf || pt.second == -&pf)),
            Err(e) => CheckResult::errored("isogeny.hitchin", "Hitchin point", e),
        });
        if f2 == -&f1 {
            checks.push(match so13_reduce(&f1) {
                Ok(r) => CheckResult::new("isogeny.beta", "beta = [-c, 2a, b] for phi2 = -phi1")
                    .witness("beta", &r.beta)
                    .witness("beta_T", &r.beta_t),
                Err(e) => CheckResult::errored("isogeny.beta", "beta for phi2 = -phi1", e),
            });
        }
        Ok(Report::new(checks))
    };
    match run() {
        Ok(report) => Outcome::report(&report, format, String::new()),
        Err(msg) => Outcome::usage(format!("isogeny: {msg}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isogeny_beta_and_numeric() {
        let o = isogeny("a,b,c", "-a,-b,-c", Format::Text);
        assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
        assert!(o.stdout.contains("beta = [-c, 2*a, b]"));
        let o = isogeny("1,0,0", "-1,0,0", Format::Text);
        assert!(o.stdout.contains("char_poly = eta^4 - 4*eta^2"), "{}", o.stdout);
        let o = isogeny("0,0,0", "0,0,0", Format::Text);
        assert!(o.stdout.contains("char_poly = eta^4"));
        assert_eq!(isogeny("a,b", "a,b,c", Format::Text).code, EXIT_USAGE);
        assert_eq!(isogeny("1,0,0,1", "a,b,c", Format::Text).code, EXIT_USAGE);
        assert_eq!(isogeny("x,0,0,-x", "a,b,c", Format::Text).code, EXIT_OK);
    }

    #[test]
    fn strata_codes() {
        let o = strata(GroupArg::So4, 2, 0, Format::Text);
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(
            o.stdout
                .lines()
                .filter(|l| l.starts_with("A_") || l.starts_with("N "))
                .count(),
            3
        );
        assert_eq!(strata(GroupArg::So4, 2, 9, Format::Text).code, EXIT_USAGE);
    }

    #[test]
    fn analyze_expectations() {
        let spec = "genus: 2\nq1: [(p1,1),(p2,1),(p3,1),(p4,1)]\nq2: q1\nexpect: sigma-union\n";
        let o = analyze(spec, Format::Text, 8);
        assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
        assert!(o.stdout.contains("Sigma ∪ S' decomposition"));
        let o = analyze(&spec.replace("sigma-union", "smooth"), Format::Structured, 8);
        assert_eq!(o.code, EXIT_CHECK_FAILED);
        assert_eq!(analyze("genus: 2\nq1: [(p1,1)\n", Format::Text, 8).code, EXIT_USAGE);
    }
}
