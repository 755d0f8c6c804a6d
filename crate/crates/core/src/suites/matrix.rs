use super::{guarded, random_q_skew, SuiteConfig};
use crate::higgs::{
    base_isogeny_map, char_poly, frame_quadforms, hitchin_point, pfaffian, so13_reduce, tensor_higgs,
    verify_reduced_ch, CharPoly, Group, HiggsError, QuadForm,
};
use crate::matrix::PolyMatrix;
use crate::poly::{parse_poly, Poly, Vars};
use crate::report::{CheckResult, Status};

fn abc() -> Vars {
    Vars::new(["a", "b", "c"]).expect("distinct names")
}

fn phi(vars: &Vars, a: &str, b: &str, c: &str) -> PolyMatrix {
    let neg_a = format!("-({a})");
    PolyMatrix::parse(vars, &[&[a, b], &[c, &neg_a]]).expect("entries parse")
}

fn p(text: &str, vars: &Vars) -> Poly {
    parse_poly(text, vars).expect("fixed text parses")
}

/// Compares coefficients, highest power first in the witness.
fn char_check(c: CheckResult, cp: &CharPoly, want: &[Poly]) -> CheckResult {
    let ok = cp.degree() + 1 == want.len() && want.iter().enumerate().all(|(k, w)| &cp.coeff(k) == w);
    let expected: Vec<String> = want.iter().rev().map(|w| w.to_string()).collect();
    c.witness("char_poly", cp)
        .witness("expected_coeffs", expected.join(" | "))
        .verdict(ok)
}

pub fn matrix_checks(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let v = abc();
    let f = phi(&v, "a", "b", "c");

    out.push(guarded(
        "matrix.frame.congruence",
        "P^t Q1 P = Q2 for the frame change",
        |c| {
            let forms = frame_quadforms()?;
            Ok::<_, HiggsError>(
                c.witness("P", &forms.p)
                    .witness("Q1", forms.q1.matrix())
                    .witness("Q2", forms.q2.matrix()),
            )
        },
    ));

    out.push(guarded(
        "matrix.so13.beta",
        "phi ⊗ 1 - 1 ⊗ phi is [[0, beta], [-beta^T, 0]] with beta = [-c, 2a, b]",
        |c| {
            let r = so13_reduce(&f)?;
            Ok::<_, HiggsError>(
                c.witness("beta", &r.beta)
                    .witness("beta_T", &r.beta_t)
                    .witness("Phi'", &r.phi_prime)
                    .verdict(r.beta.to_string() == "[-c, 2*a, b]"),
            )
        },
    ));

    let q = p("a^2 + b*c", &v);
    out.push(guarded("matrix.q_convention", "q = a^2 + bc = -det(phi)", |c| {
        let det = f.det()?;
        Ok::<_, HiggsError>(
            c.witness("q", &q)
                .witness("det(phi)", &det)
                .witness(
                    "note",
                    "the statement q = det(phi) differs by a sign; q = -det(phi) is used",
                )
                .verdict(q == -det),
        )
    }));

    let big = tensor_higgs(&f, &-&f);
    out.push(guarded("matrix.ch.cube", "Phi^3 = 4q Phi", |c| {
        let r = verify_reduced_ch(big.as_ref().map_err(Clone::clone)?)?;
        let four_q = q.scale(&crate::poly::Rational::from_integer(4.into()));
        Ok::<_, HiggsError>(
            c.witness("c", &r.c)
                .witness("4q", &four_q)
                .verdict(r.identity_holds && r.c == four_q),
        )
    }));
    out.push(guarded("matrix.ch.trace", "Tr(Phi^2) = 4q as stated", |c| {
        let r = verify_reduced_ch(big.as_ref().map_err(Clone::clone)?)?;
        let eight_q = q.scale(&crate::poly::Rational::from_integer(8.into()));
        let four_q = q.scale(&crate::poly::Rational::from_integer(4.into()));
        let c = c
            .witness("computed Tr(Phi^2)", &r.tr2)
            .witness("stated", &four_q)
            .witness("note", "Phi^3 = (Tr(Phi^2)/2) Phi holds with Tr(Phi^2) = 8q");
        Ok::<_, HiggsError>(if r.tr2 == four_q {
            c.status(Status::Pass)
        } else if r.tr2 == eight_q && r.c_is_half_trace {
            c.status(Status::Flagged)
        } else {
            c.status(Status::Fail)
        })
    }));

    let w = Vars::new(["a1", "b1", "c1", "a2", "b2", "c2"]).expect("distinct names");
    let (f1, f2) = (phi(&w, "a1", "b1", "c1"), phi(&w, "a2", "b2", "c2"));
    let (q1, q2) = (p("a1^2 + b1*c1", &w), p("a2^2 + b2*c2", &w));
    out.push(guarded(
        "matrix.charpoly.tensor",
        "det(eta - phi1 ⊗ 1 - 1 ⊗ phi2) = eta^4 - 2(q1 + q2) eta^2 + (q1 - q2)^2",
        |c| {
            let cp = char_poly(&tensor_higgs(&f1, &f2)?)?;
            let z = Poly::zero(&w);
            let a2 = (&q1 + &q2).scale(&crate::poly::Rational::from_integer((-2).into()));
            let a0 = (&q1 - &q2).pow(2);
            Ok::<_, HiggsError>(char_check(c, &cp, &[a0, z.clone(), a2, z, Poly::one(&w)]))
        },
    ));

    out.push(guarded(
        "matrix.charpoly.so13",
        "SO(1,3) image: eta^2 (eta^2 - 4q)",
        |c| {
            let cp = char_poly(big.as_ref().map_err(Clone::clone)?)?;
            let z = Poly::zero(&v);
            let a2 = q.scale(&crate::poly::Rational::from_integer((-4).into()));
            Ok::<_, HiggsError>(char_check(c, &cp, &[z.clone(), z.clone(), a2, z, Poly::one(&v)]))
        },
    ));

    let bg = Vars::new(["beta", "gamma"]).expect("distinct names");
    out.push(guarded(
        "matrix.charpoly.so_star4",
        "SO*(4) image of (0, [[0, beta], [gamma, 0]]): (eta^2 - beta*gamma)^2",
        |c| {
            let real = PolyMatrix::parse(&bg, &[&["0", "beta"], &["gamma", "0"]])?;
            let cp = char_poly(&tensor_higgs(&PolyMatrix::zeros(&bg, 2, 2), &real)?)?;
            let z = Poly::zero(&bg);
            let bgp = p("beta*gamma", &bg);
            let a2 = bgp.scale(&crate::poly::Rational::from_integer((-2).into()));
            Ok::<_, HiggsError>(char_check(c, &cp, &[bgp.pow(2), z.clone(), a2, z, Poly::one(&bg)]))
        },
    ));

    out.push(guarded(
        "matrix.hitchin.a2",
        "a2 = -Tr(Phi^2)/2 and the base map (q1, q2) -> (-2(q1 + q2), q1 - q2)",
        |c| {
            let t = tensor_higgs(&f1, &f2)?;
            let pt = hitchin_point(&t, Group::So4(QuadForm::omega_squared()))?;
            let (a2, pf) = base_isogeny_map(&q1, &q2)?;
            let sign = if pt.second == pf {
                "+"
            } else if pt.second == -&pf {
                "-"
            } else {
                "none"
            };
            Ok::<_, HiggsError>(
                c.witness("a2", &pt.first)
                    .witness("Pf", &pt.second)
                    .witness("Pf orientation relative to q1 - q2", sign)
                    .verdict(pt.first == a2 && sign != "none"),
            )
        },
    ));

    let mut rng = cfg.rng(2);
    out.push(guarded(
        "matrix.pfaffian.random",
        "Pf^2 = det for 20 random Q-skew matrices",
        |c| {
            let forms = [QuadForm::omega_squared(), QuadForm::split(2), QuadForm::identity(4)];
            let mut worst = None;
            for i in 0..20 {
                let form = &forms[i % forms.len()];
                let m = random_q_skew(&mut rng, form);
                let pf = pfaffian(&m, form)?;
                if &pf * &pf != m.det()? {
                    worst = Some(m.to_string());
                }
            }
            Ok::<_, HiggsError>(match worst {
                None => c.witness("samples", 20),
                Some(m) => c.witness("counterexample", m).status(Status::Fail),
            })
        },
    ));

    out.push(guarded("matrix.zero", "zero inputs give zero outputs", |c| {
        let z = PolyMatrix::zeros(&v, 2, 2);
        let t = tensor_higgs(&z, &z)?;
        let cp = char_poly(&t)?;
        Ok::<_, HiggsError>(
            c.witness("char_poly", &cp)
                .verdict(t.is_zero() && cp.to_string() == "eta^4"),
        )
    }));

    out
}
