use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use isospec::higgs::{char_poly, pfaffian, QuadForm};
use isospec::matrix::PolyMatrix;
use isospec::numerology::{strata_table_with, StrataGroup};
use isospec::poly::{gcd_univariate, parse_poly, Poly, Rational, Vars};
use isospec::quotient::{RelationSet, RingMorphism};
use isospec::spectral::{
    classify_spectral_curve, direct_image_higgs, CurveContext, Differential, LocalModule, QuadDiff, SpectralCurveSpec,
};
use isospec::suites::{random_monic, random_q_skew};

fn xyz() -> Vars {
    Vars::new(["x", "y", "z"]).unwrap()
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

prop_compose! {
    fn poly_in(vars: Vars, max_exp: u32)(
        terms in prop::collection::vec(
            (prop::collection::vec(0..=max_exp, vars.len()), -9i64..=9, 1i64..=4),
            0..6,
        )
    ) -> Poly {
        Poly::from_terms(&vars, terms.into_iter().map(|(m, n, d)| (m, rat(n, d))))
    }
}

fn xyz_poly() -> impl Strategy<Value = Poly> {
    poly_in(xyz(), 3)
}

fn univariate(var: &'static str) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 1..5).prop_map(move |cs| {
        let vars = Vars::new([var]).unwrap();
        let x = Poly::var(&vars, var).unwrap();
        cs.iter().enumerate().fold(Poly::zero(&vars), |acc, (k, &c)| {
            &acc + &x.pow(k as u32).scale(&rat(c, 1))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in xyz_poly(), b in xyz_poly(), c in xyz_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(&xyz()), a.clone());
    }

    #[test]
    fn print_parse_round_trip(p in xyz_poly()) {
        let text = p.to_string();
        prop_assert_eq!(parse_poly(&text, &xyz()).unwrap(), p);
    }

    #[test]
    fn gcd_contains_common_factor(a in univariate("t"), b in univariate("t"), r in univariate("t")) {
        prop_assume!(!r.is_zero() && !a.is_zero() && !b.is_zero());
        let g = gcd_univariate(&(&a * &r), &(&b * &r)).unwrap();
        prop_assert!(g.div_exact(&r).is_some(), "gcd {} misses {}", g, r);
        prop_assert!((&a * &r).div_exact(&g).is_some());
        prop_assert!((&b * &r).div_exact(&g).is_some());
    }

    #[test]
    fn normal_form_is_a_ring_map(a in poly_in(Vars::new(["u", "v", "t"]).unwrap(), 4),
                                 b in poly_in(Vars::new(["u", "v", "t"]).unwrap(), 4)) {
        let ring = RelationSet::parse(&["t"], &[("u", "u^2 - t"), ("v", "v^3 - t*v + 1")]).unwrap();
        let nf = |p: &Poly| ring.normal_form(&p.embed(ring.vars()).unwrap()).unwrap();
        let (na, nb) = (nf(&a), nf(&b));
        prop_assert!(ring.is_reduced(&na));
        prop_assert_eq!(nf(&na), na.clone());
        prop_assert_eq!(nf(&(&a * &b)), nf(&(&na * &nb)));
        prop_assert_eq!(nf(&(&a + &b)), &na + &nb);
    }

    #[test]
    fn plus_morphism_is_multiplicative(a in poly_in(Vars::new(["w", "q1", "q2"]).unwrap(), 3),
                                       b in poly_in(Vars::new(["w", "q1", "q2"]).unwrap(), 3)) {
        let src = Arc::new(RelationSet::parse(
            &["q1", "q2"],
            &[("w", "w^4 - 2*(q1 + q2)*w^2 + (q1 - q2)^2")],
        ).unwrap());
        let tgt = Arc::new(RelationSet::parse(&["q1", "q2"], &[("u", "u^2 - q1"), ("v", "v^2 - q2")]).unwrap());
        let f = RingMorphism::parse(&src, &tgt, &[("w", "u + v")]).unwrap();
        prop_assert!(f.check_well_defined().unwrap().is_well_defined());
        let (a, b) = (a.embed(src.vars()).unwrap(), b.embed(src.vars()).unwrap());
        let lhs = f.apply(&(&a * &b)).unwrap();
        let rhs = f.apply(&a).unwrap().mul(&f.apply(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn char_poly_is_conjugation_invariant(ints in prop::collection::vec(-3i64..=3, 9), seed in any::<u64>()) {
        let vars = Vars::new(["a", "b"]).unwrap();
        let p = PolyMatrix::from_ints(&vars, &[&ints[0..3], &ints[3..6], &ints[6..9]]);
        prop_assume!(!p.det().unwrap().is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = PolyMatrix::zeros(&vars, 3, 3);
        for i in 0..3 {
            for j in 0..3 {
                m.set(i, j, isospec::suites::random_univariate(&mut rng, &vars, if (i + j) % 2 == 0 { "a" } else { "b" }, 1));
            }
        }
        let conj = p.checked_mul(&m).unwrap().checked_mul(&p.inverse_rational().unwrap()).unwrap();
        prop_assert_eq!(char_poly(&conj).unwrap(), char_poly(&m).unwrap());
    }

    #[test]
    fn pfaffian_squares_to_det(seed in any::<u64>(), which in 0usize..3) {
        let form = [QuadForm::omega_squared(), QuadForm::split(2), QuadForm::identity(4)][which].clone();
        let m = random_q_skew(&mut ChaCha8Rng::seed_from_u64(seed), &form);
        let pf = pfaffian(&m, &form).unwrap();
        prop_assert_eq!(&pf * &pf, m.det().unwrap());
    }

    #[test]
    fn direct_image_of_random_monic(seed in any::<u64>()) {
        let tv = Vars::new(["u", "t"]).unwrap();
        let f = random_monic(&mut ChaCha8Rng::seed_from_u64(seed), &tv, 4);
        let ring = Arc::new(RelationSet::new(&tv, vec![("u", f.clone())]).unwrap());
        let d = direct_image_higgs(&LocalModule::free(ring).unwrap(), &Poly::var(&tv, "u").unwrap()).unwrap();
        prop_assert!(d.char_matches(&f, "u").unwrap());
    }

    #[test]
    fn classification_is_scale_invariant(k in 1i64..20, extra in 0u32..3, g in 2u32..5) {
        let ctx = CurveContext::new(g).unwrap();
        let n = ctx.quadratic_zeros();
        let mut zeros = vec![("p1".to_string(), 2 + extra)];
        zeros.extend((2..=n - 1 - extra).map(|i| (format!("p{i}"), 1)));
        let t = isospec::spectral::chart_vars();
        let chart = parse_poly(&format!("t^{} + t^{}", 2 + extra, 3 + extra), &t).unwrap();
        let q = QuadDiff::new(ctx, zeros, BTreeMap::from([("p1".to_string(), chart)])).unwrap();
        let base = classify_spectral_curve(&SpectralCurveSpec::double(ctx, Differential::NonZero(q.clone()))).unwrap();
        let scaled = q.scaled(&rat(k * k, 1));
        let cl = classify_spectral_curve(&SpectralCurveSpec::double(ctx, Differential::NonZero(scaled))).unwrap();
        prop_assert_eq!(cl, base);
    }
}

#[test]
fn strata_constant_for_small_genus() {
    for g in 2..=6i64 {
        let sl4 = strata_table_with(StrataGroup::Sl4, g, 0).unwrap();
        assert!(sl4.rows.iter().all(|r| r.total_dim == 15 * (g - 1)));
        for dp in 0..=3 * (g - 1) {
            let so4 = strata_table_with(StrataGroup::So4, g, dp).unwrap();
            assert!(so4.rows.iter().all(|r| r.total_dim == 6 * (g - 1)), "g={g} d'={dp}");
        }
    }
}
