//! Verification suites. Each suite returns its checks; [`run`] merges them
//! into a [`Report`] ordered by check id.

mod geometry;
mod matrix;
mod numerology;
mod ring;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Rational, Vars};
use crate::report::{CheckResult, Report};

pub use geometry::geometry_checks;
pub use matrix::matrix_checks;
pub use numerology::numerology_checks;
pub use ring::ring_checks;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Ring,
    Matrix,
    Geometry,
    Numerology,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Suite::All),
            "ring" => Ok(Suite::Ring),
            "matrix" => Ok(Suite::Matrix),
            "geometry" => Ok(Suite::Geometry),
            "numerology" => Ok(Suite::Numerology),
            _ => Err(format!("unknown suite `{s}`")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Ring => "ring",
            Suite::Matrix => "matrix",
            Suite::Geometry => "geometry",
            Suite::Numerology => "numerology",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub genus: u32,
    /// Truncation order for power-series checks.
    pub trunc: u32,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            genus: 2,
            trunc: 8,
            seed: 0,
        }
    }
}

impl SuiteConfig {
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Report {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Ring {
        checks.extend(ring_checks(cfg));
    }
    if all || suite == Suite::Matrix {
        checks.extend(matrix_checks(cfg));
    }
    if all || suite == Suite::Geometry {
        checks.extend(geometry_checks(cfg));
    }
    if all || suite == Suite::Numerology {
        checks.extend(numerology_checks(cfg));
    }
    Report::new(checks)
}

/// Turns an `Err` into a failed check so one broken computation does not hide
/// the rest of the suite.
pub(crate) fn guarded<E: fmt::Display>(
    id: &str,
    anchor: &str,
    f: impl FnOnce(CheckResult) -> Result<CheckResult, E>,
) -> CheckResult {
    f(CheckResult::new(id, anchor)).unwrap_or_else(|e| CheckResult::errored(id, anchor, e))
}

fn small(rng: &mut impl Rng) -> Rational {
    Rational::from_integer(rng.gen_range(-5i64..=5).into())
}

/// Random polynomial in `var` of degree at most `deg`, small integer
/// coefficients, not identically zero.
pub fn random_univariate(rng: &mut impl Rng, vars: &Vars, var: &str, deg: u32) -> Poly {
    let x = Poly::var(vars, var).expect("variable in context");
    loop {
        let p = (0..=deg).fold(Poly::zero(vars), |acc, k| &acc + &x.pow(k).scale(&small(rng)));
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random monic polynomial in `u` of degree `1..=max_deg` whose lower
/// coefficients are polynomials of degree at most 2 in the other variables
/// of `vars` (assumed to be a single base variable `t`).
pub fn random_monic(rng: &mut impl Rng, vars: &Vars, max_deg: u32) -> Poly {
    let u = Poly::var(vars, "u").expect("u in context");
    let n = rng.gen_range(1..=max_deg);
    (0..n).fold(u.pow(n), |acc, k| {
        let c = (0..=2).fold(Poly::zero(vars), |c, e| {
            let t = Poly::var(vars, "t").expect("t in context");
            &c + &t.pow(e).scale(&small(rng))
        });
        &acc + &(&c * &u.pow(k))
    })
}

/// `Q^{-1} A` for a random antisymmetric integer `A`: skew for `Q`.
pub fn random_q_skew(rng: &mut impl Rng, q: &crate::higgs::QuadForm) -> PolyMatrix {
    let n = q.dim();
    let vars = Vars::empty();
    let mut a = PolyMatrix::zeros(&vars, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let c = Poly::constant(&vars, small(rng));
            a.set(j, i, -&c);
            a.set(i, j, c);
        }
    }
    let inv = q.matrix().inverse_rational().expect("nondegenerate form");
    inv.checked_mul(&a).expect("square")
}
