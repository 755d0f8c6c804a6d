use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{prym_dim, require_genus, riemann_roch, spectral_cover_genus, NumerologyError, Result};
use crate::poly::{Poly, Rational, Vars};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrataGroup {
    Sl4,
    So4,
}

impl StrataGroup {
    /// Complex dimension of the group.
    pub fn dim(&self) -> i64 {
        match self {
            StrataGroup::Sl4 => 15,
            StrataGroup::So4 => 6,
        }
    }
}

impl fmt::Display for StrataGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrataGroup::Sl4 => "sl4",
            StrataGroup::So4 => "so4",
        })
    }
}

impl FromStr for StrataGroup {
    type Err = NumerologyError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl4" => Ok(StrataGroup::Sl4),
            "so4" => Ok(StrataGroup::So4),
            _ => Err(NumerologyError::UnknownGroup(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StratumTag {
    N,
    A {
        d: i64,
    },
    /// `SO(4)` strata: even labels `2d` lie in the `+` part, odd labels
    /// `2d - 1` in the `-` part.
    ASigned {
        d: i64,
        parity: Parity,
    },
}

impl fmt::Display for StratumTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumTag::N => f.write_str("N"),
            StratumTag::A { d } => write!(f, "A_{d}"),
            StratumTag::ASigned { d, parity } => {
                write!(f, "A_{d}({})", if *parity == Parity::Plus { "+" } else { "-" })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrataRow {
    pub tag: StratumTag,
    pub d: Option<i64>,
    pub d1: Option<i64>,
    pub d2: Option<i64>,
    pub dbar: Option<i64>,
    pub d_prime: Option<i64>,
    pub base_dim: i64,
    pub fiber_dim: i64,
    pub total_dim: i64,
    pub expected_total: i64,
}

impl StrataRow {
    pub fn audit_ok(&self) -> bool {
        self.base_dim + self.fiber_dim == self.total_dim && self.total_dim == self.expected_total
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrataTable {
    pub group: StrataGroup,
    pub genus: i64,
    pub rows: Vec<StrataRow>,
    /// `k = 2 d2 + dbar`, the value the relation `d2 = (k - dbar)/2` would
    /// need; the same for every `SL(4)` row, so reported once.
    pub implied_k: Option<i64>,
}

impl StrataTable {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(StrataRow::audit_ok)
    }
}

impl fmt::Display for StrataTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
        writeln!(
            f,
            "{:<9} {:>4} {:>4} {:>4} {:>5} {:>4} {:>5} {:>6} {:>6}  audit",
            "stratum", "d", "d1", "d2", "dbar", "d'", "base", "fiber", "total"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<9} {:>4} {:>4} {:>4} {:>5} {:>4} {:>5} {:>6} {:>6}  {}",
                r.tag.to_string(),
                cell(r.d),
                cell(r.d1),
                cell(r.d2),
                cell(r.dbar),
                cell(r.d_prime),
                r.base_dim,
                r.fiber_dim,
                r.total_dim,
                if r.audit_ok() {
                    "ok".to_string()
                } else {
                    format!("FAIL (expected {})", r.expected_total)
                }
            )?;
        }
        if let Some(k) = self.implied_k {
            write!(
                f,
                "implied k = 2*d2 + dbar = {k} on every row (k is not otherwise defined)"
            )?;
        }
        Ok(())
    }
}

pub fn strata_table(group: StrataGroup, g: i64) -> Result<StrataTable> {
    strata_table_with(group, g, 0)
}

/// Strata of the fiber over a doubled spectral curve. `d_prime` is the degree
/// of `D'` on `Sigma`, used for every `SO(4)` row; it is ignored for `SL(4)`.
pub fn strata_table_with(group: StrataGroup, g: i64, d_prime: i64) -> Result<StrataTable> {
    require_genus(g)?;
    let gs = spectral_cover_genus(g)?;
    let expected_total = group.dim() * (g - 1);
    let prym = prym_dim(gs, g)?;
    let mut rows = Vec::new();
    let mut implied_k = None;
    match group {
        StrataGroup::Sl4 => {
            // rank-2 bundles on S with one determinant condition on Sigma
            let n_dim = 4 * (gs - 1) + 1 - g;
            rows.push(StrataRow {
                tag: StratumTag::N,
                d: None,
                d1: None,
                d2: None,
                dbar: None,
                d_prime: None,
                base_dim: n_dim,
                fiber_dim: 0,
                total_dim: n_dim,
                expected_total,
            });
            for d in 1..=4 * (g - 1) {
                let d1 = -d + 2 * (g - 1);
                let d2 = d + 2 * (g - 1);
                let dbar = -2 * d + 8 * (g - 1);
                let base = prym + dbar;
                // h1(S, K_S^* (D)) with deg = dbar - (2g_S - 2) < 0
                let fiber = riemann_roch(dbar - (2 * gs - 2), gs).generic_h1;
                implied_k = Some(2 * d2 + dbar);
                rows.push(StrataRow {
                    tag: StratumTag::A { d },
                    d: Some(d),
                    d1: Some(d1),
                    d2: Some(d2),
                    dbar: Some(dbar),
                    d_prime: None,
                    base_dim: base,
                    fiber_dim: fiber,
                    total_dim: base + fiber,
                    expected_total,
                });
            }
        }
        StrataGroup::So4 => {
            if d_prime < 0 || d_prime > 3 * (g - 1) {
                return Err(NumerologyError::Range(format!("d' = {d_prime} outside 0..=3(g-1)")));
            }
            // h1 of the rank-6 orthogonal adjoint bundle, degree 0, no sections
            let n_dim = 6 * (g - 1);
            rows.push(StrataRow {
                tag: StratumTag::N,
                d: None,
                d1: None,
                d2: None,
                dbar: None,
                d_prime: None,
                base_dim: n_dim,
                fiber_dim: 0,
                total_dim: n_dim,
                expected_total,
            });
            for d in 1..=2 * (g - 1) {
                let parity = if d % 2 == 0 { Parity::Plus } else { Parity::Minus };
                let base = prym + d_prime;
                // h1(Sigma, K^*(D')) with deg = d' - (2g - 2) < 0
                let fiber = riemann_roch(d_prime - (2 * g - 2), g).generic_h1;
                rows.push(StrataRow {
                    tag: StratumTag::ASigned { d, parity },
                    d: Some(d),
                    d1: None,
                    // M sigma^*M = pi^*(K^2(-D'))
                    d2: Some(4 * (g - 1) - d_prime),
                    // D = R + pi^* D'
                    dbar: Some(4 * (g - 1) + 2 * d_prime),
                    d_prime: Some(d_prime),
                    base_dim: base,
                    fiber_dim: fiber,
                    total_dim: base + fiber,
                    expected_total,
                });
            }
        }
    }
    Ok(StrataTable {
        group,
        genus: g,
        rows,
        implied_k,
    })
}

fn line(vars: &Vars, name: &str, slope: i64, constant: i64) -> Result<Poly> {
    let x = Poly::var(vars, name).map_err(|e| NumerologyError::Range(e.to_string()))?;
    Ok(&x.scale(&Rational::from_integer(slope.into())) + &Poly::from_int(vars, constant))
}

/// `base + fiber` of an `SO(4)` stratum as a polynomial in `dprime`:
/// `(g_S - g + d') + (3g - 3 - d')`.
pub fn so4_total_symbolic(g: i64) -> Result<Poly> {
    require_genus(g)?;
    let vars = Vars::new(["dprime"]).expect("one name");
    let prym = prym_dim(spectral_cover_genus(g)?, g)?;
    Ok(&line(&vars, "dprime", 1, prym)? + &line(&vars, "dprime", -1, 3 * g - 3)?)
}

/// `base + fiber` of an `SL(4)` stratum as a polynomial in `d`, with
/// `dbar = -2d + 8(g - 1)`: `(g_S - g + dbar) + (3g_S - 3 - dbar)`.
pub fn sl4_total_symbolic(g: i64) -> Result<Poly> {
    require_genus(g)?;
    let gs = spectral_cover_genus(g)?;
    let vars = Vars::new(["d"]).expect("one name");
    let dbar = line(&vars, "d", -2, 8 * (g - 1))?;
    let base = &dbar + &Poly::from_int(&vars, gs - g);
    let fiber = &Poly::from_int(&vars, 3 * gs - 3) - &dbar;
    Ok(&base + &fiber)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditStatus {
    Ok,
    Flagged,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimReport {
    pub identity: String,
    pub quantities: Vec<(String, i64)>,
    pub computed: i64,
    pub claimed: i64,
    pub status: AuditStatus,
    /// Genericity assumptions behind the computed values.
    pub assumptions: Vec<String>,
}

/// `h1(Sigma, K^{-1}(D')) + dim Prym(S, Sigma)` against `6(g - 1)`.
pub fn dim_audit_prym_sequence(g: i64, d_prime: i64) -> Result<DimReport> {
    require_genus(g)?;
    if d_prime < 0 || d_prime > 3 * (g - 1) {
        return Err(NumerologyError::Range(format!("d' = {d_prime} outside 0..=3(g-1)")));
    }
    let h1 = riemann_roch(d_prime - (2 * g - 2), g).generic_h1;
    let prym = prym_dim(spectral_cover_genus(g)?, g)?;
    let computed = h1 + prym;
    let claimed = 6 * (g - 1);
    Ok(DimReport {
        identity: "h1(K^-1(D')) + dim Prym(S, Sigma) = dim SO(4)*(g-1)".into(),
        quantities: vec![
            ("g".into(), g),
            ("d'".into(), d_prime),
            ("h1(K^-1(D'))".into(), h1),
            ("dim Prym(S, Sigma)".into(), prym),
        ],
        computed,
        claimed,
        status: if computed == claimed {
            AuditStatus::Ok
        } else {
            AuditStatus::Flagged
        },
        assumptions: vec!["D' generic, so K^2(-D') is nonspecial".into()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_tables() {
        let sl = strata_table(StrataGroup::Sl4, 2).unwrap();
        assert_eq!(sl.rows.len(), 5);
        let r1 = &sl.rows[1];
        assert_eq!((r1.d1, r1.d2, r1.dbar), (Some(1), Some(3), Some(6)));
        assert_eq!((r1.base_dim, r1.fiber_dim, r1.total_dim), (9, 6, 15));
        assert_eq!(sl.rows[4].dbar, Some(0));
        assert_eq!(sl.implied_k, Some(12));
        assert!(sl.all_ok());

        let so = strata_table_with(StrataGroup::So4, 2, 1).unwrap();
        assert_eq!(so.rows.len(), 3);
        assert!(so.rows.iter().all(|r| r.total_dim == 6));
        assert_eq!(so.rows[2].tag.to_string(), "A_2(+)");
        assert!(strata_table(StrataGroup::Sl4, 3)
            .unwrap()
            .rows
            .iter()
            .all(|r| r.total_dim == 30));
    }

    #[test]
    fn symbolic_totals() {
        for g in 2..7 {
            assert_eq!(
                so4_total_symbolic(g).unwrap().constant_value(),
                Some(Rational::from_integer((6 * (g - 1)).into()))
            );
            assert_eq!(
                sl4_total_symbolic(g).unwrap().constant_value(),
                Some(Rational::from_integer((15 * (g - 1)).into()))
            );
        }
    }

    #[test]
    fn prym_sequence_audit() {
        assert_eq!(dim_audit_prym_sequence(2, 0).unwrap().status, AuditStatus::Ok);
        let r = dim_audit_prym_sequence(2, 1).unwrap();
        assert_eq!((r.computed, r.claimed, r.status), (5, 6, AuditStatus::Flagged));
        assert_eq!(dim_audit_prym_sequence(3, 0).unwrap().computed, 12);
    }
}
