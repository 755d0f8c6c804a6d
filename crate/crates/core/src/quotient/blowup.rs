//! Local comparison of `2S` with a split ribbon over a simple zero of `q`.
//!
//! Near a simple zero, with `q = qbar(t)` and `qbar(0) = 0`, four local rings
//! appear:
//!
//! * `A  = Q[[t, u]] / ((u^2 - qbar)^2)`, the thickened spectral curve `2S`;
//! * `B  = Q[[u]][eps] / (eps^2)`, the split ribbon on the smooth curve `S`;
//! * `Y  = Q[[t, x, y]] / (x^2, y^2 - qbar)`, the fiber product of the ribbon
//!   `2Sigma` with `S`;
//! * `B' = Q[[ut]][epst] / (epst^2)`, another split ribbon.
//!
//! With `g` the compositional inverse of `qbar`, the maps
//! `alpha: A -> B` (`u -> u`, `t -> g(u^2 - eps)`) and
//! `beta: Y -> B'` (`x -> epst/2`, `y -> ut - epst/2`, `t -> g(ut^2 - ut*epst)`)
//! are isomorphisms, and the plus map `A -> Y`, `u -> x + y`, becomes
//! `u -> ut`, `eps -> ut*epst` on the ribbons. Everything is checked modulo a
//! weighted degree `N`; the final identity holds exactly.

use std::fmt;
use std::sync::Arc;

use super::{reversion, QuotientError, RelationSet, Result, RingMorphism, SeriesMap};
use crate::poly::{Poly, UniPoly, Vars};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Passed,
    Failed { residue: String },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug)]
pub struct BlowupCheck {
    pub name: String,
    pub outcome: CheckOutcome,
    /// True when the identity was verified without any truncation.
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct BlowupReport {
    pub qbar: Poly,
    pub order: u32,
    pub checks: Vec<BlowupCheck>,
    /// Images of `u` and `eps` under the composite `B -> B'`.
    pub composite_u: Poly,
    pub composite_eps: Poly,
}

impl BlowupReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome == CheckOutcome::Passed)
    }

    pub fn is_inconclusive(&self) -> bool {
        self.checks
            .iter()
            .any(|c| matches!(c.outcome, CheckOutcome::Inconclusive { .. }))
    }
}

impl fmt::Display for BlowupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qbar = {}, order {}", self.qbar, self.order)?;
        for c in &self.checks {
            let status = match &c.outcome {
                CheckOutcome::Passed => "ok".to_string(),
                CheckOutcome::Failed { residue } => format!("FAILED (residue {residue})"),
                CheckOutcome::Inconclusive { reason } => format!("inconclusive ({reason})"),
            };
            writeln!(f, "  {}: {status}{}", c.name, if c.exact { " [exact]" } else { "" })?;
        }
        write!(
            f,
            "  composite: u -> {}, eps -> {}",
            self.composite_u, self.composite_eps
        )
    }
}

/// Horner evaluation of a univariate polynomial at a polynomial argument.
fn eval_at(f: &UniPoly, arg: &Poly) -> Poly {
    let vars = arg.vars();
    f.coeffs()
        .iter()
        .rev()
        .fold(Poly::zero(vars), |acc, c| acc * arg + Poly::constant(vars, c.clone()))
}

fn outcome(residues: &[Poly]) -> CheckOutcome {
    let bad: Vec<String> = residues
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| r.to_string())
        .collect();
    if bad.is_empty() {
        CheckOutcome::Passed
    } else {
        CheckOutcome::Failed {
            residue: bad.join("; "),
        }
    }
}

/// Reads `qbar` as a univariate polynomial and checks it has a simple zero at
/// the origin.
fn simple_zero(qbar: &Poly) -> Result<UniPoly> {
    let used = qbar.used_vars();
    let [i] = used.as_slice() else {
        return Err(QuotientError::Precondition(format!(
            "local coefficient {qbar} must be a nonconstant polynomial in one variable"
        )));
    };
    let f = UniPoly::from_poly(qbar, *i)?;
    if f.order_at_zero() != Some(1) {
        let d = f.derivative();
        let g = f.gcd(&d);
        let reason = if f.order_at_zero() == Some(0) {
            "does not vanish at the origin"
        } else {
            "has a repeated zero at the origin"
        };
        return Err(QuotientError::Precondition(format!(
            "local coefficient {qbar} {reason} (gcd with derivative: {})",
            g.to_poly(qbar.vars(), *i)
        )));
    }
    Ok(f)
}

pub fn verify_blowup_local(qbar: &Poly, order: u32) -> Result<BlowupReport> {
    let f = simple_zero(qbar)?;
    let g = reversion(&f, order.max(1) as usize)?;

    let va = Vars::new(["u", "t"])?;
    let q_a = f.to_poly(&va, 1);
    let u_a = Poly::var(&va, "u")?;
    let a = Arc::new(RelationSet::new(&va, vec![("u", (&u_a.pow(2) - &q_a).pow(2))])?);
    let vb = Vars::new(["eps", "u"])?;
    let b = Arc::new(RelationSet::new(&vb, vec![("eps", Poly::var(&vb, "eps")?.pow(2))])?);
    let vy = Vars::new(["x", "y", "t"])?;
    let q_y = f.to_poly(&vy, 2);
    let y = Arc::new(RelationSet::new(
        &vy,
        vec![
            ("x", Poly::var(&vy, "x")?.pow(2)),
            ("y", &Poly::var(&vy, "y")?.pow(2) - &q_y),
        ],
    )?);
    let vb2 = Vars::new(["epst", "ut"])?;
    let b2 = Arc::new(RelationSet::new(&vb2, vec![("epst", Poly::var(&vb2, "epst")?.pow(2))])?);

    let (wa, wb, wy) = ([1, 2], [1, 1], [1, 1, 2]);
    let ub = Poly::var(&vb, "u")?;
    let eps = Poly::var(&vb, "eps")?;
    let alpha_t = eval_at(&g, &(&ub.pow(2) - &eps)).truncate_weighted(&wb, order);
    let alpha = SeriesMap::new(&a, &b, vec![("u", ub.clone()), ("t", alpha_t)], &wb, order)?;
    let alpha_inv = SeriesMap::new(
        &b,
        &a,
        vec![("eps", &u_a.pow(2) - &q_a), ("u", u_a.clone())],
        &wa,
        order,
    )?;

    let ut = Poly::var(&vb2, "ut")?;
    let epst = Poly::var(&vb2, "epst")?;
    let half = crate::poly::Rational::new(1.into(), 2.into());
    let beta_t = eval_at(&g, &(&ut.pow(2) - &(&ut * &epst))).truncate_weighted(&wb, order);
    let beta = SeriesMap::new(
        &y,
        &b2,
        vec![("x", epst.scale(&half)), ("y", &ut - &epst.scale(&half)), ("t", beta_t)],
        &wb,
        order,
    )?;
    let (xy, yy) = (Poly::var(&vy, "x")?, Poly::var(&vy, "y")?);
    let beta_inv = SeriesMap::new(
        &b2,
        &y,
        vec![
            ("epst", xy.scale(&crate::poly::Rational::from_integer(2.into()))),
            ("ut", &xy + &yy),
        ],
        &wy,
        order,
    )?;
    let plus = RingMorphism::new(&a, &y, vec![("u", &xy + &yy)])?;

    let mut checks = Vec::new();
    let mut push = |name: &str, outcome: CheckOutcome, exact: bool| {
        checks.push(BlowupCheck {
            name: name.to_string(),
            outcome,
            exact,
        })
    };

    let truncated = |residues: &[Poly]| {
        if order < 3 {
            CheckOutcome::Inconclusive {
                reason: format!("truncation order {order} is below 3"),
            }
        } else {
            outcome(residues)
        }
    };

    for (name, map) in [("alpha respects relations", &alpha), ("beta respects relations", &beta)] {
        let residues = map
            .source()
            .relations()
            .iter()
            .map(|rel| Ok(map.apply(rel)?.value().clone()))
            .collect::<Result<Vec<_>>>()?;
        push(name, truncated(&residues), false);
    }
    for (name, map) in [
        ("alpha inverse respects relations", &alpha_inv),
        ("beta inverse respects relations", &beta_inv),
    ] {
        let residues = map
            .source()
            .relations()
            .iter()
            .map(|rel| Ok(map.apply_exact(rel)?.value().clone()))
            .collect::<Result<Vec<_>>>()?;
        push(name, outcome(&residues), true);
    }
    for (name, first, second) in [
        ("alpha inverse after alpha is the identity", &alpha, &alpha_inv),
        ("alpha after alpha inverse is the identity", &alpha_inv, &alpha),
        ("beta inverse after beta is the identity", &beta, &beta_inv),
        ("beta after beta inverse is the identity", &beta_inv, &beta),
    ] {
        let src = first.source().vars();
        let mut residues = Vec::new();
        for i in 0..src.len() {
            let x = Poly::var_at(src, i);
            let back = second.apply(first.apply(&x)?.value())?;
            residues.push((back.value() - &x).truncate_weighted(&weights_for(src), order));
        }
        push(name, truncated(&residues), false);
    }
    let well = plus.check_well_defined()?;
    let residues: Vec<Poly> = well.residues.iter().map(|(_, r)| r.value().clone()).collect();
    push("plus map respects relations", outcome(&residues), true);

    // composite B -> A -> Y -> B'
    let t_index = vy.require("t")?;
    let mut composite = Vec::new();
    let mut exact = true;
    for x in [&ub, &eps] {
        let in_a = alpha_inv.apply_exact(x)?;
        let in_y = plus.apply(in_a.value())?;
        let img = if in_y.value().involves(t_index) {
            exact = false;
            beta.apply(in_y.value())?
        } else {
            beta.apply_exact(in_y.value())?
        };
        composite.push(img.value().clone());
    }
    let want_u = ut.clone();
    let want_eps = &ut * &epst;
    let residues = [&composite[0] - &want_u, &composite[1] - &want_eps];
    push(
        "plus map is u -> ut, eps -> ut*epst on ribbons",
        outcome(&residues),
        exact,
    );

    Ok(BlowupReport {
        qbar: qbar.clone(),
        order,
        checks,
        composite_u: composite[0].clone(),
        composite_eps: composite[1].clone(),
    })
}

fn weights_for(vars: &Vars) -> Vec<u32> {
    vars.names().iter().map(|n| if n == "t" { 2 } else { 1 }).collect()
}
