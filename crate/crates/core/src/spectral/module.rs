use std::sync::Arc;

use super::{Result, SpectralError};
use crate::higgs::{char_poly, CharPoly};
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Vars};
use crate::quotient::RelationSet;

/// A module over a chart ring, free of finite rank over the base `R` and
/// presented by the action matrices of the fiber variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalModule {
    ring: Arc<RelationSet>,
    rank: usize,
    // one matrix per fiber variable, in the ring's fiber order, over the base
    actions: Vec<PolyMatrix>,
}

/// Evaluates `p` (in the ring context) at commuting matrices for the fiber
/// variables; base coefficients stay polynomial.
fn eval_at(ring: &RelationSet, p: &Poly, actions: &[PolyMatrix], n: usize) -> Result<PolyMatrix> {
    let base = ring.base_vars();
    let mut acc = PolyMatrix::zeros(&base, n, n);
    for (m, c) in p.terms() {
        let mut coeff_m = m.clone();
        let mut mat = PolyMatrix::identity(&base, n);
        for (pos, &w) in ring.fiber().iter().enumerate() {
            coeff_m[w] = 0;
            if m[w] > 0 {
                mat = mat.checked_mul(&actions[pos].pow(m[w])?)?;
            }
        }
        let coeff = Poly::monomial(ring.vars(), coeff_m, c.clone()).embed(&base)?;
        acc = acc.checked_add(&mat.scale(&coeff))?;
    }
    Ok(acc)
}

impl LocalModule {
    /// `actions` pairs each fiber variable with its matrix over the base.
    pub fn new(ring: Arc<RelationSet>, actions: Vec<(&str, PolyMatrix)>) -> Result<Self> {
        let base = ring.base_vars();
        let names = ring.fiber_names();
        let n = actions.first().map_or(0, |(_, m)| m.rows());
        let mut ordered = Vec::with_capacity(names.len());
        for name in &names {
            let Some((_, m)) = actions.iter().find(|(a, _)| a == name) else {
                return Err(SpectralError::Module(format!("no action given for `{name}`")));
            };
            if m.rows() != n || m.cols() != n {
                return Err(SpectralError::Module(format!(
                    "action of `{name}` is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
            ordered.push(m.embed(&base).map_err(|e| SpectralError::BaseMismatch(e.to_string()))?);
        }
        if let Some((extra, _)) = actions.iter().find(|(a, _)| !names.contains(a)) {
            return Err(SpectralError::Module(format!("`{extra}` is not a fiber variable")));
        }
        for i in 0..ordered.len() {
            for j in i + 1..ordered.len() {
                let (a, b) = (&ordered[i], &ordered[j]);
                if a.checked_mul(b)? != b.checked_mul(a)? {
                    return Err(SpectralError::Module(format!(
                        "actions of `{}` and `{}` do not commute",
                        names[i], names[j]
                    )));
                }
            }
        }
        for (pos, f) in ring.relations().iter().enumerate() {
            if !eval_at(&ring, f, &ordered, n)?.is_zero() {
                return Err(SpectralError::Module(format!(
                    "action of `{}` violates its relation {f}",
                    names[pos]
                )));
            }
        }
        Ok(LocalModule {
            ring,
            rank: n,
            actions: ordered,
        })
    }

    /// The ring as a module over itself, with multiplication matrices in the
    /// normal-form basis.
    pub fn free(ring: Arc<RelationSet>) -> Result<Self> {
        let base = ring.base_vars();
        let basis = ring.basis_polys();
        let n = basis.len();
        let mut actions = Vec::new();
        for &w in ring.fiber() {
            let x = Poly::var_at(ring.vars(), w);
            let mut m = PolyMatrix::zeros(&base, n, n);
            for (j, b) in basis.iter().enumerate() {
                let image = ring.normal_form(&(&x * b))?;
                for (i, c) in ring.coords(&image).into_iter().enumerate() {
                    m.set(i, j, c.embed(&base)?);
                }
            }
            actions.push(m);
        }
        Ok(LocalModule { rank: n, ring, actions })
    }

    pub fn zero(ring: Arc<RelationSet>) -> Self {
        let base = ring.base_vars();
        let actions = ring.fiber().iter().map(|_| PolyMatrix::zeros(&base, 0, 0)).collect();
        LocalModule { ring, rank: 0, actions }
    }

    pub fn ring(&self) -> &Arc<RelationSet> {
        &self.ring
    }

    /// Rank over the base `R`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, name: &str) -> Option<&PolyMatrix> {
        let pos = self.ring.fiber_names().iter().position(|n| *n == name)?;
        Some(&self.actions[pos])
    }

    /// Matrix of multiplication by `theta`, a polynomial in the ring context.
    pub fn action_of(&self, theta: &Poly) -> Result<PolyMatrix> {
        let theta = theta
            .embed(self.ring.vars())
            .map_err(|e| SpectralError::BaseMismatch(e.to_string()))?;
        eval_at(&self.ring, &theta, &self.actions, self.rank)
    }
}

fn fresh_name(taken: &Vars, wanted: &str) -> String {
    std::iter::once(wanted.to_string())
        .chain(["v", "w", "x", "y", "z"].iter().map(|s| s.to_string()))
        .chain((2..).map(|i| format!("{wanted}{i}")))
        .find(|n| !taken.contains(n))
        .expect("unbounded supply of names")
}

/// `M1 ⊠ M2` over the fiber product of the two chart rings. Fiber variables
/// of the second ring are renamed on a clash with the first.
pub fn box_product(m1: &LocalModule, m2: &LocalModule) -> Result<LocalModule> {
    let (r1, r2) = (m1.ring(), m2.ring());
    if r1.base_names() != r2.base_names() {
        return Err(SpectralError::BaseMismatch(format!(
            "bases [{}] and [{}]",
            r1.base_names().join(", "),
            r2.base_names().join(", ")
        )));
    }
    let mut names: Vec<String> = r1.fiber_names().iter().map(|s| s.to_string()).collect();
    let mut renamed = Vec::new();
    for n in r2.fiber_names() {
        let taken = Vars::new(names.iter().map(String::as_str).chain(r1.base_names()))?;
        let fresh = fresh_name(&taken, n);
        names.push(fresh.clone());
        renamed.push(fresh);
    }
    let vars = Vars::new(names.iter().map(String::as_str).chain(r1.base_names()))?;
    let mut rels: Vec<(String, Poly)> = Vec::new();
    for (name, f) in r1.fiber_names().iter().zip(r1.relations()) {
        rels.push((name.to_string(), f.embed(&vars)?));
    }
    for (pos, f) in r2.relations().iter().enumerate() {
        let images: Vec<Poly> = r2
            .vars()
            .names()
            .iter()
            .map(|n| {
                let target = r2
                    .fiber_names()
                    .iter()
                    .position(|m| m == n)
                    .map_or(n.as_str(), |i| renamed[i].as_str());
                Poly::var(&vars, target)
            })
            .collect::<std::result::Result<_, _>>()?;
        rels.push((renamed[pos].clone(), f.compose(&images, &vars)?));
    }
    let ring = Arc::new(RelationSet::new(
        &vars,
        rels.iter().map(|(n, f)| (n.as_str(), f.clone())).collect(),
    )?);
    let base = ring.base_vars();
    let (n1, n2) = (m1.rank(), m2.rank());
    let mut actions = Vec::new();
    for a in &m1.actions {
        actions.push(a.kron(&PolyMatrix::identity(&base, n2)));
    }
    for b in &m2.actions {
        actions.push(PolyMatrix::identity(&base, n1).kron(b));
    }
    Ok(LocalModule {
        ring,
        rank: n1 * n2,
        actions,
    })
}

#[derive(Clone, Debug)]
pub struct DirectImage {
    /// Rank over the base.
    pub rank: usize,
    pub phi: PolyMatrix,
    pub char_poly: CharPoly,
}

impl DirectImage {
    /// Compares the characteristic polynomial with `expected`, a polynomial in
    /// the base variables and `var`, read with `var` as the spectral variable.
    pub fn char_matches(&self, expected: &Poly, var: &str) -> Result<bool> {
        let cp = self.char_poly.to_poly();
        let eta = self.char_poly.eta_name();
        let target = Vars::default_order(
            cp.vars()
                .names()
                .iter()
                .chain(expected.vars().names())
                .map(String::as_str)
                .filter(|n| *n != var),
        );
        let images = expected
            .vars()
            .names()
            .iter()
            .map(|n| Poly::var(&target, if n == var { eta } else { n }))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(expected.compose(&images, &target)? == cp.embed(&target)?)
    }
}

/// Pushes `(M, theta)` down to the base: `Phi` is multiplication by `theta`.
pub fn direct_image_higgs(m: &LocalModule, theta: &Poly) -> Result<DirectImage> {
    let phi = m.action_of(theta)?;
    let char_poly = char_poly(&phi)?;
    Ok(DirectImage {
        rank: m.rank(),
        phi,
        char_poly,
    })
}

/// Degrees of `p1*L ⊗ p2*σ*L` restricted to the two diagonal components:
/// trivial on `Δ+`, `L^2` on `Δ-`.
pub fn diagonal_restriction(l_deg: i64) -> (i64, i64) {
    (0, 2 * l_deg)
}
