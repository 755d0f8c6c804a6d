use std::sync::Arc;

use super::{QuotientElem, QuotientError, RelationSet, Result, RingMorphism};
use crate::linalg;
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Vars};

/// A base-preserving ring automorphism of order two.
#[derive(Clone, Debug)]
pub struct RingInvolution {
    morphism: RingMorphism,
}

/// `R`-module generators of the `+1` and `-1` eigenspaces.
#[derive(Clone, Debug)]
pub struct InvolutionSplit {
    pub invariant: Vec<QuotientElem>,
    pub anti_invariant: Vec<QuotientElem>,
}

impl RingInvolution {
    pub fn new(morphism: RingMorphism) -> Result<Self> {
        if **morphism.source() != **morphism.target() {
            return Err(QuotientError::NotInvolution("source and target differ".into()));
        }
        let report = morphism.check_well_defined()?;
        if let Some((rel, r)) = report.residues.first() {
            return Err(QuotientError::NotInvolution(format!("relation {rel} maps to {r}")));
        }
        let ring = morphism.source().clone();
        for &w in ring.fiber() {
            let x = Poly::var_at(ring.vars(), w);
            let twice = morphism.apply(morphism.apply(&x)?.value())?;
            if twice.value() != &x {
                return Err(QuotientError::NotInvolution(format!(
                    "{} maps to {} after two steps",
                    x, twice
                )));
            }
        }
        Ok(RingInvolution { morphism })
    }

    pub fn parse(ring: &Arc<RelationSet>, images: &[(&str, &str)]) -> Result<Self> {
        RingInvolution::new(RingMorphism::parse(ring, ring, images)?)
    }

    pub fn morphism(&self) -> &RingMorphism {
        &self.morphism
    }

    pub fn decompose(&self) -> Result<InvolutionSplit> {
        let s = self.morphism.matrix()?;
        let id = PolyMatrix::identity(s.vars(), s.rows());
        let ring = self.morphism.source();
        let invariant = eigen_generators(ring, &id.checked_add(&s)?)?;
        let anti_invariant = eigen_generators(ring, &id.checked_sub(&s)?)?;
        Ok(InvolutionSplit {
            invariant,
            anti_invariant,
        })
    }
}

/// Independent columns of `m`, read as ring elements and normalized so the
/// first nonzero coordinate has leading coefficient 1.
fn eigen_generators(ring: &Arc<RelationSet>, m: &PolyMatrix) -> Result<Vec<QuotientElem>> {
    let basis = ring.basis_polys();
    linalg::independent_columns(m)
        .into_iter()
        .map(|j| {
            let col = linalg::primitive(&m.column(j));
            let first = col.iter().find(|p| !p.is_zero()).expect("nonzero column");
            let c = first.leading_term().expect("nonzero").1.recip();
            let mut e = Poly::zero(ring.vars());
            for (x, b) in col.iter().zip(&basis) {
                e = e + x.scale(&c).embed(ring.vars())? * b;
            }
            QuotientElem::new(ring, &e)
        })
        .collect()
}

/// One of the two components `u = v` and `u = -v` of the fiber product of a
/// double cover with itself.
#[derive(Clone, Debug)]
pub struct DiagonalComponent {
    pub label: String,
    /// `u - sign*v`
    pub generator: QuotientElem,
    /// `R[w]/(w^2 - f)`
    pub quotient: Arc<RelationSet>,
    /// `u -> w`, `v -> sign*w`
    pub restriction: RingMorphism,
    /// The ideal generated by `generator` has the same rank as the kernel of
    /// the restriction (and is contained in it).
    pub ideal_is_kernel: bool,
}

/// Diagonal and antidiagonal ideals of `R[u,v]/(u^2 - f, v^2 - f)`.
pub fn diagonal_ideals(ring: &Arc<RelationSet>) -> Result<Vec<DiagonalComponent>> {
    let [iu, iv] = ring.fiber() else {
        return Err(QuotientError::NotTriangular("need exactly two fiber variables".into()));
    };
    let vars = ring.vars();
    let (u, v) = (Poly::var_at(vars, *iu), Poly::var_at(vars, *iv));
    let fu = &u.pow(2) - &ring.relations()[0];
    let fv = &v.pow(2) - &ring.relations()[1];
    if ring.degrees() != [2, 2] || fu != fv || ring.fiber().iter().any(|&w| fu.involves(w)) {
        return Err(QuotientError::Precondition(
            "both relations must read w^2 = f with the same f over the base".into(),
        ));
    }
    let base_names = ring.base_names();
    let w_name = if base_names.contains(&"w") { "w_" } else { "w" };
    let qvars = Vars::new(std::iter::once(w_name).chain(base_names.iter().copied()))?;
    let w = Poly::var(&qvars, w_name)?;
    let quotient = Arc::new(RelationSet::new(
        &qvars,
        vec![(w_name, &w.pow(2) - &fu.embed(&qvars)?)],
    )?);

    let mut out = Vec::new();
    for (label, sign) in [("diagonal", 1), ("antidiagonal", -1)] {
        let s = Poly::from_int(vars, sign);
        let generator = QuotientElem::new(ring, &(&u - &(&s * &v)))?;
        let restriction = RingMorphism::new(
            ring,
            &quotient,
            vec![
                (vars.name(*iu), w.clone()),
                (
                    vars.name(*iv),
                    w.scale(&crate::poly::Rational::from_integer(sign.into())),
                ),
            ],
        )?;
        if !restriction.check_well_defined()?.is_well_defined() || !restriction.apply(generator.value())?.is_zero() {
            return Err(QuotientError::Precondition(format!(
                "{label} restriction is not defined"
            )));
        }
        let kernel_rank = linalg::nullspace(&restriction.matrix()?).len();
        let base = restriction.base_vars();
        let basis = ring.basis_polys();
        let mut span = PolyMatrix::zeros(&base, ring.rank(), basis.len());
        for (j, b) in basis.iter().enumerate() {
            let e = QuotientElem::new(ring, &(generator.value() * b))?;
            for (i, c) in e.coords().iter().enumerate() {
                span.set(i, j, c.embed(&base)?);
            }
        }
        let ideal_is_kernel = linalg::rank(&span) == kernel_rank;
        out.push(DiagonalComponent {
            label: label.to_string(),
            generator,
            quotient: quotient.clone(),
            restriction,
            ideal_is_kernel,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[QuotientElem]) -> Vec<String> {
        v.iter().map(|e| e.to_string()).collect()
    }

    fn product(q1: &str, q2: &str) -> Arc<RelationSet> {
        Arc::new(
            RelationSet::parse(
                &["t"],
                &[("u", &format!("u^2 - ({q1})")), ("v", &format!("v^2 - ({q2})"))],
            )
            .unwrap(),
        )
    }

    #[test]
    fn swap_involution() {
        let r = product("t", "t");
        let s = RingInvolution::parse(&r, &[("u", "v"), ("v", "u")]).unwrap();
        let split = s.decompose().unwrap();
        assert_eq!(strs(&split.invariant), ["1", "u + v", "u*v"]);
        assert_eq!(strs(&split.anti_invariant), ["u - v"]);
    }

    #[test]
    fn sign_involution() {
        let r = product("t", "t + 1");
        let s = RingInvolution::parse(&r, &[("u", "-u"), ("v", "v")]).unwrap();
        let split = s.decompose().unwrap();
        assert_eq!(strs(&split.invariant), ["1", "v"]);
        assert_eq!(strs(&split.anti_invariant), ["u", "u*v"]);
    }

    #[test]
    fn rejects_non_involution() {
        let r = product("t", "t + 1");
        assert!(RingInvolution::parse(&r, &[("u", "v"), ("v", "u")]).is_err());
    }

    #[test]
    fn diagonals() {
        let r = product("t", "t");
        let comps = diagonal_ideals(&r).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].generator.to_string(), "u - v");
        assert_eq!(comps[1].generator.to_string(), "u + v");
        for c in &comps {
            assert!(c.ideal_is_kernel, "{}", c.label);
            assert_eq!(c.quotient.relations()[0].to_string(), "w^2 - t");
        }
        assert!(diagonal_ideals(&product("t", "t + 1")).is_err());
    }
}
