use std::fmt;
use std::sync::Arc;

use super::{QuotientError, Result};
use crate::poly::{parse_poly, Monomial, Poly, Vars};

/// Triangular presentation `R[w_1, .., w_k] / (f_1, .., f_k)` of a finite
/// `R`-algebra, where `R` is the polynomial ring in the base variables.
///
/// Each `f_i` is monic in its own fiber variable `w_i` and involves, besides
/// `w_i` and the base, only fiber variables listed after `w_i`. The normal-form
/// basis is the set of fiber monomials with every exponent below the
/// corresponding relation degree.
#[derive(Clone, PartialEq, Eq)]
pub struct RelationSet {
    vars: Vars,
    fiber: Vec<usize>,
    degrees: Vec<u32>,
    relations: Vec<Poly>,
    // w_i^{k_i} ≡ tails[i]
    tails: Vec<Poly>,
    base: Vec<usize>,
}

impl RelationSet {
    /// `relations` pairs each fiber variable (highest first) with its monic
    /// relation. All other variables of `vars` form the base.
    pub fn new(vars: &Vars, relations: Vec<(&str, Poly)>) -> Result<Self> {
        let mut fiber = Vec::new();
        for (name, _) in &relations {
            let i = vars.require(name)?;
            if fiber.contains(&i) {
                return Err(QuotientError::NotTriangular(format!("two relations for `{name}`")));
            }
            fiber.push(i);
        }
        let mut degrees = Vec::new();
        let mut rels = Vec::new();
        let mut tails = Vec::new();
        for (pos, (name, f)) in relations.into_iter().enumerate() {
            vars.ensure_same(f.vars())?;
            let w = fiber[pos];
            for &higher in &fiber[..pos] {
                if f.involves(higher) {
                    return Err(QuotientError::NotTriangular(format!(
                        "relation for `{name}` involves higher fiber variable `{}`",
                        vars.name(higher)
                    )));
                }
            }
            let k = f.degree_in(w);
            if k == 0 {
                return Err(QuotientError::NotMonic(name.to_string()));
            }
            let lead = &f.coefficients_in(w)[k as usize];
            if !lead.is_one() {
                return Err(QuotientError::NotMonic(name.to_string()));
            }
            let wk = Poly::var_at(vars, w).pow(k);
            tails.push(&wk - &f);
            degrees.push(k);
            rels.push(f);
        }
        let base = (0..vars.len()).filter(|i| !fiber.contains(i)).collect();
        Ok(RelationSet {
            vars: vars.clone(),
            fiber,
            degrees,
            relations: rels,
            tails,
            base,
        })
    }

    /// Builds the context `fiber names ++ base names` and parses each
    /// relation from text.
    pub fn parse(base: &[&str], relations: &[(&str, &str)]) -> Result<Self> {
        let names = relations.iter().map(|(n, _)| *n).chain(base.iter().copied());
        let vars = Vars::new(names)?;
        let rels = relations
            .iter()
            .map(|(n, text)| Ok((*n, parse_poly(text, &vars)?)))
            .collect::<Result<Vec<_>>>()?;
        RelationSet::new(&vars, rels)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Fiber variable indices, highest first.
    pub fn fiber(&self) -> &[usize] {
        &self.fiber
    }

    pub fn fiber_names(&self) -> Vec<&str> {
        self.fiber.iter().map(|&i| self.vars.name(i)).collect()
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn base_names(&self) -> Vec<&str> {
        self.base.iter().map(|&i| self.vars.name(i)).collect()
    }

    /// Context of the base ring alone.
    pub fn base_vars(&self) -> Vars {
        self.vars.restrict(&self.base_names())
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn relation_for(&self, name: &str) -> Option<&Poly> {
        let i = self.vars.index_of(name)?;
        let pos = self.fiber.iter().position(|&f| f == i)?;
        Some(&self.relations[pos])
    }

    pub fn is_fiber(&self, index: usize) -> bool {
        self.fiber.contains(&index)
    }

    /// Rank of the ring as a free `R`-module.
    pub fn rank(&self) -> usize {
        self.degrees.iter().map(|&d| d as usize).product()
    }

    /// Normal-form monomials; the first fiber variable varies fastest, so
    /// `R[u,v]/(u^2-.., v^2-..)` has basis `1, u, v, uv`.
    pub fn basis(&self) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(self.rank());
        for idx in 0..self.rank() {
            let mut m = vec![0; self.vars.len()];
            let mut rest = idx;
            for (pos, &w) in self.fiber.iter().enumerate() {
                let d = self.degrees[pos] as usize;
                m[w] = (rest % d) as u32;
                rest /= d;
            }
            out.push(m);
        }
        out
    }

    pub fn basis_polys(&self) -> Vec<Poly> {
        self.basis()
            .into_iter()
            .map(|m| Poly::monomial(&self.vars, m, crate::poly::Rational::from_integer(1.into())))
            .collect()
    }

    fn reducible_at(&self, m: &Monomial) -> Option<usize> {
        (0..self.fiber.len()).find(|&pos| m[self.fiber[pos]] >= self.degrees[pos])
    }

    /// Unique reduced representative of `p` modulo the relations.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        self.vars.ensure_same(p.vars())?;
        Ok(self.reduce(p))
    }

    pub(crate) fn reduce(&self, p: &Poly) -> Poly {
        let mut done = Poly::zero(&self.vars);
        let mut work = p.clone();
        while !work.is_zero() {
            let mut next = Poly::zero(&self.vars);
            let mut settled = Vec::new();
            for (m, c) in work.terms() {
                match self.reducible_at(m) {
                    None => settled.push((m.clone(), c.clone())),
                    Some(pos) => {
                        let w = self.fiber[pos];
                        let mut rest = m.clone();
                        rest[w] -= self.degrees[pos];
                        let mono = Poly::monomial(&self.vars, rest, c.clone());
                        next = next + &mono * &self.tails[pos];
                    }
                }
            }
            done = done + Poly::from_terms(&self.vars, settled);
            work = next;
        }
        done
    }

    pub fn is_reduced(&self, p: &Poly) -> bool {
        p.terms().all(|(m, _)| self.reducible_at(m).is_none())
    }

    /// Coordinates of a reduced polynomial in [`basis`](Self::basis); each
    /// coordinate is free of fiber variables and lives in this ring's context.
    pub fn coords(&self, reduced: &Poly) -> Vec<Poly> {
        let basis = self.basis();
        let mut out = vec![Poly::zero(&self.vars); basis.len()];
        for (m, c) in reduced.terms() {
            let key: Vec<u32> = self.fiber.iter().map(|&w| m[w]).collect();
            let idx = basis
                .iter()
                .position(|b| self.fiber.iter().zip(&key).all(|(&w, &e)| b[w] == e))
                .expect("reduced monomial lies in the basis");
            let mut coeff_m = m.clone();
            for &w in &self.fiber {
                coeff_m[w] = 0;
            }
            out[idx] = &out[idx] + &Poly::monomial(&self.vars, coeff_m, c.clone());
        }
        out
    }

    pub fn elem(self: &Arc<Self>, p: &Poly) -> Result<QuotientElem> {
        QuotientElem::new(self, p)
    }

    pub fn parse_elem(self: &Arc<Self>, text: &str) -> Result<QuotientElem> {
        let p = parse_poly(text, &self.vars)?;
        QuotientElem::new(self, &p)
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = self.base_names();
        let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        write!(
            f,
            "Q[{}][{}]/({})",
            base.join(","),
            self.fiber_names().join(","),
            rels.join(", ")
        )
    }
}

impl fmt::Debug for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RelationSet({self})")
    }
}

/// An element of a quotient ring, always held in normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct QuotientElem {
    ring: Arc<RelationSet>,
    value: Poly,
}

impl QuotientElem {
    pub fn new(ring: &Arc<RelationSet>, p: &Poly) -> Result<Self> {
        Ok(QuotientElem {
            ring: ring.clone(),
            value: ring.normal_form(p)?,
        })
    }

    pub fn zero(ring: &Arc<RelationSet>) -> Self {
        QuotientElem {
            ring: ring.clone(),
            value: Poly::zero(ring.vars()),
        }
    }

    pub fn ring(&self) -> &Arc<RelationSet> {
        &self.ring
    }

    pub fn value(&self) -> &Poly {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn coords(&self) -> Vec<Poly> {
        self.ring.coords(&self.value)
    }

    fn same_ring(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &o.ring) || *self.ring == *o.ring {
            Ok(())
        } else {
            Err(QuotientError::RingMismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_ring(o)?;
        Ok(QuotientElem {
            ring: self.ring.clone(),
            value: &self.value + &o.value,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_ring(o)?;
        Ok(QuotientElem {
            ring: self.ring.clone(),
            value: &self.value - &o.value,
        })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_ring(o)?;
        Ok(QuotientElem {
            ring: self.ring.clone(),
            value: self.ring.reduce(&(&self.value * &o.value)),
        })
    }
}

impl fmt::Display for QuotientElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for QuotientElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientElem({} in {})", self.value, self.ring)
    }
}
