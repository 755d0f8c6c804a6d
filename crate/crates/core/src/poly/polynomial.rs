use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{PolyError, Rational, Result, Vars};

/// Exponent vector, one entry per context variable.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration is
/// in increasing lexicographic order with respect to the context order and
/// the leading term is the last entry. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(vars: &Vars) -> Self {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, Rational::from_integer(c.into()))
    }

    pub fn monomial(vars: &Vars, exps: Monomial, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        Ok(Self::var_at(vars, vars.require(name)?))
    }

    pub fn var_at(vars: &Vars, index: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        Self::monomial(vars, exps, Rational::one())
    }

    /// Builds from raw terms, dropping zeros and merging duplicates.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.len(), vars.len(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value if this is a constant polynomial (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Coefficient of the given exponent vector.
    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Largest exponent of variable `index`; zero for the zero polynomial.
    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m[index]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Smallest weighted degree of any term; `None` for zero.
    pub fn min_weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|m| weighted(m, weights)).min()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Indices of variables that occur with positive exponent.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m[i] > 0))
            .collect()
    }

    pub fn involves(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m[index] > 0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.vars.ensure_same(&other.vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.vars.ensure_same(&other.vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.vars.ensure_same(&other.vars)?;
        let mut out = Poly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces variable `index` by `value` (same context).
    pub fn substitute(&self, index: usize, value: &Poly) -> Result<Poly> {
        self.vars.ensure_same(&value.vars)?;
        let images: Vec<Poly> = (0..self.vars.len())
            .map(|i| {
                if i == index {
                    value.clone()
                } else {
                    Poly::var_at(&self.vars, i)
                }
            })
            .collect();
        self.compose(&images, &self.vars)
    }

    pub fn substitute_named(&self, name: &str, value: &Poly) -> Result<Poly> {
        self.substitute(self.vars.require(name)?, value)
    }

    /// Ring homomorphism `Q[vars] -> Q[target]` sending variable `i` to
    /// `images[i]`.
    pub fn compose(&self, images: &[Poly], target: &Vars) -> Result<Poly> {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        for img in images {
            target.ensure_same(&img.vars)?;
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|img| vec![Poly::one(target), img.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Re-expresses this polynomial in `target`, matching variables by name.
    /// Fails if a variable that actually occurs is missing from `target`.
    pub fn embed(&self, target: &Vars) -> Result<Poly> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if self.involves(i) => return Err(PolyError::MissingVariable(name.clone())),
                None => map.push(None),
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = vec![0; target.len()];
            for (i, &e) in m.iter().enumerate() {
                if let Some(j) = map[i] {
                    out[j] = e;
                }
            }
            (out, c.clone())
        });
        Ok(Poly::from_terms(target, terms))
    }

    pub fn derivative(&self, index: usize) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m[index] > 0).map(|(m, c)| {
            let mut m = m.clone();
            let e = m[index];
            m[index] -= 1;
            (m, c * Rational::from_integer(e.into()))
        });
        Poly::from_terms(&self.vars, terms)
    }

    /// Coefficients with respect to variable `index`: `self = Σ c_k x^k`,
    /// each `c_k` free of `x` and in the same context.
    pub fn coefficients_in(&self, index: usize) -> Vec<Poly> {
        let deg = self.degree_in(index) as usize;
        let mut out = vec![Poly::zero(&self.vars); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let k = m[index] as usize;
            let mut m = m.clone();
            m[index] = 0;
            out[k].add_term(m, c.clone());
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.vars != self.vars || d.is_zero() {
            return None;
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if rm.iter().zip(&dm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Monomial = rm.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let t = Poly::monomial(&self.vars, qm, rc / &dc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Sets variable `index` to the rational `value`, keeping the context.
    pub fn eval_var(&self, index: usize, value: &Rational) -> Poly {
        self.substitute(index, &Poly::constant(&self.vars, value.clone()))
            .expect("same context")
    }

    /// Keeps only terms with weighted degree below `order`.
    pub fn truncate_weighted(&self, weights: &[u32], order: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| weighted(m, weights) < order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn leading_coeff_is_positive(&self) -> bool {
        self.leading_term().is_some_and(|(_, c)| c.is_positive())
    }
}

fn weighted(m: &[u32], weights: &[u32]) -> u32 {
    m.iter().zip(weights).map(|(e, w)| e * w).sum()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            let is_const = m.iter().all(|&e| e == 0);
            if !abs.is_one() || is_const {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} in [{}])", self.vars)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("{}: {e}", stringify!($method)))
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ctx() -> Vars {
        Vars::new(["u", "v", "t", "q"]).unwrap()
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &ctx()).unwrap()
    }

    #[test]
    fn square_of_sum() {
        assert_eq!(p("u+v").pow(2), p("u^2 + 2*u*v + v^2"));
        assert_eq!(p("(t+1)") * p("t-1"), p("t^2 - 1"));
    }

    #[test]
    fn substitute_eta_like() {
        let c = Vars::new(["u", "v", "eta", "q"]).unwrap();
        let f = parse_poly("eta^2 - q", &c).unwrap();
        let s = parse_poly("u + v", &c).unwrap();
        let got = f.substitute_named("eta", &s).unwrap();
        assert_eq!(got, parse_poly("u^2 + 2*u*v + v^2 - q", &c).unwrap());
    }

    #[test]
    fn derivatives() {
        let t = ctx().require("t").unwrap();
        assert_eq!(p("t^3").derivative(t), p("3*t^2"));
        assert_eq!(p("u^2").derivative(t), p("0"));
        assert_eq!(p("t^2 - t").derivative(t), p("2*t - 1"));
    }

    #[test]
    fn mismatched_contexts_error() {
        let other = Vars::new(["x"]).unwrap();
        let x = Poly::var(&other, "x").unwrap();
        assert!(matches!(p("u").checked_add(&x), Err(PolyError::ContextMismatch { .. })));
    }

    #[test]
    fn exact_division() {
        let a = p("u^3 - 4*q*u");
        let b = p("u^2 - 4*q");
        assert_eq!(a.div_exact(&b), Some(p("u")));
        assert_eq!(p("u^2 + 1").div_exact(&p("u")), None);
    }

    #[test]
    fn display_is_descending_lex() {
        assert_eq!(p("t - 3/2*u^2 + 1 + u*v").to_string(), "-3/2*u^2 + u*v + t + 1");
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn embed_by_name() {
        let small = Vars::new(["t"]).unwrap();
        let x = parse_poly("t^2 + 1", &small).unwrap();
        assert_eq!(x.embed(&ctx()).unwrap(), p("t^2 + 1"));
        assert!(p("u").embed(&small).is_err());
    }

    #[test]
    fn coefficients_in_variable() {
        let u = ctx().require("u").unwrap();
        let cs = p("u^2*t + u - q").coefficients_in(u);
        assert_eq!(cs, vec![p("-q"), p("1"), p("t")]);
    }
}
