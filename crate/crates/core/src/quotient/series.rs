//! Truncated power series on weighted quotient rings.
//!
//! Completed local rings are modeled by polynomials truncated at a weighted
//! degree `N`: a term with exponents `m` survives when `sum m_i w_i < N`. All
//! relations used here have leading forms of the lowest weight, so reduction
//! never lowers weight and truncation commutes with normal forms.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::{QuotientElem, QuotientError, RelationSet, Result};
use crate::poly::{parse_poly, Poly, Rational, UniPoly, Vars};

/// A polynomial read modulo terms of weighted degree `>= order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    poly: Poly,
    weights: Vec<u32>,
    order: u32,
}

impl TruncatedSeries {
    pub fn new(p: &Poly, weights: &[u32], order: u32) -> Self {
        assert_eq!(weights.len(), p.vars().len(), "one weight per variable");
        TruncatedSeries {
            poly: p.truncate_weighted(weights, order),
            weights: weights.to_vec(),
            order,
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        TruncatedSeries::new(&(&self.poly + &o.poly), &self.weights, self.order.min(o.order))
    }

    pub fn mul(&self, o: &Self) -> Self {
        TruncatedSeries::new(&(&self.poly * &o.poly), &self.weights, self.order.min(o.order))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self.poly, self.order)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

fn mul_trunc(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn compose_trunc(f: &UniPoly, g: &[Rational], n: usize) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); n];
    for c in f.coeffs().iter().rev() {
        acc = mul_trunc(&acc, g, n);
        if n > 0 {
            acc[0] += c;
        }
    }
    acc
}

/// Compositional inverse `g` of `f` modulo `s^order`: `f(g(s)) = s + O(s^order)`.
/// Needs `f(0) = 0` and `f'(0) != 0`.
pub fn reversion(f: &UniPoly, order: usize) -> Result<UniPoly> {
    let c = f.coeffs();
    if c.first().is_some_and(|c0| !c0.is_zero()) {
        return Err(QuotientError::Precondition("series has a nonzero constant term".into()));
    }
    let Some(c1) = c.get(1).filter(|c1| !c1.is_zero()) else {
        return Err(QuotientError::Precondition("series has no linear term".into()));
    };
    let inv = c1.recip();
    let mut g = vec![Rational::zero(); order];
    if order > 1 {
        g[1] = inv.clone();
    }
    // each pass fixes one more coefficient
    for _ in 0..order {
        let fg = compose_trunc(f, &g, order);
        for k in 0..order {
            let target = if k == 1 {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            };
            let err = &fg[k] - &target;
            g[k] -= &err * &inv;
        }
    }
    Ok(UniPoly::new(g))
}

/// Algebra map between weighted quotient rings that may move base variables,
/// read modulo weighted degree `order` in the target.
#[derive(Clone)]
pub struct SeriesMap {
    source: Arc<RelationSet>,
    target: Arc<RelationSet>,
    images: Vec<Poly>,
    target_weights: Vec<u32>,
    order: u32,
}

impl SeriesMap {
    /// `images` must name every source variable.
    pub fn new(
        source: &Arc<RelationSet>,
        target: &Arc<RelationSet>,
        images: Vec<(&str, Poly)>,
        target_weights: &[u32],
        order: u32,
    ) -> Result<Self> {
        let svars = source.vars();
        let mut slots: Vec<Option<Poly>> = vec![None; svars.len()];
        for (name, img) in images {
            target.vars().ensure_same(img.vars())?;
            slots[svars.require(name)?] = Some(img);
        }
        let images = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| QuotientError::MissingImage(svars.name(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        assert_eq!(target_weights.len(), target.vars().len(), "one weight per variable");
        Ok(SeriesMap {
            source: source.clone(),
            target: target.clone(),
            images,
            target_weights: target_weights.to_vec(),
            order,
        })
    }

    pub fn parse(
        source: &Arc<RelationSet>,
        target: &Arc<RelationSet>,
        images: &[(&str, &str)],
        target_weights: &[u32],
        order: u32,
    ) -> Result<Self> {
        let imgs = images
            .iter()
            .map(|(n, s)| Ok((*n, parse_poly(s, target.vars())?)))
            .collect::<Result<Vec<_>>>()?;
        SeriesMap::new(source, target, imgs, target_weights, order)
    }

    pub fn source(&self) -> &Arc<RelationSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RelationSet> {
        &self.target
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn target_vars(&self) -> &Vars {
        self.target.vars()
    }

    /// Reduced, truncated image of a source polynomial.
    pub fn apply(&self, p: &Poly) -> Result<QuotientElem> {
        let img = p.compose(&self.images, self.target.vars())?;
        let img = img.truncate_weighted(&self.target_weights, self.order);
        let red = self.target.normal_form(&img)?;
        QuotientElem::new(&self.target, &red.truncate_weighted(&self.target_weights, self.order))
    }

    /// Image without any truncation; meaningful when the images are exact.
    pub fn apply_exact(&self, p: &Poly) -> Result<QuotientElem> {
        let img = p.compose(&self.images, self.target.vars())?;
        QuotientElem::new(&self.target, &img)
    }

    pub fn truncate(&self, p: &Poly) -> Poly {
        p.truncate_weighted(&self.target_weights, self.order)
    }
}

impl fmt::Debug for SeriesMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, p)| format!("{} -> {p}", self.source.vars().name(i)))
            .collect();
        write!(f, "SeriesMap({} mod order {})", parts.join(", "), self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(s: &str) -> UniPoly {
        let v = Vars::new(["t"]).unwrap();
        UniPoly::from_poly(&parse_poly(s, &v).unwrap(), 0).unwrap()
    }

    #[test]
    fn reversion_of_t_plus_t_squared() {
        // inverse of t + t^2 is the Catalan series s - s^2 + 2s^3 - 5s^4 + ..
        let g = reversion(&uni("t + t^2"), 6).unwrap();
        let want: Vec<Rational> = [0, 1, -1, 2, -5, 14]
            .iter()
            .map(|&k| Rational::from_integer(k.into()))
            .collect();
        assert_eq!(g.coeffs(), want.as_slice());
    }

    #[test]
    fn reversion_round_trip() {
        let f = uni("2*t - t^3");
        let g = reversion(&f, 8).unwrap();
        let back = compose_trunc(&f, g.coeffs(), 8);
        let mut want = vec![Rational::zero(); 8];
        want[1] = Rational::from_integer(1.into());
        assert_eq!(back, want);
    }

    #[test]
    fn reversion_needs_simple_zero() {
        assert!(reversion(&uni("t^2"), 4).is_err());
        assert!(reversion(&uni("1 + t"), 4).is_err());
    }

    #[test]
    fn truncation_by_weight() {
        let v = Vars::new(["u", "t"]).unwrap();
        let p = parse_poly("u^3 + t + t^2 + u*t", &v).unwrap();
        let s = TruncatedSeries::new(&p, &[1, 2], 5);
        assert_eq!(s.poly().to_string(), "u^3 + u*t + t^2 + t");
        assert_eq!(TruncatedSeries::new(&p, &[1, 2], 4).poly().to_string(), "u^3 + u*t + t");
        assert_eq!(s.mul(&s).poly().to_string(), "t^2");
    }
}
