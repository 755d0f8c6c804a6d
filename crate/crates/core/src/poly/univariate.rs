use num_traits::{One, Zero};

use super::{Poly, PolyError, Rational, Result, Vars};

/// Dense univariate polynomial over Q, coefficients from degree 0 upward.
/// The coefficient vector never ends in a zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.0.last()
    }

    /// Multiplicity of the root at zero; `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                UniPoly(self.0.iter().map(|c| c * &inv).collect())
            }
            None => self.clone(),
        }
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().recip();
        let mut rem = self.0.clone();
        let n = rem.len();
        if n <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd by Euclid; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Reads `p` as a polynomial in variable `index` only.
    pub fn from_poly(p: &Poly, index: usize) -> Result<Self> {
        let used = p.used_vars();
        if used.iter().any(|&i| i != index) {
            return Err(not_univariate(p));
        }
        let deg = p.degree_in(index) as usize;
        let mut coeffs = vec![Rational::zero(); if p.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in p.terms() {
            coeffs[m[index] as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn to_poly(&self, vars: &Vars, index: usize) -> Poly {
        let terms = self.0.iter().enumerate().map(|(k, c)| {
            let mut m = vec![0; vars.len()];
            m[index] = k as u32;
            (m, c.clone())
        });
        Poly::from_terms(vars, terms)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }
}

fn not_univariate(p: &Poly) -> PolyError {
    let names: Vec<&str> = p.used_vars().into_iter().map(|i| p.vars().name(i)).collect();
    PolyError::NotUnivariate(names.join(", "))
}

/// Monic gcd of two polynomials that together involve at most one variable.
/// The result lives in the inputs' context.
pub fn gcd_univariate(p: &Poly, q: &Poly) -> Result<Poly> {
    p.vars().ensure_same(q.vars())?;
    let mut used = p.used_vars();
    for i in q.used_vars() {
        if !used.contains(&i) {
            used.push(i);
        }
    }
    match used.as_slice() {
        [] => {
            // constants: gcd is 1 unless both vanish
            if p.is_zero() && q.is_zero() {
                Ok(Poly::zero(p.vars()))
            } else {
                Ok(Poly::one(p.vars()))
            }
        }
        [i] => {
            let a = UniPoly::from_poly(p, *i)?;
            let b = UniPoly::from_poly(q, *i)?;
            Ok(a.gcd(&b).to_poly(p.vars(), *i))
        }
        _ => {
            let names: Vec<&str> = used.iter().map(|&i| p.vars().name(i)).collect();
            Err(PolyError::NotUnivariate(names.join(", ")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn t() -> Vars {
        Vars::new(["t"]).unwrap()
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &t()).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_univariate(&p("t^2"), &p("t")).unwrap(), p("t"));
        assert_eq!(gcd_univariate(&p("t^2 - 1"), &p("t - 1")).unwrap(), p("t - 1"));
        assert_eq!(gcd_univariate(&p("t^2 + 1"), &p("t")).unwrap(), p("1"));
        assert_eq!(gcd_univariate(&p("2*t^2 - 2"), &p("3*t + 3")).unwrap(), p("t + 1"));
        assert_eq!(gcd_univariate(&p("0"), &p("0")).unwrap(), p("0"));
    }

    #[test]
    fn multivariate_rejected() {
        let c = Vars::new(["u", "t"]).unwrap();
        let a = parse_poly("u*t", &c).unwrap();
        let b = parse_poly("t", &c).unwrap();
        assert!(matches!(gcd_univariate(&a, &b), Err(PolyError::NotUnivariate(_))));
    }

    #[test]
    fn division_identity() {
        let a = UniPoly::from_poly(&p("t^5 - 3*t^2 + 7/3"), 0).unwrap();
        let d = UniPoly::from_poly(&p("2*t^2 + t - 1"), 0).unwrap();
        let (q, r) = a.div_rem(&d);
        let back = q.to_poly(&t(), 0) * d.to_poly(&t(), 0) + r.to_poly(&t(), 0);
        assert_eq!(back, p("t^5 - 3*t^2 + 7/3"));
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn order_at_zero() {
        let u = UniPoly::from_poly(&p("t^3 + t^2"), 0).unwrap();
        assert_eq!(u.order_at_zero(), Some(2));
        assert_eq!(UniPoly::zero().order_at_zero(), None);
    }
}
