use std::fmt;

use super::{HiggsError, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Rational, Vars};

/// Coefficients of `det(eta*Id - M)`, indexed by the power of `eta`.
#[derive(Clone, PartialEq, Eq)]
pub struct CharPoly {
    coeffs: Vec<Poly>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `eta^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Poly {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.coeffs[0].vars()))
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn vars(&self) -> &Vars {
        self.coeffs[0].vars()
    }

    /// Name used for the spectral variable: `eta`, or `eta_` on a clash.
    pub fn eta_name(&self) -> &'static str {
        eta_name(self.vars())
    }

    /// The polynomial in the coefficient variables plus `eta`.
    pub fn to_poly(&self) -> Poly {
        let name = self.eta_name();
        let vars = Vars::default_order(self.vars().names().iter().map(String::as_str).chain([name]));
        let eta = Poly::var(&vars, name).expect("eta in context");
        self.coeffs.iter().rev().fold(Poly::zero(&vars), |acc, c| {
            acc * &eta + c.embed(&vars).expect("wider context")
        })
    }
}

fn eta_name(vars: &Vars) -> &'static str {
    if vars.contains("eta") {
        "eta_"
    } else {
        "eta"
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharPoly({self})")
    }
}

/// `det(eta*Id - M)` by Faddeev–LeVerrier, cross-checked by cofactor
/// expansion for size at most 4.
pub fn char_poly(m: &PolyMatrix) -> Result<CharPoly> {
    if !m.is_square() {
        return Err(HiggsError::Shape {
            expected: "square".into(),
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n > 6 {
        return Err(HiggsError::TooLarge(n));
    }
    let vars = m.vars();
    let id = PolyMatrix::identity(vars, n);
    let mut coeffs = vec![Poly::zero(vars); n + 1];
    coeffs[n] = Poly::one(vars);
    let mut mk = PolyMatrix::zeros(vars, n, n);
    for k in 1..=n {
        mk = m.checked_mul(&mk)?.checked_add(&id.scale(&coeffs[n + 1 - k]))?;
        let tr = m.checked_mul(&mk)?.trace();
        coeffs[n - k] = tr.scale(&-Rational::new(1.into(), (k as i64).into()));
    }
    let cp = CharPoly { coeffs };
    if n <= 4 {
        let other = cofactor_char_poly(m)?;
        if other != cp {
            return Err(HiggsError::Consistency(format!(
                "Faddeev-LeVerrier gives {cp}, cofactor expansion gives {other}"
            )));
        }
    }
    Ok(cp)
}

fn cofactor_char_poly(m: &PolyMatrix) -> Result<CharPoly> {
    let name = eta_name(m.vars());
    let wide = m.vars().with_var(name)?;
    let eta = Poly::var(&wide, name)?;
    let n = m.rows();
    let shifted = PolyMatrix::identity(&wide, n)
        .scale(&eta)
        .checked_sub(&m.embed(&wide)?)?;
    let det = shifted.det_cofactor()?;
    let idx = wide.require(name)?;
    let coeffs = det
        .coefficients_in(idx)
        .into_iter()
        .map(|c| c.embed(m.vars()).map_err(HiggsError::from))
        .collect::<Result<Vec<_>>>()?;
    let mut coeffs = coeffs;
    coeffs.resize(n + 1, Poly::zero(m.vars()));
    Ok(CharPoly { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Vars {
        Vars::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn two_by_two() {
        let m = PolyMatrix::parse(&abc(), &[&["a", "b"], &["c", "-a"]]).unwrap();
        let cp = char_poly(&m).unwrap();
        assert_eq!(cp.to_string(), "eta^2 - a^2 - b*c");
        assert_eq!(cp.degree(), 2);
    }

    #[test]
    fn five_by_five_companion() {
        // companion matrix of x^5 - 2x + 3
        let v = Vars::empty();
        let mut m = PolyMatrix::zeros(&v, 5, 5);
        for i in 1..5 {
            m.set(i, i - 1, Poly::one(&v));
        }
        m.set(0, 4, Poly::from_int(&v, -3));
        m.set(1, 4, Poly::from_int(&v, 2));
        assert_eq!(char_poly(&m).unwrap().to_string(), "eta^5 - 2*eta + 3");
    }

    #[test]
    fn rejects_non_square() {
        let m = PolyMatrix::zeros(&abc(), 2, 3);
        assert!(char_poly(&m).is_err());
    }
}
