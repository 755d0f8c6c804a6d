use std::fmt;

use super::{char_poly, is_q_skew, pfaffian, traceless, HiggsError, QuadForm, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Group {
    /// Block-diagonal `diag(phi1, phi2)` with traceless `2x2` blocks.
    SlTwoSquared,
    /// Skew with respect to the given symmetric form.
    So4(QuadForm),
}

/// A point of the Hitchin base: `(q1, q2)` for `SL2 x SL2`, `(a2, Pf)` for
/// `SO4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitchinPoint {
    pub group: Group,
    pub first: Poly,
    pub second: Poly,
}

impl fmt::Display for HitchinPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.group {
            Group::SlTwoSquared => write!(f, "(q1, q2) = ({}, {})", self.first, self.second),
            Group::So4(_) => write!(f, "(a2, Pf) = ({}, {})", self.first, self.second),
        }
    }
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

pub fn hitchin_point(phi: &PolyMatrix, group: Group) -> Result<HitchinPoint> {
    traceless(phi)?;
    if phi.rows() != 4 {
        return Err(HiggsError::Shape {
            expected: "4x4".into(),
            rows: phi.rows(),
            cols: phi.cols(),
        });
    }
    match &group {
        Group::SlTwoSquared => {
            if !phi.submatrix(0..2, 2..4).is_zero() || !phi.submatrix(2..4, 0..2).is_zero() {
                return Err(HiggsError::BlockStructure("off-diagonal 2x2 blocks must vanish".into()));
            }
            let (p1, p2) = (phi.submatrix(0..2, 0..2), phi.submatrix(2..4, 2..4));
            traceless(&p1)?;
            traceless(&p2)?;
            Ok(HitchinPoint {
                first: -p1.det()?,
                second: -p2.det()?,
                group,
            })
        }
        Group::So4(q) => {
            if !is_q_skew(phi, q) {
                return Err(HiggsError::NotQSkew);
            }
            let cp = char_poly(phi)?;
            let a2 = cp.coeff(2);
            let from_trace = -phi.checked_mul(phi)?.trace().scale(&half());
            if a2 != from_trace {
                return Err(HiggsError::Consistency(format!(
                    "eta^2 coefficient {a2} differs from -Tr(Phi^2)/2 = {from_trace}"
                )));
            }
            let pf = pfaffian(phi, q)?;
            if &pf * &pf != cp.coeff(0) {
                return Err(HiggsError::Consistency(format!(
                    "Pf^2 differs from the constant coefficient {}",
                    cp.coeff(0)
                )));
            }
            Ok(HitchinPoint {
                first: a2,
                second: pf,
                group,
            })
        }
    }
}

/// `(q1, q2) -> (a2, Pf) = (-2(q1 + q2), q1 - q2)` under the convention
/// `det(eta*Id - Phi)`.
pub fn base_isogeny_map(q1: &Poly, q2: &Poly) -> Result<(Poly, Poly)> {
    let vars = q1.vars().union(q2.vars());
    let (q1, q2) = (q1.embed(&vars)?, q2.embed(&vars)?);
    let a2 = (&q1 + &q2).scale(&Rational::from_integer((-2).into()));
    Ok((a2, &q1 - &q2))
}

#[derive(Clone, Debug)]
pub struct ReducedChReport {
    /// The scalar with `Phi^3 = c*Phi`.
    pub c: Poly,
    /// `Tr(Phi^2)`.
    pub tr2: Poly,
    pub identity_holds: bool,
    /// `c = Tr(Phi^2)/2`.
    pub c_is_half_trace: bool,
}

/// Finds `c` with `Phi^3 = c*Phi` for a field of the form
/// `phi ⊗ Id - Id ⊗ phi`.
pub fn verify_reduced_ch(phi: &PolyMatrix) -> Result<ReducedChReport> {
    traceless(phi)?;
    let cube = phi.pow(3)?;
    let tr2 = phi.checked_mul(phi)?.trace();
    let pivot = (0..phi.rows())
        .flat_map(|i| (0..phi.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !phi.get(i, j).is_zero());
    let c = match pivot {
        None => Poly::zero(phi.vars()),
        Some((i, j)) => cube.get(i, j).div_exact(phi.get(i, j)).ok_or(HiggsError::NoScalar)?,
    };
    let identity_holds = cube.checked_sub(&phi.scale(&c))?.is_zero();
    if !identity_holds {
        return Err(HiggsError::NoScalar);
    }
    let c_is_half_trace = c == tr2.scale(&half());
    Ok(ReducedChReport {
        c,
        tr2,
        identity_holds,
        c_is_half_trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::higgs::tensor_higgs;
    use crate::poly::{parse_poly, Vars};

    fn abc() -> Vars {
        Vars::new(["a", "b", "c"]).unwrap()
    }

    fn phi() -> PolyMatrix {
        PolyMatrix::parse(&abc(), &[&["a", "b"], &["c", "-a"]]).unwrap()
    }

    #[test]
    fn reduced_cayley_hamilton() {
        let big = tensor_higgs(&phi(), &-&phi()).unwrap();
        let r = verify_reduced_ch(&big).unwrap();
        assert_eq!(r.c.to_string(), "4*a^2 + 4*b*c");
        assert_eq!(r.tr2.to_string(), "8*a^2 + 8*b*c");
        assert!(r.identity_holds && r.c_is_half_trace);

        let zero = PolyMatrix::zeros(&abc(), 4, 4);
        assert!(verify_reduced_ch(&zero).unwrap().c.is_zero());
    }

    #[test]
    fn so4_point_of_diagonal_field() {
        let big = tensor_higgs(&phi(), &-&phi()).unwrap();
        let p = hitchin_point(&big, Group::So4(QuadForm::omega_squared())).unwrap();
        assert_eq!(p.first.to_string(), "-4*a^2 - 4*b*c");
        assert!(p.second.is_zero());
    }

    #[test]
    fn sl2_pair() {
        let v = abc();
        let m = PolyMatrix::parse(
            &v,
            &[
                &["a", "b", "0", "0"],
                &["c", "-a", "0", "0"],
                &["0", "0", "0", "1"],
                &["0", "0", "c", "0"],
            ],
        )
        .unwrap();
        let p = hitchin_point(&m, Group::SlTwoSquared).unwrap();
        assert_eq!(p.first.to_string(), "a^2 + b*c");
        assert_eq!(p.second.to_string(), "c");
        assert!(hitchin_point(&PolyMatrix::zeros(&v, 4, 4), Group::SlTwoSquared)
            .unwrap()
            .first
            .is_zero());
    }

    #[test]
    fn base_map() {
        let v = Vars::new(["q"]).unwrap();
        let q = parse_poly("q", &v).unwrap();
        let z = Poly::zero(&v);
        let (a2, pf) = base_isogeny_map(&q, &q).unwrap();
        assert_eq!((a2.to_string(), pf.to_string()), ("-4*q".into(), "0".into()));
        let (a2, pf) = base_isogeny_map(&z, &q).unwrap();
        assert_eq!((a2.to_string(), pf.to_string()), ("-2*q".into(), "-q".into()));
    }
}
