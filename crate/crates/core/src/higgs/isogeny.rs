use super::{HiggsError, QuadForm, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Vars};

/// Checks that `phi` is square and traceless.
pub fn traceless(phi: &PolyMatrix) -> Result<()> {
    if !phi.is_square() {
        return Err(HiggsError::Shape {
            expected: "square".into(),
            rows: phi.rows(),
            cols: phi.cols(),
        });
    }
    let tr = phi.trace();
    if !tr.is_zero() {
        return Err(HiggsError::NotTraceless(tr.to_string()));
    }
    Ok(())
}

fn two_by_two(phi: &PolyMatrix) -> Result<()> {
    if phi.rows() != 2 || phi.cols() != 2 {
        return Err(HiggsError::Shape {
            expected: "2x2".into(),
            rows: phi.rows(),
            cols: phi.cols(),
        });
    }
    traceless(phi)
}

/// `phi1 ⊗ Id + Id ⊗ phi2` in the frame `e⊗e, e⊗f, f⊗e, f⊗f`.
pub fn tensor_higgs(phi1: &PolyMatrix, phi2: &PolyMatrix) -> Result<PolyMatrix> {
    two_by_two(phi1)?;
    two_by_two(phi2)?;
    let vars = phi1.vars().union(phi2.vars());
    let (p1, p2) = (phi1.embed(&vars)?, phi2.embed(&vars)?);
    let id = PolyMatrix::identity(&vars, 2);
    Ok(p1.kron(&id).checked_add(&id.kron(&p2))?)
}

/// Columns express the frame `e⊗f - f⊗e, e⊗e, e⊗f + f⊗e, f⊗f` in the frame
/// `e⊗e, e⊗f, f⊗e, f⊗f`.
pub fn frame_change() -> PolyMatrix {
    PolyMatrix::from_ints(
        &Vars::empty(),
        &[&[0, 1, 0, 0], &[1, 0, 1, 0], &[-1, 0, 1, 0], &[0, 0, 0, 1]],
    )
}

#[derive(Clone, Debug)]
pub struct FrameForms {
    pub q1: QuadForm,
    pub q2: QuadForm,
    pub p: PolyMatrix,
}

/// The orthogonal form in both frames, with the congruence `P^t Q1 P = Q2`
/// checked exactly.
pub fn frame_quadforms() -> Result<FrameForms> {
    let (q1, q2, p) = (QuadForm::q1_frame(), QuadForm::q2_frame(), frame_change());
    let congruent = p.transpose().checked_mul(q1.matrix())?.checked_mul(&p)?;
    if &congruent != q2.matrix() {
        return Err(HiggsError::Consistency(format!("P^t Q1 P = {congruent}")));
    }
    Ok(FrameForms { q1, q2, p })
}

/// `q_right^{-1} * beta^t * q_left`: the adjoint of `beta` with respect to
/// the two forms.
pub fn q_transpose(beta: &PolyMatrix, q_left: &QuadForm, q_right: &QuadForm) -> Result<PolyMatrix> {
    let vars = beta.vars();
    let inv = q_right.matrix().inverse_rational()?.embed(vars)?;
    let left = q_left.matrix_in(vars)?;
    Ok(inv.checked_mul(&beta.transpose())?.checked_mul(&left)?)
}

/// `Q*Phi + Phi^t*Q = 0`; false on any dimension mismatch.
pub fn is_q_skew(phi: &PolyMatrix, q: &QuadForm) -> bool {
    if !phi.is_square() || phi.rows() != q.dim() {
        return false;
    }
    let Ok(qm) = q.matrix_in(phi.vars()) else {
        return false;
    };
    let lhs = qm
        .checked_mul(phi)
        .and_then(|a| a.checked_add(&phi.transpose().checked_mul(&qm)?));
    lhs.is_ok_and(|m| m.is_zero())
}

#[derive(Clone, Debug)]
pub struct So13Reduction {
    pub p: PolyMatrix,
    /// `tensor_higgs(phi, -phi)` in the first frame.
    pub phi: PolyMatrix,
    /// The same field in the second frame, `[[0, beta], [-beta^T, 0]]`.
    pub phi_prime: PolyMatrix,
    pub beta: PolyMatrix,
    pub beta_t: PolyMatrix,
}

/// Puts `phi ⊗ Id - Id ⊗ phi` in block form for the splitting `1 + 3` and
/// checks `beta = [-c, 2a, b]` for `phi = [[a, b], [c, -a]]`.
pub fn so13_reduce(phi: &PolyMatrix) -> Result<So13Reduction> {
    two_by_two(phi)?;
    let vars = phi.vars().clone();
    let big = tensor_higgs(phi, &-phi)?;
    let p = frame_change().embed(&vars)?;
    let p_inv = frame_change().inverse_rational()?.embed(&vars)?;
    let phi_prime = p_inv.checked_mul(&big)?.checked_mul(&p)?;
    if !phi_prime.get(0, 0).is_zero() || !phi_prime.submatrix(1..4, 1..4).is_zero() {
        return Err(HiggsError::BlockStructure(format!(
            "diagonal blocks of {phi_prime} do not vanish"
        )));
    }
    let beta = phi_prime.submatrix(0..1, 1..4);
    let lower = phi_prime.submatrix(1..4, 0..1);
    let beta_t = q_transpose(&beta, &QuadForm::q1_block(), &QuadForm::q3_block())?;
    if lower != -&beta_t {
        return Err(HiggsError::BlockStructure(format!(
            "lower block {lower} is not -beta^T = {}",
            -&beta_t
        )));
    }
    let (a, b, c) = (phi.get(0, 0), phi.get(0, 1), phi.get(1, 0));
    let two = Poly::from_int(&vars, 2);
    let want = PolyMatrix::from_rows(&vars, vec![vec![-c, &two * a, b.clone()]])?;
    if beta != want {
        return Err(HiggsError::Consistency(format!("beta = {beta}, expected {want}")));
    }
    Ok(So13Reduction {
        p,
        phi: big,
        phi_prime,
        beta,
        beta_t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Vars {
        Vars::new(["a", "b", "c"]).unwrap()
    }

    fn phi() -> PolyMatrix {
        PolyMatrix::parse(&abc(), &[&["a", "b"], &["c", "-a"]]).unwrap()
    }

    #[test]
    fn block_form() {
        let r = so13_reduce(&phi()).unwrap();
        assert_eq!(r.beta.to_string(), "[-c, 2*a, b]");
        assert_eq!(r.beta_t.to_string(), "[2*b; -2*a; -2*c]");
    }

    #[test]
    fn numeric_reduction() {
        let v = Vars::empty();
        let h = PolyMatrix::from_ints(&v, &[&[1, 0], &[0, -1]]);
        assert_eq!(so13_reduce(&h).unwrap().beta.to_string(), "[0, 2, 0]");
        let z = PolyMatrix::zeros(&v, 2, 2);
        assert!(so13_reduce(&z).unwrap().beta.is_zero());
    }

    #[test]
    fn congruence() {
        frame_quadforms().unwrap();
    }

    #[test]
    fn tensor_is_skew() {
        let v = Vars::new(["a1", "b1", "c1", "a2", "b2", "c2"]).unwrap();
        let p1 = PolyMatrix::parse(&v, &[&["a1", "b1"], &["c1", "-a1"]]).unwrap();
        let p2 = PolyMatrix::parse(&v, &[&["a2", "b2"], &["c2", "-a2"]]).unwrap();
        let t = tensor_higgs(&p1, &p2).unwrap();
        assert!(is_q_skew(&t, &QuadForm::omega_squared()));
        assert!(t.trace().is_zero());
        assert!(!is_q_skew(&PolyMatrix::identity(&v, 4), &QuadForm::omega_squared()));
    }

    #[test]
    fn rejects_trace() {
        let m = PolyMatrix::parse(&abc(), &[&["a", "b"], &["c", "a"]]).unwrap();
        assert!(matches!(tensor_higgs(&m, &m), Err(HiggsError::NotTraceless(_))));
    }

    #[test]
    fn identity_forms_give_transpose() {
        let b = PolyMatrix::parse(&abc(), &[&["a", "b", "c"]]).unwrap();
        let t = q_transpose(&b, &QuadForm::identity(1), &QuadForm::identity(3)).unwrap();
        assert_eq!(t, b.transpose());
    }
}
