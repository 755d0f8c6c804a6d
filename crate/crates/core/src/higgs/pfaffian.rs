use super::{is_q_skew, FormKind, HiggsError, QuadForm, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{rational_sqrt, Poly};

/// Pfaffian of an antisymmetric matrix by expansion along the first row.
pub fn pfaffian_raw(a: &PolyMatrix) -> Result<Poly> {
    if !a.is_antisymmetric() {
        return Err(HiggsError::FormKind(format!("{a} is not antisymmetric")));
    }
    let idx: Vec<usize> = (0..a.rows()).collect();
    Ok(expand(a, &idx))
}

fn expand(a: &PolyMatrix, idx: &[usize]) -> Poly {
    match idx.len() {
        0 => Poly::one(a.vars()),
        n if n % 2 == 1 => Poly::zero(a.vars()),
        _ => {
            let first = idx[0];
            let mut acc = Poly::zero(a.vars());
            for (k, &j) in idx.iter().enumerate().skip(1) {
                let entry = a.get(first, j);
                if entry.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = idx.iter().copied().filter(|&i| i != first && i != j).collect();
                let term = entry * &expand(a, &rest);
                acc = if k % 2 == 1 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// `Pf(Q*Phi) / sqrt(det Q)` for `Phi` skew with respect to the symmetric
/// form `Q`; checks `Pf^2 = det(Phi)`.
pub fn pfaffian(phi: &PolyMatrix, q: &QuadForm) -> Result<Poly> {
    if q.kind() != FormKind::Symmetric {
        return Err(HiggsError::FormKind("the Pfaffian needs a symmetric form".into()));
    }
    if !is_q_skew(phi, q) {
        return Err(HiggsError::NotQSkew);
    }
    let det_q = q.det()?;
    let root = det_q
        .constant_value()
        .and_then(|d| rational_sqrt(&d))
        .ok_or_else(|| HiggsError::NotRationalSquare(det_q.to_string()))?;
    let qphi = q.matrix_in(phi.vars())?.checked_mul(phi)?;
    let pf = pfaffian_raw(&qphi)?.scale(&root.recip());
    let det = phi.det()?;
    if &pf * &pf != det {
        return Err(HiggsError::Consistency(format!("Pf^2 = {} but det = {det}", &pf * &pf)));
    }
    Ok(pf)
}
