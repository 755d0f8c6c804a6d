use std::fmt;

use super::{HiggsError, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Vars};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Symmetric,
    Antisymmetric,
}

/// A nondegenerate bilinear form, symmetric (orthogonal structure) or
/// antisymmetric (symplectic structure).
#[derive(Clone, PartialEq, Eq)]
pub struct QuadForm {
    kind: FormKind,
    matrix: PolyMatrix,
}

impl QuadForm {
    pub fn new(matrix: PolyMatrix, kind: FormKind) -> Result<Self> {
        let ok = match kind {
            FormKind::Symmetric => matrix.is_symmetric(),
            FormKind::Antisymmetric => matrix.is_antisymmetric(),
        };
        if !ok {
            return Err(HiggsError::FormKind(format!("{matrix} is not {kind:?}").to_lowercase()));
        }
        if matrix.det()?.is_zero() {
            return Err(HiggsError::Degenerate(matrix.to_string()));
        }
        Ok(QuadForm { kind, matrix })
    }

    pub fn symmetric(rows: &[&[i64]]) -> Result<Self> {
        QuadForm::new(PolyMatrix::from_ints(&Vars::empty(), rows), FormKind::Symmetric)
    }

    pub fn antisymmetric(rows: &[&[i64]]) -> Result<Self> {
        QuadForm::new(PolyMatrix::from_ints(&Vars::empty(), rows), FormKind::Antisymmetric)
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// The form's matrix re-expressed in `vars`.
    pub fn matrix_in(&self, vars: &Vars) -> Result<PolyMatrix> {
        Ok(self.matrix.embed(vars)?)
    }

    pub fn det(&self) -> Result<Poly> {
        Ok(self.matrix.det()?)
    }

    /// Tensor product form; symmetric when both factors have the same kind.
    pub fn tensor(&self, other: &QuadForm) -> Result<Self> {
        let vars = self.matrix.vars().union(other.matrix.vars());
        let m = self.matrix.embed(&vars)?.kron(&other.matrix.embed(&vars)?);
        let kind = if self.kind == other.kind {
            FormKind::Symmetric
        } else {
            FormKind::Antisymmetric
        };
        QuadForm::new(m, kind)
    }

    /// The symplectic form `[[0, 1], [-1, 0]]` on `C^2`.
    pub fn omega() -> Self {
        QuadForm::antisymmetric(&[&[0, 1], &[-1, 0]]).expect("standard form")
    }

    /// `omega ⊗ omega` on `C^2 ⊗ C^2` in the frame `e⊗e, e⊗f, f⊗e, f⊗f`.
    pub fn omega_squared() -> Self {
        QuadForm::omega().tensor(&QuadForm::omega()).expect("standard form")
    }

    /// `Q1`, the orthogonal form in the frame `e⊗e, e⊗f, f⊗e, f⊗f`.
    pub fn q1_frame() -> Self {
        QuadForm::symmetric(&[&[0, 0, 0, 1], &[0, 0, -1, 0], &[0, -1, 0, 0], &[1, 0, 0, 0]]).expect("standard form")
    }

    /// `Q2`, the same form in the frame `e⊗f - f⊗e, e⊗e, e⊗f + f⊗e, f⊗f`.
    pub fn q2_frame() -> Self {
        QuadForm::symmetric(&[&[2, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -2, 0], &[0, 1, 0, 0]]).expect("standard form")
    }

    /// The `1x1` block `q1 = [2]` of `Q2`.
    pub fn q1_block() -> Self {
        QuadForm::symmetric(&[&[2]]).expect("standard form")
    }

    /// The `3x3` block `q3` of `Q2`.
    pub fn q3_block() -> Self {
        QuadForm::symmetric(&[&[0, 0, 1], &[0, -2, 0], &[1, 0, 0]]).expect("standard form")
    }

    /// `[[0, I], [I, 0]]` on `C^{2n}`.
    pub fn split(n: usize) -> Self {
        let vars = Vars::empty();
        let z = PolyMatrix::zeros(&vars, n, n);
        let id = PolyMatrix::identity(&vars, n);
        let m = PolyMatrix::block(&vars, &[&[&z, &id], &[&id, &z]]).expect("square blocks");
        QuadForm::new(m, FormKind::Symmetric).expect("standard form")
    }

    pub fn identity(n: usize) -> Self {
        QuadForm::new(PolyMatrix::identity(&Vars::empty(), n), FormKind::Symmetric).expect("standard form")
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadForm({:?}, {})", self.kind, self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_squared_is_q1() {
        assert_eq!(QuadForm::omega_squared(), QuadForm::q1_frame());
        assert_eq!(QuadForm::q1_frame().det().unwrap().to_string(), "1");
    }

    #[test]
    fn validation() {
        assert!(matches!(
            QuadForm::symmetric(&[&[0, 1], &[-1, 0]]),
            Err(HiggsError::FormKind(_))
        ));
        assert!(matches!(
            QuadForm::symmetric(&[&[1, 1], &[1, 1]]),
            Err(HiggsError::Degenerate(_))
        ));
        assert_eq!(QuadForm::split(2).dim(), 4);
    }
}
