use std::fmt;
use std::sync::Arc;

use super::{QuotientElem, QuotientError, RelationSet, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{parse_poly, Poly, Vars};

/// Base-preserving algebra map between two quotient rings, given by the image
/// of each source fiber variable. Base variables map to the target variable of
/// the same name.
#[derive(Clone)]
pub struct RingMorphism {
    source: Arc<RelationSet>,
    target: Arc<RelationSet>,
    // one image per source variable, in the target context
    images: Vec<Poly>,
}

/// Outcome of pushing every source relation through a morphism.
#[derive(Clone, Debug)]
pub struct WellDefinedReport {
    /// `(relation, normal form of its image)` for each relation whose image
    /// does not vanish.
    pub residues: Vec<(Poly, QuotientElem)>,
}

impl WellDefinedReport {
    pub fn is_well_defined(&self) -> bool {
        self.residues.is_empty()
    }
}

impl RingMorphism {
    pub fn new(source: &Arc<RelationSet>, target: &Arc<RelationSet>, fiber_images: Vec<(&str, Poly)>) -> Result<Self> {
        let svars = source.vars();
        let tvars = target.vars();
        let mut images: Vec<Option<Poly>> = vec![None; svars.len()];
        for (name, img) in fiber_images {
            let i = svars.require(name)?;
            if !source.is_fiber(i) {
                return Err(QuotientError::BaseMismatch(format!(
                    "`{name}` is a base variable and maps to itself"
                )));
            }
            tvars.ensure_same(img.vars())?;
            images[i] = Some(img);
        }
        let mut out = Vec::with_capacity(svars.len());
        for (i, img) in images.into_iter().enumerate() {
            let name = svars.name(i);
            match img {
                Some(p) => out.push(p),
                None if source.is_fiber(i) => return Err(QuotientError::MissingImage(name.to_string())),
                None => match tvars.index_of(name) {
                    Some(j) if !target.is_fiber(j) => out.push(Poly::var_at(tvars, j)),
                    _ => {
                        return Err(QuotientError::BaseMismatch(format!(
                            "base variable `{name}` is not a base variable of the target"
                        )))
                    }
                },
            }
        }
        Ok(RingMorphism {
            source: source.clone(),
            target: target.clone(),
            images: out,
        })
    }

    /// Images written as text in the target's variables.
    pub fn parse(source: &Arc<RelationSet>, target: &Arc<RelationSet>, fiber_images: &[(&str, &str)]) -> Result<Self> {
        let imgs = fiber_images
            .iter()
            .map(|(n, s)| Ok((*n, parse_poly(s, target.vars())?)))
            .collect::<Result<Vec<_>>>()?;
        RingMorphism::new(source, target, imgs)
    }

    pub fn source(&self) -> &Arc<RelationSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RelationSet> {
        &self.target
    }

    pub fn image_of(&self, name: &str) -> Option<&Poly> {
        self.source.vars().index_of(name).map(|i| &self.images[i])
    }

    /// Image of a source-context polynomial, reduced in the target.
    pub fn apply(&self, p: &Poly) -> Result<QuotientElem> {
        let img = p.compose(&self.images, self.target.vars())?;
        QuotientElem::new(&self.target, &img)
    }

    pub fn apply_elem(&self, e: &QuotientElem) -> Result<QuotientElem> {
        if **e.ring() != *self.source {
            return Err(QuotientError::RingMismatch);
        }
        self.apply(e.value())
    }

    pub fn check_well_defined(&self) -> Result<WellDefinedReport> {
        let mut residues = Vec::new();
        for rel in self.source.relations() {
            let r = self.apply(rel)?;
            if !r.is_zero() {
                residues.push((rel.clone(), r));
            }
        }
        Ok(WellDefinedReport { residues })
    }

    /// Composite `next ∘ self`.
    pub fn then(&self, next: &RingMorphism) -> Result<RingMorphism> {
        if *self.target != *next.source {
            return Err(QuotientError::RingMismatch);
        }
        let images = self
            .images
            .iter()
            .map(|img| Ok(next.apply(img)?.value().clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            images,
        })
    }

    /// Context of the common base ring: target base variables, then any
    /// source base variables not already present.
    pub fn base_vars(&self) -> Vars {
        self.target.base_vars().union(&self.source.base_vars())
    }

    /// Matrix over the base ring with column `j` the target coordinates of
    /// the image of the `j`-th source basis element.
    pub fn matrix(&self) -> Result<PolyMatrix> {
        let base = self.base_vars();
        let sb = self.source.basis_polys();
        let tr = self.target.rank();
        let mut m = PolyMatrix::zeros(&base, tr, sb.len());
        for (j, b) in sb.iter().enumerate() {
            let coords = self.apply(b)?.coords();
            for (i, c) in coords.iter().enumerate() {
                m.set(i, j, c.embed(&base)?);
            }
        }
        Ok(m)
    }
}

impl fmt::Display for RingMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .source
            .fiber()
            .iter()
            .map(|&i| format!("{} -> {}", self.source.vars().name(i), self.images[i]))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl fmt::Debug for RingMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingMorphism({self}: {} -> {})", self.source, self.target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rings(q1: &str, q2: &str) -> (Arc<RelationSet>, Arc<RelationSet>) {
        let single = RelationSet::parse(
            &["t"],
            &[("u", &format!("(u^2 - ({q1}) - ({q2}))^2 - 4*({q1})*({q2})"))],
        )
        .unwrap();
        let prod = RelationSet::parse(
            &["t"],
            &[("u", &format!("u^2 - ({q1})")), ("v", &format!("v^2 - ({q2})"))],
        )
        .unwrap();
        (Arc::new(single), Arc::new(prod))
    }

    #[test]
    fn plus_map_is_well_defined_on_quartic() {
        let (src, tgt) = rings("t", "t + 1");
        let m = RingMorphism::parse(&src, &tgt, &[("u", "u + v")]).unwrap();
        assert!(m.check_well_defined().unwrap().is_well_defined());
    }

    #[test]
    fn bad_image_leaves_residue() {
        let (src, tgt) = rings("t", "t + 1");
        let m = RingMorphism::parse(&src, &tgt, &[("u", "u + 2*v")]).unwrap();
        let rep = m.check_well_defined().unwrap();
        assert_eq!(rep.residues.len(), 1);
    }

    #[test]
    fn missing_image_rejected() {
        let (src, tgt) = rings("t", "t");
        assert!(matches!(
            RingMorphism::parse(&tgt, &src, &[("u", "u")]),
            Err(QuotientError::MissingImage(_))
        ));
    }

    #[test]
    fn composition() {
        let r = Arc::new(RelationSet::parse(&["t"], &[("u", "u^2 - t")]).unwrap());
        let neg = RingMorphism::parse(&r, &r, &[("u", "-u")]).unwrap();
        let id = neg.then(&neg).unwrap();
        assert_eq!(id.image_of("u").unwrap().to_string(), "u");
    }

    #[test]
    fn matrix_columns_are_images() {
        let (src, tgt) = rings("t", "t");
        let m = RingMorphism::parse(&src, &tgt, &[("u", "u + v")]).unwrap();
        let mat = m.matrix().unwrap();
        assert_eq!(mat.rows(), 4);
        assert_eq!(mat.cols(), 4);
        // u^3 -> 4t(u + v)
        assert_eq!(
            mat.column(3).iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            ["0", "4*t", "4*t", "0"]
        );
    }
}
