use std::fmt;
use std::sync::Arc;

use super::{QuotientElem, QuotientError, RelationSet, Result, RingMorphism};
use crate::linalg;
use crate::poly::{Poly, Vars};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelStatus {
    /// The generators span the kernel as an `R`-module.
    Exact,
    /// Only the linear conditions are certified; `reason` says why the
    /// generators might not be saturated.
    ConditionsOnly { reason: String },
}

/// Kernel of a morphism of finite free `R`-algebras.
#[derive(Clone, Debug)]
pub struct KernelReport {
    /// Linear conditions on the coordinates `a0, a1, ..` of a source element,
    /// in the context `base ++ [a0, a1, ..]`.
    pub conditions: Vec<Poly>,
    /// Kernel elements, one per basis vector of the kernel over `Frac(R)`.
    pub generators: Vec<QuotientElem>,
    pub status: KernelStatus,
    pub coeff_degree_bound: u32,
}

impl KernelReport {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Default cap on the degree of generator coefficients when the base
/// coefficients are `q1` and `q2`.
pub fn default_coeff_bound(q1: &Poly, q2: &Poly) -> u32 {
    q1.total_degree() + q2.total_degree() + 2
}

pub fn kernel_conditions(m: &RingMorphism, coeff_degree_bound: u32) -> Result<KernelReport> {
    let mat = m.matrix()?;
    let base = mat.vars().clone();
    let n = mat.cols();
    let unknowns: Vec<String> = (0..n).map(|j| format!("a{j}")).collect();
    let cvars = base.union(&Vars::new(unknowns.iter().map(String::as_str))?);
    let mut conditions = Vec::new();
    for i in 0..mat.rows() {
        let mut row = Poly::zero(&cvars);
        for (j, name) in unknowns.iter().enumerate() {
            let a = Poly::var(&cvars, name)?;
            row = row + mat.get(i, j).embed(&cvars)? * a;
        }
        if !row.is_zero() {
            conditions.push(row);
        }
    }

    let source = m.source();
    let basis = source.basis_polys();
    let vectors = linalg::nullspace(&mat);
    let mut generators = Vec::new();
    let mut max_deg = 0;
    for v in &vectors {
        let mut g = Poly::zero(source.vars());
        for (c, b) in v.iter().zip(&basis) {
            max_deg = max_deg.max(c.total_degree());
            g = g + c.embed(source.vars())? * b;
        }
        generators.push(QuotientElem::new(source, &g)?);
    }

    let status = if vectors.is_empty() {
        KernelStatus::Exact
    } else if !linalg::is_pid(mat.entries()) {
        KernelStatus::ConditionsOnly {
            reason: format!("base ring Q[{base}] is not a PID; generators span the kernel over its fraction field"),
        }
    } else if vectors.len() > 1 {
        KernelStatus::ConditionsOnly {
            reason: format!(
                "kernel has rank {}; generators are a fraction-field basis",
                vectors.len()
            ),
        }
    } else if max_deg > coeff_degree_bound {
        KernelStatus::ConditionsOnly {
            reason: format!("generator coefficient degree {max_deg} exceeds bound {coeff_degree_bound}"),
        }
    } else {
        KernelStatus::Exact
    };
    Ok(KernelReport {
        conditions,
        generators,
        status,
        coeff_degree_bound,
    })
}

/// The image of a morphism presented as a quotient of its source.
#[derive(Clone, Debug)]
pub struct Coimage {
    pub ring: Arc<RelationSet>,
    /// Induced injective map from the coimage into the target.
    pub morphism: RingMorphism,
    pub kernel: KernelReport,
}

impl fmt::Display for Coimage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring)
    }
}

/// Remainder of `f` modulo a polynomial `g` monic in variable `w`.
fn rem_monic(f: &Poly, g: &Poly, w: usize) -> Poly {
    let dg = g.degree_in(w);
    let x = Poly::var_at(f.vars(), w);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(w) >= dg {
        let dr = r.degree_in(w);
        let lead = r.coefficients_in(w).swap_remove(dr as usize);
        r = &r - &(lead * x.pow(dr - dg) * g);
    }
    r
}

pub fn coimage(m: &RingMorphism, coeff_degree_bound: u32) -> Result<Coimage> {
    let kernel = kernel_conditions(m, coeff_degree_bound)?;
    let source = m.source();
    if kernel.is_zero() {
        return Ok(Coimage {
            ring: source.clone(),
            morphism: m.clone(),
            kernel,
        });
    }
    if let KernelStatus::ConditionsOnly { reason } = &kernel.status {
        return Err(QuotientError::NotTriangular(format!("kernel not certified: {reason}")));
    }
    let [w] = source.fiber() else {
        return Err(QuotientError::NotTriangular(
            "coimage needs a single fiber variable".into(),
        ));
    };
    let w = *w;
    let g = kernel.generators[0].value().clone();
    let d = g.degree_in(w);
    let lead = &g.coefficients_in(w)[d as usize];
    let Some(c) = lead.constant_value() else {
        return Err(QuotientError::NotTriangular(format!(
            "kernel generator {g} is not monic up to a unit"
        )));
    };
    let g = g.scale(&c.recip());
    let f = &source.relations()[0];
    if !rem_monic(f, &g, w).is_zero() {
        return Err(QuotientError::NotTriangular(format!(
            "kernel generator {g} does not divide the relation {f}"
        )));
    }
    let name = source.vars().name(w).to_string();
    let ring = Arc::new(RelationSet::new(source.vars(), vec![(&name, g)])?);
    let img = m.image_of(&name).expect("fiber image").clone();
    let morphism = RingMorphism::new(&ring, m.target(), vec![(&name, img)])?;
    Ok(Coimage { ring, morphism, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plus(q1: &str, q2: &str) -> RingMorphism {
        let src = RelationSet::parse(
            &["t"],
            &[("u", &format!("(u^2 - ({q1}) - ({q2}))^2 - 4*({q1})*({q2})"))],
        )
        .unwrap();
        let tgt = RelationSet::parse(
            &["t"],
            &[("u", &format!("u^2 - ({q1})")), ("v", &format!("v^2 - ({q2})"))],
        )
        .unwrap();
        RingMorphism::parse(&Arc::new(src), &Arc::new(tgt), &[("u", "u + v")]).unwrap()
    }

    #[test]
    fn generic_plus_map_is_injective() {
        let m = plus("t", "t + 1");
        let k = kernel_conditions(&m, 4).unwrap();
        assert!(k.is_zero());
        assert_eq!(k.status, KernelStatus::Exact);
        assert_eq!(k.conditions.len(), 4);
    }

    #[test]
    fn diagonal_kernel_is_cubic() {
        let m = plus("t", "t");
        let k = kernel_conditions(&m, 4).unwrap();
        assert_eq!(k.status, KernelStatus::Exact);
        assert_eq!(k.generators.len(), 1);
        assert_eq!(k.generators[0].to_string(), "u^3 - 4*u*t");
        let c = coimage(&m, 4).unwrap();
        assert_eq!(c.ring.relations()[0].to_string(), "u^3 - 4*u*t");
        assert!(c.morphism.check_well_defined().unwrap().is_well_defined());
        assert!(kernel_conditions(&c.morphism, 4).unwrap().is_zero());
    }

    #[test]
    fn zero_differential_kernel() {
        let m = plus("0", "0");
        let c = coimage(&m, 2).unwrap();
        assert_eq!(c.ring.relations()[0].to_string(), "u^3");
    }

    #[test]
    fn two_parameter_base_is_conditions_only() {
        let src = RelationSet::parse(&["a", "b"], &[("u", "u^2*(u^2 - 4*(a + b))")]).unwrap();
        let tgt = RelationSet::parse(&["a", "b"], &[("u", "u^2 - a - b"), ("v", "v^2 - a - b")]).unwrap();
        let m = RingMorphism::parse(&Arc::new(src), &Arc::new(tgt), &[("u", "u + v")]).unwrap();
        let k = kernel_conditions(&m, 4).unwrap();
        assert_eq!(k.generators.len(), 1);
        assert!(matches!(k.status, KernelStatus::ConditionsOnly { .. }));
        assert!(coimage(&m, 4).is_err());
    }
}
