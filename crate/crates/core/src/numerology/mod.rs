//! Genus, degree, dimension and component-count formulas for curves of genus
//! `g >= 2` and the singular Hitchin fibers over them. Everything here is
//! integer arithmetic; "generic" cohomology assumes nonspecial line bundles.

mod strata;

pub use strata::{
    dim_audit_prym_sequence, sl4_total_symbolic, so4_total_symbolic, strata_table, strata_table_with, AuditStatus,
    DimReport, Parity, StrataGroup, StrataRow, StrataTable, StratumTag,
};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumerologyError {
    #[error("genus must be at least {min}, got {got}")]
    Genus { min: i64, got: i64 },
    #[error("2g_S - 2 = {0} is odd; no integer genus")]
    NonIntegerGenus(i64),
    #[error("out of range: {0}")]
    Range(String),
    #[error("unknown kind `{0}`")]
    UnknownKind(String),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
}

pub type Result<T> = std::result::Result<T, NumerologyError>;

fn require_genus(g: i64) -> Result<()> {
    if g < 2 {
        return Err(NumerologyError::Genus { min: 2, got: g });
    }
    Ok(())
}

/// Genus of a degree-`deg` cover of a genus `g_base` curve with branch
/// divisor of degree `branch`: `2g_S - 2 = deg(2g - 2) + branch`.
pub fn riemann_hurwitz(g_base: i64, deg: i64, branch: i64) -> Result<i64> {
    if g_base < 0 || deg < 1 || branch < 0 {
        return Err(NumerologyError::Range(format!(
            "genus {g_base}, degree {deg}, branch {branch}"
        )));
    }
    let twice = deg * (2 * g_base - 2) + branch;
    if twice % 2 != 0 {
        return Err(NumerologyError::NonIntegerGenus(twice));
    }
    Ok(twice / 2 + 1)
}

/// Genus of the spectral double cover `eta^2 = q` for `q` with simple zeros.
pub fn spectral_cover_genus(g: i64) -> Result<i64> {
    require_genus(g)?;
    riemann_hurwitz(g, 2, 4 * g - 4)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RiemannRoch {
    pub chi: i64,
    pub generic_h0: i64,
    pub generic_h1: i64,
}

/// Riemann–Roch for a generic line bundle of degree `deg` on a genus `genus`
/// curve: `h0 = max(chi, 0)` and `h1 = h0 - chi`, which equals
/// `h0(K - L)` for a generic `K - L`.
pub fn riemann_roch(deg: i64, genus: i64) -> RiemannRoch {
    let chi = deg - genus + 1;
    let generic_h0 = chi.max(0);
    RiemannRoch {
        chi,
        generic_h0,
        generic_h1: generic_h0 - chi,
    }
}

/// Exact `h0, h1` of `K^k` on a genus `genus >= 2` curve.
pub fn canonical_power(k: i64, genus: i64) -> Result<RiemannRoch> {
    require_genus(genus)?;
    let chi = (2 * k - 1) * (genus - 1);
    let h0 = match k {
        k if k < 0 => 0,
        0 => 1,
        1 => genus,
        _ => chi,
    };
    Ok(RiemannRoch {
        chi,
        generic_h0: h0,
        generic_h1: h0 - chi,
    })
}

pub fn prym_dim(g_cover: i64, g_base: i64) -> Result<i64> {
    if g_cover < g_base || g_base < 0 {
        return Err(NumerologyError::Range(format!(
            "cover genus {g_cover} below base genus {g_base}"
        )));
    }
    Ok(g_cover - g_base)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    /// `SU(2) x SL(2,R)` Higgs bundles.
    SuTwoSlTwoR,
    /// `SO*(4)` Higgs bundles.
    SoStarFour,
    /// The Prym of a ribbon spectral curve.
    PrymOfRibbon,
    /// Two-torsion points of the Jacobian.
    TorsionTwo,
}

impl ComponentKind {
    pub const ALL: [ComponentKind; 4] = [
        ComponentKind::SuTwoSlTwoR,
        ComponentKind::SoStarFour,
        ComponentKind::PrymOfRibbon,
        ComponentKind::TorsionTwo,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            ComponentKind::SuTwoSlTwoR => "su2xsl2r",
            ComponentKind::SoStarFour => "so*4",
            ComponentKind::PrymOfRibbon => "prym-ribbon",
            ComponentKind::TorsionTwo => "torsion2",
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ComponentKind {
    type Err = NumerologyError;

    fn from_str(s: &str) -> Result<Self> {
        ComponentKind::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| NumerologyError::UnknownKind(s.to_string()))
    }
}

/// Number of connected components.
pub fn component_counts(kind: ComponentKind, g: i64) -> Result<u64> {
    require_genus(g)?;
    let g = g as u64;
    match kind {
        ComponentKind::SuTwoSlTwoR => Ok(2 * g - 1),
        ComponentKind::SoStarFour => Ok(4 * g - 3),
        ComponentKind::PrymOfRibbon | ComponentKind::TorsionTwo => 1u64
            .checked_shl(2 * g as u32)
            .filter(|_| 2 * g < 64)
            .ok_or_else(|| NumerologyError::Range(format!("2^(2g) overflows for g = {g}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealGroup {
    /// `SL(2,R)`: `(L, beta, gamma)` with `beta in H0(L^2 K)`, `gamma in H0(L^-2 K)`.
    SlTwoR,
    /// `SO*(4)`: rank two `V` with `beta`, `gamma` of the same shape.
    SoStarFour,
}

impl FromStr for RealGroup {
    type Err = NumerologyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl2r" => Ok(RealGroup::SlTwoR),
            "so*4" => Ok(RealGroup::SoStarFour),
            _ => Err(NumerologyError::UnknownGroup(s.to_string())),
        }
    }
}

/// Degree-bound test: degree 0 is always semistable; negative degree needs
/// `beta != 0`, positive degree needs `gamma != 0`; and `|deg| <= g - 1`
/// (`SL(2,R)`) or `|deg V| <= 2g - 2` (`SO*(4)`).
pub fn semistability_check(
    group: RealGroup,
    g: i64,
    degree: i64,
    beta_nonzero: bool,
    gamma_nonzero: bool,
) -> Result<bool> {
    require_genus(g)?;
    if degree == 0 {
        return Ok(true);
    }
    let bound = match group {
        RealGroup::SlTwoR => g - 1,
        RealGroup::SoStarFour => 2 * g - 2,
    };
    let field_ok = if degree < 0 { beta_nonzero } else { gamma_nonzero };
    Ok(field_ok && degree.abs() <= bound)
}

/// Component label reached from `M_d(SU(2) x SL(2,R))`.
pub fn isogeny_component_map(d: i64, g: i64) -> Result<i64> {
    require_genus(g)?;
    if d.abs() > g - 1 {
        return Err(NumerologyError::Range(format!(
            "|d| = {} exceeds g - 1 = {}",
            d.abs(),
            g - 1
        )));
    }
    Ok(2 * d)
}

/// All image labels, in increasing order.
pub fn isogeny_image(g: i64) -> Result<Vec<i64>> {
    (-(g - 1)..=g - 1).map(|d| isogeny_component_map(d, g)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralDegrees {
    pub genus: i64,
    pub spectral_genus: i64,
    /// Degree of the spectral line bundle for `SL(2,C)`.
    pub line_bundle: i64,
    pub ramification: i64,
    pub canonical_s: i64,
}

impl SpectralDegrees {
    /// `-2d + 2(g_S - 1)`.
    pub fn dbar_from_spectral_genus(&self, d: i64) -> i64 {
        -2 * d + 2 * (self.spectral_genus - 1)
    }

    /// `deg(L2^* L1 K_S) = -2d + 8(g - 1)` with `d_i = (-1)^i d + 2(g - 1)`.
    pub fn dbar_from_line_bundles(&self, d: i64) -> i64 {
        let (d1, d2) = (-d + 2 * (self.genus - 1), d + 2 * (self.genus - 1));
        d1 - d2 + self.canonical_s
    }

    /// Both expressions for `dbar` agree on `d = 1..4(g - 1)`.
    pub fn dbar_formulas_agree(&self) -> bool {
        (1..=4 * (self.genus - 1)).all(|d| self.dbar_from_spectral_genus(d) == self.dbar_from_line_bundles(d))
    }
}

pub fn spectral_degrees(g: i64) -> Result<SpectralDegrees> {
    let gs = spectral_cover_genus(g)?;
    Ok(SpectralDegrees {
        genus: g,
        spectral_genus: gs,
        line_bundle: 2 * (g - 1),
        ramification: 4 * g - 4,
        canonical_s: 2 * gs - 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hurwitz_and_roch() {
        assert_eq!(riemann_hurwitz(2, 2, 4).unwrap(), 5);
        assert_eq!(riemann_hurwitz(2, 2, 0).unwrap(), 3);
        assert_eq!(riemann_hurwitz(3, 2, 8).unwrap(), 9);
        assert!(matches!(
            riemann_hurwitz(2, 2, 3),
            Err(NumerologyError::NonIntegerGenus(_))
        ));
        assert_eq!(canonical_power(1, 4).unwrap().generic_h0, 4);
        assert_eq!(canonical_power(2, 2).unwrap().generic_h0, 3);
        assert_eq!(canonical_power(-1, 2).unwrap().generic_h1, 3);
        assert_eq!(riemann_roch(-1, 2).generic_h1, 2);
        for deg in -5..15 {
            assert_eq!(riemann_roch(deg + 1, 3).chi - riemann_roch(deg, 3).chi, 1);
            assert_eq!(riemann_roch(deg, 3).generic_h1, riemann_roch(4 - deg, 3).generic_h0);
        }
    }

    #[test]
    fn counts_and_bounds() {
        assert_eq!(component_counts(ComponentKind::SuTwoSlTwoR, 2).unwrap(), 3);
        assert_eq!(component_counts(ComponentKind::SoStarFour, 2).unwrap(), 5);
        assert_eq!(component_counts(ComponentKind::PrymOfRibbon, 2).unwrap(), 16);
        assert!(component_counts(ComponentKind::TorsionTwo, 40).is_err());
        assert_eq!("so*4".parse::<ComponentKind>().unwrap(), ComponentKind::SoStarFour);
        assert!(semistability_check(RealGroup::SlTwoR, 2, 0, false, false).unwrap());
        assert!(!semistability_check(RealGroup::SlTwoR, 2, 2, true, true).unwrap());
        assert!(semistability_check(RealGroup::SoStarFour, 2, 2, false, true).unwrap());
        assert!(!semistability_check(RealGroup::SoStarFour, 2, 2, true, false).unwrap());
        assert_eq!(isogeny_image(2).unwrap(), vec![-2, 0, 2]);
        assert!(isogeny_component_map(2, 2).is_err());
    }

    #[test]
    fn degrees() {
        let s = spectral_degrees(2).unwrap();
        assert_eq!((s.line_bundle, s.canonical_s, s.spectral_genus), (2, 8, 5));
        assert!((2..7).all(|g| spectral_degrees(g).unwrap().dbar_formulas_agree()));
    }
}
