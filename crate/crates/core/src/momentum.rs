//! Energy-momentum lattice: norm spectra, mass shells and the discrete Poincaré group.
//!
//! Momenta use the same integer coordinates as spacetime points, so
//! `m² = (p⁰)² − Q(p̲)` is an integer and `p·x` is half of
//! [`LatticeVec4::minkowski_dot2`].

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupElement, SymmetryGroup};
use crate::lattice::{attained_norms, ball3, LatticeVec4};
use crate::reference;

pub type MomentumVec = LatticeVec4;

/// `{Q(n,p,q) ≤ limit}` by exhaustive enumeration.
pub fn attainable_spatial_norm_sq(limit: i64) -> Result<BTreeSet<i64>> {
    if limit < 0 {
        return Err(Error::InvalidArgument(format!(
            "limit must be >= 0, got {limit}"
        )));
    }
    Ok(attained_norms(limit))
}

/// Comparison of a computed set with a tabulated one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetDiff {
    pub key: i64,
    pub computed: Vec<i64>,
    pub reference: Vec<i64>,
    /// Computed but not tabulated.
    pub missing_from_reference: Vec<i64>,
    /// Tabulated but not computed.
    pub absent_from_computed: Vec<i64>,
}

impl SetDiff {
    pub fn new(key: i64, computed: &BTreeSet<i64>, reference: &BTreeSet<i64>) -> Self {
        Self {
            key,
            computed: computed.iter().copied().collect(),
            reference: reference.iter().copied().collect(),
            missing_from_reference: computed.difference(reference).copied().collect(),
            absent_from_computed: reference.difference(computed).copied().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.missing_from_reference.is_empty() && self.absent_from_computed.is_empty()
    }
}

/// Diff of `attainable_spatial_norm_sq(49)` against the tabulated list.
pub fn spatial_norm_diff() -> SetDiff {
    let computed = attained_norms(49);
    let reference = reference::spatial_norms(49).expect("tabulated list");
    SetDiff::new(49, &computed, &reference)
}

/// `{p0² − Q : Q attained, Q ≤ p0²}`.
pub fn mass_squared_values(p0: i64) -> Result<BTreeSet<i64>> {
    if p0 < 0 {
        return Err(Error::InvalidArgument(format!("p0 must be >= 0, got {p0}")));
    }
    Ok(attained_norms(p0 * p0)
        .iter()
        .map(|q| p0 * p0 - q)
        .collect())
}

/// Per-row diffs for every tabulated `p⁰` up to `p0_max`.
pub fn mass_table_diffs(p0_max: i64) -> Result<Vec<SetDiff>> {
    (0..=p0_max)
        .filter_map(|p0| reference::mass_row(p0).map(|r| (p0, r)))
        .map(|(p0, r)| Ok(SetDiff::new(p0, &mass_squared_values(p0)?, &r)))
        .collect()
}

/// Rows `p0,"m²,m²,…"`.
pub fn mass_table_csv(p0_max: i64) -> Result<String> {
    let mut s = String::from("p0,mass_squared\n");
    for p0 in 0..=p0_max {
        let vals: Vec<String> = mass_squared_values(p0)?
            .iter()
            .map(i64::to_string)
            .collect();
        s.push_str(&format!("{p0},\"{}\"\n", vals.join(",")));
    }
    Ok(s)
}

/// Forward mass shell `{p : ‖p‖₄² = m², 0 ≤ p⁰ ≤ P}` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncatedHyperboloid {
    pub mass_sq: i64,
    pub energy_cap: i64,
    pub points: Vec<MomentumVec>,
}

impl TruncatedHyperboloid {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: MomentumVec) -> Option<usize> {
        self.points.binary_search(&p).ok()
    }

    /// True when `1 ⊕ Z` permutes the points.
    pub fn is_invariant_under(&self, z: &GroupElement) -> bool {
        self.points
            .iter()
            .all(|p| self.index_of(z.apply4(*p)).is_some())
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,p0,n,p,q\n");
        for (i, p) in self.points.iter().enumerate() {
            let [a, b, c, d] = p.coords();
            s.push_str(&format!("{i},{a},{b},{c},{d}\n"));
        }
        s
    }
}

pub fn hyperboloid(mass_sq: i64, energy_cap: i64) -> Result<TruncatedHyperboloid> {
    if mass_sq < 0 || energy_cap < 0 {
        return Err(Error::InvalidArgument(format!(
            "mass squared and energy cap must be >= 0, got {mass_sq} and {energy_cap}"
        )));
    }
    let points = (0..=energy_cap)
        .into_par_iter()
        .flat_map_iter(|p0| {
            let q = p0 * p0 - mass_sq;
            ball3(q)
                .into_iter()
                .filter(move |x| x.norm_sq() == q)
                .map(move |x| LatticeVec4::new(p0, x))
        })
        .collect();
    Ok(TruncatedHyperboloid {
        mass_sq,
        energy_cap,
        points,
    })
}

/// `(y, Y)` acting as `x ↦ y + (1 ⊕ Y)x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PoincareElement {
    pub translation: LatticeVec4,
    pub rotation: GroupElement,
}

impl PoincareElement {
    pub fn identity(group: &SymmetryGroup) -> Self {
        Self {
            translation: LatticeVec4::ZERO,
            rotation: *group.by_label('I'),
        }
    }

    pub fn act(&self, x: LatticeVec4) -> LatticeVec4 {
        self.translation + self.rotation.apply4(x)
    }
}

/// `(y, Y)(z, Z) = (y + Yz, YZ)`.
pub fn poincare_product(
    group: &SymmetryGroup,
    g1: &PoincareElement,
    g2: &PoincareElement,
) -> Result<PoincareElement> {
    Ok(PoincareElement {
        translation: g1.translation + g1.rotation.apply4(g2.translation),
        rotation: group.multiply(&g1.rotation, &g2.rotation)?,
    })
}

/// `(y, Y)⁻¹ = (−Y⁻¹y, Y⁻¹)`.
pub fn poincare_inverse(group: &SymmetryGroup, g: &PoincareElement) -> PoincareElement {
    let inv = group.inverse(&g.rotation);
    PoincareElement {
        translation: -inv.apply4(g.translation),
        rotation: inv,
    }
}
