//! Universe histories as causal sets.
//!
//! The background is the forward cone `𝒞₀⁺ = {v : v⁰ ≥ 0, ‖v‖₄² ≥ 0}` with
//! `u < v` iff `u⁰ < v⁰` and `‖v − u‖₄² ≥ 0`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{attained_norms, ball3, unit_vectors3, LatticeVec4};
use crate::reference;

pub type Vertex = LatticeVec4;

pub fn in_cone(v: Vertex) -> bool {
    v.t >= 0 && v.norm_sq() >= 0
}

/// `𝒮ᵗ`: vertices at time `t` inside the cone, in lexicographic order.
pub fn shell(t: i64) -> Result<Vec<Vertex>> {
    if t < 0 {
        return Err(Error::InvalidArgument(format!(
            "shell time must be >= 0, got {t}"
        )));
    }
    Ok(ball3(t * t)
        .into_iter()
        .map(|x| LatticeVec4::new(t, x))
        .collect())
}

pub fn precedes(u: Vertex, v: Vertex) -> bool {
    u.t < v.t && (v - u).norm_sq() >= 0
}

/// `(1, 0̲)` followed by `(1, ēⱼ)` for `j = 1..12`.
pub fn child_steps() -> [LatticeVec4; 13] {
    let mut out = [LatticeVec4::D; 13];
    for (k, e) in unit_vectors3().iter().enumerate() {
        out[k + 1] = LatticeVec4::new(1, *e);
    }
    out
}

pub fn children(u: Vertex) -> Vec<Vertex> {
    child_steps().iter().map(|s| u + *s).collect()
}

pub fn parents(u: Vertex) -> Vec<Vertex> {
    if u.t == 0 {
        return Vec::new();
    }
    let mut out: Vec<Vertex> = child_steps()
        .iter()
        .map(|s| u - *s)
        .filter(|w| in_cone(*w))
        .collect();
    out.sort();
    out
}

/// Lengths of child chains from `u` to `v`, exploring at most `sample_limit` chains depth first.
///
/// Chains step through [`children`]; an empty result means `v` is not reachable that way.
pub fn path_lengths(u: Vertex, v: Vertex, sample_limit: usize) -> Result<BTreeSet<i64>> {
    if !precedes(u, v) {
        return Err(Error::InvalidArgument(format!("{u} does not precede {v}")));
    }
    let mut lengths = BTreeSet::new();
    let mut found = 0usize;
    let mut stack: Vec<(Vertex, i64)> = vec![(u, 0)];
    while let Some((w, len)) = stack.pop() {
        if found >= sample_limit {
            break;
        }
        if w == v {
            lengths.insert(len);
            found += 1;
            continue;
        }
        for c in children(w).into_iter().rev() {
            if c == v || precedes(c, v) {
                stack.push((c, len + 1));
            }
        }
    }
    Ok(lengths)
}

/// `𝒮̄ᵗ`, grouped by shell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct History {
    pub horizon: i64,
    pub shells: Vec<Vec<Vertex>>,
}

impl History {
    pub fn new(horizon: i64) -> Result<Self> {
        if horizon < 0 {
            return Err(Error::InvalidArgument(format!(
                "horizon must be >= 0, got {horizon}"
            )));
        }
        let shells = (0..=horizon)
            .into_par_iter()
            .map(|t| shell(t).expect("t >= 0"))
            .collect();
        Ok(Self { horizon, shells })
    }

    pub fn len(&self) -> usize {
        self.shells.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.shells.iter().flatten().copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.t >= 0 && v.t <= self.horizon && in_cone(v)
    }

    pub fn export(&self) -> HistoryExport {
        HistoryExport {
            horizon: self.horizon,
            shells: self
                .shells
                .iter()
                .map(|s| s.iter().map(|v| v.coords()).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HistoryExport {
    pub horizon: i64,
    pub shells: Vec<Vec<[i64; 4]>>,
}

/// Vertices obtained from the origin by repeatedly adding child steps.
pub fn reachable_by_children(horizon: i64) -> Vec<BTreeSet<Vertex>> {
    let mut out = vec![BTreeSet::from([LatticeVec4::ZERO])];
    for _ in 0..horizon.max(0) {
        let next = out
            .last()
            .unwrap()
            .iter()
            .flat_map(|u| children(*u))
            .collect();
        out.push(next);
    }
    out
}

/// Per-shell vertices missing from the child-step construction.
pub fn construction_gaps(horizon: i64) -> Result<Vec<Vec<Vertex>>> {
    let h = History::new(horizon)?;
    let reach = reachable_by_children(horizon);
    Ok(h.shells
        .iter()
        .zip(&reach)
        .map(|(s, r)| s.iter().copied().filter(|v| !r.contains(v)).collect())
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct CovarianceReport {
    pub horizon: i64,
    pub vertices: usize,
    pub comparable_pairs: usize,
    pub links: usize,
    /// All paths of covering links between each comparable pair have one length.
    pub weakly_covariant: bool,
    pub weak_covariance_witness: Option<(Vertex, Vertex, i64, i64)>,
    pub covariant: bool,
    /// `(u, v)` with `h(u) < h(v)` but not `u < v`.
    pub covariance_witness: Option<(Vertex, Vertex)>,
    /// Vertices whose height differs from their time coordinate, with the height.
    pub height_mismatches: Vec<(Vertex, i64)>,
    /// Covering links that are not child steps.
    pub links_not_child_steps: Vec<(Vertex, Vertex)>,
    /// Child steps inside the history that are not covering links.
    pub child_steps_not_links: Vec<(Vertex, Vertex)>,
}

/// Heights, path lengths and covariance of a history under its covering relation.
pub fn covariance_diagnostics(h: &History) -> CovarianceReport {
    let verts: Vec<Vertex> = h.vertices().collect();
    let n = verts.len();
    let index: HashMap<Vertex, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let less: Vec<Vec<bool>> = verts
        .par_iter()
        .map(|&u| verts.iter().map(|&v| precedes(u, v)).collect())
        .collect();
    // u ⋖ v iff u < v with nothing strictly between.
    let links: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .filter(|&j| less[i][j] && !(0..n).any(|k| less[i][k] && less[k][j]))
                .collect()
        })
        .collect();
    let comparable_pairs = less.iter().map(|r| r.iter().filter(|&&b| b).count()).sum();
    let link_count = links.iter().map(Vec::len).sum();

    // Vertices are sorted by time, which is a topological order for links.
    let mut height = vec![0i64; n];
    for i in 0..n {
        for &j in &links[i] {
            height[j] = height[j].max(height[i] + 1);
        }
    }

    let spans: Vec<Option<(usize, i64, i64)>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut lo = vec![i64::MAX; n];
            let mut hi = vec![i64::MIN; n];
            lo[s] = 0;
            hi[s] = 0;
            for i in s..n {
                if hi[i] == i64::MIN {
                    continue;
                }
                for &j in &links[i] {
                    lo[j] = lo[j].min(lo[i] + 1);
                    hi[j] = hi[j].max(hi[i] + 1);
                }
            }
            (0..n)
                .find(|&j| j != s && hi[j] != i64::MIN && lo[j] != hi[j])
                .map(|j| (j, lo[j], hi[j]))
        })
        .collect();
    let weak_covariance_witness = spans
        .iter()
        .enumerate()
        .find_map(|(s, w)| w.map(|(j, lo, hi)| (verts[s], verts[j], lo, hi)));

    let covariance_witness = (0..n).find_map(|i| {
        (0..n)
            .find(|&j| height[i] < height[j] && !less[i][j])
            .map(|j| (verts[i], verts[j]))
    });

    let height_mismatches = verts
        .iter()
        .zip(&height)
        .filter(|(v, &ht)| v.t != ht)
        .map(|(v, &ht)| (*v, ht))
        .collect();

    let steps: BTreeSet<LatticeVec4> = child_steps().into_iter().collect();
    let mut links_not_child_steps = Vec::new();
    for (i, row) in links.iter().enumerate() {
        for &j in row {
            if !steps.contains(&(verts[j] - verts[i])) {
                links_not_child_steps.push((verts[i], verts[j]));
            }
        }
    }
    let mut child_steps_not_links = Vec::new();
    for (i, &u) in verts.iter().enumerate() {
        for c in children(u) {
            if let Some(&j) = index.get(&c) {
                if !links[i].contains(&j) {
                    child_steps_not_links.push((u, c));
                }
            }
        }
    }

    CovarianceReport {
        horizon: h.horizon,
        vertices: n,
        comparable_pairs,
        links: link_count,
        weakly_covariant: weak_covariance_witness.is_none(),
        weak_covariance_witness,
        covariant: covariance_witness.is_none(),
        covariance_witness,
        height_mismatches,
        links_not_child_steps,
        child_steps_not_links,
    }
}

/// Number of vertices of `shell(t)` with each parent count.
pub fn parent_histogram(t: i64) -> Result<BTreeMap<usize, usize>> {
    let mut out = BTreeMap::new();
    for v in shell(t)? {
        *out.entry(parents(v).len()).or_insert(0) += 1;
    }
    Ok(out)
}

pub fn parent_histogram_csv(hist: &BTreeMap<usize, usize>) -> String {
    let mut s = String::from("parents,vertices\n");
    for (k, v) in hist {
        s.push_str(&format!("{k},{v}\n"));
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Speed {
    /// `‖v̲‖₃²`; the speed is `√q / t`.
    pub q: i64,
    pub t: i64,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpeedReport {
    pub t: i64,
    pub speeds: Vec<Speed>,
    /// Tabulated `q` values, when available.
    pub reference: Option<Vec<i64>>,
    pub missing_from_reference: Vec<i64>,
    pub absent_from_lattice: Vec<i64>,
}

/// `{√Q / t}` over the attained values `Q ≤ t²`, with the exact `Q` attached.
pub fn average_speeds(t: i64) -> Result<SpeedReport> {
    if t < 1 {
        return Err(Error::InvalidArgument(format!(
            "speed horizon must be >= 1, got {t}"
        )));
    }
    let qs = attained_norms(t * t);
    let speeds = qs
        .iter()
        .map(|&q| Speed {
            q,
            t,
            value: (q as f64).sqrt() / t as f64,
        })
        .collect();
    let reference = reference::speed_norms(t);
    let (missing, absent) = match &reference {
        Some(r) => (
            qs.difference(r).copied().collect(),
            r.difference(&qs).copied().collect(),
        ),
        None => (Vec::new(), Vec::new()),
    };
    Ok(SpeedReport {
        t,
        speeds,
        reference: reference.map(|r| r.into_iter().collect()),
        missing_from_reference: missing,
        absent_from_lattice: absent,
    })
}
