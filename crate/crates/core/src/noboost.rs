//! Bounded search for norm-preserving unimodular maps of the spacetime lattice.
//!
//! A map `T` is described by the images of `d, e, f, g`. It is a symmetry when
//! it preserves every doubled Minkowski product between basis vectors and has
//! determinant 1. It is a boost when `Td ≠ ±d`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::LatticeVec4;

pub const MIN_BOUND: i64 = 3;

/// Doubled Minkowski Gram matrix of `{d, e, f, g}`.
pub const GRAM4X2: [[i64; 4]; 4] = [
    [2, 0, 0, 0],
    [0, -2, -1, -1],
    [0, -1, -2, -1],
    [0, -1, -1, -2],
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub bound: i64,
    pub symmetries: usize,
    pub boosts: usize,
    /// Symmetries with `Td = -d`.
    pub time_reversing: usize,
    /// Up to eight boosts as column images `[Td, Te, Tf, Tg]`.
    pub boost_witnesses: Vec<[[i64; 4]; 4]>,
    /// Solutions of `Σ(tᵢ+tⱼ)² + 2 = 2t₀²`, counted by `t₀`.
    pub time_image_counts: BTreeMap<i64, usize>,
    /// Solutions of `Σ(sᵢ+sⱼ)² = 2s₀² + 2`, counted by `s₀`.
    pub space_image_counts: BTreeMap<i64, usize>,
}

impl Certificate {
    pub fn no_boosts(&self) -> bool {
        self.boosts == 0
    }
}

fn pair_sum_squares(c: [i64; 4]) -> i64 {
    let [_, a, b, d] = c;
    (a + b).pow(2) + (a + d).pow(2) + (b + d).pow(2)
}

/// All `(t₀, t₁, t₂, t₃)` in the box with `Σ(tᵢ+tⱼ)² + 2 = 2t₀²`, i.e. images of `d`.
pub fn time_images(bound: i64) -> Vec<[i64; 4]> {
    box_vectors(bound)
        .filter(|c| pair_sum_squares(*c) + 2 == 2 * c[0] * c[0])
        .collect()
}

/// All `(s₀, s₁, s₂, s₃)` in the box with `Σ(sᵢ+sⱼ)² = 2s₀² + 2`, i.e. candidate images of `e`.
pub fn space_images(bound: i64) -> Vec<[i64; 4]> {
    box_vectors(bound)
        .filter(|c| pair_sum_squares(*c) == 2 * c[0] * c[0] + 2)
        .collect()
}

fn box_vectors(bound: i64) -> impl Iterator<Item = [i64; 4]> {
    let r = -bound..=bound;
    r.clone().flat_map(move |a| {
        let r = -bound..=bound;
        r.flat_map(move |b| {
            (-bound..=bound).flat_map(move |c| (-bound..=bound).map(move |d| [a, b, c, d]))
        })
    })
}

fn dot2(a: [i64; 4], b: [i64; 4]) -> i64 {
    LatticeVec4::from_coords(a).minkowski_dot2(LatticeVec4::from_coords(b))
}

pub fn det4(cols: &[[i64; 4]; 4]) -> i64 {
    let m = |i: usize, j: usize| cols[j][i];
    let mut total = 0;
    for j in 0..4 {
        let minor: Vec<Vec<i64>> = (1..4)
            .map(|i| (0..4).filter(|&k| k != j).map(|k| m(i, k)).collect())
            .collect();
        let d3 = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1])
            - minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0])
            + minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m(0, j) * d3;
    }
    total
}

/// Exhaustive search over integer matrices with entries in `[-bound, bound]`.
pub fn no_boost_search(bound: i64) -> Result<Certificate> {
    if bound < MIN_BOUND {
        return Err(Error::InvalidArgument(format!(
            "bound must be at least {MIN_BOUND}, got {bound}"
        )));
    }
    let ds = time_images(bound);
    let es = space_images(bound);

    let found: Vec<[[i64; 4]; 4]> = ds
        .par_iter()
        .flat_map_iter(|&td| {
            let es_d: Vec<[i64; 4]> = es.iter().copied().filter(|&x| dot2(td, x) == 0).collect();
            let mut out = Vec::new();
            for &te in &es_d {
                for &tf in &es_d {
                    if dot2(te, tf) != GRAM4X2[1][2] {
                        continue;
                    }
                    for &tg in &es_d {
                        if dot2(te, tg) != GRAM4X2[1][3] || dot2(tf, tg) != GRAM4X2[2][3] {
                            continue;
                        }
                        let cols = [td, te, tf, tg];
                        if det4(&cols) == 1 {
                            out.push(cols);
                        }
                    }
                }
            }
            out
        })
        .collect();

    let d = LatticeVec4::D.coords();
    let minus_d = (-LatticeVec4::D).coords();
    let is_boost = |c: &[[i64; 4]; 4]| c[0] != d && c[0] != minus_d;
    let boosts: Vec<_> = found.iter().filter(|c| is_boost(c)).copied().collect();
    let mut time_image_counts = BTreeMap::new();
    for c in &ds {
        *time_image_counts.entry(c[0]).or_insert(0) += 1;
    }
    let mut space_image_counts = BTreeMap::new();
    for c in &es {
        *space_image_counts.entry(c[0]).or_insert(0) += 1;
    }
    Ok(Certificate {
        bound,
        symmetries: found.len(),
        boosts: boosts.len(),
        time_reversing: found.iter().filter(|c| c[0] == minus_d).count(),
        boost_witnesses: boosts.into_iter().take(8).collect(),
        time_image_counts,
        space_image_counts,
    })
}

/// Checks that the columns preserve the doubled Gram matrix and have determinant 1.
pub fn is_symmetry(cols: &[[i64; 4]; 4]) -> bool {
    (0..4).all(|i| (0..4).all(|j| dot2(cols[i], cols[j]) == GRAM4X2[i][j])) && det4(cols) == 1
}
