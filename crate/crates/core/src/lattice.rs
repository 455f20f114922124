//! Exact integer arithmetic on the tetrahedral lattice and its spacetime extension.
//!
//! Vectors are stored by their coordinates in the basis `{e, f, g}` (space) or
//! `{d, e, f, g}` (spacetime), where `e, f, g` are unit vectors with pairwise
//! inner product 1/2 and `d` is the orthogonal unit time direction. Inner
//! products are returned doubled so that everything stays in the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point `n·e + p·f + q·g` of the spatial lattice.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct LatticeVec3 {
    pub n: i64,
    pub p: i64,
    pub q: i64,
}

impl LatticeVec3 {
    pub const ZERO: Self = Self::new(0, 0, 0);
    pub const E: Self = Self::new(1, 0, 0);
    pub const F: Self = Self::new(0, 1, 0);
    pub const G: Self = Self::new(0, 0, 1);

    pub const fn new(n: i64, p: i64, q: i64) -> Self {
        Self { n, p, q }
    }

    pub fn coords(self) -> [i64; 3] {
        [self.n, self.p, self.q]
    }

    pub fn from_coords(c: [i64; 3]) -> Self {
        Self::new(c[0], c[1], c[2])
    }

    /// Squared length `n² + p² + q² + np + nq + pq`.
    pub fn norm_sq(self) -> i64 {
        let Self { n, p, q } = self;
        n * n + p * p + q * q + n * p + n * q + p * q
    }

    /// Twice the Euclidean inner product.
    pub fn inner2(self, other: Self) -> i64 {
        let [a0, a1, a2] = self.coords();
        let [b0, b1, b2] = other.coords();
        2 * (a0 * b0 + a1 * b1 + a2 * b2) + a0 * (b1 + b2) + a1 * (b0 + b2) + a2 * (b0 + b1)
    }

    /// Cartesian coordinates with `e = (1,0,0)`, `f = (1/2, √3/2, 0)`,
    /// `g = (1/2, 1/(2√3), √(2/3))`.
    pub fn to_cartesian(self) -> [f64; 3] {
        let (n, p, q) = (self.n as f64, self.p as f64, self.q as f64);
        let s3 = 3f64.sqrt();
        [
            n + 0.5 * p + 0.5 * q,
            s3 / 2.0 * p + q / (2.0 * s3),
            (2.0f64 / 3.0).sqrt() * q,
        ]
    }
}

impl fmt::Display for LatticeVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.p, self.q)
    }
}

impl Add for LatticeVec3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.n + o.n, self.p + o.p, self.q + o.q)
    }
}

impl Sub for LatticeVec3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.n - o.n, self.p - o.p, self.q - o.q)
    }
}

impl Neg for LatticeVec3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.n, -self.p, -self.q)
    }
}

impl Mul<LatticeVec3> for i64 {
    type Output = LatticeVec3;
    fn mul(self, v: LatticeVec3) -> LatticeVec3 {
        LatticeVec3::new(self * v.n, self * v.p, self * v.q)
    }
}

/// A spacetime point `t·d + n·e + p·f + q·g`, coordinates ordered `(t, n, p, q)`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct LatticeVec4 {
    pub t: i64,
    pub space: LatticeVec3,
}

impl LatticeVec4 {
    pub const ZERO: Self = Self::new(0, LatticeVec3::ZERO);
    pub const D: Self = Self::new(1, LatticeVec3::ZERO);

    pub const fn new(t: i64, space: LatticeVec3) -> Self {
        Self { t, space }
    }

    pub const fn from_coords(c: [i64; 4]) -> Self {
        Self::new(c[0], LatticeVec3::new(c[1], c[2], c[3]))
    }

    pub fn coords(self) -> [i64; 4] {
        [self.t, self.space.n, self.space.p, self.space.q]
    }

    /// Indefinite norm `t² − Q(space)`; may be negative.
    pub fn norm_sq(self) -> i64 {
        self.t * self.t - self.space.norm_sq()
    }

    /// Twice the Minkowski product `p·x = p⁰x⁰ − ⟨p̲, x̲⟩`.
    pub fn minkowski_dot2(self, other: Self) -> i64 {
        2 * self.t * other.t - self.space.inner2(other.space)
    }
}

impl fmt::Display for LatticeVec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({};{},{},{})",
            self.t, self.space.n, self.space.p, self.space.q
        )
    }
}

impl Add for LatticeVec4 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.t + o.t, self.space + o.space)
    }
}

impl Sub for LatticeVec4 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.t - o.t, self.space - o.space)
    }
}

impl Neg for LatticeVec4 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.t, -self.space)
    }
}

impl Mul<LatticeVec4> for i64 {
    type Output = LatticeVec4;
    fn mul(self, v: LatticeVec4) -> LatticeVec4 {
        LatticeVec4::new(self * v.t, self * v.space)
    }
}

pub fn norm_sq3(u: LatticeVec3) -> i64 {
    u.norm_sq()
}

pub fn inner3x2(u: LatticeVec3, v: LatticeVec3) -> i64 {
    u.inner2(v)
}

pub fn norm_sq4(u: LatticeVec4) -> i64 {
    u.norm_sq()
}

pub fn minkowski_dot2(p: LatticeVec4, x: LatticeVec4) -> i64 {
    p.minkowski_dot2(x)
}

pub fn to_cartesian3(u: LatticeVec3) -> [f64; 3] {
    u.to_cartesian()
}

/// Smallest `b ≥ 0` with `b² ≥ x`.
pub fn ceil_sqrt(x: i64) -> i64 {
    let mut b = (x.max(0) as f64).sqrt() as i64;
    while b * b < x {
        b += 1;
    }
    while b > 0 && (b - 1) * (b - 1) >= x {
        b -= 1;
    }
    b
}

/// All spatial vectors with `normSq3 ≤ limit`, in lexicographic order.
///
/// Uses `Q ≥ (n² + p² + q²)/2`, so every coordinate is at most `√(2·limit)`.
pub fn ball3(limit: i64) -> Vec<LatticeVec3> {
    if limit < 0 {
        return Vec::new();
    }
    let b = ceil_sqrt(2 * limit);
    let mut out = Vec::new();
    for n in -b..=b {
        for p in -b..=b {
            for q in -b..=b {
                let v = LatticeVec3::new(n, p, q);
                if v.norm_sq() <= limit {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// The values `normSq3` takes on the lattice, up to `limit`.
pub fn attained_norms(limit: i64) -> std::collections::BTreeSet<i64> {
    ball3(limit).into_iter().map(LatticeVec3::norm_sq).collect()
}

/// The twelve unit vectors `±e, ±f, ±g, ±(e−f), ±(e−g), ±(f−g)`, in the
/// labelling `ē₁ … ē₁₂` (the last six are the negatives of the first six).
pub fn unit_vectors3() -> [LatticeVec3; 12] {
    let e = LatticeVec3::E;
    let f = LatticeVec3::F;
    let g = LatticeVec3::G;
    let pos = [e, f, g, e - f, e - g, f - g];
    let mut out = [LatticeVec3::ZERO; 12];
    for (i, u) in pos.iter().enumerate() {
        out[i] = *u;
        out[i + 6] = -*u;
    }
    out
}

/// An ordered triple of unit vectors with pairwise inner product 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple(pub [LatticeVec3; 3]);

impl Triple {
    pub const BASIC: Triple = Triple([LatticeVec3::E, LatticeVec3::F, LatticeVec3::G]);

    pub fn is_valid(&self) -> bool {
        let [a, b, c] = self.0;
        [a, b, c].iter().all(|u| u.norm_sq() == 1)
            && a.inner2(b) == 1
            && a.inner2(c) == 1
            && b.inner2(c) == 1
    }

    /// Determinant of the coordinate matrix whose columns are the three vectors.
    pub fn det(&self) -> i64 {
        let [a, b, c] = self.0;
        a.n * (b.p * c.q - b.q * c.p) - b.n * (a.p * c.q - a.q * c.p)
            + c.n * (a.p * b.q - a.q * b.p)
    }

    pub fn rotate(&self) -> Triple {
        let [a, b, c] = self.0;
        Triple([b, c, a])
    }
}

/// The eight triads, each as its leading triple, ordered so that the triple
/// has the same orientation as `(e, f, g)`.
pub fn triads() -> [Triple; 8] {
    let e = LatticeVec3::E;
    let f = LatticeVec3::F;
    let g = LatticeVec3::G;
    [
        Triple([e, f, g]),
        Triple([-e, -f, -g]),
        Triple([e, e - f, e - g]),
        Triple([-e, f - e, g - e]),
        Triple([f, f - e, f - g]),
        Triple([-f, e - f, g - f]),
        Triple([g, g - e, g - f]),
        Triple([-g, e - g, f - g]),
    ]
    .map(|t| {
        let [a, b, c] = t.0;
        if t.det() > 0 {
            t
        } else {
            Triple([a, c, b])
        }
    })
}

/// All 24 triples: the three cyclic rotations of each triad.
pub fn triples() -> Vec<Triple> {
    triads()
        .iter()
        .flat_map(|t| [*t, t.rotate(), t.rotate().rotate()])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_sqrt_values() {
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(1), 1);
        assert_eq!(ceil_sqrt(2), 2);
        assert_eq!(ceil_sqrt(18), 5);
        assert_eq!(ceil_sqrt(25), 5);
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(ball3(0).len(), 1);
        assert_eq!(ball3(1).len(), 13);
        assert_eq!(ball3(4).len(), 55);
        assert!(ball3(-1).is_empty());
        assert!(!attained_norms(20).contains(&14));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm_sq3(LatticeVec3::E), 1);
        assert_eq!(norm_sq3(LatticeVec3::ZERO), 0);
        assert_eq!(norm_sq3(LatticeVec3::new(2, 3, -1)), 15);
    }

    #[test]
    fn inner_examples() {
        let (e, f, g) = (LatticeVec3::E, LatticeVec3::F, LatticeVec3::G);
        assert_eq!(inner3x2(e, f), 1);
        assert_eq!(inner3x2(e, e), 2);
        assert_eq!(inner3x2(e - f, f - g), -1);
    }

    #[test]
    fn spacetime_examples() {
        let e4 = LatticeVec4::new(0, LatticeVec3::E);
        assert_eq!(norm_sq4(LatticeVec4::D), 1);
        assert_eq!(norm_sq4(LatticeVec4::new(1, LatticeVec3::E)), 0);
        assert_eq!(norm_sq4(LatticeVec4::new(3, LatticeVec3::new(2, -1, 0))), 6);
        assert_eq!(minkowski_dot2(LatticeVec4::D, LatticeVec4::D), 2);
        assert_eq!(minkowski_dot2(e4, LatticeVec4::new(0, LatticeVec3::F)), -1);
        assert_eq!(
            minkowski_dot2(
                LatticeVec4::new(2, LatticeVec3::E),
                LatticeVec4::new(1, LatticeVec3::E)
            ),
            2
        );
    }

    #[test]
    fn unit_vectors_match_brute_force() {
        let mut brute = Vec::new();
        for n in -2..=2 {
            for p in -2..=2 {
                for q in -2..=2 {
                    let u = LatticeVec3::new(n, p, q);
                    // ½[(n+p)² + (n+q)² + (p+q)²] = 1
                    if (n + p).pow(2) + (n + q).pow(2) + (p + q).pow(2) == 2 {
                        brute.push(u);
                    }
                }
            }
        }
        let mut units = unit_vectors3().to_vec();
        brute.sort();
        units.sort();
        assert_eq!(units, brute);
        assert!(units.contains(&LatticeVec3::E));
        assert!(units.iter().all(|u| units.contains(&-*u)));
    }

    #[test]
    fn triples_are_valid_and_distinct() {
        let ts = triples();
        assert_eq!(ts.len(), 24);
        assert!(ts.iter().all(Triple::is_valid));
        let mut sorted = ts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 24);
        assert!(ts.contains(&Triple::BASIC));
        assert!(ts.iter().all(|t| t.det() == 1));
        for t in &ts {
            assert!(ts.contains(&t.rotate()));
        }
    }

    #[test]
    fn cartesian_images() {
        assert_eq!(to_cartesian3(LatticeVec3::E), [1.0, 0.0, 0.0]);
        assert_eq!(to_cartesian3(LatticeVec3::ZERO), [0.0, 0.0, 0.0]);
        let g = to_cartesian3(LatticeVec3::G);
        let want = [0.5, 1.0 / (2.0 * 3f64.sqrt()), (2.0f64 / 3.0).sqrt()];
        for i in 0..3 {
            assert!((g[i] - want[i]).abs() < 1e-15);
        }
    }
}
