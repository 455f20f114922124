//! Truncated bosonic Fock space over a finite mass shell.
//!
//! A sector-`n` vector is stored as its values on multisets of shell points;
//! the multiset `μ` stands for all `w(μ) = n!/∏ mult!` orderings, so inner
//! products carry that weight. Operator matrices act on these raw values.
//! [`FockSpace::orthonormal`] conjugates by `W^{1/2}` to the orthonormal basis
//! `χ_μ/√w(μ)`, where adjoints become conjugate transposes.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupElement, SymmetryGroup};
use crate::lattice::LatticeVec4;
use crate::momentum::{poincare_product, PoincareElement, TruncatedHyperboloid};
use crate::reps::{cal_u, spinor_of, SignConvention};

pub type CMatrix = DMatrix<Complex64>;

/// `e^{i·p·x}` from the doubled product.
pub fn phase(p: LatticeVec4, x: LatticeVec4) -> Complex64 {
    Complex64::from_polar(1.0, p.minkowski_dot2(x) as f64 / 2.0)
}

/// Multisets of size `n` over `0..d` as non-decreasing index lists, in lexicographic order.
pub fn multisets(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(d, n, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, n, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Number of orderings of a multiset.
pub fn arrangement_count(ms: &[usize]) -> u64 {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for &i in ms {
        *counts.entry(i).or_insert(0) += 1;
    }
    let fact = |k: u64| (1..=k).product::<u64>();
    fact(ms.len() as u64) / counts.values().map(|&c| fact(c)).product::<u64>()
}

fn multiplicity(ms: &[usize], p: usize) -> usize {
    ms.iter().filter(|&&i| i == p).count()
}

fn with_point(ms: &[usize], p: usize) -> Vec<usize> {
    let mut v = ms.to_vec();
    let pos = v.partition_point(|&i| i <= p);
    v.insert(pos, p);
    v
}

fn without_point(ms: &[usize], p: usize) -> Vec<usize> {
    let mut v = ms.to_vec();
    let pos = v.iter().position(|&i| i == p).expect("point present");
    v.remove(pos);
    v
}

#[derive(Debug, Clone)]
pub struct SectorBasis {
    pub n: usize,
    pub multisets: Vec<Vec<usize>>,
    pub weights: Vec<u64>,
    index: HashMap<Vec<usize>, usize>,
}

impl SectorBasis {
    pub fn new(d: usize, n: usize) -> Self {
        let multisets = multisets(d, n);
        let weights = multisets.iter().map(|m| arrangement_count(m)).collect();
        let index = multisets
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            n,
            multisets,
            weights,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.multisets.len()
    }

    pub fn index_of(&self, ms: &[usize]) -> Option<usize> {
        self.index.get(ms).copied()
    }
}

/// Values of a sector vector on its multiset basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorVector {
    pub n: usize,
    pub values: Vec<Complex64>,
}

#[derive(Debug, Clone)]
pub struct FockSpace {
    pub hyperboloid: TruncatedHyperboloid,
    pub max_n: usize,
    pub sectors: Vec<SectorBasis>,
    offsets: Vec<usize>,
}

impl FockSpace {
    pub fn new(hyperboloid: TruncatedHyperboloid, max_n: usize) -> Self {
        let d = hyperboloid.len();
        let sectors: Vec<SectorBasis> = (0..=max_n).map(|n| SectorBasis::new(d, n)).collect();
        let mut offsets = vec![0];
        for s in &sectors {
            offsets.push(offsets.last().unwrap() + s.dim());
        }
        Self {
            hyperboloid,
            max_n,
            sectors,
            offsets,
        }
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn single_particle_dim(&self) -> usize {
        self.hyperboloid.len()
    }

    /// Index range of sector `n` in the full space.
    pub fn sector_range(&self, n: usize) -> std::ops::Range<usize> {
        self.offsets[n]..self.offsets[n + 1]
    }

    /// Position of multiset `ms` in the full space.
    pub fn global_index(&self, ms: &[usize]) -> Option<usize> {
        let n = ms.len();
        if n > self.max_n {
            return None;
        }
        self.sectors[n].index_of(ms).map(|i| self.offsets[n] + i)
    }

    pub fn weights(&self) -> Vec<f64> {
        self.sectors
            .iter()
            .flat_map(|s| s.weights.iter().map(|&w| w as f64))
            .collect()
    }

    /// `Σ w(μ) conj(f(μ)) g(μ)`.
    pub fn inner_product(&self, f: &SectorVector, g: &SectorVector) -> Result<Complex64> {
        if f.n != g.n {
            return Err(Error::InvalidArgument(format!(
                "sector mismatch: {} vs {}",
                f.n, g.n
            )));
        }
        let s = self
            .sectors
            .get(f.n)
            .ok_or_else(|| Error::InvalidArgument(format!("no sector {}", f.n)))?;
        if f.values.len() != s.dim() || g.values.len() != s.dim() {
            return Err(Error::InvalidArgument(
                "vector length does not match sector".into(),
            ));
        }
        Ok(f.values
            .iter()
            .zip(&g.values)
            .zip(&s.weights)
            .map(|((a, b), &w)| a.conj() * b * w as f64)
            .sum())
    }

    pub fn indicator(&self, ms: &[usize]) -> SectorVector {
        let s = &self.sectors[ms.len()];
        let mut values = vec![Complex64::new(0.0, 0.0); s.dim()];
        values[s.index_of(ms).expect("multiset in sector")] = Complex64::new(1.0, 0.0);
        SectorVector {
            n: ms.len(),
            values,
        }
    }

    /// `W^{1/2} A W^{-1/2}`.
    pub fn orthonormal(&self, a: &CMatrix) -> CMatrix {
        let w: Vec<f64> = self.weights().iter().map(|w| w.sqrt()).collect();
        CMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * (w[i] / w[j]))
    }

    /// Annihilation: `[φ(x)f](μ) = √(n+1) Σ_p e^{-ip·x} f(μ + p)`.
    pub fn phi(&self, x: LatticeVec4) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        let phases: Vec<Complex64> = self
            .hyperboloid
            .points
            .iter()
            .map(|&p| phase(p, x).conj())
            .collect();
        for n in 0..self.max_n {
            let c = ((n + 1) as f64).sqrt();
            for (i, ms) in self.sectors[n].multisets.iter().enumerate() {
                for (p, ph) in phases.iter().enumerate() {
                    let j = self.sectors[n + 1].index_of(&with_point(ms, p)).unwrap();
                    m[(self.offsets[n] + i, self.offsets[n + 1] + j)] += ph * c;
                }
            }
        }
        m
    }

    /// Creation: `[ψ(x)f](p₁…p_{n+1}) = (n+1)^{-1/2} Σⱼ e^{ipⱼ·x} f(…p̂ⱼ…)`, dropping the top sector's image.
    pub fn psi(&self, x: LatticeVec4) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        let phases: Vec<Complex64> = self
            .hyperboloid
            .points
            .iter()
            .map(|&p| phase(p, x))
            .collect();
        for n in 0..self.max_n {
            let c = 1.0 / ((n + 1) as f64).sqrt();
            for (j, ms) in self.sectors[n + 1].multisets.iter().enumerate() {
                let mut distinct = ms.clone();
                distinct.dedup();
                for p in distinct {
                    let i = self.sectors[n].index_of(&without_point(ms, p)).unwrap();
                    let k = multiplicity(ms, p) as f64;
                    m[(self.offsets[n + 1] + j, self.offsets[n] + i)] += phases[p] * (k * c);
                }
            }
        }
        m
    }

    /// `ξ(x) = φ(x) + ψ(x)`.
    pub fn xi(&self, x: LatticeVec4) -> CMatrix {
        self.phi(x) + self.psi(x)
    }

    /// Columns of sectors `0..=top`.
    pub fn restrict_columns(&self, a: &CMatrix, top: usize) -> CMatrix {
        let end = self.offsets[top.min(self.max_n) + 1];
        a.columns(0, end).into_owned()
    }

    /// `V(y, Y)`: `χ_μ ↦ e^{iΣp·y} χ_{Yμ}`.
    pub fn rep_v(&self, y: LatticeVec4, rot: &GroupElement) -> Result<CMatrix> {
        let h = &self.hyperboloid;
        let image: Vec<usize> = h
            .points
            .iter()
            .map(|&p| {
                h.index_of(rot.apply4(p)).ok_or_else(|| {
                    Error::InvalidArgument(format!("shell not invariant under {}", rot.label))
                })
            })
            .collect::<Result<_>>()?;
        let phases: Vec<Complex64> = h.points.iter().map(|&p| phase(p, y)).collect();
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for (n, s) in self.sectors.iter().enumerate() {
            for (i, ms) in s.multisets.iter().enumerate() {
                let mut target: Vec<usize> = ms.iter().map(|&p| image[p]).collect();
                target.sort_unstable();
                let ph: Complex64 = target.iter().map(|&p| phases[p]).product();
                let j = s.index_of(&target).unwrap();
                m[(self.offsets[n] + j, self.offsets[n] + i)] = ph;
            }
        }
        Ok(m)
    }

    /// Diagonals of `P⁰ … P³` on sector 1, in lattice coordinates.
    pub fn momentum_operators(&self) -> MomentumOperators {
        let pts = &self.hyperboloid.points;
        MomentumOperators {
            mass_sq: self.hyperboloid.mass_sq,
            diagonals: [0, 1, 2, 3].map(|j| pts.iter().map(|p| p.coords()[j]).collect()),
        }
    }

    /// Basis listing for export.
    pub fn manifest(&self) -> FockManifest {
        FockManifest {
            mass_sq: self.hyperboloid.mass_sq,
            energy_cap: self.hyperboloid.energy_cap,
            max_n: self.max_n,
            points: self.hyperboloid.points.iter().map(|p| p.coords()).collect(),
            sectors: self.sectors.iter().map(|s| s.multisets.clone()).collect(),
            weights: self.sectors.iter().map(|s| s.weights.clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FockManifest {
    pub mass_sq: i64,
    pub energy_cap: i64,
    pub max_n: usize,
    pub points: Vec<[i64; 4]>,
    pub sectors: Vec<Vec<Vec<usize>>>,
    pub weights: Vec<Vec<u64>>,
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Distance of the sector `0..=top` columns of `a` from `c·I`.
pub fn scalar_residual(space: &FockSpace, a: &CMatrix, c: Complex64, top: usize) -> f64 {
    let cols = space.restrict_columns(a, top);
    let mut target = CMatrix::zeros(cols.nrows(), cols.ncols());
    for k in 0..cols.ncols() {
        target[(k, k)] = c;
    }
    max_abs(&(cols - target))
}

/// `Σ_p e^{ip·(y−x)}` over the shell.
pub fn phase_sum(h: &TruncatedHyperboloid, x: LatticeVec4, y: LatticeVec4) -> Complex64 {
    h.points.iter().map(|&p| phase(p, y - x)).sum()
}

/// Checks `[ξ(x), ξ(y)] = 2i Σ sin p·(y−x)` on sectors below the top and returns the scalar.
pub fn xi_commutator(
    space: &FockSpace,
    x: LatticeVec4,
    y: LatticeVec4,
    tol: f64,
) -> Result<Complex64> {
    let s: f64 = space
        .hyperboloid
        .points
        .iter()
        .map(|&p| (p.minkowski_dot2(y - x) as f64 / 2.0).sin())
        .sum();
    let scalar = Complex64::new(0.0, 2.0 * s);
    let c = commutator(&space.xi(x), &space.xi(y));
    let top = space.max_n.saturating_sub(1);
    let r = scalar_residual(space, &c, scalar, top);
    if r > tol {
        return Err(Error::Check(format!(
            "[ξ(x), ξ(y)] differs from the scalar by {r:e}"
        )));
    }
    Ok(scalar)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentumOperators {
    pub mass_sq: i64,
    /// Eigenvalues of `Pʲ` on the basis `χ_p`.
    pub diagonals: [Vec<i64>; 4],
}

impl MomentumOperators {
    /// `(P⁰)² − Q(P¹, P², P³) − m²` on each basis vector.
    pub fn mass_shell_defects(&self) -> Vec<i64> {
        (0..self.diagonals[0].len())
            .map(|k| {
                let p = LatticeVec4::from_coords([0, 1, 2, 3].map(|j| self.diagonals[j][k]));
                p.norm_sq() - self.mass_sq
            })
            .collect()
    }

    pub fn matrix(&self, j: usize) -> CMatrix {
        CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.diagonals[j].len(),
            self.diagonals[j]
                .iter()
                .map(|&v| Complex64::new(v as f64, 0.0)),
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Spin {
    Zero,
    Half,
    One,
}

impl std::str::FromStr for Spin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" => Ok(Spin::Zero),
            "1/2" => Ok(Spin::Half),
            "1" => Ok(Spin::One),
            other => Err(Error::InvalidArgument(format!("unknown spin {other:?}"))),
        }
    }
}

/// Which group element drives the spin factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub enum SpinFactor {
    /// `𝒰(Y)` or `ℛ(Y)`; a homomorphism (up to sign for spin 1/2).
    #[default]
    Direct,
    /// `𝒰(Y⁻¹)` or `ℛ(Y⁻¹)`.
    Inverse,
}

/// `V_s(y, Y)` on `H_m ⊗ ℂ^{2s+1}`, with the single-particle `V` on the left factor.
pub fn spin_rep(
    space: &FockSpace,
    group: &SymmetryGroup,
    y: LatticeVec4,
    rot: &GroupElement,
    spin: Spin,
    factor: SpinFactor,
) -> Result<CMatrix> {
    let full = space.rep_v(y, rot)?;
    let r1 = space.sector_range(1);
    let v1 = full
        .view((r1.start, r1.start), (r1.len(), r1.len()))
        .into_owned();
    let z = match factor {
        SpinFactor::Direct => *rot,
        SpinFactor::Inverse => group.inverse(rot),
    };
    let inner: CMatrix = match spin {
        Spin::Zero => CMatrix::identity(1, 1),
        Spin::Half => {
            let m = spinor_of(&z, SignConvention::Reference)?.matrix();
            CMatrix::from_fn(2, 2, |i, j| m[(i, j)])
        }
        Spin::One => {
            let m = cal_u(&z).matrix;
            CMatrix::from_fn(3, 3, |i, j| m[(i, j)])
        }
    };
    Ok(v1.kronecker(&inner))
}

/// Residuals of `V` over a sample of Poincaré pairs.
#[derive(Debug, Clone, Serialize)]
pub struct RepVReport {
    pub samples: usize,
    pub max_unitarity: f64,
    pub max_homomorphism: f64,
    pub block_diagonal: bool,
}

pub fn rep_v_check(
    space: &FockSpace,
    group: &SymmetryGroup,
    pairs: &[(PoincareElement, PoincareElement)],
) -> Result<RepVReport> {
    let results: Vec<(f64, f64, bool)> = pairs
        .par_iter()
        .map(|(a, b)| {
            let va = space.rep_v(a.translation, &a.rotation)?;
            let vb = space.rep_v(b.translation, &b.rotation)?;
            let ab = poincare_product(group, a, b)?;
            let vab = space.rep_v(ab.translation, &ab.rotation)?;
            let on = space.orthonormal(&va);
            let unit = max_abs(&(on.adjoint() * &on - CMatrix::identity(on.nrows(), on.ncols())));
            let hom = max_abs(&(&va * &vb - vab));
            Ok((unit, hom, is_block_diagonal(space, &va)))
        })
        .collect::<Result<_>>()?;
    Ok(RepVReport {
        samples: pairs.len(),
        max_unitarity: results.iter().map(|r| r.0).fold(0.0, f64::max),
        max_homomorphism: results.iter().map(|r| r.1).fold(0.0, f64::max),
        block_diagonal: results.iter().all(|r| r.2),
    })
}

/// True when no entry connects different sectors.
pub fn is_block_diagonal(space: &FockSpace, a: &CMatrix) -> bool {
    let sector_of = |k: usize| {
        (0..=space.max_n)
            .find(|&n| space.sector_range(n).contains(&k))
            .unwrap()
    };
    (0..a.nrows()).all(|i| {
        (0..a.ncols())
            .all(|j| a[(i, j)] == Complex64::new(0.0, 0.0) || sector_of(i) == sector_of(j))
    })
}

/// Nonzero entries as `row,col,re,im` lines.
pub fn sparse_triplets_csv(a: &CMatrix) -> String {
    let mut s = String::from("row,col,re,im\n");
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let z = a[(i, j)];
            if z != Complex64::new(0.0, 0.0) {
                s.push_str(&format!("{i},{j},{:.17e},{:.17e}\n", z.re, z.im));
            }
        }
    }
    s
}

type PhaseTerms = BTreeMap<(i64, Ratio<i64>), i64>;

/// Exact operator entries: each is a sum of `count · √coef_sq · e^{i·angle2/2}`.
///
/// Only products and differences of field operators are needed, so the
/// representation is closed and cancellation is decided symbolically.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolicOp {
    entries: BTreeMap<(usize, usize), PhaseTerms>,
}

impl SymbolicOp {
    fn add_term(&mut self, i: usize, j: usize, angle2: i64, coef_sq: Ratio<i64>, count: i64) {
        let cell = self.entries.entry((i, j)).or_default();
        let c = cell.entry((angle2, coef_sq)).or_insert(0);
        *c += count;
        if *c == 0 {
            cell.remove(&(angle2, coef_sq));
            if cell.is_empty() {
                self.entries.remove(&(i, j));
            }
        }
    }

    pub fn phi(space: &FockSpace, x: LatticeVec4) -> Self {
        let mut op = Self::default();
        for n in 0..space.max_n {
            for (i, ms) in space.sectors[n].multisets.iter().enumerate() {
                for (p, pt) in space.hyperboloid.points.iter().enumerate() {
                    let j = space.sectors[n + 1].index_of(&with_point(ms, p)).unwrap();
                    op.add_term(
                        space.offsets[n] + i,
                        space.offsets[n + 1] + j,
                        -pt.minkowski_dot2(x),
                        Ratio::from_integer(n as i64 + 1),
                        1,
                    );
                }
            }
        }
        op
    }

    pub fn psi(space: &FockSpace, x: LatticeVec4) -> Self {
        let mut op = Self::default();
        for n in 0..space.max_n {
            for (j, ms) in space.sectors[n + 1].multisets.iter().enumerate() {
                let mut distinct = ms.clone();
                distinct.dedup();
                for p in distinct {
                    let i = space.sectors[n].index_of(&without_point(ms, p)).unwrap();
                    let k = multiplicity(ms, p) as i64;
                    op.add_term(
                        space.offsets[n + 1] + j,
                        space.offsets[n] + i,
                        space.hyperboloid.points[p].minkowski_dot2(x),
                        Ratio::new(k * k, n as i64 + 1),
                        1,
                    );
                }
            }
        }
        op
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut by_row: BTreeMap<usize, Vec<(usize, &PhaseTerms)>> = BTreeMap::new();
        for (&(k, j), terms) in &other.entries {
            by_row.entry(k).or_default().push((j, terms));
        }
        let mut out = Self::default();
        for (&(i, k), a_terms) in &self.entries {
            let Some(row) = by_row.get(&k) else { continue };
            for (j, b_terms) in row {
                for (&(a1, c1), &n1) in a_terms {
                    for (&(a2, c2), &n2) in b_terms.iter() {
                        out.add_term(i, *j, a1 + a2, c1 * c2, n1 * n2);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), terms) in &other.entries {
            for (&(a, c), &n) in terms {
                out.add_term(i, j, a, c, -n);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_matrix(&self, dim: usize) -> CMatrix {
        let mut m = CMatrix::zeros(dim, dim);
        for (&(i, j), terms) in &self.entries {
            for (&(a, c), &n) in terms {
                let mag = (*c.numer() as f64 / *c.denom() as f64).sqrt();
                m[(i, j)] += Complex64::from_polar(mag * n as f64, a as f64 / 2.0);
            }
        }
        m
    }
}

/// `AB − BA`, computed exactly.
pub fn symbolic_commutator(a: &SymbolicOp, b: &SymbolicOp) -> SymbolicOp {
    a.mul(b).sub(&b.mul(a))
}

#[derive(Debug, Clone, Serialize)]
pub struct FockReport {
    pub single_particle_dim: usize,
    pub max_n: usize,
    pub total_dim: usize,
    pub samples: usize,
    /// `max ‖ψ̃(x) − φ̃(x)†‖` in the orthonormal basis.
    pub adjoint_residual: f64,
    pub phi_phi_exact_zero: bool,
    pub psi_psi_exact_zero: bool,
    pub phi_psi_residual: f64,
    pub xi_residual: f64,
}

/// Runs the adjoint, commutator and `ξ` checks over pairs of points.
pub fn fock_checks(space: &FockSpace, points: &[(LatticeVec4, LatticeVec4)]) -> FockReport {
    let top = space.max_n.saturating_sub(1);
    let rows: Vec<(f64, bool, bool, f64, f64)> = points
        .par_iter()
        .map(|&(x, y)| {
            let phx = space.phi(x);
            let psx = space.psi(x);
            let psy = space.psi(y);
            let adj = max_abs(&(space.orthonormal(&psx) - space.orthonormal(&phx).adjoint()));
            let sx = SymbolicOp::phi(space, x);
            let sy = SymbolicOp::phi(space, y);
            let pp = symbolic_commutator(&sx, &sy).is_zero();
            let qx = SymbolicOp::psi(space, x);
            let qy = SymbolicOp::psi(space, y);
            // ψψ lands in sector n+2, so only sectors below max_n − 1 are untouched by truncation.
            let qq_full = symbolic_commutator(&qx, &qy).to_matrix(space.dim());
            let qq = space.max_n < 2
                || max_abs(&space.restrict_columns(&qq_full, space.max_n - 2)) == 0.0;
            let c = commutator(&phx, &psy);
            let r1 = scalar_residual(space, &c, phase_sum(&space.hyperboloid, x, y), top);
            let s: f64 = space
                .hyperboloid
                .points
                .iter()
                .map(|&p| (p.minkowski_dot2(y - x) as f64 / 2.0).sin())
                .sum();
            let cx = commutator(&space.xi(x), &space.xi(y));
            let r2 = scalar_residual(space, &cx, Complex64::new(0.0, 2.0 * s), top);
            (adj, pp, qq, r1, r2)
        })
        .collect();
    FockReport {
        single_particle_dim: space.single_particle_dim(),
        max_n: space.max_n,
        total_dim: space.dim(),
        samples: points.len(),
        adjoint_residual: rows.iter().map(|r| r.0).fold(0.0, f64::max),
        phi_phi_exact_zero: rows.iter().all(|r| r.1),
        psi_psi_exact_zero: rows.iter().all(|r| r.2),
        phi_psi_residual: rows.iter().map(|r| r.3).fold(0.0, f64::max),
        xi_residual: rows.iter().map(|r| r.4).fold(0.0, f64::max),
    }
}
