//! Unitary and spinor representations of the lattice symmetry group.
//!
//! `cal_u` expresses a group element in Cartesian coordinates, where it is a
//! real rotation. `spinor_of` lifts that rotation to `SU(2)`, fixing the
//! overall sign by a [`SignConvention`].

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix3};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupElement, SymmetryGroup};
use crate::reference;

pub type CMat2 = Matrix2<Complex64>;
pub type CMat3 = Matrix3<Complex64>;

/// Default tolerance for residual checks.
pub const TOL: f64 = 1e-10;

/// Entry (3,3) of `U` as printed; the exact inverse of `U⁻¹` has `√(3/2)` there.
pub const PRINTED_U33: f64 = 0.866_025_403_784_438_6;

/// Returns `(U, U⁻¹)`. Columns of `U⁻¹` are the Cartesian images of `e, f, g`.
pub fn basis_change() -> (Matrix3<f64>, Matrix3<f64>) {
    let s3 = 3f64.sqrt();
    let u_inv = Matrix3::new(
        1.0,
        0.5,
        0.5,
        0.0,
        s3 / 2.0,
        1.0 / (2.0 * s3),
        0.0,
        0.0,
        (2.0f64 / 3.0).sqrt(),
    );
    let u = Matrix3::new(
        1.0,
        -1.0 / s3,
        -1.0 / 6f64.sqrt(),
        0.0,
        2.0 / s3,
        -1.0 / 6f64.sqrt(),
        0.0,
        0.0,
        (1.5f64).sqrt(),
    );
    (u, u_inv)
}

fn int_to_real(m: &[[i64; 3]; 3]) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| m[i][j] as f64)
}

pub fn to_complex3(m: &Matrix3<f64>) -> CMat3 {
    m.map(|x| Complex64::new(x, 0.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Unitary3 {
    pub label: char,
    pub matrix: CMat3,
}

impl Unitary3 {
    /// The real part, which is the whole matrix for group elements.
    pub fn real(&self) -> Matrix3<f64> {
        self.matrix.map(|z| z.re)
    }

    pub fn unitarity_residual(&self) -> f64 {
        max_abs(&(self.matrix.adjoint() * self.matrix - CMat3::identity()))
    }
}

/// `𝒰(Z) = U⁻¹ Z U`.
pub fn cal_u(z: &GroupElement) -> Unitary3 {
    let (u, u_inv) = basis_change();
    Unitary3 {
        label: z.label,
        matrix: to_complex3(&(u_inv * int_to_real(&z.matrix) * u)),
    }
}

pub fn max_abs<R: nalgebra::Dim, C: nalgebra::Dim, S>(
    m: &nalgebra::Matrix<Complex64, R, C, S>,
) -> f64
where
    S: nalgebra::RawStorage<Complex64, R, C>,
{
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `{±1, ±i, e^{±2πi/3}}`.
pub fn allowed_eigenvalues() -> [Complex64; 6] {
    [
        0.0,
        PI,
        PI / 2.0,
        -PI / 2.0,
        2.0 * PI / 3.0,
        -2.0 * PI / 3.0,
    ]
    .map(|t| Complex64::from_polar(1.0, t))
}

pub fn in_allowed_set(z: Complex64, tol: f64) -> bool {
    allowed_eigenvalues().iter().any(|w| (z - w).norm() < tol)
}

/// Principal argument in `(-π, π]`.
pub fn principal_arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= -PI + 1e-12 {
        PI
    } else {
        a
    }
}

#[derive(Debug, Clone)]
pub struct Eigensystem {
    /// Sorted by principal argument.
    pub values: Vec<Complex64>,
    /// Column `k` belongs to `values[k]`; orthonormal.
    pub vectors: CMat3,
}

/// Spectral decomposition of a unitary matrix.
///
/// `𝒰` is normal, so it shares eigenvectors with the Hermitian matrix
/// `Re 𝒰 + c·Im 𝒰`; `c` separates all allowed eigenvalues.
pub fn eigensystem_of(m: &CMat3) -> Eigensystem {
    let h1 = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let h2 = (m - m.adjoint()) * Complex64::new(0.0, -0.5);
    let h = h1 + h2 * Complex64::new(0.3, 0.0);
    let eig = h.symmetric_eigen();
    let mut pairs: Vec<(Complex64, nalgebra::Vector3<Complex64>)> = (0..3)
        .map(|k| {
            let v = eig.eigenvectors.column(k).into_owned();
            let lambda = (v.adjoint() * m * v)[(0, 0)];
            (lambda, v)
        })
        .collect();
    pairs.sort_by(|a, b| principal_arg(a.0).total_cmp(&principal_arg(b.0)));
    let values = pairs.iter().map(|p| p.0).collect();
    let vectors = CMat3::from_columns(&pairs.iter().map(|p| p.1).collect::<Vec<_>>());
    Eigensystem { values, vectors }
}

pub fn eigensystem(z: &GroupElement) -> Eigensystem {
    eigensystem_of(&cal_u(z).matrix)
}

/// Self-adjoint `A′` with `𝒰(Z) = exp(iA′)` and spectrum in `(-π, π]`.
pub fn generator_log(z: &GroupElement) -> CMat3 {
    let es = eigensystem(z);
    let d = CMat3::from_diagonal(&nalgebra::Vector3::from_iterator(
        es.values
            .iter()
            .map(|&l| Complex64::new(principal_arg(l), 0.0)),
    ));
    es.vectors * d * es.vectors.adjoint()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub enum SignConvention {
    /// First nonzero of `(Re a, Im a, Re b, Im b)` is positive.
    #[default]
    FirstPositive,
    /// Sign of the tabulated matrix when it represents the element, else `FirstPositive`.
    Reference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Spinor2 {
    pub label: char,
    pub a: Complex64,
    pub b: Complex64,
    pub convention: SignConvention,
}

impl Spinor2 {
    /// `[[a, b], [-b̄, ā]]`.
    pub fn matrix(&self) -> CMat2 {
        spinor_matrix(self.a, self.b)
    }

    pub fn det(&self) -> Complex64 {
        self.matrix().determinant()
    }

    fn negated(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            ..self
        }
    }
}

pub fn spinor_matrix(a: Complex64, b: Complex64) -> CMat2 {
    CMat2::new(a, b, -b.conj(), a.conj())
}

/// Residuals of the seven defining equations for `(a, b)` against rotation `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinorResiduals {
    pub equations: [f64; 7],
    /// The third equation with `(Âê₂)₂` in place of `(Âê₂)₃`.
    pub printed_third: f64,
}

impl SpinorResiduals {
    pub fn max(&self) -> f64 {
        self.equations.iter().copied().fold(0.0, f64::max)
    }
}

pub fn spinor_residuals(r: &Matrix3<f64>, a: Complex64, b: Complex64) -> SpinorResiduals {
    let c = |x: f64, y: f64| Complex64::new(x, y);
    let eq = [
        (a * a - b * b - c(r[(0, 0)], -r[(1, 0)])).norm(),
        (a * b - c(-r[(0, 2)] / 2.0, r[(1, 2)] / 2.0)).norm(),
        (a * b.conj() - c(r[(2, 0)] / 2.0, r[(2, 1)] / 2.0)).norm(),
        ((a * a + b * b).re - r[(1, 1)]).abs(),
        ((b * b - a.conj() * a.conj()).im - r[(0, 1)]).abs(),
        (b.norm_sqr() - (1.0 - r[(2, 2)]) / 2.0).abs(),
        (a.norm_sqr() + b.norm_sqr() - 1.0).abs(),
    ];
    SpinorResiduals {
        equations: eq,
        printed_third: (a * b.conj() - c(r[(2, 0)] / 2.0, r[(1, 1)] / 2.0)).norm(),
    }
}

/// Solves for `(a, b)` from a rotation matrix, up to overall sign.
fn solve_spinor(r: &Matrix3<f64>) -> (Complex64, Complex64) {
    let c1 = Complex64::new(r[(0, 0)], -r[(1, 0)]);
    let c2 = Complex64::new(-r[(0, 2)] / 2.0, r[(1, 2)] / 2.0);
    let c3 = Complex64::new(r[(2, 0)] / 2.0, r[(2, 1)] / 2.0);
    let b2 = ((1.0 - r[(2, 2)]) / 2.0).clamp(0.0, 1.0);
    let a2 = 1.0 - b2;
    const SMALL: f64 = 1e-12;
    if a2 >= b2 {
        if b2 < SMALL {
            (c1.sqrt(), Complex64::new(0.0, 0.0))
        } else {
            let a = (c2 * c3 / b2).sqrt();
            (a, (c3 / a).conj())
        }
    } else if a2 < SMALL {
        (Complex64::new(0.0, 0.0), (-c1).sqrt())
    } else {
        let b = (c2 * c3.conj() / a2).sqrt();
        (c3 / b.conj(), b)
    }
}

fn first_nonzero_positive(a: Complex64, b: Complex64) -> bool {
    [a.re, a.im, b.re, b.im]
        .into_iter()
        .find(|x| x.abs() > 1e-9)
        .is_none_or(|x| x > 0.0)
}

/// Tabulated `ℛ(label)`, if present.
pub fn reference_spinor(label: char) -> Option<CMat2> {
    reference::spinors()
        .into_iter()
        .find(|(l, _)| *l == label)
        .map(|(_, m)| CMat2::new(m[0][0], m[0][1], m[1][0], m[1][1]))
}

pub fn spinor_of(z: &GroupElement, convention: SignConvention) -> Result<Spinor2> {
    spinor_of_with_tol(z, convention, TOL)
}

pub fn spinor_of_with_tol(
    z: &GroupElement,
    convention: SignConvention,
    tol: f64,
) -> Result<Spinor2> {
    let r = cal_u(z).real();
    let (a, b) = solve_spinor(&r);
    let res = spinor_residuals(&r, a, b);
    if res.max() > tol {
        return Err(Error::InconsistentSpinor {
            label: z.label,
            residual: res.max(),
        });
    }
    let mut s = Spinor2 {
        label: z.label,
        a,
        b,
        convention,
    };
    if !first_nonzero_positive(a, b) {
        s = s.negated();
    }
    if convention == SignConvention::Reference {
        if let Some(p) = reference_spinor(z.label) {
            let m = s.matrix();
            if max_abs(&(p + m)) < 1e-9 {
                s = s.negated();
            }
        }
    }
    Ok(s)
}

/// How a tabulated spinor compares with the computed one.
#[derive(Debug, Clone, Serialize)]
pub struct SpinorDiff {
    pub label: char,
    /// `min(‖P − ℛ‖, ‖P + ℛ‖)` entrywise.
    pub distance: f64,
    pub sign: i8,
    pub matches: bool,
    pub reference_unitarity: f64,
    pub reference_det: (f64, f64),
}

pub fn spinor_diffs(group: &SymmetryGroup, tol: f64) -> Vec<SpinorDiff> {
    group
        .elements()
        .iter()
        .filter_map(|z| {
            let p = reference_spinor(z.label)?;
            let m = spinor_of(z, SignConvention::FirstPositive).ok()?.matrix();
            let plus = max_abs(&(p - m));
            let minus = max_abs(&(p + m));
            let det = p.determinant();
            Some(SpinorDiff {
                label: z.label,
                distance: plus.min(minus),
                sign: if plus <= minus { 1 } else { -1 },
                matches: plus.min(minus) < tol,
                reference_unitarity: max_abs(&(p.adjoint() * p - CMat2::identity())),
                reference_det: (det.re, det.im),
            })
        })
        .collect()
}

/// Sign cocycle `ℛ(YZ) = s(Y,Z) ℛ(Y)ℛ(Z)`.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectiveReport {
    pub convention: SignConvention,
    pub labels: Vec<char>,
    pub signs: Vec<Vec<i8>>,
    pub max_residual: f64,
    pub homomorphism_u_residual: f64,
}

impl ProjectiveReport {
    pub fn sign(&self, y: char, z: char) -> i8 {
        let i = self.labels.iter().position(|&c| c == y).unwrap();
        let j = self.labels.iter().position(|&c| c == z).unwrap();
        self.signs[i][j]
    }

    pub fn all_signed(&self, tol: f64) -> bool {
        self.max_residual < tol
    }
}

pub fn all_spinors(group: &SymmetryGroup, convention: SignConvention) -> Result<Vec<Spinor2>> {
    group
        .elements()
        .iter()
        .map(|z| spinor_of(z, convention))
        .collect()
}

pub fn projective_check(
    group: &SymmetryGroup,
    convention: SignConvention,
) -> Result<ProjectiveReport> {
    let sp: Vec<CMat2> = all_spinors(group, convention)?
        .iter()
        .map(Spinor2::matrix)
        .collect();
    let us: Vec<CMat3> = group.elements().iter().map(|z| cal_u(z).matrix).collect();
    let mut signs = vec![vec![0i8; 24]; 24];
    let mut max_residual: f64 = 0.0;
    let mut hom: f64 = 0.0;
    for y in 0..24 {
        for z in 0..24 {
            let yz = group.product_index(y, z);
            let prod = sp[y] * sp[z];
            let plus = max_abs(&(sp[yz] - prod));
            let minus = max_abs(&(sp[yz] + prod));
            signs[y][z] = if plus <= minus { 1 } else { -1 };
            max_residual = max_residual.max(plus.min(minus));
            hom = hom.max(max_abs(&(us[yz] - us[y] * us[z])));
        }
    }
    Ok(ProjectiveReport {
        convention,
        labels: group.elements().iter().map(|e| e.label).collect(),
        signs,
        max_residual,
        homomorphism_u_residual: hom,
    })
}

/// `[[re, im], …]` rows for serialization.
pub fn complex_rows<R: nalgebra::Dim, C: nalgebra::Dim, S>(
    m: &nalgebra::Matrix<Complex64, R, C, S>,
) -> Vec<Vec<[f64; 2]>>
where
    S: nalgebra::RawStorage<Complex64, R, C>,
{
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct RepresentationExport {
    pub label: char,
    pub unitary: Vec<Vec<[f64; 2]>>,
    pub spinor: Vec<Vec<[f64; 2]>>,
    pub eigenvalues: Vec<[f64; 2]>,
}

pub fn export(
    group: &SymmetryGroup,
    convention: SignConvention,
) -> Result<Vec<RepresentationExport>> {
    group
        .elements()
        .iter()
        .map(|z| {
            let es = eigensystem(z);
            Ok(RepresentationExport {
                label: z.label,
                unitary: complex_rows(&cal_u(z).matrix),
                spinor: complex_rows(&spinor_of(z, convention)?.matrix()),
                eigenvalues: es.values.iter().map(|v| [v.re, v.im]).collect(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-10
    }

    #[test]
    fn basis_change_inverts() {
        let (u, ui) = basis_change();
        assert!((u * ui - Matrix3::identity()).abs().max() < 1e-14);
        assert_eq!(
            u.column(0).iter().copied().collect::<Vec<_>>(),
            vec![1.0, 0.0, 0.0]
        );
        assert_eq!(ui[(0, 1)], 0.5);
        let mut printed = u;
        printed[(2, 2)] = PRINTED_U33;
        assert!((printed * ui - Matrix3::identity()).abs().max() > 0.1);
    }

    #[test]
    fn u_of_m_and_n() {
        let g = SymmetryGroup::new();
        let m = cal_u(g.by_label('M')).real();
        assert!(
            (m - Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, -1.0, -1.0)))
                .abs()
                .max()
                < 1e-12
        );
        let n = cal_u(g.by_label('N')).real();
        let s3 = 3f64.sqrt();
        let row = [0.5, -1.0 / (2.0 * s3), -(2.0f64 / 3.0).sqrt()];
        for (j, want) in row.iter().enumerate() {
            assert!((n[(0, j)] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvalues_of_a_and_j() {
        let g = SymmetryGroup::new();
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let a = eigensystem(g.by_label('A')).values;
        assert!(close(a[0], w.conj()) && close(a[1], Complex64::new(1.0, 0.0)) && close(a[2], w));
        let j = eigensystem(g.by_label('J')).values;
        assert!(close(j[0], Complex64::new(1.0, 0.0)));
        assert!(close(j[1], Complex64::new(-1.0, 0.0)) && close(j[2], Complex64::new(-1.0, 0.0)));
        let i = eigensystem(g.by_label('I')).values;
        assert!(i.iter().all(|&v| close(v, Complex64::new(1.0, 0.0))));
    }

    #[test]
    fn generator_of_identity_vanishes() {
        let g = SymmetryGroup::new();
        assert!(max_abs(&generator_log(g.by_label('I'))) < 1e-12);
        let a = generator_log(g.by_label('A'));
        let ev = a.symmetric_eigen().eigenvalues;
        let mut ev: Vec<f64> = ev.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] + 2.0 * PI / 3.0).abs() < 1e-10);
        assert!(ev[1].abs() < 1e-10);
        assert!((ev[2] - 2.0 * PI / 3.0).abs() < 1e-10);
    }

    #[test]
    fn spinor_of_m_and_i() {
        let g = SymmetryGroup::new();
        let m = spinor_of(g.by_label('M'), SignConvention::FirstPositive)
            .unwrap()
            .matrix();
        let want = CMat2::new(0.0.into(), I, I, 0.0.into());
        assert!(max_abs(&(m - want)) < 1e-10 || max_abs(&(m + want)) < 1e-10);
        let id = spinor_of(g.by_label('I'), SignConvention::FirstPositive)
            .unwrap()
            .matrix();
        assert!(max_abs(&(id - CMat2::identity())) < 1e-12);
    }

    #[test]
    fn spinors_are_special_unitary() {
        let g = SymmetryGroup::new();
        for z in g.elements() {
            let s = spinor_of(z, SignConvention::FirstPositive).unwrap();
            assert!(close(s.det(), Complex64::new(1.0, 0.0)));
            assert!(first_nonzero_positive(s.a, s.b));
        }
    }

    #[test]
    fn inconsistent_tolerance_is_reported() {
        let g = SymmetryGroup::new();
        let err =
            spinor_of_with_tol(g.by_label('N'), SignConvention::FirstPositive, -1.0).unwrap_err();
        assert!(matches!(err, Error::InconsistentSpinor { label: 'N', .. }));
    }

    #[test]
    fn cocycle_examples() {
        let g = SymmetryGroup::new();
        let first = projective_check(&g, SignConvention::FirstPositive).unwrap();
        assert!(first.all_signed(1e-10));
        assert!(first.homomorphism_u_residual < 1e-12);
        assert_eq!(first.sign('J', 'J'), -1);
        for z in g.elements() {
            assert_eq!(first.sign('I', z.label), 1);
        }
        let r = projective_check(&g, SignConvention::Reference).unwrap();
        assert_eq!(r.sign('G', 'H'), -1);
    }
}
