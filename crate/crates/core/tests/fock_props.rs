use num_complex::Complex64;
use proptest::prelude::*;

use causet_qft::fock::{
    is_block_diagonal, max_abs, spin_rep, CMatrix, FockSpace, Spin, SpinFactor,
};
use causet_qft::lattice::LatticeVec4;
use causet_qft::momentum::{hyperboloid, poincare_product, PoincareElement};
use causet_qft::SymmetryGroup;

fn space() -> FockSpace {
    FockSpace::new(hyperboloid(0, 1).unwrap(), 2)
}

fn point() -> impl Strategy<Value = LatticeVec4> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_map(|(t, n, p, q)| LatticeVec4::from_coords([t, n, p, q]))
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<Complex64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

/// `Σ_k w_k conj(f_k) g_k`: the multiplicity-weighted inner product.
fn weighted(w: &[f64], f: &[Complex64], g: &[Complex64]) -> Complex64 {
    w.iter()
        .zip(f)
        .zip(g)
        .map(|((w, f), g)| f.conj() * g * *w)
        .sum()
}

fn apply(a: &CMatrix, v: &[Complex64]) -> Vec<Complex64> {
    (0..a.nrows())
        .map(|i| (0..a.ncols()).map(|j| a[(i, j)] * v[j]).sum())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn phi_and_psi_are_adjoint(x in point(), f in vector(105), g in vector(105)) {
        let s = space();
        let w = s.weights();
        // f lives below the top sector so that ψ f is not truncated.
        let top = s.sector_range(2);
        let f: Vec<Complex64> = f
            .into_iter()
            .enumerate()
            .map(|(k, v)| if top.contains(&k) { Complex64::new(0.0, 0.0) } else { v })
            .collect();
        let lhs = weighted(&w, &f, &apply(&s.phi(x), &g));
        let rhs = weighted(&w, &apply(&s.psi(x), &f), &g);
        prop_assert!((lhs - rhs).norm() < 1e-10, "{lhs} vs {rhs}");
    }

    #[test]
    fn v_preserves_the_inner_product(y in point(), z in 0usize..24, f in vector(105)) {
        let s = space();
        let g = SymmetryGroup::new();
        let v = s.rep_v(y, &g.elements()[z]).unwrap();
        let w = s.weights();
        let vf = apply(&v, &f);
        prop_assert!((weighted(&w, &vf, &vf) - weighted(&w, &f, &f)).norm() < 1e-10);
        prop_assert!(is_block_diagonal(&s, &v));
    }
}

fn poincare(g: &SymmetryGroup, k: usize) -> PoincareElement {
    PoincareElement {
        translation: LatticeVec4::from_coords([(k % 3) as i64, 1, -(k as i64 % 2), 0]),
        rotation: g.elements()[(5 * k + 1) % 24],
    }
}

fn product_residual(space: &FockSpace, g: &SymmetryGroup, spin: Spin, factor: SpinFactor) -> f64 {
    let mut worst: f64 = 0.0;
    for k in 0..24 {
        let a = poincare(g, k);
        let b = poincare(g, k + 7);
        let ab = poincare_product(g, &a, &b).unwrap();
        let va = spin_rep(space, g, a.translation, &a.rotation, spin, factor).unwrap();
        let vb = spin_rep(space, g, b.translation, &b.rotation, spin, factor).unwrap();
        let vab = spin_rep(space, g, ab.translation, &ab.rotation, spin, factor).unwrap();
        let plus = max_abs(&(&va * &vb - &vab));
        let minus = max_abs(&(&va * &vb + &vab));
        worst = worst.max(if spin == Spin::Half {
            plus.min(minus)
        } else {
            plus
        });
    }
    worst
}

#[test]
fn direct_spin_factor_is_a_representation() {
    let s = FockSpace::new(hyperboloid(1, 2).unwrap(), 1);
    let g = SymmetryGroup::new();
    for spin in [Spin::Zero, Spin::Half, Spin::One] {
        let r = product_residual(&s, &g, spin, SpinFactor::Direct);
        assert!(r < 1e-10, "{spin:?}: {r}");
    }
}

#[test]
fn inverse_spin_factor_breaks_the_product_law() {
    let s = FockSpace::new(hyperboloid(1, 2).unwrap(), 1);
    let g = SymmetryGroup::new();
    assert!(product_residual(&s, &g, Spin::One, SpinFactor::Inverse) > 1e-3);
    assert!(product_residual(&s, &g, Spin::Zero, SpinFactor::Inverse) < 1e-10);
}

#[test]
fn sector_dimensions_are_multiset_counts() {
    // C(d + n − 1, n) with d = 13.
    let s = space();
    assert_eq!(s.sector_range(0).len(), 1);
    assert_eq!(s.sector_range(1).len(), 13);
    assert_eq!(s.sector_range(2).len(), 91);
}
