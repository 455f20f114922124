use num_complex::Complex64;
use proptest::prelude::*;

use causet_qft::reps::{
    cal_u, eigensystem, generator_log, max_abs, spinor_of, CMat2, CMat3, SignConvention,
};
use causet_qft::{GroupElement, SymmetryGroup};

proptest! {
    #[test]
    fn u_is_a_unitary_homomorphism(a in 0usize..24, b in 0usize..24) {
        let g = SymmetryGroup::new();
        let (y, z) = (&g.elements()[a], &g.elements()[b]);
        let u = cal_u(y).matrix;
        prop_assert!(max_abs(&(u.adjoint() * u - CMat3::identity())) < 1e-12);
        let yz = g.multiply(y, z).unwrap();
        prop_assert!(max_abs(&(u * cal_u(z).matrix - cal_u(&yz).matrix)) < 1e-12);
    }

    #[test]
    fn spinors_are_projective(a in 0usize..24, b in 0usize..24, reference in any::<bool>()) {
        let conv = if reference { SignConvention::Reference } else { SignConvention::FirstPositive };
        let g = SymmetryGroup::new();
        let (y, z) = (&g.elements()[a], &g.elements()[b]);
        let r = |e: &GroupElement| spinor_of(e, conv).unwrap().matrix();
        let prod = r(y) * r(z);
        let yz = r(&g.multiply(y, z).unwrap());
        let plus = max_abs(&(prod - yz));
        let minus = max_abs(&(prod + yz));
        prop_assert!(plus.min(minus) < 1e-10);
        prop_assert!(max_abs(&(r(y).adjoint() * r(y) - CMat2::identity())) < 1e-12);
        prop_assert!((r(y).determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn eigenvectors_of_a_transport_under_conjugation() {
    let g = SymmetryGroup::new();
    let a = g.by_label('A');
    let es = eigensystem(a);
    for z in g.elements() {
        let conj = g
            .multiply(&g.multiply(z, a).unwrap(), &g.inverse(z))
            .unwrap();
        let uc = cal_u(&conj).matrix;
        let uz = cal_u(z).matrix;
        for k in 0..3 {
            let v = uz * es.vectors.column(k);
            let r = uc * v - v * es.values[k];
            assert!(max_abs(&r) < 1e-10, "{}: {}", z.label, max_abs(&r));
        }
    }
}

#[test]
fn eigenvalues_are_roots_of_unity_of_the_element_order() {
    let g = SymmetryGroup::new();
    for z in g.elements() {
        let order = (1..=6)
            .find(|&k| {
                let mut m = z.matrix;
                for _ in 1..k {
                    m = causet_qft::group::mat3_mul(&m, &z.matrix);
                }
                m == causet_qft::group::IDENTITY3
            })
            .unwrap();
        for l in eigensystem(z).values {
            assert!((l.powi(order) - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        }
    }
}

#[test]
fn generator_exponentiates_back() {
    let g = SymmetryGroup::new();
    let i = Complex64::new(0.0, 1.0);
    for z in g.elements() {
        let a = generator_log(z);
        assert!(
            max_abs(&(a - a.adjoint())) < 1e-10,
            "{} generator not self-adjoint",
            z.label
        );
        let back = (a * i).exp();
        assert!(max_abs(&(back - cal_u(z).matrix)) < 1e-9, "{}", z.label);
    }
}
