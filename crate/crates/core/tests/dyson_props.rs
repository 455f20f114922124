use num_complex::Complex64;
use proptest::prelude::*;

use causet_qft::fock::{max_abs, CMatrix};
use causet_qft::scattering::{
    difference_op, expansion_formula, hermiticity_residual, product_formula, scattering_operator,
    InteractionConfig, Model,
};

fn matrices(d: usize, n: usize) -> impl Strategy<Value = Vec<CMatrix>> {
    proptest::collection::vec(
        proptest::collection::vec((-0.5f64..0.5, -0.5f64..0.5), d * d),
        n + 1,
    )
    .prop_map(move |ms| {
        ms.into_iter()
            .map(|v| CMatrix::from_iterator(d, d, v.into_iter().map(|(a, b)| Complex64::new(a, b))))
            .collect()
    })
}

fn sequence() -> impl Strategy<Value = Vec<CMatrix>> {
    (1usize..=8, 0usize..=6).prop_flat_map(|(d, n)| matrices(d, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_equals_expansion(ms in sequence()) {
        let (x0, a) = ms.split_last().unwrap();
        let n = a.len();
        let p = product_formula(a, x0, n).unwrap();
        let e = expansion_formula(a, x0, n).unwrap();
        prop_assert!(max_abs(&(p - e)) < 1e-9);
    }

    #[test]
    fn differences_follow_the_recursion(ms in sequence()) {
        let (x0, a) = ms.split_last().unwrap();
        prop_assume!(!a.is_empty());
        let xs: Vec<CMatrix> = (0..=a.len()).map(|k| product_formula(a, x0, k).unwrap()).collect();
        let diffs = difference_op(&xs).unwrap();
        for (k, d) in diffs.iter().enumerate() {
            prop_assert!(max_abs(&(d - &a[k] * &xs[k])) < 1e-12);
        }
    }
}

fn small_config(g: f64) -> InteractionConfig {
    InteractionConfig {
        g,
        pi_mass_sq: 0,
        sigma_mass_sq: 1,
        energy_cap: 1,
        pi_max_n: 2,
        sigma_max_n: 1,
        window: 0,
        horizon: 3,
    }
}

#[test]
fn zero_coupling_is_free() {
    let model = Model::new(small_config(0.0)).unwrap();
    let s = scattering_operator(&model).unwrap();
    assert_eq!(
        s.final_operator(),
        &CMatrix::identity(model.dim(), model.dim())
    );
}

#[test]
fn hamiltonians_are_hermitian_and_orders_resum() {
    let model = Model::new(small_config(0.1)).unwrap();
    let s = scattering_operator(&model).unwrap();
    for h in &s.hamiltonians {
        assert!(hermiticity_residual(h) < 1e-12);
    }
    assert!(s.order_sum_residual < 1e-9);
    println!("unitarity defect of S(3): {:.3e}", s.unitarity_defect());
}

#[test]
fn wider_window_adds_points() {
    let c = InteractionConfig {
        window: 1,
        ..small_config(0.1)
    };
    assert_eq!(c.window_slice(0).len(), 1);
    assert_eq!(c.window_slice(2).len(), 13);
    assert!(Model::new(InteractionConfig { pi_max_n: 1, ..c }).is_err());
}
