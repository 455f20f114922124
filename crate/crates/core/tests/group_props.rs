use std::collections::BTreeSet;

use proptest::prelude::*;

use causet_qft::group::{det3, is_isometry3};
use causet_qft::lattice::{triples, LatticeVec3, LatticeVec4, Triple};
use causet_qft::SymmetryGroup;

fn vec3() -> impl Strategy<Value = LatticeVec3> {
    (-20i64..=20, -20i64..=20, -20i64..=20).prop_map(|(n, p, q)| LatticeVec3::new(n, p, q))
}

fn vec4() -> impl Strategy<Value = LatticeVec4> {
    (-20i64..=20, vec3()).prop_map(|(t, s)| LatticeVec4::new(t, s))
}

// Independent of the library's form.
fn q(v: LatticeVec3) -> i64 {
    let [n, p, q] = v.coords();
    n * n + p * p + q * q + n * p + n * q + p * q
}

proptest! {
    #[test]
    fn products_are_isometries(a in 0usize..24, b in 0usize..24) {
        let g = SymmetryGroup::new();
        let els = g.elements();
        let ab = g.multiply(&els[a], &els[b]).unwrap();
        prop_assert!(is_isometry3(&ab.matrix));
        prop_assert_eq!(det3(&ab.matrix), 1);
    }

    #[test]
    fn inner_products_preserved(z in 0usize..24, u in vec3(), v in vec3()) {
        let g = SymmetryGroup::new();
        let z = &g.elements()[z];
        prop_assert_eq!(z.apply(u).inner2(z.apply(v)), u.inner2(v));
        prop_assert_eq!(q(z.apply(u)), q(u));
    }

    #[test]
    fn inverse_undoes(z in 0usize..24, u in vec3()) {
        let g = SymmetryGroup::new();
        let z = &g.elements()[z];
        prop_assert_eq!(g.inverse(z).apply(z.apply(u)), u);
    }

    #[test]
    fn generated_subgroups_divide_order(gens in proptest::collection::vec(0usize..24, 1..4)) {
        let g = SymmetryGroup::new();
        let h = g.generate_from(&gens);
        prop_assert_eq!(24 % h.len(), 0);
        for &a in &h {
            for &b in &h {
                prop_assert!(h.contains(&g.product_index(a, b)));
            }
        }
        prop_assert!(gens.iter().all(|x| h.contains(x)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn lifted_symmetries_preserve_norm4(z in 0usize..24, v in vec4()) {
        let g = SymmetryGroup::new();
        let z = &g.elements()[z];
        let w = z.apply4(v);
        prop_assert_eq!(w.t, v.t);
        prop_assert_eq!(w.t * w.t - q(w.space), v.t * v.t - q(v.space));
    }
}

#[test]
fn symmetries_permute_triples() {
    let g = SymmetryGroup::new();
    let all: BTreeSet<Triple> = triples().into_iter().collect();
    assert_eq!(all.len(), 24);
    for z in g.elements() {
        let image: BTreeSet<Triple> = all
            .iter()
            .map(|t| Triple(t.0.map(|v| z.apply(v))))
            .collect();
        assert_eq!(image, all, "{} does not permute triples", z.label);
    }
}

#[test]
fn basic_triple_determines_the_element() {
    let g = SymmetryGroup::new();
    let images: BTreeSet<Triple> = g
        .elements()
        .iter()
        .map(|z| Triple(Triple::BASIC.0.map(|v| z.apply(v))))
        .collect();
    assert_eq!(images.len(), 24);
}

#[test]
fn all_isometries_of_the_lattice_are_found() {
    // Brute force over small integer matrices: every det-1 isometry is an element.
    let g = SymmetryGroup::new();
    let r = -1i64..=1;
    let mut found = 0;
    let cols: Vec<[i64; 3]> = r
        .clone()
        .flat_map(|a| {
            r.clone()
                .flat_map(move |b| (-1i64..=1).map(move |c| [a, b, c]))
        })
        .filter(|c| q(LatticeVec3::from_coords(*c)) == 1)
        .collect();
    for a in &cols {
        for b in &cols {
            for c in &cols {
                let m = [[a[0], b[0], c[0]], [a[1], b[1], c[1]], [a[2], b[2], c[2]]];
                if is_isometry3(&m) && det3(&m) == 1 {
                    found += 1;
                    assert!(g.index_of_matrix(&m).is_some());
                }
            }
        }
    }
    assert_eq!(found, 24);
}
