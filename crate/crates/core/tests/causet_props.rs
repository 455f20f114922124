use std::collections::BTreeSet;

use proptest::prelude::*;

use causet_qft::causet::{children, in_cone, parents, precedes, shell, History};
use causet_qft::lattice::{LatticeVec3, LatticeVec4};
use causet_qft::SymmetryGroup;

fn q(n: i64, p: i64, r: i64) -> i64 {
    n * n + p * p + r * r + n * p + n * r + p * r
}

fn point() -> impl Strategy<Value = LatticeVec4> {
    (0i64..=6, -4i64..=4, -4i64..=4, -4i64..=4)
        .prop_map(|(t, n, p, r)| LatticeVec4::from_coords([t, n, p, r]))
}

proptest! {
    #[test]
    fn order_is_transitive(u in point(), v in point(), w in point()) {
        if precedes(u, v) && precedes(v, w) {
            prop_assert!(precedes(u, w));
        }
        prop_assert!(!(precedes(u, v) && precedes(v, u)));
    }

    #[test]
    fn children_are_covered_and_invertible(u in point()) {
        prop_assume!(in_cone(u));
        for c in children(u) {
            prop_assert!(precedes(u, c));
            prop_assert!(in_cone(c));
            prop_assert!(parents(c).contains(&u));
        }
    }

    #[test]
    fn children_commute_with_rotations(u in point(), z in 0usize..24) {
        let g = SymmetryGroup::new();
        let z = &g.elements()[z];
        let a: BTreeSet<_> = children(z.apply4(u)).into_iter().collect();
        let b: BTreeSet<_> = children(u).into_iter().map(|c| z.apply4(c)).collect();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn shell_sizes_match_brute_force() {
    for t in 0..=5i64 {
        let r = 2 * t + 1;
        let mut count = 0;
        for n in -r..=r {
            for p in -r..=r {
                for s in -r..=r {
                    if q(n, p, s) <= t * t {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(shell(t).unwrap().len(), count, "t = {t}");
    }
}

#[test]
fn shell_sizes_nondecreasing() {
    let sizes: Vec<usize> = (0..=8).map(|t| shell(t).unwrap().len()).collect();
    assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
}

#[test]
fn shells_are_rotation_invariant() {
    let g = SymmetryGroup::new();
    for t in 0..=4 {
        let s: BTreeSet<_> = shell(t).unwrap().into_iter().collect();
        for z in g.elements() {
            let image: BTreeSet<_> = s.iter().map(|v| z.apply4(*v)).collect();
            assert_eq!(image, s);
        }
    }
}

#[test]
fn partial_order_on_history() {
    let h = History::new(3).unwrap();
    let vs: Vec<_> = h.vertices().collect();
    assert_eq!(vs.len(), 246);
    for &u in &vs {
        assert!(!precedes(u, u));
        for &v in &vs {
            if precedes(u, v) {
                assert!(!precedes(v, u));
                for &w in &vs {
                    if precedes(v, w) {
                        assert!(precedes(u, w));
                    }
                }
            }
        }
    }
}

#[test]
fn cone_membership() {
    assert!(in_cone(LatticeVec4::new(2, LatticeVec3::new(1, 1, 0))));
    assert!(!in_cone(LatticeVec4::new(1, LatticeVec3::new(1, 1, 0))));
    assert!(!in_cone(LatticeVec4::new(-1, LatticeVec3::ZERO)));
}
