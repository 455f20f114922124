//! The 24-element symmetry group of the tetrahedral lattice.
//!
//! Elements are derived from their definition (the linear maps sending the
//! basic triple `(e, f, g)` to a triple) and are identified by matrix
//! equality. Letter labels are attached afterwards by matching the reference
//! matrix list; any element whose reference matrix does not match is labelled
//! by consistency with the reference multiplication table.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{triples, LatticeVec3, LatticeVec4};
use crate::reference::{self, LABELS};

pub type IntMat3 = [[i64; 3]; 3];
pub type IntMat4 = [[i64; 4]; 4];

pub const IDENTITY3: IntMat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

pub fn mat3_mul(a: &IntMat3, b: &IntMat3) -> IntMat3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn det3(m: &IntMat3) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn apply3(m: &IntMat3, v: LatticeVec3) -> LatticeVec3 {
    let c = v.coords();
    let r: Vec<i64> = (0..3)
        .map(|i| (0..3).map(|k| m[i][k] * c[k]).sum())
        .collect();
    LatticeVec3::new(r[0], r[1], r[2])
}

/// Doubled Gram matrix of `{e, f, g}`.
pub const GRAM3X2: IntMat3 = [[2, 1, 1], [1, 2, 1], [1, 1, 2]];

/// True when `Mᵀ G M = G` for the doubled Gram matrix `G`.
pub fn is_isometry3(m: &IntMat3) -> bool {
    let basis = [LatticeVec3::E, LatticeVec3::F, LatticeVec3::G];
    basis.iter().enumerate().all(|(i, &u)| {
        basis
            .iter()
            .enumerate()
            .all(|(j, &v)| apply3(m, u).inner2(apply3(m, v)) == GRAM3X2[i][j])
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupElement {
    pub label: char,
    /// Row-major; column `j` is the image of the `j`-th basis vector.
    pub matrix: IntMat3,
}

impl GroupElement {
    pub fn apply(&self, v: LatticeVec3) -> LatticeVec3 {
        apply3(&self.matrix, v)
    }

    /// Action of `1 ⊕ Z` on spacetime.
    pub fn apply4(&self, v: LatticeVec4) -> LatticeVec4 {
        LatticeVec4::new(v.t, self.apply(v.space))
    }

    pub fn det(&self) -> i64 {
        det3(&self.matrix)
    }

    /// Block matrix `1 ⊕ Z` in the `{d, e, f, g}` basis.
    pub fn lift_to4(&self) -> IntMat4 {
        let mut out = [[0; 4]; 4];
        out[0][0] = 1;
        for i in 0..3 {
            for j in 0..3 {
                out[i + 1][j + 1] = self.matrix[i][j];
            }
        }
        out
    }
}

pub fn apply4(m: &IntMat4, v: LatticeVec4) -> LatticeVec4 {
    let c = v.coords();
    let mut r = [0; 4];
    for (i, ri) in r.iter_mut().enumerate() {
        *ri = (0..4).map(|k| m[i][k] * c[k]).sum();
    }
    LatticeVec4::from_coords(r)
}

/// A reference matrix that does not match the derived element carrying its label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixDiscrepancy {
    pub label: char,
    pub reference: IntMat3,
    pub derived: IntMat3,
    pub reference_det: i64,
    pub reference_is_isometry: bool,
}

#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    elements: Vec<GroupElement>,
    index: HashMap<IntMat3, usize>,
    products: Vec<[usize; 24]>,
    discrepancies: Vec<MatrixDiscrepancy>,
}

impl SymmetryGroup {
    pub fn new() -> Self {
        let derived: Vec<IntMat3> = triples()
            .iter()
            .map(|t| {
                let [a, b, c] = t.0.map(LatticeVec3::coords);
                [[a[0], b[0], c[0]], [a[1], b[1], c[1]], [a[2], b[2], c[2]]]
            })
            .collect();
        debug_assert!(derived.iter().all(|m| det3(m) == 1 && is_isometry3(m)));

        let printed = reference::group_matrices();
        let mut labels: Vec<Option<char>> = derived
            .iter()
            .map(|m| printed.iter().find(|(_, p)| p == m).map(|(l, _)| *l))
            .collect();
        let free_labels: Vec<char> = LABELS
            .iter()
            .copied()
            .filter(|l| !labels.contains(&Some(*l)))
            .collect();
        let free_slots: Vec<usize> = (0..24).filter(|&i| labels[i].is_none()).collect();
        if !free_slots.is_empty() {
            let best = best_assignment(&derived, &labels, &free_slots, &free_labels);
            for (slot, label) in free_slots.iter().zip(best) {
                labels[*slot] = Some(label);
            }
        }

        let mut elements: Vec<GroupElement> = derived
            .iter()
            .zip(&labels)
            .map(|(m, l)| GroupElement {
                label: l.expect("every element labelled"),
                matrix: *m,
            })
            .collect();
        elements.sort_by_key(|e| reference::label_index(e.label));

        let discrepancies = printed
            .iter()
            .filter_map(|(label, p)| {
                let el = elements.iter().find(|e| e.label == *label)?;
                (el.matrix != *p).then(|| MatrixDiscrepancy {
                    label: *label,
                    reference: *p,
                    derived: el.matrix,
                    reference_det: det3(p),
                    reference_is_isometry: is_isometry3(p),
                })
            })
            .collect();

        let index: HashMap<IntMat3, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.matrix, i))
            .collect();
        let products = elements
            .iter()
            .map(|y| {
                let mut row = [0usize; 24];
                for (j, z) in elements.iter().enumerate() {
                    row[j] = index[&mat3_mul(&y.matrix, &z.matrix)];
                }
                row
            })
            .collect();
        Self {
            elements,
            index,
            products,
            discrepancies,
        }
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.index[&IDENTITY3]
    }

    pub fn index_of(&self, label: char) -> Option<usize> {
        self.elements.iter().position(|e| e.label == label)
    }

    pub fn by_label(&self, label: char) -> &GroupElement {
        let i = self
            .index_of(label)
            .unwrap_or_else(|| panic!("no element labelled {label}"));
        &self.elements[i]
    }

    pub fn index_of_matrix(&self, m: &IntMat3) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Reference matrices that disagree with the derived element of the same label.
    pub fn matrix_discrepancies(&self) -> &[MatrixDiscrepancy] {
        &self.discrepancies
    }

    /// Matrix product `Y·Z` followed by lookup in the element set.
    pub fn multiply(&self, y: &GroupElement, z: &GroupElement) -> Result<GroupElement> {
        let m = mat3_mul(&y.matrix, &z.matrix);
        self.index_of_matrix(&m)
            .map(|i| self.elements[i])
            .ok_or(Error::ClosureViolation {
                left: y.label,
                right: z.label,
            })
    }

    pub fn product_index(&self, y: usize, z: usize) -> usize {
        self.products[y][z]
    }

    pub fn inverse_index(&self, z: usize) -> usize {
        let id = self.identity();
        (0..24)
            .find(|&y| self.products[z][y] == id)
            .expect("every element has an inverse")
    }

    pub fn inverse(&self, z: &GroupElement) -> GroupElement {
        let i = self.index[&z.matrix];
        self.elements[self.inverse_index(i)]
    }

    pub fn build_table(&self) -> Result<GroupTable> {
        let mut labels = [['?'; 24]; 24];
        for (i, y) in self.elements.iter().enumerate() {
            for (j, z) in self.elements.iter().enumerate() {
                labels[i][j] = self.multiply(y, z)?.label;
            }
        }
        Ok(GroupTable {
            header: self.elements.iter().map(|e| e.label).collect(),
            labels,
        })
    }

    /// Checks `(XY)Z = X(YZ)` over all 24³ triples.
    pub fn is_associative(&self) -> bool {
        let p = &self.products;
        (0..24)
            .into_par_iter()
            .all(|x| (0..24).all(|y| (0..24).all(|z| p[p[x][y]][z] == p[x][p[y][z]])))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.products[a][b] == self.products[b][a]
    }

    /// Subgroup generated by the given element indices.
    pub fn generate_from(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        seen.insert(self.identity());
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.products[x][g];
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn generate_from_labels(&self, gens: &[char]) -> BTreeSet<char> {
        let idx: Vec<usize> = gens
            .iter()
            .map(|&l| self.index_of(l).expect("known label"))
            .collect();
        self.generate_from(&idx)
            .into_iter()
            .map(|i| self.elements[i].label)
            .collect()
    }

    pub fn check_subset(&self, name: &str, members: &[char]) -> SubgroupCheck {
        let idx: BTreeSet<usize> = members
            .iter()
            .map(|&l| self.index_of(l).expect("known label"))
            .collect();
        let closed = idx
            .iter()
            .all(|&a| idx.iter().all(|&b| idx.contains(&self.products[a][b])));
        let has_inverses = idx.iter().all(|&a| idx.contains(&self.inverse_index(a)));
        let non_members: Vec<(char, char, char)> = idx
            .iter()
            .flat_map(|&a| idx.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| !idx.contains(&self.products[a][b]))
            .map(|(a, b)| {
                (
                    self.elements[a].label,
                    self.elements[b].label,
                    self.elements[self.products[a][b]].label,
                )
            })
            .take(4)
            .collect();
        SubgroupCheck {
            name: name.to_string(),
            members: members.to_vec(),
            contains_identity: idx.contains(&self.identity()),
            closed,
            has_inverses,
            escaping_products: non_members,
        }
    }

    /// Checks every listed candidate subgroup, including `{I, W, J, X}`.
    pub fn verify_subgroups(&self) -> Vec<SubgroupCheck> {
        let mut candidates: Vec<(String, Vec<char>)> = [
            "IAB", "ICD", "IEF", "IGH", "IWJX", "IABUVQ", "IJ", "IK", "IL", "IT", "IU", "IV", "IM",
        ]
        .iter()
        .map(|s| (format!("{{{}}}", comma(s)), s.chars().collect()))
        .collect();
        candidates.insert(
            6,
            (
                "{A,B,...,L} with I".to_string(),
                "IABCDEFGHJKL".chars().collect(),
            ),
        );
        candidates
            .iter()
            .map(|(n, m)| self.check_subset(n, m))
            .collect()
    }

    /// Scans every ordered pair from `{M, …, X}`.
    pub fn pairwise_generators(&self) -> Vec<PairCheck> {
        let pool: Vec<usize> = (self.index_of('M').unwrap()..24).collect();
        let mut out = Vec::new();
        for &a in &pool {
            for &b in &pool {
                out.push(PairCheck {
                    left: self.elements[a].label,
                    right: self.elements[b].label,
                    commute: self.commutes(a, b),
                    generated_order: self.generate_from(&[a, b]).len(),
                });
            }
        }
        out
    }
}

impl Default for SymmetryGroup {
    fn default() -> Self {
        Self::new()
    }
}

fn comma(s: &str) -> String {
    s.chars().map(String::from).collect::<Vec<_>>().join(",")
}

/// Picks the labelling of unmatched elements that agrees best with the
/// reference table.
fn best_assignment(
    derived: &[IntMat3],
    labels: &[Option<char>],
    slots: &[usize],
    free: &[char],
) -> Vec<char> {
    assert_eq!(slots.len(), free.len());
    assert!(slots.len() <= 6, "too many unmatched reference matrices");
    let table = reference::group_table();
    let index: HashMap<IntMat3, usize> = derived.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut best: Option<(usize, Vec<char>)> = None;
    for perm in permutations(free) {
        let mut l: Vec<char> = labels.iter().map(|x| x.unwrap_or('?')).collect();
        for (s, c) in slots.iter().zip(&perm) {
            l[*s] = *c;
        }
        let score = (0..24)
            .flat_map(|i| (0..24).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let k = index[&mat3_mul(&derived[i], &derived[j])];
                let (ri, rj) = (
                    reference::label_index(l[i]).unwrap(),
                    reference::label_index(l[j]).unwrap(),
                );
                table[ri][rj] == l[k]
            })
            .count();
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, perm));
        }
    }
    best.unwrap().1
}

fn permutations(items: &[char]) -> Vec<Vec<char>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupTable {
    pub header: Vec<char>,
    pub labels: [[char; 24]; 24],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableMismatch {
    pub row: char,
    pub col: char,
    pub computed: char,
    pub reference: char,
}

impl GroupTable {
    pub fn entry(&self, row: char, col: char) -> char {
        let i = self.header.iter().position(|&c| c == row).unwrap();
        let j = self.header.iter().position(|&c| c == col).unwrap();
        self.labels[i][j]
    }

    pub fn is_latin_square(&self) -> bool {
        let full: BTreeSet<char> = self.header.iter().copied().collect();
        let rows_ok = self
            .labels
            .iter()
            .all(|r| r.iter().copied().collect::<BTreeSet<_>>() == full);
        let cols_ok =
            (0..24).all(|j| (0..24).map(|i| self.labels[i][j]).collect::<BTreeSet<_>>() == full);
        rows_ok && cols_ok
    }

    /// Row and column of the identity reproduce the header.
    pub fn identity_border_ok(&self) -> bool {
        let Some(id) = self.header.iter().position(|&c| c == 'I') else {
            return false;
        };
        (0..24)
            .all(|k| self.labels[id][k] == self.header[k] && self.labels[k][id] == self.header[k])
    }

    pub fn diff(&self, reference: &[[char; 24]; 24]) -> Vec<TableMismatch> {
        let mut out = Vec::new();
        for i in 0..24 {
            for j in 0..24 {
                let ri = reference::label_index(self.header[i]).unwrap();
                let rj = reference::label_index(self.header[j]).unwrap();
                if self.labels[i][j] != reference[ri][rj] {
                    out.push(TableMismatch {
                        row: self.header[i],
                        col: self.header[j],
                        computed: self.labels[i][j],
                        reference: reference[ri][rj],
                    });
                }
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("*");
        for c in &self.header {
            s.push(',');
            s.push(*c);
        }
        s.push('\n');
        for (i, row) in self.labels.iter().enumerate() {
            s.push(self.header[i]);
            for c in row {
                s.push(',');
                s.push(*c);
            }
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupCheck {
    pub name: String,
    pub members: Vec<char>,
    pub contains_identity: bool,
    pub closed: bool,
    pub has_inverses: bool,
    /// Up to four products `(a, b, ab)` that leave the set.
    pub escaping_products: Vec<(char, char, char)>,
}

impl SubgroupCheck {
    pub fn is_subgroup(&self) -> bool {
        self.contains_identity && self.closed && self.has_inverses
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub left: char,
    pub right: char,
    pub commute: bool,
    pub generated_order: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements_have_expected_shape() {
        let g = SymmetryGroup::new();
        assert_eq!(g.order(), 24);
        assert_eq!(g.by_label('I').matrix, IDENTITY3);
        // A(e, f, g) = (f, g, e)
        let a = g.by_label('A');
        assert_eq!(a.apply(LatticeVec3::E), LatticeVec3::F);
        assert_eq!(a.apply(LatticeVec3::F), LatticeVec3::G);
        assert_eq!(a.apply(LatticeVec3::G), LatticeVec3::E);
        assert_eq!(g.by_label('M').matrix, [[1, 1, 1], [0, -1, 0], [0, 0, -1]]);
        for e in g.elements() {
            assert_eq!(e.det(), 1);
            assert!(is_isometry3(&e.matrix));
        }
    }

    #[test]
    fn only_m_differs_from_reference_list() {
        let g = SymmetryGroup::new();
        let d = g.matrix_discrepancies();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].label, 'M');
        assert_eq!(d[0].reference, [[1, -1, 1], [0, -1, 0], [0, 0, -1]]);
        assert_eq!(d[0].reference_det, 1);
        assert!(!d[0].reference_is_isometry);
    }

    #[test]
    fn products() {
        let g = SymmetryGroup::new();
        let m = |a, b| g.multiply(g.by_label(a), g.by_label(b)).unwrap().label;
        assert_eq!(m('A', 'A'), 'B');
        assert_eq!(m('M', 'N'), 'E');
        assert_eq!(m('G', 'H'), 'I');
        assert_eq!(m('J', 'J'), 'I');
        for e in g.elements() {
            assert_eq!(m('I', e.label), e.label);
        }
    }

    #[test]
    fn closure_violation_is_reported() {
        let g = SymmetryGroup::new();
        let bogus = GroupElement {
            label: 'Z',
            matrix: [[1, -1, 1], [0, -1, 0], [0, 0, -1]],
        };
        let err = g.multiply(&bogus, g.by_label('N')).unwrap_err();
        assert!(matches!(
            err,
            Error::ClosureViolation {
                left: 'Z',
                right: 'N'
            }
        ));
    }

    #[test]
    fn generation() {
        let g = SymmetryGroup::new();
        assert_eq!(g.generate_from_labels(&['M', 'N']).len(), 24);
        assert_eq!(g.generate_from_labels(&['I']), BTreeSet::from(['I']));
        assert_eq!(
            g.generate_from_labels(&['I', 'A', 'B']),
            BTreeSet::from(['I', 'A', 'B'])
        );
    }

    #[test]
    fn listed_subsets() {
        let g = SymmetryGroup::new();
        let checks = g.verify_subgroups();
        assert_eq!(checks.len(), 14);
        for c in &checks {
            assert!(c.is_subgroup(), "{} is not a subgroup", c.name);
        }
        let a_to_l = checks.iter().find(|c| c.name.starts_with("{A,B")).unwrap();
        assert_eq!(a_to_l.members.len(), 12);
    }

    #[test]
    fn subset_failure_is_explained() {
        let g = SymmetryGroup::new();
        let c = g.check_subset("{I,A}", &['I', 'A']);
        assert!(!c.is_subgroup());
        assert!(c.escaping_products.contains(&('A', 'A', 'B')));
    }

    #[test]
    fn lift_acts_on_time_trivially() {
        let g = SymmetryGroup::new();
        assert_eq!(
            g.by_label('I').lift_to4(),
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        );
        let a4 = g.by_label('A').lift_to4();
        assert_eq!(
            apply4(&a4, LatticeVec4::new(1, LatticeVec3::E)),
            LatticeVec4::new(1, LatticeVec3::F)
        );
    }

    #[test]
    fn table_agrees_with_reference() {
        let g = SymmetryGroup::new();
        let t = g.build_table().unwrap();
        assert!(t.is_latin_square());
        assert!(t.identity_border_ok());
        assert!(g.is_associative());
        assert!(t.diff(&reference::group_table()).is_empty());
    }

    #[test]
    fn inverses() {
        let g = SymmetryGroup::new();
        for e in g.elements() {
            let inv = g.inverse(e);
            assert_eq!(g.multiply(e, &inv).unwrap().label, 'I');
        }
        assert_eq!(g.inverse(g.by_label('A')).label, 'B');
    }

    #[test]
    fn csv_shape() {
        let t = SymmetryGroup::new().build_table().unwrap();
        let csv = t.to_csv();
        assert_eq!(csv.lines().count(), 25);
        assert!(csv.starts_with("*,I,A,B"));
        assert!(csv.lines().nth(1).unwrap().starts_with("I,I,A,B"));
    }
}
