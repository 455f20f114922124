//! Reference tables shipped with the crate as versioned data files.
//!
//! These are transcriptions of published values. They are inputs to diff
//! reports only; nothing in the library derives its results from them except
//! where a function says so explicitly (label attachment, sign conventions).

use std::collections::BTreeSet;

use num_complex::Complex64;

pub const GROUP_TABLE_SRC: &str = include_str!("../data/group_table.txt");
pub const GROUP_MATRICES_SRC: &str = include_str!("../data/group_matrices.txt");
pub const SPINORS_SRC: &str = include_str!("../data/spinors.txt");
pub const SPECTRA_SRC: &str = include_str!("../data/spectra.txt");

/// Element labels in table order (identity first).
pub const LABELS: [char; 24] = [
    'I', 'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'J', 'K', 'L', 'M', 'N', 'O', 'P', 'Q', 'R', 'S',
    'T', 'U', 'V', 'W', 'X',
];

pub fn label_index(label: char) -> Option<usize> {
    LABELS.iter().position(|&l| l == label)
}

fn data_lines(src: &str) -> impl Iterator<Item = &str> {
    src.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_label(tok: &str) -> char {
    let mut chars = tok.chars();
    let c = chars.next().expect("empty label");
    assert!(chars.next().is_none(), "bad label {tok:?}");
    c
}

/// The transcribed group table, indexed `[row][col]` in [`LABELS`] order.
pub fn group_table() -> [[char; 24]; 24] {
    let mut lines = data_lines(GROUP_TABLE_SRC);
    let header: Vec<char> = lines
        .next()
        .expect("missing header")
        .split_whitespace()
        .map(parse_label)
        .collect();
    assert_eq!(header, LABELS, "table header out of order");
    let mut out = [['?'; 24]; 24];
    for (i, line) in lines.enumerate() {
        let toks: Vec<char> = line.split_whitespace().map(parse_label).collect();
        assert_eq!(toks.len(), 25, "row {i} has {} entries", toks.len());
        assert_eq!(toks[0], LABELS[i]);
        out[i].copy_from_slice(&toks[1..]);
    }
    out
}

/// The transcribed symmetry matrices (row-major, `{e,f,g}` basis).
pub fn group_matrices() -> Vec<(char, [[i64; 3]; 3])> {
    data_lines(GROUP_MATRICES_SRC)
        .map(|line| {
            let mut toks = line.split_whitespace();
            let label = parse_label(toks.next().unwrap());
            let v: Vec<i64> = toks.map(|t| t.parse().unwrap()).collect();
            assert_eq!(v.len(), 9);
            let m = [[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]];
            (label, m)
        })
        .collect()
}

fn parse_phase_token(tok: &str) -> Complex64 {
    if tok == "0" {
        return Complex64::new(0.0, 0.0);
    }
    let (sign, rest) = match tok.strip_prefix('-') {
        Some(r) => (-1.0, r),
        None => (1.0, tok.trim_start_matches('+')),
    };
    let (mag, k) = rest.split_once('@').expect("token needs @");
    let mag = match mag {
        "1" => 1.0,
        "r2" => 2f64.sqrt(),
        "r3inv" => 1.0 / 3f64.sqrt(),
        other => panic!("unknown magnitude {other}"),
    };
    let k: f64 = k.parse().unwrap();
    Complex64::from_polar(sign * mag, std::f64::consts::PI * k / 6.0)
}

/// The transcribed 2×2 spinor matrices, row-major.
pub fn spinors() -> Vec<(char, [[Complex64; 2]; 2])> {
    data_lines(SPINORS_SRC)
        .map(|line| {
            let toks: Vec<&str> = line.split_whitespace().collect();
            assert_eq!(toks.len(), 6, "bad spinor line {line:?}");
            let label = parse_label(toks[0]);
            let pre = parse_phase_token(toks[1]);
            let e: Vec<Complex64> = toks[2..]
                .iter()
                .map(|t| pre * parse_phase_token(t))
                .collect();
            (label, [[e[0], e[1]], [e[2], e[3]]])
        })
        .collect()
}

fn parse_int_set(s: &str) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for tok in s.split_whitespace() {
        match tok.split_once("..") {
            Some((a, b)) => out.extend(a.parse::<i64>().unwrap()..=b.parse::<i64>().unwrap()),
            None => {
                out.insert(tok.parse().unwrap());
            }
        }
    }
    out
}

fn spectrum(kind: &str, key: i64) -> Option<BTreeSet<i64>> {
    data_lines(SPECTRA_SRC).find_map(|line| {
        let (head, body) = line.split_once(':')?;
        let mut h = head.split_whitespace();
        (h.next()? == kind && h.next()?.parse::<i64>().ok()? == key).then(|| parse_int_set(body))
    })
}

/// Published attainable `Q` values behind the average speeds `√Q / t`.
pub fn speed_norms(t: i64) -> Option<BTreeSet<i64>> {
    spectrum("speeds", t)
}

/// Published list of spatial squared norms up to `limit` (only 49 is available).
pub fn spatial_norms(limit: i64) -> Option<BTreeSet<i64>> {
    spectrum("norms", limit)
}

/// Published mass-squared row for energy `p0` (rows 0..=7).
pub fn mass_row(p0: i64) -> Option<BTreeSet<i64>> {
    spectrum("masses", p0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn files_parse() {
        let t = group_table();
        assert_eq!(t[0], LABELS);
        assert_eq!(group_matrices().len(), 24);
        assert_eq!(spinors().len(), 24);
        assert_eq!(speed_norms(2).unwrap(), (0..=4).collect());
        assert_eq!(mass_row(4).unwrap().len(), 15);
        assert!(spatial_norms(49).unwrap().contains(&43));
        assert!(mass_row(8).is_none());
    }

    #[test]
    fn phase_tokens() {
        let z = parse_phase_token("-r2@3");
        assert!((z - Complex64::new(0.0, -2f64.sqrt())).norm() < 1e-15);
        assert_eq!(parse_phase_token("0"), Complex64::new(0.0, 0.0));
    }
}
