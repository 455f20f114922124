//! One builder per subcommand.

use std::collections::BTreeMap;

use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use causet_qft::causet::{
    self, average_speeds, children, construction_gaps, covariance_diagnostics, parent_histogram,
    path_lengths, precedes, History,
};
use causet_qft::fock::{self, fock_checks, rep_v_check, FockSpace};
use causet_qft::group::{det3, is_isometry3};
use causet_qft::lattice::{LatticeVec3, LatticeVec4};
use causet_qft::momentum::{
    hyperboloid as truncated_hyperboloid, mass_squared_values, mass_table_csv, mass_table_diffs,
    spatial_norm_diff, PoincareElement,
};
use causet_qft::noboost::{no_boost_search, space_images, time_images};
use causet_qft::reference;
use causet_qft::reps::{
    all_spinors, cal_u, eigensystem, export, in_allowed_set, projective_check, spinor_diffs,
    SignConvention,
};
use causet_qft::scattering::{
    amplitude, hermiticity_residual, order_parity_check, scattering_operator, InteractionConfig,
    Model,
};
use causet_qft::SymmetryGroup;

use crate::report::{sci, ReportBundle};

const PATH_SAMPLE_LIMIT: usize = 100_000;

fn labels(chars: &[char]) -> String {
    chars
        .iter()
        .map(char::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn group_table(cmd: Vec<String>, check: bool) -> Result<ReportBundle> {
    let g = SymmetryGroup::new();
    let table = g.build_table()?;
    let mut b = ReportBundle::new(cmd, json!({ "check": check }));

    let rows: Vec<String> = table.labels.iter().map(|r| r.iter().collect()).collect();
    b.payload(json!({ "header": table.header, "rows": rows }));
    b.csv = Some(table.to_csv());

    let header: Vec<String> = table.header.iter().map(char::to_string).collect();
    b.line(format!("    {}", header.join(" ")));
    for (label, row) in table.header.iter().zip(&table.labels) {
        let cells: Vec<String> = row.iter().map(char::to_string).collect();
        b.line(format!("{label} | {}", cells.join(" ")));
    }

    b.check(
        "latin_square",
        table.is_latin_square(),
        "each row and column is a permutation",
    );
    b.check(
        "identity_border",
        table.identity_border_ok(),
        "row and column I reproduce the header",
    );
    b.check("associative", g.is_associative(), "all 24^3 triples");
    if check {
        let diff = table.diff(&reference::group_table());
        b.check(
            "matches_reference_table",
            diff.is_empty(),
            format!("{} of 576 entries differ", diff.len()),
        );
        b.line(format!("\ndiff: {} lines", diff.len()));
        for m in &diff {
            b.line(format!(
                "  {}{}: computed {} reference {}",
                m.row, m.col, m.computed, m.reference
            ));
        }
        b.diff(json!({ "table_mismatches": diff }));
    }
    Ok(b)
}

pub fn group_verify(cmd: Vec<String>) -> Result<ReportBundle> {
    let g = SymmetryGroup::new();
    let mut b = ReportBundle::new(cmd, json!({}));
    let els = g.elements();

    b.check("order", g.order() == 24, format!("{} elements", g.order()));
    b.check(
        "determinant_one",
        els.iter().all(|z| det3(&z.matrix) == 1),
        "det Z = 1",
    );
    b.check(
        "isometry",
        els.iter().all(|z| is_isometry3(&z.matrix)),
        "doubled Gram form preserved",
    );
    let closed = g.build_table();
    b.check("closure", closed.is_ok(), "every product is an element");
    b.check("associative", g.is_associative(), "all 24^3 triples");
    let inverses = (0..g.order()).all(|i| g.product_index(i, g.inverse_index(i)) == g.identity());
    b.check("inverses", inverses, "Z Z^-1 = I");

    let subgroups = g.verify_subgroups();
    b.line("subgroups:");
    for s in &subgroups {
        b.line(format!(
            "  {:<28} order {:>2}  closed {}  inverses {}",
            s.name,
            s.members.len(),
            s.closed,
            s.has_inverses
        ));
        b.check(
            &format!("subgroup {}", s.name),
            s.is_subgroup(),
            format!("order {}", s.members.len()),
        );
    }

    let mn = g.generate_from_labels(&['M', 'N']);
    b.check(
        "generators_M_N",
        mn.len() == 24,
        format!("<M,N> has order {}", mn.len()),
    );

    let pairs = g.pairwise_generators();
    let failures: Vec<_> = pairs
        .iter()
        .filter(|p| p.left < p.right && !p.commute && p.generated_order != 24)
        .collect();
    let noncommuting = pairs
        .iter()
        .filter(|p| p.left < p.right && !p.commute)
        .count();
    let sample: Vec<String> = failures
        .iter()
        .take(6)
        .map(|p| format!("<{},{}>={}", p.left, p.right, p.generated_order))
        .collect();
    b.check(
        "pairwise_noncommuting_generate",
        failures.is_empty(),
        format!(
            "{} of {} non-commuting pairs generate a proper subgroup {}",
            failures.len(),
            noncommuting,
            sample.join(" ")
        ),
    );
    b.line(format!(
        "\n<M,N> order {}; non-commuting pairs from M..X: {}, proper: {}",
        mn.len(),
        noncommuting,
        failures.len()
    ));

    b.payload(json!({
        "elements": els,
        "subgroups": subgroups,
        "pairs": pairs,
    }));
    b.diff(json!({
        "matrix_discrepancies": g.matrix_discrepancies(),
        "proper_pairs": failures,
    }));
    Ok(b)
}

pub fn reps_verify(cmd: Vec<String>, convention: SignConvention, tol: f64) -> Result<ReportBundle> {
    let g = SymmetryGroup::new();
    let mut b = ReportBundle::new(cmd, json!({ "convention": convention, "tol": tol }));

    let unit = g
        .elements()
        .iter()
        .map(|z| cal_u(z).unitarity_residual())
        .fold(0.0, f64::max);
    b.check(
        "unitarity",
        unit < tol,
        format!("max residual {}", sci(unit)),
    );

    let proj = projective_check(&g, convention)?;
    b.check(
        "homomorphism_U",
        proj.homomorphism_u_residual < tol,
        format!("max residual {}", sci(proj.homomorphism_u_residual)),
    );

    let off: Vec<char> = g
        .elements()
        .iter()
        .filter(|z| {
            !eigensystem(z)
                .values
                .iter()
                .all(|v| in_allowed_set(*v, tol))
        })
        .map(|z| z.label)
        .collect();
    b.check(
        "eigenvalue_set",
        off.is_empty(),
        format!("outside {{±1, ±i, e^(±2πi/3)}}: [{}]", labels(&off)),
    );

    all_spinors(&g, convention)?;
    b.check("spinors_solved", true, "all 24 spinor systems consistent");
    b.check(
        "projective_signs",
        proj.all_signed(tol),
        format!("R(Y)R(Z) = ±R(YZ) within {}", sci(proj.max_residual)),
    );
    let gh = proj.sign('G', 'H');
    b.check("sign_GH", gh == -1, format!("R(G)R(H) = {gh}·I"));
    let jj = proj.sign('J', 'J');
    b.check("sign_JJ", jj == -1, format!("R(J)² = {jj}·I"));

    let diffs = spinor_diffs(&g, tol.max(1e-9));
    let bad: Vec<char> = diffs
        .iter()
        .filter(|d| !d.matches)
        .map(|d| d.label)
        .collect();
    b.check(
        "printed_spinors",
        bad.is_empty(),
        format!(
            "{} of 24 differ from the tabulated matrices: [{}]",
            bad.len(),
            labels(&bad)
        ),
    );

    b.line(format!("sign convention: {convention:?}"));
    b.line("projective signs (row Y, column Z):");
    b.line(format!(
        "    {}",
        proj.labels
            .iter()
            .map(char::to_string)
            .collect::<Vec<_>>()
            .join("  ")
    ));
    for (y, row) in proj.labels.iter().zip(&proj.signs) {
        let cells: Vec<String> = row
            .iter()
            .map(|s| {
                if *s > 0 {
                    " +".into()
                } else {
                    " -".to_string()
                }
            })
            .collect();
        b.line(format!("{y} |{}", cells.join(" ")));
    }

    b.payload(json!({
        "representations": export(&g, convention)?,
        "projective": proj,
    }));
    b.diff(json!({ "spinors": diffs.into_iter().filter(|d| !d.matches).collect::<Vec<_>>() }));
    Ok(b)
}

pub fn no_boost(cmd: Vec<String>, bound: i64) -> Result<ReportBundle> {
    let mut b = ReportBundle::new(cmd, json!({ "bound": bound }));
    let cert = no_boost_search(bound)?;
    let ts = time_images(bound);
    let ss = space_images(bound);

    b.check(
        "no_boosts",
        cert.no_boosts(),
        format!(
            "{} boosts among {} symmetries",
            cert.boosts, cert.symmetries
        ),
    );
    b.check(
        "rotations_fixing_d",
        cert.symmetries - cert.boosts - cert.time_reversing == 24,
        format!(
            "{} symmetries fix d",
            cert.symmetries - cert.boosts - cert.time_reversing
        ),
    );
    let listed_t = [[2, 1, 1, 0], [3, 2, 2, -2]];
    let listed_s = [[1, 1, 1, -1], [2, 2, 1, -1]];
    b.check(
        "time_image_families",
        listed_t.iter().all(|c| ts.contains(c)),
        format!("{} solutions", ts.len()),
    );
    b.check(
        "space_image_families",
        listed_s.iter().all(|c| ss.contains(c)),
        format!("{} solutions", ss.len()),
    );

    b.line(format!(
        "bound {bound}: {} symmetries, {} boosts, {} with Td = -d",
        cert.symmetries, cert.boosts, cert.time_reversing
    ));
    b.line(format!("time images by t0:  {:?}", cert.time_image_counts));
    b.line(format!("space images by s0: {:?}", cert.space_image_counts));
    for w in &cert.boost_witnesses {
        b.line(format!("  boost columns Td,Te,Tf,Tg = {w:?}"));
    }
    b.payload(&cert);
    Ok(b)
}

#[derive(Serialize)]
struct ShellRow {
    t: i64,
    size: usize,
    cumulative: usize,
    parent_histogram: BTreeMap<usize, usize>,
}

pub fn shells(cmd: Vec<String>, t: i64, sizes_only: bool) -> Result<ReportBundle> {
    let mut b = ReportBundle::new(cmd, json!({ "t": t, "sizes_only": sizes_only }));
    let h = History::new(t)?;
    let mut cumulative = 0;
    let mut rows = Vec::new();
    for (s, shell) in h.shells.iter().enumerate() {
        cumulative += shell.len();
        rows.push(ShellRow {
            t: s as i64,
            size: shell.len(),
            cumulative,
            parent_histogram: parent_histogram(s as i64)?,
        });
    }

    let nondecreasing = rows.windows(2).all(|w| w[0].size <= w[1].size);
    b.check("sizes_nondecreasing", nondecreasing, "|S^t| <= |S^(t+1)|");
    let kids_ok = h
        .vertices()
        .all(|v| children(v).len() == 13 && children(v).iter().all(|c| causet::in_cone(*c)));
    b.check(
        "thirteen_children",
        kids_ok,
        "every vertex has 13 children inside the cone",
    );

    b.line(format!(
        "{:>3} {:>8} {:>10}  parents:count",
        "t", "|S^t|", "|S-bar^t|"
    ));
    let mut csv = String::from("t,size,cumulative\n");
    for r in &rows {
        let hist: Vec<String> = r
            .parent_histogram
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        b.line(format!(
            "{:>3} {:>8} {:>10}  {}",
            r.t,
            r.size,
            r.cumulative,
            hist.join(" ")
        ));
        csv.push_str(&format!("{},{},{}\n", r.t, r.size, r.cumulative));
    }
    b.csv = Some(csv);

    if sizes_only {
        b.payload(json!({ "shells": rows }));
    } else {
        b.payload(json!({ "shells": rows, "vertices": h.export() }));
    }
    Ok(b)
}

pub fn causet_verify(cmd: Vec<String>, t: i64) -> Result<ReportBundle> {
    let mut b = ReportBundle::new(cmd, json!({ "t": t }));
    let h = History::new(t)?;
    let vs: Vec<LatticeVec4> = h.vertices().collect();

    let irreflexive = vs.par_iter().all(|&u| !precedes(u, u));
    let antisymmetric = vs
        .par_iter()
        .all(|&u| vs.iter().all(|&v| !(precedes(u, v) && precedes(v, u))));
    let transitive = vs.par_iter().all(|&u| {
        let up: Vec<_> = vs.iter().copied().filter(|&v| precedes(u, v)).collect();
        up.iter()
            .all(|&v| vs.iter().all(|&w| !precedes(v, w) || precedes(u, w)))
    });
    b.check("irreflexive", irreflexive, format!("{} vertices", vs.len()));
    b.check("antisymmetric", antisymmetric, "");
    b.check("transitive", transitive, "");

    let pairs: Vec<(LatticeVec4, LatticeVec4)> = vs
        .iter()
        .flat_map(|&u| {
            vs.iter()
                .filter(move |&&v| precedes(u, v))
                .map(move |&v| (u, v))
        })
        .collect();
    let bad_paths: Vec<(LatticeVec4, LatticeVec4, Vec<i64>)> = pairs
        .par_iter()
        .filter_map(|&(u, v)| {
            let ls = path_lengths(u, v, PATH_SAMPLE_LIMIT).expect("comparable pair");
            let want = v.t - u.t;
            (ls.len() != 1 || !ls.contains(&want)).then(|| (u, v, ls.into_iter().collect()))
        })
        .collect();
    let unreachable = bad_paths.iter().filter(|p| p.2.is_empty()).count();
    b.check(
        "path_lengths_singleton",
        bad_paths.is_empty(),
        format!(
            "{} of {} comparable pairs fail ({} have no child chain)",
            bad_paths.len(),
            pairs.len(),
            unreachable
        ),
    );

    let cov = covariance_diagnostics(&h);
    b.check(
        "weakly_covariant",
        cov.weakly_covariant,
        match cov.weak_covariance_witness {
            Some((u, v, a, c)) => format!("{u} < {v} has maximal chains of lengths {a} and {c}"),
            None => format!("{} links", cov.links),
        },
    );
    b.check(
        "not_covariant",
        !cov.covariant,
        match cov.covariance_witness {
            Some((u, v)) => format!("witness {u}, {v}: lower height but not below"),
            None => "no witness".into(),
        },
    );
    b.check(
        "height_equals_time",
        cov.height_mismatches.is_empty(),
        format!("{} vertices with height != v0", cov.height_mismatches.len()),
    );
    let gaps = construction_gaps(t)?;
    let gap_count: usize = gaps.iter().map(Vec::len).sum();
    b.check(
        "child_construction_exhausts_shells",
        gap_count == 0,
        format!("{gap_count} vertices not reachable through child steps"),
    );

    b.line(format!(
        "S-bar^{t}: {} vertices, {} comparable pairs, {} links",
        vs.len(),
        pairs.len(),
        cov.links
    ));
    b.line(format!(
        "links that are not child steps: {}; child steps that are not links: {}",
        cov.links_not_child_steps.len(),
        cov.child_steps_not_links.len()
    ));

    let gaps: Vec<Vec<[i64; 4]>> = gaps
        .iter()
        .map(|s| s.iter().map(|v| v.coords()).collect())
        .collect();
    let bad_paths: Vec<_> = bad_paths
        .iter()
        .map(|(u, v, l)| json!({ "from": u.coords(), "to": v.coords(), "lengths": l }))
        .collect();
    b.payload(json!({
        "vertices": vs.len(),
        "comparable_pairs": pairs.len(),
        "covariance": cov,
        "construction_gaps": gaps,
        "path_length_failures": bad_paths,
    }));
    Ok(b)
}

pub fn speeds(cmd: Vec<String>, t: i64) -> Result<ReportBundle> {
    let mut b = ReportBundle::new(cmd, json!({ "t": t }));
    let mut reports = Vec::new();
    let mut diffs = Vec::new();
    let mut csv = String::from("t,q,speed\n");
    for s in 1..=t {
        let r = average_speeds(s)?;
        let qs: Vec<String> = r.speeds.iter().map(|v| v.q.to_string()).collect();
        b.line(format!(
            "t = {s}: sqrt(Q)/{s} for Q in {{{}}}",
            qs.join(", ")
        ));
        for v in &r.speeds {
            csv.push_str(&format!("{},{},{:.15}\n", v.t, v.q, v.value));
        }
        if r.reference.is_some() {
            let clean = r.missing_from_reference.is_empty() && r.absent_from_lattice.is_empty();
            if s <= 3 {
                b.check(&format!("speeds_t{s}_match_reference"), clean, "exact");
            }
            if !clean {
                b.line(format!(
                    "  diff: missing from reference {:?}, absent from lattice {:?}",
                    r.missing_from_reference, r.absent_from_lattice
                ));
            }
            diffs.push(json!({
                "t": s,
                "missing_from_reference": r.missing_from_reference,
                "absent_from_lattice": r.absent_from_lattice,
            }));
        }
        reports.push(r);
    }
    b.csv = Some(csv);
    b.payload(&reports);
    b.diff(&diffs);
    Ok(b)
}

pub fn masses(cmd: Vec<String>, p0_max: i64) -> Result<ReportBundle> {
    let mut b = ReportBundle::new(cmd, json!({ "p0_max": p0_max }));
    let mut rows = Vec::new();
    for p0 in 0..=p0_max {
        let vals: Vec<i64> = mass_squared_values(p0)?.into_iter().collect();
        let strs: Vec<String> = vals.iter().map(i64::to_string).collect();
        b.line(format!("p0 = {p0:>2}: {}", strs.join(" ")));
        rows.push(json!({ "p0": p0, "mass_squared": vals }));
    }
    let diffs = mass_table_diffs(p0_max)?;
    for d in &diffs {
        if d.key <= 3 {
            b.check(
                &format!("masses_p0_{}_match_reference", d.key),
                d.is_empty(),
                "exact",
            );
        }
    }
    b.line("\ndiff:");
    for d in diffs.iter().filter(|d| !d.is_empty()) {
        b.line(format!(
            "  p0 = {}: missing from reference {:?}, absent from lattice {:?}",
            d.key, d.missing_from_reference, d.absent_from_computed
        ));
    }
    let norms = spatial_norm_diff();
    b.line(format!(
        "  spatial norms <= 49: missing from reference {:?}, absent from lattice {:?}",
        norms.missing_from_reference, norms.absent_from_computed
    ));
    b.csv = Some(mass_table_csv(p0_max)?);
    b.payload(&rows);
    b.diff(json!({ "mass_rows": diffs, "spatial_norms": norms }));
    Ok(b)
}

pub fn hyperboloid(cmd: Vec<String>, m2: i64, pmax: i64) -> Result<ReportBundle> {
    let mut b = ReportBundle::new(cmd, json!({ "m2": m2, "pmax": pmax }));
    let h = truncated_hyperboloid(m2, pmax)?;
    let g = SymmetryGroup::new();
    let on_shell = h
        .points
        .iter()
        .all(|p| p.norm_sq() == m2 && (0..=pmax).contains(&p.t));
    b.check("on_shell", on_shell, format!("{} points", h.len()));
    let invariant = g.elements().iter().all(|z| h.is_invariant_under(z));
    b.check("rotation_invariant", invariant, "1 ⊕ Z permutes the points");
    for (i, p) in h.points.iter().enumerate() {
        b.line(format!("{i:>4}  {p}"));
    }
    b.csv = Some(h.to_csv());
    let pts: Vec<[i64; 4]> = h.points.iter().map(|p| p.coords()).collect();
    b.payload(json!({ "mass_sq": m2, "energy_cap": pmax, "points": pts }));
    Ok(b)
}

/// Fixed spread of lattice points for sampling.
pub fn sample_points(count: usize) -> Vec<LatticeVec4> {
    (0..count as i64)
        .map(|k| {
            LatticeVec4::new(
                k % 3,
                LatticeVec3::new((2 * k) % 5 - 2, (3 * k + 1) % 5 - 2, (4 * k + 2) % 5 - 2),
            )
        })
        .collect()
}

pub fn fock_verify(
    cmd: Vec<String>,
    m2: i64,
    pmax: i64,
    nmax: usize,
    samples: usize,
    tol: f64,
) -> Result<ReportBundle> {
    let mut b = ReportBundle::new(
        cmd,
        json!({ "m2": m2, "pmax": pmax, "nmax": nmax, "samples": samples, "tol": tol }),
    );
    let h = truncated_hyperboloid(m2, pmax)?;
    anyhow::ensure!(
        !h.is_empty(),
        "the mass shell m2 = {m2} has no points with p0 <= {pmax}"
    );
    let space = FockSpace::new(h, nmax);
    let pts = sample_points(samples + 1);
    let pairs: Vec<_> = pts.windows(2).map(|w| (w[0], w[1])).collect();
    let r = fock_checks(&space, &pairs);

    b.check(
        "psi_adjoint_of_phi",
        r.adjoint_residual < tol,
        format!("max residual {}", sci(r.adjoint_residual)),
    );
    b.check("phi_phi_commute", r.phi_phi_exact_zero, "exact");
    b.check(
        "psi_psi_commute",
        r.psi_psi_exact_zero,
        "exact, below the top sector",
    );
    b.check(
        "phi_psi_scalar",
        r.phi_psi_residual < tol,
        format!("max residual {}", sci(r.phi_psi_residual)),
    );
    b.check(
        "xi_commutator",
        r.xi_residual < tol,
        format!("max residual {}", sci(r.xi_residual)),
    );

    let ops = space.momentum_operators();
    let defects = ops.mass_shell_defects();
    b.check(
        "mass_shell",
        defects.iter().all(|d| *d == 0),
        "(P0)^2 - Q(P) = m2 on every single-particle state",
    );

    let g = SymmetryGroup::new();
    let els = g.elements();
    let poincare: Vec<PoincareElement> = pts
        .iter()
        .enumerate()
        .map(|(k, &y)| PoincareElement {
            translation: y,
            rotation: els[(7 * k + 3) % els.len()],
        })
        .collect();
    let vpairs: Vec<_> = poincare.windows(2).map(|w| (w[0], w[1])).collect();
    let v = rep_v_check(&space, &g, &vpairs)?;
    b.check(
        "V_unitary",
        v.max_unitarity < tol,
        format!("max residual {}", sci(v.max_unitarity)),
    );
    b.check(
        "V_homomorphism",
        v.max_homomorphism < tol,
        format!("max residual {}", sci(v.max_homomorphism)),
    );
    b.check("V_block_diagonal", v.block_diagonal, "exact");

    b.line(format!(
        "single-particle dim {}, N = {}, total dim {}, {} sample pairs",
        r.single_particle_dim, r.max_n, r.total_dim, r.samples
    ));
    let sample: Vec<[i64; 4]> = pts.iter().map(|p| p.coords()).collect();
    b.payload(json!({
        "manifest": space.manifest(),
        "sample_points": sample,
        "fields": r,
        "representation": v,
    }));
    Ok(b)
}

pub struct ScatterArgs {
    pub config: InteractionConfig,
    pub incoming: Option<(usize, usize)>,
    pub outgoing: Option<(usize, usize)>,
}

pub fn scatter(cmd: Vec<String>, args: ScatterArgs, tol: f64) -> Result<ReportBundle> {
    let config = args.config;
    let model = Model::new(config.clone())?;
    let pts = &model.pi_space.hyperboloid.points;
    let last = pts.len() - 1;
    let (i0, i1) = args.incoming.unwrap_or((0, 1.min(last)));
    let (o0, o1) = args.outgoing.unwrap_or((2.min(last), 3.min(last)));
    for k in [i0, i1, o0, o1] {
        anyhow::ensure!(
            k <= last,
            "state index {k} exceeds the {} pi shell points",
            pts.len()
        );
    }
    let incoming = (pts[i0], pts[i1]);
    let outgoing = (pts[o0], pts[o1]);
    let mut b = ReportBundle::new(
        cmd,
        json!({
            "interaction": config,
            "incoming": [incoming.0.coords(), incoming.1.coords()],
            "outgoing": [outgoing.0.coords(), outgoing.1.coords()],
            "tol": tol,
        }),
    );

    let series = scattering_operator(&model)?;
    let amp = amplitude(&model, &series, incoming, outgoing)?;
    let parity = order_parity_check(&amp, config.horizon, tol);
    let norm = |c: [f64; 2]| c[0].hypot(c[1]);

    b.check(
        "recursion_matches_expansion",
        series.expansion_residual < 1e-9,
        format!("residual {}", sci(series.expansion_residual)),
    );
    b.check(
        "order_sum_matches_recursion",
        series.order_sum_residual < 1e-9,
        format!("residual {}", sci(series.order_sum_residual)),
    );
    let herm = series
        .hamiltonians
        .iter()
        .map(hermiticity_residual)
        .fold(0.0, f64::max);
    b.check(
        "hamiltonian_hermitian",
        herm < tol,
        format!("max residual {}", sci(herm)),
    );
    let same_state = {
        let mut a = [i0, i1];
        let mut c = [o0, o1];
        a.sort();
        c.sort();
        a == c
    };
    let order0 = norm(amp.per_order[0]);
    if same_state {
        b.check(
            "order0_identity",
            (order0 - 1.0).abs() < tol,
            format!("|order 0| = {order0}"),
        );
    } else {
        b.check(
            "order0_vanishes",
            order0 < tol,
            format!("|order 0| = {}", sci(order0)),
        );
    }
    b.check(
        "odd_orders_vanish",
        parity.odd_orders_vanish,
        format!("max odd-order contribution {}", sci(parity.odd_orders_max)),
    );
    if config.g == 0.0 {
        let s = series.final_operator();
        let exact = s == &fock::CMatrix::identity(s.nrows(), s.ncols());
        b.check("free_evolution_identity", exact, "S = I exactly");
    } else if config.horizon >= 2 {
        let o2 = norm(parity.order2);
        b.check(
            "order2_nonzero",
            o2 >= tol,
            format!("|order 2| = {}", sci(o2)),
        );
    }

    b.line(format!(
        "dims: pi {}, sigma {}, total {}",
        model.pi_space.dim(),
        model.sigma_space.dim(),
        model.dim()
    ));
    b.line(format!(
        "<{} {}| S({}) |{} {}>",
        outgoing.0, outgoing.1, config.horizon, incoming.0, incoming.1
    ));
    for (j, c) in amp.per_order.iter().enumerate() {
        b.line(format!("  order {j}: {:+.12e} {:+.12e}i", c[0], c[1]));
    }
    b.line(format!(
        "  total:   {:+.12e} {:+.12e}i  |.|^2 = {:.12e}",
        amp.value[0], amp.value[1], amp.probability
    ));
    b.line(format!(
        "  unitarity defect |S*S - I| = {}",
        sci(series.unitarity_defect())
    ));

    b.payload(json!({
        "dims": { "pi": model.pi_space.dim(), "sigma": model.sigma_space.dim(), "total": model.dim() },
        "amplitude": amp,
        "parity": parity,
        "expansion_residual": series.expansion_residual,
        "order_sum_residual": series.order_sum_residual,
        "unitarity_defect": series.unitarity_defect(),
    }));
    Ok(b)
}
