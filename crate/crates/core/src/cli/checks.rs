//! Named end-to-end checks behind `verify`. Each builds its own lattices and
//! reports a pass flag with short human-readable details.

use serde::Serialize;

use crate::decoder::sweep_single_errors;
use crate::engine::Simulation;
use crate::error::{Error, Result};
use crate::lattice::{build_hex_prism, build_hypercubic, two_color_vertices, CellComplex};
use crate::phases::{self, gsd, leading_coefficient, reference_code, same_group, track_logical, Family};
use crate::polyring;
use crate::schedule::{builtin_schedule, Schedule};
use crate::ssg::{self, CellClass};
use crate::weave::{
    bicolored_cycle_lengths, build_bacon_shor, coloring_report, place_chains_around_vertices, place_chains_on_plaquettes,
    place_chains_with_compensation, CheckColor, InteractionDiagram,
};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        CheckOutcome {
            name,
            passed: true,
            details: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.details.push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
        self.passed &= ok;
    }
}

/// Names in dependency order, as run by `verify all`.
pub const CHECKS: [&str; 11] = [
    "construction-2d",
    "referral-sign",
    "isg-3d",
    "phases",
    "gsd",
    "decoder",
    "bacon-shor",
    "logical-rewind",
    "trivalent",
    "hex-prism",
    "css",
];

/// Accepted spellings for each check.
pub fn canonical_name(name: &str) -> Option<&'static str> {
    match name {
        "appendix-b" => Some("trivalent"),
        "phase-3d" => Some("phase-3d"),
        other => CHECKS.iter().copied().find(|c| *c == other),
    }
}

pub fn run_check(name: &str) -> Result<CheckOutcome> {
    match canonical_name(name) {
        Some("construction-2d") => construction_2d(),
        Some("referral-sign") => referral_sign(),
        Some("isg-3d") => isg_3d(),
        Some("phases") => phase_checks(true),
        Some("phase-3d") => phase_checks(false),
        Some("gsd") => gsd_values(),
        Some("decoder") => decoder_sweeps(),
        Some("bacon-shor") => bacon_shor(),
        Some("logical-rewind") => logical_rewind(),
        Some("trivalent") => trivalent(),
        Some("hex-prism") => hex_prism(),
        Some("css") => css(),
        _ => Err(Error::InvalidParameters(format!(
            "unknown check `{name}` (expected one of: all, {}, appendix-b, phase-3d)",
            CHECKS.join(", ")
        ))),
    }
}

fn plaquettes(dim: usize, l: usize) -> Result<(CellComplex, InteractionDiagram)> {
    let cc = build_hypercubic(dim, l)?;
    let d = place_chains_on_plaquettes(&cc, &two_color_vertices(&cc)?)?;
    Ok((cc, d))
}

fn construction_2d() -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("construction-2d");
    let (_, d) = plaquettes(2, 4)?;
    let r = coloring_report(&d);
    out.require(d.n_qubits() == 64, format!("square torus L=4 has {} qubits (64)", d.n_qubits()));
    out.require(r.trivalent, "every qubit meets three checks");
    out.require(r.properly_colored && r.n_colors == 3, "three colors, proper at every qubit");
    out.require(r.distinct_types, "XX, YY, ZZ meet at every qubit");
    let squares = bicolored_cycle_lengths(&d, CheckColor::Green, CheckColor::Blue);
    let oct_g = bicolored_cycle_lengths(&d, CheckColor::Red, CheckColor::Green);
    let oct_b = bicolored_cycle_lengths(&d, CheckColor::Red, CheckColor::Blue);
    out.require(
        squares == vec![4; 16] && oct_g == vec![8; 8] && oct_b == vec![8; 8],
        format!("4.8.8 faces: {} squares, {} octagons", squares.len(), oct_g.len() + oct_b.len()),
    );
    Ok(out)
}

fn referral_sign() -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("referral-sign");
    let (_, d) = plaquettes(2, 4)?;
    let sched = builtin_schedule("toric2d-3step")?;
    let steady = ssg::steady_group(&d, &sched);
    let trace = Simulation::new(&d, &sched).forcing(true).run(12);
    let values: Vec<i8> = steady
        .iter()
        .filter(|e| e.class == CellClass::Red)
        .flat_map(|e| trace.ledger.references(e.id).iter().map(|r| r.value))
        .collect();
    out.require(!values.is_empty(), format!("{} red plaquette references", values.len()));
    out.require(values.iter().all(|&v| v == -1), "every red plaquette reads -1 with all outcomes +1");
    Ok(out)
}

fn isg_3d() -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("isg-3d");
    let (_, d) = plaquettes(3, 2)?;
    let sched = builtin_schedule("toric-nd-6step")?;
    let steady = ssg::steady_group(&d, &sched);
    let trace = Simulation::new(&d, &sched).seed(7).track(Vec::new()).run(36);
    let warm = 12;
    let in_all = (warm..36).all(|r| {
        let t = trace.tableau(r).expect("in range");
        steady.iter().all(|e| t.contains(&e.operator))
    });
    out.require(in_all, format!("{} steady elements in every ISG after warm-up", steady.len()));
    let tri = ssg::triangular_green_operators(&d);
    let tri_ok = (warm..36).filter(|r| r % 6 == 1).all(|r| {
        let t = trace.tableau(r).expect("in range");
        tri.iter().all(|w| t.contains(w))
    });
    out.require(tri_ok, format!("{} triangular green operators after each green round", tri.len()));
    let periodic = (warm..30).all(|r| same_group(trace.isg(r).unwrap(), trace.isg(r + 6).unwrap()));
    let minimal = [1, 2, 3]
        .iter()
        .all(|&p| (warm..30).any(|r| !same_group(trace.isg(r).unwrap(), trace.isg(r + p).unwrap())));
    out.require(periodic && minimal, "ISG has period exactly 6");
    Ok(out)
}

fn phase_checks(all: bool) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(if all { "phases" } else { "phase-3d" });
    let toric = |dim: usize, l: usize, sched: &str| -> Result<bool> {
        let (cc, d) = plaquettes(dim, l)?;
        phases::verify_phase(&d, &builtin_schedule(sched)?, 0, &phases::toric_code(&cc))
    };
    let xcube = |dim: usize| -> Result<bool> {
        let cc = build_hypercubic(dim, 2)?;
        let d = place_chains_around_vertices(&cc)?;
        phases::verify_phase(&d, &builtin_schedule("xcube-6step")?, 0, &phases::xcube_code(&cc)?)
    };
    if all {
        out.require(toric(2, 4, "toric2d-3step")?, "2D L=4 effective group is the (2,1) toric code");
    }
    out.require(toric(3, 2, "toric-nd-6step")?, "3D L=2 effective group is the (3,1) toric code");
    if all {
        out.require(toric(4, 2, "toric-nd-6step")?, "4D L=2 effective group is the (4,1) toric code");
    }
    out.require(xcube(3)?, "3D L=2 vertex rings give the X-cube code");
    if all {
        out.require(xcube(4)?, "4D L=2 vertex rings give the 4D X-cube code");
    }
    Ok(out)
}

fn gsd_values() -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("gsd");
    for (family, n, l, expect) in [(Family::Toric, 2, 4, 2), (Family::Toric, 3, 2, 3), (Family::Xcube, 3, 3, 15)] {
        let code = reference_code(family, n, l)?;
        let g = gsd(&code.stabilizers, code.n_qubits)?;
        out.require(g == expect, format!("{family:?} n={n} L={l}: log2 GSD = {g} ({expect})"));
    }
    for (n, expect) in [(3, 6.0), (4, 12.0)] {
        let rows = phases::gsd_sweep(Family::Xcube, n, &[2, 3, 4])?;
        let values: Vec<i64> = rows.iter().map(|r| r.log2_gsd as i64).collect();
        let fit = leading_coefficient(&values, n - 2);
        out.require(
            matches!(fit, Some((c, true)) if c == expect),
            format!("X-cube n={n}, L=2,3,4: {values:?}, leading coefficient {fit:?} ({expect})"),
        );
    }
    Ok(out)
}

/// The four sweep targets with their schedules.
pub fn sweep_targets() -> Result<Vec<(&'static str, InteractionDiagram, Schedule)>> {
    Ok(vec![
        ("2D toric L=4", plaquettes(2, 4)?.1, builtin_schedule("toric2d-3step")?),
        ("3D toric L=2", plaquettes(3, 2)?.1, builtin_schedule("toric-nd-6step")?),
        (
            "3D X-cube L=2",
            place_chains_around_vertices(&build_hypercubic(3, 2)?)?,
            builtin_schedule("xcube-6step")?,
        ),
        ("Bacon-Shor L=3", build_bacon_shor(3)?, builtin_schedule("baconshor-2step")?),
    ])
}

fn decoder_sweeps() -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("decoder");
    for (label, d, sched) in sweep_targets()? {
        let report = sweep_single_errors(&d, &sched, sched.period(), 1)?;
        out.require(
            report.all_passed(),
            format!("{label}: {}/{} corrected", report.passed(), report.cases.len()),
        );
    }
    Ok(out)
}

fn bacon_shor() -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("bacon-shor");
    let d = build_bacon_shor(3)?;
    let sched = builtin_schedule("baconshor-2step")?;
    for round in 0..sched.period() {
        let r = ssg::ssg_classical_code_check(&d, &sched, round)?;
        out.require(
            r.n_effective == 4 && r.rank == 3 && r.repetition.is_some(),
            format!(
                "round {round}: {} effective qubits, rank {}, repetition code {:?}",
                r.n_effective, r.rank, r.repetition
            ),
        );
    }
    Ok(out)
}

fn logical_rewind() -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("logical-rewind");
    let (cc, d) = plaquettes(3, 2)?;
    let logical = phases::line_logical(&d, &cc)?;
    let six = track_logical(&d, &builtin_schedule("toric-nd-6step")?, &logical, 6)?;
    out.require(
        six.collapse.is_none() && six.returns_exactly,
        "six-step routine returns the line logical to itself",
    );
    let three = track_logical(&d, &builtin_schedule("naive-3step")?, &logical, 6)?;
    match &three.collapse {
        Some(c) => {
            let black = c.checks.iter().any(|&k| d.checks[k].color == CheckColor::Black);
            out.require(black, format!("three-step routine collapses at round {} on a black check", c.round));
        }
        None => out.require(false, "three-step routine should collapse"),
    }
    Ok(out)
}

fn trivalent() -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("trivalent");
    let r = polyring::verify_trivalent_reduction()?;
    out.require(
        r.identity,
        format!("r·Hᵀ·l matches the block form ({} corrected H entries)", r.errata_applied),
    );
    out.require(r.det_r_unit, format!("det r = {}", r.det_r));
    out.require(r.det_l_unit, format!("det l = {}", r.det_l));
    for l in [2, 3] {
        let g = polyring::trivalent_gsd(l)?;
        out.require(g == 3, format!("L={l}: log2 GSD = {g} (3)"));
    }
    Ok(out)
}

fn hex_prism() -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("hex-prism");
    let cc = build_hex_prism(2, 2, 2)?;
    let coloring = two_color_vertices(&cc)?;
    let bare = place_chains_on_plaquettes(&cc, &coloring);
    out.require(
        matches!(bare, Err(Error::OddEdgeParity { .. })),
        "plain plaquette placement is rejected (odd edge parity)",
    );
    let d = place_chains_with_compensation(&cc, &coloring)?;
    let sched = builtin_schedule("toric-nd-6step")?;
    let steady = ssg::steady_group(&d, &sched);
    let checks = d.check_operators();
    let commute = steady.iter().all(|e| checks.iter().all(|c| !c.anticommutes(&e.operator)));
    out.require(
        !steady.is_empty() && commute,
        format!("{} steady elements commute with all checks", steady.len()),
    );
    let report = sweep_single_errors(&d, &sched, sched.period(), 1)?;
    out.require(
        report.all_passed(),
        format!("sweep: {}/{} corrected", report.passed(), report.cases.len()),
    );
    Ok(out)
}

fn css() -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("css");
    let sched = builtin_schedule("css-6step")?;
    for (dim, l) in [(2, 4), (3, 2)] {
        let (_, d) = plaquettes(dim, l)?;
        let trace = Simulation::new(&d, &sched).seed(5).track(Vec::new()).run(30);
        let periodic = (12..24).all(|r| same_group(trace.isg(r).unwrap(), trace.isg(r + 6).unwrap()));
        let minimal = [1, 2, 3]
            .iter()
            .all(|&p| (12..24).any(|r| !same_group(trace.isg(r).unwrap(), trace.isg(r + p).unwrap())));
        out.require(periodic && minimal, format!("{dim}D L={l}: ISG period 6"));
        let steady = ssg::steady_group(&d, &sched);
        out.require(!steady.is_empty(), format!("{dim}D L={l}: {} steady elements", steady.len()));
        let report = sweep_single_errors(&d, &sched, sched.period(), 1)?;
        let detected = report.cases.iter().filter(|c| c.detected).count();
        out.require(
            detected == report.cases.len(),
            format!("{dim}D L={l}: {detected}/{} single errors flip a steady element", report.cases.len()),
        );
    }
    Ok(out)
}
