//! Inject one error, read its syndrome off the steady group, then sweep every
//! single-qubit error over a period.

use spinchain_floquet::decoder::{decode, detect, inject, sweep_single_errors, ErrorEvent};
use spinchain_floquet::engine::run_schedule;
use spinchain_floquet::lattice::{build_hypercubic, two_color_vertices};
use spinchain_floquet::schedule::builtin_schedule;
use spinchain_floquet::weave::place_chains_on_plaquettes;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cc = build_hypercubic(2, 4)?;
    let diagram = place_chains_on_plaquettes(&cc, &two_color_vertices(&cc)?)?;
    let schedule = builtin_schedule("toric2d-3step")?;
    let p = schedule.period();

    let event: ErrorEvent = "Y5@7".parse()?;
    let base = run_schedule(&diagram, &schedule, 7 + 3 * p, 3);
    let faulty = inject(&diagram, &schedule, &base, event)?;
    let detection = detect(&faulty.ledger, (event.round + 1 - p, event.round + 2 * p))?;
    let correction = decode(&diagram, &schedule, &detection)?;
    println!("{event:?}: flipped {:?}, correction weight {}", detection.flipped, correction.weight());

    let report = sweep_single_errors(&diagram, &schedule, p, 1)?;
    println!("{}/{} corrected", report.passed(), report.cases.len());
    report.write_csv(std::io::stdout().lock())?;
    Ok(())
}
