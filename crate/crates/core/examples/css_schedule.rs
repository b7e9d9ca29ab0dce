//! A CSS-style six-step routine: measure X and Z checks in alternation and
//! confirm every single error still flips a steady element.

use spinchain_floquet::decoder::sweep_single_errors;
use spinchain_floquet::lattice::{build_hypercubic, two_color_vertices};
use spinchain_floquet::schedule::builtin_schedule;
use spinchain_floquet::ssg::steady_group;
use spinchain_floquet::weave::place_chains_on_plaquettes;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let schedule = builtin_schedule("css-6step")?;
    for (dim, l) in [(2, 4), (3, 2)] {
        let cc = build_hypercubic(dim, l)?;
        let diagram = place_chains_on_plaquettes(&cc, &two_color_vertices(&cc)?)?;
        let steady = steady_group(&diagram, &schedule);
        let report = sweep_single_errors(&diagram, &schedule, schedule.period(), 1)?;
        let detected = report.cases.iter().filter(|c| c.detected).count();
        println!(
            "{dim}D L={l}: {} steady elements, {detected}/{} errors detected",
            steady.len(),
            report.cases.len()
        );
    }
    Ok(())
}
