//! Run the three-step routine on the square torus and print how the
//! instantaneous stabilizer group settles.

use spinchain_floquet::engine::Simulation;
use spinchain_floquet::lattice::{build_hypercubic, two_color_vertices};
use spinchain_floquet::schedule::builtin_schedule;
use spinchain_floquet::weave::place_chains_on_plaquettes;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cc = build_hypercubic(2, 4)?;
    let diagram = place_chains_on_plaquettes(&cc, &two_color_vertices(&cc)?)?;
    let schedule = builtin_schedule("toric2d-3step")?;

    let trace = Simulation::new(&diagram, &schedule).seed(42).run(12);
    for round in 0..12 {
        let records = trace.round_records(round);
        let random = records.iter().filter(|r| !r.deterministic).count();
        println!(
            "round {round:2}: ISG rank {:3}, {:2} measurements, {:2} random",
            trace.isg(round)?.len(),
            records.len(),
            random
        );
    }
    Ok(())
}
