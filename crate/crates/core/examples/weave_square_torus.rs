//! Weave closed spin chains over a 4x4 square torus and inspect the
//! resulting three-colored interaction diagram.

use spinchain_floquet::lattice::{build_hypercubic, two_color_vertices};
use spinchain_floquet::weave::{bicolored_cycle_lengths, coloring_report, place_chains_on_plaquettes, CheckColor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cc = build_hypercubic(2, 4)?;
    let diagram = place_chains_on_plaquettes(&cc, &two_color_vertices(&cc)?)?;

    let report = coloring_report(&diagram);
    println!("{} qubits on {} chains", diagram.n_qubits(), diagram.chains.len());
    for (color, count) in &report.counts {
        println!("  {color:?}: {count} checks");
    }
    println!("trivalent: {}, proper: {}", report.trivalent, report.properly_colored);

    // Green/blue cycles are the squares, red/green and red/blue the octagons.
    let squares = bicolored_cycle_lengths(&diagram, CheckColor::Green, CheckColor::Blue);
    let octagons = bicolored_cycle_lengths(&diagram, CheckColor::Red, CheckColor::Green);
    println!("square faces: {}, octagon faces (red-green): {}", squares.len(), octagons.len());

    // An odd torus has no checkerboard coloring.
    let odd = build_hypercubic(2, 3)?;
    if let Err(e) = two_color_vertices(&odd) {
        println!("L=3: {e}");
    }
    Ok(())
}
