//! Hexagonal prisms have odd edge loops, so plain plaquette chains do not
//! close consistently. Compensating chains repair the weave.

use spinchain_floquet::lattice::{build_hex_prism, two_color_vertices};
use spinchain_floquet::schedule::builtin_schedule;
use spinchain_floquet::ssg::steady_group;
use spinchain_floquet::weave::{place_chains_on_plaquettes, place_chains_with_compensation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cc = build_hex_prism(2, 2, 2)?;
    let coloring = two_color_vertices(&cc)?;
    if let Err(e) = place_chains_on_plaquettes(&cc, &coloring) {
        println!("plain placement: {e}");
    }
    let diagram = place_chains_with_compensation(&cc, &coloring)?;
    let steady = steady_group(&diagram, &builtin_schedule("toric-nd-6step")?);
    println!(
        "compensated: {} qubits, {} chains, {} steady elements",
        diagram.n_qubits(),
        diagram.chains.len(),
        steady.len()
    );
    Ok(())
}
