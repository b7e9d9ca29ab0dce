//! Follow a string logical through a period. The six-step routine brings it
//! back; the three-step one measures a black check that anticommutes with it.

use spinchain_floquet::lattice::{build_hypercubic, two_color_vertices};
use spinchain_floquet::phases::{line_logical, track_logical};
use spinchain_floquet::schedule::builtin_schedule;
use spinchain_floquet::weave::place_chains_on_plaquettes;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cc = build_hypercubic(3, 2)?;
    let diagram = place_chains_on_plaquettes(&cc, &two_color_vertices(&cc)?)?;
    let logical = line_logical(&diagram, &cc)?;
    println!("line logical of weight {}", logical.weight());

    for name in ["toric-nd-6step", "naive-3step"] {
        let track = track_logical(&diagram, &builtin_schedule(name)?, &logical, 6)?;
        match &track.collapse {
            None => println!(
                "{name}: survives, weights {:?}, returns exactly: {}",
                track.history.iter().map(|w| w.weight()).collect::<Vec<_>>(),
                track.returns_exactly
            ),
            Some(c) => println!("{name}: collapses at round {} on checks {:?}", c.round, c.checks),
        }
    }
    Ok(())
}
