//! Match the effective code of each weave against its reference topological
//! order, then fit the X-cube degeneracy over system size.

use spinchain_floquet::lattice::{build_hypercubic, two_color_vertices};
use spinchain_floquet::phases::{gsd_sweep, leading_coefficient, toric_code, verify_phase, xcube_code, Family};
use spinchain_floquet::schedule::builtin_schedule;
use spinchain_floquet::weave::{place_chains_around_vertices, place_chains_on_plaquettes};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cc = build_hypercubic(3, 2)?;

    let plaq = place_chains_on_plaquettes(&cc, &two_color_vertices(&cc)?)?;
    let ok = verify_phase(&plaq, &builtin_schedule("toric-nd-6step")?, 0, &toric_code(&cc))?;
    println!("plaquette chains -> 3D toric code: {ok}");

    let rings = place_chains_around_vertices(&cc)?;
    let ok = verify_phase(&rings, &builtin_schedule("xcube-6step")?, 0, &xcube_code(&cc)?)?;
    println!("vertex rings -> X-cube: {ok}");

    for n in [3, 4] {
        let rows = gsd_sweep(Family::Xcube, n, &[2, 3, 4])?;
        let values: Vec<i64> = rows.iter().map(|r| r.log2_gsd as i64).collect();
        let fit = leading_coefficient(&values, n - 2);
        println!("X-cube n={n}: log2 GSD {values:?}, leading coefficient {fit:?}");
    }
    Ok(())
}
