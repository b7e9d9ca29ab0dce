//! Compute the steady stabilizer group of the cubic torus under the six-step
//! routine and show where each element lives.

use std::collections::BTreeMap;

use spinchain_floquet::lattice::{build_hypercubic, two_color_vertices};
use spinchain_floquet::schedule::builtin_schedule;
use spinchain_floquet::ssg::{compute_ssg, steady_group, ssg_rank};
use spinchain_floquet::weave::place_chains_on_plaquettes;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cc = build_hypercubic(3, 2)?;
    let diagram = place_chains_on_plaquettes(&cc, &two_color_vertices(&cc)?)?;
    let schedule = builtin_schedule("toric-nd-6step")?;

    let center = compute_ssg(&diagram);
    let steady = steady_group(&diagram, &schedule);
    println!("center: {} elements, rank {}", center.len(), ssg_rank(&center));
    println!("steady: {} elements, rank {}", steady.len(), ssg_rank(&steady));

    let mut by_class: BTreeMap<String, usize> = BTreeMap::new();
    for e in &steady {
        *by_class.entry(format!("{:?}", e.class)).or_default() += 1;
    }
    for (class, count) in by_class {
        println!("  {class}: {count}");
    }
    if let Some(e) = steady.first() {
        println!("first element: weight {}, sign {:+}, {} checks", e.operator.weight(), e.sign, e.checks.len());
    }
    Ok(())
}
