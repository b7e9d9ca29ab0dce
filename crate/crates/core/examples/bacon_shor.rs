//! The Bacon-Shor weave: per round the steady group acts as a repetition code
//! on the effective qubits.

use spinchain_floquet::decoder::sweep_single_errors;
use spinchain_floquet::schedule::builtin_schedule;
use spinchain_floquet::ssg::ssg_classical_code_check;
use spinchain_floquet::weave::build_bacon_shor;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let diagram = build_bacon_shor(3)?;
    let schedule = builtin_schedule("baconshor-2step")?;

    for round in 0..schedule.period() {
        let r = ssg_classical_code_check(&diagram, &schedule, round)?;
        println!(
            "round {round}: {} effective qubits, rank {}, detects {:?}, repetition {:?}",
            r.n_effective, r.rank, r.detects, r.repetition
        );
    }
    let report = sweep_single_errors(&diagram, &schedule, schedule.period(), 0)?;
    println!("{}/{} single errors corrected", report.passed(), report.cases.len());
    Ok(())
}
