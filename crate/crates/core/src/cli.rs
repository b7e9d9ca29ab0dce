//! Command-line front end: `build`, `run`, `gsd`, `decode-sweep`, `verify`.
//!
//! Exit codes: 0 on success, 1 when a verification or sweep fails, 2 for
//! usage and configuration errors.

pub mod checks;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::decoder::{self, sweep_single_errors, ErrorEvent};
use crate::engine::{Injection, Simulation};
use crate::error::{Error, Result};
use crate::lattice::{build_hex_prism, build_hypercubic, two_color_vertices, CellComplex, LatticeFile};
use crate::phases::{self, Family};
use crate::schedule::{builtin_schedule, resolve_schedule, Schedule};
use crate::ssg;
use crate::weave::{
    build_bacon_shor, coloring_report, place_chains_around_vertices, place_chains_on_plaquettes,
    place_chains_with_compensation, CheckColor, InteractionDiagram,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "spinchain", version, about = "Floquet codes woven from closed spin chains")]
pub struct Cli {
    /// Worker threads for sweeps (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weave chains over a lattice and write the interaction diagram.
    Build {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Diagram output (JSON).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a measurement schedule and write the trace.
    Run(RunConfig),
    /// Ground-state degeneracy of a reference code family over sizes.
    Gsd {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Comma-separated sizes.
        #[arg(long = "L", value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// CSV output (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inject every single-qubit error over one period and decode it.
    DecodeSweep(RunConfig),
    /// Run a named end-to-end check, or `all`.
    Verify {
        name: String,
        /// Write the outcomes as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LatticeKind {
    Hypercubic,
    HexPrism,
    BaconShor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlacementArg {
    Plaquettes,
    Vertices,
    BaconShor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Toric,
    Xcube,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Toric => Family::Toric,
            FamilyArg::Xcube => Family::Xcube,
        }
    }
}

#[derive(Args, Clone, Debug)]
pub struct LatticeArgs {
    #[arg(long, value_enum, default_value = "hypercubic")]
    pub lattice: LatticeKind,
    /// Lattice definition file (JSON); overrides --lattice.
    #[arg(long)]
    pub lattice_file: Option<PathBuf>,
    /// Dimension of the hypercubic lattice.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Linear size.
    #[arg(long = "L", default_value_t = 4)]
    pub size: usize,
    #[arg(long, value_enum, default_value = "plaquettes")]
    pub placement: PlacementArg,
    /// Add compensating chains along odd-parity edge loops.
    #[arg(long)]
    pub compensate: bool,
}

/// Lattice, schedule and run parameters shared by `run` and `decode-sweep`.
#[derive(Args, Clone, Debug)]
pub struct RunConfig {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Built-in schedule name or schedule file; chosen from the placement
    /// when absent.
    #[arg(long)]
    pub schedule: Option<String>,
    /// Rounds to run (`run`) or round offsets to sweep (`decode-sweep`).
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Errors to inject, e.g. `X3@12` (repeatable; `run` only).
    #[arg(long)]
    pub inject: Vec<String>,
    /// Force every random outcome to +1 (`run` only).
    #[arg(long)]
    pub forcing: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl LatticeArgs {
    fn complex(&self) -> Result<CellComplex> {
        if let Some(path) = &self.lattice_file {
            return LatticeFile::load(path);
        }
        match self.lattice {
            LatticeKind::Hypercubic => build_hypercubic(self.n, self.size),
            LatticeKind::HexPrism => build_hex_prism(self.size, self.size, self.size),
            LatticeKind::BaconShor => Err(Error::InvalidParameters("bacon-shor has no cell complex".into())),
        }
    }

    pub fn diagram(&self) -> Result<InteractionDiagram> {
        if self.lattice == LatticeKind::BaconShor || self.placement == PlacementArg::BaconShor {
            return build_bacon_shor(self.size);
        }
        let cc = self.complex()?;
        match self.placement {
            PlacementArg::Vertices => place_chains_around_vertices(&cc),
            _ => {
                let coloring = two_color_vertices(&cc)?;
                if self.compensate {
                    place_chains_with_compensation(&cc, &coloring)
                } else {
                    place_chains_on_plaquettes(&cc, &coloring)
                }
            }
        }
    }
}

/// The routine matching a diagram's placement.
pub fn default_schedule(diagram: &InteractionDiagram) -> Result<Schedule> {
    use crate::weave::Placement;
    let name = match diagram.placement {
        Placement::BaconShor => "baconshor-2step",
        Placement::Vertices => "xcube-6step",
        Placement::Plaquettes if diagram.count_color(CheckColor::Black) == 0 => "toric2d-3step",
        Placement::Plaquettes => "toric-nd-6step",
    };
    builtin_schedule(name)
}

impl RunConfig {
    fn schedule(&self, diagram: &InteractionDiagram) -> Result<Schedule> {
        let s = match &self.schedule {
            Some(name) => resolve_schedule(name)?,
            None => default_schedule(diagram)?,
        };
        s.check_covers(diagram)?;
        Ok(s)
    }
}

/// Short name of an error's variant, for diagnostics.
fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn writer(path: &Option<PathBuf>) -> Result<Option<BufWriter<File>>> {
    Ok(match path {
        Some(p) => Some(BufWriter::new(File::create(p)?)),
        None => None,
    })
}

/// Parse `args` (program name first) and run. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    if let Some(jobs) = cli.jobs {
        // A pool set up earlier in the same process is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", error_kind(&e));
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Build { lattice, out: path } => cmd_build(&lattice, path, out),
        Command::Run(cfg) => cmd_run(&cfg, out),
        Command::Gsd {
            family,
            n,
            sizes,
            out: path,
        } => cmd_gsd(family.into(), n, &sizes, path, out),
        Command::DecodeSweep(cfg) => cmd_decode_sweep(&cfg, out),
        Command::Verify { name, out: path } => cmd_verify(&name, path, out),
    }
}

pub fn cmd_build(lattice: &LatticeArgs, path: Option<PathBuf>, out: &mut dyn Write) -> Result<i32> {
    let d = lattice.diagram()?;
    let r = coloring_report(&d);
    let counts: Vec<String> = r.counts.iter().map(|(c, k)| format!("{k} {c:?}").to_lowercase()).collect();
    writeln!(out, "{} qubits, {} checks: {}", d.n_qubits(), d.n_checks(), counts.join(", "))?;
    writeln!(out, "chains: {}", d.chains.len())?;
    writeln!(
        out,
        "coloring: {} colors, trivalent={}, proper={}, distinct-types={}",
        r.n_colors, r.trivalent, r.properly_colored, r.distinct_types
    )?;
    if let Some(p) = path {
        d.save(&p)?;
        writeln!(out, "wrote {}", p.display())?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_run(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let d = cfg.lattice.diagram()?;
    let sched = cfg.schedule(&d)?;
    let n_rounds = cfg.rounds.unwrap_or(4 * sched.period());
    let mut sim = Simulation::new(&d, &sched).seed(cfg.seed).forcing(cfg.forcing);
    let mut events = Vec::new();
    for text in &cfg.inject {
        let ev: ErrorEvent = text.parse()?;
        if ev.qubit >= d.n_qubits() {
            return Err(Error::InvalidQubit {
                qubit: ev.qubit,
                n_qubits: d.n_qubits(),
            });
        }
        if ev.round >= n_rounds {
            return Err(Error::RoundOutOfRange {
                round: ev.round,
                available: n_rounds,
            });
        }
        sim = sim.inject(Injection {
            round: ev.round,
            error: ev.operator(d.n_qubits()),
        });
        events.push(ev);
    }
    let trace = sim.run(n_rounds);
    writeln!(
        out,
        "{} rounds of {} (period {}), {} qubits, {} tracked elements",
        n_rounds,
        sched.name,
        sched.period(),
        d.n_qubits(),
        trace.tracked.len()
    )?;
    let ranks: Vec<String> = (0..n_rounds).map(|r| trace.isg(r).map_or(0, |g| g.len()).to_string()).collect();
    writeln!(out, "ISG rank per round: {}", ranks.join(" "))?;
    for ev in &events {
        let p = sched.period();
        let window = (ev.round + 1).saturating_sub(p)..=ev.round + 2 * p;
        match decoder::detect(&trace.ledger, (*window.start(), *window.end())) {
            Ok(det) => {
                write!(out, "{}{}@{}: {} flipped", ev.pauli.symbol(), ev.qubit, ev.round, det.flipped.len())?;
                match decoder::decode(&d, &sched, &det) {
                    Ok(c) => writeln!(out, ", correction {}", describe(&c))?,
                    Err(e) => writeln!(out, ", {e}")?,
                }
            }
            Err(e) => writeln!(out, "{}{}@{}: {e}", ev.pauli.symbol(), ev.qubit, ev.round)?,
        }
    }
    if let Some(mut w) = writer(&cfg.out)? {
        w.write_all(trace.to_json()?.as_bytes())?;
        w.flush()?;
        writeln!(out, "wrote {}", cfg.out.as_ref().unwrap().display())?;
    }
    Ok(EXIT_OK)
}

fn describe(w: &crate::f2::PauliWord) -> String {
    if w.is_identity() {
        return "I".into();
    }
    w.support().iter().map(|&q| format!("{}{q}", w.get(q).symbol())).collect::<Vec<_>>().join(" ")
}

pub fn cmd_gsd(family: Family, n: usize, sizes: &[usize], path: Option<PathBuf>, out: &mut dyn Write) -> Result<i32> {
    let rows = phases::gsd_sweep(family, n, sizes)?;
    match writer(&path)? {
        Some(mut w) => {
            phases::write_gsd_csv(&rows, &mut w)?;
            w.flush()?;
            for r in &rows {
                writeln!(out, "n={} L={} log2_gsd={}", r.n, r.l, r.log2_gsd)?;
            }
            writeln!(out, "wrote {}", path.as_ref().unwrap().display())?;
        }
        None => phases::write_gsd_csv(&rows, &mut *out)?,
    }
    let consecutive = sizes.windows(2).all(|w| w[1] == w[0] + 1);
    let degree = match family {
        Family::Toric => 0,
        Family::Xcube => n.saturating_sub(2),
    };
    if consecutive && sizes.len() > degree + 1 {
        let values: Vec<i64> = rows.iter().map(|r| r.log2_gsd as i64).collect();
        if let Some((c, exact)) = phases::leading_coefficient(&values, degree) {
            writeln!(
                out,
                "# leading coefficient (degree {degree}): {c}{}",
                if exact { "" } else { " (higher differences nonzero)" }
            )?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_decode_sweep(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let d = cfg.lattice.diagram()?;
    let sched = cfg.schedule(&d)?;
    let offsets = cfg.rounds.unwrap_or(sched.period());
    let report = sweep_single_errors(&d, &sched, offsets, cfg.seed)?;
    if let Some(mut w) = writer(&cfg.out)? {
        report.write_csv(&mut w)?;
        w.flush()?;
    }
    let detected = report.cases.iter().filter(|c| c.detected).count();
    writeln!(
        out,
        "{}: {}/{} corrected ({} detected)",
        sched.name,
        report.passed(),
        report.cases.len(),
        detected
    )?;
    let steady = ssg::steady_group(&d, &sched).len();
    writeln!(out, "steady elements: {steady}")?;
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_FAILED })
}

pub fn cmd_verify(name: &str, path: Option<PathBuf>, out: &mut dyn Write) -> Result<i32> {
    let names: Vec<&str> = if name == "all" {
        checks::CHECKS.to_vec()
    } else {
        vec![checks::canonical_name(name).ok_or_else(|| {
            Error::InvalidParameters(format!(
                "unknown check `{name}` (expected all, {}, appendix-b or phase-3d)",
                checks::CHECKS.join(", ")
            ))
        })?]
    };
    let mut outcomes = Vec::new();
    for n in names {
        let o = checks::run_check(n)?;
        writeln!(out, "{} {}", if o.passed { "PASS" } else { "FAIL" }, o.name)?;
        for line in &o.details {
            writeln!(out, "    {line}")?;
        }
        outcomes.push(o);
    }
    if let Some(mut w) = writer(&path)? {
        w.write_all(serde_json::to_string_pretty(&outcomes)?.as_bytes())?;
        w.flush()?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if outcomes.len() > 1 {
        writeln!(out, "{}/{} checks passed", outcomes.len() - failed, outcomes.len())?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("spinchain").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn build_cubic_summary() {
        let (code, out, _) = run(&["build", "--lattice", "hypercubic", "--n", "3", "--L", "2", "--placement", "plaquettes"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("96 qubits"), "{out}");
        assert!(out.contains("48 red") && out.contains("24 black"), "{out}");
    }

    #[test]
    fn odd_torus_is_a_config_error() {
        let (code, _, err) = run(&["build", "--lattice", "hypercubic", "--n", "2", "--L", "3"]);
        assert_eq!(code, 2);
        assert!(err.contains("NotBipartite"), "{err}");
    }

    #[test]
    fn bad_flags_are_usage_errors() {
        assert_eq!(run(&["build", "--n"]).0, 2);
        assert_eq!(run(&["frobnicate"]).0, 2);
        assert_eq!(run(&["verify", "nonsense"]).0, 2);
        assert_eq!(run(&["--help"]).0, 0);
    }

    #[test]
    fn gsd_table() {
        let (code, out, _) = run(&["gsd", "--family", "xcube", "--n", "3", "--L", "2,3,4"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("n,L,log2_gsd\n3,2,9\n3,3,15\n3,4,21\n"), "{out}");
        assert!(out.contains("leading coefficient (degree 1): 6"));
    }

    #[test]
    fn square_torus_sweep() {
        let (code, out, _) = run(&["decode-sweep", "--lattice", "hypercubic", "--n", "2", "--L", "4"]);
        assert_eq!(code, 0);
        assert!(out.contains("576/576 corrected"), "{out}");
    }

    #[test]
    fn run_with_injection_reports_correction() {
        let (code, out, _) = run(&["run", "--n", "2", "--L", "4", "--rounds", "15", "--inject", "X5@6", "--seed", "2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("X5@6: "), "{out}");
        assert!(out.contains("correction"), "{out}");
        let (code, _, err) = run(&["run", "--n", "2", "--L", "4", "--inject", "X999@1"]);
        assert_eq!(code, 2);
        assert!(err.contains("InvalidQubit"), "{err}");
    }
}
