//! Single-error detection from flipped referred values, correction by
//! syndrome matching, and exhaustive sweeps over single Pauli errors.
//!
//! The correction rule picks the lowest-indexed single-qubit Pauli whose
//! pattern of anticommuting steady elements matches the observed flips. On
//! the built-in lattices this is an endpoint of the colored check (or a
//! qubit of the physical edge) shared by the flipped cells.

use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{Injection, Simulation, SyndromeLedger, Trace};
use crate::error::{Error, Result};
use crate::f2::{BitVec, Pauli, PauliWord, SpanBasis};
use crate::schedule::Schedule;
use crate::ssg::steady_group;
use crate::weave::{CheckColor, InteractionDiagram};

/// A single-qubit Pauli applied right after the measurements of `round`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorEvent {
    pub round: usize,
    pub qubit: usize,
    pub pauli: Pauli,
}

impl ErrorEvent {
    pub fn new(round: usize, qubit: usize, pauli: Pauli) -> Self {
        ErrorEvent { round, qubit, pauli }
    }

    /// X, Y and Z errors are green, blue and red.
    pub fn color(&self) -> CheckColor {
        match self.pauli {
            Pauli::X => CheckColor::Green,
            Pauli::Y => CheckColor::Blue,
            _ => CheckColor::Red,
        }
    }

    pub fn operator(&self, n_qubits: usize) -> PauliWord {
        PauliWord::single(n_qubits, self.qubit, self.pauli)
    }
}

/// Parses `X3@12`: Pauli, qubit, `@`, round.
impl FromStr for ErrorEvent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected an error like `X3@12`, got `{s}`"));
        let (head, round) = s.split_once('@').ok_or_else(bad)?;
        let mut chars = head.chars();
        let pauli = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'X' => Pauli::X,
            'Y' => Pauli::Y,
            'Z' => Pauli::Z,
            _ => return Err(bad()),
        };
        Ok(ErrorEvent {
            round: round.trim().parse().map_err(|_| bad())?,
            qubit: chars.as_str().trim().parse().map_err(|_| bad())?,
            pauli,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Detection {
    /// Tracked elements whose referred value changed inside the window.
    pub flipped: Vec<usize>,
    /// Inclusive round range that was inspected.
    pub window: (usize, usize),
}

impl Detection {
    pub fn is_empty(&self) -> bool {
        self.flipped.is_empty()
    }
}

/// Re-simulates `trace` with `event` applied; later rounds reuse the same
/// per-round random streams.
pub fn inject(diagram: &InteractionDiagram, schedule: &Schedule, trace: &Trace, event: ErrorEvent) -> Result<Trace> {
    if event.qubit >= diagram.n_qubits() {
        return Err(Error::InvalidQubit {
            qubit: event.qubit,
            n_qubits: diagram.n_qubits(),
        });
    }
    if event.round >= trace.n_rounds {
        return Err(Error::RoundOutOfRange {
            round: event.round,
            available: trace.n_rounds,
        });
    }
    Simulation::new(diagram, schedule)
        .seed(trace.seed)
        .forcing(trace.forcing)
        .track(trace.tracked.clone())
        .resume_with(
            trace,
            Injection {
                round: event.round,
                error: event.operator(diagram.n_qubits()),
            },
            trace.n_rounds,
        )
}

/// Elements whose value changed between consecutive references of one
/// epoch inside `window`. Every element needs two references there.
pub fn detect(ledger: &SyndromeLedger, window: (usize, usize)) -> Result<Detection> {
    let (start, end) = window;
    let mut flipped = Vec::new();
    for k in 0..ledger.n_elements() {
        let refs: Vec<_> = ledger.references(k).iter().filter(|r| r.round >= start && r.round <= end).collect();
        if refs.len() < 2 {
            return Err(Error::WindowTooShort {
                element: k,
                references: refs.len(),
            });
        }
        let changes = refs.windows(2).filter(|p| p[0].epoch == p[1].epoch && p[0].value != p[1].value).count();
        if changes % 2 == 1 {
            flipped.push(k);
        }
    }
    Ok(Detection { flipped, window })
}

/// Which of `elements` anticommute with `error`.
pub fn syndrome(elements: &[PauliWord], error: &PauliWord) -> BitVec {
    BitVec::from_bools(&elements.iter().map(|e| e.anticommutes(error)).collect::<Vec<_>>())
}

/// Lookup from flip patterns to single-qubit corrections.
#[derive(Clone, Debug)]
pub struct Decoder {
    n_qubits: usize,
    elements: Vec<PauliWord>,
    table: Vec<(BitVec, usize, Pauli)>,
}

impl Decoder {
    pub fn new(n_qubits: usize, elements: Vec<PauliWord>) -> Self {
        let mut table = Vec::with_capacity(3 * n_qubits);
        for q in 0..n_qubits {
            for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                table.push((syndrome(&elements, &PauliWord::single(n_qubits, q, p)), q, p));
            }
        }
        Decoder {
            n_qubits,
            elements,
            table,
        }
    }

    /// Decoder over the steady group reached by `schedule`.
    pub fn for_schedule(diagram: &InteractionDiagram, schedule: &Schedule) -> Self {
        let elements = steady_group(diagram, schedule).into_iter().map(|e| e.operator).collect();
        Decoder::new(diagram.n_qubits(), elements)
    }

    pub fn elements(&self) -> &[PauliWord] {
        &self.elements
    }

    fn pattern(&self, detection: &Detection) -> BitVec {
        BitVec::from_indices(self.elements.len(), detection.flipped.iter().copied())
    }

    /// Every single-qubit Pauli consistent with the detection, in qubit
    /// order.
    pub fn candidates(&self, detection: &Detection) -> Vec<PauliWord> {
        let target = self.pattern(detection);
        self.table
            .iter()
            .filter(|(s, _, _)| *s == target)
            .map(|&(_, q, p)| PauliWord::single(self.n_qubits, q, p))
            .collect()
    }

    /// Correction for a detection caused by one Pauli error.
    pub fn decode(&self, detection: &Detection) -> Result<PauliWord> {
        if detection.is_empty() {
            return Ok(PauliWord::identity(self.n_qubits));
        }
        self.candidates(detection).into_iter().next().ok_or(Error::AmbiguousSyndrome)
    }
}

/// Convenience wrapper building a decoder for one call.
pub fn decode(diagram: &InteractionDiagram, schedule: &Schedule, detection: &Detection) -> Result<PauliWord> {
    Decoder::for_schedule(diagram, schedule).decode(detection)
}

/// Span of the stabilizers after `round` and every check measured in the
/// following `horizon` rounds.
pub fn trivial_group(diagram: &InteractionDiagram, schedule: &Schedule, trace: &Trace, round: usize, horizon: usize) -> Result<SpanBasis> {
    let n = diagram.n_qubits();
    let mut span = SpanBasis::new(2 * n);
    for s in trace.isg(round)? {
        span.insert(s.to_symplectic());
    }
    for t in round + 1..=round + horizon {
        let r = schedule.round(t);
        for c in diagram.checks.iter().filter(|c| r.selects(c.color)) {
            span.insert(c.operator(n, r.op_override).to_symplectic());
        }
    }
    Ok(span)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub qubit: usize,
    pub pauli: Pauli,
    /// Offset of the injection round within the period.
    pub round: usize,
    pub detected: bool,
    pub corrected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub schedule: String,
    pub n_qubits: usize,
    pub cases: Vec<CaseResult>,
}

impl SweepReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.detected && c.corrected).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        writeln!(out, "qubit,pauli,round,detected,corrected")?;
        for c in &self.cases {
            writeln!(out, "{},{},{},{},{}", c.qubit, c.pauli.symbol(), c.round, c.detected, c.corrected)?;
        }
        Ok(())
    }
}

/// Injects every single-qubit Pauli at every round offset of one period
/// after a two-period warm-up, then detects, decodes and checks that the
/// residual acts trivially. `rounds` bounds how many offsets are swept
/// (at most one period).
pub fn sweep_single_errors(diagram: &InteractionDiagram, schedule: &Schedule, rounds: usize, seed: u64) -> Result<SweepReport> {
    let period = schedule.period();
    let warm = 2 * period;
    let horizon = 2 * period;
    let offsets = rounds.min(period);
    let n_rounds = warm + offsets + horizon + 1;
    let n = diagram.n_qubits();
    let decoder = Decoder::for_schedule(diagram, schedule);
    let base = Simulation::new(diagram, schedule)
        .seed(seed)
        .track(decoder.elements().to_vec())
        .run(n_rounds);
    let spans: Vec<SpanBasis> = (0..offsets)
        .map(|o| trivial_group(diagram, schedule, &base, warm + o, horizon))
        .collect::<Result<_>>()?;

    let cases: Vec<(usize, usize, Pauli)> = (0..offsets)
        .flat_map(|o| (0..n).flat_map(move |q| [Pauli::X, Pauli::Y, Pauli::Z].map(|p| (o, q, p))))
        .collect();
    let results = cases
        .par_iter()
        .map(|&(o, q, p)| {
            let t = warm + o;
            let event = ErrorEvent::new(t, q, p);
            let trace = inject(diagram, schedule, &base, event)?;
            let detection = detect(&trace.ledger, (t + 1 - period, t + horizon))?;
            let corrected = match decoder.decode(&detection) {
                Ok(c) => {
                    let residual = &event.operator(n) * &c;
                    spans[o].contains(&residual.to_symplectic())
                }
                Err(Error::AmbiguousSyndrome) => false,
                Err(e) => return Err(e),
            };
            Ok(CaseResult {
                qubit: q,
                pauli: p,
                round: o,
                detected: !detection.is_empty(),
                corrected,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        schedule: schedule.name.clone(),
        n_qubits: n,
        cases: results,
    })
}
