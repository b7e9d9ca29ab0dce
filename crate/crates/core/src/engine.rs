//! Stabilizer simulation of a measurement schedule.
//!
//! The state is a mixed stabilizer state kept as a symplectic basis: active
//! pairs hold a signed stabilizer and its destabilizer, inactive pairs hold a
//! logical `(A, B)` pair of the still-maximally-mixed part. Stabilizers can
//! carry the set of measurement records whose outcomes fix their sign.
//!
//! Referred values of tracked elements are computed from the records of the
//! last period alone. A forced replay of one period from the maximally mixed
//! state shows, for each phase of the schedule, which window records an
//! element's value is the product of; that plan is computed once and applied
//! to every later period.

use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2::{BitVec, PauliWord};
use crate::schedule::Schedule;
use crate::weave::InteractionDiagram;

/// Where measurement outcomes come from when they are not determined.
pub enum Outcomes<'a> {
    Sample(&'a mut ChaCha8Rng),
    /// Project onto the given eigenvalue.
    Force(i8),
}

impl Outcomes<'_> {
    fn draw(&mut self) -> i8 {
        match self {
            Outcomes::Sample(rng) => {
                if rng.gen::<bool>() {
                    1
                } else {
                    -1
                }
            }
            Outcomes::Force(v) => *v,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Measurement {
    pub outcome: i8,
    pub deterministic: bool,
}

#[derive(Clone, Debug)]
pub struct Tableau {
    n: usize,
    stab: Vec<PauliWord>,
    destab: Vec<PauliWord>,
    active: Vec<bool>,
    deps: Vec<BitVec>,
}

impl Tableau {
    /// The maximally mixed state; `record_capacity` bounds record indices
    /// that may later appear in dependency sets.
    pub fn maximally_mixed(n: usize, record_capacity: usize) -> Self {
        Tableau {
            n,
            stab: (0..n).map(|q| PauliWord::single(n, q, crate::f2::Pauli::X)).collect(),
            destab: (0..n).map(|q| PauliWord::single(n, q, crate::f2::Pauli::Z)).collect(),
            active: vec![false; n],
            deps: vec![BitVec::zeros(record_capacity); n],
        }
    }

    /// State stabilized by the given signed, commuting generators.
    pub fn stabilized_by(n: usize, generators: &[PauliWord]) -> Result<Self> {
        let mut t = Self::maximally_mixed(n, 0);
        for (k, g) in generators.iter().enumerate() {
            if t.first_anticommuting_stabilizer(g).is_some() {
                let earlier = generators[..k].iter().position(|h| h.anticommutes(g)).unwrap_or(0);
                return Err(Error::NonCommuting(earlier, k));
            }
            let sign = g.sign();
            if sign == 0 {
                return Err(Error::NonHermitian(g.phase()));
            }
            t.measure(&g.unsigned(), &mut Outcomes::Force(sign), None)?;
        }
        Ok(t)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// Number of independent stabilizer generators.
    pub fn rank(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    /// Signed stabilizer generators.
    pub fn stabilizers(&self) -> Vec<PauliWord> {
        (0..self.n).filter(|&i| self.active[i]).map(|i| self.stab[i].clone()).collect()
    }

    fn first_anticommuting_stabilizer(&self, p: &PauliWord) -> Option<usize> {
        (0..self.n).find(|&i| self.active[i] && self.stab[i].anticommutes(p))
    }

    fn mul_row(&mut self, target_stab: bool, row: usize, by: &PauliWord, by_deps: Option<&BitVec>) {
        if target_stab {
            self.stab[row].mul_assign(by);
            if let Some(d) = by_deps {
                if self.active[row] {
                    self.deps[row].xor_assign(d);
                }
            }
        } else {
            self.destab[row].mul_assign(by);
        }
    }

    /// Projective measurement of a Hermitian Pauli word. `record` is the
    /// index that new stabilizers will list as their dependency.
    pub fn measure(&mut self, op: &PauliWord, outcomes: &mut Outcomes<'_>, record: Option<usize>) -> Result<Measurement> {
        if !op.is_hermitian() {
            return Err(Error::NonHermitian(op.phase()));
        }
        if op.n_qubits() != self.n {
            return Err(Error::LengthMismatch {
                left: op.n_qubits(),
                right: self.n,
            });
        }
        let fresh_deps = |len: usize| {
            let mut d = BitVec::zeros(len);
            if let Some(r) = record {
                if r < len {
                    d.set(r, true);
                }
            }
            d
        };

        if let Some(i) = self.first_anticommuting_stabilizer(op) {
            let pivot = self.stab[i].clone();
            let pivot_deps = self.deps[i].clone();
            for k in 0..self.n {
                if k != i && self.stab[k].anticommutes(op) {
                    self.mul_row(true, k, &pivot, Some(&pivot_deps));
                }
                if k != i && self.destab[k].anticommutes(op) {
                    self.mul_row(false, k, &pivot, None);
                }
            }
            let m = outcomes.draw();
            self.destab[i] = pivot;
            self.stab[i] = signed(op, m);
            self.deps[i] = fresh_deps(self.deps[i].len());
            return Ok(Measurement {
                outcome: m,
                deterministic: false,
            });
        }

        let inactive = (0..self.n).find(|&j| !self.active[j] && (self.stab[j].anticommutes(op) || self.destab[j].anticommutes(op)));
        if let Some(j) = inactive {
            if !self.stab[j].anticommutes(op) {
                std::mem::swap(&mut self.stab[j], &mut self.destab[j]);
            }
            let a = self.stab[j].clone();
            for k in 0..self.n {
                if k != j && self.stab[k].anticommutes(op) {
                    self.mul_row(true, k, &a, None);
                }
                if k != j && self.destab[k].anticommutes(op) {
                    self.mul_row(false, k, &a, None);
                }
            }
            let m = outcomes.draw();
            self.destab[j] = a;
            self.stab[j] = signed(op, m);
            self.active[j] = true;
            self.deps[j] = fresh_deps(self.deps[j].len());
            return Ok(Measurement {
                outcome: m,
                deterministic: false,
            });
        }

        let (sign, _) = self.express_in_group(op).expect("commuting operator lies in the stabilizer group");
        Ok(Measurement {
            outcome: sign,
            deterministic: true,
        })
    }

    /// True when `±w` belongs to the stabilizer group.
    pub fn contains(&self, w: &PauliWord) -> bool {
        (0..self.n).all(|i| {
            if self.active[i] {
                !self.stab[i].anticommutes(w)
            } else {
                !self.stab[i].anticommutes(w) && !self.destab[i].anticommutes(w)
            }
        })
    }

    /// Rows whose commutation with `w` decides membership: `±w` is in the
    /// group iff it commutes with all of them.
    pub fn membership_witnesses(&self) -> Vec<PauliWord> {
        let mut out = Vec::new();
        for i in 0..self.n {
            out.push(self.stab[i].clone());
            if !self.active[i] {
                out.push(self.destab[i].clone());
            }
        }
        out
    }

    /// For `w` in the group up to sign, returns its eigenvalue on the state
    /// and the records its value depends on.
    pub fn express_in_group(&self, w: &PauliWord) -> Option<(i8, BitVec)> {
        if !self.contains(w) {
            return None;
        }
        let cap = self.deps.first().map_or(0, |d| d.len());
        let mut q = PauliWord::identity(self.n);
        let mut deps = BitVec::zeros(cap);
        for i in 0..self.n {
            if self.active[i] && self.destab[i].anticommutes(w) {
                q.mul_assign(&self.stab[i]);
                deps.xor_assign(&self.deps[i]);
            }
        }
        let diff = (4 + w.phase() - q.phase()) % 4;
        let sign = match diff {
            0 => 1,
            2 => -1,
            _ => return None,
        };
        Some((sign, deps))
    }

    /// Conjugates the state by a Pauli error.
    pub fn apply_pauli(&mut self, e: &PauliWord) {
        for i in 0..self.n {
            if self.active[i] && self.stab[i].anticommutes(e) {
                self.stab[i] = std::mem::replace(&mut self.stab[i], PauliWord::identity(0)).negated();
            }
        }
    }
}

fn signed(op: &PauliWord, m: i8) -> PauliWord {
    let base = op.unsigned();
    let w = if op.sign() < 0 { base.negated() } else { base };
    if m < 0 {
        w.negated()
    } else {
        w
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MeasurementRecord {
    pub round: usize,
    pub check: usize,
    pub outcome: i8,
    pub deterministic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub round: usize,
    pub value: i8,
    /// Increments each time the element leaves the stabilizer group.
    pub epoch: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
struct ElementState {
    epoch: usize,
    in_group: bool,
}

/// Referred values of tracked elements over time.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SyndromeLedger {
    pub entries: Vec<Vec<LedgerEntry>>,
    #[serde(skip)]
    state: Vec<ElementState>,
}

impl SyndromeLedger {
    pub fn new(n_elements: usize) -> Self {
        SyndromeLedger {
            entries: vec![Vec::new(); n_elements],
            state: vec![ElementState::default(); n_elements],
        }
    }

    pub fn n_elements(&self) -> usize {
        self.entries.len()
    }

    pub fn references(&self, element: usize) -> &[LedgerEntry] {
        &self.entries[element]
    }

    fn truncate_after(&mut self, round: usize) {
        for e in &mut self.entries {
            e.retain(|x| x.round <= round);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Referral {
    /// Number of rounds, ending at the current one, the value is read from.
    rounds: usize,
    /// Value when every window record reads `+1`.
    sign: i8,
    /// Window records whose outcomes multiply into the value.
    records: Vec<usize>,
    /// Some of those records come from the window's last round.
    fresh: bool,
}

/// For each phase of the schedule and each tracked element, how its value
/// follows from the most recent records.
///
/// The window for an element is the shortest run of rounds ending at the
/// phase in which the element is determined, so the value always comes from
/// its latest referral rather than an older, still valid one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReferralPlan {
    period: usize,
    phases: Vec<Vec<Option<Referral>>>,
}

impl ReferralPlan {
    pub fn new(diagram: &InteractionDiagram, schedule: &Schedule, elements: &[PauliWord]) -> Self {
        let period = schedule.period();
        let n = diagram.n_qubits();
        let phases = (0..period)
            .map(|phase| {
                let mut found: Vec<Option<Referral>> = vec![None; elements.len()];
                for len in 1..=period {
                    let rounds: Vec<Vec<PauliWord>> = (phase + period + 1 - len..=phase + period)
                        .map(|t| round_operators(diagram, schedule, t).into_iter().map(|(_, o)| o).collect())
                        .collect();
                    let total: usize = rounds.iter().map(Vec::len).sum();
                    let last_start = total - rounds.last().map_or(0, Vec::len);
                    let mut observer = Tableau::maximally_mixed(n, total);
                    for (idx, op) in rounds.iter().flatten().enumerate() {
                        observer
                            .measure(op, &mut Outcomes::Force(1), Some(idx))
                            .expect("checks are Hermitian and sized to the diagram");
                    }
                    for (slot, w) in found.iter_mut().zip(elements) {
                        if slot.is_none() {
                            *slot = observer.express_in_group(w).map(|(sign, deps)| Referral {
                                rounds: len,
                                sign,
                                fresh: deps.any_in_range(last_start, total),
                                records: deps.iter_ones().collect(),
                            });
                        }
                    }
                    if found.iter().all(Option::is_some) {
                        break;
                    }
                }
                found
            })
            .collect();
        ReferralPlan { period, phases }
    }

    /// Whether `element` is freshly referred in rounds of the given phase.
    pub fn is_fresh(&self, phase: usize, element: usize) -> bool {
        matches!(&self.phases[phase % self.period][element], Some(r) if r.fresh)
    }

    /// Number of trailing rounds and the records among them (counted from
    /// the first record of those rounds) whose product gives the element's
    /// value in this phase.
    pub fn window_records(&self, phase: usize, element: usize) -> Option<(usize, &[usize])> {
        self.phases[phase % self.period][element].as_ref().map(|r| (r.rounds, r.records.as_slice()))
    }
}

/// Appends a reference for every element freshly referred at `round`: the
/// product of the window records named by the plan. Membership in the
/// actual stabilizer group drives the epoch counter.
pub fn refer_values(
    ledger: &mut SyndromeLedger,
    plan: &ReferralPlan,
    elements: &[PauliWord],
    tableau: &Tableau,
    round: usize,
    records: &[MeasurementRecord],
    round_records: &[Range<usize>],
) {
    for (k, w) in elements.iter().enumerate() {
        let state = &mut ledger.state[k];
        if tableau.contains(w) {
            state.in_group = true;
        } else {
            if state.in_group {
                state.epoch += 1;
            }
            state.in_group = false;
            continue;
        }
        let Some(r) = &plan.phases[round % plan.period][k] else { continue };
        if r.fresh && round + 1 >= r.rounds {
            let start = round_records[round + 1 - r.rounds].start;
            let value = r.records.iter().fold(r.sign, |v, &i| v * records[start + i].outcome);
            ledger.entries[k].push(LedgerEntry {
                round,
                value,
                epoch: state.epoch,
            });
        }
    }
}

fn round_operators(diagram: &InteractionDiagram, schedule: &Schedule, round: usize) -> Vec<(usize, PauliWord)> {
    let r = schedule.round(round);
    diagram
        .checks
        .iter()
        .filter(|c| r.selects(c.color))
        .map(|c| (c.id, c.operator(diagram.n_qubits(), r.op_override)))
        .collect()
}

/// A Pauli applied to the state right after a round's measurements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Injection {
    pub round: usize,
    pub error: PauliWord,
}

#[derive(Clone, Debug)]
struct Checkpoint {
    tableau: Tableau,
    ledger_state: Vec<ElementState>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Trace {
    pub n_qubits: usize,
    pub n_rounds: usize,
    pub period: usize,
    pub seed: u64,
    pub forcing: bool,
    pub records: Vec<MeasurementRecord>,
    /// Record index range per round.
    pub round_records: Vec<Range<usize>>,
    /// Signed stabilizer generators after each round.
    pub snapshots: Vec<Vec<PauliWord>>,
    pub tracked: Vec<PauliWord>,
    pub ledger: SyndromeLedger,
    pub injections: Vec<(usize, String)>,
    #[serde(skip)]
    plan: ReferralPlan,
    #[serde(skip)]
    checkpoints: Vec<Checkpoint>,
}

impl Trace {
    /// Instantaneous stabilizer group generators after `round`.
    pub fn isg(&self, round: usize) -> Result<&[PauliWord]> {
        self.snapshots.get(round).map(|s| s.as_slice()).ok_or(Error::RoundOutOfRange {
            round,
            available: self.snapshots.len(),
        })
    }

    /// Full state after `round`.
    pub fn tableau(&self, round: usize) -> Result<&Tableau> {
        self.checkpoints.get(round).map(|c| &c.tableau).ok_or(Error::RoundOutOfRange {
            round,
            available: self.checkpoints.len(),
        })
    }

    pub fn round_records(&self, round: usize) -> &[MeasurementRecord] {
        &self.records[self.round_records[round].clone()]
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn round_rng(seed: u64, round: usize) -> ChaCha8Rng {
    let mut z = (round as u64).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    ChaCha8Rng::seed_from_u64(seed ^ z)
}

/// Configured run of a schedule over a diagram.
pub struct Simulation<'a> {
    diagram: &'a InteractionDiagram,
    schedule: &'a Schedule,
    seed: u64,
    forcing: bool,
    tracked: Option<Vec<PauliWord>>,
    injections: Vec<Injection>,
}

impl<'a> Simulation<'a> {
    pub fn new(diagram: &'a InteractionDiagram, schedule: &'a Schedule) -> Self {
        Simulation {
            diagram,
            schedule,
            seed: 0,
            forcing: false,
            tracked: None,
            injections: Vec::new(),
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Project every random outcome onto +1.
    pub fn forcing(mut self, on: bool) -> Self {
        self.forcing = on;
        self
    }

    /// Elements whose referred values go into the ledger. Defaults to the
    /// ordered steady-group generators.
    pub fn track(mut self, elements: Vec<PauliWord>) -> Self {
        self.tracked = Some(elements);
        self
    }

    pub fn inject(mut self, injection: Injection) -> Self {
        self.injections.push(injection);
        self
    }

    fn round_ops(&self, round: usize) -> Vec<(usize, PauliWord)> {
        round_operators(self.diagram, self.schedule, round)
    }

    pub fn run(self, n_rounds: usize) -> Trace {
        let tracked = self.tracked.clone().unwrap_or_else(|| {
            crate::ssg::steady_group(self.diagram, self.schedule).into_iter().map(|e| e.ordered_operator()).collect()
        });
        let capacity: usize = (0..n_rounds).map(|t| self.round_ops(t).len()).sum();
        let trace = Trace {
            n_qubits: self.diagram.n_qubits(),
            n_rounds: 0,
            period: self.schedule.period(),
            seed: self.seed,
            forcing: self.forcing,
            records: Vec::with_capacity(capacity),
            round_records: Vec::new(),
            snapshots: Vec::new(),
            ledger: SyndromeLedger::new(tracked.len()),
            plan: ReferralPlan::new(self.diagram, self.schedule, &tracked),
            tracked,
            injections: Vec::new(),
            checkpoints: Vec::new(),
        };
        let tableau = Tableau::maximally_mixed(self.diagram.n_qubits(), 0);
        self.continue_from(trace, tableau, n_rounds)
    }

    fn continue_from(&self, mut trace: Trace, mut tableau: Tableau, n_rounds: usize) -> Trace {
        let start = trace.n_rounds;
        for t in start..n_rounds {
            let mut rng = round_rng(self.seed, t);
            let mut source = if self.forcing { Outcomes::Force(1) } else { Outcomes::Sample(&mut rng) };
            let begin = trace.records.len();
            for (check, op) in self.round_ops(t) {
                let m = tableau
                    .measure(&op, &mut source, None)
                    .expect("checks are Hermitian and sized to the diagram");
                trace.records.push(MeasurementRecord {
                    round: t,
                    check,
                    outcome: m.outcome,
                    deterministic: m.deterministic,
                });
            }
            trace.round_records.push(begin..trace.records.len());
            refer_values(&mut trace.ledger, &trace.plan, &trace.tracked, &tableau, t, &trace.records, &trace.round_records);
            for inj in self.injections.iter().filter(|i| i.round == t) {
                tableau.apply_pauli(&inj.error);
                trace.injections.push((t, inj.error.to_string()));
            }
            trace.snapshots.push(tableau.stabilizers());
            trace.checkpoints.push(Checkpoint {
                tableau: tableau.clone(),
                ledger_state: trace.ledger.state.clone(),
            });
            trace.n_rounds = t + 1;
        }
        trace
    }

    /// Replays `base` up to `injection.round`, applies the error there and
    /// re-simulates through `n_rounds` with the same per-round streams.
    pub fn resume_with(self, base: &Trace, injection: Injection, n_rounds: usize) -> Result<Trace> {
        let t = injection.round;
        let cp = base.checkpoints.get(t).ok_or(Error::RoundOutOfRange {
            round: t,
            available: base.checkpoints.len(),
        })?;
        if injection.error.n_qubits() != base.n_qubits {
            return Err(Error::LengthMismatch {
                left: injection.error.n_qubits(),
                right: base.n_qubits,
            });
        }
        let mut tableau = cp.tableau.clone();
        tableau.apply_pauli(&injection.error);
        let end = base.round_records[t].end;
        let mut trace = Trace {
            n_qubits: base.n_qubits,
            n_rounds: t + 1,
            period: base.period,
            seed: base.seed,
            forcing: base.forcing,
            records: base.records[..end].to_vec(),
            round_records: base.round_records[..=t].to_vec(),
            snapshots: base.snapshots[..t].to_vec(),
            tracked: base.tracked.clone(),
            plan: base.plan.clone(),
            ledger: base.ledger.clone(),
            injections: vec![(t, injection.error.to_string())],
            checkpoints: base.checkpoints[..t].to_vec(),
        };
        trace.ledger.truncate_after(t);
        trace.ledger.state = cp.ledger_state.clone();
        trace.snapshots.push(tableau.stabilizers());
        trace.checkpoints.push(Checkpoint {
            tableau: tableau.clone(),
            ledger_state: cp.ledger_state.clone(),
        });
        let sim = Simulation {
            injections: Vec::new(),
            ..self
        };
        Ok(sim.continue_from(trace, tableau, n_rounds))
    }
}

/// Samples outcomes from `seed` and tracks the steady-group generators.
pub fn run_schedule(diagram: &InteractionDiagram, schedule: &Schedule, n_rounds: usize, seed: u64) -> Trace {
    Simulation::new(diagram, schedule).seed(seed).run(n_rounds)
}

/// Generators of the instantaneous stabilizer group after `round`.
pub fn isg(trace: &Trace, round: usize) -> Result<&[PauliWord]> {
    trace.isg(round)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::SpanBasis;

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(3)
    }

    #[test]
    fn measuring_a_stabilizer_is_deterministic() {
        let mut t = Tableau::stabilized_by(1, &[w("X")]).unwrap();
        let mut r = rng();
        let m = t.measure(&w("X"), &mut Outcomes::Sample(&mut r), None).unwrap();
        assert_eq!(m, Measurement { outcome: 1, deterministic: true });
        assert_eq!(t.stabilizers(), vec![w("X")]);
        let mut neg = Tableau::stabilized_by(1, &[w("-X")]).unwrap();
        assert_eq!(neg.measure(&w("X"), &mut Outcomes::Force(1), None).unwrap().outcome, -1);
    }

    #[test]
    fn anticommuting_measurement_replaces_generator() {
        let mut t = Tableau::stabilized_by(1, &[w("X")]).unwrap();
        let mut r = rng();
        let m = t.measure(&w("Z"), &mut Outcomes::Sample(&mut r), None).unwrap();
        assert!(!m.deterministic);
        let expected = if m.outcome == 1 { w("Z") } else { w("-Z") };
        assert_eq!(t.stabilizers(), vec![expected]);
    }

    #[test]
    fn commuting_non_member_is_random() {
        let mut t = Tableau::stabilized_by(2, &[w("XX")]).unwrap();
        let mut r = rng();
        let m = t.measure(&w("ZZ"), &mut Outcomes::Sample(&mut r), None).unwrap();
        assert!(!m.deterministic);
        assert_eq!(t.rank(), 2);
        assert!(t.contains(&w("XX")) && t.contains(&w("ZZ")));
        assert_eq!(t.express_in_group(&w("YY")).unwrap().0, -m.outcome);
    }

    #[test]
    fn non_hermitian_measurement_is_rejected() {
        let mut t = Tableau::maximally_mixed(1, 0);
        assert!(matches!(t.measure(&w("+iX"), &mut Outcomes::Force(1), None), Err(Error::NonHermitian(1))));
    }

    #[test]
    fn repeated_measurement_agrees() {
        let mut t = Tableau::maximally_mixed(3, 0);
        let mut r = rng();
        for op in ["XXI", "IZZ", "YIY", "ZZZ"] {
            let first = t.measure(&w(op), &mut Outcomes::Sample(&mut r), None).unwrap();
            let again = t.measure(&w(op), &mut Outcomes::Sample(&mut r), None).unwrap();
            assert!(again.deterministic);
            assert_eq!(first.outcome, again.outcome);
        }
    }

    #[test]
    fn generators_stay_commuting_and_independent() {
        let mut t = Tableau::maximally_mixed(5, 0);
        let mut r = rng();
        for op in ["XXIII", "IZZII", "IIYYI", "ZIIIZ", "XIXIX", "IYIYI", "ZZZZZ"] {
            t.measure(&w(op), &mut Outcomes::Sample(&mut r), None).unwrap();
            let gens = t.stabilizers();
            for a in &gens {
                for b in &gens {
                    assert!(!a.anticommutes(b));
                }
            }
            let basis = SpanBasis::from_vectors(10, gens.iter().map(|g| g.to_symplectic()).collect::<Vec<_>>().iter());
            assert_eq!(basis.rank(), gens.len());
        }
    }

    #[test]
    fn error_flips_anticommuting_stabilizers() {
        let mut t = Tableau::stabilized_by(2, &[w("XX"), w("ZZ")]).unwrap();
        t.apply_pauli(&w("ZI"));
        assert_eq!(t.express_in_group(&w("XX")).unwrap().0, -1);
        assert_eq!(t.express_in_group(&w("ZZ")).unwrap().0, 1);
    }

    fn square_torus() -> (InteractionDiagram, Schedule) {
        let cc = crate::lattice::build_hypercubic(2, 4).unwrap();
        let col = crate::lattice::two_color_vertices(&cc).unwrap();
        let d = crate::weave::place_chains_on_plaquettes(&cc, &col).unwrap();
        (d, crate::schedule::builtin_schedule("toric2d-3step").unwrap())
    }

    #[test]
    fn red_plaquette_reads_minus_one_when_all_outcomes_are_plus_one() {
        let (d, sched) = square_torus();
        let steady = crate::ssg::steady_group(&d, &sched);
        let trace = Simulation::new(&d, &sched).forcing(true).run(12);
        let mut seen = 0;
        for e in steady.iter().filter(|e| e.class == crate::ssg::CellClass::Red) {
            for r in trace.ledger.references(e.id) {
                assert_eq!(r.value, -1);
                seen += 1;
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn red_plaquettes_are_referred_once_green_and_blue_are_both_in() {
        let (d, sched) = square_torus();
        let steady = crate::ssg::steady_group(&d, &sched);
        let plan = ReferralPlan::new(&d, &sched, &steady.iter().map(|e| e.ordered_operator()).collect::<Vec<_>>());
        let red = steady.iter().find(|e| e.class == crate::ssg::CellClass::Red).unwrap();
        let fresh: Vec<usize> = (0..3).filter(|&p| plan.is_fresh(p, red.id)).collect();
        assert_eq!(fresh, vec![2]);
    }

    #[test]
    fn referred_values_are_steady_without_errors() {
        let (d, sched) = square_torus();
        let trace = Simulation::new(&d, &sched).seed(9).run(15);
        for k in 0..trace.ledger.n_elements() {
            let refs = trace.ledger.references(k);
            assert!(refs.len() >= 4, "element {k}");
            assert!(refs.windows(2).all(|p| p[0].value == p[1].value), "element {k}");
        }
    }
}
