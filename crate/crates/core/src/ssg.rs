//! Steady stabilizer group: central products of checks that the measurement
//! routine keeps fixed.
//!
//! The center of the check group is computed exactly from the commutation
//! matrix. Cell operators (chain rings, vertex and cube products) are built
//! as labelled candidates, and whatever the cells miss is kept unlabelled.
//! On a torus those leftovers are non-contractible loops: they commute with
//! every check but the routine never fixes them, so [`steady_group`] drops
//! them after a warm-up.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::f2::{f2_nullspace, f2_solve, BitVec, F2Matrix, Pauli, PauliWord, SpanBasis};
use crate::engine::{Simulation, Tableau};
use crate::error::Result;
use crate::phases::EffectiveMap;
use crate::schedule::Schedule;
use crate::weave::{CheckColor, CheckSite, InteractionDiagram, Placement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellClass {
    Green,
    Blue,
    Red,
    Cube,
    Vertex,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellHost {
    Chain(usize),
    Vertex(usize),
    Face(usize),
    Cube(usize),
    Columns(usize),
    Rows(usize),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SsgElement {
    pub id: usize,
    /// Hermitian operator with phase normalized to `+1`.
    pub operator: PauliWord,
    /// Sign of the ordered product of `checks` relative to `operator`.
    pub sign: i8,
    /// Constituent checks in product order.
    pub checks: Vec<usize>,
    pub host: CellHost,
    pub class: CellClass,
}

impl SsgElement {
    /// The ordered product of the constituent checks, sign included. Its
    /// eigenvalue is the element's referred value.
    pub fn ordered_operator(&self) -> PauliWord {
        if self.sign < 0 {
            self.operator.clone().negated()
        } else {
            self.operator.clone()
        }
    }
}

/// Product of checks in the given order.
pub fn ordered_product(diagram: &InteractionDiagram, checks: &[usize]) -> PauliWord {
    let mut w = PauliWord::identity(diagram.n_qubits());
    for &c in checks {
        w.mul_assign(&diagram.check_operator(c, None));
    }
    w
}

/// Commutation matrix of the checks: `Ω[i][j] = 1` when checks `i`, `j`
/// anticommute.
pub fn commutation_matrix(ops: &[PauliWord]) -> F2Matrix {
    let m = ops.len();
    let rows = ops
        .iter()
        .map(|a| BitVec::from_indices(m, (0..m).filter(|&j| a.anticommutes(&ops[j]))))
        .collect();
    F2Matrix::from_rows(m, rows).expect("square by construction")
}

/// Check subsets whose products span the center (may include subsets whose
/// product is the identity).
pub fn center_combinations(diagram: &InteractionDiagram) -> Vec<BitVec> {
    f2_nullspace(&commutation_matrix(&diagram.check_operators()))
}

/// Independent symplectic vectors spanning the center.
pub fn center_basis(diagram: &InteractionDiagram) -> SpanBasis {
    let ops = diagram.check_operators();
    let mut basis = SpanBasis::new(2 * diagram.n_qubits());
    for combo in center_combinations(diagram) {
        let mut v = BitVec::zeros(2 * diagram.n_qubits());
        for c in combo.iter_ones() {
            v.xor_assign(&ops[c].to_symplectic());
        }
        basis.insert(v);
    }
    basis
}

fn commutes_with_all(w: &PauliWord, ops: &[PauliWord]) -> bool {
    ops.iter().all(|o| !o.anticommutes(w))
}

/// Completes a product of `core` checks into a central element using the
/// inter-chain checks in `pool`. Returns the chosen pool checks.
fn complete_with(core: &[usize], pool: &[usize], ops: &[PauliWord]) -> Option<Vec<usize>> {
    let n2 = ops[0].n_qubits() * 2;
    let mut core_op = PauliWord::identity(n2 / 2);
    for &c in core {
        core_op.mul_assign(&ops[c]);
    }
    let rhs = BitVec::from_bools(&ops.iter().map(|o| o.anticommutes(&core_op)).collect::<Vec<_>>());
    if rhs.is_zero() {
        return Some(Vec::new());
    }
    // columns: pool checks; rows: every check
    let mut m = F2Matrix::zeros(ops.len(), pool.len());
    for (j, &p) in pool.iter().enumerate() {
        for (i, o) in ops.iter().enumerate() {
            if o.anticommutes(&ops[p]) {
                m.set(i, j, true);
            }
        }
    }
    let sol = f2_solve(&m, &rhs)?;
    Some(sol.iter_ones().map(|j| pool[j]).collect())
}

fn candidate(
    diagram: &InteractionDiagram,
    ops: &[PauliWord],
    checks: Vec<usize>,
    host: CellHost,
    class: CellClass,
) -> Option<(PauliWord, Vec<usize>, CellHost, CellClass)> {
    let w = ordered_product(diagram, &checks);
    if w.is_identity() || !w.is_hermitian() || !commutes_with_all(&w, ops) {
        return None;
    }
    Some((w, checks, host, class))
}

fn inter_chain_pool(diagram: &InteractionDiagram, core: &[usize]) -> Vec<usize> {
    let edges: BTreeSet<usize> = core
        .iter()
        .flat_map(|&c| diagram.checks[c].qubits)
        .filter_map(|q| diagram.qubits[q].host_edge)
        .collect();
    diagram
        .checks
        .iter()
        .filter(|c| matches!(c.site, CheckSite::Edge(e) if edges.contains(&e)))
        .map(|c| c.id)
        .collect()
}

fn cored_candidate(
    diagram: &InteractionDiagram,
    ops: &[PauliWord],
    core: Vec<usize>,
    host: CellHost,
    class: CellClass,
) -> Option<(PauliWord, Vec<usize>, CellHost, CellClass)> {
    let pool = inter_chain_pool(diagram, &core);
    let extra = complete_with(&core, &pool, ops)?;
    let mut checks = core;
    checks.extend(extra);
    candidate(diagram, ops, checks, host, class)
}

fn cell_candidates(diagram: &InteractionDiagram, ops: &[PauliWord]) -> Vec<(PauliWord, Vec<usize>, CellHost, CellClass)> {
    let mut out = Vec::new();
    match diagram.placement {
        Placement::Plaquettes | Placement::Vertices => {
            let chain_class = if diagram.placement == Placement::Plaquettes {
                CellClass::Red
            } else {
                CellClass::Vertex
            };
            for chain in 0..diagram.chains.len() {
                out.extend(candidate(diagram, ops, diagram.chain_checks(chain), CellHost::Chain(chain), chain_class));
            }
            let mut by_site: BTreeMap<(u8, usize), Vec<usize>> = BTreeMap::new();
            for c in diagram.checks.iter().filter(|c| c.color.is_inner()) {
                match c.site {
                    CheckSite::Vertex(v) => by_site.entry((0, v)).or_default().push(c.id),
                    CheckSite::Face(f) => by_site.entry((1, f)).or_default().push(c.id),
                    _ => {}
                }
            }
            if diagram.placement == Placement::Plaquettes {
                for (&(kind, v), core) in &by_site {
                    if kind != 0 {
                        continue;
                    }
                    let class = match diagram.checks[core[0]].color {
                        CheckColor::Green => CellClass::Green,
                        _ => CellClass::Blue,
                    };
                    out.extend(cored_candidate(diagram, ops, core.clone(), CellHost::Vertex(v), class));
                }
            } else if diagram.cells.is_empty() {
                for (&(kind, f), core) in &by_site {
                    if kind != 1 {
                        continue;
                    }
                    let class = match diagram.checks[core[0]].color {
                        CheckColor::Green => CellClass::Green,
                        _ => CellClass::Blue,
                    };
                    out.extend(cored_candidate(diagram, ops, core.clone(), CellHost::Face(f), class));
                }
            } else {
                for (cube, faces) in diagram.cells.iter().enumerate() {
                    let core: Vec<usize> = faces
                        .iter()
                        .flat_map(|&f| by_site.get(&(1, f)).cloned().unwrap_or_default())
                        .collect();
                    out.extend(cored_candidate(diagram, ops, core, CellHost::Cube(cube), CellClass::Cube));
                }
            }
        }
        Placement::BaconShor => {
            let side = (diagram.n_qubits() as f64).sqrt().round() as usize;
            for col in 0..side - 1 {
                let checks: Vec<usize> = diagram
                    .checks_of_color(CheckColor::Red)
                    .filter(|c| c.qubits[0] % side == col)
                    .map(|c| c.id)
                    .collect();
                out.extend(candidate(diagram, ops, checks, CellHost::Columns(col), CellClass::Red));
            }
            for row in 0..side - 1 {
                let checks: Vec<usize> = diagram
                    .checks_of_color(CheckColor::Green)
                    .filter(|c| c.qubits[0] / side == row)
                    .map(|c| c.id)
                    .collect();
                out.extend(candidate(diagram, ops, checks, CellHost::Rows(row), CellClass::Green));
            }
        }
    }
    out
}

/// Steady elements: labelled cell operators plus any center elements they
/// fail to generate.
pub fn compute_ssg(diagram: &InteractionDiagram) -> Vec<SsgElement> {
    let ops = diagram.check_operators();
    let mut span = SpanBasis::new(2 * diagram.n_qubits());
    let mut elements = Vec::new();
    let mut push = |w: PauliWord, checks: Vec<usize>, host, class, span: &mut SpanBasis| {
        span.insert(w.to_symplectic());
        let sign = w.sign();
        elements.push(SsgElement {
            id: elements.len(),
            operator: w.unsigned(),
            sign,
            checks,
            host,
            class,
        });
    };
    let mut seen = BTreeSet::new();
    for (w, checks, host, class) in cell_candidates(diagram, &ops) {
        if seen.insert(w.to_symplectic()) {
            push(w, checks, host, class, &mut span);
        }
    }
    for combo in center_combinations(diagram) {
        let checks: Vec<usize> = combo.iter_ones().collect();
        let w = ordered_product(diagram, &checks);
        if w.is_identity() || span.contains(&w.to_symplectic()) {
            continue;
        }
        if !w.is_hermitian() {
            continue;
        }
        push(w, checks, CellHost::None, CellClass::Other, &mut span);
    }
    elements
}

/// Distinct operators a schedule measures: every check under each Pauli type
/// some round assigns to it, paired with the check id.
pub fn measured_operators(diagram: &InteractionDiagram, schedule: &Schedule) -> Vec<(usize, PauliWord)> {
    let n = diagram.n_qubits();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for round in &schedule.rounds {
        for c in diagram.checks.iter().filter(|c| round.selects(c.color)) {
            let w = c.operator(n, round.op_override);
            if seen.insert(w.to_symplectic()) {
                out.push((c.id, w));
            }
        }
    }
    out
}

/// Like [`compute_ssg`], but for the operators `schedule` actually measures.
/// Without type overrides this is the labelled cell decomposition; with them
/// the center is taken exactly and left unlabelled.
pub fn compute_ssg_for(diagram: &InteractionDiagram, schedule: &Schedule) -> Vec<SsgElement> {
    if schedule.rounds.iter().all(|r| r.op_override.is_none()) {
        return compute_ssg(diagram);
    }
    let measured = measured_operators(diagram, schedule);
    let ops: Vec<PauliWord> = measured.iter().map(|(_, w)| w.clone()).collect();
    let mut span = SpanBasis::new(2 * diagram.n_qubits());
    let mut elements = Vec::new();
    for combo in f2_nullspace(&commutation_matrix(&ops)) {
        let mut w = PauliWord::identity(diagram.n_qubits());
        for i in combo.iter_ones() {
            w.mul_assign(&ops[i]);
        }
        if w.is_identity() || !w.is_hermitian() || !span.insert(w.to_symplectic()) {
            continue;
        }
        elements.push(SsgElement {
            id: elements.len(),
            sign: w.sign(),
            operator: w.unsigned(),
            checks: combo.iter_ones().map(|i| measured[i].0).collect(),
            host: CellHost::None,
            class: CellClass::Other,
        });
    }
    elements
}

/// Center elements that also lie in the stabilizer group of `tableau`.
///
/// Cell operators always qualify; among the remaining center elements only
/// the combinations that the state actually stabilizes are kept. The rest
/// commute with every check but are never fixed by the routine.
pub fn restrict_to_group(diagram: &InteractionDiagram, elements: Vec<SsgElement>, tableau: &Tableau) -> Vec<SsgElement> {
    let (mut kept, others): (Vec<_>, Vec<_>) = elements.into_iter().partition(|e| e.class != CellClass::Other);
    kept.retain(|e| tableau.contains(&e.operator));
    if !others.is_empty() {
        let witnesses = tableau.membership_witnesses();
        let mut m = F2Matrix::zeros(witnesses.len(), others.len());
        for (j, e) in others.iter().enumerate() {
            for (i, w) in witnesses.iter().enumerate() {
                if w.anticommutes(&e.operator) {
                    m.set(i, j, true);
                }
            }
        }
        for combo in f2_nullspace(&m) {
            let checks: Vec<usize> = combo.iter_ones().flat_map(|j| others[j].checks.clone()).collect();
            let mut w = PauliWord::identity(diagram.n_qubits());
            for j in combo.iter_ones() {
                w.mul_assign(&others[j].ordered_operator());
            }
            if w.is_identity() || !w.is_hermitian() {
                continue;
            }
            kept.push(SsgElement {
                id: 0,
                sign: w.sign(),
                operator: w.unsigned(),
                checks,
                host: CellHost::None,
                class: CellClass::Other,
            });
        }
    }
    for (id, e) in kept.iter_mut().enumerate() {
        e.id = id;
    }
    kept
}

/// Center elements outside the stabilizer group reached by `schedule`:
/// they commute with all checks yet are never fixed.
pub fn unfixed_center(diagram: &InteractionDiagram, schedule: &Schedule) -> Vec<SsgElement> {
    let tableau = warmed_up(diagram, schedule);
    compute_ssg_for(diagram, schedule)
        .into_iter()
        .filter(|e| !tableau.contains(&e.operator))
        .collect()
}

fn warmed_up(diagram: &InteractionDiagram, schedule: &Schedule) -> Tableau {
    let rounds = 3 * schedule.period();
    let trace = Simulation::new(diagram, schedule).forcing(true).track(Vec::new()).run(rounds);
    trace.tableau(rounds - 1).expect("round in range").clone()
}

/// Steady stabilizer group for a diagram measured by `schedule`: the part of
/// the check-group center that the routine stabilizes.
pub fn steady_group(diagram: &InteractionDiagram, schedule: &Schedule) -> Vec<SsgElement> {
    let tableau = warmed_up(diagram, schedule);
    restrict_to_group(diagram, compute_ssg_for(diagram, schedule), &tableau)
}

/// Number of independent steady generators.
pub fn ssg_rank(elements: &[SsgElement]) -> usize {
    let n = elements.first().map_or(0, |e| e.operator.n_qubits());
    SpanBasis::from_vectors(2 * n, elements.iter().map(|e| e.operator.to_symplectic()).collect::<Vec<_>>().iter()).rank()
}

/// The steady group seen as a classical code on the effective qubits of one
/// round.
#[derive(Clone, Debug, Serialize)]
pub struct ClassicalCodeReport {
    pub round: usize,
    pub n_effective: usize,
    /// Non-trivial images of the steady elements.
    pub generators: Vec<PauliWord>,
    pub rank: usize,
    /// Single-qubit error types that every effective qubit detects.
    pub detects: Vec<Pauli>,
    /// Effective qubits whose single-qubit errors of a given type go unseen.
    pub undetected: Vec<(Pauli, Vec<usize>)>,
    /// The group is exactly the even-weight strings of one Pauli type.
    pub repetition: Option<Pauli>,
}

impl ClassicalCodeReport {
    pub fn passed(&self) -> bool {
        !self.detects.is_empty()
    }
}

/// Quotients by the checks measured in `round` and checks that the steady
/// group, mapped to the effective qubits, detects single-qubit errors.
pub fn ssg_classical_code_check(diagram: &InteractionDiagram, schedule: &Schedule, round: usize) -> Result<ClassicalCodeReport> {
    let map = EffectiveMap::for_round(diagram, schedule, round)?;
    let m = map.n_effective();
    let mut generators = Vec::new();
    for e in steady_group(diagram, schedule) {
        let w = map.map(&e.operator)?;
        if !w.is_identity() {
            generators.push(w);
        }
    }
    let span = SpanBasis::from_vectors(2 * m, generators.iter().map(|g| g.to_symplectic()).collect::<Vec<_>>().iter());
    let mut detects = Vec::new();
    let mut undetected = Vec::new();
    for p in [Pauli::X, Pauli::Y, Pauli::Z] {
        let missed: Vec<usize> = (0..m)
            .filter(|&q| {
                let err = PauliWord::single(m, q, p);
                generators.iter().all(|g| !g.anticommutes(&err))
            })
            .collect();
        if missed.is_empty() {
            detects.push(p);
        } else {
            undetected.push((p, missed));
        }
    }
    let repetition = [Pauli::X, Pauli::Z].into_iter().find(|&p| {
        let pairs: Vec<BitVec> = (1..m).map(|q| PauliWord::uniform(m, [0, q], p).to_symplectic()).collect();
        m > 1 && span.same_span(&SpanBasis::from_vectors(2 * m, pairs.iter()))
    });
    Ok(ClassicalCodeReport {
        round,
        n_effective: m,
        rank: span.rank(),
        generators,
        detects,
        undetected,
        repetition,
    })
}

/// Products of three green checks meeting at a vertex in one octant,
/// completed by ZZ pairs on the three edges they share.
pub fn triangular_green_operators(diagram: &InteractionDiagram) -> Vec<PauliWord> {
    let n = diagram.n_qubits();
    let mut by_vertex: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in diagram.checks_of_color(CheckColor::Green) {
        if let CheckSite::Vertex(v) = c.site {
            by_vertex.entry(v).or_default().push(c.id);
        }
    }
    let edge_of = |q: usize| diagram.qubits[q].host_edge.expect("chain qubit");
    let mut out = Vec::new();
    for checks in by_vertex.values() {
        for (a_i, &a) in checks.iter().enumerate() {
            for (b_i, &b) in checks.iter().enumerate().skip(a_i + 1) {
                for &c in &checks[b_i + 1..] {
                    let trio = [a, b, c];
                    let mut per_edge: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                    for &k in &trio {
                        for &q in &diagram.checks[k].qubits {
                            per_edge.entry(edge_of(q)).or_default().push(q);
                        }
                    }
                    if per_edge.len() != 3 || per_edge.values().any(|qs| qs.len() != 2) {
                        continue;
                    }
                    let mut w = PauliWord::identity(n);
                    for &k in &trio {
                        w.mul_assign(&diagram.check_operator(k, None));
                    }
                    for qs in per_edge.values() {
                        w.mul_assign(&PauliWord::uniform(n, qs.iter().copied(), Pauli::Z));
                    }
                    out.push(w);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_hypercubic, two_color_vertices};
    use crate::schedule::builtin_schedule;
    use crate::weave::{build_bacon_shor, place_chains_around_vertices, place_chains_on_plaquettes};

    fn plaquettes(dim: usize, l: usize) -> InteractionDiagram {
        let cc = build_hypercubic(dim, l).unwrap();
        let col = two_color_vertices(&cc).unwrap();
        place_chains_on_plaquettes(&cc, &col).unwrap()
    }

    fn class_counts(elements: &[SsgElement]) -> BTreeMap<CellClass, usize> {
        let mut m = BTreeMap::new();
        for e in elements {
            *m.entry(e.class).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn square_torus_cells() {
        let d = plaquettes(2, 4);
        let ssg = compute_ssg(&d);
        let counts = class_counts(&ssg);
        assert_eq!(counts.get(&CellClass::Green), Some(&8));
        assert_eq!(counts.get(&CellClass::Blue), Some(&8));
        assert_eq!(counts.get(&CellClass::Red), Some(&16));
        assert_eq!(counts.get(&CellClass::Other), Some(&2));
        assert_eq!(ssg_rank(&ssg), center_basis(&d).rank());
    }

    #[test]
    fn steady_ranks() {
        let cases = [
            (plaquettes(2, 4), "toric2d-3step", 31, 2),
            (plaquettes(3, 2), "toric-nd-6step", 31, 3),
            (place_chains_around_vertices(&build_hypercubic(3, 2).unwrap()).unwrap(), "xcube-6step", 28, 9),
            (build_bacon_shor(3).unwrap(), "baconshor-2step", 6, 0),
        ];
        for (d, name, rank, unfixed) in cases {
            let sched = builtin_schedule(name).unwrap();
            let steady = steady_group(&d, &sched);
            assert_eq!(ssg_rank(&steady), rank, "{name}");
            assert_eq!(unfixed_center(&d, &sched).len(), unfixed, "{name}");
            assert!(steady.iter().all(|e| e.class != CellClass::Other), "{name}");
        }
    }

    #[test]
    fn steady_elements_stay_stabilized() {
        let d = plaquettes(3, 2);
        let sched = builtin_schedule("toric-nd-6step").unwrap();
        let steady = steady_group(&d, &sched);
        let trace = Simulation::new(&d, &sched).seed(3).track(Vec::new()).run(30);
        for t in 18..30 {
            let tab = trace.tableau(t).unwrap();
            assert!(steady.iter().all(|e| tab.contains(&e.operator)), "round {t}");
        }
    }

    #[test]
    fn elements_commute_with_every_check() {
        for d in [plaquettes(2, 4), plaquettes(3, 2), build_bacon_shor(3).unwrap()] {
            let ops = d.check_operators();
            for e in compute_ssg(&d) {
                assert!(commutes_with_all(&e.operator, &ops));
                assert_eq!(ordered_product(&d, &e.checks), e.ordered_operator());
            }
        }
    }

    #[test]
    fn cubic_torus_octahedra_and_chains() {
        let d = plaquettes(3, 2);
        let ssg = compute_ssg(&d);
        let counts = class_counts(&ssg);
        assert_eq!(counts.get(&CellClass::Red), Some(&24));
        assert_eq!(counts.get(&CellClass::Green), Some(&4));
        assert_eq!(counts.get(&CellClass::Blue), Some(&4));
        assert_eq!(ssg_rank(&ssg), center_basis(&d).rank());
    }

    #[test]
    fn xcube_vertex_and_cube_terms() {
        let d = place_chains_around_vertices(&build_hypercubic(3, 2).unwrap()).unwrap();
        let ssg = compute_ssg(&d);
        let counts = class_counts(&ssg);
        assert_eq!(counts.get(&CellClass::Vertex), Some(&24));
        assert_eq!(counts.get(&CellClass::Cube), Some(&8));
        assert_eq!(ssg_rank(&ssg), center_basis(&d).rank());
    }

    #[test]
    fn bacon_shor_center_has_column_pairs() {
        let d = build_bacon_shor(3).unwrap();
        let ssg = compute_ssg(&d);
        let cols: Vec<_> = ssg.iter().filter(|e| matches!(e.host, CellHost::Columns(_))).collect();
        assert_eq!(cols.len(), 3);
        let expected = PauliWord::uniform(16, (0..4).flat_map(|r| [r * 4, r * 4 + 1]), Pauli::Z);
        assert_eq!(cols[0].operator, expected);
        assert_eq!(ssg_rank(&ssg), center_basis(&d).rank());
    }

    #[test]
    fn bacon_shor_rounds_are_repetition_codes() {
        let d = build_bacon_shor(3).unwrap();
        let sched = builtin_schedule("baconshor-2step").unwrap();
        let red = ssg_classical_code_check(&d, &sched, 0).unwrap();
        let green = ssg_classical_code_check(&d, &sched, 1).unwrap();
        for r in [&red, &green] {
            assert_eq!(r.n_effective, 4);
            assert_eq!(r.rank, 3);
            assert!(r.passed());
        }
        // effective X is the partner of the quotiented Pauli: physical X rows
        // after the red round, physical Z columns after the green one
        assert_eq!(red.repetition, Some(Pauli::X));
        assert_eq!(green.repetition, Some(Pauli::X));
        assert_eq!(EffectiveMap::for_round(&d, &sched, 1).unwrap().kind, Pauli::X);
    }

    #[test]
    fn square_torus_red_round_detects_everything() {
        let d = plaquettes(2, 4);
        let sched = builtin_schedule("toric2d-3step").unwrap();
        let report = ssg_classical_code_check(&d, &sched, 0).unwrap();
        assert_eq!(report.n_effective, 32);
        assert_eq!(report.detects, vec![Pauli::X, Pauli::Y, Pauli::Z]);
        assert_eq!(report.repetition, None);
    }

    #[test]
    fn triangular_operators_are_not_steady() {
        let d = plaquettes(3, 2);
        let tri = triangular_green_operators(&d);
        assert_eq!(tri.len(), 4 * 8);
        let center = center_basis(&d);
        let reds: Vec<_> = d.checks_of_color(CheckColor::Red).map(|c| d.check_operator(c.id, None)).collect();
        for t in &tri {
            assert!(!center.contains(&t.to_symplectic()));
            assert!(reds.iter().any(|r| r.anticommutes(t)));
        }
    }
}
