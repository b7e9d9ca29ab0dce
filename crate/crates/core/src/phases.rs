//! Effective codes seen at strong coupling, ground-state degeneracy, and
//! logical-operator tracking through a schedule.

use std::io::Write;

use serde::Serialize;

use crate::engine::Simulation;
use crate::error::{Error, Result};
use crate::f2::{f2_nullspace, f2_solve, BitVec, F2Matrix, Pauli, PauliWord, SpanBasis};
use crate::lattice::CellComplex;
use crate::schedule::Schedule;
use crate::ssg::{compute_ssg, steady_group, CellClass, SsgElement};
use crate::weave::{CheckKind, InteractionDiagram};

/// Quotient by a set of same-type two-qubit checks.
///
/// Connected components of the check graph become effective qubits. A
/// single-qubit Pauli is written `σ^a τ^b`, with `σ` the checks' Pauli and
/// `τ` a fixed anticommuting partner; an operator commuting with the checks
/// has constant `b` on each component and maps to `X^b Z^(Σa mod 2)`.
#[derive(Clone, Debug)]
pub struct EffectiveMap {
    pub kind: Pauli,
    pub components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    /// Host edge shared by every qubit of a component, when there is one.
    pub host_edges: Vec<Option<usize>>,
}

fn partner(kind: Pauli) -> Pauli {
    match kind {
        Pauli::Z => Pauli::X,
        Pauli::X => Pauli::Z,
        Pauli::Y => Pauli::X,
        Pauli::I => unreachable!("checks are never the identity"),
    }
}

/// Exponents `(a, b)` with `p ∝ σ^a τ^b`.
fn split(p: Pauli, sigma: Pauli, tau: Pauli) -> (bool, bool) {
    if p == Pauli::I {
        (false, false)
    } else if p == sigma {
        (true, false)
    } else if p == tau {
        (false, true)
    } else {
        (true, true)
    }
}

impl EffectiveMap {
    /// Quotient by the given checks measured as `kind` (their own type when
    /// `None`); all of them must share one type.
    pub fn new(diagram: &InteractionDiagram, checks: &[usize], kind: Option<CheckKind>) -> Result<Self> {
        let kinds: Vec<CheckKind> = checks.iter().map(|&c| kind.unwrap_or(diagram.checks[c].kind)).collect();
        if kinds.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::InvalidSchedule("quotient needs checks of a single operator type".into()));
        }
        let sigma = kinds.first().map_or(Pauli::Z, |k| k.pauli());
        let n = diagram.n_qubits();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                p[r] = p[p[r]];
                r = p[r];
            }
            r
        }
        for &c in checks {
            let [a, b] = diagram.checks[c].qubits;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut component_of = vec![usize::MAX; n];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for q in 0..n {
            let r = find(&mut parent, q);
            if component_of[r] == usize::MAX {
                component_of[r] = components.len();
                components.push(Vec::new());
            }
            component_of[q] = component_of[r];
            components[component_of[q]].push(q);
        }
        let host_edges = components
            .iter()
            .map(|qs| {
                let e = diagram.qubits[qs[0]].host_edge;
                qs.iter().all(|&q| diagram.qubits[q].host_edge == e).then_some(e).flatten()
            })
            .collect();
        Ok(EffectiveMap {
            kind: sigma,
            components,
            component_of,
            host_edges,
        })
    }

    /// Quotient by the checks measured in `round` of `schedule`.
    pub fn for_round(diagram: &InteractionDiagram, schedule: &Schedule, round: usize) -> Result<Self> {
        let r = schedule.round(round);
        let checks: Vec<usize> = diagram.checks.iter().filter(|c| r.selects(c.color)).map(|c| c.id).collect();
        Self::new(diagram, &checks, r.op_override)
    }

    pub fn n_effective(&self) -> usize {
        self.components.len()
    }

    /// Effective operator on components; fails when `w` does not commute
    /// with the quotiented checks.
    pub fn map(&self, w: &PauliWord) -> Result<PauliWord> {
        let tau = partner(self.kind);
        let mut out = PauliWord::identity(self.components.len());
        for (c, qs) in self.components.iter().enumerate() {
            let mut a_parity = false;
            let mut b = None;
            for &q in qs {
                let (a, bq) = split(w.get(q), self.kind, tau);
                a_parity ^= a;
                match b {
                    None => b = Some(bq),
                    Some(prev) if prev != bq => {
                        return Err(Error::LogicalPrecondition(format!(
                            "operator does not commute with the couplings of component {c}"
                        )))
                    }
                    _ => {}
                }
            }
            out.set(c, Pauli::from_bits(b.unwrap_or(false), a_parity));
        }
        Ok(out)
    }

    /// Effective operator relabelled by host edge (`n_edges` qubits).
    pub fn map_to_edges(&self, w: &PauliWord, n_edges: usize) -> Result<PauliWord> {
        let eff = self.map(w)?;
        let mut out = PauliWord::identity(n_edges);
        for (c, e) in self.host_edges.iter().enumerate() {
            let e = e.ok_or(Error::DisconnectedEdgeGroup(c))?;
            if out.get(e) != Pauli::I && eff.get(c) != Pauli::I {
                return Err(Error::DisconnectedEdgeGroup(e));
            }
            if eff.get(c) != Pauli::I {
                out.set(e, eff.get(c));
            }
        }
        Ok(out)
    }

    /// Checks that every host edge is one component.
    pub fn check_edges_connected(&self, n_edges: usize) -> Result<()> {
        let mut count = vec![0usize; n_edges];
        for e in self.host_edges.iter() {
            match e {
                Some(e) => count[*e] += 1,
                None => return Err(Error::DisconnectedEdgeGroup(usize::MAX)),
            }
        }
        if let Some(e) = count.iter().position(|&k| k != 1) {
            return Err(Error::DisconnectedEdgeGroup(e));
        }
        Ok(())
    }

    /// Physical representative of effective `X` on component `c`.
    pub fn effective_x(&self, c: usize, n_qubits: usize) -> PauliWord {
        PauliWord::uniform(n_qubits, self.components[c].iter().copied(), partner(self.kind))
    }

    /// Physical representative of effective `Z` on component `c`.
    pub fn effective_z(&self, c: usize, n_qubits: usize) -> PauliWord {
        PauliWord::single(n_qubits, self.components[c][0], self.kind)
    }

    pub fn component_of(&self, q: usize) -> usize {
        self.component_of[q]
    }
}

/// Steady elements mapped through the quotient of `round`, on host edges.
pub fn effective_group(diagram: &InteractionDiagram, schedule: &Schedule, round: usize) -> Result<Vec<PauliWord>> {
    let map = EffectiveMap::for_round(diagram, schedule, round)?;
    map.check_edges_connected(diagram.n_edges)?;
    steady_group(diagram, schedule)
        .iter()
        .map(|e| map.map_to_edges(&e.operator, diagram.n_edges))
        .filter(|w| !matches!(w, Ok(w) if w.is_identity()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceCode {
    pub name: String,
    pub n_qubits: usize,
    pub stabilizers: Vec<PauliWord>,
}

/// Toric code with qubits on edges: `X` on the edges at each vertex and `Z`
/// on the boundary of each face.
pub fn toric_code(cc: &CellComplex) -> ReferenceCode {
    let n = cc.n_edges();
    let mut stabilizers: Vec<PauliWord> = (0..cc.n_vertices())
        .map(|v| PauliWord::uniform(n, cc.edges_of_vertex(v).iter().copied(), Pauli::X))
        .collect();
    stabilizers.extend(cc.faces().iter().map(|f| PauliWord::uniform(n, f.edges().iter().copied(), Pauli::Z)));
    let dim = cc.hypercube().map_or(0, |h| h.dim);
    ReferenceCode {
        name: format!("toric-({dim},1)"),
        n_qubits: n,
        stabilizers,
    }
}

/// X-cube model on a hypercubic torus: `Z` on the four edges at a vertex in
/// each axis plane, `X` on all edges of each unit cell.
pub fn xcube_code(cc: &CellComplex) -> Result<ReferenceCode> {
    let h = cc
        .hypercube()
        .ok_or_else(|| Error::NotLocallyCubic("X-cube reference needs a hypercubic lattice".into()))?;
    let n = cc.n_edges();
    let mut stabilizers = Vec::new();
    for v in 0..h.n_vertices() {
        for (i, j) in h.pairs() {
            let edges = [h.edge(v, i), h.edge(h.step(v, i, false), i), h.edge(v, j), h.edge(h.step(v, j, false), j)];
            stabilizers.push(PauliWord::uniform(n, edges, Pauli::Z));
        }
    }
    for v in 0..h.n_vertices() {
        stabilizers.push(PauliWord::uniform(n, h.cell_edges(v), Pauli::X));
    }
    Ok(ReferenceCode {
        name: format!("xcube-{}", h.dim),
        n_qubits: n,
        stabilizers,
    })
}

/// `log2` of the ground-state degeneracy: qubits minus independent
/// generators.
pub fn gsd(stabilizers: &[PauliWord], n_qubits: usize) -> Result<usize> {
    for (i, a) in stabilizers.iter().enumerate() {
        if a.n_qubits() != n_qubits {
            return Err(Error::LengthMismatch {
                left: a.n_qubits(),
                right: n_qubits,
            });
        }
        if let Some(j) = stabilizers[i + 1..].iter().position(|b| a.anticommutes(b)) {
            return Err(Error::NonCommuting(i, i + 1 + j));
        }
    }
    let basis = SpanBasis::from_vectors(2 * n_qubits, stabilizers.iter().map(|s| s.to_symplectic()).collect::<Vec<_>>().iter());
    Ok(n_qubits - basis.rank())
}

/// True when both sets generate the same group up to signs.
pub fn same_group(a: &[PauliWord], b: &[PauliWord]) -> bool {
    let dim = 2 * a.first().or(b.first()).map_or(0, |w| w.n_qubits());
    let sa = SpanBasis::from_vectors(dim, a.iter().map(|w| w.to_symplectic()).collect::<Vec<_>>().iter());
    let sb = SpanBasis::from_vectors(dim, b.iter().map(|w| w.to_symplectic()).collect::<Vec<_>>().iter());
    sa.same_span(&sb)
}

/// Effective steady group at `round` versus a reference code.
pub fn verify_phase(diagram: &InteractionDiagram, schedule: &Schedule, round: usize, reference: &ReferenceCode) -> Result<bool> {
    let eff = effective_group(diagram, schedule, round)?;
    if reference.n_qubits != diagram.n_edges {
        return Ok(false);
    }
    Ok(same_group(&eff, &reference.stabilizers))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Toric,
    Xcube,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "toric" => Ok(Family::Toric),
            "xcube" | "x-cube" => Ok(Family::Xcube),
            other => Err(Error::Parse(format!("unknown code family `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GsdRow {
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub log2_gsd: usize,
}

pub fn reference_code(family: Family, n: usize, l: usize) -> Result<ReferenceCode> {
    let cc = crate::lattice::build_hypercubic(n, l)?;
    match family {
        Family::Toric => Ok(toric_code(&cc)),
        Family::Xcube => xcube_code(&cc),
    }
}

/// `log2 GSD` of the reference code for each size, computed in parallel.
pub fn gsd_sweep(family: Family, n: usize, sizes: &[usize]) -> Result<Vec<GsdRow>> {
    use rayon::prelude::*;
    sizes
        .par_iter()
        .map(|&l| {
            let code = reference_code(family, n, l)?;
            Ok(GsdRow {
                n,
                l,
                log2_gsd: gsd(&code.stabilizers, code.n_qubits)?,
            })
        })
        .collect()
}

pub fn write_gsd_csv(rows: &[GsdRow], mut out: impl Write) -> Result<()> {
    writeln!(out, "n,L,log2_gsd")?;
    for r in rows {
        writeln!(out, "{},{},{}", r.n, r.l, r.log2_gsd)?;
    }
    Ok(())
}

/// Leading coefficient of the degree-`degree` polynomial through values at
/// consecutive sizes, from the `degree`-th finite difference. Also reports
/// whether all higher differences vanish.
pub fn leading_coefficient(values: &[i64], degree: usize) -> Option<(f64, bool)> {
    if values.len() <= degree {
        return None;
    }
    let mut diffs = values.to_vec();
    for _ in 0..degree {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let factorial: i64 = (1..=degree as i64).product();
    let exact = diffs.windows(2).all(|w| w[0] == w[1]);
    Some((diffs[0] as f64 / factorial as f64, exact))
}

/// Why tracking stopped early.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collapse {
    pub round: usize,
    /// Measured checks the representative anticommuted with.
    pub checks: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LogicalTrack {
    pub initial: PauliWord,
    /// Representative after each tracked round; entry 0 is the initial one.
    pub history: Vec<PauliWord>,
    pub collapse: Option<Collapse>,
    /// Final representative equals the initial one as a Pauli word.
    pub returns_exactly: bool,
    /// Final and initial representatives differ by a stabilizer.
    pub returns_up_to_isg: bool,
}

fn commutes_with_all(w: &PauliWord, ops: &[PauliWord]) -> bool {
    ops.iter().all(|o| !o.anticommutes(w))
}

/// Multiplies `w` by a product of `gens` so that it commutes with every
/// operator in `ops`, choosing a low-weight result. `None` when no product
/// works.
fn restore(w: &PauliWord, ops: &[PauliWord], gens: &[PauliWord]) -> Option<PauliWord> {
    let mut m = F2Matrix::zeros(ops.len(), gens.len());
    let mut rhs = BitVec::zeros(ops.len());
    for (i, o) in ops.iter().enumerate() {
        rhs.set(i, o.anticommutes(w));
        for (k, g) in gens.iter().enumerate() {
            if o.anticommutes(g) {
                m.set(i, k, true);
            }
        }
    }
    let x = f2_solve(&m, &rhs)?;
    let kernel = f2_nullspace(&m);
    Some(minimize_weight(&w.unsigned(), gens, &x, &kernel).unsigned())
}

/// Greedily multiplies by commuting operators that were just measured while
/// that lowers the weight.
fn simplify(mut w: PauliWord, measured: &[PauliWord]) -> PauliWord {
    loop {
        let better = measured.iter().map(|m| &w * m).filter(|c| c.weight() < w.weight()).min_by_key(|c| c.weight());
        match better {
            Some(c) => w = c.unsigned(),
            None => return w,
        }
    }
}

/// Among `base · ∏ gens^x` for `x` in `particular + span(kernel)`, greedily
/// lowers the weight one kernel vector at a time.
fn minimize_weight(base: &PauliWord, gens: &[PauliWord], particular: &BitVec, kernel: &[BitVec]) -> PauliWord {
    let apply = |x: &BitVec| {
        let mut w = base.clone();
        for k in x.iter_ones() {
            w.mul_assign(&gens[k]);
        }
        w
    };
    let mut x = particular.clone();
    let mut best = apply(&x);
    loop {
        let mut improved = false;
        for k in kernel {
            let cand = x.xor(k);
            let w = apply(&cand);
            if w.weight() < best.weight() {
                x = cand;
                best = w;
                improved = true;
            }
        }
        if !improved {
            return best;
        }
    }
}

/// Follows a logical representative through `n_rounds` rounds of a fresh
/// run, multiplying by stabilizers whenever a measured check would otherwise
/// disturb it. The initial operator is taken to hold right after round 0.
///
/// Restoring products come from the previous round's checks when possible
/// and from the whole stabilizer group otherwise. If neither works the
/// measurement randomizes the logical and tracking stops.
pub fn track_logical(diagram: &InteractionDiagram, schedule: &Schedule, initial: &PauliWord, n_rounds: usize) -> Result<LogicalTrack> {
    let n = diagram.n_qubits();
    let round_ops = |t: usize| -> Vec<(usize, PauliWord)> {
        let r = schedule.round(t);
        diagram
            .checks
            .iter()
            .filter(|c| r.selects(c.color))
            .map(|c| (c.id, c.operator(n, r.op_override)))
            .collect()
    };

    let first: Vec<PauliWord> = round_ops(0).into_iter().map(|(_, o)| o).collect();
    if !commutes_with_all(initial, &first) {
        return Err(Error::LogicalPrecondition("initial operator anticommutes with a first-round check".into()));
    }
    let cells: Vec<SsgElement> = compute_ssg(diagram).into_iter().filter(|e| e.class != CellClass::Other).collect();
    if let Some(e) = cells.iter().find(|e| e.operator.anticommutes(initial)) {
        return Err(Error::LogicalPrecondition(format!("initial operator anticommutes with steady element {}", e.id)));
    }
    let all_checks = SpanBasis::from_vectors(2 * n, diagram.check_operators().iter().map(|o| o.to_symplectic()).collect::<Vec<_>>().iter());
    if all_checks.contains(&initial.to_symplectic()) {
        return Err(Error::LogicalPrecondition("initial operator is a product of checks".into()));
    }

    let trace = Simulation::new(diagram, schedule).forcing(true).track(Vec::new()).run(n_rounds + 1);
    let mut current = initial.clone();
    let mut history = vec![current.clone()];
    let mut collapse = None;
    for t in 1..=n_rounds {
        let ops = round_ops(t);
        let bad: Vec<usize> = ops.iter().filter(|(_, o)| o.anticommutes(&current)).map(|(c, _)| *c).collect();
        if !bad.is_empty() {
            let previous: Vec<PauliWord> = round_ops(t - 1).into_iter().map(|(_, o)| o).collect();
            let ops: Vec<PauliWord> = ops.into_iter().map(|(_, o)| o).collect();
            let gens = trace.isg(t - 1)?;
            match restore(&current, &ops, &previous).or_else(|| restore(&current, &ops, gens)) {
                Some(w) => current = simplify(w, &ops),
                None => {
                    collapse = Some(Collapse { round: t, checks: bad });
                    history.push(current.clone());
                    break;
                }
            }
        }
        history.push(current.clone());
    }
    let last = history.last().expect("history starts with the initial operator");
    let returns_exactly = collapse.is_none() && last.unsigned() == initial.unsigned();
    let final_round = history.len() - 1;
    let returns_up_to_isg = collapse.is_none() && trace.tableau(final_round)?.contains(&(last * initial));
    Ok(LogicalTrack {
        initial: initial.clone(),
        history,
        collapse,
        returns_exactly,
        returns_up_to_isg,
    })
}

/// `Z` on one chain qubit per `x`-edge along the line `y = z = 0`, taking
/// the qubit of the `xy` face based at each vertex.
pub fn line_logical(diagram: &InteractionDiagram, cc: &CellComplex) -> Result<PauliWord> {
    let h = cc
        .hypercube()
        .ok_or_else(|| Error::LogicalPrecondition("line logical needs a hypercubic lattice".into()))?;
    let mut qubits = Vec::new();
    for k in 0..h.size {
        let mut coords = vec![0; h.dim];
        coords[0] = k;
        let v = h.vertex(&coords);
        let face = h.face(v, 0, 1);
        let edge = h.edge(v, 0);
        let q = diagram
            .qubits
            .iter()
            .find(|q| q.host_edge == Some(edge) && matches!(q.chain.map(|c| diagram.chains[c].host), Some(crate::weave::ChainHost::Face(f)) if f == face))
            .ok_or_else(|| Error::LogicalPrecondition("diagram has no plaquette chains".into()))?;
        qubits.push(q.id);
    }
    Ok(PauliWord::uniform(diagram.n_qubits(), qubits, Pauli::Z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_hypercubic, two_color_vertices};
    use crate::schedule::builtin_schedule;
    use crate::weave::place_chains_on_plaquettes;

    #[test]
    fn gsd_examples() {
        let t2 = reference_code(Family::Toric, 2, 4).unwrap();
        assert_eq!(gsd(&t2.stabilizers, t2.n_qubits).unwrap(), 2);
        let t3 = reference_code(Family::Toric, 3, 2).unwrap();
        assert_eq!(gsd(&t3.stabilizers, t3.n_qubits).unwrap(), 3);
        let x3 = reference_code(Family::Xcube, 3, 3).unwrap();
        assert_eq!(gsd(&x3.stabilizers, x3.n_qubits).unwrap(), 15);
    }

    #[test]
    fn gsd_rejects_non_commuting_input() {
        let x: PauliWord = "XI".parse().unwrap();
        let z: PauliWord = "ZI".parse().unwrap();
        assert!(matches!(gsd(&[x, z], 2), Err(Error::NonCommuting(0, 1))));
    }

    #[test]
    fn reference_codes_commute() {
        for code in [reference_code(Family::Toric, 3, 3).unwrap(), reference_code(Family::Xcube, 3, 2).unwrap()] {
            for a in &code.stabilizers {
                assert!(commutes_with_all(a, &code.stabilizers));
            }
        }
    }

    #[test]
    fn leading_coefficient_of_quadratic() {
        let vals: Vec<i64> = (2..5).map(|l| 3 * l * l - 2 * l + 7).collect();
        assert_eq!(leading_coefficient(&vals, 2), Some((3.0, true)));
        assert_eq!(leading_coefficient(&[9, 15, 21], 1), Some((6.0, true)));
    }

    #[test]
    fn effective_pair_algebra() {
        let cc = build_hypercubic(3, 2).unwrap();
        let d = place_chains_on_plaquettes(&cc, &two_color_vertices(&cc).unwrap()).unwrap();
        let sched = builtin_schedule("toric-nd-6step").unwrap();
        let map = EffectiveMap::for_round(&d, &sched, 0).unwrap();
        map.check_edges_connected(cc.n_edges()).unwrap();
        let n = d.n_qubits();
        for a in 0..map.n_effective() {
            for b in [0, 5, a] {
                let anti = map.effective_x(a, n).anticommutes(&map.effective_z(b, n));
                assert_eq!(anti, a == b);
            }
            let x = map.map(&map.effective_x(a, n)).unwrap();
            assert_eq!(x, PauliWord::single(map.n_effective(), a, Pauli::X));
        }
    }

    #[test]
    fn square_torus_is_toric_code() {
        let cc = build_hypercubic(2, 4).unwrap();
        let d = place_chains_on_plaquettes(&cc, &two_color_vertices(&cc).unwrap()).unwrap();
        let sched = builtin_schedule("toric2d-3step").unwrap();
        assert!(verify_phase(&d, &sched, 0, &toric_code(&cc)).unwrap());
    }

    fn cubic() -> (CellComplex, InteractionDiagram) {
        let cc = build_hypercubic(3, 2).unwrap();
        let d = place_chains_on_plaquettes(&cc, &two_color_vertices(&cc).unwrap()).unwrap();
        (cc, d)
    }

    #[test]
    fn cubic_torus_is_three_dimensional_toric_code() {
        let (cc, d) = cubic();
        let sched = builtin_schedule("toric-nd-6step").unwrap();
        assert!(verify_phase(&d, &sched, 0, &toric_code(&cc)).unwrap());
        assert!(!verify_phase(&d, &sched, 0, &xcube_code(&cc).unwrap()).unwrap());
    }

    #[test]
    fn vertex_placement_is_xcube() {
        let cc = build_hypercubic(3, 2).unwrap();
        let d = crate::weave::place_chains_around_vertices(&cc).unwrap();
        let sched = builtin_schedule("xcube-6step").unwrap();
        assert!(verify_phase(&d, &sched, 0, &xcube_code(&cc).unwrap()).unwrap());
    }

    #[test]
    fn diagram_and_effective_degeneracy_agree() {
        let (cc, d) = cubic();
        let sched = builtin_schedule("toric-nd-6step").unwrap();
        let trace = Simulation::new(&d, &sched).forcing(true).track(Vec::new()).run(13);
        let isg = trace.isg(12).unwrap();
        let code = toric_code(&cc);
        assert_eq!(gsd(isg, d.n_qubits()).unwrap(), gsd(&code.stabilizers, code.n_qubits).unwrap());
    }

    #[test]
    fn line_logical_returns_after_one_period() {
        let (cc, d) = cubic();
        let sched = builtin_schedule("toric-nd-6step").unwrap();
        let logical = line_logical(&d, &cc).unwrap();
        let track = track_logical(&d, &sched, &logical, 6).unwrap();
        assert_eq!(track.collapse, None);
        assert_eq!(track.history.len(), 7);
        assert!(track.returns_up_to_isg);
        assert!(track.returns_exactly, "{:?}", track.history);
        let changed_type = track.history[3].support().iter().any(|&q| track.history[3].get(q) != Pauli::Z);
        assert!(changed_type);
    }

    #[test]
    fn three_step_routine_collapses_the_logical() {
        use crate::schedule::Round;
        use crate::weave::CheckColor::*;
        let (cc, d) = cubic();
        let naive = Schedule::new("naive-3step", vec![Round::new(&[Red, Black]), Round::new(&[Green]), Round::new(&[Blue])]).unwrap();
        let logical = line_logical(&d, &cc).unwrap();
        let track = track_logical(&d, &naive, &logical, 6).unwrap();
        let collapse = track.collapse.expect("black checks randomize the logical");
        assert_eq!(collapse.round, 3);
        assert!(collapse.checks.iter().any(|&c| d.checks[c].color == Black));
    }

    #[test]
    fn steady_elements_are_never_rewritten() {
        let (_, d) = cubic();
        let sched = builtin_schedule("toric-nd-6step").unwrap();
        let e = steady_group(&d, &sched).into_iter().find(|e| e.class == crate::ssg::CellClass::Green).unwrap();
        let track = track_logical(&d, &sched, &e.operator, 6);
        // a steady element is a product of checks, so it fails the precondition
        assert!(matches!(track, Err(Error::LogicalPrecondition(_))));
    }
}
