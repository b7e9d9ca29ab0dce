//! Spin chains woven over a cell complex.
//!
//! Every chain is a closed XX/YY-alternating ring of qubits, one qubit per
//! host edge the chain crosses. Qubits that share a host edge are then
//! coupled by ZZ checks: a disjoint set marked red and a connecting path
//! marked black.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{Pauli, PauliWord};
use crate::lattice::{CellComplex, Cycle, VertexColor, VertexColoring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckColor {
    Green,
    Blue,
    Red,
    Black,
}

impl CheckColor {
    pub const ALL: [CheckColor; 4] = [CheckColor::Green, CheckColor::Blue, CheckColor::Red, CheckColor::Black];

    pub fn default_kind(self) -> CheckKind {
        match self {
            CheckColor::Green => CheckKind::XX,
            CheckColor::Blue => CheckKind::YY,
            CheckColor::Red | CheckColor::Black => CheckKind::ZZ,
        }
    }

    pub fn is_inner(self) -> bool {
        matches!(self, CheckColor::Green | CheckColor::Blue)
    }
}

impl From<VertexColor> for CheckColor {
    fn from(c: VertexColor) -> Self {
        match c {
            VertexColor::Green => CheckColor::Green,
            VertexColor::Blue => CheckColor::Blue,
        }
    }
}

impl std::str::FromStr for CheckColor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "green" | "g" => Ok(CheckColor::Green),
            "blue" | "b" => Ok(CheckColor::Blue),
            "red" | "r" => Ok(CheckColor::Red),
            "black" | "k" => Ok(CheckColor::Black),
            other => Err(Error::Parse(format!("unknown check color `{other}`"))),
        }
    }
}

/// Two-qubit operator type of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckKind {
    XX,
    YY,
    ZZ,
}

impl CheckKind {
    pub fn pauli(self) -> Pauli {
        match self {
            CheckKind::XX => Pauli::X,
            CheckKind::YY => Pauli::Y,
            CheckKind::ZZ => Pauli::Z,
        }
    }
}

/// What a chain winds around.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainHost {
    Face(usize),
    /// Ring around a vertex in the plane of two axes.
    Vertex { vertex: usize, axes: (usize, usize) },
    /// Compensating chain along an odd-parity edge loop.
    Loop(usize),
}

/// Where a check sits on the host lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckSite {
    Vertex(usize),
    Face(usize),
    Edge(usize),
    Grid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainQubit {
    pub id: usize,
    pub host_edge: Option<usize>,
    pub chain: Option<usize>,
    pub position: usize,
    /// Ordering key used when splitting an edge's couplings into layers.
    pub layer: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: usize,
    pub qubits: [usize; 2],
    pub color: CheckColor,
    pub kind: CheckKind,
    pub site: CheckSite,
}

impl Check {
    /// The check as a Pauli word, optionally with its operator type replaced.
    pub fn operator(&self, n_qubits: usize, kind: Option<CheckKind>) -> PauliWord {
        let p = kind.unwrap_or(self.kind).pauli();
        PauliWord::uniform(n_qubits, self.qubits, p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub id: usize,
    pub host: ChainHost,
    /// Qubits in ring order.
    pub qubits: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    Plaquettes,
    Vertices,
    BaconShor,
}

/// How each edge's inter-chain couplings are split into red and black.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RedBlackStrategy {
    /// Sort by `(layer, id)` so red pairs stay within one family of parallel
    /// slices.
    #[default]
    CouplingLayers,
    /// Pair qubits in id order, ignoring layers.
    Sequential,
}

/// Chains and their inner checks before inter-chain coupling.
#[derive(Clone, Debug)]
pub struct ChainLayout {
    placement: Placement,
    n_edges: usize,
    qubits: Vec<ChainQubit>,
    chains: Vec<Chain>,
    inner: Vec<Check>,
    cells: Vec<Vec<usize>>,
}

impl ChainLayout {
    fn new(placement: Placement, cc: &CellComplex) -> Self {
        ChainLayout {
            placement,
            n_edges: cc.n_edges(),
            qubits: Vec::new(),
            chains: Vec::new(),
            inner: Vec::new(),
            cells: cc.ncells().to_vec(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    /// Adds a ring crossing `edges` in order; `sites[k]` and `colors[k]`
    /// describe the inner check between positions `k` and `k + 1`.
    fn push_chain(&mut self, host: ChainHost, edges: &[usize], sites: &[CheckSite], colors: &[CheckColor], layer: usize) {
        let chain = self.chains.len();
        let first = self.qubits.len();
        for (position, &e) in edges.iter().enumerate() {
            self.qubits.push(ChainQubit {
                id: first + position,
                host_edge: Some(e),
                chain: Some(chain),
                position,
                layer,
            });
        }
        let m = edges.len();
        for k in 0..m {
            let color = colors[k];
            self.inner.push(Check {
                id: 0,
                qubits: [first + k, first + (k + 1) % m],
                color,
                kind: color.default_kind(),
                site: sites[k],
            });
        }
        self.chains.push(Chain {
            id: chain,
            host,
            qubits: (first..first + m).collect(),
        });
    }

    /// Qubits per host edge.
    pub fn edge_qubits(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_edges];
        for q in &self.qubits {
            if let Some(e) = q.host_edge {
                out[e].push(q.id);
            }
        }
        out
    }

    /// One extra ring per loop, one qubit per loop edge, with inner checks
    /// colored by the corner vertex.
    pub fn add_vertical_chains(mut self, loops: &[Cycle], coloring: &VertexColoring) -> Self {
        for (l, cycle) in loops.iter().enumerate() {
            let sites: Vec<CheckSite> = cycle.corners.iter().map(|&v| CheckSite::Vertex(v)).collect();
            let colors: Vec<CheckColor> = cycle.corners.iter().map(|&v| coloring.color(v).into()).collect();
            self.push_chain(ChainHost::Loop(l), &cycle.edges, &sites, &colors, usize::MAX);
        }
        self
    }

    /// Adds the red/black couplings and freezes the diagram.
    pub fn couple(self, strategy: RedBlackStrategy) -> Result<InteractionDiagram> {
        let edge_qubits = self.edge_qubits();
        let mut checks = self.inner;
        for (e, group) in edge_qubits.iter().enumerate() {
            if group.len() % 2 == 1 {
                return Err(Error::OddEdgeParity {
                    edge: e,
                    count: group.len(),
                });
            }
            let mut order = group.clone();
            match strategy {
                RedBlackStrategy::CouplingLayers => order.sort_by_key(|&q| (self.qubits[q].layer, q)),
                RedBlackStrategy::Sequential => order.sort_unstable(),
            }
            for k in 0..order.len() {
                if k + 1 == order.len() {
                    break;
                }
                let color = if k % 2 == 0 { CheckColor::Red } else { CheckColor::Black };
                checks.push(Check {
                    id: 0,
                    qubits: [order[k], order[k + 1]],
                    color,
                    kind: CheckKind::ZZ,
                    site: CheckSite::Edge(e),
                });
            }
        }
        for (id, c) in checks.iter_mut().enumerate() {
            c.id = id;
        }
        Ok(InteractionDiagram {
            placement: self.placement,
            n_edges: self.n_edges,
            qubits: self.qubits,
            chains: self.chains,
            checks,
            edge_qubits,
            strategy: Some(strategy),
            cells: self.cells,
        })
    }
}

/// Qubits, colored checks and chains derived from a lattice.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InteractionDiagram {
    pub placement: Placement,
    pub n_edges: usize,
    pub qubits: Vec<ChainQubit>,
    pub chains: Vec<Chain>,
    pub checks: Vec<Check>,
    pub edge_qubits: Vec<Vec<usize>>,
    pub strategy: Option<RedBlackStrategy>,
    /// Top cells of the host lattice as face lists.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<Vec<usize>>,
}

impl InteractionDiagram {
    pub fn n_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn n_checks(&self) -> usize {
        self.checks.len()
    }

    pub fn count_color(&self, color: CheckColor) -> usize {
        self.checks.iter().filter(|c| c.color == color).count()
    }

    pub fn checks_of_color(&self, color: CheckColor) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(move |c| c.color == color)
    }

    pub fn check_operator(&self, id: usize, kind: Option<CheckKind>) -> PauliWord {
        self.checks[id].operator(self.n_qubits(), kind)
    }

    /// All checks with their default operator types.
    pub fn check_operators(&self) -> Vec<PauliWord> {
        self.checks.iter().map(|c| c.operator(self.n_qubits(), None)).collect()
    }

    /// Check ids touching each qubit.
    pub fn qubit_checks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_qubits()];
        for c in &self.checks {
            for &q in &c.qubits {
                out[q].push(c.id);
            }
        }
        out
    }

    /// Inner checks of a chain, in ring order.
    pub fn chain_checks(&self, chain: usize) -> Vec<usize> {
        let qs = &self.chains[chain].qubits;
        let m = qs.len();
        let mut out = Vec::with_capacity(m);
        for k in 0..m {
            let (a, b) = (qs[k], qs[(k + 1) % m]);
            let id = self
                .checks
                .iter()
                .filter(|c| c.color.is_inner() && c.qubits == [a, b])
                .map(|c| c.id)
                .find(|id| !out.contains(id))
                .expect("ring link has an inner check");
            out.push(id);
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

fn check_coloring(cc: &CellComplex, coloring: &VertexColoring) -> Result<()> {
    if !coloring.is_proper(cc) {
        return Err(Error::InvalidColoring("vertex coloring is not proper".into()));
    }
    Ok(())
}

/// One ring per face, one qubit per (face, boundary edge).
pub fn plaquette_layout(cc: &CellComplex, coloring: &VertexColoring) -> Result<ChainLayout> {
    check_coloring(cc, coloring)?;
    let mut layout = ChainLayout::new(Placement::Plaquettes, cc);
    for (f, face) in cc.faces().iter().enumerate() {
        let sites: Vec<CheckSite> = face.corners().iter().map(|&v| CheckSite::Vertex(v)).collect();
        let colors: Vec<CheckColor> = face.corners().iter().map(|&v| coloring.color(v).into()).collect();
        layout.push_chain(ChainHost::Face(f), face.edges(), &sites, &colors, face.tag);
    }
    Ok(layout)
}

/// Plaquette placement with the default coupling-layer split.
pub fn place_chains_on_plaquettes(cc: &CellComplex, coloring: &VertexColoring) -> Result<InteractionDiagram> {
    plaquette_layout(cc, coloring)?.couple(RedBlackStrategy::default())
}

/// Degree and coloring summary of the check graph (qubits as vertices,
/// checks as edges).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringReport {
    pub n_qubits: usize,
    pub counts: Vec<(CheckColor, usize)>,
    /// Every qubit meets exactly three checks.
    pub trivalent: bool,
    /// No qubit meets two checks of the same color.
    pub properly_colored: bool,
    /// No qubit meets two checks of the same operator type.
    pub distinct_types: bool,
    /// Distinct check colors in use.
    pub n_colors: usize,
}

pub fn coloring_report(diagram: &InteractionDiagram) -> ColoringReport {
    let per_qubit = diagram.qubit_checks();
    let distinct = |f: &dyn Fn(&Check) -> u8| {
        per_qubit.iter().all(|cs| {
            let mut v: Vec<u8> = cs.iter().map(|&c| f(&diagram.checks[c])).collect();
            let n = v.len();
            v.sort_unstable();
            v.dedup();
            v.len() == n
        })
    };
    let counts: Vec<(CheckColor, usize)> = CheckColor::ALL.iter().map(|&c| (c, diagram.count_color(c))).collect();
    ColoringReport {
        n_qubits: diagram.n_qubits(),
        trivalent: per_qubit.iter().all(|cs| cs.len() == 3),
        properly_colored: distinct(&|c| c.color as u8),
        distinct_types: distinct(&|c| c.kind as u8),
        n_colors: counts.iter().filter(|(_, k)| *k > 0).count(),
        counts,
    }
}

/// Lengths of the cycles formed by checks of colors `a` and `b`. Meaningful
/// when every qubit meets at most one check of each color.
pub fn bicolored_cycle_lengths(diagram: &InteractionDiagram, a: CheckColor, b: CheckColor) -> Vec<usize> {
    let per_qubit = diagram.qubit_checks();
    let partner = |q: usize, color: CheckColor| {
        per_qubit[q].iter().map(|&c| &diagram.checks[c]).find(|c| c.color == color).map(|c| {
            if c.qubits[0] == q {
                c.qubits[1]
            } else {
                c.qubits[0]
            }
        })
    };
    let mut seen = vec![false; diagram.n_qubits()];
    let mut out = Vec::new();
    for start in 0..diagram.n_qubits() {
        if seen[start] {
            continue;
        }
        let (mut q, mut len, mut color) = (start, 0, a);
        loop {
            seen[q] = true;
            let Some(next) = partner(q, color) else { break };
            len += 1;
            q = next;
            color = if color == a { b } else { a };
            if q == start && color == a {
                out.push(len);
                break;
            }
        }
    }
    out.sort_unstable();
    out
}

/// Plaquette placement plus compensating chains along the odd-parity loops.
pub fn place_chains_with_compensation(cc: &CellComplex, coloring: &VertexColoring) -> Result<InteractionDiagram> {
    let report = crate::lattice::edge_face_parity(cc);
    let loops = match report.loops {
        Some(l) => l,
        None => crate::lattice::decompose_loops(cc, &report.odd_edges)?,
    };
    plaquette_layout(cc, coloring)?
        .add_vertical_chains(&loops, coloring)
        .couple(RedBlackStrategy::default())
}

/// Rings around each vertex, one per axis pair, on a hypercubic torus.
///
/// The ring in the `(i, j)` plane crosses `+i, +j, -i, -j` in that order;
/// each inner check sits in the quadrant face between two consecutive edges
/// and is colored by that face's checkerboard parity in its slice.
pub fn place_chains_around_vertices(cc: &CellComplex) -> Result<InteractionDiagram> {
    crate::lattice::check_locally_cubic(cc)?;
    let h = cc
        .hypercube()
        .ok_or_else(|| Error::NotLocallyCubic("vertex placement needs a hypercubic geometry".into()))?;
    if h.size % 2 == 1 {
        return Err(Error::InvalidColoring(format!(
            "slice faces are not 2-colorable at odd L={}",
            h.size
        )));
    }
    let mut layout = ChainLayout::new(Placement::Vertices, cc);
    for v in 0..h.n_vertices() {
        for (i, j) in h.pairs() {
            let vmi = h.step(v, i, false);
            let vmj = h.step(v, j, false);
            let vmij = h.step(vmi, j, false);
            let edges = [h.edge(v, i), h.edge(v, j), h.edge(vmi, i), h.edge(vmj, j)];
            let quads = [v, vmi, vmij, vmj];
            let sites: Vec<CheckSite> = quads.iter().map(|&b| CheckSite::Face(h.face(b, i, j))).collect();
            let colors: Vec<CheckColor> = quads
                .iter()
                .map(|&b| {
                    let c = h.coords(b);
                    if (c[i] + c[j]) % 2 == 0 {
                        CheckColor::Green
                    } else {
                        CheckColor::Blue
                    }
                })
                .collect();
            layout.push_chain(
                ChainHost::Vertex { vertex: v, axes: (i, j) },
                &edges,
                &sites,
                &colors,
                h.pair_index(i, j),
            );
        }
    }
    layout.couple(RedBlackStrategy::CouplingLayers)
}

/// Open `(L+1) × (L+1)` grid: horizontal neighbours carry red ZZ checks,
/// vertical neighbours green XX checks. Qubit `(row, col)` has id
/// `row·(L+1) + col`.
pub fn build_bacon_shor(l: usize) -> Result<InteractionDiagram> {
    if l < 2 {
        return Err(Error::InvalidParameters(format!("Bacon-Shor grid needs L >= 2 (got {l})")));
    }
    let side = l + 1;
    let qubits = (0..side * side)
        .map(|id| ChainQubit {
            id,
            host_edge: None,
            chain: None,
            position: id % side,
            layer: id / side,
        })
        .collect();
    let mut checks = Vec::new();
    for r in 0..side {
        for c in 0..l {
            checks.push((r * side + c, r * side + c + 1, CheckColor::Red));
        }
    }
    for r in 0..l {
        for c in 0..side {
            checks.push((r * side + c, (r + 1) * side + c, CheckColor::Green));
        }
    }
    let checks = checks
        .into_iter()
        .enumerate()
        .map(|(id, (a, b, color))| Check {
            id,
            qubits: [a, b],
            color,
            kind: if color == CheckColor::Red { CheckKind::ZZ } else { CheckKind::XX },
            site: CheckSite::Grid,
        })
        .collect();
    Ok(InteractionDiagram {
        placement: Placement::BaconShor,
        n_edges: 0,
        qubits,
        chains: Vec::new(),
        checks,
        edge_qubits: Vec::new(),
        strategy: None,
        cells: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_hex_prism, build_hypercubic, two_color_vertices};

    fn plaquettes(dim: usize, l: usize) -> InteractionDiagram {
        let cc = build_hypercubic(dim, l).unwrap();
        let col = two_color_vertices(&cc).unwrap();
        place_chains_on_plaquettes(&cc, &col).unwrap()
    }

    #[test]
    fn square_torus_counts() {
        let d = plaquettes(2, 4);
        assert_eq!(d.n_qubits(), 64);
        assert_eq!(d.count_color(CheckColor::Green), 32);
        assert_eq!(d.count_color(CheckColor::Blue), 32);
        assert_eq!(d.count_color(CheckColor::Red), 32);
        assert_eq!(d.count_color(CheckColor::Black), 0);
    }

    #[test]
    fn square_torus_is_trivalent_with_distinct_types() {
        let d = plaquettes(2, 4);
        for checks in d.qubit_checks() {
            assert_eq!(checks.len(), 3);
            let mut kinds: Vec<_> = checks.iter().map(|&c| d.checks[c].kind as u8).collect();
            kinds.sort_unstable();
            assert_eq!(kinds, vec![0, 1, 2]);
        }
    }

    #[test]
    fn square_torus_coloring_report() {
        let r = coloring_report(&plaquettes(2, 4));
        assert!(r.trivalent && r.properly_colored && r.distinct_types);
        assert_eq!(r.n_colors, 3);
        // 4.8.8: chain squares and octagons around each vertex
        let d = plaquettes(2, 4);
        assert_eq!(bicolored_cycle_lengths(&d, CheckColor::Green, CheckColor::Blue), vec![4; 16]);
        assert_eq!(bicolored_cycle_lengths(&d, CheckColor::Red, CheckColor::Green), vec![8; 8]);
        assert_eq!(bicolored_cycle_lengths(&d, CheckColor::Red, CheckColor::Blue), vec![8; 8]);
        let cubic = coloring_report(&plaquettes(3, 2));
        assert!(!cubic.trivalent);
        assert_eq!(cubic.n_colors, 4);
    }

    #[test]
    fn cubic_torus_counts() {
        let d = plaquettes(3, 2);
        assert_eq!(d.n_qubits(), 96);
        let inner = d.checks.iter().filter(|c| c.color.is_inner()).count();
        assert_eq!(inner, 96);
        assert_eq!(d.count_color(CheckColor::Red), 48);
        assert_eq!(d.count_color(CheckColor::Black), 24);
    }

    #[test]
    fn red_checks_are_disjoint_and_edges_connected() {
        for d in [plaquettes(3, 2), plaquettes(4, 2)] {
            for (e, group) in d.edge_qubits.iter().enumerate() {
                let reds: Vec<_> = d
                    .checks_of_color(CheckColor::Red)
                    .filter(|c| c.site == CheckSite::Edge(e))
                    .collect();
                assert_eq!(reds.len(), group.len() / 2);
                let mut touched: Vec<usize> = reds.iter().flat_map(|c| c.qubits).collect();
                touched.sort_unstable();
                touched.dedup();
                assert_eq!(touched.len(), group.len());
                // red pairs sit in faces of the same axis pair
                for c in &reds {
                    assert_eq!(d.qubits[c.qubits[0]].layer, d.qubits[c.qubits[1]].layer);
                }
            }
        }
    }

    #[test]
    fn four_dimensional_edges_host_six_qubits() {
        let d = plaquettes(4, 2);
        assert!(d.edge_qubits.iter().all(|g| g.len() == 6));
        assert_eq!(d.count_color(CheckColor::Red), 64 * 3);
        assert_eq!(d.count_color(CheckColor::Black), 64 * 2);
    }

    #[test]
    fn chains_alternate_xx_yy() {
        let d = plaquettes(3, 2);
        for chain in 0..d.chains.len() {
            let kinds: Vec<_> = d.chain_checks(chain).iter().map(|&c| d.checks[c].kind).collect();
            for k in 0..kinds.len() {
                assert_ne!(kinds[k], kinds[(k + 1) % kinds.len()]);
            }
        }
    }

    #[test]
    fn hex_prism_needs_vertical_chains() {
        let cc = build_hex_prism(2, 2, 2).unwrap();
        let col = two_color_vertices(&cc).unwrap();
        assert!(matches!(
            place_chains_on_plaquettes(&cc, &col),
            Err(Error::OddEdgeParity { count: 3, .. })
        ));
        let d = place_chains_with_compensation(&cc, &col).unwrap();
        assert!(d.edge_qubits.iter().all(|g| g.len() % 2 == 0));
        let vertical = 3 * 2 * 2 * 2..cc.n_edges();
        assert!(vertical.clone().all(|e| d.edge_qubits[e].len() == 4));
    }

    #[test]
    fn compensation_is_identity_on_even_lattices() {
        let cc = build_hypercubic(3, 2).unwrap();
        let col = two_color_vertices(&cc).unwrap();
        let a = place_chains_on_plaquettes(&cc, &col).unwrap();
        let b = place_chains_with_compensation(&cc, &col).unwrap();
        assert_eq!(a.checks, b.checks);
    }

    #[test]
    fn vertex_placement_counts() {
        let d = place_chains_around_vertices(&build_hypercubic(3, 2).unwrap()).unwrap();
        assert_eq!(d.chains.len(), 24);
        assert!(d.edge_qubits.iter().all(|g| g.len() == 4));
        let d4 = place_chains_around_vertices(&build_hypercubic(4, 2).unwrap()).unwrap();
        assert_eq!(d4.chains.len(), 16 * 6);
        assert!(d4.edge_qubits.iter().all(|g| g.len() == 6));
    }

    #[test]
    fn vertex_red_checks_stay_in_plane() {
        let d = place_chains_around_vertices(&build_hypercubic(3, 2).unwrap()).unwrap();
        for c in d.checks_of_color(CheckColor::Red) {
            let hosts: Vec<_> = c.qubits.iter().map(|&q| d.chains[d.qubits[q].chain.unwrap()].host).collect();
            match (hosts[0], hosts[1]) {
                (ChainHost::Vertex { vertex: a, axes: p }, ChainHost::Vertex { vertex: b, axes: q }) => {
                    assert_eq!(p, q);
                    assert_ne!(a, b);
                }
                _ => panic!("unexpected host"),
            }
        }
    }

    #[test]
    fn bacon_shor_counts() {
        let d = build_bacon_shor(3).unwrap();
        assert_eq!(d.n_qubits(), 16);
        assert_eq!(d.count_color(CheckColor::Red), 12);
        assert_eq!(d.count_color(CheckColor::Green), 12);
        let d2 = build_bacon_shor(2).unwrap();
        assert_eq!((d2.n_qubits(), d2.n_checks()), (9, 12));
        assert!(build_bacon_shor(1).is_err());
    }

    #[test]
    fn diagram_json_round_trip() {
        let d = plaquettes(2, 4);
        let back: InteractionDiagram = serde_json::from_str(&d.to_json().unwrap()).unwrap();
        assert_eq!(back.checks, d.checks);
        assert_eq!(back.qubits, d.qubits);
    }
}
