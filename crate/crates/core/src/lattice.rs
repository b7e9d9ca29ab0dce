//! Physical lattices as cell complexes.
//!
//! Vertices, edges, oriented 2-cells and (optionally) top cells, with the
//! incidence maps needed to weave spin chains over them. Builders cover
//! hypercubic tori of any dimension and the hexagonal-prism lattice; other
//! complexes come in through [`LatticeFile`].

use std::collections::VecDeque;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    #[default]
    Periodic,
    Open,
}

/// An oriented closed walk of edges.
///
/// `corners[k]` is the vertex shared by `edges[k]` and `edges[k + 1]`
/// (indices cyclic).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub edges: Vec<usize>,
    pub corners: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Walks `edges` in order and recovers the corners; fails if the edges do
    /// not chain into a closed walk.
    pub fn from_edges(edges: Vec<usize>, endpoints: &[[usize; 2]]) -> Result<Cycle> {
        if edges.is_empty() {
            return Err(Error::MalformedComplex("empty cycle".into()));
        }
        for &e in &edges {
            if e >= endpoints.len() {
                return Err(Error::MalformedComplex(format!("cycle references missing edge {e}")));
            }
        }
        let [a, b] = endpoints[edges[0]];
        'start: for (start, mut cur) in [(a, b), (b, a)] {
            let mut corners = Vec::with_capacity(edges.len());
            for &e in &edges[1..] {
                let [p, q] = endpoints[e];
                corners.push(cur);
                cur = if p == cur {
                    q
                } else if q == cur {
                    p
                } else {
                    continue 'start;
                };
            }
            if cur == start {
                corners.push(start);
                return Ok(Cycle { edges, corners });
            }
        }
        Err(Error::MalformedComplex(format!("edges {edges:?} do not form a closed cycle")))
    }

    /// Rotates and reflects so the walk starts at its smallest edge id and
    /// proceeds towards the smaller of that edge's two neighbours.
    pub fn normalized(&self) -> Cycle {
        let m = self.edges.len();
        if m == 0 {
            return self.clone();
        }
        let r = (0..m).min_by_key(|&k| self.edges[k]).unwrap();
        let forward = Cycle {
            edges: (0..m).map(|k| self.edges[(r + k) % m]).collect(),
            corners: (0..m).map(|k| self.corners[(r + k) % m]).collect(),
        };
        if m < 3 || forward.edges[1] <= forward.edges[m - 1] {
            return forward;
        }
        Cycle {
            edges: (0..m).map(|k| forward.edges[(m - k) % m]).collect(),
            corners: (0..m).map(|k| forward.corners[(2 * m - k - 1) % m]).collect(),
        }
    }
}

/// A 2-cell with a boundary cycle and a family tag (axis pair index for
/// hypercubic faces, 0 hexagon / 1 square for prisms).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub boundary: Cycle,
    pub tag: usize,
}

impl Face {
    pub fn edges(&self) -> &[usize] {
        &self.boundary.edges
    }
    pub fn corners(&self) -> &[usize] {
        &self.boundary.corners
    }
}

/// Hypercubic torus geometry, kept so that axis-aware placements can query
/// directions directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypercube {
    pub dim: usize,
    pub size: usize,
}

impl Hypercube {
    pub fn n_vertices(&self) -> usize {
        self.size.pow(self.dim as u32)
    }

    pub fn coords(&self, v: usize) -> Vec<usize> {
        let mut c = Vec::with_capacity(self.dim);
        let mut r = v;
        for _ in 0..self.dim {
            c.push(r % self.size);
            r /= self.size;
        }
        c
    }

    pub fn vertex(&self, coords: &[usize]) -> usize {
        coords.iter().rev().fold(0, |acc, &c| acc * self.size + c % self.size)
    }

    /// Neighbour of `v` one step along `axis` (`forward` = +1).
    pub fn step(&self, v: usize, axis: usize, forward: bool) -> usize {
        let stride = self.size.pow(axis as u32);
        let c = (v / stride) % self.size;
        let nc = if forward { (c + 1) % self.size } else { (c + self.size - 1) % self.size };
        v - c * stride + nc * stride
    }

    /// Edge from `v` to `v + e_axis`.
    pub fn edge(&self, v: usize, axis: usize) -> usize {
        v * self.dim + axis
    }

    pub fn edge_axis(&self, e: usize) -> usize {
        e % self.dim
    }

    pub fn edge_base(&self, e: usize) -> usize {
        e / self.dim
    }

    /// Index of the unordered axis pair `{i, j}`.
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        (0..i).map(|a| self.dim - 1 - a).sum::<usize>() + (j - i - 1)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                out.push((i, j));
            }
        }
        out
    }

    /// Face spanned by axes `i < j` at base vertex `v`.
    pub fn face(&self, v: usize, i: usize, j: usize) -> usize {
        v * self.pairs().len() + self.pair_index(i, j)
    }

    /// Vertices of the unit cell based at `v`.
    pub fn cell_vertices(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        for axis in 0..self.dim {
            let shifted: Vec<usize> = out.iter().map(|&w| self.step(w, axis, true)).collect();
            out.extend(shifted);
        }
        out
    }

    /// The `dim · 2^(dim-1)` edges of the unit cell based at `v`.
    pub fn cell_edges(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for axis in 0..self.dim {
            let mut bases = vec![v];
            for other in (0..self.dim).filter(|&a| a != axis) {
                let shifted: Vec<usize> = bases.iter().map(|&w| self.step(w, other, true)).collect();
                bases.extend(shifted);
            }
            out.extend(bases.into_iter().map(|w| self.edge(w, axis)));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Geometry {
    Hypercubic(Hypercube),
    HexPrism { lx: usize, ly: usize, lz: usize },
    Custom,
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    n_vertices: usize,
    edges: Vec<[usize; 2]>,
    faces: Vec<Face>,
    ncells: Vec<Vec<usize>>,
    boundary: Boundary,
    geometry: Geometry,
    edge_faces: Vec<Vec<usize>>,
    vertex_edges: Vec<Vec<usize>>,
}

impl CellComplex {
    /// Assembles a complex and derives its incidence maps. Face boundaries are
    /// normalized in place.
    pub fn new(
        n_vertices: usize,
        edges: Vec<[usize; 2]>,
        faces: Vec<Face>,
        ncells: Vec<Vec<usize>>,
        boundary: Boundary,
        geometry: Geometry,
    ) -> Result<Self> {
        for (e, &[a, b]) in edges.iter().enumerate() {
            if a >= n_vertices || b >= n_vertices {
                return Err(Error::MalformedComplex(format!("edge {e} references a missing vertex")));
            }
            if a == b {
                return Err(Error::MalformedComplex(format!("edge {e} is a self-loop")));
            }
        }
        let mut vertex_edges = vec![Vec::new(); n_vertices];
        for (e, &[a, b]) in edges.iter().enumerate() {
            vertex_edges[a].push(e);
            vertex_edges[b].push(e);
        }
        let mut faces = faces;
        let mut edge_faces = vec![Vec::new(); edges.len()];
        for (f, face) in faces.iter_mut().enumerate() {
            // re-derive corners so hand-written input cannot disagree with the edge list
            let cycle = Cycle::from_edges(face.boundary.edges.clone(), &edges)?;
            let mut seen = face.boundary.edges.clone();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::MalformedComplex(format!("face {f} repeats an edge")));
            }
            face.boundary = cycle.normalized();
            for &e in face.edges() {
                edge_faces[e].push(f);
            }
        }
        for (c, cell) in ncells.iter().enumerate() {
            if let Some(&f) = cell.iter().find(|&&f| f >= faces.len()) {
                return Err(Error::MalformedComplex(format!("cell {c} references missing face {f}")));
            }
        }
        Ok(CellComplex {
            n_vertices,
            edges,
            faces,
            ncells,
            boundary,
            geometry,
            edge_faces,
            vertex_edges,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }
    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }
    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }
    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }
    pub fn edge(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }
    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }
    pub fn ncells(&self) -> &[Vec<usize>] {
        &self.ncells
    }
    pub fn boundary(&self) -> Boundary {
        self.boundary
    }
    pub fn geometry(&self) -> Geometry {
        self.geometry
    }
    pub fn faces_of_edge(&self, e: usize) -> &[usize] {
        &self.edge_faces[e]
    }
    pub fn edges_of_vertex(&self, v: usize) -> &[usize] {
        &self.vertex_edges[v]
    }

    pub fn hypercube(&self) -> Option<Hypercube> {
        match self.geometry {
            Geometry::Hypercubic(h) => Some(h),
            _ => None,
        }
    }

    /// Vertex shared by two edges, if exactly one is shared.
    pub fn shared_vertex(&self, a: usize, b: usize) -> Option<usize> {
        let [p, q] = self.edges[a];
        let [r, s] = self.edges[b];
        match (p == r || p == s, q == r || q == s) {
            (true, false) => Some(p),
            (false, true) => Some(q),
            _ => None,
        }
    }

    pub fn euler_characteristic_2d(&self) -> isize {
        self.n_vertices as isize - self.edges.len() as isize + self.faces.len() as isize
    }
}

/// Periodic hypercubic lattice with `size^dim` vertices.
pub fn build_hypercubic(dim: usize, size: usize) -> Result<CellComplex> {
    if dim < 2 || size < 2 {
        return Err(Error::InvalidParameters(format!(
            "hypercubic lattice needs dim >= 2 and L >= 2 (got dim={dim}, L={size})"
        )));
    }
    let h = Hypercube { dim, size };
    let nv = h.n_vertices();
    let mut edges = Vec::with_capacity(nv * dim);
    for v in 0..nv {
        for axis in 0..dim {
            edges.push([v, h.step(v, axis, true)]);
        }
    }
    let pairs = h.pairs();
    let mut faces = Vec::with_capacity(nv * pairs.len());
    for v in 0..nv {
        for (tag, &(i, j)) in pairs.iter().enumerate() {
            let vi = h.step(v, i, true);
            let vj = h.step(v, j, true);
            let vij = h.step(vi, j, true);
            faces.push(Face {
                boundary: Cycle {
                    edges: vec![h.edge(v, i), h.edge(vi, j), h.edge(vj, i), h.edge(v, j)],
                    corners: vec![vi, vij, vj, v],
                },
                tag,
            });
        }
    }
    let ncells = if dim >= 3 {
        (0..nv)
            .map(|v| {
                let mut cell = Vec::new();
                for &(i, j) in &pairs {
                    let mut bases = vec![v];
                    for other in (0..dim).filter(|&a| a != i && a != j) {
                        let shifted: Vec<usize> = bases.iter().map(|&w| h.step(w, other, true)).collect();
                        bases.extend(shifted);
                    }
                    cell.extend(bases.into_iter().map(|w| h.face(w, i, j)));
                }
                cell
            })
            .collect()
    } else {
        Vec::new()
    };
    CellComplex::new(nv, edges, faces, ncells, Boundary::Periodic, Geometry::Hypercubic(h))
}

/// Stacked honeycomb layers joined by vertical edges: hexagonal faces in
/// each layer and square faces between layers.
///
/// Vertex `(i, j, k, s)` has id `((k·ly + j)·lx + i)·2 + s` with `s = 0` for
/// the A sublattice. Horizontal edges come first (three per cell per layer),
/// then one vertical edge per vertex pointing up.
pub fn build_hex_prism(lx: usize, ly: usize, lz: usize) -> Result<CellComplex> {
    if lx < 2 || ly < 2 || lz < 2 {
        return Err(Error::InvalidParameters(format!(
            "hex prism needs all dimensions >= 2 (got {lx}x{ly}x{lz})"
        )));
    }
    if !lz.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!(
            "hex prism needs an even number of layers to stay bipartite (got {lz})"
        )));
    }
    let vid = |i: usize, j: usize, k: usize, s: usize| (((k % lz) * ly + j % ly) * lx + i % lx) * 2 + s;
    let nv = 2 * lx * ly * lz;
    let per_layer = 3 * lx * ly;
    let hid = |i: usize, j: usize, k: usize, t: usize| (k % lz) * per_layer + ((j % ly) * lx + i % lx) * 3 + t;
    let vert = |v: usize| lz * per_layer + v;

    let mut edges = Vec::with_capacity(lz * per_layer + nv);
    for k in 0..lz {
        for j in 0..ly {
            for i in 0..lx {
                let a = vid(i, j, k, 0);
                edges.push([a, vid(i, j, k, 1)]);
                edges.push([a, vid(i + lx - 1, j, k, 1)]);
                edges.push([a, vid(i, j + ly - 1, k, 1)]);
            }
        }
    }
    for v in 0..nv {
        let layer = v / (2 * lx * ly);
        let up = v + 2 * lx * ly * ((layer + 1) % lz) - 2 * lx * ly * layer;
        edges.push([v, up]);
    }

    let mut faces = Vec::new();
    for k in 0..lz {
        for j in 0..ly {
            for i in 0..lx {
                let (i1, jm) = (i + 1, j + ly - 1);
                faces.push(Face {
                    boundary: Cycle {
                        edges: vec![
                            hid(i, j, k, 0),
                            hid(i1, j, k, 1),
                            hid(i1, j, k, 2),
                            hid(i1, jm, k, 0),
                            hid(i1, jm, k, 1),
                            hid(i, j, k, 2),
                        ],
                        corners: Vec::new(),
                    },
                    tag: 0,
                });
            }
        }
    }
    for k in 0..lz {
        for e in k * per_layer..(k + 1) * per_layer {
            let [a, b] = edges[e];
            let up = e + per_layer * ((k + 1) % lz) - per_layer * k;
            faces.push(Face {
                boundary: Cycle {
                    edges: vec![e, vert(b), up, vert(a)],
                    corners: Vec::new(),
                },
                tag: 1,
            });
        }
    }
    CellComplex::new(nv, edges, faces, Vec::new(), Boundary::Periodic, Geometry::HexPrism { lx, ly, lz })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexColor {
    Green,
    Blue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexColoring {
    colors: Vec<VertexColor>,
}

impl VertexColoring {
    pub fn color(&self, v: usize) -> VertexColor {
        self.colors[v]
    }
    pub fn colors(&self) -> &[VertexColor] {
        &self.colors
    }
    pub fn is_proper(&self, cc: &CellComplex) -> bool {
        self.colors.len() == cc.n_vertices() && cc.edges().iter().all(|&[a, b]| self.colors[a] != self.colors[b])
    }
}

/// Breadth-first bipartition. Vertex 0 of each component is green.
pub fn two_color_vertices(cc: &CellComplex) -> Result<VertexColoring> {
    let mut side: Vec<Option<bool>> = vec![None; cc.n_vertices()];
    let mut queue = VecDeque::new();
    for root in 0..cc.n_vertices() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let s = side[v].unwrap();
            for &e in cc.edges_of_vertex(v) {
                let [a, b] = cc.edge(e);
                let w = if a == v { b } else { a };
                match side[w] {
                    None => {
                        side[w] = Some(!s);
                        queue.push_back(w);
                    }
                    Some(t) if t == s => return Err(Error::NotBipartite { vertex: w }),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(VertexColoring {
        colors: side
            .into_iter()
            .map(|s| if s.unwrap() { VertexColor::Blue } else { VertexColor::Green })
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    /// Number of faces bordering each edge.
    pub face_counts: Vec<usize>,
    pub odd_edges: Vec<usize>,
    /// Decomposition of the odd edges into closed walks, when one exists.
    pub loops: Option<Vec<Cycle>>,
}

impl ParityReport {
    pub fn is_even(&self) -> bool {
        self.odd_edges.is_empty()
    }

    pub fn odd_edges_form_loops(&self) -> bool {
        self.loops.is_some()
    }
}

pub fn edge_face_parity(cc: &CellComplex) -> ParityReport {
    let face_counts: Vec<usize> = (0..cc.n_edges()).map(|e| cc.faces_of_edge(e).len()).collect();
    let odd_edges: Vec<usize> = (0..cc.n_edges()).filter(|&e| face_counts[e] % 2 == 1).collect();
    let loops = decompose_loops(cc, &odd_edges).ok();
    ParityReport {
        face_counts,
        odd_edges,
        loops,
    }
}

/// Splits an edge set into closed walks; fails when some vertex has odd
/// degree in the set.
pub fn decompose_loops(cc: &CellComplex, edge_set: &[usize]) -> Result<Vec<Cycle>> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); cc.n_vertices()];
    for &e in edge_set {
        let [a, b] = cc.edge(e);
        incident[a].push(e);
        incident[b].push(e);
    }
    for (v, inc) in incident.iter().enumerate() {
        if inc.len() % 2 == 1 {
            return Err(Error::OpenOddEdges {
                vertex: v,
                degree: inc.len(),
            });
        }
    }
    let mut used = std::collections::HashSet::new();
    let mut loops = Vec::new();
    let mut sorted = edge_set.to_vec();
    sorted.sort_unstable();
    for &first in &sorted {
        if used.contains(&first) {
            continue;
        }
        let [start, mut cur] = cc.edge(first);
        used.insert(first);
        let mut walk = vec![first];
        while cur != start {
            let next = incident[cur]
                .iter()
                .copied()
                .filter(|e| !used.contains(e))
                .min()
                .expect("even degrees guarantee the walk can continue");
            used.insert(next);
            walk.push(next);
            let [a, b] = cc.edge(next);
            cur = if a == cur { b } else { a };
        }
        loops.push(Cycle::from_edges(walk, cc.edges())?.normalized());
    }
    Ok(loops)
}

/// Structural reading of "locally cubic": all faces are squares, and at every
/// vertex the incident edges split into opposite pairs such that any two
/// non-opposite edges share exactly one face corner while opposite edges
/// share none.
pub fn check_locally_cubic(cc: &CellComplex) -> Result<()> {
    if let Some((f, face)) = cc.faces().iter().enumerate().find(|(_, face)| face.boundary.len() != 4) {
        return Err(Error::NotLocallyCubic(format!("face {f} has {} edges", face.boundary.len())));
    }
    let mut corners: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cc.n_vertices()];
    for face in cc.faces() {
        let m = face.boundary.len();
        for k in 0..m {
            let (a, b) = (face.edges()[k], face.edges()[(k + 1) % m]);
            corners[face.corners()[k]].push((a.min(b), a.max(b)));
        }
    }
    for v in 0..cc.n_vertices() {
        let inc = cc.edges_of_vertex(v);
        if inc.len() % 2 == 1 || inc.len() < 4 {
            return Err(Error::NotLocallyCubic(format!("vertex {v} has degree {}", inc.len())));
        }
        let mut shared = std::collections::HashMap::new();
        for &c in &corners[v] {
            *shared.entry(c).or_insert(0usize) += 1;
        }
        for (a_idx, &a) in inc.iter().enumerate() {
            for &b in &inc[a_idx + 1..] {
                if let Some(&k) = shared.get(&(a.min(b), a.max(b))) {
                    if k > 1 {
                        return Err(Error::NotLocallyCubic(format!("edges {a} and {b} meet in {k} faces at vertex {v}")));
                    }
                }
            }
            let opposite = inc
                .iter()
                .filter(|&&b| b != a && !shared.contains_key(&(a.min(b), a.max(b))))
                .count();
            if opposite != 1 {
                return Err(Error::NotLocallyCubic(format!("edge {a} has {opposite} opposite edges at vertex {v}")));
            }
        }
    }
    Ok(())
}

/// On-disk lattice description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFile {
    /// Vertex ids; must be `0..n` in order.
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
    /// Each face as a cyclic list of edge ids.
    pub faces: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub face_tags: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ncells: Vec<Vec<usize>>,
    #[serde(default)]
    pub boundary: Boundary,
}

impl LatticeFile {
    pub fn from_complex(cc: &CellComplex) -> Self {
        LatticeFile {
            vertices: (0..cc.n_vertices()).collect(),
            edges: cc.edges().to_vec(),
            faces: cc.faces().iter().map(|f| f.edges().to_vec()).collect(),
            face_tags: cc.faces().iter().map(|f| f.tag).collect(),
            ncells: cc.ncells().to_vec(),
            boundary: cc.boundary(),
        }
    }

    pub fn into_complex(self) -> Result<CellComplex> {
        if let Some((i, &v)) = self.vertices.iter().enumerate().find(|&(i, &v)| i != v) {
            return Err(Error::MalformedComplex(format!("vertex list entry {i} is {v}; ids must be 0..n in order")));
        }
        if !self.face_tags.is_empty() && self.face_tags.len() != self.faces.len() {
            return Err(Error::MalformedComplex("face_tags length differs from faces".into()));
        }
        let faces = self
            .faces
            .into_iter()
            .enumerate()
            .map(|(f, edges)| Face {
                boundary: Cycle { edges, corners: Vec::new() },
                tag: self.face_tags.get(f).copied().unwrap_or(0),
            })
            .collect();
        CellComplex::new(self.vertices.len(), self.edges, faces, self.ncells, self.boundary, Geometry::Custom)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<CellComplex> {
        let text = std::fs::read_to_string(path)?;
        let file: LatticeFile = serde_json::from_str(&text)?;
        file.into_complex()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}
