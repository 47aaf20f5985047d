//! Paths, circuits and the canonical objects read off a configuration: the
//! lowest crossing, the innermost-circuit decomposition around the origin and
//! the left-most radial path.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{BondConfig, BoxGeom, Dir, EdgeId, Face, Orientation, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    Primal,
    Dual,
}

/// A nearest-neighbour path on the primal or the dual lattice.
///
/// Dual paths store each face by its lower-left corner; `edges` always holds
/// the primal edge `e` whose dual `e*` is traversed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePath {
    lattice: Lattice,
    vertices: Vec<Vertex>,
    edges: Vec<EdgeId>,
}

impl LatticePath {
    pub fn primal(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidInput("a path needs at least one vertex".into()));
        }
        let edges = vertices
            .windows(2)
            .map(|w| {
                EdgeId::between(w[0], w[1]).ok_or_else(|| {
                    Error::InvalidInput(format!("{} and {} are not adjacent", w[0], w[1]))
                })
            })
            .collect::<Result<_>>()?;
        Ok(LatticePath { lattice: Lattice::Primal, vertices, edges })
    }

    pub fn dual(faces: Vec<Face>) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::InvalidInput("a path needs at least one vertex".into()));
        }
        let edges = faces
            .windows(2)
            .map(|w| {
                Face::crossing(w[0], w[1]).ok_or_else(|| {
                    Error::InvalidInput(format!("faces {:?} and {:?} are not adjacent", w[0], w[1]))
                })
            })
            .collect::<Result<_>>()?;
        let vertices = faces.into_iter().map(|f| Vertex::new(f.x, f.y)).collect();
        Ok(LatticePath { lattice: Lattice::Dual, vertices, edges })
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn faces(&self) -> Vec<Face> {
        self.vertices.iter().map(|v| Face::new(v.x, v.y)).collect()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// `#E(γ)`.
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().expect("nonempty path")
    }

    pub fn is_self_avoiding(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.vertices.len());
        self.vertices.iter().all(|v| seen.insert(*v))
    }

    pub fn is_open(&self, cfg: &BondConfig) -> bool {
        self.lattice == Lattice::Primal && self.edges.iter().all(|&e| cfg.is_open(e))
    }

    /// Every traversed dual edge is closed and lies in the box.
    pub fn is_closed_dual(&self, cfg: &BondConfig) -> bool {
        let g = cfg.geom();
        self.lattice == Lattice::Dual
            && self.edges.iter().all(|&e| g.contains_edge(e) && !cfg.is_open(e))
    }

    pub fn in_box(&self, g: BoxGeom) -> bool {
        match self.lattice {
            Lattice::Primal => self.vertices.iter().all(|&v| g.contains(v)),
            Lattice::Dual => self.vertices.iter().all(|&v| g.contains_face(Face::new(v.x, v.y))),
        }
    }

    /// Horizontal crossing of `B_n`: starts on the left side, ends on the right.
    pub fn is_horizontal_crossing(&self, g: BoxGeom) -> bool {
        self.lattice == Lattice::Primal
            && self.in_box(g)
            && self.first().x == -g.n
            && self.last().x == g.n
    }

    pub fn reversed(&self) -> LatticePath {
        let mut p = self.clone();
        p.vertices.reverse();
        p.edges.reverse();
        p
    }

    /// `{"lattice": "primal"|"dual", "points": [[x, y], ...]}`; dual points are
    /// face centres.
    pub fn to_json(&self) -> Value {
        let points: Vec<Value> = match self.lattice {
            Lattice::Primal => self.vertices.iter().map(|v| json!([v.x, v.y])).collect(),
            Lattice::Dual => self
                .vertices
                .iter()
                .map(|v| json!([v.x as f64 + 0.5, v.y as f64 + 0.5]))
                .collect(),
        };
        json!({ "lattice": self.lattice, "points": points })
    }
}

/// A closed primal path, self-avoiding apart from its repeated endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    path: LatticePath,
    winding: bool,
}

impl Circuit {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        let path = LatticePath::primal(vertices)?;
        let vs = path.vertices();
        if vs.len() < 5 || vs[0] != vs[vs.len() - 1] {
            return Err(Error::InvalidInput("a circuit must close up and have at least 4 edges".into()));
        }
        let open = LatticePath::primal(vs[..vs.len() - 1].to_vec())?;
        if !open.is_self_avoiding() {
            return Err(Error::InvalidInput("circuit revisits a vertex".into()));
        }
        let mut c = Circuit { path, winding: false };
        c.winding = !c.on_circuit(Vertex::ORIGIN) && c.encloses(Vertex::ORIGIN);
        Ok(c)
    }

    pub fn path(&self) -> &LatticePath {
        &self.path
    }

    /// Vertices in order, first vertex repeated at the end.
    pub fn vertices(&self) -> &[Vertex] {
        self.path.vertices()
    }

    pub fn edges(&self) -> &[EdgeId] {
        self.path.edges()
    }

    pub fn num_edges(&self) -> usize {
        self.path.num_edges()
    }

    pub fn surrounds_origin(&self) -> bool {
        self.winding
    }

    pub fn on_circuit(&self, v: Vertex) -> bool {
        self.vertices().contains(&v)
    }

    /// Strict interior test by casting a ray to the right just above `v`.
    pub fn encloses(&self, v: Vertex) -> bool {
        if self.on_circuit(v) {
            return false;
        }
        let crossings = self
            .edges()
            .iter()
            .filter(|e| e.orientation == Orientation::Vertical && e.base.y == v.y && e.base.x > v.x)
            .count();
        crossings % 2 == 1
    }

    pub fn encloses_face(&self, f: Face) -> bool {
        let crossings = self
            .edges()
            .iter()
            .filter(|e| e.orientation == Orientation::Vertical && e.base.y == f.y && e.base.x > f.x)
            .count();
        crossings % 2 == 1
    }

    /// Interior faces of the box as a mask indexed by [`BoxGeom::face_index`].
    pub fn interior_faces(&self, g: BoxGeom) -> Vec<bool> {
        let side = g.side() - 1;
        let mut rows: Vec<Vec<i32>> = vec![Vec::new(); side];
        for e in self.edges() {
            if e.orientation == Orientation::Vertical && g.contains_edge(*e) {
                rows[(e.base.y + g.n) as usize].push(e.base.x);
            }
        }
        let mut mask = vec![false; g.num_faces()];
        for (r, xs) in rows.iter_mut().enumerate() {
            xs.sort_unstable();
            let y = r as i32 - g.n;
            let mut inside = false;
            let mut next = 0;
            for x in -g.n..g.n {
                while next < xs.len() && xs[next] <= x {
                    inside = !inside;
                    next += 1;
                }
                if inside {
                    mask[g.face_index(Face::new(x, y))] = true;
                }
            }
        }
        mask
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.path.to_json();
        v["closed"] = json!(true);
        v
    }
}

/// Innermost open circuits `C_1, .., C_K` around the origin with the open
/// connectors between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitDecomposition {
    pub circuits: Vec<Circuit>,
    /// `connectors[0]` runs from the origin to `C_1` (or to `∂B_n` when
    /// `K = 0`), `connectors[k]` from `C_k` to `C_{k+1}`, and the last one
    /// from `C_K` to `∂B_n`.
    pub connectors: Vec<LatticePath>,
}

impl CircuitDecomposition {
    pub fn k(&self) -> usize {
        self.circuits.len()
    }

    /// The connectors concatenated into one open path from 0 to `∂B_n`.
    pub fn radial_path(&self) -> LatticePath {
        let mut vs = self.connectors[0].vertices().to_vec();
        for c in &self.connectors[1..] {
            vs.extend_from_slice(&c.vertices()[1..]);
        }
        LatticePath::primal(loop_erase(&vs)).expect("connectors chain up")
    }
}

/// Faces left and right of the edge leaving `v` in direction `d`.
pub(crate) fn side_faces(v: Vertex, d: Dir) -> (Face, Face) {
    let Vertex { x, y } = v;
    match d {
        Dir::East => (Face::new(x, y), Face::new(x, y - 1)),
        Dir::North => (Face::new(x - 1, y), Face::new(x, y)),
        Dir::West => (Face::new(x - 1, y - 1), Face::new(x - 1, y)),
        Dir::South => (Face::new(x, y - 1), Face::new(x - 1, y - 1)),
    }
}

/// The four faces around a vertex, counter-clockwise from the north-east one.
pub fn faces_around(v: Vertex) -> [Face; 4] {
    [
        Face::new(v.x, v.y),
        Face::new(v.x - 1, v.y),
        Face::new(v.x - 1, v.y - 1),
        Face::new(v.x, v.y - 1),
    ]
}

/// Chronological loop erasure.
pub fn loop_erase(walk: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::with_capacity(walk.len());
    let mut pos: HashMap<Vertex, usize> = HashMap::new();
    for &v in walk {
        if let Some(&i) = pos.get(&v) {
            for w in out.drain(i + 1..) {
                pos.remove(&w);
            }
        } else {
            pos.insert(v, out.len());
            out.push(v);
        }
    }
    out
}

/// Breadth-first search over open edges. Neighbours are scanned in
/// [`EdgeId`] order and sources in the order given, so the predecessor tree
/// is deterministic.
pub(crate) struct OpenSearch {
    g: BoxGeom,
    pub dist: Vec<u32>,
    pred: Vec<u32>,
    pub hit: Option<Vertex>,
}

pub(crate) const UNSEEN: u32 = u32::MAX;

impl OpenSearch {
    pub fn run(
        cfg: &BondConfig,
        sources: &[Vertex],
        allowed: &dyn Fn(Vertex) -> bool,
        target: &dyn Fn(Vertex) -> bool,
    ) -> Self {
        let g = cfg.geom();
        let mut dist = vec![UNSEEN; g.num_vertices()];
        let mut pred = vec![UNSEEN; g.num_vertices()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if g.contains(s) && allowed(s) {
                let i = g.vertex_index(s);
                if dist[i] == UNSEEN {
                    dist[i] = 0;
                    queue.push_back(s);
                }
            }
        }
        let mut hit = None;
        while let Some(v) = queue.pop_front() {
            if target(v) {
                hit = Some(v);
                break;
            }
            let dv = dist[g.vertex_index(v)];
            for (e, w) in v.incident() {
                if !g.contains(w) || !cfg.is_open(e) || !allowed(w) {
                    continue;
                }
                let j = g.vertex_index(w);
                if dist[j] == UNSEEN {
                    dist[j] = dv + 1;
                    pred[j] = g.vertex_index(v) as u32;
                    queue.push_back(w);
                }
            }
        }
        OpenSearch { g, dist, pred, hit }
    }


    /// Path from a source to `v` along the predecessor tree.
    pub fn path_to(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = vec![v];
        let mut i = self.g.vertex_index(v);
        while self.pred[i] != UNSEEN {
            i = self.pred[i] as usize;
            out.push(self.g.vertex_at(i));
        }
        out.reverse();
        out
    }
}

fn check_in_box(g: BoxGeom, set: &[Vertex]) -> Result<()> {
    match set.iter().find(|v| !g.contains(**v)) {
        Some(&v) => Err(Error::VertexOutOfBox(v)),
        None => Ok(()),
    }
}

/// `A ↔ B` inside `region`: an open path with all vertices in `region`
/// joins a vertex of `a` to a vertex of `b`.
pub fn connected(
    cfg: &BondConfig,
    a: &[Vertex],
    b: &[Vertex],
    region: impl Fn(Vertex) -> bool,
) -> Result<bool> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidInput("connected needs nonempty endpoint sets".into()));
    }
    let g = cfg.geom();
    check_in_box(g, a)?;
    check_in_box(g, b)?;
    let targets: std::collections::HashSet<Vertex> = b.iter().copied().collect();
    let s = OpenSearch::run(cfg, a, &region, &|v| targets.contains(&v));
    Ok(s.hit.is_some())
}

/// `A_n`: the origin is joined to `∂B_n` inside `B_n`.
pub fn origin_to_boundary(cfg: &BondConfig) -> bool {
    let g = cfg.geom();
    OpenSearch::run(cfg, &[Vertex::ORIGIN], &|_| true, &|v| g.on_boundary(v)).hit.is_some()
}

/// Flood over box faces through closed edges. Returns the face mask and
/// whether a closed edge of `∂B_n` was crossed on the way out.
pub(crate) fn closed_cluster(cfg: &BondConfig, seeds: &[Face]) -> (Vec<bool>, bool) {
    let g = cfg.geom();
    let mut mask = vec![false; g.num_faces()];
    let mut queue = VecDeque::new();
    for &f in seeds {
        if g.contains_face(f) && !mask[g.face_index(f)] {
            mask[g.face_index(f)] = true;
            queue.push_back(f);
        }
    }
    let mut exits = false;
    while let Some(f) = queue.pop_front() {
        for (e, h) in f.incident() {
            if cfg.is_open(e) {
                continue;
            }
            if !g.contains_face(h) {
                exits = true;
                continue;
            }
            let j = g.face_index(h);
            if !mask[j] {
                mask[j] = true;
                queue.push_back(h);
            }
        }
    }
    (mask, exits)
}

/// Faces of the bottom-attached closed dual cluster, and whether it reaches
/// the top side (which rules out a horizontal crossing).
fn bottom_cluster(cfg: &BondConfig) -> (Vec<bool>, bool) {
    let g = cfg.geom();
    let n = g.n;
    let mut mask = vec![false; g.num_faces()];
    let mut queue = VecDeque::new();
    for x in -n..n {
        if !cfg.is_open(EdgeId::horizontal(Vertex::new(x, -n))) {
            let f = Face::new(x, -n);
            mask[g.face_index(f)] = true;
            queue.push_back(f);
        }
    }
    let mut top = false;
    while let Some(f) = queue.pop_front() {
        for (e, h) in f.incident() {
            if cfg.is_open(e) {
                continue;
            }
            if !g.contains_face(h) {
                if h.y >= n {
                    top = true;
                }
                continue;
            }
            let j = g.face_index(h);
            if !mask[j] {
                mask[j] = true;
                queue.push_back(h);
            }
        }
    }
    (mask, top)
}

/// Horizontal open crossing event `H_n`.
pub fn has_horizontal_crossing(cfg: &BondConfig) -> bool {
    !bottom_cluster(cfg).1
}

/// The lowest open left-right crossing `l_n`, or `None` when `H_n` fails.
///
/// Traces the upper edge boundary of the closed dual cluster attached to the
/// bottom side, keeping that cluster on the right, and loop-erases the trace.
pub fn lowest_crossing(cfg: &BondConfig) -> Option<LatticePath> {
    let g = cfg.geom();
    let n = g.n;
    let (u, top) = bottom_cluster(cfg);
    if top {
        return None;
    }
    let ys = (-n..n)
        .filter(|&j| u[g.face_index(Face::new(-n, j))])
        .max()
        .map_or(-n, |j| j + 1);
    let wall = |f: Face| {
        if f.y < -n {
            true
        } else if f.x < -n {
            f.y < ys
        } else if g.contains_face(f) {
            u[g.face_index(f)]
        } else {
            false
        }
    };
    let mut v = Vertex::new(-n, ys);
    let mut heading = Dir::East;
    let mut walk = vec![v];
    let cap = 4 * g.num_edges() + 8;
    while v.x != n {
        let next = [heading.cw(), heading, heading.ccw(), heading.reverse()].into_iter().find(|&d| {
            let w = v.step(d);
            let (left, right) = side_faces(v, d);
            g.contains(w) && cfg.is_open(EdgeId::between(v, w).unwrap()) && wall(right) && !wall(left)
        });
        let d = next?;
        v = v.step(d);
        heading = d;
        walk.push(v);
        if walk.len() > cap {
            debug_assert!(false, "lowest crossing trace did not terminate");
            return None;
        }
    }
    Some(LatticePath::primal(loop_erase(&walk)).expect("trace is a lattice path"))
}

/// The region `B(γ)` below a horizontal crossing: faces reached from the
/// bottom side without crossing `γ`, and the vertices off `γ` touching them.
#[derive(Clone, Debug)]
pub struct BelowRegion {
    g: BoxGeom,
    faces: Vec<bool>,
    vertices: Vec<bool>,
}

impl BelowRegion {
    pub fn contains_face(&self, f: Face) -> bool {
        self.g.contains_face(f) && self.faces[self.g.face_index(f)]
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.g.contains(v) && self.vertices[self.g.vertex_index(v)]
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().filter(|b| **b).count()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.iter().filter(|b| **b).count()
    }
}

pub fn below_region(g: BoxGeom, crossing: &LatticePath) -> BelowRegion {
    let n = g.n;
    let cut: std::collections::HashSet<EdgeId> = crossing.edges().iter().copied().collect();
    let on_path: std::collections::HashSet<Vertex> = crossing.vertices().iter().copied().collect();
    let mut faces = vec![false; g.num_faces()];
    let mut queue = VecDeque::new();
    for x in -n..n {
        if !cut.contains(&EdgeId::horizontal(Vertex::new(x, -n))) {
            let f = Face::new(x, -n);
            faces[g.face_index(f)] = true;
            queue.push_back(f);
        }
    }
    while let Some(f) = queue.pop_front() {
        for (e, h) in f.incident() {
            if !g.contains_face(h) || cut.contains(&e) {
                continue;
            }
            let j = g.face_index(h);
            if !faces[j] {
                faces[j] = true;
                queue.push_back(h);
            }
        }
    }
    let mut vertices = vec![false; g.num_vertices()];
    for (i, slot) in vertices.iter_mut().enumerate() {
        let v = g.vertex_at(i);
        if on_path.contains(&v) {
            continue;
        }
        *slot = faces_around(v).iter().any(|&f| g.contains_face(f) && faces[g.face_index(f)]);
    }
    BelowRegion { g, faces, vertices }
}

/// Faces not reachable from outside the box through faces outside `mask`.
fn fill_holes(g: BoxGeom, mask: &[bool]) -> Vec<bool> {
    let mut outside = vec![false; g.num_faces()];
    let mut queue = VecDeque::new();
    for i in 0..g.num_faces() {
        let f = g.face_at(i);
        let border = f.x == -g.n || f.x == g.n - 1 || f.y == -g.n || f.y == g.n - 1;
        if border && !mask[i] {
            outside[i] = true;
            queue.push_back(f);
        }
    }
    while let Some(f) = queue.pop_front() {
        for (_, h) in f.incident() {
            if g.contains_face(h) {
                let j = g.face_index(h);
                if !mask[j] && !outside[j] {
                    outside[j] = true;
                    queue.push_back(h);
                }
            }
        }
    }
    outside.iter().map(|o| !o).collect()
}

/// Outer boundary of a simply connected face set, counter-clockwise from
/// its lowest-leftmost corner.
fn trace_contour(g: BoxGeom, filled: &[bool]) -> Vec<Vertex> {
    let inside = |f: Face| g.contains_face(f) && filled[g.face_index(f)];
    let first = (0..g.num_faces()).find(|&i| filled[i]).map(|i| g.face_at(i)).expect("nonempty");
    let start = Vertex::new(first.x, first.y);
    let mut v = start;
    let mut heading = Dir::South;
    let mut out = vec![v];
    loop {
        let d = [heading.cw(), heading, heading.ccw(), heading.reverse()]
            .into_iter()
            .find(|&d| {
                let (left, right) = side_faces(v, d);
                inside(left) && !inside(right)
            })
            .expect("contour continues");
        v = v.step(d);
        heading = d;
        out.push(v);
        if v == start {
            break;
        }
    }
    out
}

/// Vertices strictly inside a circuit, indexed by [`BoxGeom::vertex_index`].
pub fn interior_vertices(c: &Circuit, g: BoxGeom) -> Vec<bool> {
    let faces = c.interior_faces(g);
    let on: std::collections::HashSet<Vertex> = c.vertices().iter().copied().collect();
    (0..g.num_vertices())
        .map(|i| {
            let v = g.vertex_at(i);
            !on.contains(&v)
                && faces_around(v).iter().any(|&f| g.contains_face(f) && faces[g.face_index(f)])
        })
        .collect()
}

/// Right-hand walk along open edges from the origin. The first direction
/// tried is the one just counter-clockwise of `f0`; the walk stops at the
/// first target vertex and is loop-erased.
fn radial_walk(cfg: &BondConfig, f0: usize, target: &dyn Fn(Vertex) -> bool) -> Result<LatticePath> {
    let g = cfg.geom();
    let first = [Dir::North, Dir::West, Dir::South, Dir::East][f0];
    let mut heading = first.ccw();
    let mut v = Vertex::ORIGIN;
    let mut walk = vec![v];
    let cap = 4 * g.num_edges() + 8;
    while !target(v) {
        let d = [heading.cw(), heading, heading.ccw(), heading.reverse()]
            .into_iter()
            .find(|&d| g.contains(v.step(d)) && cfg.is_open(EdgeId::between(v, v.step(d)).unwrap()))
            .ok_or_else(|| Error::Precondition("the origin is isolated".into()))?;
        v = v.step(d);
        heading = d;
        walk.push(v);
        if walk.len() > cap {
            return Err(Error::Precondition("radial walk did not reach its target".into()));
        }
    }
    LatticePath::primal(loop_erase(&walk))
}

/// Index (0..4, counter-clockwise from north-east) of the first face around
/// the origin whose closed cluster leaves the box through `∂B_n`.
fn exit_face(cfg: &BondConfig) -> Option<usize> {
    let seeds = faces_around(Vertex::ORIGIN);
    (0..4).find(|&i| closed_cluster(cfg, &seeds[i..=i]).1)
}

/// The innermost-circuit decomposition around the origin.
///
/// Requires `A_n`. Circuits are vertex-disjoint; `C_{k+1}` is the outer
/// contour of the closed cluster grown from the closure of `int(C_k)` plus
/// the faces touching `C_k`.
pub fn innermost_circuits(cfg: &BondConfig) -> Result<CircuitDecomposition> {
    if !origin_to_boundary(cfg) {
        return Err(Error::Precondition("the origin is not connected to the box boundary".into()));
    }
    let g = cfg.geom();
    let mut circuits: Vec<Circuit> = Vec::new();
    let mut seeds: Vec<Face> = faces_around(Vertex::ORIGIN).to_vec();
    loop {
        let (z, exits) = closed_cluster(cfg, &seeds);
        if exits {
            break;
        }
        let filled = fill_holes(g, &z);
        let c = Circuit::new(trace_contour(g, &filled))?;
        let touches = c.vertices().iter().any(|&v| g.on_boundary(v));
        seeds = (0..g.num_faces()).filter(|&i| filled[i]).map(|i| g.face_at(i)).collect();
        for &v in c.vertices() {
            seeds.extend(faces_around(v).into_iter().filter(|&f| g.contains_face(f)));
        }
        circuits.push(c);
        if touches {
            break;
        }
    }

    let mut connectors = Vec::with_capacity(circuits.len() + 1);
    if circuits.is_empty() {
        let f0 = exit_face(cfg).expect("closed cluster exits");
        connectors.push(radial_walk(cfg, f0, &|v| g.on_boundary(v))?);
    } else {
        let c1 = &circuits[0];
        let on_c1: std::collections::HashSet<Vertex> = c1.vertices().iter().copied().collect();
        let seeds = faces_around(Vertex::ORIGIN);
        let touching = |mask: &[bool]| {
            c1.edges().iter().any(|e| {
                let (p, q) = e.dual_endpoints();
                [p, q].iter().any(|&f| g.contains_face(f) && mask[g.face_index(f)] && c1.encloses_face(f))
            })
        };
        let f0 = (0..4)
            .find(|&i| touching(&closed_cluster(cfg, &seeds[i..=i]).0))
            .expect("some face around 0 reaches C_1");
        connectors.push(radial_walk(cfg, f0, &|v| on_c1.contains(&v))?);
        for k in 0..circuits.len() {
            let start = connectors[k].last();
            let inner = &circuits[k];
            let outer = circuits.get(k + 1);
            let inner_in = interior_vertices(inner, g);
            let on_inner: std::collections::HashSet<Vertex> = inner.vertices().iter().copied().collect();
            let on_outer: std::collections::HashSet<Vertex> =
                outer.map(|c| c.vertices().iter().copied().collect()).unwrap_or_default();
            let outer_in = outer.map(|c| interior_vertices(c, g));
            let allowed = |v: Vertex| {
                let i = g.vertex_index(v);
                on_inner.contains(&v)
                    || (!inner_in[i]
                        && outer_in.as_ref().is_none_or(|m| m[i] || on_outer.contains(&v)))
            };
            let target = |v: Vertex| match outer {
                Some(_) => on_outer.contains(&v),
                None => g.on_boundary(v),
            };
            let s = OpenSearch::run(cfg, &[start], &allowed, &target);
            let hit = s.hit.ok_or_else(|| {
                Error::Precondition(format!("no open connector leaves circuit {}", k + 1))
            })?;
            connectors.push(LatticePath::primal(s.path_to(hit))?);
        }
    }
    Ok(CircuitDecomposition { circuits, connectors })
}

/// The left-most open radial path `σ̃_n` on `A_n ∩ C_0^c`.
///
/// Picks the first face `f_0` around the origin (counter-clockwise from the
/// north-east face) that is joined to the outside of the box by closed dual
/// edges, then walks the open cluster of the origin with the right hand on
/// the wall, starting just counter-clockwise of `f_0`, until `∂B_n`.
pub fn leftmost_radial_path(cfg: &BondConfig) -> Result<LatticePath> {
    if !origin_to_boundary(cfg) {
        return Err(Error::Precondition("the origin is not connected to the box boundary".into()));
    }
    let g = cfg.geom();
    let f0 = exit_face(cfg)
        .ok_or_else(|| Error::Precondition("an open circuit surrounds the origin".into()))?;
    radial_walk(cfg, f0, &|v| g.on_boundary(v))
}

/// The closed dual path used to orient [`leftmost_radial_path`]: a shortest
/// closed dual path from `f_0` to a face with a closed boundary edge.
pub fn radial_dual_path(cfg: &BondConfig) -> Option<LatticePath> {
    let g = cfg.geom();
    let f0 = faces_around(Vertex::ORIGIN)[exit_face(cfg)?];
    let mut pred: HashMap<Face, Face> = HashMap::new();
    let mut queue = VecDeque::from([f0]);
    pred.insert(f0, f0);
    while let Some(f) = queue.pop_front() {
        let exits = f.incident().iter().any(|&(e, h)| !g.contains_face(h) && !cfg.is_open(e));
        if exits {
            let mut path = vec![f];
            let mut cur = f;
            while cur != f0 {
                cur = pred[&cur];
                path.push(cur);
            }
            path.reverse();
            return LatticePath::dual(path).ok();
        }
        for (e, h) in f.incident() {
            if g.contains_face(h) && !cfg.is_open(e) && !pred.contains_key(&h) {
                pred.insert(h, f);
                queue.push_back(h);
            }
        }
    }
    None
}

/// Index of `f_0` among [`faces_around`]`(0)`, when it exists.
pub fn radial_exit_face(cfg: &BondConfig) -> Option<usize> {
    exit_face(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row_path(n: i32, y: i32) -> Vec<Vertex> {
        (-n..=n).map(|x| Vertex::new(x, y)).collect()
    }

    #[test]
    fn lowest_crossing_all_open_is_bottom_row() {
        let cfg = BondConfig::all_open(3);
        let l = lowest_crossing(&cfg).unwrap();
        assert_eq!(l.vertices(), row_path(3, -3).as_slice());
        assert_eq!(l.num_edges(), 6);
    }

    #[test]
    fn lowest_crossing_closed_bottom_row() {
        let n = 3;
        let cfg = BondConfig::from_fn(n, |e| !(e.orientation == Orientation::Horizontal && e.base.y == -3));
        let l = lowest_crossing(&cfg).unwrap();
        assert_eq!(l.vertices(), row_path(3, -2).as_slice());
    }

    #[test]
    fn no_crossing_when_closed_column() {
        let cfg = BondConfig::from_fn(2, |e| !(e.orientation == Orientation::Horizontal && e.base.x == 0));
        assert!(lowest_crossing(&cfg).is_none());
        assert!(!has_horizontal_crossing(&cfg));
    }

    #[test]
    fn all_open_circuits_are_squares() {
        let cfg = BondConfig::all_open(3);
        let d = innermost_circuits(&cfg).unwrap();
        assert_eq!(d.k(), 3);
        for (k, c) in d.circuits.iter().enumerate() {
            let r = k as i32 + 1;
            assert_eq!(c.num_edges(), 8 * r as usize);
            assert!(c.vertices().iter().all(|v| v.norm_inf() == r));
            assert!(c.surrounds_origin());
        }
        assert_eq!(d.connectors.len(), 4);
        assert_eq!(d.connectors[3].vertices(), &[Vertex::new(0, 3)]);
        for (k, p) in d.connectors[..3].iter().enumerate() {
            assert_eq!(p.vertices(), &[Vertex::new(0, k as i32), Vertex::new(0, k as i32 + 1)][..]);
        }
        assert_eq!(d.radial_path().num_edges(), 3);
    }

    #[test]
    fn single_square_circuit() {
        let n = 3;
        let square: Vec<EdgeId> = {
            let ring = crate::lattice::ring_ccw(Vertex::ORIGIN, 1);
            (0..ring.len()).map(|i| EdgeId::between(ring[i], ring[(i + 1) % ring.len()]).unwrap()).collect()
        };
        let spoke: Vec<EdgeId> = (0..n).map(|y| EdgeId::vertical(Vertex::new(0, y))).collect();
        let cfg = BondConfig::from_fn(n as u32, |e| square.contains(&e) || spoke.contains(&e));
        let d = innermost_circuits(&cfg).unwrap();
        assert_eq!(d.k(), 1);
        assert_eq!(d.circuits[0].num_edges(), 8);
        assert!(leftmost_radial_path(&cfg).is_err());
    }

    #[test]
    fn single_column_is_radial_path() {
        let n = 4;
        let cfg = BondConfig::from_fn(n, |e| e.orientation == Orientation::Vertical && e.base.x == 0 && e.base.y >= 0);
        let p = leftmost_radial_path(&cfg).unwrap();
        let expect: Vec<Vertex> = (0..=n as i32).map(|y| Vertex::new(0, y)).collect();
        assert_eq!(p.vertices(), expect.as_slice());
        let d = innermost_circuits(&cfg).unwrap();
        assert_eq!(d.k(), 0);
        assert_eq!(d.connectors[0], p);
    }

    #[test]
    fn loop_erase_removes_cycles() {
        let v = |x, y| Vertex::new(x, y);
        let walk = [v(0, 0), v(1, 0), v(1, 1), v(0, 1), v(0, 0), v(0, -1)];
        assert_eq!(loop_erase(&walk), vec![v(0, 0), v(0, -1)]);
    }

    #[test]
    fn path_json_tags_lattice() {
        let p = LatticePath::dual(vec![Face::new(0, 0), Face::new(0, 1)]).unwrap();
        assert_eq!(p.to_json(), json!({"lattice": "dual", "points": [[0.5, 0.5], [0.5, 1.5]]}));
        assert_eq!(p.edges(), &[EdgeId::horizontal(Vertex::new(0, 1))]);
    }

    #[test]
    fn connected_examples() {
        let g = BoxGeom::new(2);
        let open = BondConfig::all_open(2);
        assert!(connected(&open, &[Vertex::new(-2, 0)], &[Vertex::new(2, 0)], |v| g.contains(v)).unwrap());
        let closed = BondConfig::all_closed(2);
        assert!(!connected(&closed, &[Vertex::new(-2, 0)], &[Vertex::new(2, 0)], |_| true).unwrap());
        assert!(connected(&closed, &[Vertex::ORIGIN], &[], |_| true).is_err());
    }
}
