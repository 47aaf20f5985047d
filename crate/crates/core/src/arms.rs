//! Arm events around an edge or across an annulus, and their Monte Carlo
//! probabilities.
//!
//! An arm event is described by an [`ArmSpec`]: a cyclic word over
//! {open, closed} and a region. Open arms are open primal paths, closed arms
//! are closed dual paths. Arms of one color are vertex-disjoint, start
//! vertices included; arms of different colors live on different lattices and
//! never interact.
//!
//! # Edge events
//!
//! For an edge `e = {u, v}` with base `c` and dual endpoints `a`, `b` (see
//! [`EdgeId::dual_endpoints`]), the four tips `u, a, v, b` are met in this
//! counter-clockwise order. Open arms start at `u` or `v` and avoid `e`;
//! closed arms start at `a` or `b` and avoid `e*`. An open arm ends on
//! `∂B_m(c)`, a closed arm stays on faces of `B_m(c)` and ends by crossing a
//! closed edge of `∂B_m(c)`. Each tip hosts at most one arm, so words with
//! more than two letters of one color (such as `oooo`) never occur around a
//! single edge; use an annulus for those.
//!
//! In the upper half-plane variant only vertices with `y >= c.y` and faces
//! above that line are used, and the word is read linearly from the east tip
//! through the north to the west tip. It is defined for horizontal edges.
//!
//! # Annulus events
//!
//! For `1 <= m <= n` and center `c`, open arms run through the vertices with
//! `m <= |x - c|_inf <= n` from `∂B_m(c)` to `∂B_n(c)`; closed arms run through
//! the faces strictly between the two squares, enter by crossing a closed edge
//! of `∂B_m(c)` and leave by crossing a closed edge of `∂B_n(c)`. Start sites
//! are ordered by walking `∂B_m(c)` counter-clockwise, vertex, edge, vertex.
//! For `m = 0` the hole is the center vertex itself, with the four faces
//! around it as closed start sites.
//!
//! # Decision procedure
//!
//! Per color, clusters that join a start site to the outer boundary are found
//! by search, and each cluster's largest family of disjoint arms is a unit
//! vertex-capacity max-flow. Disjoint crossing clusters meet the inner
//! boundary in non-interleaving blocks, so sorting clusters by their first
//! start site gives the cyclic order of arms, and a small dynamic program
//! decides whether the word can be read off that order.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{ring_ccw, sample_config, BondConfig, BoxGeom, EdgeId, Face, Orientation, Vertex};
use crate::stats::EstimatorResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArmColor {
    Open,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    FullPlane,
    UpperHalfPlane,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArmSpec {
    colors: Vec<ArmColor>,
    region: Region,
}

impl ArmSpec {
    pub fn new(colors: Vec<ArmColor>, region: Region) -> Result<Self> {
        if colors.is_empty() {
            return Err(Error::InvalidInput("an arm spec needs at least one arm".into()));
        }
        Ok(ArmSpec { colors, region })
    }

    fn word(s: &str, region: Region) -> Self {
        s.parse::<ArmSpec>().map(|a| ArmSpec { region, ..a }).expect("static spec")
    }

    /// `[o]`
    pub fn one_arm() -> Self {
        Self::word("o", Region::FullPlane)
    }

    /// `[o, o, c]`
    pub fn three_arm() -> Self {
        Self::word("ooc", Region::FullPlane)
    }

    /// `[o, c, o, c]`
    pub fn four_arm() -> Self {
        Self::word("ococ", Region::FullPlane)
    }

    /// `[o, o, o, o]`
    pub fn four_arm_mono() -> Self {
        Self::word("oooo", Region::FullPlane)
    }

    /// `[o, c, o, c, o]`
    pub fn five_arm() -> Self {
        Self::word("ococo", Region::FullPlane)
    }

    /// `[o, c, o]` read in the upper half-plane.
    pub fn three_arm_half_plane() -> Self {
        Self::word("oco", Region::UpperHalfPlane)
    }

    pub fn colors(&self) -> &[ArmColor] {
        &self.colors
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn count(&self, c: ArmColor) -> usize {
        self.colors.iter().filter(|&&x| x == c).count()
    }
}

impl FromStr for ArmSpec {
    type Err = Error;

    /// Letters `o`/`c`, optionally prefixed by `hp:` for the half-plane.
    fn from_str(s: &str) -> Result<Self> {
        let (region, word) = match s.strip_prefix("hp:") {
            Some(w) => (Region::UpperHalfPlane, w),
            None => (Region::FullPlane, s),
        };
        let colors = word
            .chars()
            .map(|ch| match ch.to_ascii_lowercase() {
                'o' => Ok(ArmColor::Open),
                'c' => Ok(ArmColor::Closed),
                _ => Err(Error::InvalidInput(format!("bad arm letter {ch:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        ArmSpec::new(colors, region)
    }
}

impl fmt::Display for ArmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.region == Region::UpperHalfPlane {
            f.write_str("hp:")?;
        }
        for c in &self.colors {
            f.write_str(match c {
                ArmColor::Open => "o",
                ArmColor::Closed => "c",
            })?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Center {
    Vertex(Vertex),
    Edge(EdgeId),
}

/// The annulus `B_outer(center) \ B_inner(center)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnulusQuery {
    pub inner: u32,
    pub outer: u32,
    pub center: Center,
}

impl AnnulusQuery {
    pub fn at_origin(inner: u32, outer: u32) -> Self {
        AnnulusQuery { inner, outer, center: Center::Vertex(Vertex::ORIGIN) }
    }

    fn base(&self) -> Vertex {
        match self.center {
            Center::Vertex(v) => v,
            Center::Edge(e) => e.base,
        }
    }

    /// Radius of the smallest origin-centred box holding the annulus.
    pub fn host_radius(&self) -> u32 {
        self.base().norm_inf() as u32 + self.outer
    }
}

/// A start site of an arm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Site {
    Primal(Vertex),
    Dual(Face),
}

impl Site {
    pub fn color(self) -> ArmColor {
        match self {
            Site::Primal(_) => ArmColor::Open,
            Site::Dual(_) => ArmColor::Closed,
        }
    }
}

/// Everything that defines an arm event apart from the word: which vertices
/// and faces arms may use, where they start and where they end.
///
/// Shared by the detector here and by the packing search in
/// [`crate::oracle`], so the two differ only in how they decide.
pub(crate) struct ArmGeometry {
    pub g: BoxGeom,
    pub prim_node: Vec<bool>,
    pub prim_target: Vec<bool>,
    pub dual_node: Vec<bool>,
    pub dual_target: Vec<bool>,
    /// Start sites in position order.
    pub sources: Vec<Site>,
    pub forbidden: Option<EdgeId>,
    forbidden_index: Option<usize>,
    pub cyclic: bool,
    /// Inner and outer boundary coincide: every usable start site is an arm.
    pub degenerate: bool,
}

impl ArmGeometry {
    /// Open neighbours of vertex index `i`, by index.
    fn prim_adj(&self, cfg: &BondConfig, i: usize, out: &mut Vec<usize>) {
        out.clear();
        let s = self.g.side();
        let n = self.g.n as usize;
        let (x, y) = (i % s, i / s);
        let vbase = s * (s - 1);
        let mut try_edge = |j: usize, e: usize| {
            if self.prim_node[j] && cfg.bit(e) && Some(e) != self.forbidden_index {
                out.push(j);
            }
        };
        if x > 0 {
            try_edge(i - 1, y * (s - 1) + x - 1);
        }
        if x < 2 * n {
            try_edge(i + 1, y * (s - 1) + x);
        }
        if y > 0 {
            try_edge(i - s, vbase + (y - 1) * s + x);
        }
        if y < 2 * n {
            try_edge(i + s, vbase + y * s + x);
        }
    }

    /// Closed-dual neighbours of face index `i`, by index.
    fn dual_adj(&self, cfg: &BondConfig, i: usize, out: &mut Vec<usize>) {
        out.clear();
        let s = self.g.side();
        let fs = s - 1;
        let (x, y) = (i % fs, i / fs);
        let vbase = s * fs;
        let mut try_edge = |j: usize, e: usize| {
            if self.dual_node[j] && !cfg.bit(e) && Some(e) != self.forbidden_index {
                out.push(j);
            }
        };
        if x > 0 {
            try_edge(i - 1, vbase + y * s + x);
        }
        if x + 1 < fs {
            try_edge(i + 1, vbase + y * s + x + 1);
        }
        if y > 0 {
            try_edge(i - fs, y * fs + x);
        }
        if y + 1 < fs {
            try_edge(i + fs, (y + 1) * fs + x);
        }
    }

    fn empty(g: BoxGeom, cyclic: bool) -> Self {
        ArmGeometry {
            g,
            prim_node: vec![false; g.num_vertices()],
            prim_target: vec![false; g.num_vertices()],
            dual_node: vec![false; g.num_faces()],
            dual_target: vec![false; g.num_faces()],
            sources: vec![],
            forbidden: None,
            forbidden_index: None,
            cyclic,
            degenerate: false,
        }
    }

    /// Plus-shaped hole at an edge, arms to `∂B_m(base)`.
    pub fn edge(cfg: &BondConfig, e: EdgeId, m: u32, region: Region) -> Result<Self> {
        let g = cfg.geom();
        if m == 0 {
            return Err(Error::InvalidInput("edge arm radius must be at least 1".into()));
        }
        let c = e.base;
        let m = m as i32;
        if c.norm_inf() + m > g.n {
            return Err(Error::InvalidInput(format!("B_{m}({c}) leaves the box B_{}", g.n)));
        }
        let half = region == Region::UpperHalfPlane;
        if half && e.orientation == Orientation::Vertical {
            return Err(Error::InvalidInput("half-plane arm events need a horizontal edge".into()));
        }
        let mut geo = ArmGeometry::empty(g, !half);
        geo.forbidden = Some(e);
        geo.forbidden_index = g.edge_index(e);
        let in_half = |y: i32| !half || y >= c.y;
        for y in c.y - m..=c.y + m {
            for x in c.x - m..=c.x + m {
                let v = Vertex::new(x, y);
                if in_half(y) {
                    let i = g.vertex_index(v);
                    geo.prim_node[i] = true;
                    geo.prim_target[i] = v.dist_inf(c) == m;
                }
            }
        }
        let in_faces = |f: Face| f.x >= c.x - m && f.x < c.x + m && f.y >= c.y - m && f.y < c.y + m;
        for y in c.y - m..c.y + m {
            for x in c.x - m..c.x + m {
                let f = Face::new(x, y);
                if in_half(f.y) {
                    let i = g.face_index(f);
                    geo.dual_node[i] = true;
                    geo.dual_target[i] = f
                        .incident()
                        .iter()
                        .any(|&(b, h)| !in_faces(h) && in_half(h.y) && !cfg.is_open(b));
                }
            }
        }
        let (u, v) = e.endpoints();
        let (a, b) = e.dual_endpoints();
        geo.sources = if half {
            vec![Site::Primal(v), Site::Dual(b), Site::Primal(u)]
        } else {
            vec![Site::Primal(u), Site::Dual(a), Site::Primal(v), Site::Dual(b)]
        };
        Ok(geo)
    }

    /// Annulus `B_n(c) \ B_m(c)`.
    pub fn annulus(cfg: &BondConfig, q: &AnnulusQuery, region: Region) -> Result<Self> {
        let g = cfg.geom();
        if region == Region::UpperHalfPlane {
            return Err(Error::InvalidInput("half-plane arm events are defined at edges only".into()));
        }
        if q.outer == 0 || q.inner > q.outer {
            return Err(Error::InvalidInput(format!(
                "annulus radii {} and {} need 0 <= inner <= outer, outer >= 1",
                q.inner, q.outer
            )));
        }
        if q.host_radius() > g.n as u32 {
            return Err(Error::InvalidInput(format!("annulus leaves the box B_{}", g.n)));
        }
        if let (0, Center::Edge(e)) = (q.inner, q.center) {
            return Self::edge(cfg, e, q.outer, region);
        }
        let c = q.base();
        let (m, n) = (q.inner as i32, q.outer as i32);
        let mut geo = ArmGeometry::empty(g, true);
        if m == n {
            geo.degenerate = true;
            let ring = ring_ccw(c, m);
            for i in 0..ring.len() {
                geo.sources.push(Site::Primal(ring[i]));
                let e = EdgeId::between(ring[i], ring[(i + 1) % ring.len()]).unwrap();
                if !cfg.is_open(e) {
                    let (p, r) = e.dual_endpoints();
                    let out = if p.dist2_inf(c) > 2 * m { p } else { r };
                    geo.sources.push(Site::Dual(out));
                }
            }
            return Ok(geo);
        }
        let side = g.side();
        let row = |y: i32| (y + g.n) as usize;
        let col = |x: i32| (x + g.n) as usize;
        for y in c.y - n..=c.y + n {
            let base = row(y) * side;
            let full = (y - c.y).abs() >= m;
            let span = base + col(c.x - n)..=base + col(c.x + n);
            geo.prim_node[span.clone()].iter_mut().for_each(|b| *b = true);
            if !full {
                geo.prim_node[base + col(c.x - m + 1)..base + col(c.x + m)].iter_mut().for_each(|b| *b = false);
            }
            if (y - c.y).abs() == n {
                geo.prim_target[span].iter_mut().for_each(|b| *b = true);
            } else {
                geo.prim_target[base + col(c.x - n)] = true;
                geo.prim_target[base + col(c.x + n)] = true;
            }
        }
        // faces with 2 dist_inf(centre, c) > 2m, i.e. outside the square of
        // half-width m around c
        let fside = side - 1;
        for y in c.y - n..c.y + n {
            let base = row(y) * fside;
            geo.dual_node[base + col(c.x - n)..base + col(c.x + n)].iter_mut().for_each(|b| *b = true);
            if y >= c.y - m && y < c.y + m {
                geo.dual_node[base + col(c.x - m)..base + col(c.x + m)].iter_mut().for_each(|b| *b = false);
            }
        }
        let mut outer_faces = vec![];
        for x in c.x - n..c.x + n {
            outer_faces.push(Face::new(x, c.y - n));
            outer_faces.push(Face::new(x, c.y + n - 1));
        }
        for y in c.y - n..c.y + n {
            outer_faces.push(Face::new(c.x - n, y));
            outer_faces.push(Face::new(c.x + n - 1, y));
        }
        for f in outer_faces {
            let i = g.face_index(f);
            if geo.dual_node[i] {
                geo.dual_target[i] =
                    f.incident().iter().any(|&(b, h)| h.dist2_inf(c) > 2 * n && !cfg.is_open(b));
            }
        }
        if m == 0 {
            geo.sources.push(Site::Primal(c));
            for f in crate::geometry::faces_around(c) {
                geo.sources.push(Site::Dual(f));
            }
        } else {
            let ring = ring_ccw(c, m);
            for i in 0..ring.len() {
                geo.sources.push(Site::Primal(ring[i]));
                let e = EdgeId::between(ring[i], ring[(i + 1) % ring.len()]).unwrap();
                if !cfg.is_open(e) {
                    let (p, r) = e.dual_endpoints();
                    let out = if p.dist2_inf(c) > 2 * m { p } else { r };
                    geo.sources.push(Site::Dual(out));
                }
            }
        }
        Ok(geo)
    }
}

/// A crossing cluster: its color, how many disjoint arms it carries (capped
/// at what the word needs) and its first start site.
#[derive(Clone, Copy, Debug)]
struct Cluster {
    color: ArmColor,
    cap: usize,
    first: usize,
}

/// Whether the word can be read off the clusters in order, each cluster
/// contributing up to `cap` consecutive letters of its own color.
fn realizable(clusters: &[Cluster], word: &[ArmColor], cyclic: bool) -> bool {
    let len = word.len();
    let rotations = if cyclic { len } else { 1 };
    (0..rotations).any(|r| {
        let w: Vec<ArmColor> = (0..len).map(|i| word[(i + r) % len]).collect();
        let mut reach = vec![false; len + 1];
        reach[0] = true;
        for cl in clusters {
            let mut next = reach.clone();
            for j in 0..len {
                if !reach[j] {
                    continue;
                }
                for x in 1..=cl.cap {
                    if j + x > len || w[j + x - 1] != cl.color {
                        break;
                    }
                    next[j + x] = true;
                }
            }
            reach = next;
        }
        reach[len]
    })
}

/// Largest number of vertex-disjoint paths from `sources` to targets in a
/// small undirected graph, stopping once `cap` is reached.
fn disjoint_paths(adj: &[Vec<u32>], sources: &[usize], target: &[bool], cap: usize) -> usize {
    let l = adj.len();
    let (s, t) = (2 * l, 2 * l + 1);
    let mut head = vec![usize::MAX; 2 * l + 2];
    let mut to: Vec<usize> = vec![];
    let mut res: Vec<u8> = vec![];
    let mut next: Vec<usize> = vec![];
    let mut add = |u: usize, v: usize| {
        for (a, b, c) in [(u, v, 1u8), (v, u, 0u8)] {
            to.push(b);
            res.push(c);
            next.push(head[a]);
            head[a] = to.len() - 1;
        }
    };
    for i in 0..l {
        add(2 * i, 2 * i + 1);
        for &j in &adj[i] {
            add(2 * i + 1, 2 * j as usize);
        }
        if target[i] {
            add(2 * i + 1, t);
        }
    }
    for &i in sources {
        add(s, 2 * i);
    }
    let mut flow = 0;
    let mut via = vec![usize::MAX; 2 * l + 2];
    while flow < cap {
        via.iter_mut().for_each(|x| *x = usize::MAX);
        let mut queue = VecDeque::from([s]);
        via[s] = usize::MAX - 1;
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            let mut k = head[u];
            while k != usize::MAX {
                let v = to[k];
                if res[k] > 0 && via[v] == usize::MAX {
                    via[v] = k;
                    queue.push_back(v);
                }
                k = next[k];
            }
        }
        if via[t] == usize::MAX {
            break;
        }
        let mut v = t;
        while v != s {
            let k = via[v];
            res[k] -= 1;
            res[k ^ 1] += 1;
            v = to[k ^ 1];
        }
        flow += 1;
    }
    flow
}

/// A crossing cluster before its flow is known.
struct Found {
    cluster: Cluster,
    members: Vec<usize>,
    srcs: Vec<usize>,
}

/// Crossing clusters of one color, found by search from each start site in
/// position order, with `cap` set to the cheap bound `min(need, #starts)`.
/// Nodes are indices in `0..num`.
fn clusters_of(
    starts: &[(usize, usize)],
    num: usize,
    neighbors: &dyn Fn(usize, &mut Vec<usize>),
    target: &[bool],
    color: ArmColor,
    need: usize,
) -> Vec<Found> {
    const NONE: u32 = u32::MAX;
    let mut comp = vec![NONE; num];
    let mut out = vec![];
    let mut buf = vec![];
    for (id, &(pos, s)) in starts.iter().enumerate() {
        if comp[s] != NONE {
            continue;
        }
        let id = id as u32;
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        let mut crossing = false;
        while i < members.len() {
            crossing |= target[members[i]];
            neighbors(members[i], &mut buf);
            for &w in &buf {
                if comp[w] == NONE {
                    comp[w] = id;
                    members.push(w);
                }
            }
            i += 1;
        }
        if !crossing {
            continue;
        }
        let srcs: Vec<usize> = starts.iter().filter(|&&(_, x)| comp[x] == id).map(|&(_, x)| x).collect();
        let cap = need.min(srcs.len());
        out.push(Found { cluster: Cluster { color, cap, first: pos }, members, srcs });
    }
    out
}

/// Replaces the bound in `f.cluster.cap` by the true number of disjoint arms.
fn settle(f: &mut Found, num: usize, neighbors: &dyn Fn(usize, &mut Vec<usize>), target: &[bool]) {
    let mut local = vec![u32::MAX; num];
    for (i, &w) in f.members.iter().enumerate() {
        local[w] = i as u32;
    }
    let mut buf = vec![];
    let tgt: Vec<bool> = f.members.iter().map(|&w| target[w]).collect();
    let adj: Vec<Vec<u32>> = f
        .members
        .iter()
        .map(|&w| {
            neighbors(w, &mut buf);
            buf.iter().map(|&x| local[x]).collect()
        })
        .collect();
    let srcs: Vec<usize> = f.srcs.iter().map(|&x| local[x] as usize).collect();
    f.cluster.cap = disjoint_paths(&adj, &srcs, &tgt, f.cluster.cap);
}

fn enough(found: &[Cluster], need: usize) -> bool {
    found.iter().map(|c| c.cap).sum::<usize>() >= need
}

fn decide(cfg: &BondConfig, geo: &ArmGeometry, spec: &ArmSpec) -> bool {
    let need_o = spec.count(ArmColor::Open);
    let need_c = spec.count(ArmColor::Closed);
    if geo.degenerate {
        let clusters: Vec<Cluster> = geo
            .sources
            .iter()
            .enumerate()
            .map(|(pos, s)| Cluster { color: s.color(), cap: 1, first: pos })
            .collect();
        return realizable(&clusters, spec.colors(), geo.cyclic);
    }
    let g = geo.g;
    let prim_starts: Vec<(usize, usize)> = geo
        .sources
        .iter()
        .enumerate()
        .filter_map(|(p, s)| match s {
            Site::Primal(v) => Some((p, g.vertex_index(*v))),
            Site::Dual(_) => None,
        })
        .collect();
    let dual_starts: Vec<(usize, usize)> = geo
        .sources
        .iter()
        .enumerate()
        .filter_map(|(p, s)| match s {
            Site::Dual(f) => Some((p, g.face_index(*f))),
            Site::Primal(_) => None,
        })
        .collect();
    let pn = |i: usize, out: &mut Vec<usize>| geo.prim_adj(cfg, i, out);
    let dn = |i: usize, out: &mut Vec<usize>| geo.dual_adj(cfg, i, out);
    let (nv, nf) = (g.num_vertices(), g.num_faces());

    let mut open = vec![];
    if need_o > 0 {
        open = clusters_of(&prim_starts, nv, &pn, &geo.prim_target, ArmColor::Open, need_o);
        let caps: Vec<Cluster> = open.iter().map(|f| f.cluster).collect();
        if !enough(&caps, need_o) {
            return false;
        }
    }
    let mut closed = vec![];
    if need_c > 0 {
        closed = clusters_of(&dual_starts, nf, &dn, &geo.dual_target, ArmColor::Closed, need_c);
        let caps: Vec<Cluster> = closed.iter().map(|f| f.cluster).collect();
        if !enough(&caps, need_c) {
            return false;
        }
    }
    let gather = |open: &[Found], closed: &[Found]| {
        let mut all: Vec<Cluster> = open.iter().chain(closed).map(|f| f.cluster).collect();
        all.sort_by_key(|c| c.first);
        all
    };
    if need_o > 0 && need_c > 0 && !realizable(&gather(&open, &closed), spec.colors(), geo.cyclic) {
        return false;
    }
    for f in open.iter_mut() {
        settle(f, nv, &pn, &geo.prim_target);
    }
    for f in closed.iter_mut() {
        settle(f, nf, &dn, &geo.dual_target);
    }
    open.retain(|f| f.cluster.cap > 0);
    closed.retain(|f| f.cluster.cap > 0);
    let caps = |v: &[Found]| v.iter().map(|f| f.cluster.cap).sum::<usize>();
    if caps(&open) < need_o || caps(&closed) < need_c {
        return false;
    }
    if need_o == 0 || need_c == 0 {
        return true;
    }
    realizable(&gather(&open, &closed), spec.colors(), geo.cyclic)
}

/// Arms from the edge `e` to `∂B_m(e.base)` realising `spec`.
pub fn edge_arm_event(cfg: &BondConfig, e: EdgeId, m: u32, spec: &ArmSpec) -> Result<bool> {
    let geo = ArmGeometry::edge(cfg, e, m, spec.region())?;
    Ok(decide(cfg, &geo, spec))
}

/// Arms crossing the annulus `q` realising `spec`.
pub fn annulus_arm_event(cfg: &BondConfig, q: &AnnulusQuery, spec: &ArmSpec) -> Result<bool> {
    let geo = ArmGeometry::annulus(cfg, q, spec.region())?;
    Ok(decide(cfg, &geo, spec))
}

/// Shape of the event whose probability [`estimate_pi`] estimates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArmShape {
    /// Edge `{0, e_1}` with arms to distance `radius`.
    Edge { radius: u32 },
    Annulus(AnnulusQuery),
}

impl ArmShape {
    pub fn host_radius(&self) -> u32 {
        match self {
            ArmShape::Edge { radius } => *radius,
            ArmShape::Annulus(q) => q.host_radius(),
        }
    }

    pub fn holds(&self, cfg: &BondConfig, spec: &ArmSpec) -> Result<bool> {
        match self {
            ArmShape::Edge { radius } => edge_arm_event(cfg, EdgeId::origin_e1(), *radius, spec),
            ArmShape::Annulus(q) => annulus_arm_event(cfg, q, spec),
        }
    }
}

/// Unconditional Monte Carlo estimate of an arm probability at `p = 1/2`.
///
/// Trial `i` uses stream `i` of `seed` on the smallest origin-centred box
/// holding the shape; hits are summed, so the result is schedule-free.
pub fn estimate_pi(spec: &ArmSpec, shape: &ArmShape, trials: u64, seed: u64) -> Result<EstimatorResult> {
    estimate_pi_at(spec, shape, trials, seed, 0.5)
}

pub fn estimate_pi_at(
    spec: &ArmSpec,
    shape: &ArmShape,
    trials: u64,
    seed: u64,
    p: f64,
) -> Result<EstimatorResult> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let host = shape.host_radius().max(1);
    shape.holds(&BondConfig::all_open(host), spec)?;
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|i| {
            let cfg = sample_config(host, p, seed, i).expect("validated parameters");
            shape.holds(&cfg, spec).expect("validated shape") as u64
        })
        .sum();
    Ok(EstimatorResult::proportion(trials, trials, hits, seed))
}

/// Radius at which an edge of a radial path is tested for three arms:
/// `min(dist(e, 0), dist(e, ∂B_n))` with both distances taken over the
/// endpoints in the sup norm.
pub fn radial_arm_radius(e: EdgeId, n: u32) -> u32 {
    let (u, v) = e.endpoints();
    let near = u.norm_inf().min(v.norm_inf());
    let far = n as i32 - u.norm_inf().max(v.norm_inf());
    near.min(far).max(0) as u32
}
