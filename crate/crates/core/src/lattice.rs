//! Bond configurations on the box `B_n(0)` of the square lattice and their dual.
//!
//! Edges are addressed by [`EdgeId`]: an orientation plus the lower-left
//! endpoint. The total order on edges is `(orientation, y, x)` with horizontal
//! edges first; the bitset layout of [`BondConfig`] follows the same order, so
//! bit `i` of a configuration is the `i`-th edge in that order.
//!
//! Faces of the primal lattice are the vertices of the dual lattice. A face is
//! named by its lower-left corner, so [`Face`] `(x, y)` is the dual vertex
//! `(x + 1/2, y + 1/2)`.

use std::cmp::Ordering;
use std::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex of `Z^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Vertex {
    pub x: i32,
    pub y: i32,
}

impl Vertex {
    pub const ORIGIN: Vertex = Vertex { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Self {
        Vertex { x, y }
    }

    /// `|v|_inf`.
    #[inline]
    pub fn norm_inf(self) -> i32 {
        self.x.abs().max(self.y.abs())
    }

    #[inline]
    pub fn dist_inf(self, other: Vertex) -> i32 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }

    pub fn dist_l1(self, other: Vertex) -> i32 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }

    #[inline]
    pub fn offset(self, dx: i32, dy: i32) -> Vertex {
        Vertex::new(self.x + dx, self.y + dy)
    }

    pub fn step(self, dir: Dir) -> Vertex {
        let (dx, dy) = dir.delta();
        self.offset(dx, dy)
    }

    /// The four lattice neighbours together with the connecting edge, listed in
    /// increasing [`EdgeId`] order.
    #[inline]
    pub fn incident(self) -> [(EdgeId, Vertex); 4] {
        [
            (EdgeId::horizontal(self.offset(-1, 0)), self.offset(-1, 0)),
            (EdgeId::horizontal(self), self.offset(1, 0)),
            (EdgeId::vertical(self.offset(0, -1)), self.offset(0, -1)),
            (EdgeId::vertical(self), self.offset(0, 1)),
        ]
    }

    /// Row-major `(y, x)` key used wherever vertices need a fixed order.
    pub fn key(self) -> (i32, i32) {
        (self.y, self.x)
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Lattice directions, counter-clockwise starting east.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    East,
    North,
    West,
    South,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::East, Dir::North, Dir::West, Dir::South];

    pub fn delta(self) -> (i32, i32) {
        match self {
            Dir::East => (1, 0),
            Dir::North => (0, 1),
            Dir::West => (-1, 0),
            Dir::South => (0, -1),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Dir {
        Dir::ALL[i % 4]
    }

    pub fn ccw(self) -> Dir {
        Dir::from_index(self.index() + 1)
    }

    pub fn cw(self) -> Dir {
        Dir::from_index(self.index() + 3)
    }

    pub fn reverse(self) -> Dir {
        Dir::from_index(self.index() + 2)
    }

    pub fn between(from: Vertex, to: Vertex) -> Option<Dir> {
        match (to.x - from.x, to.y - from.y) {
            (1, 0) => Some(Dir::East),
            (0, 1) => Some(Dir::North),
            (-1, 0) => Some(Dir::West),
            (0, -1) => Some(Dir::South),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// A primal edge: `base -- base + e1` (horizontal) or `base -- base + e2`
/// (vertical). The dual edge `e*` shares its midpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeId {
    pub orientation: Orientation,
    pub base: Vertex,
}

impl EdgeId {
    pub const fn horizontal(base: Vertex) -> Self {
        EdgeId { orientation: Orientation::Horizontal, base }
    }

    pub const fn vertical(base: Vertex) -> Self {
        EdgeId { orientation: Orientation::Vertical, base }
    }

    /// The edge `{0, e1}`.
    pub const fn origin_e1() -> Self {
        EdgeId::horizontal(Vertex::ORIGIN)
    }

    /// The edge joining two nearest neighbours.
    pub fn between(a: Vertex, b: Vertex) -> Option<EdgeId> {
        match (b.x - a.x, b.y - a.y) {
            (1, 0) => Some(EdgeId::horizontal(a)),
            (-1, 0) => Some(EdgeId::horizontal(b)),
            (0, 1) => Some(EdgeId::vertical(a)),
            (0, -1) => Some(EdgeId::vertical(b)),
            _ => None,
        }
    }

    #[inline]
    pub fn endpoints(self) -> (Vertex, Vertex) {
        match self.orientation {
            Orientation::Horizontal => (self.base, self.base.offset(1, 0)),
            Orientation::Vertical => (self.base, self.base.offset(0, 1)),
        }
    }

    /// Endpoints of the dual edge. For a horizontal edge these are the faces
    /// below and above it; for a vertical edge, the faces right and left of it.
    /// Together with [`EdgeId::endpoints`] this lists the four tips
    /// `u, a, v, b` of the edge in counter-clockwise order.
    #[inline]
    pub fn dual_endpoints(self) -> (Face, Face) {
        let Vertex { x, y } = self.base;
        match self.orientation {
            Orientation::Horizontal => (Face::new(x, y - 1), Face::new(x, y)),
            Orientation::Vertical => (Face::new(x, y), Face::new(x - 1, y)),
        }
    }

    #[inline]
    pub fn contains(self, v: Vertex) -> bool {
        let (a, b) = self.endpoints();
        a == v || b == v
    }

    fn key(self) -> (Orientation, i32, i32) {
        (self.orientation, self.base.y, self.base.x)
    }
}

impl Ord for EdgeId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for EdgeId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.endpoints();
        write!(f, "{{{a}, {b}}}")
    }
}

/// A face of the primal lattice, i.e. a dual vertex, named by its lower-left
/// corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    pub x: i32,
    pub y: i32,
}

impl Face {
    pub const fn new(x: i32, y: i32) -> Self {
        Face { x, y }
    }

    /// Centre of the face in the plane.
    pub fn center(self) -> (f64, f64) {
        (self.x as f64 + 0.5, self.y as f64 + 0.5)
    }

    /// `|center - c|_inf` doubled, so that it stays integral.
    #[inline]
    pub fn dist2_inf(self, c: Vertex) -> i32 {
        let dx = (2 * (self.x - c.x) + 1).abs();
        let dy = (2 * (self.y - c.y) + 1).abs();
        dx.max(dy)
    }

    /// Dual neighbours together with the primal edge each dual step crosses.
    #[inline]
    pub fn incident(self) -> [(EdgeId, Face); 4] {
        let Face { x, y } = self;
        [
            (EdgeId::vertical(Vertex::new(x, y)), Face::new(x - 1, y)),
            (EdgeId::vertical(Vertex::new(x + 1, y)), Face::new(x + 1, y)),
            (EdgeId::horizontal(Vertex::new(x, y)), Face::new(x, y - 1)),
            (EdgeId::horizontal(Vertex::new(x, y + 1)), Face::new(x, y + 1)),
        ]
    }

    /// The primal edge crossed by the dual edge between two adjacent faces.
    #[inline]
    pub fn crossing(a: Face, b: Face) -> Option<EdgeId> {
        match (b.x - a.x, b.y - a.y) {
            (1, 0) => Some(EdgeId::vertical(Vertex::new(b.x, b.y))),
            (-1, 0) => Some(EdgeId::vertical(Vertex::new(a.x, a.y))),
            (0, 1) => Some(EdgeId::horizontal(Vertex::new(b.x, b.y))),
            (0, -1) => Some(EdgeId::horizontal(Vertex::new(a.x, a.y))),
            _ => None,
        }
    }

    /// The four primal corners.
    pub fn corners(self) -> [Vertex; 4] {
        let Face { x, y } = self;
        [Vertex::new(x, y), Vertex::new(x + 1, y), Vertex::new(x + 1, y + 1), Vertex::new(x, y + 1)]
    }

    pub fn key(self) -> (i32, i32) {
        (self.y, self.x)
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeState {
    Open,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DualState {
    OpenDual,
    ClosedDual,
}

/// Number of edges with both endpoints in `B_n`.
pub const fn edge_count(n: u32) -> usize {
    let side = 2 * n as usize + 1;
    2 * side * (side - 1)
}

/// Geometry of the box `B_n(0)`: vertex, face and edge indexing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxGeom {
    pub n: i32,
}

impl BoxGeom {
    #[inline]
    pub fn new(n: u32) -> Self {
        BoxGeom { n: n as i32 }
    }

    #[inline]
    pub fn side(self) -> usize {
        (2 * self.n + 1) as usize
    }

    pub fn num_vertices(self) -> usize {
        self.side() * self.side()
    }

    pub fn num_faces(self) -> usize {
        (self.side() - 1) * (self.side() - 1)
    }

    pub fn num_edges(self) -> usize {
        edge_count(self.n as u32)
    }

    #[inline]
    pub fn contains(self, v: Vertex) -> bool {
        v.x.abs() <= self.n && v.y.abs() <= self.n
    }

    #[inline]
    pub fn contains_face(self, f: Face) -> bool {
        f.x >= -self.n && f.x < self.n && f.y >= -self.n && f.y < self.n
    }

    #[inline]
    pub fn contains_edge(self, e: EdgeId) -> bool {
        let (a, b) = e.endpoints();
        self.contains(a) && self.contains(b)
    }

    pub fn on_boundary(self, v: Vertex) -> bool {
        self.contains(v) && v.norm_inf() == self.n
    }

    #[inline]
    pub fn vertex_index(self, v: Vertex) -> usize {
        debug_assert!(self.contains(v));
        (v.y + self.n) as usize * self.side() + (v.x + self.n) as usize
    }

    pub fn vertex_at(self, i: usize) -> Vertex {
        let s = self.side();
        Vertex::new((i % s) as i32 - self.n, (i / s) as i32 - self.n)
    }

    #[inline]
    pub fn face_index(self, f: Face) -> usize {
        debug_assert!(self.contains_face(f));
        (f.y + self.n) as usize * (self.side() - 1) + (f.x + self.n) as usize
    }

    pub fn face_at(self, i: usize) -> Face {
        let s = self.side() - 1;
        Face::new((i % s) as i32 - self.n, (i / s) as i32 - self.n)
    }

    /// Position of `e` in the bitset layout: horizontal edges row by row, then
    /// vertical edges row by row.
    #[inline]
    pub fn edge_index(self, e: EdgeId) -> Option<usize> {
        let n = self.n;
        let side = self.side();
        let Vertex { x, y } = e.base;
        match e.orientation {
            Orientation::Horizontal if x >= -n && x < n && y.abs() <= n => {
                Some((y + n) as usize * (side - 1) + (x + n) as usize)
            }
            Orientation::Vertical if x.abs() <= n && y >= -n && y < n => {
                Some(side * (side - 1) + (y + n) as usize * side + (x + n) as usize)
            }
            _ => None,
        }
    }

    pub fn edge_at(self, i: usize) -> EdgeId {
        let n = self.n;
        let side = self.side();
        let h = side * (side - 1);
        if i < h {
            EdgeId::horizontal(Vertex::new((i % (side - 1)) as i32 - n, (i / (side - 1)) as i32 - n))
        } else {
            let j = i - h;
            EdgeId::vertical(Vertex::new((j % side) as i32 - n, (j / side) as i32 - n))
        }
    }

    /// Vertices of `∂B_n`, counter-clockwise from `(n, -n)`.
    pub fn boundary_ccw(self) -> Vec<Vertex> {
        ring_ccw(Vertex::ORIGIN, self.n)
    }
}

/// The vertices of `∂B_r(c)` in counter-clockwise order, starting at the
/// lower-right corner. For `r = 0` this is `[c]`.
pub fn ring_ccw(c: Vertex, r: i32) -> Vec<Vertex> {
    if r == 0 {
        return vec![c];
    }
    let mut out = Vec::with_capacity(8 * r as usize);
    let mut v = c.offset(r, -r);
    for dir in [Dir::North, Dir::West, Dir::South, Dir::East] {
        for _ in 0..2 * r {
            out.push(v);
            v = v.step(dir);
        }
    }
    out
}

/// Open/closed state of every edge of `B_n(0)`.
///
/// Immutable once built; use [`BondConfig::with_edges`] to derive variants.
#[derive(Clone, PartialEq)]
pub struct BondConfig {
    n: u32,
    p: f64,
    seed: u64,
    stream: u64,
    words: Vec<u64>,
}

impl fmt::Debug for BondConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BondConfig")
            .field("n", &self.n)
            .field("p", &self.p)
            .field("seed", &self.seed)
            .field("stream", &self.stream)
            .field("open", &self.open_count())
            .finish()
    }
}

impl BondConfig {
    fn blank(n: u32) -> Self {
        let words = vec![0u64; edge_count(n).div_ceil(64)];
        BondConfig { n, p: f64::NAN, seed: 0, stream: 0, words }
    }

    /// Build a configuration from a predicate on edges.
    pub fn from_fn(n: u32, mut open: impl FnMut(EdgeId) -> bool) -> Self {
        let mut cfg = Self::blank(n);
        let g = cfg.geom();
        for i in 0..g.num_edges() {
            if open(g.edge_at(i)) {
                cfg.set_bit(i, true);
            }
        }
        cfg
    }

    pub fn all_open(n: u32) -> Self {
        let mut cfg = Self::from_fn(n, |_| true);
        cfg.p = 1.0;
        cfg
    }

    pub fn all_closed(n: u32) -> Self {
        let mut cfg = Self::blank(n);
        cfg.p = 0.0;
        cfg
    }

    /// Rebuild from an explicit bit vector in layout order.
    pub fn from_bits(n: u32, bits: &[bool]) -> Result<Self> {
        if bits.len() != edge_count(n) {
            return Err(Error::InvalidInput(format!(
                "expected {} edge bits for n = {n}, got {}",
                edge_count(n),
                bits.len()
            )));
        }
        let mut cfg = Self::blank(n);
        for (i, &b) in bits.iter().enumerate() {
            cfg.set_bit(i, b);
        }
        Ok(cfg)
    }

    fn set_bit(&mut self, i: usize, open: bool) {
        let (w, b) = (i / 64, i % 64);
        if open {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// A copy with the listed edges forced open or closed.
    pub fn with_edges(&self, edits: &[(EdgeId, bool)]) -> Result<Self> {
        let mut cfg = self.clone();
        let g = self.geom();
        for &(e, open) in edits {
            let i = g.edge_index(e).ok_or(Error::OutOfBox(e))?;
            cfg.set_bit(i, open);
        }
        Ok(cfg)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    #[inline]
    pub fn geom(&self) -> BoxGeom {
        BoxGeom::new(self.n)
    }

    pub fn num_edges(&self) -> usize {
        edge_count(self.n)
    }

    pub fn open_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Open edges are `true`, in layout order.
    pub fn bits(&self) -> Vec<bool> {
        (0..self.num_edges()).map(|i| self.bit(i)).collect()
    }

    /// Whether `e` is open. Edges outside the box read as closed.
    #[inline]
    pub fn is_open(&self, e: EdgeId) -> bool {
        match self.geom().edge_index(e) {
            Some(i) => self.bit(i),
            None => false,
        }
    }

    pub fn edge_state(&self, e: EdgeId) -> Result<EdgeState> {
        let i = self.geom().edge_index(e).ok_or(Error::OutOfBox(e))?;
        Ok(if self.bit(i) { EdgeState::Open } else { EdgeState::Closed })
    }

    /// State of `e*`; it is closed-dual exactly when `e` is closed.
    pub fn dual_state(&self, e: EdgeId) -> Result<DualState> {
        Ok(match self.edge_state(e)? {
            EdgeState::Open => DualState::OpenDual,
            EdgeState::Closed => DualState::ClosedDual,
        })
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.geom().contains(v)
    }

    /// Open neighbours of `v` inside the box, in [`EdgeId`] order.
    pub fn open_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        v.incident().into_iter().filter(|&(e, _)| self.is_open(e)).map(|(_, w)| w)
    }

    /// Serialise into the JSON config-file format.
    pub fn to_file(&self) -> ConfigFile {
        let nbytes = self.num_edges().div_ceil(8);
        let mut bytes = vec![0u8; nbytes];
        for i in 0..self.num_edges() {
            if self.bit(i) {
                bytes[i / 8] |= 0x80 >> (i % 8);
            }
        }
        ConfigFile {
            n: self.n,
            p: self.p,
            seed: self.seed,
            stream: self.stream,
            bits: hex::encode(bytes),
        }
    }

    pub fn from_file(file: &ConfigFile) -> Result<Self> {
        if file.n == 0 {
            return Err(Error::InvalidInput("box radius must be at least 1".into()));
        }
        let bytes = hex::decode(&file.bits)
            .map_err(|e| Error::InvalidInput(format!("bad hex in bits: {e}")))?;
        let m = edge_count(file.n);
        if bytes.len() != m.div_ceil(8) {
            return Err(Error::InvalidInput(format!(
                "bits has {} bytes, expected {} for n = {}",
                bytes.len(),
                m.div_ceil(8),
                file.n
            )));
        }
        let mut cfg = Self::blank(file.n);
        for i in 0..m {
            cfg.set_bit(i, bytes[i / 8] & (0x80 >> (i % 8)) != 0);
        }
        if bytes.last().is_some_and(|&b| !m.is_multiple_of(8) && b & (0xff >> (m % 8)) != 0) {
            return Err(Error::InvalidInput("nonzero padding bits".into()));
        }
        cfg.p = file.p;
        cfg.seed = file.seed;
        cfg.stream = file.stream;
        Ok(cfg)
    }
}

/// On-disk form of a configuration: `{"n", "p", "seed", "stream", "bits"}`,
/// with `bits` a hex string holding the layout bitset most-significant bit
/// first and zero padding in the last byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub n: u32,
    pub p: f64,
    pub seed: u64,
    pub stream: u64,
    pub bits: String,
}

/// Threshold such that a uniform `u32` below it is an open edge.
fn open_threshold(p: f64) -> u64 {
    (p * 4_294_967_296.0).round() as u64
}

fn check_params(n: u32, p: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("box radius must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("p = {p} is not a probability")));
    }
    Ok(())
}

fn edge_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Sample a configuration of `B_n(0)` with every edge open independently
/// with probability `p`.
///
/// Edge `i` (layout order) is open iff the `i`-th 32-bit word of the ChaCha8
/// stream keyed by `(seed, stream)` falls below `p * 2^32`, so any trial can be
/// regenerated on its own.
pub fn sample_config(n: u32, p: f64, seed: u64, stream: u64) -> Result<BondConfig> {
    check_params(n, p)?;
    let thr = open_threshold(p);
    let mut rng = edge_rng(seed, stream);
    let mut cfg = BondConfig::blank(n);
    let m = edge_count(n);
    for (w, word) in cfg.words.iter_mut().enumerate() {
        let lo = w * 64;
        let hi = (lo + 64).min(m);
        let mut acc = 0u64;
        for b in 0..hi - lo {
            if (rng.next_u32() as u64) < thr {
                acc |= 1 << b;
            }
        }
        *word = acc;
    }
    cfg.p = p;
    cfg.seed = seed;
    cfg.stream = stream;
    Ok(cfg)
}

/// The restriction to `B_r(0)` of the configuration that
/// `sample_config(host_n, p, seed, stream)` would produce, generated without
/// touching edges outside `B_r`.
pub fn sample_window(host_n: u32, r: u32, p: f64, seed: u64, stream: u64) -> Result<BondConfig> {
    check_params(host_n, p)?;
    if r == 0 || r > host_n {
        return Err(Error::InvalidInput(format!("window radius {r} not in 1..={host_n}")));
    }
    let host = BoxGeom::new(host_n);
    let thr = open_threshold(p);
    let mut rng = edge_rng(seed, stream);
    let mut cfg = BondConfig::blank(r);
    let g = cfg.geom();
    let ri = r as i32;
    for orientation in [Orientation::Horizontal, Orientation::Vertical] {
        let (xmax, ymax) = match orientation {
            Orientation::Horizontal => (ri - 1, ri),
            Orientation::Vertical => (ri, ri - 1),
        };
        for y in -ri..=ymax {
            let first = EdgeId { orientation, base: Vertex::new(-ri, y) };
            let start = host.edge_index(first).expect("window inside host");
            let local = g.edge_index(first).expect("window edge");
            rng.set_word_pos(start as u128);
            for k in 0..=(xmax + ri) as usize {
                if (rng.next_u32() as u64) < thr {
                    cfg.set_bit(local + k, true);
                }
            }
        }
    }
    cfg.p = p;
    cfg.seed = seed;
    cfg.stream = stream;
    Ok(cfg)
}

/// Every configuration of `B_1`, in increasing bitmask order.
pub fn enumerate_configs(n: u32) -> Result<impl Iterator<Item = BondConfig>> {
    if n != 1 {
        return Err(Error::InvalidInput(format!(
            "exhaustive enumeration only covers n = 1 (n = {n} has 2^{} states)",
            edge_count(n)
        )));
    }
    enumerate_subset(&BondConfig::all_closed(1), &BoxGeom::new(1).all_edges())
}

impl BoxGeom {
    pub fn all_edges(self) -> Vec<EdgeId> {
        (0..self.num_edges()).map(|i| self.edge_at(i)).collect()
    }
}

/// All `2^k` assignments of the given edges (at most 24) on top of `base`.
/// Bit `j` of the mask drives the `j`-th edge in [`EdgeId`] order, and masks
/// are produced in increasing order.
pub fn enumerate_subset(
    base: &BondConfig,
    edges: &[EdgeId],
) -> Result<impl Iterator<Item = BondConfig>> {
    if edges.len() > 24 {
        return Err(Error::InvalidInput(format!(
            "{} free edges exceed the enumeration limit of 24",
            edges.len()
        )));
    }
    let g = base.geom();
    let mut sorted = edges.to_vec();
    sorted.sort();
    sorted.dedup();
    let idx: Vec<usize> = sorted
        .iter()
        .map(|&e| g.edge_index(e).ok_or(Error::OutOfBox(e)))
        .collect::<Result<_>>()?;
    let base = base.clone();
    Ok((0u32..1 << idx.len()).map(move |mask| {
        let mut cfg = base.clone();
        for (j, &i) in idx.iter().enumerate() {
            cfg.set_bit(i, mask >> j & 1 == 1);
        }
        cfg
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn edge_count_matches_direct_count() {
        for n in 1..=8u32 {
            let g = BoxGeom::new(n);
            let ni = n as i32;
            let mut count = 0;
            for y in -ni..=ni {
                for x in -ni..=ni {
                    let v = Vertex::new(x, y);
                    for (e, w) in v.incident() {
                        if g.contains(w) && e.base == v {
                            count += 1;
                        }
                    }
                }
            }
            assert_eq!(count, edge_count(n), "n = {n}");
            assert_eq!(edge_count(n), 2 * (2 * n as usize + 1) * 2 * n as usize);
        }
    }

    #[test]
    fn layout_follows_edge_order() {
        let g = BoxGeom::new(3);
        let edges = g.all_edges();
        assert!(edges.windows(2).all(|w| w[0] < w[1]));
        for (i, e) in edges.iter().enumerate() {
            assert_eq!(g.edge_index(*e), Some(i));
        }
        assert_eq!(g.edge_index(EdgeId::horizontal(Vertex::new(3, 0))), None);
    }

    #[test]
    fn extreme_p_forces_state() {
        let open = sample_config(3, 1.0, 99, 5).unwrap();
        assert_eq!(open.num_edges(), 84);
        assert_eq!(open.open_count(), 84);
        let closed = sample_config(3, 0.0, 99, 5).unwrap();
        assert_eq!(closed.open_count(), 0);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_config(64, 0.5, 7, 3).unwrap();
        let b = sample_config(64, 0.5, 7, 3).unwrap();
        assert_eq!(a.bits(), b.bits());
        let c = sample_config(64, 0.5, 7, 4).unwrap();
        assert_ne!(a.bits(), c.bits());
    }

    #[test]
    fn window_is_a_restriction() {
        let host = sample_config(16, 0.5, 11, 2).unwrap();
        for r in [1, 3, 8, 16] {
            let w = sample_window(16, r, 0.5, 11, 2).unwrap();
            for e in w.geom().all_edges() {
                assert_eq!(w.is_open(e), host.is_open(e), "r = {r}, e = {e}");
            }
        }
    }

    #[test]
    fn open_fraction_near_half() {
        let mut open = 0usize;
        let mut total = 0usize;
        let mut stream = 0;
        while total < 1_000_000 {
            let cfg = sample_config(64, 0.5, 2024, stream).unwrap();
            open += cfg.open_count();
            total += cfg.num_edges();
            stream += 1;
        }
        let frac = open as f64 / total as f64;
        let sd = (0.25 / total as f64).sqrt();
        assert!((frac - 0.5).abs() < 4.0 * sd, "fraction {frac}");
    }

    #[test]
    fn enumerate_b1() {
        let all: Vec<BondConfig> = enumerate_configs(1).unwrap().collect();
        assert_eq!(all.len(), 4096);
        assert_eq!(all[0].open_count(), 0);
        assert_eq!(all[4095].open_count(), 12);
        let distinct: HashSet<Vec<bool>> = all.iter().map(|c| c.bits()).collect();
        assert_eq!(distinct.len(), 4096);
        assert!(enumerate_configs(2).is_err());
    }

    #[test]
    fn dual_state_mirrors_primal() {
        let e = EdgeId::origin_e1();
        let cfg = BondConfig::all_open(2).with_edges(&[(e, false)]).unwrap();
        for f in cfg.geom().all_edges() {
            let expect = if f == e { DualState::ClosedDual } else { DualState::OpenDual };
            assert_eq!(cfg.dual_state(f).unwrap(), expect);
        }
        let closed = BondConfig::all_closed(2);
        assert_eq!(closed.edge_state(e).unwrap(), EdgeState::Closed);
        assert_eq!(closed.dual_state(e).unwrap(), DualState::ClosedDual);
        assert!(cfg.edge_state(EdgeId::horizontal(Vertex::new(2, 2))).is_err());
    }

    #[test]
    fn config_file_roundtrip_and_padding() {
        let cfg = sample_config(1, 0.5, 3, 1).unwrap();
        let file = cfg.to_file();
        // 12 edges -> 2 bytes, low nibble of the second byte is padding.
        assert_eq!(file.bits.len(), 4);
        let back = BondConfig::from_file(&file).unwrap();
        assert_eq!(back, cfg);
        let only_first = BondConfig::from_fn(1, |e| e == BoxGeom::new(1).edge_at(0));
        assert_eq!(only_first.to_file().bits, "8000");
    }

    #[test]
    fn tips_are_counter_clockwise() {
        let e = EdgeId::origin_e1();
        let (a, b) = e.dual_endpoints();
        assert_eq!(a.center(), (0.5, -0.5));
        assert_eq!(b.center(), (0.5, 0.5));
        let v = EdgeId::vertical(Vertex::ORIGIN);
        let (a, b) = v.dual_endpoints();
        assert_eq!(a.center(), (0.5, 0.5));
        assert_eq!(b.center(), (-0.5, 0.5));
    }

    #[test]
    fn face_crossing_inverts_incident() {
        let f = Face::new(2, -1);
        for (e, g) in f.incident() {
            assert_eq!(Face::crossing(f, g), Some(e));
            let (p, q) = e.dual_endpoints();
            assert!((p == f && q == g) || (p == g && q == f));
        }
    }
}
