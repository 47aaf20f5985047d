//! Brute-force references for small boxes.
//!
//! Everything here works by exhaustive enumeration (of configurations, of
//! self-avoiding paths or of disjoint path packings) and shares no search code
//! with the production modules. The arm packing search reads the same event
//! geometry as the detector, which is the event's definition.

use std::collections::{HashMap, HashSet};

use crate::arms::{AnnulusQuery, ArmColor, ArmGeometry, ArmSpec, Site};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_configs, BondConfig, BoxGeom, EdgeId, Face, Orientation, Vertex};

/// Calls `f` on every self-avoiding open path from `start` that stays in
/// `allowed` and ends at its first vertex satisfying `stop`.
pub fn for_each_open_path(
    cfg: &BondConfig,
    start: Vertex,
    allowed: &dyn Fn(Vertex) -> bool,
    stop: &dyn Fn(Vertex) -> bool,
    f: &mut dyn FnMut(&[Vertex]),
) {
    fn rec(
        cfg: &BondConfig,
        path: &mut Vec<Vertex>,
        seen: &mut HashSet<Vertex>,
        allowed: &dyn Fn(Vertex) -> bool,
        stop: &dyn Fn(Vertex) -> bool,
        f: &mut dyn FnMut(&[Vertex]),
    ) {
        let v = *path.last().unwrap();
        if stop(v) {
            f(path);
            return;
        }
        for (e, w) in v.incident() {
            if cfg.is_open(e) && allowed(w) && !seen.contains(&w) {
                seen.insert(w);
                path.push(w);
                rec(cfg, path, seen, allowed, stop, f);
                path.pop();
                seen.remove(&w);
            }
        }
    }
    if !allowed(start) {
        return;
    }
    let mut path = vec![start];
    let mut seen = HashSet::from([start]);
    rec(cfg, &mut path, &mut seen, allowed, stop, f);
}

/// All open self-avoiding left-right crossings of `B_n` touching each side
/// exactly once.
pub fn all_crossings(cfg: &BondConfig) -> Vec<Vec<Vertex>> {
    let n = cfg.n() as i32;
    let mut out = vec![];
    for y in -n..=n {
        let allowed = |v: Vertex| v.x.abs() <= n && v.y.abs() <= n && (v.x > -n || v == Vertex::new(-n, y));
        for_each_open_path(cfg, Vertex::new(-n, y), &allowed, &|v| v.x == n, &mut |p| out.push(p.to_vec()));
    }
    out
}

/// Faces below a crossing, counted by casting a ray downwards from each face
/// centre and counting the crossing's horizontal edges it meets.
pub fn faces_below(n: i32, path: &[Vertex]) -> usize {
    let horiz: HashSet<EdgeId> = path
        .windows(2)
        .filter_map(|w| EdgeId::between(w[0], w[1]))
        .filter(|e| e.orientation == Orientation::Horizontal)
        .collect();
    let mut count = 0;
    for fy in -n..n {
        for fx in -n..n {
            let hits = (-n..=fy).filter(|&y| horiz.contains(&EdgeId::horizontal(Vertex::new(fx, y)))).count();
            if hits % 2 == 0 {
                count += 1;
            }
        }
    }
    count
}

/// The crossing with the fewest faces below it. Panics if two crossings tie.
pub fn lowest_crossing_by_enumeration(cfg: &BondConfig) -> Option<Vec<Vertex>> {
    let n = cfg.n() as i32;
    let all = all_crossings(cfg);
    let best = all.iter().map(|p| faces_below(n, p)).min()?;
    let winners: Vec<&Vec<Vertex>> = all.iter().filter(|p| faces_below(n, p) == best).collect();
    assert_eq!(winners.len(), 1, "minimal crossing is not unique");
    Some(winners[0].clone())
}

/// `S_n` as the shortest enumerated crossing.
pub fn shortest_crossing_by_enumeration(cfg: &BondConfig) -> Option<usize> {
    all_crossings(cfg).iter().map(|p| p.len() - 1).min()
}

/// Chemical distance by exhaustive self-avoiding path search.
pub fn chem_dist_by_enumeration(cfg: &BondConfig, a: &[Vertex], b: &[Vertex]) -> Option<usize> {
    let g = cfg.geom();
    let targets: HashSet<Vertex> = b.iter().copied().collect();
    let mut best: Option<usize> = None;
    for &s in a {
        for_each_open_path(cfg, s, &|v| g.contains(v), &|v| targets.contains(&v), &mut |p| {
            best = Some(best.map_or(p.len() - 1, |x| x.min(p.len() - 1)));
        });
    }
    best
}

/// Exact conditional statistics at `n = 1`, `p = 1/2`, from all 4096
/// configurations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExactN1 {
    /// `P(H_1)`
    pub p_crossing: f64,
    /// `E[S_1 | H_1]`
    pub mean_crossing: f64,
    /// `P(A_1)`
    pub p_radial: f64,
    /// `E[S_{B_1(0)} | A_1]`
    pub mean_radial: f64,
}

pub fn exact_n1() -> ExactN1 {
    let boundary: Vec<Vertex> = crate::lattice::ring_ccw(Vertex::ORIGIN, 1);
    let (mut h, mut s_sum, mut a, mut r_sum) = (0u64, 0u64, 0u64, 0u64);
    for cfg in enumerate_configs(1).expect("n = 1") {
        if let Some(s) = shortest_crossing_by_enumeration(&cfg) {
            h += 1;
            s_sum += s as u64;
        }
        if let Some(r) = chem_dist_by_enumeration(&cfg, &[Vertex::ORIGIN], &boundary) {
            a += 1;
            r_sum += r as u64;
        }
    }
    ExactN1 {
        p_crossing: h as f64 / 4096.0,
        mean_crossing: s_sum as f64 / h as f64,
        p_radial: a as f64 / 4096.0,
        mean_radial: r_sum as f64 / a as f64,
    }
}

/// Every simple cycle of the grid graph on `B_n`, each listed once with its
/// smallest vertex first. Practical for `n <= 2` (9349 cycles).
pub fn grid_cycles(n: u32) -> Vec<Vec<Vertex>> {
    let g = BoxGeom::new(n);
    let verts: Vec<Vertex> = (0..g.num_vertices()).map(|i| g.vertex_at(i)).collect();
    let mut out = vec![];
    for &s in &verts {
        let mut path = vec![s];
        let mut seen = HashSet::from([s]);
        fn rec(
            g: BoxGeom,
            s: Vertex,
            path: &mut Vec<Vertex>,
            seen: &mut HashSet<Vertex>,
            out: &mut Vec<Vec<Vertex>>,
        ) {
            let v = *path.last().unwrap();
            for (_, w) in v.incident() {
                if !g.contains(w) || w < s {
                    continue;
                }
                if w == s && path.len() >= 4 && path[1] < v {
                    out.push(path.clone());
                } else if !seen.contains(&w) && w != s {
                    seen.insert(w);
                    path.push(w);
                    rec(g, s, path, seen, out);
                    path.pop();
                    seen.remove(&w);
                }
            }
        }
        rec(g, s, &mut path, &mut seen, &mut out);
    }
    out
}

fn cycle_edges(c: &[Vertex]) -> Vec<EdgeId> {
    let c = if c.len() > 1 && c[0] == c[c.len() - 1] { &c[..c.len() - 1] } else { c };
    (0..c.len()).map(|i| EdgeId::between(c[i], c[(i + 1) % c.len()]).unwrap()).collect()
}

/// Faces strictly inside a cycle, by ray casting to the right.
pub fn cycle_interior(n: i32, c: &[Vertex]) -> HashSet<Face> {
    let verticals: HashSet<EdgeId> =
        cycle_edges(c).into_iter().filter(|e| e.orientation == Orientation::Vertical).collect();
    let mut inside = HashSet::new();
    for fy in -n..n {
        for fx in -n..n {
            let hits = (fx + 1..=n).filter(|&x| verticals.contains(&EdgeId::vertical(Vertex::new(x, fy)))).count();
            if hits % 2 == 1 {
                inside.insert(Face::new(fx, fy));
            }
        }
    }
    inside
}

/// Reference answers about open circuits around the origin.
#[derive(Clone, Debug)]
pub struct CircuitOracle {
    /// Open cycles with the origin strictly inside, as vertex sets, with
    /// their interior face counts.
    pub around: Vec<(HashSet<Vertex>, usize)>,
    /// Largest family of pairwise vertex-disjoint such cycles.
    pub max_disjoint: usize,
}

impl CircuitOracle {
    pub fn new(cfg: &BondConfig, cycles: &[Vec<Vertex>]) -> Self {
        let n = cfg.n() as i32;
        let origin = Face::new(0, 0);
        let around: Vec<(HashSet<Vertex>, usize)> = cycles
            .iter()
            .filter(|c| !c.contains(&Vertex::ORIGIN))
            .filter(|c| cycle_edges(c).iter().all(|&e| cfg.is_open(e)))
            .filter_map(|c| {
                let inside = cycle_interior(n, c);
                inside.contains(&origin).then(|| (c.iter().copied().collect(), inside.len()))
            })
            .collect();
        fn best(sets: &[(HashSet<Vertex>, usize)], chosen: &mut Vec<usize>, from: usize) -> usize {
            let mut m = chosen.len();
            for i in from..sets.len() {
                if chosen.iter().all(|&j| sets[j].0.is_disjoint(&sets[i].0)) {
                    chosen.push(i);
                    m = m.max(best(sets, chosen, i + 1));
                    chosen.pop();
                }
            }
            m
        }
        let max_disjoint = best(&around, &mut vec![], 0);
        CircuitOracle { around, max_disjoint }
    }

    /// The unique open cycle around 0 with least interior that avoids
    /// `avoid` and encloses all of it.
    pub fn innermost_avoiding(&self, n: i32, avoid: &HashSet<Vertex>, avoid_interior: usize) -> Option<HashSet<Vertex>> {
        let _ = n;
        let ok: Vec<&(HashSet<Vertex>, usize)> = self
            .around
            .iter()
            .filter(|(s, area)| s.is_disjoint(avoid) && *area > avoid_interior)
            .collect();
        let least = ok.iter().map(|(_, a)| *a).min()?;
        let winners: Vec<_> = ok.iter().filter(|(_, a)| *a == least).collect();
        assert_eq!(winners.len(), 1, "innermost circuit is not unique");
        Some(winners[0].0.clone())
    }
}

/// Open self-avoiding paths from the origin to `∂B_n` with every other
/// vertex strictly inside.
pub fn radial_paths(cfg: &BondConfig) -> Vec<Vec<Vertex>> {
    let n = cfg.n() as i32;
    let mut out = vec![];
    for_each_open_path(
        cfg,
        Vertex::ORIGIN,
        &|v| v.norm_inf() <= n,
        &|v| v.norm_inf() == n,
        &mut |p| out.push(p.to_vec()),
    );
    out
}

/// Faces between the closed dual path `c` and the radial path `sigma`: the
/// faces right of `sigma` up to `c`, including the faces at the origin
/// counter-clockwise after `c`'s first face and before `sigma`'s first edge.
pub fn wedge_faces(g: BoxGeom, sigma: &[Vertex], c: &[Face]) -> HashSet<Face> {
    let blocked: HashSet<Face> = c.iter().copied().collect();
    let walls: HashSet<EdgeId> = sigma.windows(2).filter_map(|w| EdgeId::between(w[0], w[1])).collect();
    let around = [Face::new(0, 0), Face::new(-1, 0), Face::new(-1, -1), Face::new(0, -1)];
    let i = around.iter().position(|f| *f == c[0]).expect("dual path starts at the origin");
    // the edge from 0 between around[j] and around[j + 1] points N, W, S, E
    let first = sigma[1];
    let j = [Vertex::new(0, 1), Vertex::new(-1, 0), Vertex::new(0, -1), Vertex::new(1, 0)]
        .iter()
        .position(|&v| v == first)
        .unwrap();
    let mut seeds: Vec<Face> = (1..=(j + 4 - i) % 4).map(|s| around[(i + s) % 4]).collect();
    for w in sigma.windows(2) {
        let (dx, dy) = (w[1].x - w[0].x, w[1].y - w[0].y);
        let right = match (dx, dy) {
            (1, 0) => Face::new(w[0].x, w[0].y - 1),
            (0, 1) => Face::new(w[0].x, w[0].y),
            (-1, 0) => Face::new(w[0].x - 1, w[0].y),
            _ => Face::new(w[0].x - 1, w[0].y - 1),
        };
        seeds.push(right);
    }
    let mut region = HashSet::new();
    let mut stack: Vec<Face> =
        seeds.into_iter().filter(|f| g.contains_face(*f) && !blocked.contains(f)).collect();
    while let Some(f) = stack.pop() {
        if !region.insert(f) {
            continue;
        }
        for (e, h) in f.incident() {
            if g.contains_face(h) && !walls.contains(&e) && !blocked.contains(&h) && !region.contains(&h) {
                stack.push(h);
            }
        }
    }
    region
}

/// Open radial paths that use a vertex off `sigma` touching a wedge face.
pub fn wedge_intrusions(cfg: &BondConfig, sigma: &[Vertex], c: &[Face]) -> usize {
    let region = wedge_faces(cfg.geom(), sigma, c);
    let on_sigma: HashSet<Vertex> = sigma.iter().copied().collect();
    radial_paths(cfg)
        .iter()
        .filter(|p| {
            p.iter().any(|v| {
                !on_sigma.contains(v)
                    && [Face::new(v.x, v.y), Face::new(v.x - 1, v.y), Face::new(v.x - 1, v.y - 1), Face::new(v.x, v.y - 1)]
                        .iter()
                        .any(|f| region.contains(f))
            })
        })
        .count()
}

/// The canonical detour arc around `e` by listing every open arc that leaves
/// `l` upwards and lands back on it from above, inside `B_budget(e.base)`.
///
/// The shield is only checked for existence, with a flood fill of closed
/// faces above `l` that skips the two end faces.
pub fn detour_arc_by_enumeration(
    cfg: &BondConfig,
    l: &crate::geometry::LatticePath,
    e: EdgeId,
    eps: f64,
    budget: i32,
) -> Option<Vec<Vertex>> {
    let n = cfg.n() as i32;
    let g = cfg.geom();
    let vs = l.vertices();
    let k = l.edges().iter().position(|&x| x == e)?;
    let below = crate::geometry::below_region(g, l);
    let pos = |v: Vertex| vs.iter().position(|&u| u == v);
    let flat = |i: usize| {
        i > 0 && i + 1 < vs.len() && {
            let w = vs[i];
            let pair = [vs[i - 1], vs[i + 1]];
            pair.contains(&w.offset(-1, 0)) && pair.contains(&w.offset(1, 0))
        }
    };
    let inside = |v: Vertex| v.x.abs() < n && v.y.abs() < n && v.dist_inf(e.base) <= budget;
    let free = |v: Vertex| inside(v) && pos(v).is_none() && !below.contains_vertex(v);
    let face_free = |f: Face| g.contains_face(f) && !below.contains_face(f);
    let shielded = |w0: Vertex, wm: Vertex| {
        let (fa, fa1) = (Face::new(w0.x - 1, w0.y), Face::new(w0.x - 1, w0.y + 1));
        let (fb, fb1) = (Face::new(wm.x, wm.y), Face::new(wm.x, wm.y + 1));
        if fa == fb || fa1 == fb || fb1 == fa || ![fa, fa1, fb, fb1].iter().all(|&f| face_free(f)) {
            return false;
        }
        let closed = |a: Face, b: Face| !cfg.is_open(Face::crossing(a, b).unwrap());
        if !closed(fa, fa1) || !closed(fb1, fb) {
            return false;
        }
        let mut seen = HashSet::from([fa1]);
        let mut stack = vec![fa1];
        while let Some(f) = stack.pop() {
            if f == fb1 {
                return true;
            }
            for (_, h) in f.incident() {
                if face_free(h) && h != fa && h != fb && closed(f, h) && seen.insert(h) {
                    stack.push(h);
                }
            }
        }
        false
    };
    let mut best: Option<Vec<Vertex>> = None;
    for (i, &w0) in vs.iter().enumerate() {
        if !flat(i) || !inside(w0) || !cfg.is_open(EdgeId::vertical(w0)) || !free(w0.offset(0, 1)) {
            continue;
        }
        for_each_open_path(
            cfg,
            w0.offset(0, 1),
            &|v| free(v) || pos(v).is_some_and(|j| j != i),
            &|v| pos(v).is_some(),
            &mut |arc| {
                let wm = *arc.last().unwrap();
                let j = pos(wm).unwrap();
                let m = arc.len();
                if arc[m - 2] != wm.offset(0, 1) || !flat(j) || !inside(wm) || !(i.min(j) <= k && k < i.max(j)) {
                    return;
                }
                if vs[i.min(j)..=i.max(j)].iter().any(|v| v.x.abs() >= n || v.y.abs() >= n) {
                    return;
                }
                let p: Vec<Vertex> = std::iter::once(w0).chain(arc.iter().copied()).collect();
                if (p.len() as f64) > eps * (i.abs_diff(j) + 1) as f64 || !shielded(w0, wm) {
                    return;
                }
                if best.as_ref().is_none_or(|b| (p.len(), &p) < (b.len(), b)) {
                    best = Some(p);
                }
            },
        );
    }
    best
}

/// Arm event decided by searching for explicit vertex-disjoint path
/// packings, for an edge.
pub fn edge_arm_event_by_packing(cfg: &BondConfig, e: EdgeId, m: u32, spec: &ArmSpec) -> Result<bool> {
    let geo = ArmGeometry::edge(cfg, e, m, spec.region())?;
    Ok(pack(cfg, &geo, spec))
}

/// Arm event decided by explicit packing, for an annulus.
pub fn annulus_arm_event_by_packing(cfg: &BondConfig, q: &AnnulusQuery, spec: &ArmSpec) -> Result<bool> {
    let geo = ArmGeometry::annulus(cfg, q, spec.region())?;
    Ok(pack(cfg, &geo, spec))
}

fn pack(cfg: &BondConfig, geo: &ArmGeometry, spec: &ArmSpec) -> bool {
    let word = spec.colors();
    let k = word.len();
    let colors: Vec<ArmColor> = geo.sources.iter().map(|s| s.color()).collect();
    if k > colors.len() {
        return false;
    }
    let rotations: Vec<Vec<ArmColor>> = if geo.cyclic {
        (0..k).map(|r| (0..k).map(|i| word[(i + r) % k]).collect()).collect()
    } else {
        vec![word.to_vec()]
    };
    let mut memo: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut chosen = vec![];
    #[allow(clippy::too_many_arguments)]
    fn choose(
        cfg: &BondConfig,
        geo: &ArmGeometry,
        colors: &[ArmColor],
        rotations: &[Vec<ArmColor>],
        k: usize,
        from: usize,
        chosen: &mut Vec<usize>,
        memo: &mut HashMap<Vec<usize>, bool>,
    ) -> bool {
        if chosen.len() == k {
            let seq: Vec<ArmColor> = chosen.iter().map(|&i| colors[i]).collect();
            if !rotations.contains(&seq) {
                return false;
            }
            if geo.degenerate {
                return true;
            }
            let open: Vec<usize> = chosen.iter().copied().filter(|&i| colors[i] == ArmColor::Open).collect();
            let closed: Vec<usize> = chosen.iter().copied().filter(|&i| colors[i] == ArmColor::Closed).collect();
            for set in [open, closed] {
                if set.is_empty() {
                    continue;
                }
                let ok = *memo.entry(set.clone()).or_insert_with(|| route_all(cfg, geo, &set));
                if !ok {
                    return false;
                }
            }
            return true;
        }
        for i in from..colors.len() {
            chosen.push(i);
            if choose(cfg, geo, colors, rotations, k, i + 1, chosen, memo) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    choose(cfg, geo, &colors, &rotations, k, 0, &mut chosen, &mut memo)
}

/// Node of either lattice, keyed for hashing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    P(Vertex),
    D(Face),
}

fn neighbors(cfg: &BondConfig, geo: &ArmGeometry, x: Node) -> Vec<Node> {
    match x {
        Node::P(v) => v
            .incident()
            .into_iter()
            .filter(|&(e, w)| {
                geo.g.contains(w) && geo.prim_node[geo.g.vertex_index(w)] && Some(e) != geo.forbidden && cfg.is_open(e)
            })
            .map(|(_, w)| Node::P(w))
            .collect(),
        Node::D(f) => f
            .incident()
            .into_iter()
            .filter(|&(e, h)| {
                geo.g.contains_face(h) && geo.dual_node[geo.g.face_index(h)] && Some(e) != geo.forbidden && !cfg.is_open(e)
            })
            .map(|(_, h)| Node::D(h))
            .collect(),
    }
}

fn is_target(geo: &ArmGeometry, x: Node) -> bool {
    match x {
        Node::P(v) => geo.prim_target[geo.g.vertex_index(v)],
        Node::D(f) => geo.dual_target[geo.g.face_index(f)],
    }
}

/// Can `from` reach a target without touching `blocked`?
fn reaches(cfg: &BondConfig, geo: &ArmGeometry, from: Node, blocked: &HashSet<Node>) -> bool {
    let mut stack = vec![from];
    let mut seen = HashSet::from([from]);
    while let Some(x) = stack.pop() {
        if is_target(geo, x) {
            return true;
        }
        for y in neighbors(cfg, geo, x) {
            if !blocked.contains(&y) && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    false
}

/// Route one arm from each listed start site, pairwise vertex-disjoint.
fn route_all(cfg: &BondConfig, geo: &ArmGeometry, set: &[usize]) -> bool {
    let starts: Vec<Node> = set
        .iter()
        .map(|&i| match geo.sources[i] {
            Site::Primal(v) => Node::P(v),
            Site::Dual(f) => Node::D(f),
        })
        .collect();
    let mut used: HashSet<Node> = starts.iter().copied().collect();

    fn feasible(cfg: &BondConfig, geo: &ArmGeometry, rest: &[Node], head: Option<Node>, used: &HashSet<Node>) -> bool {
        let check = |s: Node| {
            let mut blocked = used.clone();
            blocked.remove(&s);
            reaches(cfg, geo, s, &blocked)
        };
        head.is_none_or(check) && rest.iter().all(|&s| check(s))
    }

    fn extend(cfg: &BondConfig, geo: &ArmGeometry, starts: &[Node], i: usize, path: &mut Vec<Node>, used: &mut HashSet<Node>) -> bool {
        let head = *path.last().unwrap();
        if is_target(geo, head) {
            return route(cfg, geo, starts, i + 1, used);
        }
        for y in neighbors(cfg, geo, head) {
            if used.contains(&y) {
                continue;
            }
            used.insert(y);
            path.push(y);
            if feasible(cfg, geo, &starts[i + 1..], Some(y), used) && extend(cfg, geo, starts, i, path, used) {
                return true;
            }
            path.pop();
            used.remove(&y);
        }
        false
    }

    fn route(cfg: &BondConfig, geo: &ArmGeometry, starts: &[Node], i: usize, used: &mut HashSet<Node>) -> bool {
        if i == starts.len() {
            return true;
        }
        if !feasible(cfg, geo, &starts[i..], None, used) {
            return false;
        }
        let mut path = vec![starts[i]];
        extend(cfg, geo, starts, i, &mut path, used)
    }

    route(cfg, geo, &starts, 0, &mut used)
}

/// Check that a proposed region is a valid argument for the packing oracle.
pub fn check_packing_radius(m: u32) -> Result<()> {
    if m > 6 {
        return Err(Error::InvalidInput("packing search is only practical for radius <= 6".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_cycle_counts() {
        assert_eq!(grid_cycles(1).len(), 13);
        assert_eq!(grid_cycles(2).len(), 9349);
    }

    #[test]
    fn faces_below_bottom_row_is_zero() {
        let row: Vec<Vertex> = (-2..=2).map(|x| Vertex::new(x, -2)).collect();
        assert_eq!(faces_below(2, &row), 0);
        let mid: Vec<Vertex> = (-2..=2).map(|x| Vertex::new(x, 0)).collect();
        assert_eq!(faces_below(2, &mid), 8);
    }

    #[test]
    fn all_open_n1_crossings() {
        let cfg = BondConfig::all_open(1);
        assert_eq!(shortest_crossing_by_enumeration(&cfg), Some(2));
        assert_eq!(
            lowest_crossing_by_enumeration(&cfg).unwrap(),
            vec![Vertex::new(-1, -1), Vertex::new(0, -1), Vertex::new(1, -1)]
        );
    }
}
