//! Shielded detours of the lowest crossing and the shortcut crossing `σ_n`.
//!
//! A detour around an edge `e` of `l_n` is an open arc `P` leaving `l_n`
//! upwards at `w_0`, staying above `l_n`, and landing upwards at `w_M`; the
//! segment `Q` of `l_n` it bypasses contains `e`, a closed dual arc `R` runs
//! from just left of `w_0` to just right of `w_M` above `l_n`, and
//! `#P <= ε #Q` (both counted in vertices).
//!
//! Among all detours around `e` the canonical one, `π(e)`, is the one with
//! fewest vertices, ties broken by comparing vertex sequences in `(y, x)`
//! order. Searches are limited to arcs inside `B_budget(e)`.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::geometry::{below_region, BelowRegion, LatticePath};
use crate::lattice::{BondConfig, BoxGeom, EdgeId, Face, Vertex};

pub const DEFAULT_ALPHA3: f64 = 0.3;

const UNSEEN: u32 = u32::MAX;

/// The triple `(P, Q, R)` around an anchor edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShieldedDetour {
    /// Open arc `w_0, ..., w_M`.
    pub p: LatticePath,
    /// Segment of `l_n` from `w_0` to `w_M` containing the anchor.
    pub q: LatticePath,
    /// Closed dual shield.
    pub r: LatticePath,
    pub anchor: EdgeId,
}

impl ShieldedDetour {
    pub fn w0(&self) -> Vertex {
        self.p.first()
    }

    pub fn w_m(&self) -> Vertex {
        self.p.last()
    }
}

/// Which of the five detour conditions fail (1-based).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DetourReport {
    pub failed: Vec<u8>,
}

impl DetourReport {
    pub fn ok(&self) -> bool {
        self.failed.is_empty()
    }
}

/// Search parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetourParams {
    pub eps: f64,
    /// Arcs must stay within this sup-distance of the anchor's base vertex.
    pub budget: u32,
    pub alpha3: f64,
}

impl DetourParams {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidInput(format!("eps must be positive, got {eps}")));
        }
        Ok(DetourParams { eps, budget: default_budget(eps), alpha3: DEFAULT_ALPHA3 })
    }
}

/// `2 ⌈1/ε⌉ · 16`.
pub fn default_budget(eps: f64) -> u32 {
    2 * (1.0 / eps).ceil() as u32 * 16
}

/// Radius of `Λ_n = B_{⌊n - n^{α₃/2}⌋}`.
pub fn lambda_radius(n: u32, alpha3: f64) -> i32 {
    (n as f64 - (n as f64).powf(alpha3 / 2.0)).floor().max(0.0) as i32
}

/// Edges of `l̂_n`: those of `l_n` with both endpoints in `Λ_n`.
pub fn anchors(l: &LatticePath, n: u32, alpha3: f64) -> Vec<EdgeId> {
    let r = lambda_radius(n, alpha3);
    l.vertices()
        .windows(2)
        .filter(|w| w[0].norm_inf() <= r && w[1].norm_inf() <= r)
        .map(|w| EdgeId::between(w[0], w[1]).unwrap())
        .collect()
}

/// Chosen detours and the spliced crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetourPlan {
    /// The distinct detours offered to the selection.
    pub detours: Vec<ShieldedDetour>,
    /// The selected subcollection `Π`, in selection order.
    pub pi: Vec<ShieldedDetour>,
    pub sigma: LatticePath,
}

impl DetourPlan {
    /// `Σ_Π #E(π̂)`.
    pub fn detoured_edges(&self) -> usize {
        self.pi.iter().map(|d| d.q.num_edges()).sum()
    }
}

fn up(v: Vertex) -> Vertex {
    v.offset(0, 1)
}

/// Checks the five conditions. `l` must be the lowest crossing of `cfg`.
pub fn verify_shielded_detour(
    cfg: &BondConfig,
    l: &LatticePath,
    cand: &ShieldedDetour,
    eps: f64,
) -> Result<DetourReport> {
    let g = cfg.geom();
    let n = g.n;
    for &v in cand.p.vertices().iter().chain(cand.q.vertices()) {
        if !g.contains(v) {
            return Err(Error::VertexOutOfBox(v));
        }
    }
    for f in cand.r.faces() {
        if !g.contains_face(f) {
            return Err(Error::VertexOutOfBox(Vertex::new(f.x, f.y)));
        }
    }
    let below = below_region(g, l);
    let on_l: HashSet<Vertex> = l.vertices().iter().copied().collect();
    let l_edges: HashSet<EdgeId> = l.edges().iter().copied().collect();
    let p = cand.p.vertices();
    let m = p.len().saturating_sub(1);
    let mut failed = vec![];

    let interior = if p.len() > 2 { &p[1..p.len() - 1] } else { &[][..] };
    if m < 2 || interior.iter().any(|&v| on_l.contains(&v) || below.contains_vertex(v)) {
        failed.push(1);
    }

    let flat = |w: Vertex| {
        l_edges.contains(&EdgeId::between(w.offset(-1, 0), w).unwrap())
            && l_edges.contains(&EdgeId::between(w, w.offset(1, 0)).unwrap())
    };
    let (w0, wm) = (cand.p.first(), cand.p.last());
    if m < 2 || !flat(w0) || !flat(wm) || p[1] != up(w0) || p[m - 1] != up(wm) {
        failed.push(2);
    }

    let pos = |v: Vertex| l.vertices().iter().position(|&u| u == v);
    let q_ok = match (pos(w0), pos(wm)) {
        (Some(i), Some(j)) if i != j => {
            let mut seg = l.vertices()[i.min(j)..=i.max(j)].to_vec();
            if i > j {
                seg.reverse();
            }
            seg == cand.q.vertices() && cand.q.edges().contains(&cand.anchor)
        }
        _ => false,
    };
    let inside = |v: &Vertex| v.x.abs() < n && v.y.abs() < n;
    let q_set: HashSet<Vertex> = cand.q.vertices().iter().copied().collect();
    let circuit = q_ok
        && m >= 2
        && cand.p.is_self_avoiding()
        && cand.p.is_open(cfg)
        && interior.iter().all(|v| !q_set.contains(v))
        && p.iter().chain(cand.q.vertices()).all(inside);
    if !circuit {
        failed.push(3);
    }

    let faces = cand.r.faces();
    let k = faces.len();
    let shield = k >= 3
        && faces[0] == Face::new(w0.x - 1, w0.y)
        && faces[1] == Face::new(w0.x - 1, w0.y + 1)
        && faces[k - 1] == Face::new(wm.x, wm.y)
        && faces[k - 2] == Face::new(wm.x, wm.y + 1)
        && faces.iter().collect::<HashSet<_>>().len() == k
        && cand.r.is_closed_dual(cfg)
        && faces.iter().all(|&f| !below.contains_face(f));
    if !shield {
        failed.push(4);
    }

    if (m + 1) as f64 > eps * cand.q.num_vertices() as f64 {
        failed.push(5);
    }
    Ok(DetourReport { failed })
}

/// Everything about `l_n` the searches reuse.
struct Ctx<'a> {
    cfg: &'a BondConfig,
    g: BoxGeom,
    l: &'a [Vertex],
    below: BelowRegion,
    /// Vertices an arc interior may use.
    free: Vec<bool>,
    /// Positions on `l` where a detour may start or end.
    ends: Vec<usize>,
    /// `touch[i]`: vertices of `l[..i]` on `∂B_n`.
    touch: Vec<u32>,
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a BondConfig, l: &'a LatticePath) -> Self {
        let g = cfg.geom();
        let n = g.n;
        let below = below_region(g, l);
        let on_l: HashSet<Vertex> = l.vertices().iter().copied().collect();
        let free: Vec<bool> = (0..g.num_vertices())
            .map(|i| {
                let v = g.vertex_at(i);
                v.x.abs() < n && v.y.abs() < n && !on_l.contains(&v) && !below.contains_vertex(v)
            })
            .collect();
        let vs = l.vertices();
        let ends = (1..vs.len().saturating_sub(1))
            .filter(|&i| {
                let w = vs[i];
                let pair = [vs[i - 1], vs[i + 1]];
                pair.contains(&w.offset(-1, 0))
                    && pair.contains(&w.offset(1, 0))
                    && w.x.abs() < n
                    && cfg.is_open(EdgeId::vertical(w))
                    && g.contains(up(w))
                    && free[g.vertex_index(up(w))]
            })
            .collect();
        let mut touch = vec![0];
        for v in vs {
            touch.push(touch.last().unwrap() + g.on_boundary(*v) as u32);
        }
        Ctx { cfg, g, l: vs, below, free, ends, touch }
    }

    fn bfs(&self, from: Vertex, region: &dyn Fn(Vertex) -> bool) -> Vec<u32> {
        let mut dist = vec![UNSEEN; self.g.num_vertices()];
        dist[self.g.vertex_index(from)] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let d = dist[self.g.vertex_index(v)];
            for (e, w) in v.incident() {
                if !self.g.contains(w) || !self.free[self.g.vertex_index(w)] || !region(w) || !self.cfg.is_open(e) {
                    continue;
                }
                let j = self.g.vertex_index(w);
                if dist[j] == UNSEEN {
                    dist[j] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Least arc from `l[a]` to `l[b]` in `(y, x)` order, given distances to
    /// `up(l[b])`.
    fn lex_arc(&self, a: usize, b: usize, to_b: &[u32], region: &dyn Fn(Vertex) -> bool) -> Vec<Vertex> {
        let mut arc = vec![self.l[a], up(self.l[a])];
        let target = up(self.l[b]);
        let mut cur = up(self.l[a]);
        while cur != target {
            let d = to_b[self.g.vertex_index(cur)];
            cur = cur
                .incident()
                .into_iter()
                .filter(|&(e, w)| {
                    self.g.contains(w)
                        && self.free[self.g.vertex_index(w)]
                        && region(w)
                        && self.cfg.is_open(e)
                        && to_b[self.g.vertex_index(w)] + 1 == d
                })
                .map(|(_, w)| w)
                .min()
                .expect("distance table is consistent");
            arc.push(cur);
        }
        arc.push(self.l[b]);
        arc
    }

    fn face_free(&self, f: Face) -> bool {
        self.g.contains_face(f) && !self.below.contains_face(f)
    }

    /// Dual BFS from `start` avoiding `avoid`, returning predecessors.
    fn dual_bfs(&self, start: Face, avoid: &[Face]) -> Vec<u32> {
        let mut pred = vec![UNSEEN; self.g.num_faces()];
        let si = self.g.face_index(start);
        pred[si] = si as u32;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            let fi = self.g.face_index(f);
            for (e, h) in f.incident() {
                if !self.face_free(h) || avoid.contains(&h) || self.cfg.is_open(e) {
                    continue;
                }
                let j = self.g.face_index(h);
                if pred[j] == UNSEEN {
                    pred[j] = fi as u32;
                    queue.push_back(h);
                }
            }
        }
        pred
    }

    fn trace(&self, pred: &[u32], to: Face) -> Option<Vec<Face>> {
        let mut i = self.g.face_index(to);
        if pred[i] == UNSEEN {
            return None;
        }
        let mut out = vec![to];
        while pred[i] as usize != i {
            i = pred[i] as usize;
            out.push(self.g.face_at(i));
        }
        out.reverse();
        Some(out)
    }

    /// The shield for the pair `(a, b)`, if one exists. `from_a` is a dual
    /// BFS from the face above-left of `l[a]` that avoids that face's lower
    /// neighbour.
    fn shield(&self, a: usize, b: usize, from_a: &mut Option<Vec<u32>>) -> Option<Vec<Face>> {
        let (w0, wm) = (self.l[a], self.l[b]);
        let fa = Face::new(w0.x - 1, w0.y);
        let fa1 = Face::new(w0.x - 1, w0.y + 1);
        let fb = Face::new(wm.x, wm.y);
        let fb1 = Face::new(wm.x, wm.y + 1);
        if fa == fb || ![fa, fa1, fb, fb1].iter().all(|&f| self.face_free(f)) {
            return None;
        }
        if self.cfg.is_open(Face::crossing(fa, fa1).unwrap()) || self.cfg.is_open(Face::crossing(fb, fb1).unwrap()) {
            return None;
        }
        if fa1 == fb || fb1 == fa {
            return None;
        }
        let pred = from_a.get_or_insert_with(|| self.dual_bfs(fa1, &[fa]));
        let mut mid = self.trace(pred, fb1)?;
        if mid.contains(&fb) {
            mid = self.trace(&self.dual_bfs(fa1, &[fa, fb]), fb1)?;
        }
        let mut r = vec![fa];
        r.extend(mid);
        r.push(fb);
        Some(r)
    }

    fn build(&self, a: usize, b: usize, arc: Vec<Vertex>, shield: Vec<Face>, anchor: EdgeId) -> ShieldedDetour {
        let mut q = self.l[a.min(b)..=a.max(b)].to_vec();
        if a > b {
            q.reverse();
        }
        ShieldedDetour {
            p: LatticePath::primal(arc).unwrap(),
            q: LatticePath::primal(q).unwrap(),
            r: LatticePath::dual(shield).unwrap(),
            anchor,
        }
    }
}

/// A pair of end positions with the length of the shortest arc between them.
#[derive(Clone, Copy)]
struct Pair {
    a: usize,
    b: usize,
    /// Vertices in the arc.
    len: u32,
}

fn pairs(ctx: &Ctx, tables: &[Option<Vec<u32>>], eps: f64, k: Option<usize>) -> Vec<Pair> {
    let mut out = vec![];
    for (ia, &a) in ctx.ends.iter().enumerate() {
        let Some(from_a) = &tables[ia] else { continue };
        for &b in &ctx.ends {
            if a == b || k.is_some_and(|k| !(a.min(b) <= k && k < a.max(b))) {
                continue;
            }
            if ctx.touch[a.max(b) + 1] != ctx.touch[a.min(b)] {
                continue;
            }
            let d = from_a[ctx.g.vertex_index(up(ctx.l[b]))];
            if d == UNSEEN {
                continue;
            }
            let len = d + 3;
            let qv = a.abs_diff(b) + 1;
            if len as f64 <= eps * qv as f64 {
                out.push(Pair { a, b, len });
            }
        }
    }
    out
}

fn anchor_pos(l: &LatticePath, e: EdgeId, params: &DetourParams, n: u32) -> Result<usize> {
    let k = l
        .edges()
        .iter()
        .position(|&x| x == e)
        .ok_or_else(|| Error::Precondition(format!("{e} is not on the lowest crossing")))?;
    let r = lambda_radius(n, params.alpha3);
    let (u, v) = e.endpoints();
    if u.norm_inf() > r || v.norm_inf() > r {
        return Err(Error::Precondition(format!("{e} lies outside Λ_n")));
    }
    Ok(k)
}

fn search(ctx: &Ctx, k: usize, anchor: EdgeId, eps: f64, region: &dyn Fn(Vertex) -> bool) -> Option<ShieldedDetour> {
    let tables: Vec<Option<Vec<u32>>> = ctx
        .ends
        .iter()
        .map(|&a| (region(ctx.l[a]) && region(up(ctx.l[a]))).then(|| ctx.bfs(up(ctx.l[a]), region)))
        .collect();
    let index_of = |p: usize| ctx.ends.iter().position(|&x| x == p).unwrap();
    let mut cands: Vec<Pair> = pairs(ctx, &tables, eps, Some(k))
        .into_iter()
        .filter(|p| region(ctx.l[p.b]))
        .collect();
    cands.sort_by_key(|p| p.len);
    let mut start = 0;
    while start < cands.len() {
        let len = cands[start].len;
        let end = start + cands[start..].iter().take_while(|p| p.len == len).count();
        let mut group: Vec<(Vec<Vertex>, Pair)> = cands[start..end]
            .iter()
            .map(|&p| {
                let to_b = tables[index_of(p.b)].as_ref().unwrap();
                (ctx.lex_arc(p.a, p.b, to_b, region), p)
            })
            .collect();
        group.sort_by(|x, y| x.0.cmp(&y.0));
        for (arc, p) in group {
            if let Some(r) = ctx.shield(p.a, p.b, &mut None) {
                return Some(ctx.build(p.a, p.b, arc, r, anchor));
            }
        }
        start = end;
    }
    None
}

/// `π(e)`: the canonical detour around `e`, or `None` if there is none
/// within the budget.
pub fn find_detour(
    cfg: &BondConfig,
    l: &LatticePath,
    e: EdgeId,
    params: &DetourParams,
) -> Result<Option<ShieldedDetour>> {
    let k = anchor_pos(l, e, params, cfg.n())?;
    let ctx = Ctx::new(cfg, l);
    let b = params.budget as i32;
    let region = |v: Vertex| v.dist_inf(e.base) <= b;
    let found = search(&ctx, k, e, params.eps, &region);
    if let Some(d) = &found {
        debug_assert!(verify_shielded_detour(cfg, l, d, params.eps).unwrap().ok());
    }
    Ok(found)
}

/// `π(e)` for every `e` on `l̂_n`, in order along `l_n`.
///
/// Agrees with calling [`find_detour`] on each anchor; the shortest arcs
/// between all end pairs are computed once, ignoring the budget, and an
/// anchor is searched on its own only when its winner leaves the budget box.
pub fn find_all_detours(
    cfg: &BondConfig,
    l: &LatticePath,
    params: &DetourParams,
) -> Result<Vec<(EdgeId, Option<ShieldedDetour>)>> {
    let ctx = Ctx::new(cfg, l);
    let anchors = anchors(l, cfg.n(), params.alpha3);
    let everywhere = |_: Vertex| true;
    let tables: Vec<Option<Vec<u32>>> = ctx.ends.iter().map(|&a| Some(ctx.bfs(up(ctx.l[a]), &everywhere))).collect();
    let index_of = |p: usize| ctx.ends.iter().position(|&x| x == p).unwrap();
    let mut ranked: Vec<(u32, Vec<Vertex>, Pair)> = pairs(&ctx, &tables, params.eps, None)
        .into_iter()
        .map(|p| {
            let to_b = tables[index_of(p.b)].as_ref().unwrap();
            (p.len, ctx.lex_arc(p.a, p.b, to_b, &everywhere), p)
        })
        .collect();
    ranked.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));

    let mut shields: Vec<Option<Option<Vec<Face>>>> = vec![None; ranked.len()];
    let mut from: Vec<Option<Vec<u32>>> = vec![None; ctx.ends.len()];
    let budget = params.budget as i32;
    let mut out = Vec::with_capacity(anchors.len());
    for e in anchors {
        let k = l.edges().iter().position(|&x| x == e).unwrap();
        let mut found = None;
        for (i, (_, arc, p)) in ranked.iter().enumerate() {
            if !(p.a.min(p.b) <= k && k < p.a.max(p.b)) {
                continue;
            }
            let r = shields[i].get_or_insert_with(|| ctx.shield(p.a, p.b, &mut from[index_of(p.a)]));
            if let Some(r) = r {
                found = Some((arc, p, r.clone()));
                break;
            }
        }
        let detour = match found {
            None => None,
            Some((arc, p, r)) if arc.iter().all(|v| v.dist_inf(e.base) <= budget) => {
                Some(ctx.build(p.a, p.b, arc.clone(), r, e))
            }
            Some(_) => search(&ctx, k, e, params.eps, &|v: Vertex| v.dist_inf(e.base) <= budget),
        };
        out.push((e, detour));
    }
    Ok(out)
}

/// Selects `Π` greedily by decreasing `#E(π̂)` (ties by anchor) among
/// detours with pairwise vertex-disjoint `π̂`, and splices them into `l`.
pub fn build_shortcut(cfg: &BondConfig, l: &LatticePath, detours: &[ShieldedDetour]) -> Result<DetourPlan> {
    let mut distinct: Vec<ShieldedDetour> = vec![];
    for d in detours {
        if !distinct.iter().any(|x| x.p == d.p && x.q == d.q) {
            distinct.push(d.clone());
        }
    }
    let mut order: Vec<usize> = (0..distinct.len()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (&distinct[i], &distinct[j]);
        b.q.num_edges().cmp(&a.q.num_edges()).then(a.anchor.cmp(&b.anchor))
    });
    let mut used: HashSet<Vertex> = HashSet::new();
    let mut pi = vec![];
    for i in order {
        let d = &distinct[i];
        if d.q.vertices().iter().any(|v| used.contains(v)) {
            continue;
        }
        used.extend(d.q.vertices().iter().copied());
        pi.push(d.clone());
    }

    let vs = l.vertices();
    let pos = |v: Vertex| vs.iter().position(|&u| u == v).ok_or_else(|| Error::Splice(format!("{v} is not on l_n")));
    let mut spans = vec![];
    for d in &pi {
        let (i, j) = (pos(d.w0())?, pos(d.w_m())?);
        let arc = if i < j { d.p.vertices().to_vec() } else { d.p.reversed().vertices().to_vec() };
        spans.push((i.min(j), i.max(j), arc));
    }
    spans.sort_by_key(|s| s.0);
    let mut sigma = vec![];
    let mut at = 0;
    for (i, j, arc) in spans {
        if i < at {
            return Err(Error::Splice("detoured segments overlap".into()));
        }
        sigma.extend_from_slice(&vs[at..i]);
        sigma.extend_from_slice(&arc[..arc.len() - 1]);
        at = j;
    }
    sigma.extend_from_slice(&vs[at..]);
    let sigma = LatticePath::primal(sigma).map_err(|e| Error::Splice(e.to_string()))?;

    let g = cfg.geom();
    if !sigma.is_open(cfg) || !sigma.is_horizontal_crossing(g) || !sigma.is_self_avoiding() {
        return Err(Error::Splice("spliced path is not an open self-avoiding crossing".into()));
    }
    let expect = l.num_edges() - pi.iter().map(|d| d.q.num_edges()).sum::<usize>()
        + pi.iter().map(|d| d.p.num_edges()).sum::<usize>();
    if sigma.num_edges() != expect || sigma.num_edges() > l.num_edges() {
        return Err(Error::Splice(format!(
            "spliced length {} but expected {expect} <= {}",
            sigma.num_edges(),
            l.num_edges()
        )));
    }
    Ok(DetourPlan { detours: distinct, pi, sigma })
}

/// The hand-built 7×7 configuration with one detour: `l_3` dips through
/// `(0, -2)` between `(-2, 0)` and `(2, 0)`, the arc runs along `y = 1`, and
/// everything else is closed.
pub fn fixture() -> (BondConfig, LatticePath) {
    let l: Vec<Vertex> = [(-3, 0), (-2, 0), (-1, 0), (-1, -1), (-1, -2), (0, -2), (1, -2), (1, -1), (1, 0), (2, 0), (3, 0)]
        .iter()
        .map(|&(x, y)| Vertex::new(x, y))
        .collect();
    let arc = fixture_arc();
    let open: HashSet<EdgeId> = l
        .windows(2)
        .chain(arc.windows(2))
        .map(|w| EdgeId::between(w[0], w[1]).unwrap())
        .collect();
    let cfg = BondConfig::from_fn(3, |e| open.contains(&e));
    (cfg, LatticePath::primal(l).unwrap())
}

fn fixture_arc() -> Vec<Vertex> {
    let mut arc = vec![Vertex::new(-2, 0)];
    arc.extend((-2..=2).map(|x| Vertex::new(x, 1)));
    arc.push(Vertex::new(2, 0));
    arc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::lowest_crossing;

    fn fixture_detour() -> ShieldedDetour {
        let (_, l) = fixture();
        let mut r = vec![Face::new(-3, 0)];
        r.extend((-3..=2).map(|x| Face::new(x, 1)));
        r.push(Face::new(2, 0));
        ShieldedDetour {
            p: LatticePath::primal(fixture_arc()).unwrap(),
            q: LatticePath::primal(l.vertices()[1..=9].to_vec()).unwrap(),
            r: LatticePath::dual(r).unwrap(),
            anchor: EdgeId::between(Vertex::new(-1, 0), Vertex::new(-1, -1)).unwrap(),
        }
    }

    #[test]
    fn fixture_crossing_is_lowest() {
        let (cfg, l) = fixture();
        assert_eq!(lowest_crossing(&cfg).unwrap(), l);
        assert_eq!(lambda_radius(3, DEFAULT_ALPHA3), 1);
    }

    #[test]
    fn fixture_detour_verifies() {
        let (cfg, l) = fixture();
        let d = fixture_detour();
        assert!(verify_shielded_detour(&cfg, &l, &d, 1.0).unwrap().ok());
        assert_eq!(verify_shielded_detour(&cfg, &l, &d, 0.5).unwrap().failed, vec![5]);
        let leak = cfg.with_edges(&[(EdgeId::vertical(Vertex::new(0, 1)), true)]).unwrap();
        assert_eq!(verify_shielded_detour(&leak, &l, &d, 1.0).unwrap().failed, vec![4]);
    }

    #[test]
    fn straight_segment_is_not_a_detour() {
        let cfg = BondConfig::all_open(3);
        let l = lowest_crossing(&cfg).unwrap();
        let seg = l.vertices()[1..=4].to_vec();
        let d = ShieldedDetour {
            p: LatticePath::primal(seg.clone()).unwrap(),
            q: LatticePath::primal(seg).unwrap(),
            r: LatticePath::dual(vec![Face::new(-3, -3)]).unwrap(),
            anchor: EdgeId::horizontal(Vertex::new(-2, -3)),
        };
        let rep = verify_shielded_detour(&cfg, &l, &d, 0.5).unwrap();
        assert!(rep.failed.contains(&1) && rep.failed.contains(&5));
    }

    #[test]
    fn find_detour_on_fixture() {
        let (cfg, l) = fixture();
        let params = DetourParams { eps: 1.0, budget: 6, alpha3: DEFAULT_ALPHA3 };
        let anchor = EdgeId::between(Vertex::new(-1, 0), Vertex::new(-1, -1)).unwrap();
        let d = find_detour(&cfg, &l, anchor, &params).unwrap().unwrap();
        assert_eq!(d, fixture_detour());
        assert!(find_detour(&cfg, &l, EdgeId::horizontal(Vertex::new(-3, 0)), &params).is_err());
        let plan = build_shortcut(&cfg, &l, &[d]).unwrap();
        assert_eq!(plan.sigma.vertices(), &[vec![Vertex::new(-3, 0)], fixture_arc(), vec![Vertex::new(3, 0)]].concat()[..]);
        assert_eq!(l.num_edges() - plan.sigma.num_edges(), 8 - 6);
    }

    #[test]
    fn segment_on_the_boundary_is_not_bypassed() {
        let l: Vec<Vertex> = [(-3, 0), (-2, 0), (-1, 0), (-1, -1), (-1, -2), (-1, -3), (0, -3), (1, -3), (1, -2), (1, -1), (1, 0), (2, 0), (3, 0)]
            .iter()
            .map(|&(x, y)| Vertex::new(x, y))
            .collect();
        let arc = fixture_arc();
        let open: HashSet<EdgeId> = l
            .windows(2)
            .chain(arc.windows(2))
            .map(|w| EdgeId::between(w[0], w[1]).unwrap())
            .collect();
        let cfg = BondConfig::from_fn(3, |e| open.contains(&e));
        let l = LatticePath::primal(l).unwrap();
        assert_eq!(lowest_crossing(&cfg).unwrap(), l);
        let mut d = fixture_detour();
        d.q = LatticePath::primal(l.vertices()[1..=11].to_vec()).unwrap();
        assert_eq!(verify_shielded_detour(&cfg, &l, &d, 1.0).unwrap().failed, vec![3]);
        let params = DetourParams { eps: 1.0, budget: 6, alpha3: DEFAULT_ALPHA3 };
        assert!(find_detour(&cfg, &l, d.anchor, &params).unwrap().is_none());
        assert!(crate::oracle::detour_arc_by_enumeration(&cfg, &l, d.anchor, 1.0, 6).is_none());
    }

    #[test]
    fn all_open_has_no_detours() {
        let cfg = BondConfig::all_open(6);
        let l = lowest_crossing(&cfg).unwrap();
        let params = DetourParams::new(0.5).unwrap();
        let all = find_all_detours(&cfg, &l, &params).unwrap();
        assert!(all.iter().all(|(_, d)| d.is_none()));
        let plan = build_shortcut(&cfg, &l, &[]).unwrap();
        assert_eq!(plan.sigma, l);
    }

    #[test]
    fn overlapping_detours_select_one() {
        let (cfg, l) = fixture();
        let d = fixture_detour();
        let mut other = d.clone();
        other.anchor = EdgeId::between(Vertex::new(1, -1), Vertex::new(1, 0)).unwrap();
        let plan = build_shortcut(&cfg, &l, &[d.clone(), other]).unwrap();
        assert_eq!(plan.pi.len(), 1);
        assert_eq!(plan.detoured_edges(), 8);
    }
}
