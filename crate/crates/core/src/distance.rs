//! Chemical distances: geodesics inside a region, crossing lengths `S_n` and
//! `L_n`, the radial distance `S_{B_n(0)}` and the dyadic scale `D_{e_1}`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{lowest_crossing, LatticePath, OpenSearch};
use crate::lattice::{sample_window, BondConfig, Vertex};

/// A chemical distance together with one geodesic realising it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub value: Option<usize>,
    pub witness: Option<LatticePath>,
}

impl DistanceResult {
    fn none() -> Self {
        DistanceResult { value: None, witness: None }
    }
}

/// Least number of open edges in a path from `a` to `b` using only vertices
/// of `region`.
///
/// Sources are scanned in `(y, x)` order and neighbours in edge order, and
/// the first target dequeued is returned, so the witness is reproducible.
pub fn chem_dist(
    cfg: &BondConfig,
    a: &[Vertex],
    b: &[Vertex],
    region: impl Fn(Vertex) -> bool,
) -> Result<DistanceResult> {
    let g = cfg.geom();
    if let Some(&v) = a.iter().chain(b).find(|v| !g.contains(**v)) {
        return Err(Error::VertexOutOfBox(v));
    }
    let mut sources = a.to_vec();
    sources.sort();
    sources.dedup();
    let targets: HashSet<Vertex> = b.iter().copied().filter(|&v| region(v)).collect();
    let s = OpenSearch::run(cfg, &sources, &region, &|v| targets.contains(&v));
    Ok(match s.hit {
        None => DistanceResult::none(),
        Some(v) => {
            let path = LatticePath::primal(s.path_to(v))?;
            DistanceResult { value: Some(path.num_edges()), witness: Some(path) }
        }
    })
}

/// `S_n`: the fewest edges in an open left-right crossing of `B_n`.
pub fn shortest_crossing_length(cfg: &BondConfig) -> Option<usize> {
    let g = cfg.geom();
    let n = g.n;
    let left: Vec<Vertex> = (-n..=n).map(|y| Vertex::new(-n, y)).collect();
    let s = OpenSearch::run(cfg, &left, &|_| true, &|v| v.x == n);
    s.hit.map(|v| s.dist[g.vertex_index(v)] as usize)
}

/// `(S_n, L_n)` on `H_n`, `None` otherwise.
pub fn crossing_lengths(cfg: &BondConfig) -> Option<(usize, usize)> {
    let l = lowest_crossing(cfg)?;
    let s = shortest_crossing_length(cfg).expect("a lowest crossing is a crossing");
    assert!(s <= l.num_edges(), "S_n exceeds L_n");
    Some((s, l.num_edges()))
}

/// `S_{B_n(0)}`: chemical distance from the origin to `∂B_n` inside `B_n`.
pub fn radial_distance(cfg: &BondConfig) -> Option<usize> {
    let g = cfg.geom();
    let s = OpenSearch::run(cfg, &[Vertex::ORIGIN], &|_| true, &|v| g.on_boundary(v));
    s.hit.map(|v| s.dist[g.vertex_index(v)] as usize)
}

/// `D_{e_1}`: the least `k >= 1` with `0 ↔ e_1` inside `B_{2^k}`, or
/// censored when no `k <= kmax` works.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicScale {
    pub k: Option<u32>,
    pub kmax: u32,
    /// `dist_chem(0, e_1)` inside `B_{2^k}` when `k` is finite.
    pub distance: Option<usize>,
}

impl DyadicScale {
    pub fn censored(&self) -> bool {
        self.k.is_none()
    }
}

const E1: Vertex = Vertex::new(1, 0);

/// Distance from 0 to `e_1` using only vertices of `B_r`.
fn dist_in_box(cfg: &BondConfig, r: i32) -> Option<usize> {
    let g = cfg.geom();
    let s = OpenSearch::run(cfg, &[Vertex::ORIGIN], &|v| v.norm_inf() <= r, &|v| v == E1);
    s.hit.map(|v| s.dist[g.vertex_index(v)] as usize)
}

fn check_kmax(kmax: u32) -> Result<()> {
    if !(1..=12).contains(&kmax) {
        return Err(Error::InvalidInput(format!("kmax = {kmax} outside 1..=12")));
    }
    Ok(())
}

/// `D_{e_1}` on a configuration of radius at least `2^kmax`.
pub fn dyadic_scale(cfg: &BondConfig, kmax: u32) -> Result<DyadicScale> {
    check_kmax(kmax)?;
    if (cfg.n() as u64) < 1 << kmax {
        return Err(Error::InvalidInput(format!("box radius {} is below 2^{kmax}", cfg.n())));
    }
    for k in 1..=kmax {
        if let Some(d) = dist_in_box(cfg, 1 << k) {
            return Ok(DyadicScale { k: Some(k), kmax, distance: Some(d) });
        }
    }
    Ok(DyadicScale { k: None, kmax, distance: None })
}

/// `D_{e_1}` for the configuration `sample_config(2^kmax, p, seed, stream)`,
/// sampling only the windows `B_{2^k}` actually inspected.
pub fn dyadic_scale_sampled(kmax: u32, p: f64, seed: u64, stream: u64) -> Result<DyadicScale> {
    check_kmax(kmax)?;
    let host = 1u32 << kmax;
    for k in 1..=kmax {
        let w = sample_window(host, 1 << k, p, seed, stream)?;
        if let Some(d) = dist_in_box(&w, 1 << k) {
            return Ok(DyadicScale { k: Some(k), kmax, distance: Some(d) });
        }
    }
    Ok(DyadicScale { k: None, kmax, distance: None })
}

/// Open cluster of `v` restricted to `B_r`, as a vertex list.
pub fn cluster_of(cfg: &BondConfig, v: Vertex) -> Vec<Vertex> {
    let g = cfg.geom();
    let mut seen = vec![false; g.num_vertices()];
    let mut out = vec![];
    let mut queue = VecDeque::from([v]);
    seen[g.vertex_index(v)] = true;
    while let Some(u) = queue.pop_front() {
        out.push(u);
        for w in cfg.open_neighbors(u) {
            let j = g.vertex_index(w);
            if !seen[j] {
                seen[j] = true;
                queue.push_back(w);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::EdgeId;

    #[test]
    fn all_open_values() {
        let cfg = BondConfig::all_open(4);
        let d = chem_dist(&cfg, &[Vertex::ORIGIN], &[E1], |_| true).unwrap();
        assert_eq!(d.value, Some(1));
        assert_eq!(radial_distance(&cfg), Some(4));
        assert_eq!(crossing_lengths(&cfg), Some((8, 8)));
        assert_eq!(radial_distance(&BondConfig::all_closed(4)), None);
    }

    #[test]
    fn bottom_row_gap_forces_detour() {
        let gap = EdgeId::horizontal(Vertex::new(0, -3));
        let cfg = BondConfig::all_open(3).with_edges(&[(gap, false)]).unwrap();
        let (s, l) = crossing_lengths(&cfg).unwrap();
        assert_eq!(s, 6);
        assert!(l > 6);
    }

    #[test]
    fn dyadic_examples() {
        let cfg = BondConfig::from_fn(4, |e| e == EdgeId::origin_e1());
        assert_eq!(dyadic_scale(&cfg, 2).unwrap().k, Some(1));
        let detour = [
            EdgeId::vertical(Vertex::new(0, 0)),
            EdgeId::horizontal(Vertex::new(0, 1)),
            EdgeId::vertical(Vertex::new(1, 0)),
        ];
        let cfg = BondConfig::from_fn(4, |e| detour.contains(&e));
        let d = dyadic_scale(&cfg, 2).unwrap();
        assert_eq!((d.k, d.distance), (Some(1), Some(3)));
        let none = BondConfig::all_closed(4);
        assert!(dyadic_scale(&none, 2).unwrap().censored());
    }

    #[test]
    fn windowed_scale_matches_full_box() {
        for stream in 0..200 {
            let full = crate::lattice::sample_config(16, 0.5, 5, stream).unwrap();
            assert_eq!(dyadic_scale(&full, 4).unwrap(), dyadic_scale_sampled(4, 0.5, 5, stream).unwrap());
        }
    }

    #[test]
    fn witness_is_a_geodesic() {
        let cfg = crate::lattice::sample_config(6, 0.6, 1, 0).unwrap();
        let d = chem_dist(&cfg, &[Vertex::new(-6, 0)], &[Vertex::new(6, 0)], |_| true).unwrap();
        if let (Some(v), Some(w)) = (d.value, d.witness) {
            assert_eq!(w.num_edges(), v);
            assert!(w.is_open(&cfg));
            assert!(w.is_self_avoiding());
        }
    }
}
