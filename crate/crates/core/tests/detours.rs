use perc::geometry::lowest_crossing;
use std::collections::HashSet;

use perc::lattice::{sample_config, BondConfig, EdgeId, Vertex};
use perc::oracle;
use perc::shortcut::{
    anchors, build_shortcut, find_all_detours, find_detour, verify_shielded_detour, DetourParams, DEFAULT_ALPHA3,
};

fn crossing_samples(n: u32, seed: u64, count: usize) -> Vec<BondConfig> {
    (0..)
        .map(|i| sample_config(n, 0.5, seed, i).unwrap())
        .filter(|c| lowest_crossing(c).is_some())
        .take(count)
        .collect()
}

/// A valley in the crossing bridged by two nested arcs, with every edge
/// flipped independently with probability 0.12.
fn bridged_valleys(seed: u64, count: u64) -> Vec<BondConfig> {
    let v = |x, y| Vertex::new(x, y);
    let mut base: Vec<Vec<Vertex>> = vec![];
    let mut l: Vec<Vertex> = (-5..=-2).map(|x| v(x, 0)).collect();
    l.extend((-3..=-1).rev().map(|y| v(-2, y)));
    l.extend((-1..=2).map(|x| v(x, -3)));
    l.extend((-2..=0).map(|y| v(2, y)));
    l.extend((3..=5).map(|x| v(x, 0)));
    base.push(l);
    for h in [1, 2] {
        let w = 2 + h;
        let mut arc = vec![v(-w, 0)];
        arc.extend((1..=h).map(|y| v(-w, y)));
        arc.extend((-w + 1..=w).map(|x| v(x, h)));
        arc.extend((0..h).rev().map(|y| v(w, y)));
        base.push(arc);
    }
    let open: HashSet<EdgeId> =
        base.iter().flat_map(|p| p.windows(2).map(|w| EdgeId::between(w[0], w[1]).unwrap())).collect();
    (0..count)
        .map(|i| {
            let noise = sample_config(5, 0.12, seed, i).unwrap();
            BondConfig::from_fn(5, |e| open.contains(&e) != noise.is_open(e))
        })
        .filter(|c| lowest_crossing(c).is_some())
        .collect()
}

#[test]
fn canonical_detour_matches_enumeration() {
    let mut found = 0;
    for (eps, budget) in [(1.0, 10), (0.9, 4), (0.7, 10)] {
        let n = 5;
        let params = DetourParams { eps, budget, alpha3: DEFAULT_ALPHA3 };
        for cfg in bridged_valleys(21, 400).into_iter().chain(crossing_samples(n, 21, 100)) {
            let l = lowest_crossing(&cfg).unwrap();
            for e in anchors(&l, n, DEFAULT_ALPHA3) {
                let got = find_detour(&cfg, &l, e, &params).unwrap();
                let want = oracle::detour_arc_by_enumeration(&cfg, &l, e, eps, budget as i32);
                assert_eq!(got.as_ref().map(|d| d.p.vertices().to_vec()), want, "n {n} anchor {e}");
                if let Some(d) = got {
                    assert!(verify_shielded_detour(&cfg, &l, &d, eps).unwrap().ok());
                    found += 1;
                }
            }
        }
    }
    assert!(found > 20, "only {found} detours exercised");
}

#[test]
fn batched_search_matches_per_anchor() {
    let mut found = 0;
    let cases = [(16, 0.5, 64), (16, 0.5, 5), (24, 1.0, 8), (5, 1.0, 64), (5, 1.0, 3), (5, 0.9, 2)];
    for (n, eps, budget) in cases {
        let params = DetourParams { eps, budget, alpha3: DEFAULT_ALPHA3 };
        let cfgs = if n == 5 { bridged_valleys(23, 200) } else { crossing_samples(n, 22, 40) };
        for cfg in cfgs {
            let l = lowest_crossing(&cfg).unwrap();
            let all = find_all_detours(&cfg, &l, &params).unwrap();
            let mut detours = vec![];
            for (e, d) in &all {
                assert_eq!(d, &find_detour(&cfg, &l, *e, &params).unwrap(), "anchor {e}");
                if let Some(d) = d {
                    let rep = verify_shielded_detour(&cfg, &l, d, eps).unwrap();
                    assert!(rep.ok(), "{rep:?}");
                    detours.push(d.clone());
                    found += 1;
                }
            }
            let plan = build_shortcut(&cfg, &l, &detours).unwrap();
            assert!(plan.sigma.num_edges() <= l.num_edges());
        }
    }
    assert!(found > 50, "only {found} detours exercised");
}
