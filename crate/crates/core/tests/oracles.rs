use std::collections::HashSet;

use perc::arms::{annulus_arm_event, edge_arm_event, AnnulusQuery, ArmSpec, Center};
use perc::distance::{chem_dist, radial_distance, shortest_crossing_length};
use perc::geometry::{
    has_horizontal_crossing, innermost_circuits, leftmost_radial_path, lowest_crossing, origin_to_boundary,
    radial_dual_path,
};
use perc::lattice::{enumerate_configs, sample_config, BondConfig, EdgeId, Vertex};
use perc::oracle::{self, CircuitOracle};

#[test]
fn exact_n1_values() {
    let x = oracle::exact_n1();
    assert_eq!(x.p_crossing, 43.0 / 64.0);
    assert_eq!(x.mean_crossing, 185.0 / 86.0);
    assert_eq!(x.p_radial, 15.0 / 16.0);
    assert_eq!(x.mean_radial, 1.0);
}

#[test]
fn n1_exhaustive_agreement() {
    let ring = perc::lattice::ring_ccw(Vertex::ORIGIN, 1);
    for cfg in enumerate_configs(1).unwrap() {
        let s = oracle::shortest_crossing_by_enumeration(&cfg);
        assert_eq!(shortest_crossing_length(&cfg), s);
        assert_eq!(has_horizontal_crossing(&cfg), s.is_some());
        let low = lowest_crossing(&cfg).map(|p| p.vertices().to_vec());
        assert_eq!(low, oracle::lowest_crossing_by_enumeration(&cfg));
        let r = oracle::chem_dist_by_enumeration(&cfg, &[Vertex::ORIGIN], &ring);
        assert_eq!(radial_distance(&cfg), r);
        assert_eq!(origin_to_boundary(&cfg), r.is_some());
    }
}

#[test]
fn n2_lowest_crossing_matches_enumeration() {
    for i in 0..2000 {
        let cfg = sample_config(2, 0.5, 11, i).unwrap();
        let low = lowest_crossing(&cfg).map(|p| p.vertices().to_vec());
        assert_eq!(low, oracle::lowest_crossing_by_enumeration(&cfg), "stream {i}");
        assert_eq!(shortest_crossing_length(&cfg), oracle::shortest_crossing_by_enumeration(&cfg));
    }
}

#[test]
fn n2_chem_dist_matches_enumeration() {
    let a = [Vertex::new(-2, -1), Vertex::new(0, 0)];
    let b = [Vertex::new(2, 2), Vertex::new(1, -2)];
    for i in 0..500 {
        let cfg = sample_config(2, 0.6, 12, i).unwrap();
        let d = chem_dist(&cfg, &a, &b, |_| true).unwrap();
        assert_eq!(d.value, oracle::chem_dist_by_enumeration(&cfg, &a, &b));
        if let Some(w) = d.witness {
            assert!(w.is_open(&cfg) && w.is_self_avoiding());
        }
    }
}

#[test]
fn n2_circuits_match_enumeration() {
    let cycles = oracle::grid_cycles(2);
    let mut seen_k = [0usize; 3];
    for i in 0..1000 {
        let p = if i % 2 == 0 { 0.65 } else { 0.92 };
        let cfg = sample_config(2, p, 13, i).unwrap();
        if !origin_to_boundary(&cfg) {
            continue;
        }
        let dec = innermost_circuits(&cfg).unwrap();
        let orc = CircuitOracle::new(&cfg, &cycles);
        assert_eq!(dec.k(), orc.max_disjoint, "stream {i}");
        seen_k[dec.k()] += 1;
        let mut avoid: HashSet<Vertex> = HashSet::new();
        let mut area = 0;
        for c in &dec.circuits {
            let want = orc.innermost_avoiding(2, &avoid, area).expect("a circuit exists");
            let got: HashSet<Vertex> = c.vertices().iter().copied().collect();
            assert_eq!(got, want, "stream {i}");
            area = oracle::cycle_interior(2, c.vertices()).len();
            avoid = got;
        }
        let path = dec.radial_path();
        assert!(path.is_open(&cfg) && path.is_self_avoiding());
        assert_eq!(path.first(), Vertex::ORIGIN);
        assert_eq!(path.last().norm_inf(), 2);
    }
    assert!(seen_k.iter().all(|&c| c > 0), "{seen_k:?}");
    let full = BondConfig::all_open(2);
    assert_eq!(innermost_circuits(&full).unwrap().k(), 2);
    assert_eq!(CircuitOracle::new(&full, &cycles).max_disjoint, 2);
}

#[test]
fn leftmost_radial_path_is_extremal() {
    let mut checked = 0;
    for n in [2, 3] {
        for i in 0..1500 {
            let cfg = sample_config(n, 0.5, 14, i).unwrap();
            let Ok(sigma) = leftmost_radial_path(&cfg) else { continue };
            let c = radial_dual_path(&cfg).unwrap();
            let paths = oracle::radial_paths(&cfg);
            assert!(paths.iter().any(|p| p == sigma.vertices()), "n {n} stream {i}");
            assert_eq!(oracle::wedge_intrusions(&cfg, sigma.vertices(), &c.faces()), 0, "n {n} stream {i}");
            checked += 1;
        }
    }
    assert!(checked > 500);
}

fn specs() -> Vec<ArmSpec> {
    ["ooc", "ococ", "oooo", "oc", "o", "c", "occ", "ococo", "hp:ooc", "hp:oco", "oooc"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

#[test]
fn edge_arms_match_packing() {
    let edges = [EdgeId::origin_e1(), EdgeId::vertical(Vertex::new(0, 0)), EdgeId::horizontal(Vertex::new(-1, 1))];
    for i in 0..150 {
        let cfg = sample_config(5, 0.5, 15, i).unwrap();
        for &e in &edges {
            for m in 1..=3 {
                for spec in specs() {
                    let hp = spec.to_string().starts_with("hp");
                    let got = edge_arm_event(&cfg, e, m, &spec);
                    let want = oracle::edge_arm_event_by_packing(&cfg, e, m, &spec);
                    match (got, want) {
                        (Ok(a), Ok(b)) => assert_eq!(a, b, "{spec} e {e} m {m} stream {i}"),
                        (Err(_), Err(_)) => assert!(hp),
                        other => panic!("{other:?}"),
                    }
                }
            }
        }
    }
}

#[test]
fn annulus_arms_match_packing() {
    let queries = [
        AnnulusQuery::at_origin(0, 2),
        AnnulusQuery::at_origin(1, 3),
        AnnulusQuery::at_origin(2, 3),
        AnnulusQuery::at_origin(3, 3),
        AnnulusQuery { inner: 1, outer: 2, center: Center::Vertex(Vertex::new(1, -1)) },
        AnnulusQuery { inner: 0, outer: 2, center: Center::Edge(EdgeId::origin_e1()) },
    ];
    for i in 0..150 {
        let cfg = sample_config(4, 0.5, 16, i).unwrap();
        for q in &queries {
            for spec in specs().into_iter().filter(|s| !s.to_string().starts_with("hp")) {
                let got = annulus_arm_event(&cfg, q, &spec).unwrap();
                let want = oracle::annulus_arm_event_by_packing(&cfg, q, &spec).unwrap();
                assert_eq!(got, want, "{spec} {q:?} stream {i}");
            }
        }
    }
}

#[test]
fn all_open_and_all_closed_extremes() {
    let open = BondConfig::all_open(3);
    let closed = BondConfig::all_closed(3);
    let q = AnnulusQuery::at_origin(1, 3);
    for spec in specs().into_iter().filter(|s| !s.to_string().starts_with("hp")) {
        let mono_open = spec.count(perc::arms::ArmColor::Closed) == 0;
        let mono_closed = spec.count(perc::arms::ArmColor::Open) == 0;
        assert_eq!(annulus_arm_event(&open, &q, &spec).unwrap(), mono_open, "{spec}");
        assert_eq!(annulus_arm_event(&closed, &q, &spec).unwrap(), mono_closed, "{spec}");
    }
}
