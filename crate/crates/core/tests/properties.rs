use proptest::prelude::*;

use perc::arms::{edge_arm_event, ArmSpec};
use perc::distance::{chem_dist, crossing_lengths, radial_distance, shortest_crossing_length};
use perc::geometry::{below_region, has_horizontal_crossing, lowest_crossing, origin_to_boundary};
use perc::harness::plan_violations;
use perc::lattice::{sample_config, sample_window, BondConfig, EdgeId};
use perc::shortcut::{build_shortcut, find_all_detours, DetourParams};

fn config(max_n: u32) -> impl Strategy<Value = BondConfig> {
    (1..=max_n, 0.3f64..0.8, any::<u64>(), 0u64..1000).prop_map(|(n, p, seed, stream)| sample_config(n, p, seed, stream).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn config_file_round_trips(cfg in config(7)) {
        let back = BondConfig::from_file(&cfg.to_file()).unwrap();
        prop_assert_eq!(back.bits(), cfg.bits());
        prop_assert_eq!(back.to_file(), cfg.to_file());
    }

    #[test]
    fn windows_agree_with_full_sample(host in 2u32..20, seed in any::<u64>(), stream in 0u64..100, frac in 0.0f64..1.0) {
        let r = 1 + ((host - 1) as f64 * frac) as u32;
        let full = sample_config(host, 0.5, seed, stream).unwrap();
        let win = sample_window(host, r, 0.5, seed, stream).unwrap();
        for i in 0..win.num_edges() {
            let e = win.geom().edge_at(i);
            prop_assert_eq!(win.is_open(e), full.is_open(e));
        }
    }

    #[test]
    fn lowest_crossing_is_an_open_crossing(cfg in config(10)) {
        let l = lowest_crossing(&cfg);
        prop_assert_eq!(l.is_some(), has_horizontal_crossing(&cfg));
        if let Some(l) = l {
            let g = cfg.geom();
            prop_assert!(l.is_open(&cfg) && l.is_self_avoiding() && l.is_horizontal_crossing(g));
            let below = below_region(g, &l);
            prop_assert!(l.vertices().iter().all(|&v| !below.contains_vertex(v)));
            let (s, len) = crossing_lengths(&cfg).unwrap();
            prop_assert!(2 * g.n as usize <= s && s <= len);
        }
    }

    #[test]
    fn opening_an_edge_is_monotone(cfg in config(8), pick in any::<prop::sample::Index>()) {
        let e = cfg.geom().edge_at(pick.index(cfg.num_edges()));
        let up = cfg.with_edges(&[(e, true)]).unwrap();
        prop_assert!(!has_horizontal_crossing(&cfg) || has_horizontal_crossing(&up));
        prop_assert!(!origin_to_boundary(&cfg) || origin_to_boundary(&up));
        if let (Some(a), Some(b)) = (shortest_crossing_length(&cfg), shortest_crossing_length(&up)) {
            prop_assert!(b <= a);
        }
        if let (Some(a), Some(b)) = (radial_distance(&cfg), radial_distance(&up)) {
            prop_assert!(b <= a);
        }
        let n = cfg.n();
        let spec: ArmSpec = "oo".parse().unwrap();
        if n >= 1 && e != EdgeId::origin_e1() {
            let before = edge_arm_event(&cfg, EdgeId::origin_e1(), n, &spec).unwrap();
            let after = edge_arm_event(&up, EdgeId::origin_e1(), n, &spec).unwrap();
            prop_assert!(!before || after);
        }
    }

    #[test]
    fn chemical_distance_is_symmetric(cfg in config(6), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let g = cfg.geom();
        let u = g.vertex_at(a.index(g.num_vertices()));
        let v = g.vertex_at(b.index(g.num_vertices()));
        let x = chem_dist(&cfg, &[u], &[v], |_| true).unwrap().value;
        let y = chem_dist(&cfg, &[v], &[u], |_| true).unwrap().value;
        prop_assert_eq!(x, y);
        if let Some(d) = x {
            prop_assert!(d >= u.dist_l1(v) as usize);
        }
    }

    #[test]
    fn radial_distance_reaches_the_boundary(cfg in config(10)) {
        if let Some(d) = radial_distance(&cfg) {
            prop_assert!(d >= cfg.n() as usize);
            prop_assert!(origin_to_boundary(&cfg));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn shortcut_invariants(n in 4u32..20, seed in any::<u64>(), stream in 0u64..1000, eps in 0.3f64..=1.0) {
        let cfg = sample_config(n, 0.5, seed, stream).unwrap();
        if let Some(l) = lowest_crossing(&cfg) {
            let params = DetourParams::new(eps).unwrap();
            let detours: Vec<_> = find_all_detours(&cfg, &l, &params).unwrap().into_iter().filter_map(|(_, d)| d).collect();
            let plan = build_shortcut(&cfg, &l, &detours).unwrap();
            let s = shortest_crossing_length(&cfg).unwrap();
            prop_assert_eq!(plan_violations(&cfg, &l, &plan, eps, s), Vec::<String>::new());
            prop_assert_eq!(plan.detoured_edges() + plan.sigma.num_edges() >= l.num_edges(), true);
        }
    }
}
