//! Production code against the brute-force oracles.

use serde::Serialize;

use super::{run_crossing, run_radial_with};
use crate::arms::{edge_arm_event, ArmSpec};
use crate::distance::{radial_distance, shortest_crossing_length};
use crate::geometry::lowest_crossing;
use crate::lattice::{enumerate_configs, ring_ccw, sample_config, EdgeId, Vertex};
use crate::oracle;
use crate::shortcut::{build_shortcut, find_detour, fixture, verify_shielded_detour, DetourParams, DEFAULT_ALPHA3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Fast,
    Full,
}

impl std::str::FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            _ => Err(format!("unknown level {s:?}, expected fast or full")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: u64,
    pub total: u64,
    pub detail: String,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub level: Level,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }
}

/// Every `n = 1` configuration against the enumeration oracles.
pub fn check_n1_exhaustive() -> Check {
    let ring = ring_ccw(Vertex::ORIGIN, 1);
    let (mut passed, mut total) = (0, 0);
    for cfg in enumerate_configs(1).expect("n = 1") {
        total += 1;
        let s = oracle::shortest_crossing_by_enumeration(&cfg);
        let low = lowest_crossing(&cfg).map(|p| p.vertices().to_vec());
        let r = oracle::chem_dist_by_enumeration(&cfg, &[Vertex::ORIGIN], &ring);
        if shortest_crossing_length(&cfg) == s
            && low == oracle::lowest_crossing_by_enumeration(&cfg)
            && radial_distance(&cfg) == r
        {
            passed += 1;
        }
    }
    Check { name: "n1 exhaustive".into(), passed, total, detail: "S_1, l_1 and S_B1 on all 4096 configurations".into() }
}

/// `P̂(H_1)`, `Ê[S_1 | H_1]`, `Ê[S_{B_1} | A_1]` within three standard errors
/// of the exact values.
pub fn check_n1_monte_carlo(trials: u64, seed: u64) -> Check {
    let exact = oracle::exact_n1();
    let cross = run_crossing(1, None, trials, seed).expect("n = 1 crossing");
    let radial = run_radial_with(1, trials, seed, 0.5, 0).expect("n = 1 radial");
    let p_h = crate::stats::EstimatorResult::proportion(trials, trials, cross.mean_s.accepted, seed);
    let rows = [
        ("P(H_1)", &p_h, exact.p_crossing),
        ("E[S_1|H_1]", &cross.mean_s, exact.mean_crossing),
        ("E[S_B1|A_1]", &radial.distance, exact.mean_radial),
    ];
    let mut detail = vec![];
    let mut passed = 0;
    for (name, est, x) in rows {
        // A zero standard error (S_{B_1} = 1 on A_1) demands equality.
        let ok = est.within(x, 3.0);
        passed += ok as u64;
        detail.push(format!("{name} {:.6} ± {:.6} vs {x:.6}", est.estimate, est.stderr));
    }
    Check { name: format!("n1 monte carlo ({trials} trials)"), passed, total: 3, detail: detail.join("; ") }
}

/// Production lowest crossing against the minimal-region crossing on `count`
/// random `H_2` configurations.
pub fn check_n2_lowest(count: u64, seed: u64) -> Check {
    let (mut passed, mut total, mut i) = (0, 0, 0);
    while total < count {
        let cfg = sample_config(2, 0.5, seed, i).expect("n = 2");
        i += 1;
        let Some(l) = lowest_crossing(&cfg) else { continue };
        total += 1;
        if oracle::lowest_crossing_by_enumeration(&cfg).as_deref() == Some(l.vertices()) {
            passed += 1;
        }
    }
    Check { name: "n2 lowest crossing".into(), passed, total, detail: format!("{i} samples drawn") }
}

/// `edge_arm_event` against disjoint-path packing for one spec and radius on
/// `count` random configurations of `B_m` around the edge `{0, e_1}`.
pub fn check_arm_packing(spec: &ArmSpec, m: u32, count: u64, seed: u64) -> Check {
    let e = EdgeId::horizontal(Vertex::ORIGIN);
    let n = crate::arms::ArmShape::Edge { radius: m }.host_radius();
    let mut passed = 0;
    let mut hits = 0;
    for i in 0..count {
        let cfg = sample_config(n, 0.5, seed, i).expect("valid radius");
        let a = edge_arm_event(&cfg, e, m, spec).expect("edge in box");
        let b = oracle::edge_arm_event_by_packing(&cfg, e, m, spec).expect("edge in box");
        passed += (a == b) as u64;
        hits += a as u64;
    }
    Check {
        name: format!("arms {spec} m={m}"),
        passed,
        total: count,
        detail: format!("{hits} configurations with the event"),
    }
}

/// The detour fixture: verification, canonical search and splice.
pub fn check_detour_fixture() -> Check {
    let (cfg, l) = fixture();
    let anchor = EdgeId::between(Vertex::new(-1, 0), Vertex::new(-1, -1)).expect("adjacent");
    let params = DetourParams { eps: 1.0, budget: 6, alpha3: DEFAULT_ALPHA3 };
    let mut ok = vec![];
    ok.push(lowest_crossing(&cfg).as_ref() == Some(&l));
    let found = find_detour(&cfg, &l, anchor, &params).ok().flatten();
    let arc = oracle::detour_arc_by_enumeration(&cfg, &l, anchor, 1.0, 6);
    ok.push(found.as_ref().map(|d| d.p.vertices().to_vec()) == arc);
    if let Some(d) = &found {
        ok.push(verify_shielded_detour(&cfg, &l, d, 1.0).map(|r| r.ok()).unwrap_or(false));
        ok.push(verify_shielded_detour(&cfg, &l, d, 0.5).map(|r| r.failed == vec![5]).unwrap_or(false));
        ok.push(build_shortcut(&cfg, &l, std::slice::from_ref(d)).map(|p| p.sigma.num_edges() + 2 == l.num_edges()).unwrap_or(false));
    } else {
        ok.extend([false, false, false]);
    }
    Check {
        name: "detour fixture".into(),
        passed: ok.iter().filter(|&&b| b).count() as u64,
        total: ok.len() as u64,
        detail: "lowest crossing, canonical arc, conditions at eps 1 and 0.5, splice".into(),
    }
}

/// Runs every oracle comparison. `fast` keeps within a couple of minutes on
/// one core; `full` uses the acceptance sample sizes.
pub fn verify_suite(level: Level, seed: u64) -> VerifyReport {
    let (mc, arms) = match level {
        Level::Fast => (100_000, 100),
        Level::Full => (1_000_000, 500),
    };
    let mut checks = vec![check_n1_exhaustive(), check_n1_monte_carlo(mc, seed), check_n2_lowest(200, seed)];
    for s in ["ooc", "ococ", "oooo"] {
        let spec: ArmSpec = s.parse().expect("valid word");
        for m in 2..=4 {
            checks.push(check_arm_packing(&spec, m, arms, seed));
        }
    }
    checks.push(check_detour_fixture());
    VerifyReport { level, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_checks_pass() {
        assert!(check_n1_exhaustive().ok());
        assert!(check_n2_lowest(20, 3).ok());
        assert!(check_detour_fixture().ok());
        assert!(check_arm_packing(&"ococ".parse().unwrap(), 2, 30, 1).ok());
    }
}
