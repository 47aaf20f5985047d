//! Seeded Monte Carlo studies.
//!
//! Trial `i` of a study with seed `s` samples its configuration from stream
//! `i` of `s`. Trials run in parallel, per-trial results are collected in
//! trial order and reduced sequentially, so every report is a function of
//! its parameters alone. Auxiliary arm probabilities use a derived seed
//! (see [`family_seed`]).

use rayon::prelude::*;
use serde::Serialize;

use crate::arms::{annulus_arm_event, estimate_pi_at, AnnulusQuery, ArmShape, ArmSpec, Center};
use crate::distance::{chem_dist, crossing_lengths, dyadic_scale_sampled, radial_distance};
use crate::error::{Error, Result};
use crate::geometry::{below_region, lowest_crossing, origin_to_boundary, LatticePath};
use crate::lattice::{sample_config, BondConfig, Vertex};
use crate::shortcut::{build_shortcut, find_all_detours, verify_shielded_detour, DetourParams, DetourPlan};
use crate::stats::{ratio, EstimatorResult};

pub mod output;
pub mod verify;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest box radius a study accepts.
pub const MAX_N: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Study {
    Sample,
    Arms,
    Radial,
    Crossing,
    Shortcut,
    Dtail,
    Pt2pt,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conditioning {
    #[serde(rename = "A_n")]
    An,
    #[serde(rename = "H_n")]
    Hn,
    #[serde(rename = "x<->y")]
    Connected,
    #[serde(rename = "none")]
    None,
}

/// Parameters of a run, echoed in the JSON summary.
#[derive(Clone, Debug, Serialize)]
pub struct StudySpec {
    pub study: Study,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kmax: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    pub trials: u64,
    pub seed: u64,
    pub conditioning: Conditioning,
}

/// Seed for an auxiliary estimate `tag` inside a study seeded with `seed`.
pub fn family_seed(seed: u64, tag: u64) -> u64 {
    seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidInput(format!("n = {n} outside 1..={MAX_N}")));
    }
    Ok(())
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    Ok(())
}

/// Runs `f` on trials `0..trials` of `B_n` and keeps the accepted ones, in
/// trial order.
fn accepted<T: Send>(
    n: u32,
    p: f64,
    trials: u64,
    seed: u64,
    f: impl Fn(&BondConfig) -> Option<T> + Sync,
) -> Result<Vec<(u64, T)>> {
    sample_config(n, p, seed, 0)?;
    let out: Vec<Option<(u64, T)>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let cfg = sample_config(n, p, seed, i).expect("validated parameters");
            f(&cfg).map(|t| (i, t))
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

fn mean_of(trials: u64, values: impl Iterator<Item = u64>, seed: u64) -> Result<EstimatorResult> {
    let (mut k, mut sum, mut sq) = (0u64, 0u64, 0u128);
    for v in values {
        k += 1;
        sum += v;
        sq += v as u128 * v as u128;
    }
    if k == 0 {
        return Err(Error::NoAcceptedTrials);
    }
    Ok(EstimatorResult::mean(trials, k, sum, sq, seed))
}

/// Sample mean and its standard error.
fn float_mean(xs: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / k;
    if xs.len() < 2 {
        return (m, f64::NAN);
    }
    let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (k - 1.0);
    (m, (var / k).sqrt())
}

/// `E[S_{B_n(0)} | A_n]` and its normalisation by `n² π₃(n)`.
#[derive(Clone, Debug, Serialize)]
pub struct RadialReport {
    pub n: u32,
    pub distance: EstimatorResult,
    /// `π̂₃(n)`, three arms `o,o,c` from the edge `{0, e_1}`.
    pub pi3: Option<EstimatorResult>,
    /// `Ê[S | A_n] / (n² π̂₃(n))` with its delta-method standard error.
    pub ratio: Option<(f64, f64)>,
}

pub fn run_radial(n: u32, trials: u64, seed: u64) -> Result<RadialReport> {
    run_radial_with(n, trials, seed, 0.5, trials)
}

/// [`run_radial`] at edge density `p`, with `pi3_trials` trials for the
/// normaliser (none when zero).
pub fn run_radial_with(n: u32, trials: u64, seed: u64, p: f64, pi3_trials: u64) -> Result<RadialReport> {
    check_n(n)?;
    check_trials(trials)?;
    let hits = accepted(n, p, trials, seed, radial_distance)?;
    let distance = mean_of(trials, hits.iter().map(|(_, d)| *d as u64), seed)?;
    let pi3 = if pi3_trials > 0 {
        Some(estimate_pi_at(&ArmSpec::three_arm(), &ArmShape::Edge { radius: n }, pi3_trials, family_seed(seed, 3), p)?)
    } else {
        None
    };
    let ratio = pi3.as_ref().map(|pi| {
        let scale = (n as f64) * (n as f64);
        ratio(distance.estimate, distance.stderr, scale * pi.estimate, scale * pi.stderr)
    });
    Ok(RadialReport { n, distance, pi3, ratio })
}

/// One accepted `H_n` trial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingRecord {
    pub trial: u64,
    pub s: usize,
    pub l: usize,
    pub sigma_len: usize,
    pub num_detours: usize,
    pub detoured_edges: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossingReport {
    pub n: u32,
    pub eps: Option<f64>,
    pub mean_s: EstimatorResult,
    pub mean_l: EstimatorResult,
    /// Mean of `S_n / L_n` over accepted trials, with standard error.
    pub ratio_sl: (f64, f64),
    /// Mean of `#σ_n / L_n`.
    pub ratio_sigma: (f64, f64),
    /// Broken shortcut invariants, one line each.
    pub violations: Vec<String>,
    #[serde(skip)]
    pub records: Vec<CrossingRecord>,
}

/// Checks a plan against the shortcut invariants; returns what failed.
pub fn plan_violations(cfg: &BondConfig, l: &LatticePath, plan: &DetourPlan, eps: f64, s: usize) -> Vec<String> {
    let mut bad = vec![];
    let g = cfg.geom();
    let sigma = &plan.sigma;
    if !(sigma.is_open(cfg) && sigma.is_horizontal_crossing(g) && sigma.is_self_avoiding()) {
        bad.push("sigma is not an open self-avoiding crossing".to_string());
    }
    if !(s <= sigma.num_edges() && sigma.num_edges() <= l.num_edges()) {
        bad.push(format!("S = {s}, #sigma = {}, L = {} out of order", sigma.num_edges(), l.num_edges()));
    }
    for (i, a) in plan.pi.iter().enumerate() {
        for b in &plan.pi[i + 1..] {
            if a.q.vertices().iter().any(|v| b.q.vertices().contains(v)) {
                bad.push(format!("detoured segments at {} and {} meet", a.anchor, b.anchor));
            }
        }
    }
    let below = below_region(g, l);
    for d in &plan.detours {
        if d.p.num_vertices() as f64 > eps * d.q.num_vertices() as f64 {
            bad.push(format!("detour at {} has #P > eps #Q", d.anchor));
        }
        let inner = &d.p.vertices()[1..d.p.num_vertices() - 1];
        if inner.iter().any(|&v| below.contains_vertex(v) || l.vertices().contains(&v)) {
            bad.push(format!("detour at {} enters B(l_n)", d.anchor));
        }
        match verify_shielded_detour(cfg, l, d, eps) {
            Ok(rep) if rep.ok() => {}
            Ok(rep) => bad.push(format!("detour at {} fails conditions {:?}", d.anchor, rep.failed)),
            Err(e) => bad.push(format!("detour at {}: {e}", d.anchor)),
        }
    }
    bad
}

/// One `H_n` trial: lengths and, with `eps`, the shortcut.
fn crossing_trial(cfg: &BondConfig, eps: Option<f64>) -> Option<(usize, usize, usize, usize, usize, Vec<String>)> {
    let (s, lsize) = crossing_lengths(cfg)?;
    let Some(eps) = eps else { return Some((s, lsize, lsize, 0, 0, vec![])) };
    let l = lowest_crossing(cfg).expect("H_n holds");
    let params = DetourParams::new(eps).expect("validated eps");
    let found = match find_all_detours(cfg, &l, &params) {
        Ok(f) => f,
        Err(e) => return Some((s, lsize, lsize, 0, 0, vec![e.to_string()])),
    };
    let detours: Vec<_> = found.into_iter().filter_map(|(_, d)| d).collect();
    match build_shortcut(cfg, &l, &detours) {
        Ok(plan) => {
            let bad = plan_violations(cfg, &l, &plan, eps, s);
            Some((s, lsize, plan.sigma.num_edges(), plan.pi.len(), plan.detoured_edges(), bad))
        }
        Err(e) => Some((s, lsize, lsize, 0, 0, vec![e.to_string()])),
    }
}

/// Rejection-samples `H_n` and records `S_n`, `L_n` and, when `eps` is
/// given, the shortcut `σ_n`.
pub fn run_crossing(n: u32, eps: Option<f64>, trials: u64, seed: u64) -> Result<CrossingReport> {
    check_n(n)?;
    check_trials(trials)?;
    if let Some(e) = eps {
        DetourParams::new(e)?;
    }
    let rows = accepted(n, 0.5, trials, seed, |cfg| crossing_trial(cfg, eps))?;
    if rows.is_empty() {
        return Err(Error::NoAcceptedTrials);
    }
    let mut violations = vec![];
    let mut records = Vec::with_capacity(rows.len());
    for (trial, (s, l, sigma_len, num_detours, detoured_edges, bad)) in rows {
        violations.extend(bad.into_iter().map(|b| format!("trial {trial}: {b}")));
        records.push(CrossingRecord { trial, s, l, sigma_len, num_detours, detoured_edges });
    }
    let mean_s = mean_of(trials, records.iter().map(|r| r.s as u64), seed)?;
    let mean_l = mean_of(trials, records.iter().map(|r| r.l as u64), seed)?;
    let sl: Vec<f64> = records.iter().map(|r| r.s as f64 / r.l as f64).collect();
    let sg: Vec<f64> = records.iter().map(|r| r.sigma_len as f64 / r.l as f64).collect();
    Ok(CrossingReport {
        n,
        eps,
        mean_s,
        mean_l,
        ratio_sl: float_mean(&sl),
        ratio_sigma: float_mean(&sg),
        violations,
        records,
    })
}

/// `P(D = k)` against its four-arm normaliser.
#[derive(Clone, Debug, Serialize)]
pub struct DtailRow {
    pub k: u32,
    pub count: u64,
    pub p_hat: f64,
    pub stderr: f64,
    /// `2^{2(k-1)} P̂(D = k)`.
    pub scaled: f64,
    /// `π̂₄(2^{k-1})`, four alternating arms from `{0, e_1}`.
    pub pi4: Option<EstimatorResult>,
    /// `P̂(D = k) / π̂₄(2^{k-1})` with standard error.
    pub ratio: Option<(f64, f64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DtailReport {
    pub kmax: u32,
    pub trials: u64,
    pub censored: u64,
    pub censored_fraction: f64,
    pub rows: Vec<DtailRow>,
}

/// Unconditional law of `D_{e_1}` on `B_{2^kmax}`; `pi4_trials` trials per
/// normaliser (none when zero).
pub fn run_dtail(kmax: u32, trials: u64, seed: u64, pi4_trials: u64) -> Result<DtailReport> {
    if !(1..=8).contains(&kmax) {
        return Err(Error::InvalidInput(format!("kmax = {kmax} outside 1..=8")));
    }
    check_trials(trials)?;
    let ks: Vec<Option<u32>> = (0..trials)
        .into_par_iter()
        .map(|i| dyadic_scale_sampled(kmax, 0.5, seed, i).expect("validated kmax").k)
        .collect();
    let mut counts = vec![0u64; kmax as usize + 1];
    let mut censored = 0;
    for k in ks {
        match k {
            Some(k) => counts[k as usize] += 1,
            None => censored += 1,
        }
    }
    let mut rows = vec![];
    for k in 1..=kmax {
        let est = EstimatorResult::proportion(trials, trials, counts[k as usize], seed);
        let pi4 = if pi4_trials > 0 {
            let shape = ArmShape::Edge { radius: 1 << (k - 1) };
            Some(estimate_pi_at(&ArmSpec::four_arm(), &shape, pi4_trials, family_seed(seed, 4 + k as u64), 0.5)?)
        } else {
            None
        };
        let r = pi4.as_ref().map(|pi| ratio(est.estimate, est.stderr, pi.estimate, pi.stderr));
        rows.push(DtailRow {
            k,
            count: counts[k as usize],
            p_hat: est.estimate,
            stderr: est.stderr,
            scaled: est.estimate * 4f64.powi(k as i32 - 1),
            pi4,
            ratio: r,
        });
    }
    Ok(DtailReport { kmax, trials, censored, censored_fraction: censored as f64 / trials as f64, rows })
}

/// Multipliers `λ` of `d² π̂₃(d)` at which the distance tail is reported.
pub const LAMBDAS: [f64; 9] = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0];

/// Point-to-point distance on `x ↔ y`.
#[derive(Clone, Debug, Serialize)]
pub struct Pt2ptReport {
    pub d: u32,
    pub levels: u32,
    /// Box radius `2^{L+1} d`.
    pub radius: u32,
    pub trials: u64,
    pub accepted: u64,
    pub distance: EstimatorResult,
    pub pi3: EstimatorResult,
    /// `k_counts[k]` for `k < L`: trials whose first closed dual circuit
    /// around `x` lies in the annulus `A(2^k d, 2^{k+1} d)`; `k_counts[L]`:
    /// none up to scale `2^L d`.
    pub k_counts: Vec<u64>,
    /// `(λ, P̂(dist ≥ λ d² π̂₃(d)))`.
    pub tail: Vec<(f64, f64)>,
}

/// The two points: `x = (-⌊d/2⌋, 0)` and `y = x + (d, 0)`.
pub fn pt2pt_points(d: u32) -> (Vertex, Vertex) {
    let x = Vertex::new(-((d / 2) as i32), 0);
    (x, x.offset(d as i32, 0))
}

pub fn run_pt2pt(d: u32, levels: u32, trials: u64, seed: u64) -> Result<Pt2ptReport> {
    if d == 0 || levels == 0 {
        return Err(Error::InvalidInput("d and L must be at least 1".into()));
    }
    let radius = (d as u64) << (levels + 1);
    if radius > MAX_N as u64 {
        return Err(Error::InvalidInput(format!("box radius {radius} exceeds {MAX_N}")));
    }
    let radius = radius as u32;
    check_trials(trials)?;
    let (x, y) = pt2pt_points(d);
    let rows = accepted(radius, 0.5, trials, seed, |cfg| {
        let dist = chem_dist(cfg, &[x], &[y], |_| true).expect("points in box").value?;
        let k = (0..levels)
            .find(|&k| {
                let q = AnnulusQuery { inner: d << k, outer: d << (k + 1), center: Center::Vertex(x) };
                !annulus_arm_event(cfg, &q, &ArmSpec::one_arm()).expect("annulus in box")
            })
            .unwrap_or(levels);
        Some((dist, k))
    })?;
    let distance = mean_of(trials, rows.iter().map(|(_, (dist, _))| *dist as u64), seed)?;
    let pi3 = estimate_pi_at(&ArmSpec::three_arm(), &ArmShape::Edge { radius: d }, trials, family_seed(seed, 3), 0.5)?;
    let mut k_counts = vec![0u64; levels as usize + 1];
    for (_, (_, k)) in &rows {
        k_counts[*k as usize] += 1;
    }
    let scale = (d as f64) * (d as f64) * pi3.estimate;
    let acc = rows.len() as f64;
    let tail = LAMBDAS
        .iter()
        .map(|&lam| {
            let c = rows.iter().filter(|(_, (dist, _))| *dist as f64 >= lam * scale).count();
            (lam, c as f64 / acc)
        })
        .collect();
    Ok(Pt2ptReport { d, levels, radius, trials, accepted: rows.len() as u64, distance, pi3, k_counts, tail })
}

/// `π̂` for one arm word and shape, as the `arms` study reports it.
pub fn run_arms(spec: &ArmSpec, shape: &ArmShape, trials: u64, seed: u64) -> Result<EstimatorResult> {
    estimate_pi_at(spec, shape, trials, seed, 0.5)
}

/// `A_n ∩ C_0^c` samples for the three-arm check along `σ̃_n`.
pub fn radial_path_samples(n: u32, count: usize, seed: u64) -> Vec<(u64, BondConfig)> {
    let mut out = vec![];
    let mut i = 0;
    while out.len() < count {
        let cfg = sample_config(n, 0.5, seed, i).expect("valid n");
        if origin_to_boundary(&cfg) && crate::geometry::radial_exit_face(&cfg).is_some() {
            out.push((i, cfg));
        }
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_one_radial_is_exact() {
        let r = run_radial_with(5, 20, 1, 1.0, 0).unwrap();
        assert_eq!(r.distance.accepted, 20);
        assert_eq!(r.distance.estimate, 5.0);
    }

    #[test]
    fn crossing_reports_are_reproducible() {
        let a = run_crossing(6, Some(0.5), 50, 9).unwrap();
        let b = run_crossing(6, Some(0.5), 50, 9).unwrap();
        assert_eq!(a.records, b.records);
        assert!(a.violations.is_empty());
        assert!(a.records.iter().all(|r| r.s <= r.sigma_len && r.sigma_len <= r.l));
    }

    #[test]
    fn dtail_partition() {
        let r = run_dtail(3, 2000, 4, 0).unwrap();
        let total: u64 = r.rows.iter().map(|x| x.count).sum::<u64>() + r.censored;
        assert_eq!(total, 2000);
    }

    #[test]
    fn pt2pt_tail_is_monotone() {
        let r = run_pt2pt(1, 2, 400, 2).unwrap();
        assert!(r.tail.windows(2).all(|w| w[0].1 >= w[1].1));
        assert_eq!(r.k_counts.iter().sum::<u64>(), r.accepted);
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(run_radial(4, 0, 1).is_err());
        assert!(matches!(run_crossing(1, None, 1, 0), Ok(_) | Err(Error::NoAcceptedTrials)));
    }
}
