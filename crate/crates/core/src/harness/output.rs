//! CSV tables and the JSON run summary.

use serde::Serialize;
use serde_json::{json, Value};

use super::{CrossingReport, DtailReport, Pt2ptReport, RadialReport, StudySpec, VERSION};
use crate::arms::ArmSpec;
use crate::stats::EstimatorResult;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Formats like C's `%.10g`.
pub fn fmt_g10(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.9e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..10).contains(&exp) {
        let s = format!("{:.*}", (9 - exp) as usize, x);
        trim_zeros(&s).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mant), sign, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(v) => v.to_string(),
                    Cell::Float(v) => fmt_g10(*v),
                    Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// The JSON run summary.
pub fn summary(spec: &StudySpec, result: &impl Serialize, elapsed_s: f64) -> Value {
    json!({
        "spec": spec,
        "result": result,
        "version": VERSION,
        "elapsed_s": elapsed_s,
    })
}

pub fn arms_table(spec: &ArmSpec, inner: u32, outer: u32, est: &EstimatorResult) -> Table {
    let mut t = Table::new(&["spec", "inner", "outer", "trials", "hits", "phat", "stderr", "seed"]);
    t.push(vec![
        spec.to_string().into(),
        inner.into(),
        outer.into(),
        est.trials.into(),
        est.sum.into(),
        est.estimate.into(),
        est.stderr.into(),
        est.seed.into(),
    ]);
    t
}

/// Per-trial shortcut records.
pub fn crossing_table(r: &CrossingReport) -> Table {
    let mut t = Table::new(&["trial", "Sn", "Ln", "sigma_len", "num_detours", "detoured_edges"]);
    for rec in &r.records {
        t.push(vec![
            rec.trial.into(),
            rec.s.into(),
            rec.l.into(),
            rec.sigma_len.into(),
            rec.num_detours.into(),
            rec.detoured_edges.into(),
        ]);
    }
    t
}

fn opt(v: Option<f64>) -> Cell {
    Cell::Float(v.unwrap_or(f64::NAN))
}

pub fn radial_table(r: &RadialReport) -> Table {
    let mut t = Table::new(&[
        "n", "trials", "accepted", "mean_S", "stderr_S", "pi3", "stderr_pi3", "ratio", "stderr_ratio",
    ]);
    t.push(vec![
        r.n.into(),
        r.distance.trials.into(),
        r.distance.accepted.into(),
        r.distance.estimate.into(),
        r.distance.stderr.into(),
        opt(r.pi3.as_ref().map(|p| p.estimate)),
        opt(r.pi3.as_ref().map(|p| p.stderr)),
        opt(r.ratio.map(|x| x.0)),
        opt(r.ratio.map(|x| x.1)),
    ]);
    t
}

pub fn dtail_table(r: &DtailReport) -> Table {
    let mut t = Table::new(&["k", "count", "phat", "stderr", "scaled", "pi4", "stderr_pi4", "ratio", "stderr_ratio"]);
    for row in &r.rows {
        t.push(vec![
            row.k.into(),
            row.count.into(),
            row.p_hat.into(),
            row.stderr.into(),
            row.scaled.into(),
            opt(row.pi4.as_ref().map(|p| p.estimate)),
            opt(row.pi4.as_ref().map(|p| p.stderr)),
            opt(row.ratio.map(|x| x.0)),
            opt(row.ratio.map(|x| x.1)),
        ]);
    }
    t.push(vec![
        "censored".into(),
        r.censored.into(),
        r.censored_fraction.into(),
        Cell::Float(f64::NAN),
        Cell::Float(f64::NAN),
        Cell::Float(f64::NAN),
        Cell::Float(f64::NAN),
        Cell::Float(f64::NAN),
        Cell::Float(f64::NAN),
    ]);
    t
}

/// The distance tail, followed by the `K` histogram as `K=k` rows.
pub fn pt2pt_table(r: &Pt2ptReport) -> Table {
    let mut t = Table::new(&["key", "value", "fraction"]);
    for &(lam, p) in &r.tail {
        t.push(vec![format!("lambda={}", fmt_g10(lam)).into(), (lam * (r.d as f64).powi(2) * r.pi3.estimate).into(), p.into()]);
    }
    let acc = r.accepted as f64;
    for (k, &c) in r.k_counts.iter().enumerate() {
        t.push(vec![format!("K={k}").into(), c.into(), (c as f64 / acc).into()]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g10_matches_printf() {
        assert_eq!(fmt_g10(0.671875), "0.671875");
        assert_eq!(fmt_g10(185.0 / 86.0), "2.151162791");
        assert_eq!(fmt_g10(1.0), "1");
        assert_eq!(fmt_g10(123456.0), "123456");
        assert_eq!(fmt_g10(1.5e-5), "1.5e-05");
        assert_eq!(fmt_g10(0.0001), "0.0001");
        assert_eq!(fmt_g10(12345678901.0), "1.23456789e+10");
        assert_eq!(fmt_g10(-0.25), "-0.25");
        assert_eq!(fmt_g10(9.9999999999), "10");
    }

    #[test]
    fn csv_shape() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![1u64.into(), 0.5.into()]);
        t.push(vec!["x,y".into(), f64::NAN.into()]);
        assert_eq!(t.to_csv(), "a,b\n1,0.5\n\"x,y\",nan\n");
    }
}
