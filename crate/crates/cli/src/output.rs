//! Plot-ready serialization. Floats are written with 17 significant digits
//! so identical runs give identical bytes; undefined points are empty in CSV
//! and `null` in JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use vortex_cd::observables::RadialProfile;
use vortex_cd::paraxial::ParaxialFormula;
use vortex_cd::polarization::StokesPoint;
use vortex_cd::verify::CheckOutcome;

pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// `# key = value` lines echoing the resolved configuration.
pub fn header(command: &str, echo: &[(&str, String)]) -> String {
    let mut s = format!("# vd {command}\n");
    for (k, v) in echo {
        let _ = writeln!(s, "# {k} = {v}");
    }
    s
}

pub fn profile_csv(head: &str, p: &RadialProfile<f64>) -> String {
    let mut s = head.to_string();
    s.push_str("b,value\n");
    for pt in &p.points {
        let _ = writeln!(s, "{},{}", num(pt.b), opt(pt.value));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StokesBlock {
    pub z: f64,
    pub points: Vec<StokesPoint<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StokesRun {
    pub mbar: i32,
    pub theta_k: f64,
    pub wavelength: f64,
    pub l_f_medium: u32,
    pub c_plus: f64,
    pub c_minus: f64,
    pub blocks: Vec<StokesBlock>,
}

pub fn stokes_csv(head: &str, run: &StokesRun) -> String {
    let mut s = head.to_string();
    s.push_str("b,S0,S1,S2,S3\n");
    for block in &run.blocks {
        let _ = writeln!(s, "# z = {}", num(block.z));
        for p in &block.points {
            let st = &p.stokes;
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                num(p.b),
                num(st.s0),
                num(st.s1),
                num(st.s2),
                num(st.s3)
            );
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParaxialPoint {
    pub x: f64,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub numeric: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParaxialRun {
    pub formula: ParaxialFormula,
    pub points: Vec<ParaxialPoint>,
}

pub fn paraxial_csv(head: &str, run: &ParaxialRun) -> String {
    let mut s = head.to_string();
    let numeric = run.points.first().is_some_and(|p| p.numeric.is_some());
    s.push_str(if numeric { "x,value,numeric\n" } else { "x,value\n" });
    for p in &run.points {
        match p.numeric {
            Some(n) => {
                let _ = writeln!(s, "{},{},{}", num(p.x), num(p.value), num(n));
            }
            None => {
                let _ = writeln!(s, "{},{}", num(p.x), num(p.value));
            }
        }
    }
    s
}

pub fn verify_table(outcomes: &[CheckOutcome]) -> String {
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for o in outcomes {
        let _ = writeln!(
            s,
            "{}  {:width$}  worst {:>10.3e}  tol {:>9.1e}  {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.worst,
            o.tolerance,
            o.detail
        );
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let _ = writeln!(s, "{} checks, {} failed", outcomes.len(), failed);
    s
}

pub fn json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}
