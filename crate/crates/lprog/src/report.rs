//! Report emission.  JSON output wraps every payload in an envelope that
//! pins provenance: the resolved command configuration plus the hash and
//! source of the constants file that shaped the run.  CSV output is
//! plot-ready rows, '.' decimal, complex values as re/im column pairs.

use crate::bounds::{BauerQuadReport, MinSumRecord};
use crate::characters::CharacterJson;
use crate::constants::ConstantsFile;
use crate::error::{Error, Result};
use crate::moments::{FirstNonzeroReport, MomentReport, ScanOutcome, Verdict};
use serde::Serialize;
use std::path::Path;

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Envelope<'a, C: Serialize, R: Serialize> {
    command: &'a str,
    config: &'a C,
    constants_sha256: &'a str,
    constants_source: &'a str,
    report: &'a R,
}

/// The JSON envelope: command name, resolved config, constants provenance,
/// and the payload under `report`.
pub fn render_json<C: Serialize, R: Serialize>(
    command: &str,
    config: &C,
    consts: &ConstantsFile,
    report: &R,
) -> Result<String> {
    let envelope = Envelope {
        command,
        config,
        constants_sha256: &consts.sha256,
        constants_source: &consts.source,
        report,
    };
    serde_json::to_string_pretty(&envelope)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Config(format!("JSON serialization failed: {e}")))
}

/// Serializes flat records through the csv writer; headers come from the
/// field names.
pub fn rows_to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)
            .map_err(|e| Error::Config(format!("CSV serialization failed: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Config(format!("CSV flush failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(format!("CSV is not UTF-8: {e}")))
}

#[derive(Serialize)]
struct CharValueRow {
    modulus: u32,
    label: u32,
    conductor: u32,
    parity: &'static str,
    a: usize,
    re: f64,
    im: f64,
}

/// One row per residue a = 0..q-1 for each character.
pub fn characters_csv(records: &[CharacterJson]) -> Result<String> {
    let mut rows = Vec::new();
    for rec in records {
        for (a, v) in rec.values.iter().enumerate() {
            rows.push(CharValueRow {
                modulus: rec.modulus,
                label: rec.label,
                conductor: rec.conductor,
                parity: rec.parity,
                a,
                re: v[0],
                im: v[1],
            });
        }
    }
    rows_to_csv(&rows)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct VerdictRow {
    k: u64,
    t: f64,
    re: f64,
    im: f64,
    abs: f64,
    error_radius: f64,
    verdict: &'static str,
}

pub fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Nonzero => "nonzero",
        Verdict::Undetermined => "undetermined",
    }
}

pub fn scan_csv(outcome: &ScanOutcome) -> Result<String> {
    let rows: Vec<VerdictRow> = outcome
        .verdicts
        .iter()
        .map(|v| VerdictRow {
            k: v.k,
            t: v.t,
            re: v.value.re,
            im: v.value.im,
            abs: v.value.norm(),
            error_radius: v.error_radius,
            verdict: verdict_label(v.verdict),
        })
        .collect();
    rows_to_csv(&rows)
}

/// JSON counterpart of a scan verdict; `ScanOutcome` itself is not directly
/// serializable because the raw complex value is kept exact in memory.
#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictJson {
    pub k: u64,
    pub t: f64,
    pub value: [f64; 2],
    pub abs: f64,
    pub error_radius: f64,
    pub verdict: &'static str,
}

pub fn verdict_json_rows(outcome: &ScanOutcome) -> Vec<VerdictJson> {
    outcome
        .verdicts
        .iter()
        .map(|v| VerdictJson {
            k: v.k,
            t: v.t,
            value: [v.value.re, v.value.im],
            abs: v.value.norm(),
            error_radius: v.error_radius,
            verdict: verdict_label(v.verdict),
        })
        .collect()
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct MomentRow {
    #[serde(rename = "T")]
    t_count: u64,
    alpha: f64,
    beta: f64,
    s1_re: f64,
    s1_im: f64,
    s2: f64,
    cs_lower_bound: f64,
    nonzero_count: u64,
    undetermined_count: u64,
    per_point_error_budget: f64,
}

pub fn moment_csv(rep: &MomentReport) -> Result<String> {
    rows_to_csv(&[MomentRow {
        t_count: rep.t_count,
        alpha: rep.alpha,
        beta: rep.beta,
        s1_re: rep.s1[0],
        s1_im: rep.s1[1],
        s2: rep.s2,
        cs_lower_bound: rep.cs_lower_bound,
        nonzero_count: rep.nonzero_count,
        undetermined_count: rep.undetermined_count,
        per_point_error_budget: rep.per_point_error_budget,
    }])
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct FirstNonzeroRow {
    k: u64,
    t: f64,
    theorem_bound: f64,
    bound_case: &'static str,
    safety_factor: f64,
    re: f64,
    im: f64,
    abs: f64,
    error_radius: f64,
}

pub fn first_nonzero_csv(rep: &FirstNonzeroReport) -> Result<String> {
    rows_to_csv(&[FirstNonzeroRow {
        k: rep.k,
        t: rep.t,
        theorem_bound: rep.theorem_bound,
        bound_case: rep.bound_case,
        safety_factor: rep.safety_factor,
        re: rep.value[0],
        im: rep.value[1],
        abs: (rep.value[0].powi(2) + rep.value[1].powi(2)).sqrt(),
        error_radius: rep.error_radius,
    }])
}

pub fn min_sum_csv(records: &[MinSumRecord]) -> Result<String> {
    rows_to_csv(records)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BauerRow {
    #[serde(rename = "T")]
    t: f64,
    theta: f64,
    #[serde(rename = "X")]
    x: f64,
    q: u32,
    integral: f64,
    main_term: f64,
    relative_deviation: f64,
    method: &'static str,
    truncation_x: Option<f64>,
    constant_factor: f64,
}

pub fn bauer_csv(rep: &BauerQuadReport) -> Result<String> {
    rows_to_csv(&[BauerRow {
        t: rep.t,
        theta: rep.theta,
        x: rep.x,
        q: rep.q,
        integral: rep.integral,
        main_term: rep.main_term,
        relative_deviation: rep.relative_deviation,
        method: rep.plan.method,
        truncation_x: rep.plan.x,
        constant_factor: rep.plan.constant_factor,
    }])
}

/// Writes to the path when given, otherwise to stdout.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::DirichletCharacter;
    use crate::constants;

    #[derive(Serialize)]
    struct DemoConfig {
        modulus: u32,
        t: f64,
    }

    #[test]
    fn envelope_embeds_provenance() {
        let consts = constants::load().unwrap();
        let cfg = DemoConfig { modulus: 5, t: 2.5 };
        let out = render_json("eval", &cfg, &consts, &serde_json::json!({"ok": true})).unwrap();
        assert!(out.contains("\"command\": \"eval\""));
        assert!(out.contains(&consts.sha256));
        assert!(out.contains("\"modulus\": 5"));
        assert!(out.contains("\"report\""));
        assert!(out.ends_with('\n'));
    }

    #[test]
    fn characters_csv_has_row_per_residue() {
        let records: Vec<_> = DirichletCharacter::enumerate(5)
            .unwrap()
            .iter()
            .map(|c| c.json_record())
            .collect();
        let csv = characters_csv(&records).unwrap();
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines[0], "modulus,label,conductor,parity,a,re,im");
        // 4 characters x 5 residues.
        assert_eq!(lines.len() - 1, 20);
        assert!(csv.contains('.'), "floats should carry a decimal point");
    }

    #[test]
    fn min_sum_csv_round_trips_decimal_point() {
        let rec = crate::bounds::min_sum_record(
            1.0,
            100.0,
            1.0,
            10.0,
            crate::bounds::MinSumVariant::BetaGe1,
        )
        .unwrap();
        let csv = min_sum_csv(&[rec]).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "A,B,beta,T,variant,weighted,exactValue,boundValue,ratio"
        );
        let data = lines.next().unwrap();
        assert!(data.starts_with("1.0,100.0,1.0,10.0,beta-ge-1,true,"));
    }
}
