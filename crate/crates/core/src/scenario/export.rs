use std::fmt;
use std::str::FromStr;

use super::Report;
use crate::density::{DIM, QUBITS};
use crate::error::{Error, Result};
use crate::experiment::write_counts_csv;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ExportFormat::Json),
            "csv" => Ok(ExportFormat::Csv),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportFormat::Json => "json",
            ExportFormat::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExportedFile {
    pub name: String,
    pub contents: String,
}

/// `HHVH`-style label, qubit 1 first.
fn outcome_label(k: usize) -> String {
    (0..QUBITS)
        .map(|q| if k >> q & 1 == 0 { 'H' } else { 'V' })
        .collect()
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

fn summary_csv(report: &Report) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["quantity", "value"])?;
    let mut row = |k: &str, v: String| w.write_record([k, v.as_str()]);
    if let Some(s) = &report.source {
        row(
            "source_success_probability",
            s.success_probability.to_string(),
        )?;
        row("source_fidelity", s.fidelity.to_string())?;
    }
    if let Some(o) = &report.occupancy {
        let ids: Vec<String> = o.occupied.iter().map(|i| i.to_string()).collect();
        row("occupied", ids.join(" "))?;
    }
    for p in &report.plaquettes {
        row(&format!("plaquette_{}", p.id), p.value.to_string())?;
    }
    for e in &report.expectations {
        row(&format!("<{}>", e.operator), e.value.to_string())?;
    }
    if let Some(e) = report.energy {
        row("energy", e.to_string())?;
    }
    if let Some(o) = &report.overlap {
        row("overlap_re", o.re.to_string())?;
        row("overlap_im", o.im.to_string())?;
    }
    if let Some(a) = &report.analysis {
        row("visibility", a.visibility.to_string())?;
        row("phase_pi", a.phase_pi.to_string())?;
        row("p_hhhh", a.p_hhhh.to_string())?;
        row("p_vvvv", a.p_vvvv.to_string())?;
        row("c_z", a.c_z.to_string())?;
        row("fidelity", a.fidelity.to_string())?;
        row("witness", a.witness.to_string())?;
        if let Some(b) = &a.error_bars {
            row("visibility_stderr", b.visibility.to_string())?;
            row(
                "phase_pi_stderr",
                (b.phase / std::f64::consts::PI).to_string(),
            )?;
            if let Some(f) = b.fidelity {
                row("fidelity_stderr", f.to_string())?;
            }
        }
    }
    for c in &report.checks {
        row(
            &format!("check_{}", c.name),
            if c.passed { "pass" } else { "fail" }.to_string(),
        )?;
    }
    finish(w)
}

/// Renders a report as one JSON document or a set of CSV tables.
/// Output depends only on the report, so a seeded run exports identically.
pub fn export(report: &Report, format: ExportFormat) -> Result<Vec<ExportedFile>> {
    let stem = &report.scenario;
    match format {
        ExportFormat::Json => {
            let mut contents = serde_json::to_string_pretty(report)?;
            contents.push('\n');
            Ok(vec![ExportedFile {
                name: format!("{stem}.json"),
                contents,
            }])
        }
        ExportFormat::Csv => {
            let mut files = vec![ExportedFile {
                name: format!("{stem}_summary.csv"),
                contents: summary_csv(report)?,
            }];
            if let Some(curve) = &report.curve {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["gamma", "value", "stderr"])?;
                for r in curve {
                    w.write_record([
                        r.gamma.to_string(),
                        r.value.to_string(),
                        r.stderr.to_string(),
                    ])?;
                }
                files.push(ExportedFile {
                    name: format!("{stem}_curve.csv"),
                    contents: finish(w)?,
                });
            }
            if let Some(pops) = &report.populations {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["outcome", "probability"])?;
                for (k, p) in pops.iter().enumerate().take(DIM) {
                    w.write_record([outcome_label(k), p.to_string()])?;
                }
                files.push(ExportedFile {
                    name: format!("{stem}_populations.csv"),
                    contents: finish(w)?,
                });
            }
            if let Some(counts) = &report.counts {
                files.push(ExportedFile {
                    name: format!("{stem}_counts.csv"),
                    contents: write_counts_csv(counts)?,
                });
            }
            Ok(files)
        }
    }
}
