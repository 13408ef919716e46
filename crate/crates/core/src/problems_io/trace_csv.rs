use std::fs;
use std::path::Path;

use crate::dsap::{IterationRecord, IterationTrace, TraceColumns};
use crate::error::{Error, Result};

const BASE: [&str; 4] = ["k", "proximity", "phi_sum", "step_norm"];
const FEJER: &str = "fejer_margin";
const PERTURBATION: [&str; 3] = ["beta_k", "direction_norm", "beta_sum"];
const OBJECTIVE: &str = "objective_value";

/// The scalar columns of a trace as read back from disk.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceTable {
    pub columns: TraceColumns,
    pub records: Vec<IterationRecord>,
}

fn header(columns: TraceColumns) -> Vec<&'static str> {
    let mut h = BASE.to_vec();
    if columns.fejer_margin {
        h.push(FEJER);
    }
    if columns.perturbation {
        h.extend(PERTURBATION);
    }
    if columns.objective {
        h.push(OBJECTIVE);
    }
    h
}

/// 17 significant digits: enough to round-trip any `f64`.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub fn trace_to_string(trace: &IterationTrace) -> String {
    let columns = trace.columns;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header(columns)).expect("in-memory write");
    for r in &trace.records {
        let mut row = vec![r.k.to_string(), num(r.proximity), num(r.phi_sum), num(r.step_norm)];
        if columns.fejer_margin {
            row.push(opt(r.fejer_margin));
        }
        if columns.perturbation {
            row.extend([opt(r.beta), opt(r.direction_norm), opt(r.beta_sum)]);
        }
        if columns.objective {
            row.push(opt(r.objective));
        }
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn write_trace(trace: &IterationTrace, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, trace_to_string(trace)).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn read_trace(path: impl AsRef<Path>) -> Result<TraceTable> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let bad = |message: String| Error::TraceFormat { path: path.to_path_buf(), message };

    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let head: Vec<String> = reader
        .headers()
        .map_err(|e| bad(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let has = |name: &str| head.iter().any(|h| h == name);
    let columns = TraceColumns {
        fejer_margin: has(FEJER),
        perturbation: PERTURBATION.iter().all(|c| has(c)),
        objective: has(OBJECTIVE),
    };
    let expected = header(columns);
    if head != expected {
        return Err(bad(format!("unexpected header {head:?}, expected {expected:?}")));
    }
    let idx = |name: &str| expected.iter().position(|h| *h == name);

    let mut records = Vec::new();
    for (line, row) in reader.records().enumerate() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        let field = |name: &str| -> Result<Option<f64>> {
            let Some(i) = idx(name) else { return Ok(None) };
            let cell = row.get(i).unwrap_or("");
            if cell.is_empty() {
                return Ok(None);
            }
            cell.parse::<f64>()
                .map(Some)
                .map_err(|e| bad(format!("row {}: {name}: {e}", line + 1)))
        };
        let required = |name: &str| -> Result<f64> {
            field(name)?.ok_or_else(|| bad(format!("row {}: missing {name}", line + 1)))
        };
        let k = row
            .get(0)
            .unwrap_or("")
            .parse::<usize>()
            .map_err(|e| bad(format!("row {}: k: {e}", line + 1)))?;
        records.push(IterationRecord {
            k,
            proximity: required("proximity")?,
            phi_sum: required("phi_sum")?,
            step_norm: required("step_norm")?,
            fejer_margin: field(FEJER)?,
            beta: field(PERTURBATION[0])?,
            direction_norm: field(PERTURBATION[1])?,
            beta_sum: field(PERTURBATION[2])?,
            objective: field(OBJECTIVE)?,
        });
    }
    Ok(TraceTable { columns, records })
}
