//! Table serialization: CSV (one row per cell), Markdown (wide,
//! table-per-analysis layout), and JSON (nested by row key, full-precision
//! values plus metadata).

use std::collections::BTreeSet;
use std::fmt::Write as _;

use priorcurve_core::EstimateMethod;

use crate::config::{Analysis, OutputFormat};
use crate::grid::{Cell, CellOutcome, ResultTable};

/// Render a float with 6 significant digits, deterministically.
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-4..=6).contains(&magnitude) {
        let decimals = (5 - magnitude).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

fn method_name(method: EstimateMethod) -> &'static str {
    match method {
        EstimateMethod::MonteCarlo => "monte-carlo",
        EstimateMethod::ClosedForm => "closed-form",
    }
}

pub fn emit(table: &ResultTable, format: OutputFormat) -> anyhow::Result<Vec<u8>> {
    match format {
        OutputFormat::Csv => emit_csv(table),
        OutputFormat::Markdown => Ok(emit_markdown(table).into_bytes()),
        OutputFormat::Json => emit_json(table),
    }
}

fn emit_csv(table: &ResultTable) -> anyhow::Result<Vec<u8>> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record([
        "analysis", "class", "prior", "c", "a", "epsilon", "value", "std_error", "d0", "draws",
        "method", "flags", "error",
    ])?;
    for cell in &table.cells {
        let epsilon = cell.epsilon.map(|e| e.to_string()).unwrap_or_default();
        let record: [String; 13] = match &cell.outcome {
            CellOutcome::Estimate { value, std_error, draws, method, unreliable } => [
                cell.analysis.name().to_string(),
                cell.class.name().to_string(),
                cell.prior_label.clone(),
                cell.scale.to_string(),
                cell.order.to_string(),
                epsilon,
                fmt_sig6(*value),
                fmt_sig6(*std_error),
                String::new(),
                draws.to_string(),
                method_name(*method).to_string(),
                if *unreliable { "unreliable-variance".to_string() } else { String::new() },
                String::new(),
            ],
            CellOutcome::Calibration { p, d0, solver_iterations } => [
                cell.analysis.name().to_string(),
                cell.class.name().to_string(),
                cell.prior_label.clone(),
                cell.scale.to_string(),
                cell.order.to_string(),
                epsilon,
                fmt_sig6(*p),
                String::new(),
                fmt_sig6(*d0),
                String::new(),
                if *solver_iterations == 0 { "closed-form" } else { "bisection" }.to_string(),
                String::new(),
                String::new(),
            ],
            CellOutcome::Skipped { reason } => [
                cell.analysis.name().to_string(),
                cell.class.name().to_string(),
                cell.prior_label.clone(),
                cell.scale.to_string(),
                cell.order.to_string(),
                epsilon,
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                "skipped".to_string(),
                reason.clone(),
            ],
        };
        writer.write_record(&record)?;
    }
    Ok(writer.into_inner()?)
}

fn cell_display(outcome: &CellOutcome) -> String {
    match outcome {
        CellOutcome::Estimate { value, unreliable, .. } => {
            if *unreliable {
                format!("{} (unreliable)", fmt_sig6(*value))
            } else {
                fmt_sig6(*value)
            }
        }
        CellOutcome::Calibration { p, d0, .. } => {
            format!("{} ({})", fmt_sig6(*d0), fmt_sig6(*p))
        }
        CellOutcome::Skipped { reason } => format!("error: {reason}"),
    }
}

fn emit_markdown(table: &ResultTable) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# results (model {}, data {}, seed {}, draws {})",
        table.meta.model, table.meta.stats, table.meta.seed, table.meta.draws
    );
    for analysis in [Analysis::Curvature, Analysis::Divergence, Analysis::Calibration] {
        let cells: Vec<&Cell> = table.cells.iter().filter(|c| c.analysis == analysis).collect();
        if cells.is_empty() {
            continue;
        }
        let _ = writeln!(out);
        if analysis == Analysis::Calibration {
            let _ = writeln!(out, "## {} — d0 (p)", analysis.name());
        } else {
            let _ = writeln!(out, "## {}", analysis.name());
        }
        let _ = writeln!(out);

        // columns: (class, a) pairs in first-seen order; rows: (prior, c, eps)
        let mut columns: Vec<(String, f64)> = Vec::new();
        for cell in &cells {
            let key = (cell.class.name().to_string(), cell.order);
            if !columns.contains(&key) {
                columns.push(key);
            }
        }
        let has_epsilon = cells.iter().any(|c| c.epsilon.is_some());
        let mut header = String::from("| prior | c |");
        let mut rule = String::from("|---|---|");
        if has_epsilon {
            header.push_str(" epsilon |");
            rule.push_str("---|");
        }
        for (class, a) in &columns {
            let _ = write!(header, " {class} a={a} |");
            rule.push_str("---|");
        }
        let _ = writeln!(out, "{header}");
        let _ = writeln!(out, "{rule}");

        let mut rows: Vec<(usize, String, f64, Option<f64>)> = Vec::new();
        for cell in &cells {
            let key = (cell.prior_index, cell.prior_label.clone(), cell.scale, cell.epsilon);
            if !rows.iter().any(|r| r.0 == key.0 && r.2 == key.2 && r.3 == key.3) {
                rows.push(key);
            }
        }
        for (prior_index, prior_label, scale, epsilon) in rows {
            let mut line = format!("| {prior_label} | {scale} |");
            if has_epsilon {
                let _ = write!(line, " {} |", epsilon.map(|e| e.to_string()).unwrap_or_default());
            }
            for (class, a) in &columns {
                let found = cells.iter().find(|c| {
                    c.prior_index == prior_index
                        && c.scale == scale
                        && c.epsilon == epsilon
                        && c.class.name() == class
                        && c.order == *a
                });
                match found {
                    Some(cell) => {
                        let _ = write!(line, " {} |", cell_display(&cell.outcome));
                    }
                    None => line.push_str("  |"),
                }
            }
            let _ = writeln!(out, "{line}");
        }
    }
    out
}

#[derive(serde::Serialize)]
struct JsonCell<'a> {
    analysis: &'a str,
    class: &'a str,
    a: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    std_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solver_iterations: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    draws: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<&'a str>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    unreliable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

#[derive(serde::Serialize)]
struct JsonRow<'a> {
    prior: &'a str,
    c: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
    cells: Vec<JsonCell<'a>>,
}

#[derive(serde::Serialize)]
struct JsonTable<'a> {
    meta: &'a crate::grid::TableMeta,
    rows: Vec<JsonRow<'a>>,
}

fn emit_json(table: &ResultTable) -> anyhow::Result<Vec<u8>> {
    // rows keyed by (prior, c, epsilon) in cell order
    let mut keys: Vec<(usize, f64, Option<f64>)> = Vec::new();
    let mut seen = BTreeSet::new();
    for cell in &table.cells {
        let key = (cell.prior_index, cell.scale, cell.epsilon);
        let marker = format!("{}|{}|{:?}", key.0, key.1.to_bits(), key.2.map(f64::to_bits));
        if seen.insert(marker) {
            keys.push(key);
        }
    }
    let rows: Vec<JsonRow> = keys
        .iter()
        .map(|&(prior_index, scale, epsilon)| {
            let members: Vec<&Cell> = table
                .cells
                .iter()
                .filter(|c| c.prior_index == prior_index && c.scale == scale && c.epsilon == epsilon)
                .collect();
            let cells = members
                .iter()
                .map(|cell| {
                    let mut json = JsonCell {
                        analysis: cell.analysis.name(),
                        class: cell.class.name(),
                        a: cell.order,
                        value: None,
                        std_error: None,
                        d0: None,
                        p: None,
                        solver_iterations: None,
                        draws: None,
                        method: None,
                        unreliable: false,
                        error: None,
                    };
                    match &cell.outcome {
                        CellOutcome::Estimate { value, std_error, draws, method, unreliable } => {
                            json.value = Some(*value);
                            json.std_error = Some(*std_error);
                            json.draws = Some(*draws);
                            json.method = Some(method_name(*method));
                            json.unreliable = *unreliable;
                        }
                        CellOutcome::Calibration { p, d0, solver_iterations } => {
                            json.p = Some(*p);
                            json.d0 = Some(*d0);
                            json.solver_iterations = Some(*solver_iterations);
                        }
                        CellOutcome::Skipped { reason } => {
                            json.error = Some(reason);
                        }
                    }
                    json
                })
                .collect();
            JsonRow {
                prior: &members[0].prior_label,
                c: scale,
                epsilon,
                cells,
            }
        })
        .collect();
    let mut bytes = serde_json::to_vec_pretty(&JsonTable { meta: &table.meta, rows })?;
    bytes.push(b'\n');
    Ok(bytes)
}
