//! Table and diagram rendering.

mod diagram;

use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

pub use diagram::{feasibility_diagram, DiagramFormat, DiagramPoint};

use crate::encoding::{
    depth_estimate, error_rate_threshold, hobo_qubits, quantum_volume, qubo_qubits, EncodingError,
    LogMode, SizeConvention,
};
use crate::value::GapRecord;

/// The published instance parameters, `name,n,vehicles,capacity`.
pub const TABLE3_PARAMS_CSV: &str = include_str!("../../data/table3_params.csv");
/// The published gap inputs, `instance,bks,lower_bound`.
pub const TABLE2_GAPS_CSV: &str = include_str!("../../data/table2_gaps.csv");

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("diagram needs at least one point")]
    EmptyInput,
    #[error("params file: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Text,
    Csv,
}

impl std::str::FromStr for TableFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(Self::Text),
            "csv" => Ok(Self::Csv),
            _ => Err(format!("unknown table format `{s}` (expected text|csv)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct InstanceParams {
    pub name: String,
    /// Customer count as listed in the params file.
    pub n: u64,
    pub vehicles: u64,
    pub capacity: u64,
}

impl InstanceParams {
    pub fn new(name: impl Into<String>, n: u64, vehicles: u64, capacity: u64) -> Self {
        Self {
            name: name.into(),
            n,
            vehicles,
            capacity,
        }
    }
}

pub fn read_params(csv_text: &str) -> Result<Vec<InstanceParams>, ReportError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(csv_text.as_bytes());
    Ok(rdr.deserialize().collect::<Result<Vec<_>, _>>()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableOptions {
    pub convention: SizeConvention,
    pub log_mode: LogMode,
    pub layers: u64,
}

impl Default for TableOptions {
    fn default() -> Self {
        Self {
            convention: SizeConvention::Table3Compat,
            log_mode: LogMode::Real,
            layers: crate::encoding::DEFAULT_LAYERS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResourceRow {
    pub name: String,
    pub n: u64,
    pub vehicles: u64,
    pub capacity: u64,
    pub qubo: u64,
    pub hobo: u64,
    pub depth: u64,
    pub quantum_volume: u64,
    pub error_rate: f64,
}

/// QUBO and HOBO qubit counts with depth, volume and error budget derived
/// from the (rounded) HOBO register.
pub fn resource_rows(
    params: &[InstanceParams],
    opts: &TableOptions,
) -> Result<Vec<ResourceRow>, EncodingError> {
    params
        .iter()
        .map(|p| {
            let qubo = qubo_qubits(p.n, p.vehicles, p.capacity, opts.convention)?;
            let hobo = hobo_qubits(p.n, p.vehicles, p.capacity, opts.log_mode)?.round() as u64;
            let depth = depth_estimate(hobo, opts.layers)?;
            let qv = quantum_volume(hobo, depth)?;
            Ok(ResourceRow {
                name: p.name.clone(),
                n: p.n,
                vehicles: p.vehicles,
                capacity: p.capacity,
                qubo,
                hobo,
                depth,
                quantum_volume: qv,
                error_rate: error_rate_threshold(qv),
            })
        })
        .collect()
}

/// Two significant figures with a two-digit exponent, e.g. `3.4e-09`.
pub fn format_sci2(x: f64) -> String {
    let s = format!("{x:.1e}");
    match s.split_once('e') {
        Some((mantissa, exp)) => {
            let (sign, digits) = match exp.strip_prefix('-') {
                Some(d) => ('-', d),
                None => ('+', exp),
            };
            format!("{mantissa}e{sign}{digits:0>2}")
        }
        None => s,
    }
}

const RESOURCE_HEADER: [&str; 9] = [
    "Problem Instance",
    "n",
    "Vehicles",
    "Cap.",
    "QUBO",
    "HOBO",
    "Depth(N)",
    "Quantum Vol.",
    "Error Rate",
];

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let rendered: Vec<String> = cells
            .zip(&widths)
            .enumerate()
            .map(|(col, (cell, &w))| {
                if col == 0 {
                    format!("{cell:<w$}")
                } else {
                    format!("{cell:>w$}")
                }
            })
            .collect();
        let _ = writeln!(out, "{}", rendered.join("  ").trim_end());
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn render_resource_table(
    params: &[InstanceParams],
    opts: &TableOptions,
    format: TableFormat,
) -> Result<String, EncodingError> {
    let rows: Vec<Vec<String>> = resource_rows(params, opts)?
        .into_iter()
        .map(|r| {
            vec![
                r.name,
                r.n.to_string(),
                r.vehicles.to_string(),
                r.capacity.to_string(),
                r.qubo.to_string(),
                r.hobo.to_string(),
                r.depth.to_string(),
                r.quantum_volume.to_string(),
                format_sci2(r.error_rate),
            ]
        })
        .collect();
    let banner = format!(
        "# convention={} hobo-log={} layers={}\n",
        opts.convention, opts.log_mode, opts.layers
    );
    let body = match format {
        TableFormat::Text => aligned(&RESOURCE_HEADER, &rows),
        TableFormat::Csv => csv_text(&RESOURCE_HEADER, &rows),
    };
    Ok(banner + &body)
}

const GAP_HEADER: [&str; 4] = ["Instance", "BKS", "Lower Bound", "Gap (%)"];

pub fn render_gap_table(records: &[GapRecord], format: TableFormat) -> String {
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            vec![
                r.instance_name.clone(),
                r.bks.to_string(),
                r.lower_bound.to_string(),
                format!("{:.2}", r.gap_percent),
            ]
        })
        .collect();
    match format {
        TableFormat::Text => aligned(&GAP_HEADER, &rows),
        TableFormat::Csv => csv_text(&GAP_HEADER, &rows),
    }
}
