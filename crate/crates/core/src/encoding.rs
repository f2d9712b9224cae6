//! Closed-form resource estimates for the direct QUBO and the
//! space-efficient HOBO encodings of CVRP.
//!
//! Qubit counts:
//!
//! ```text
//! QUBO  Q_q = k * ((n + 1)^2 + C)
//! HOBO  Q_h = k * (n * log2(n) + log2(C + 1))
//! ```
//!
//! and the per-layer scaling rows for problem size `N`:
//!
//! | quantity      | QUBO          | HOBO              |
//! |---------------|---------------|-------------------|
//! | terms         | 2 N^3         | N^4 / 2           |
//! | circuit volume| 12 N^3        | 2 N^4 log2(N)     |
//! | measurements  | N^3 max(w)    | N^2 max(w)        |
//!
//! Integer quantities (qubits, depth, quantum volume) are computed exactly
//! in `u64` with overflow reported as an error.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::instance::CvrpInstance;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EncodingError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EncodingKind {
    Qubo,
    Hobo,
}

impl fmt::Display for EncodingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EncodingKind::Qubo => "QUBO",
            EncodingKind::Hobo => "HOBO",
        })
    }
}

impl FromStr for EncodingKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "qubo" => Ok(Self::Qubo),
            "hobo" => Ok(Self::Hobo),
            _ => Err(format!("unknown encoding `{s}` (expected qubo|hobo)")),
        }
    }
}

/// Which customer count enters the squared QUBO term.
///
/// `Strict` evaluates `k((n+1)^2 + C)` as written. `Table3Compat` squares
/// `n - 1` instead, which is what the published instance table uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum SizeConvention {
    #[default]
    Strict,
    Table3Compat,
}

impl fmt::Display for SizeConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SizeConvention::Strict => "strict",
            SizeConvention::Table3Compat => "table3",
        })
    }
}

impl FromStr for SizeConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "strict" => Ok(Self::Strict),
            "table3" | "table3-compat" | "table3_compat" => Ok(Self::Table3Compat),
            _ => Err(format!("unknown convention `{s}` (expected strict|table3)")),
        }
    }
}

/// Real-valued logarithms reproduce published tables; ceilinged ones give
/// physically realizable register sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum LogMode {
    Real,
    #[default]
    Ceil,
}

impl fmt::Display for LogMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogMode::Real => "real",
            LogMode::Ceil => "ceil",
        })
    }
}

impl FromStr for LogMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "real" => Ok(Self::Real),
            "ceil" => Ok(Self::Ceil),
            _ => Err(format!("unknown log mode `{s}` (expected real|ceil)")),
        }
    }
}

pub const DEFAULT_LAYERS: u64 = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResourceEstimate {
    pub encoding: EncodingKind,
    pub qubits: u64,
    pub terms: f64,
    pub depth: u64,
    pub circuit_volume: f64,
    pub measurements: f64,
    pub quantum_volume: u64,
    pub error_rate_threshold: f64,
}

fn check_positive(what: &str, v: u64) -> Result<(), EncodingError> {
    if v == 0 {
        Err(EncodingError::Domain(format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

fn check_args(n: u64, k: u64, c: u64) -> Result<(), EncodingError> {
    check_positive("customer count", n)?;
    check_positive("vehicle count", k)?;
    check_positive("capacity", c)
}

pub fn qubo_qubits(
    customers: u64,
    vehicles: u64,
    capacity: u64,
    convention: SizeConvention,
) -> Result<u64, EncodingError> {
    check_args(customers, vehicles, capacity)?;
    let side = match convention {
        SizeConvention::Strict => customers + 1,
        SizeConvention::Table3Compat => customers - 1,
    };
    side.checked_mul(side)
        .and_then(|sq| sq.checked_add(capacity))
        .and_then(|per_vehicle| per_vehicle.checked_mul(vehicles))
        .ok_or(EncodingError::Overflow("QUBO qubit count"))
}

fn ceil_log2(x: u64) -> u64 {
    // x >= 1
    (u64::BITS - (x - 1).leading_zeros()) as u64
}

/// HOBO register size. `Ceil` mode always returns an integral value.
pub fn hobo_qubits(
    customers: u64,
    vehicles: u64,
    capacity: u64,
    log_mode: LogMode,
) -> Result<f64, EncodingError> {
    check_args(customers, vehicles, capacity)?;
    let (n, k, c) = (customers as f64, vehicles as f64, capacity as f64);
    Ok(match log_mode {
        LogMode::Real => k * (n * n.log2() + (c + 1.0).log2()),
        LogMode::Ceil => {
            let per_vehicle = customers
                .checked_mul(ceil_log2(customers))
                .and_then(|p| p.checked_add(ceil_log2(capacity + 1)))
                .and_then(|p| p.checked_mul(vehicles))
                .ok_or(EncodingError::Overflow("HOBO qubit count"))?;
            per_vehicle as f64
        }
    })
}

pub fn hamiltonian_terms(encoding: EncodingKind, n: f64) -> f64 {
    match encoding {
        EncodingKind::Qubo => 2.0 * n.powi(3),
        EncodingKind::Hobo => 0.5 * n.powi(4),
    }
}

pub fn circuit_volume(encoding: EncodingKind, n: f64) -> f64 {
    match encoding {
        EncodingKind::Qubo => 12.0 * n.powi(3),
        EncodingKind::Hobo => 2.0 * n.powi(4) * n.log2(),
    }
}

/// Shot-count estimate with unit leading constant.
pub fn measurement_estimate(encoding: EncodingKind, n: f64, max_w: f64) -> f64 {
    measurement_estimate_scaled(encoding, n, max_w, 1.0)
}

pub fn measurement_estimate_scaled(
    encoding: EncodingKind,
    n: f64,
    max_w: f64,
    constant: f64,
) -> f64 {
    let order = match encoding {
        EncodingKind::Qubo => n.powi(3),
        EncodingKind::Hobo => n.powi(2),
    };
    constant * order * max_w
}

/// Two-qubit-gate depth: `layers` repetitions of a mixer layer whose cost is
/// linear in the register size.
pub fn depth_estimate(qubits: u64, layers: u64) -> Result<u64, EncodingError> {
    check_positive("qubit count", qubits)?;
    check_positive("layer count", layers)?;
    qubits
        .checked_mul(layers)
        .ok_or(EncodingError::Overflow("circuit depth"))
}

pub fn quantum_volume(qubits: u64, depth: u64) -> Result<u64, EncodingError> {
    check_positive("qubit count", qubits)?;
    check_positive("depth", depth)?;
    qubits
        .checked_mul(depth)
        .ok_or(EncodingError::Overflow("quantum volume"))
}

pub fn error_rate_threshold(qv: u64) -> f64 {
    1.0 / qv as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateOptions {
    pub encoding: EncodingKind,
    pub convention: SizeConvention,
    pub log_mode: LogMode,
    pub layers: u64,
    /// Leading constant of the measurement-count order.
    pub measurement_constant: f64,
}

impl EstimateOptions {
    pub fn new(encoding: EncodingKind) -> Self {
        Self {
            encoding,
            convention: SizeConvention::default(),
            log_mode: LogMode::default(),
            layers: DEFAULT_LAYERS,
            measurement_constant: 1.0,
        }
    }

    pub fn convention(mut self, convention: SizeConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn log_mode(mut self, log_mode: LogMode) -> Self {
        self.log_mode = log_mode;
        self
    }

    pub fn layers(mut self, layers: u64) -> Self {
        self.layers = layers;
        self
    }
}

/// Qubit count for the chosen encoding; HOBO real-mode values are rounded
/// to the nearest integer.
pub fn encoding_qubits(
    customers: u64,
    vehicles: u64,
    capacity: u64,
    opts: &EstimateOptions,
) -> Result<u64, EncodingError> {
    match opts.encoding {
        EncodingKind::Qubo => qubo_qubits(customers, vehicles, capacity, opts.convention),
        EncodingKind::Hobo => {
            let q = hobo_qubits(customers, vehicles, capacity, opts.log_mode)?.round() as u64;
            Ok(q.max(1))
        }
    }
}

/// Full estimate from instance parameters. `N` in the scaling rows is the
/// encoding's qubit count.
pub fn estimate_from_params(
    customers: u64,
    vehicles: u64,
    capacity: u64,
    max_w: u64,
    opts: &EstimateOptions,
) -> Result<ResourceEstimate, EncodingError> {
    let qubits = encoding_qubits(customers, vehicles, capacity, opts)?;
    let depth = depth_estimate(qubits, opts.layers)?;
    let qv = quantum_volume(qubits, depth)?;
    let n = qubits as f64;
    Ok(ResourceEstimate {
        encoding: opts.encoding,
        qubits,
        terms: hamiltonian_terms(opts.encoding, n),
        depth,
        circuit_volume: circuit_volume(opts.encoding, n),
        measurements: measurement_estimate_scaled(
            opts.encoding,
            n,
            max_w.max(1) as f64,
            opts.measurement_constant,
        ),
        quantum_volume: qv,
        error_rate_threshold: error_rate_threshold(qv),
    })
}

pub fn estimate_instance(
    inst: &CvrpInstance,
    opts: &EstimateOptions,
) -> Result<ResourceEstimate, EncodingError> {
    estimate_from_params(
        inst.customers as u64,
        inst.vehicles,
        inst.capacity,
        inst.max_edge_weight(),
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubo_qubits_examples() {
        use SizeConvention::*;
        assert_eq!(qubo_qubits(241, 12, 125, Table3Compat).unwrap(), 692_700);
        assert_eq!(qubo_qubits(200, 5, 900, Table3Compat).unwrap(), 202_505);
        assert_eq!(qubo_qubits(200, 5, 900, Strict).unwrap(), 206_505);
        assert_eq!(qubo_qubits(1, 1, 1, Strict).unwrap(), 5);
        assert!(matches!(
            qubo_qubits(0, 1, 1, Strict),
            Err(EncodingError::Domain(_))
        ));
        assert!(matches!(
            qubo_qubits(1, 1, 0, Strict),
            Err(EncodingError::Domain(_))
        ));
        assert_eq!(
            qubo_qubits(u64::MAX / 2, 1, 1, Strict),
            Err(EncodingError::Overflow("QUBO qubit count"))
        );
    }

    #[test]
    fn hobo_qubits_examples() {
        let golden5 = hobo_qubits(200, 5, 900, LogMode::Real).unwrap();
        assert!((golden5 - 7692.95).abs() < 0.05, "{golden5}");
        assert!((golden5 - 7685.0).abs() / 7685.0 < 0.002);
        assert_eq!(hobo_qubits(1, 3, 1, LogMode::Real).unwrap(), 3.0);
        assert_eq!(hobo_qubits(200, 5, 900, LogMode::Ceil).unwrap(), 8050.0);
        assert!(hobo_qubits(1, 0, 1, LogMode::Ceil).is_err());
    }

    #[test]
    fn ceil_log2_values() {
        let cases = [
            (1, 0),
            (2, 1),
            (3, 2),
            (4, 2),
            (5, 3),
            (200, 8),
            (256, 8),
            (901, 10),
        ];
        for (x, want) in cases {
            assert_eq!(ceil_log2(x), want, "ceil_log2({x})");
        }
    }

    #[test]
    fn table1_rows() {
        assert_eq!(hamiltonian_terms(EncodingKind::Qubo, 10.0), 2000.0);
        assert_eq!(hamiltonian_terms(EncodingKind::Hobo, 10.0), 5000.0);
        assert_eq!(hamiltonian_terms(EncodingKind::Qubo, 1.0), 2.0);
        assert_eq!(circuit_volume(EncodingKind::Qubo, 10.0), 12000.0);
        assert_eq!(circuit_volume(EncodingKind::Hobo, 2.0), 32.0);
        // 2 * 10^4 * log2(10) = 66438.5619...
        assert!((circuit_volume(EncodingKind::Hobo, 10.0) - 66438.56).abs() < 0.1);
        assert_eq!(measurement_estimate(EncodingKind::Qubo, 10.0, 5.0), 5000.0);
        assert_eq!(measurement_estimate(EncodingKind::Hobo, 10.0, 5.0), 500.0);
        assert_eq!(
            measurement_estimate_scaled(EncodingKind::Hobo, 10.0, 5.0, 3.0),
            1500.0
        );
    }

    #[test]
    fn depth_volume_rate() {
        assert_eq!(depth_estimate(7685, 5).unwrap(), 38_425);
        assert_eq!(depth_estimate(79_649, 5).unwrap(), 398_245);
        assert_eq!(depth_estimate(1, 1).unwrap(), 1);
        assert_eq!(quantum_volume(7685, 38_425).unwrap(), 295_296_125);
        assert_eq!(quantum_volume(38_641, 193_205).unwrap(), 7_465_634_405);
        assert_eq!(quantum_volume(1, 1).unwrap(), 1);
        assert_eq!(
            quantum_volume(u64::MAX, 2),
            Err(EncodingError::Overflow("quantum volume"))
        );
        assert_eq!(error_rate_threshold(1), 1.0);
        let r = error_rate_threshold(295_296_125);
        assert!((r - 3.386e-9).abs() < 1e-12);
    }

    #[test]
    fn estimate_composes_rows() {
        let opts = EstimateOptions::new(EncodingKind::Hobo)
            .convention(SizeConvention::Table3Compat)
            .log_mode(LogMode::Real);
        let e = estimate_from_params(200, 5, 900, 10, &opts).unwrap();
        assert!((e.qubits as f64 - 7685.0).abs() / 7685.0 < 0.01);
        assert_eq!(e.depth, 5 * e.qubits);
        assert_eq!(e.quantum_volume, e.qubits * e.depth);
        assert_eq!(e.error_rate_threshold, 1.0 / e.quantum_volume as f64);

        let opts =
            EstimateOptions::new(EncodingKind::Qubo).convention(SizeConvention::Table3Compat);
        let e = estimate_from_params(400, 23, 100, 10, &opts).unwrap();
        assert_eq!(e.qubits, 3_663_923);

        let opts = EstimateOptions::new(EncodingKind::Hobo).log_mode(LogMode::Real);
        let e = estimate_from_params(1, 1, 1, 5, &opts).unwrap();
        assert_eq!(e.qubits, 1);
        assert_eq!(e.measurements, 5.0);
    }

    #[test]
    fn parse_enum_names() {
        assert_eq!("HOBO".parse::<EncodingKind>().unwrap(), EncodingKind::Hobo);
        assert_eq!(
            "table3".parse::<SizeConvention>().unwrap(),
            SizeConvention::Table3Compat
        );
        assert!("foo".parse::<LogMode>().is_err());
    }
}
