//! Optimality gaps and fleet-level savings from small routing improvements.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ValueError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("gap records: {0}")]
    Csv(String),
}

/// Which value normalizes the gap.
///
/// `LowerBound` is the textbook `(solution - bound) / bound`. `Solution`
/// divides by the solution value instead and is what the published gap
/// table uses, so it is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GapDenominator {
    LowerBound,
    #[default]
    Solution,
}

impl fmt::Display for GapDenominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GapDenominator::LowerBound => "lower-bound",
            GapDenominator::Solution => "solution",
        })
    }
}

impl FromStr for GapDenominator {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "lower-bound" | "lb" => Ok(Self::LowerBound),
            "solution" | "bks" => Ok(Self::Solution),
            _ => Err(format!(
                "unknown denominator `{s}` (expected solution|lower-bound)"
            )),
        }
    }
}

pub fn optimality_gap(
    solution: f64,
    lower_bound: f64,
    denominator: GapDenominator,
) -> Result<f64, ValueError> {
    if !(solution > 0.0 && solution.is_finite()) || !(lower_bound > 0.0 && lower_bound.is_finite())
    {
        return Err(ValueError::Domain(format!(
            "solution ({solution}) and lower bound ({lower_bound}) must be positive"
        )));
    }
    let base = match denominator {
        GapDenominator::LowerBound => lower_bound,
        GapDenominator::Solution => solution,
    };
    Ok(100.0 * (solution - lower_bound) / base)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapRecord {
    pub instance_name: String,
    pub bks: f64,
    pub lower_bound: f64,
    pub gap_percent: f64,
}

impl GapRecord {
    pub fn new(
        instance_name: impl Into<String>,
        bks: f64,
        lower_bound: f64,
        denominator: GapDenominator,
    ) -> Result<Self, ValueError> {
        Ok(Self {
            instance_name: instance_name.into(),
            bks,
            lower_bound,
            gap_percent: optimality_gap(bks, lower_bound, denominator)?,
        })
    }
}

#[derive(Debug, Deserialize)]
struct GapRow {
    instance: String,
    bks: f64,
    lower_bound: f64,
}

/// Reads `instance,bks,lower_bound` rows and computes each gap.
pub fn read_gap_records(
    csv_text: &str,
    denominator: GapDenominator,
) -> Result<Vec<GapRecord>, ValueError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(csv_text.as_bytes());
    rdr.deserialize::<GapRow>()
        .map(|row| {
            let row = row.map_err(|e| ValueError::Csv(e.to_string()))?;
            GapRecord::new(row.instance, row.bks, row.lower_bound, denominator)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImpactEstimate {
    pub baseline_km: f64,
    pub improvement: f64,
    pub km_saved: f64,
    pub litres_saved: f64,
    pub fuel_cost_saved: f64,
    pub co2_saved_tonnes: f64,
}

/// Annual savings from cutting fleet mileage by the fraction `improvement`.
pub fn impact_estimate(
    baseline_km: f64,
    improvement: f64,
    fuel_l_per_100km: f64,
    fuel_price_per_l: f64,
    co2_kg_per_l: f64,
) -> Result<ImpactEstimate, ValueError> {
    let inputs = [
        ("baseline_km", baseline_km),
        ("improvement", improvement),
        ("fuel_l_per_100km", fuel_l_per_100km),
        ("fuel_price_per_l", fuel_price_per_l),
        ("co2_kg_per_l", co2_kg_per_l),
    ];
    for (name, v) in inputs {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(ValueError::Domain(format!(
                "{name} must be a nonnegative number, got {v}"
            )));
        }
    }
    if improvement > 1.0 {
        return Err(ValueError::Domain(format!(
            "improvement is a fraction in [0, 1], got {improvement}"
        )));
    }
    let km_saved = baseline_km * improvement;
    let litres_saved = km_saved * fuel_l_per_100km / 100.0;
    Ok(ImpactEstimate {
        baseline_km,
        improvement,
        km_saved,
        litres_saved,
        fuel_cost_saved: litres_saved * fuel_price_per_l,
        co2_saved_tonnes: litres_saved * co2_kg_per_l / 1000.0,
    })
}
