//! Explicit penalty QUBOs for desk-scale CVRP instances.
//!
//! The model is built over edge variables `x[i][j][v]` ("vehicle `v` drives
//! from `i` to `j`") plus a unary slack register of `C` bits per vehicle for
//! the capacity inequality. It is small enough to brute-force for a handful
//! of customers, which makes it a ground-truth check on the closed-form
//! resource counts.

mod builder;
mod decode;
mod export;
mod solve;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use builder::{auto_penalty, build_qubo, Penalty, QuboOptions};
pub use decode::{decode_routes, route_cost, RouteDecoding, Violation};
pub use export::{read_model, write_model};
pub use solve::{brute_force_solve, BruteForce, DEFAULT_MAX_VARS};

#[derive(Debug, Error, PartialEq)]
pub enum QuboError {
    #[error("model has {num_vars} variables, more than the limit of {limit}")]
    TooLarge { num_vars: usize, limit: usize },
    #[error("assignment has {got} bits but the model has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("penalty weight must be positive and finite, got {0}")]
    InvalidPenalty(f64),
    #[error("variable index {index} out of range for {num_vars} variables")]
    IndexOutOfRange { index: usize, num_vars: usize },
    #[error("model file line {line}: {reason}")]
    Format { line: usize, reason: String },
}

/// Edge variable: vehicle `vehicle` travels from node `from` to node `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarIndex {
    pub from: usize,
    pub to: usize,
    pub vehicle: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    Route(VarIndex),
    Slack { vehicle: usize, bit: usize },
}

/// Layout of the flat variable vector: all edge variables vehicle-major,
/// then one slack register per vehicle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarMap {
    pub nodes: usize,
    pub vehicles: usize,
    pub slack_bits: usize,
}

impl VarMap {
    pub fn route_vars(&self) -> usize {
        self.vehicles * self.nodes * (self.nodes - 1)
    }

    pub fn num_vars(&self) -> usize {
        self.route_vars() + self.vehicles * self.slack_bits
    }

    pub fn route_index(&self, var: VarIndex) -> usize {
        debug_assert!(var.from != var.to && var.from < self.nodes && var.to < self.nodes);
        let col = if var.to > var.from {
            var.to - 1
        } else {
            var.to
        };
        (var.vehicle * self.nodes + var.from) * (self.nodes - 1) + col
    }

    pub fn slack_index(&self, vehicle: usize, bit: usize) -> usize {
        self.route_vars() + vehicle * self.slack_bits + bit
    }

    pub fn variable(&self, index: usize) -> Option<Variable> {
        let per_vehicle = self.nodes * (self.nodes - 1);
        if index < self.route_vars() {
            let vehicle = index / per_vehicle;
            let rem = index % per_vehicle;
            let from = rem / (self.nodes - 1);
            let col = rem % (self.nodes - 1);
            let to = if col >= from { col + 1 } else { col };
            Some(Variable::Route(VarIndex { from, to, vehicle }))
        } else if index < self.num_vars() {
            let rem = index - self.route_vars();
            Some(Variable::Slack {
                vehicle: rem / self.slack_bits,
                bit: rem % self.slack_bits,
            })
        } else {
            None
        }
    }
}

/// A 0/1 assignment. Displays and parses as a string of `0`/`1`, first
/// variable first, so lexicographic order on the text is the tie-break order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bitstring(pub Vec<bool>);

impl Bitstring {
    pub fn zeros(len: usize) -> Self {
        Self(vec![false; len])
    }

    /// Bit `len - 1 - i` of `code` becomes variable `i`.
    pub fn from_code(code: u64, len: usize) -> Self {
        Self((0..len).map(|i| code >> (len - 1 - i) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.0[i] = value;
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bitstring {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("invalid bit `{other}`")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Bitstring)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuboModel {
    pub num_vars: usize,
    pub linear: BTreeMap<usize, f64>,
    /// Keys are `(a, b)` with `a < b`.
    pub quadratic: BTreeMap<(usize, usize), f64>,
    pub offset: f64,
    pub penalty: f64,
    /// Present for models built from an instance.
    pub var_map: Option<VarMap>,
}

impl QuboModel {
    pub fn new(num_vars: usize, penalty: f64) -> Result<Self, QuboError> {
        if !(penalty > 0.0 && penalty.is_finite()) {
            return Err(QuboError::InvalidPenalty(penalty));
        }
        Ok(Self {
            num_vars,
            linear: BTreeMap::new(),
            quadratic: BTreeMap::new(),
            offset: 0.0,
            penalty,
            var_map: None,
        })
    }

    fn check_index(&self, index: usize) -> Result<(), QuboError> {
        if index >= self.num_vars {
            Err(QuboError::IndexOutOfRange {
                index,
                num_vars: self.num_vars,
            })
        } else {
            Ok(())
        }
    }

    pub fn add_linear(&mut self, a: usize, coeff: f64) -> Result<(), QuboError> {
        self.check_index(a)?;
        *self.linear.entry(a).or_insert(0.0) += coeff;
        Ok(())
    }

    /// Adds `coeff * x_a * x_b`; a diagonal term folds into the linear part.
    pub fn add_quadratic(&mut self, a: usize, b: usize, coeff: f64) -> Result<(), QuboError> {
        self.check_index(a)?;
        self.check_index(b)?;
        if a == b {
            return self.add_linear(a, coeff);
        }
        *self.quadratic.entry((a.min(b), a.max(b))).or_insert(0.0) += coeff;
        Ok(())
    }

    /// Drops coefficients that cancelled to exactly zero.
    pub fn prune_zeros(&mut self) {
        self.linear.retain(|_, c| *c != 0.0);
        self.quadratic.retain(|_, c| *c != 0.0);
    }

    pub fn energy(&self, assignment: &Bitstring) -> Result<f64, QuboError> {
        if assignment.len() != self.num_vars {
            return Err(QuboError::LengthMismatch {
                expected: self.num_vars,
                got: assignment.len(),
            });
        }
        Ok(self.energy_of(|i| assignment.get(i)))
    }

    /// Fixed summation order: offset, linear terms, then quadratic terms,
    /// each by ascending index.
    pub(crate) fn energy_of(&self, bit: impl Fn(usize) -> bool) -> f64 {
        let mut e = self.offset;
        for (&a, &c) in &self.linear {
            if bit(a) {
                e += c;
            }
        }
        for (&(a, b), &c) in &self.quadratic {
            if bit(a) && bit(b) {
                e += c;
            }
        }
        e
    }

    /// `(nonzero linear coefficients, nonzero quadratic coefficients)`.
    pub fn count_terms(&self) -> (usize, usize) {
        (
            self.linear.values().filter(|c| **c != 0.0).count(),
            self.quadratic.values().filter(|c| **c != 0.0).count(),
        )
    }
}
