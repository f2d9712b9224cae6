use std::str::FromStr;

use super::{QuboError, QuboModel, VarIndex, VarMap};
use crate::instance::CvrpInstance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Penalty {
    /// `A = 2 (n + 1) max(w)`, larger than the cost of any feasible tour set.
    Auto,
    Fixed(f64),
}

impl FromStr for Penalty {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Penalty::Auto);
        }
        s.parse::<f64>()
            .map(Penalty::Fixed)
            .map_err(|_| format!("penalty must be `auto` or a number, got `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuboOptions {
    pub penalty: Penalty,
    /// Penalize `x[i][j][v] * x[j][i][v]` for customer pairs. Degree
    /// constraints alone admit a customer 2-cycle next to a depot round trip.
    pub eliminate_two_cycles: bool,
    pub max_vars: usize,
}

impl Default for QuboOptions {
    fn default() -> Self {
        Self {
            penalty: Penalty::Auto,
            eliminate_two_cycles: true,
            max_vars: super::DEFAULT_MAX_VARS,
        }
    }
}

pub fn auto_penalty(inst: &CvrpInstance) -> f64 {
    2.0 * inst.dimension as f64 * inst.max_edge_weight().max(1) as f64
}

/// Adds `weight * (sum_i c_i x_i - target)^2`, expanded with `x^2 = x`.
/// Indices in `terms` must be distinct.
fn add_squared(model: &mut QuboModel, terms: &[(usize, f64)], target: f64, weight: f64) {
    for (pos, &(a, ca)) in terms.iter().enumerate() {
        *model.linear.entry(a).or_insert(0.0) += weight * (ca * ca - 2.0 * target * ca);
        for &(b, cb) in &terms[pos + 1..] {
            let key = (a.min(b), a.max(b));
            *model.quadratic.entry(key).or_insert(0.0) += weight * 2.0 * ca * cb;
        }
    }
    model.offset += weight * target * target;
}

/// Penalty QUBO: route cost plus `A` times the squared violations of
///
/// - each customer departs exactly once (over all vehicles),
/// - per vehicle and customer, arrivals equal departures,
/// - each vehicle leaves and re-enters the depot exactly once,
/// - per vehicle, served demand plus a unary slack count equals `C`,
/// - optionally, no vehicle runs a customer 2-cycle.
pub fn build_qubo(inst: &CvrpInstance, opts: &QuboOptions) -> Result<QuboModel, QuboError> {
    let penalty = match opts.penalty {
        Penalty::Auto => auto_penalty(inst),
        Penalty::Fixed(a) => a,
    };
    let nodes = inst.dimension;
    let vehicles = inst.vehicles as usize;
    let slack_bits = usize::try_from(inst.capacity).unwrap_or(usize::MAX);
    let map = VarMap {
        nodes,
        vehicles,
        slack_bits,
    };
    let num_vars = vehicles
        .checked_mul(nodes * (nodes - 1))
        .and_then(|r| {
            vehicles
                .checked_mul(slack_bits)
                .and_then(|s| r.checked_add(s))
        })
        .unwrap_or(usize::MAX);
    if num_vars > opts.max_vars {
        return Err(QuboError::TooLarge {
            num_vars,
            limit: opts.max_vars,
        });
    }

    let mut model = QuboModel::new(num_vars, penalty)?;
    model.var_map = Some(map);
    let x = |from, to, vehicle| map.route_index(VarIndex { from, to, vehicle });

    for v in 0..vehicles {
        for i in 0..nodes {
            for j in (0..nodes).filter(|&j| j != i) {
                let w = inst.weight_unchecked(i, j) as f64;
                *model.linear.entry(x(i, j, v)).or_insert(0.0) += w;
            }
        }
    }

    for i in 1..nodes {
        let departures: Vec<_> = (0..vehicles)
            .flat_map(|v| (0..nodes).filter(move |&j| j != i).map(move |j| (v, j)))
            .map(|(v, j)| (x(i, j, v), 1.0))
            .collect();
        add_squared(&mut model, &departures, 1.0, penalty);
    }

    for v in 0..vehicles {
        for i in 1..nodes {
            let balance: Vec<_> = (0..nodes)
                .filter(|&j| j != i)
                .flat_map(|j| [(x(i, j, v), 1.0), (x(j, i, v), -1.0)])
                .collect();
            add_squared(&mut model, &balance, 0.0, penalty);
        }

        let leave: Vec<_> = (1..nodes).map(|j| (x(0, j, v), 1.0)).collect();
        add_squared(&mut model, &leave, 1.0, penalty);
        let enter: Vec<_> = (1..nodes).map(|i| (x(i, 0, v), 1.0)).collect();
        add_squared(&mut model, &enter, 1.0, penalty);

        let mut load: Vec<_> = (1..nodes)
            .flat_map(|i| (0..nodes).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| (x(i, j, v), inst.demands[i] as f64))
            .filter(|&(_, q)| q != 0.0)
            .collect();
        load.extend((0..slack_bits).map(|s| (map.slack_index(v, s), 1.0)));
        add_squared(&mut model, &load, inst.capacity as f64, penalty);

        if opts.eliminate_two_cycles {
            for i in 1..nodes {
                for j in i + 1..nodes {
                    let key = (x(i, j, v), x(j, i, v));
                    *model
                        .quadratic
                        .entry((key.0.min(key.1), key.0.max(key.1)))
                        .or_insert(0.0) += penalty;
                }
            }
        }
    }

    model.prune_zeros();
    Ok(model)
}
