use std::fmt;

use super::{Bitstring, QuboError, QuboModel, VarIndex, VarMap, Variable};
use crate::instance::CvrpInstance;

/// A failed routing condition, identified by the constraint it breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Customer not left and entered exactly once over the whole fleet.
    VisitCount {
        customer: usize,
        departures: usize,
        arrivals: usize,
    },
    DepotDepartures {
        vehicle: usize,
        count: usize,
    },
    DepotReturns {
        vehicle: usize,
        count: usize,
    },
    /// A vehicle enters a node a different number of times than it leaves.
    FlowImbalance {
        vehicle: usize,
        node: usize,
        arrivals: usize,
        departures: usize,
    },
    CapacityExceeded {
        vehicle: usize,
        load: u64,
        capacity: u64,
    },
    /// Edges of a vehicle that are not reachable from its depot departure.
    Subtour {
        vehicle: usize,
        nodes: Vec<usize>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VisitCount {
                customer,
                departures,
                arrivals,
            } => write!(
                f,
                "customer {customer} departed {departures}x, entered {arrivals}x (visit once)"
            ),
            Violation::DepotDepartures { vehicle, count } => {
                write!(
                    f,
                    "vehicle {vehicle} leaves the depot {count}x (depart once)"
                )
            }
            Violation::DepotReturns { vehicle, count } => {
                write!(
                    f,
                    "vehicle {vehicle} returns to the depot {count}x (return once)"
                )
            }
            Violation::FlowImbalance {
                vehicle,
                node,
                arrivals,
                departures,
            } => write!(
                f,
                "vehicle {vehicle} enters node {node} {arrivals}x but leaves {departures}x (flow)"
            ),
            Violation::CapacityExceeded {
                vehicle,
                load,
                capacity,
            } => write!(f, "vehicle {vehicle} carries {load} > capacity {capacity}"),
            Violation::Subtour { vehicle, nodes } => {
                write!(f, "vehicle {vehicle} runs a subtour through {nodes:?}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteDecoding {
    /// One node sequence per vehicle, starting at the depot; closed routes
    /// end with the depot again.
    pub routes: Vec<Vec<usize>>,
    pub violations: Vec<Violation>,
    /// Sum of edge weights over every selected edge variable.
    pub cost: u64,
}

impl RouteDecoding {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Total weight of a set of depot-to-depot routes.
pub fn route_cost(inst: &CvrpInstance, routes: &[Vec<usize>]) -> u64 {
    routes
        .iter()
        .flat_map(|r| r.windows(2))
        .map(|w| inst.weight_unchecked(w[0], w[1]))
        .sum()
}

pub fn decode_routes(
    model: &QuboModel,
    assignment: &Bitstring,
    inst: &CvrpInstance,
) -> Result<RouteDecoding, QuboError> {
    if assignment.len() != model.num_vars {
        return Err(QuboError::LengthMismatch {
            expected: model.num_vars,
            got: assignment.len(),
        });
    }
    let map = model.var_map.unwrap_or(VarMap {
        nodes: inst.dimension,
        vehicles: inst.vehicles as usize,
        slack_bits: inst.capacity as usize,
    });
    let nodes = map.nodes;

    // successors[v][i] = nodes j with x[i][j][v] = 1
    let mut successors = vec![vec![Vec::new(); nodes]; map.vehicles];
    let mut cost = 0;
    for idx in 0..map.route_vars().min(assignment.len()) {
        if !assignment.get(idx) {
            continue;
        }
        if let Some(Variable::Route(VarIndex { from, to, vehicle })) = map.variable(idx) {
            successors[vehicle][from].push(to);
            cost += inst.weight_unchecked(from, to);
        }
    }

    let mut violations = Vec::new();
    let mut out_deg = vec![vec![0usize; nodes]; map.vehicles];
    let mut in_deg = vec![vec![0usize; nodes]; map.vehicles];
    for (v, succ) in successors.iter().enumerate() {
        for (i, targets) in succ.iter().enumerate() {
            out_deg[v][i] += targets.len();
            for &j in targets {
                in_deg[v][j] += 1;
            }
        }
    }

    for c in 1..nodes {
        let departures: usize = out_deg.iter().map(|d| d[c]).sum();
        let arrivals: usize = in_deg.iter().map(|d| d[c]).sum();
        if departures != 1 || arrivals != 1 {
            violations.push(Violation::VisitCount {
                customer: c,
                departures,
                arrivals,
            });
        }
    }

    let mut routes = Vec::with_capacity(map.vehicles);
    for v in 0..map.vehicles {
        if out_deg[v][0] != 1 {
            violations.push(Violation::DepotDepartures {
                vehicle: v,
                count: out_deg[v][0],
            });
        }
        if in_deg[v][0] != 1 {
            violations.push(Violation::DepotReturns {
                vehicle: v,
                count: in_deg[v][0],
            });
        }
        for node in 1..nodes {
            if in_deg[v][node] != out_deg[v][node] {
                violations.push(Violation::FlowImbalance {
                    vehicle: v,
                    node,
                    arrivals: in_deg[v][node],
                    departures: out_deg[v][node],
                });
            }
        }

        let load: u64 = (1..nodes)
            .map(|i| inst.demands[i] * out_deg[v][i] as u64)
            .sum();
        if load > inst.capacity {
            violations.push(Violation::CapacityExceeded {
                vehicle: v,
                load,
                capacity: inst.capacity,
            });
        }

        let mut route = vec![0];
        let mut seen = vec![false; nodes];
        seen[0] = true;
        let mut at = 0;
        while let Some(&next) = successors[v][at].iter().min() {
            route.push(next);
            if seen[next] {
                break;
            }
            seen[next] = true;
            at = next;
        }
        let stray: Vec<usize> = (1..nodes)
            .filter(|&i| !seen[i] && (out_deg[v][i] > 0 || in_deg[v][i] > 0))
            .collect();
        if !stray.is_empty() {
            violations.push(Violation::Subtour {
                vehicle: v,
                nodes: stray,
            });
        }
        routes.push(route);
    }

    Ok(RouteDecoding {
        routes,
        violations,
        cost,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubo::{brute_force_solve, build_qubo, QuboOptions};

    fn triangle(vehicles: u64) -> CvrpInstance {
        CvrpInstance::euclidean(
            "tri",
            2,
            vehicles,
            vec![(0.0, 0.0), (0.0, 3.0), (4.0, 0.0)],
            vec![0, 1, 1],
        )
        .unwrap()
    }

    fn assignment(model: &QuboModel, edges: &[(usize, usize, usize)]) -> Bitstring {
        let map = model.var_map.unwrap();
        let mut x = Bitstring::zeros(model.num_vars);
        for &(from, to, vehicle) in edges {
            x.set(map.route_index(VarIndex { from, to, vehicle }), true);
        }
        x
    }

    #[test]
    fn optimum_decodes_to_a_tour() {
        let inst = triangle(1);
        let m = build_qubo(&inst, &QuboOptions::default()).unwrap();
        let (x, e) = brute_force_solve(&m).unwrap();
        let d = decode_routes(&m, &x, &inst).unwrap();
        assert!(d.is_valid(), "{:?}", d.violations);
        assert!(d.routes == vec![vec![0, 1, 2, 0]] || d.routes == vec![vec![0, 2, 1, 0]]);
        assert_eq!(d.cost, 12);
        assert_eq!(route_cost(&inst, &d.routes), 12);
        assert_eq!(e, d.cost as f64);
    }

    #[test]
    fn all_zero_assignment() {
        let inst = triangle(1);
        let m = build_qubo(&inst, &QuboOptions::default()).unwrap();
        let d = decode_routes(&m, &Bitstring::zeros(m.num_vars), &inst).unwrap();
        for c in [1, 2] {
            assert!(d.violations.contains(&Violation::VisitCount {
                customer: c,
                departures: 0,
                arrivals: 0
            }));
        }
        assert!(d.violations.contains(&Violation::DepotDepartures {
            vehicle: 0,
            count: 0
        }));
        assert_eq!(d.routes, vec![vec![0]]);
    }

    #[test]
    fn customer_visited_by_two_vehicles() {
        let inst = triangle(2);
        let m = build_qubo(&inst, &QuboOptions::default()).unwrap();
        let x = assignment(&m, &[(0, 1, 0), (0, 1, 1)]);
        let d = decode_routes(&m, &x, &inst).unwrap();
        assert!(d.violations.iter().any(|v| matches!(
            v,
            Violation::VisitCount {
                customer: 1,
                arrivals: 2,
                ..
            }
        )));
    }

    #[test]
    fn detects_capacity_and_subtour() {
        let inst = CvrpInstance::euclidean(
            "sq",
            2,
            1,
            vec![(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)],
            vec![0, 1, 1, 1],
        )
        .unwrap();
        let m = build_qubo(&inst, &QuboOptions::default()).unwrap();
        let x = assignment(&m, &[(0, 1, 0), (1, 0, 0), (2, 3, 0), (3, 2, 0)]);
        let d = decode_routes(&m, &x, &inst).unwrap();
        assert_eq!(d.routes, vec![vec![0, 1, 0]]);
        assert!(d.violations.contains(&Violation::Subtour {
            vehicle: 0,
            nodes: vec![2, 3]
        }));
        assert!(d.violations.contains(&Violation::CapacityExceeded {
            vehicle: 0,
            load: 3,
            capacity: 2
        }));
        // Degree conditions all hold for this assignment.
        assert_eq!(d.violations.len(), 2);
    }

    #[test]
    fn length_mismatch() {
        let inst = triangle(1);
        let m = build_qubo(&inst, &QuboOptions::default()).unwrap();
        assert!(matches!(
            decode_routes(&m, &Bitstring::zeros(3), &inst),
            Err(QuboError::LengthMismatch { .. })
        ));
    }
}
