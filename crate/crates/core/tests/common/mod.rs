//! Test-only helpers: published table data, random desk-scale instances and
//! an exhaustive CVRP search that shares no code with the QUBO path.

#![allow(dead_code)]

use cvrp_feasibility::instance::CvrpInstance;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const TABLE3_PUBLISHED: &str = include_str!("../data/table3_published.csv");
pub const TABLE2_PUBLISHED: &str = include_str!("../data/table2_published.csv");

#[derive(Debug, Clone)]
pub struct Table3Row {
    pub name: String,
    pub n: u64,
    pub vehicles: u64,
    pub capacity: u64,
    pub qubo: u64,
    pub hobo: u64,
    pub depth: u64,
    pub quantum_volume: u64,
    /// As printed, e.g. "3.3e-09".
    pub error_rate: String,
}

pub fn table3() -> Vec<Table3Row> {
    TABLE3_PUBLISHED
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            let num = |i: usize| f[i].parse::<u64>().unwrap();
            Table3Row {
                name: f[0].to_string(),
                n: num(1),
                vehicles: num(2),
                capacity: num(3),
                qubo: num(4),
                hobo: num(5),
                depth: num(6),
                quantum_volume: num(7),
                error_rate: f[8].to_string(),
            }
        })
        .collect()
}

pub fn table2() -> Vec<(String, f64, f64, f64)> {
    TABLE2_PUBLISHED
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (
                f[0].to_string(),
                f[1].parse().unwrap(),
                f[2].parse().unwrap(),
                f[3].parse().unwrap(),
            )
        })
        .collect()
}

/// Euclidean instance with integer coordinates in `0..=10` and customer
/// demands in `1..=capacity`.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, k: u64, capacity: u64) -> CvrpInstance {
    let coords = (0..=n)
        .map(|_| (rng.gen_range(0..=10) as f64, rng.gen_range(0..=10) as f64))
        .collect();
    let mut demands = vec![0];
    demands.extend((0..n).map(|_| rng.gen_range(1..=capacity)));
    CvrpInstance::euclidean(
        format!("rand-n{n}-v{k}-c{capacity}"),
        capacity,
        k,
        coords,
        demands,
    )
    .unwrap()
}

/// TSPLIB `nint` Euclidean distance straight from the coordinates.
fn distance(coords: &[(f64, f64)], a: usize, b: usize) -> u64 {
    let (dx, dy) = (coords[a].0 - coords[b].0, coords[a].1 - coords[b].1);
    ((dx * dx + dy * dy).sqrt() + 0.5).floor() as u64
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Ways to cut `len` items into `parts` non-empty consecutive runs, as run lengths.
fn compositions(len: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if len == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=len.saturating_sub(parts - 1) {
        for mut rest in compositions(len - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Minimum total cost over every assignment of the customers to exactly
/// `k` non-empty, capacity-respecting depot round trips. `None` if no such
/// assignment exists.
pub fn exhaustive_cvrp_optimum(inst: &CvrpInstance) -> Option<u64> {
    let coords = inst.coords.as_ref().expect("euclidean instance");
    let customers: Vec<usize> = (1..inst.dimension).collect();
    let k = inst.vehicles as usize;
    let mut best: Option<u64> = None;
    for order in permutations(&customers) {
        for cuts in compositions(order.len(), k) {
            let mut start = 0;
            let mut cost = 0;
            let mut ok = true;
            for len in cuts {
                let route = &order[start..start + len];
                start += len;
                let load: u64 = route.iter().map(|&c| inst.demands[c]).sum();
                if load > inst.capacity {
                    ok = false;
                    break;
                }
                let mut prev = 0;
                for &c in route {
                    cost += distance(coords, prev, c);
                    prev = c;
                }
                cost += distance(coords, prev, 0);
            }
            if ok {
                best = Some(best.map_or(cost, |b| b.min(cost)));
            }
        }
    }
    best
}

#[test]
fn oracle_on_hand_examples() {
    let tri = CvrpInstance::euclidean(
        "tri",
        2,
        1,
        vec![(0.0, 0.0), (0.0, 3.0), (4.0, 0.0)],
        vec![0, 1, 1],
    )
    .unwrap();
    assert_eq!(exhaustive_cvrp_optimum(&tri), Some(12));
    let split = CvrpInstance::euclidean(
        "split",
        1,
        2,
        vec![(0.0, 0.0), (0.0, 3.0), (4.0, 0.0)],
        vec![0, 1, 1],
    )
    .unwrap();
    assert_eq!(exhaustive_cvrp_optimum(&split), Some(6 + 8));
    let over =
        CvrpInstance::euclidean("over", 1, 2, vec![(0.0, 0.0), (1.0, 0.0)], vec![0, 1]).unwrap();
    assert_eq!(exhaustive_cvrp_optimum(&over), None);
    assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
    assert_eq!(permutations(&[1, 2, 3]).len(), 6);
}
