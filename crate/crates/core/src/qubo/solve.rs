use rayon::prelude::*;

use super::{Bitstring, QuboError, QuboModel};

pub const DEFAULT_MAX_VARS: usize = 30;

/// Exhaustive minimizer.
///
/// The leading `prefix_bits` variables are fixed per chunk and the rest are
/// walked in Gray-code order with incrementally maintained local fields.
/// Candidates within a small tolerance of the incumbent are re-evaluated with
/// [`QuboModel::energy`]'s fixed summation order and ranked by
/// `(energy, bitstring)`, so the answer does not depend on chunking or
/// thread scheduling.
#[derive(Debug, Clone, Copy)]
pub struct BruteForce {
    pub max_vars: usize,
    pub prefix_bits: usize,
}

impl Default for BruteForce {
    fn default() -> Self {
        Self {
            max_vars: DEFAULT_MAX_VARS,
            prefix_bits: 8,
        }
    }
}

pub fn brute_force_solve(model: &QuboModel) -> Result<(Bitstring, f64), QuboError> {
    BruteForce::default().solve(model)
}

struct Compiled<'a> {
    model: &'a QuboModel,
    n: usize,
    linear: Vec<f64>,
    /// Neighbours restricted to the Gray-walked suffix.
    suffix_adj: Vec<Vec<(usize, f64)>>,
    tol: f64,
}

#[derive(Clone, Copy)]
struct Best {
    energy: f64,
    code: u64,
}

impl Best {
    fn beats(&self, other: &Best) -> bool {
        self.energy < other.energy || (self.energy == other.energy && self.code < other.code)
    }
}

impl BruteForce {
    pub fn solve(&self, model: &QuboModel) -> Result<(Bitstring, f64), QuboError> {
        let n = model.num_vars;
        let limit = self.max_vars.min(63);
        if n > limit {
            return Err(QuboError::TooLarge { num_vars: n, limit });
        }
        if n == 0 {
            return Ok((Bitstring::default(), model.offset));
        }
        let prefix = self.prefix_bits.min(n);

        let mut linear = vec![0.0; n];
        for (&a, &c) in &model.linear {
            linear[a] = c;
        }
        let mut suffix_adj = vec![Vec::new(); n];
        for (&(a, b), &c) in &model.quadratic {
            if c == 0.0 {
                continue;
            }
            if b >= prefix {
                suffix_adj[a].push((b, c));
            }
            if a >= prefix {
                suffix_adj[b].push((a, c));
            }
        }
        let scale = model.offset.abs()
            + model.linear.values().map(|c| c.abs()).sum::<f64>()
            + model.quadratic.values().map(|c| c.abs()).sum::<f64>();
        let compiled = Compiled {
            model,
            n,
            linear,
            suffix_adj,
            tol: 1e-9 * (1.0 + scale),
        };

        let chunks: Vec<Best> = (0..1u64 << prefix)
            .into_par_iter()
            .map(|p| compiled.search_chunk(p, prefix))
            .collect();
        let best = chunks
            .into_iter()
            .reduce(|a, b| if b.beats(&a) { b } else { a })
            .expect("at least one chunk");
        Ok((Bitstring::from_code(best.code, n), best.energy))
    }
}

impl Compiled<'_> {
    fn exact(&self, code: u64) -> f64 {
        let n = self.n;
        self.model.energy_of(|i| code >> (n - 1 - i) & 1 == 1)
    }

    fn search_chunk(&self, prefix_value: u64, prefix: usize) -> Best {
        let n = self.n;
        let m = n - prefix;
        let base_code = prefix_value << m;
        let mut x = vec![false; n];
        for (i, xi) in x.iter_mut().enumerate().take(prefix) {
            *xi = prefix_value >> (prefix - 1 - i) & 1 == 1;
        }

        let mut field = self.linear.clone();
        for (a, _) in x[..prefix].iter().enumerate().filter(|(_, &on)| on) {
            for &(b, c) in &self.suffix_adj[a] {
                field[b] += c;
            }
        }

        let mut energy = self.exact(base_code);
        let mut best = Best {
            energy,
            code: base_code,
        };
        let mut running_best = energy;
        let mut gray: u64 = 0;

        for step in 1..1u64 << m {
            let bit = step.trailing_zeros() as usize;
            let var = n - 1 - bit;
            gray ^= 1 << bit;
            let delta = if x[var] {
                energy -= field[var];
                -1.0
            } else {
                energy += field[var];
                1.0
            };
            x[var] = !x[var];
            for &(b, c) in &self.suffix_adj[var] {
                field[b] += delta * c;
            }

            if energy <= running_best + self.tol {
                let cand = Best {
                    energy: self.exact(base_code | gray),
                    code: base_code | gray,
                };
                if cand.beats(&best) {
                    best = cand;
                    running_best = cand.energy;
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(n: usize) -> QuboModel {
        QuboModel::new(n, 1.0).unwrap()
    }

    #[test]
    fn one_variable() {
        let mut m = model(1);
        m.offset = 2.0;
        m.add_linear(0, -1.0).unwrap();
        assert_eq!(brute_force_solve(&m).unwrap(), ("1".parse().unwrap(), 1.0));
        let mut m = model(1);
        m.offset = 2.0;
        m.add_linear(0, 1.0).unwrap();
        assert_eq!(brute_force_solve(&m).unwrap(), ("0".parse().unwrap(), 2.0));
    }

    #[test]
    fn ties_pick_lexicographically_smallest() {
        // Exactly one of three bits set is optimal; "001" is smallest.
        let mut m = model(3);
        for a in 0..3 {
            m.add_linear(a, -1.0).unwrap();
            for b in a + 1..3 {
                m.add_quadratic(a, b, 2.0).unwrap();
            }
        }
        let (x, e) = brute_force_solve(&m).unwrap();
        assert_eq!((x.to_string(), e), ("001".to_string(), -1.0));
    }

    #[test]
    fn too_large() {
        assert_eq!(
            brute_force_solve(&model(31)),
            Err(QuboError::TooLarge {
                num_vars: 31,
                limit: 30
            })
        );
        let solver = BruteForce {
            max_vars: 40,
            ..Default::default()
        };
        assert_eq!(
            solver.solve(&model(64)),
            Err(QuboError::TooLarge {
                num_vars: 64,
                limit: 40
            })
        );
    }

    #[test]
    fn empty_model() {
        let mut m = model(0);
        m.offset = 4.0;
        assert_eq!(brute_force_solve(&m).unwrap(), (Bitstring::default(), 4.0));
    }

    #[test]
    fn matches_naive_enumeration_for_every_chunking() {
        // Pseudo-random dense model with small integer coefficients.
        let n = 12;
        let mut m = model(n);
        let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
        let mut next = || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s % 7) as f64 - 3.0
        };
        for a in 0..n {
            m.add_linear(a, next()).unwrap();
            for b in a + 1..n {
                m.add_quadratic(a, b, next()).unwrap();
            }
        }
        let naive = (0..1u64 << n)
            .map(|c| (m.energy(&Bitstring::from_code(c, n)).unwrap(), c))
            .reduce(|a, b| {
                if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            })
            .unwrap();
        for prefix_bits in [0, 1, 3, 8, 12, 20] {
            let solver = BruteForce {
                prefix_bits,
                ..Default::default()
            };
            let (x, e) = solver.solve(&m).unwrap();
            assert_eq!(
                (e, x),
                (naive.0, Bitstring::from_code(naive.1, n)),
                "prefix {prefix_bits}"
            );
        }
    }
}
