//! Second-moment verification machinery on alternating groups: exact
//! disjoint-support probabilities, the representation-count moments, the
//! Paley–Zygmund bound, the conditional-order probe, and the
//! small-support growth search.
//!
//! Everything here works on raw permutations with the ambient degree n
//! given explicitly, so sampled experiments run at degrees far beyond
//! what a materialized element universe allows.

mod moments;
mod orderprobe;

pub use moments::{
    disjoint_support_prob, disjoint_support_prob_mc, paley_zygmund, small_support_growth,
    xcount_moments, DisjointProb, MomentReport, SellDiagnostic, SmallSupportReport,
};
pub use orderprobe::{order_probe, OrderProbeReport};

use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{k_subsets, Perm};

/// Monte Carlo configuration. Identical (seed, samples) reproduce
/// identical estimates bit-exactly; workers draw from numbered ChaCha
/// streams and merge in stream order.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MCConfig {
    pub seed: u64,
    pub samples: usize,
    /// Group-order bound below which enumeration replaces sampling.
    #[serde(default = "default_exact_threshold")]
    pub exact_threshold: usize,
}

fn default_exact_threshold() -> usize {
    20_160
}

impl MCConfig {
    pub fn new(seed: u64, samples: usize) -> MCConfig {
        MCConfig {
            seed,
            samples,
            exact_threshold: default_exact_threshold(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::EmptySubset);
        }
        Ok(())
    }

    /// Numbered substream for one worker.
    pub fn stream(&self, stream: u64) -> ChaCha12Rng {
        use rand::SeedableRng;
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// The partial order of sub-permutations: u <= x iff the support of u is
/// contained in the support of x and they agree there.
pub fn sub_permutation_leq(u: &Perm, x: &Perm) -> bool {
    debug_assert_eq!(u.degree(), x.degree());
    (0..u.degree() as u8).all(|i| u.apply(i) == i || u.apply(i) == x.apply(i))
}

/// All elements of A_n whose nontrivial cycle lengths are exactly
/// `support_type` (each part >= 2, descending). Errors when the type is
/// odd, or when it is ambiguous in A_n (the S_n class splits).
pub fn enumerate_support_class(n: usize, support_type: &[usize]) -> Result<Vec<Perm>> {
    let full = full_cycle_type(n, support_type)?;
    let m: usize = support_type.iter().sum();
    let parity_even = support_type.iter().map(|k| k - 1).sum::<usize>() % 2 == 0;
    if !parity_even {
        return Err(Error::InvalidCayleyTable(format!(
            "cycle type {support_type:?} is odd, not in A_{n}"
        )));
    }
    if crate::perm::sn_class_splits(&full) {
        return Err(Error::DifferentClasses);
    }
    let mut out = Vec::new();
    for support in k_subsets(n, m) {
        arrangements(n, &support, support_type, &mut out);
    }
    Ok(out)
}

/// Nontrivial parts padded with fixed points to a partition of n.
pub fn full_cycle_type(n: usize, support_type: &[usize]) -> Result<Vec<usize>> {
    let m: usize = support_type.iter().sum();
    if m > n || support_type.iter().any(|&k| k < 2) {
        return Err(Error::SupportSumTooLarge { m, r: 0, limit: n });
    }
    let mut full = support_type.to_vec();
    full.sort_unstable_by(|a, b| b.cmp(a));
    full.extend(std::iter::repeat(1).take(n - m));
    Ok(full)
}

/// Cycle type of the disjoint product of two small-support types.
/// Requires support sizes summing to at most n-2 so the A_n class is the
/// full cycle-type set.
pub fn direct_sum_type(n: usize, t1: &[usize], t2: &[usize]) -> Result<Vec<usize>> {
    let m: usize = t1.iter().sum();
    let r: usize = t2.iter().sum();
    if m + r + 2 > n {
        return Err(Error::SupportSumTooLarge {
            m,
            r,
            limit: n.saturating_sub(2),
        });
    }
    let mut merged: Vec<usize> = t1.iter().chain(t2.iter()).copied().collect();
    merged.sort_unstable_by(|a, b| b.cmp(a));
    Ok(merged)
}

/// Fixed-point-free arrangements of `support_type` on the given points,
/// appended to `out` as permutations of {0..n-1}.
fn arrangements(n: usize, points: &[u8], support_type: &[usize], out: &mut Vec<Perm>) {
    let mut remaining: Vec<u8> = points.to_vec();
    let mut parts: Vec<usize> = support_type.to_vec();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    let mut img: Vec<u8> = (0..n as u8).collect();
    rec(&mut remaining, &mut parts, &mut img, out);

    fn rec(
        remaining: &mut Vec<u8>,
        parts: &mut Vec<usize>,
        img: &mut Vec<u8>,
        out: &mut Vec<Perm>,
    ) {
        if remaining.is_empty() {
            out.push(Perm(img.clone()));
            return;
        }
        let leader = remaining[0];
        let mut tried: Vec<usize> = Vec::new();
        for pi in 0..parts.len() {
            let len = parts[pi];
            if tried.contains(&len) {
                continue; // same-length parts are interchangeable
            }
            tried.push(len);
            let part = parts.remove(pi);
            let pool: Vec<u8> = remaining[1..].to_vec();
            // ordered choices of len-1 points from pool
            let mut cycle = vec![leader];
            choose_rest(&pool, part - 1, &mut cycle, remaining, parts, img, out);
            parts.insert(pi, part);

            fn choose_rest(
                pool: &[u8],
                need: usize,
                cycle: &mut Vec<u8>,
                remaining: &mut Vec<u8>,
                parts: &mut Vec<usize>,
                img: &mut Vec<u8>,
                out: &mut Vec<Perm>,
            ) {
                if need == 0 {
                    for w in 0..cycle.len() {
                        img[cycle[w] as usize] = cycle[(w + 1) % cycle.len()];
                    }
                    let used: Vec<u8> = cycle.clone();
                    remaining.retain(|p| !used.contains(p));
                    rec(remaining, parts, img, out);
                    for &p in &used {
                        remaining.push(p);
                    }
                    remaining.sort_unstable();
                    for &p in cycle.iter() {
                        img[p as usize] = p;
                    }
                    return;
                }
                for i in 0..pool.len() {
                    if cycle.contains(&pool[i]) {
                        continue;
                    }
                    cycle.push(pool[i]);
                    choose_rest(pool, need - 1, cycle, remaining, parts, img, out);
                    cycle.pop();
                }
            }
        }
    }
}

/// Sizes via the cycle-type formulas.
pub fn support_class_size(n: usize, support_type: &[usize]) -> Result<u128> {
    let full = full_cycle_type(n, support_type)?;
    Ok(crate::perm::an_class_size(n, &full))
}
