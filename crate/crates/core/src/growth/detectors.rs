//! Structure detectors on subsets of permutation groups: the small-support
//! profile and the t-umvirate scan.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::SubsetG;
use crate::perm::{binomial, k_subsets};

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum StructureVerdict {
    /// Some a ∈ A has at least |A|^exponent elements of small support in a⁻¹A.
    Structured {
        a: u32,
        a_display: String,
        count: usize,
    },
    Unstructured,
}

#[derive(Debug, Clone, Serialize)]
pub struct SupportProfile {
    pub verdict: StructureVerdict,
    /// Support threshold ε·ln|A| the count was taken against.
    pub support_threshold: f64,
    /// Required count |A|^exponent.
    pub required_count: f64,
    /// Best shift a (maximizing the small-support count) even when
    /// unstructured.
    pub best_a: u32,
    pub best_count: usize,
    /// histogram[s] = #{x ∈ a⁻¹A : support(x) = s} for the best a.
    pub histogram: Vec<usize>,
}

/// Tests whether some shift a⁻¹A concentrates on elements of support at
/// most ε·ln|A|; the count must reach |A|^exponent (default 0.9).
pub fn support_profile(a: &SubsetG, epsilon: f64, exponent: f64) -> Result<SupportProfile> {
    let group = a.group();
    let n = group
        .permutation_degree()
        .ok_or(Error::NotPermutationGroup)?;
    if a.is_empty() {
        return Err(Error::EmptySubset);
    }
    let size = a.len() as f64;
    let support_threshold = epsilon * size.ln();
    let required_count = size.powf(exponent);

    let mut best_a = a.indices()[0];
    let mut best_count = 0usize;
    let mut best_hist = vec![0usize; n + 1];
    for &x in a.indices() {
        let xinv = group.inv(x);
        let mut hist = vec![0usize; n + 1];
        let mut count = 0usize;
        for &y in a.indices() {
            let s = group.perm(group.mul(xinv, y))?.support_size();
            hist[s] += 1;
            if (s as f64) <= support_threshold {
                count += 1;
            }
        }
        if count > best_count {
            best_count = count;
            best_a = x;
            best_hist = hist;
        }
    }

    let verdict = if best_count as f64 >= required_count {
        StructureVerdict::Structured {
            a: best_a,
            a_display: group.element(best_a).display(),
            count: best_count,
        }
    } else {
        StructureVerdict::Unstructured
    };
    Ok(SupportProfile {
        verdict,
        support_threshold,
        required_count,
        best_a,
        best_count,
        histogram: best_hist,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct UmvirateBest {
    pub t: usize,
    /// The fixed coordinate set I, ascending (0-based points).
    pub set: Vec<u8>,
    /// Images of I under the coset's defining injection.
    pub images: Vec<u8>,
    pub count: usize,
    /// |U ∩ G| for this umvirate.
    pub umvirate_size: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct UmvirateScan {
    pub best: UmvirateBest,
    /// Best count for each t in 1..=t_max.
    pub per_t: Vec<UmvirateBest>,
    pub exhaustive: bool,
    /// |A ∩ U| > |A|^0.8 for the best umvirate, when thresholds requested.
    pub a_threshold_met: Option<bool>,
    /// |U ∩ B| ≥ |U|^0.2, when B is supplied.
    pub b_threshold_met: Option<bool>,
    pub b_count: Option<usize>,
}

const UMVIRATE_ENUM_BUDGET: u128 = 1_000_000;
const UMVIRATE_SAMPLES: usize = 2_000;

/// Scan t-umvirates U_{I,σ} (cosets of pointwise stabilizers) for the one
/// meeting A in the most elements. Exhaustive over I while C(n,t)·t! stays
/// within budget, otherwise seeded I-sampling. Ties prefer larger t, so a
/// set inside a small umvirate reports that umvirate.
pub fn umvirate_scan(
    a: &SubsetG,
    t_max: usize,
    b: Option<&SubsetG>,
    seed: u64,
    a_exponent: f64,
    b_exponent: f64,
) -> Result<UmvirateScan> {
    let group = a.group();
    let n = group
        .permutation_degree()
        .ok_or(Error::NotPermutationGroup)?;
    if a.is_empty() {
        return Err(Error::EmptySubset);
    }
    let t_max = t_max.min(n);

    // |U_{I,σ} ∩ A_n| (or S_n): all (n-t)! pattern extensions for S_n,
    // half of them even when n-t >= 2
    let ambient_even = group.perm_family() == Some(crate::group::PermFamily::Alternating);
    let umvirate_size = |t: usize| -> u128 {
        let ext = crate::perm::factorial(n - t);
        if ambient_even && n - t >= 2 {
            ext / 2
        } else {
            ext.max(1)
        }
    };

    let perms: Vec<&crate::perm::Perm> = a
        .indices()
        .iter()
        .map(|&i| group.perm(i))
        .collect::<Result<_>>()?;

    let mut per_t: Vec<UmvirateBest> = Vec::new();
    let mut exhaustive_all = true;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);

    for t in 1..=t_max {
        let budget_ok = binomial(n, t) * crate::perm::factorial(t) <= UMVIRATE_ENUM_BUDGET;
        if !budget_ok {
            exhaustive_all = false;
        }
        let subsets: Vec<Vec<u8>> = if budget_ok {
            k_subsets(n, t)
        } else {
            (0..UMVIRATE_SAMPLES)
                .map(|_| {
                    let mut pool: Vec<u8> = (0..n as u8).collect();
                    for i in 0..t {
                        let j = rng.gen_range(i..n);
                        pool.swap(i, j);
                    }
                    let mut s = pool[..t].to_vec();
                    s.sort_unstable();
                    s
                })
                .collect()
        };

        let mut best_count = 0usize;
        let mut best_set: Vec<u8> = subsets[0].clone();
        let mut best_images: Vec<u8> = Vec::new();
        for set in &subsets {
            let mut counts: HashMap<Vec<u8>, usize> = HashMap::new();
            for p in &perms {
                let pattern: Vec<u8> = set.iter().map(|&i| p.apply(i)).collect();
                *counts.entry(pattern).or_insert(0) += 1;
            }
            // deterministic argmax: largest count, then smallest pattern
            for (pattern, count) in counts {
                let better = count > best_count
                    || (count == best_count && (set, &pattern) < (&best_set, &best_images));
                if better {
                    best_count = count;
                    best_set = set.clone();
                    best_images = pattern;
                }
            }
        }
        per_t.push(UmvirateBest {
            t,
            set: best_set,
            images: best_images,
            count: best_count,
            umvirate_size: umvirate_size(t),
        });
    }

    // overall best: maximize count, prefer larger t on ties
    let best = per_t
        .iter()
        .max_by(|x, y| x.count.cmp(&y.count).then(x.t.cmp(&y.t)))
        .expect("t_max >= 1")
        .clone();

    let a_threshold_met = Some((best.count as f64) > (a.len() as f64).powf(a_exponent));
    let (b_threshold_met, b_count) = match b {
        Some(bset) => {
            let count = bset
                .indices()
                .iter()
                .filter(|&&i| {
                    let p = group.perm(i).expect("permutation group");
                    best.set
                        .iter()
                        .zip(&best.images)
                        .all(|(&pt, &im)| p.apply(pt) == im)
                })
                .count();
            let met = (count as f64) >= (best.umvirate_size as f64).powf(b_exponent);
            (Some(met), Some(count))
        }
        None => (None, None),
    };

    Ok(UmvirateScan {
        best,
        per_t,
        exhaustive: exhaustive_all,
        a_threshold_met,
        b_threshold_met,
        b_count,
    })
}
