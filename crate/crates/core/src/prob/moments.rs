//! Moment formulas for the representation count X_x = Σ_{a,b} [a^τ b^π = x]
//! with τ, π uniform in A_n, and the first-moment search for small-support
//! growth.

use std::collections::HashSet;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{binomial, Perm};
use crate::prob::{
    direct_sum_type, enumerate_support_class, full_cycle_type, support_class_size, MCConfig,
};

/// Exact probability that a uniform m-subset avoids a fixed r-subset:
/// C(n-r, m)/C(n, m).
#[derive(Debug, Clone, Serialize)]
pub struct DisjointProb {
    pub numerator: u128,
    pub denominator: u128,
    pub value: f64,
    /// Set when m + r > n: disjointness is impossible and the value is 0.
    pub impossible: bool,
}

pub fn disjoint_support_prob(n: usize, m: usize, r: usize) -> DisjointProb {
    if m + r > n {
        return DisjointProb {
            numerator: 0,
            denominator: 1,
            value: 0.0,
            impossible: true,
        };
    }
    let num = binomial(n - r, m);
    let den = binomial(n, m);
    let g = num_integer::gcd(num, den);
    DisjointProb {
        numerator: num / g,
        denominator: den / g,
        value: num as f64 / den as f64,
        impossible: false,
    }
}

/// Monte Carlo cross-check of `disjoint_support_prob`: (estimate, standard error).
pub fn disjoint_support_prob_mc(n: usize, m: usize, r: usize, cfg: &MCConfig) -> (f64, f64) {
    let mut rng = cfg.stream(0);
    let mut hits = 0usize;
    for _ in 0..cfg.samples {
        // uniform m-subset vs the fixed r-subset {0..r-1}
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..m {
            let j = rng.gen_range(i..n);
            pool.swap(i, j);
        }
        if pool[..m].iter().all(|&p| p >= r) {
            hits += 1;
        }
    }
    let p = hits as f64 / cfg.samples as f64;
    let se = (p * (1.0 - p) / cfg.samples as f64).sqrt();
    (p, se)
}

/// Pr[X > 0] >= E[X]²/E[X²].
pub fn paley_zygmund(e1: f64, e2: f64) -> Result<f64> {
    if e1 < 0.0 || e2 <= 0.0 || e2 + 1e-12 * e1.abs().max(1.0) < e1 * e1 {
        return Err(Error::InconsistentMoments { e2, e1_sq: e1 * e1 });
    }
    Ok(e1 * e1 / e2)
}

#[derive(Debug, Clone, Serialize)]
pub struct SellDiagnostic {
    pub ell: usize,
    /// ℓ!·C(n-m,ℓ)·C(m,ℓ)
    pub count_bound: u128,
    /// n^ℓ·2^m
    pub cap: u128,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentReport {
    /// Closed form C(n-r,m)|A||B| / (C(n,m)|C₁⊕C₂|).
    pub formula_mean: f64,
    /// Independent exact value |A||B|·N(x)/(|C₁||C₂|), with N(x) the number
    /// of factorizations of x across the two classes.
    pub enumerated_mean: Option<f64>,
    pub estimate_mean: f64,
    pub mean_se: f64,
    pub estimate_second: f64,
    pub second_se: f64,
    /// Full (τ,π)-enumeration values, when |A_n| is within reach.
    pub exact_second: Option<f64>,
    pub exact_event_prob: Option<f64>,
    /// E[X]²/E[X²] from the best available moments.
    pub pz_bound: f64,
    /// Sampled (or enumerated) frequency of X > 0.
    pub event_frequency: f64,
    pub samples: usize,
    pub seed: u64,
    pub enumerated_pairs: bool,
    /// m, r <= n/4: supports small enough for the second-moment bound.
    pub in_small_support_regime: bool,
    /// x lies outside C₁⊕C₂, so X ≡ 0 by convention.
    pub degenerate: bool,
    pub s_ell_diagnostic: Vec<SellDiagnostic>,
}

/// |A_n| bound for the full (τ,π) double loop.
const PAIR_ENUM_CAP: u128 = 2_520;

fn validate_subset_of_class(n: usize, set: &[Perm], support_type: &[usize]) -> Result<()> {
    let full = full_cycle_type(n, support_type)?;
    if set.is_empty() {
        return Err(Error::EmptySubset);
    }
    for p in set {
        if p.degree() != n || p.cycle_type() != full {
            return Err(Error::DifferentClasses);
        }
    }
    Ok(())
}

/// Moments of X_x for A ⊆ C₁, B ⊆ C₂ (subsets given explicitly, classes by
/// their support cycle types), x in the direct-sum class.
pub fn xcount_moments(
    n: usize,
    a: &[Perm],
    type_a: &[usize],
    b: &[Perm],
    type_b: &[usize],
    x: &Perm,
    cfg: &MCConfig,
) -> Result<MomentReport> {
    cfg.validate()?;
    validate_subset_of_class(n, a, type_a)?;
    validate_subset_of_class(n, b, type_b)?;
    let m: usize = type_a.iter().sum();
    let r: usize = type_b.iter().sum();
    let in_small_support_regime = 4 * m <= n && 4 * r <= n;
    let sum_type = direct_sum_type(n, type_a, type_b)?;
    let sum_full = full_cycle_type(n, &sum_type)?;

    let s_ell_diagnostic = (1..=m)
        .map(|ell| {
            let count_bound = crate::perm::factorial(ell) * binomial(n - m, ell) * binomial(m, ell);
            let cap = (n as u128).pow(ell as u32) * (1u128 << m);
            SellDiagnostic {
                ell,
                count_bound,
                cap,
                holds: count_bound <= cap,
            }
        })
        .collect();

    if x.degree() != n || x.cycle_type() != sum_full {
        // X ≡ 0 by convention outside the direct-sum class
        return Ok(MomentReport {
            formula_mean: 0.0,
            enumerated_mean: Some(0.0),
            estimate_mean: 0.0,
            mean_se: 0.0,
            estimate_second: 0.0,
            second_se: 0.0,
            exact_second: None,
            exact_event_prob: None,
            pz_bound: 0.0,
            event_frequency: 0.0,
            samples: 0,
            seed: cfg.seed,
            enumerated_pairs: false,
            in_small_support_regime,
            degenerate: true,
            s_ell_diagnostic,
        });
    }

    let class_a_size = support_class_size(n, type_a)?;
    let class_b_size = support_class_size(n, type_b)?;
    let sum_class_size = crate::perm::an_class_size(n, &sum_full);
    let sizes = a.len() as f64 * b.len() as f64;
    let formula_mean = disjoint_support_prob(n, r, m).value * sizes / sum_class_size as f64;

    // coset-collapsed exact first moment: N(x) = #{u in C₁ : u⁻¹x in C₂}
    let group_order = crate::perm::factorial(n) / 2;
    let enumerated_mean = if group_order <= cfg.exact_threshold as u128 {
        let class_a = enumerate_support_class(n, type_a)?;
        let full_b = full_cycle_type(n, type_b)?;
        let nx = class_a
            .iter()
            .filter(|u| u.inverse().compose(x).cycle_type() == full_b)
            .count();
        Some(sizes * nx as f64 / (class_a_size as f64 * class_b_size as f64))
    } else {
        None
    };

    // full (τ,π) enumeration for second moments on tiny groups; the τ side
    // ((a^τ)⁻¹x per a) is hoisted and matched against sorted keys per π
    let (exact_second, exact_event_prob, enumerated_pairs) =
        if group_order <= PAIR_ENUM_CAP && group_order <= cfg.exact_threshold as u128 {
            let elements = even_elements(n);
            let tau_products: Vec<Vec<u64>> = elements
                .iter()
                .map(|tau| {
                    a.iter()
                        .map(|p| perm_key(&p.conjugate_by(tau).inverse().compose(x)))
                        .collect()
                })
                .collect();
            let pair_stats: Vec<(f64, u64)> = elements
                .par_iter()
                .map(|pi| {
                    let mut b_keys: Vec<u64> =
                        b.iter().map(|p| perm_key(&p.conjugate_by(pi))).collect();
                    b_keys.sort_unstable();
                    let mut sum2 = 0.0f64;
                    let mut events = 0u64;
                    for tprods in &tau_products {
                        let count = tprods
                            .iter()
                            .filter(|k| b_keys.binary_search(k).is_ok())
                            .count();
                        sum2 += (count * count) as f64;
                        if count > 0 {
                            events += 1;
                        }
                    }
                    (sum2, events)
                })
                .collect();
            let (mut sum2, mut events) = (0.0f64, 0u64);
            for (s, e) in pair_stats {
                sum2 += s;
                events += e;
            }
            let total = (elements.len() * elements.len()) as f64;
            (Some(sum2 / total), Some(events as f64 / total), true)
        } else {
            (None, None, false)
        };

    // seeded sampling over (τ,π), parallel across numbered substreams
    let chunk = 1024usize;
    let chunks: Vec<(u64, usize)> = (0..cfg.samples)
        .step_by(chunk)
        .enumerate()
        .map(|(i, start)| (i as u64, (cfg.samples - start).min(chunk)))
        .collect();
    let partials: Vec<(f64, f64, f64, u64)> = chunks
        .par_iter()
        .map(|&(stream, count)| {
            let mut rng = cfg.stream(stream);
            let mut s1 = 0.0;
            let mut s2 = 0.0;
            let mut s4 = 0.0;
            let mut events = 0u64;
            for _ in 0..count {
                let tau = Perm::random_even(n, &mut rng);
                let pi = Perm::random_even(n, &mut rng);
                let b_set: HashSet<Perm> = b.iter().map(|p| p.conjugate_by(&pi)).collect();
                let xv = a
                    .iter()
                    .filter(|p| b_set.contains(&p.conjugate_by(&tau).inverse().compose(x)))
                    .count() as f64;
                s1 += xv;
                s2 += xv * xv;
                s4 += xv * xv * xv * xv;
                if xv > 0.0 {
                    events += 1;
                }
            }
            (s1, s2, s4, events)
        })
        .collect();
    let (mut s1, mut s2, mut s4, mut events) = (0.0, 0.0, 0.0, 0u64);
    for (a1, a2, a4, ev) in partials {
        s1 += a1;
        s2 += a2;
        s4 += a4;
        events += ev;
    }
    let ns = cfg.samples as f64;
    let estimate_mean = s1 / ns;
    let mean_var = (s2 / ns - estimate_mean * estimate_mean).max(0.0);
    let mean_se = (mean_var / ns).sqrt();
    let estimate_second = s2 / ns;
    let second_var = (s4 / ns - estimate_second * estimate_second).max(0.0);
    let second_se = (second_var / ns).sqrt();
    let event_frequency = exact_event_prob.unwrap_or(events as f64 / ns);

    let best_mean = enumerated_mean.unwrap_or(formula_mean);
    let best_second = exact_second.unwrap_or(estimate_second);
    let pz_bound = if best_second > 0.0 {
        best_mean * best_mean / best_second
    } else {
        0.0
    };

    Ok(MomentReport {
        formula_mean,
        enumerated_mean,
        estimate_mean,
        mean_se,
        estimate_second,
        second_se,
        exact_second,
        exact_event_prob,
        pz_bound,
        event_frequency,
        samples: cfg.samples,
        seed: cfg.seed,
        enumerated_pairs,
        in_small_support_regime,
        degenerate: false,
        s_ell_diagnostic,
    })
}

/// Image array packed into a u64 (4 bits per point, n <= 16).
fn perm_key(p: &Perm) -> u64 {
    debug_assert!(p.degree() <= 16);
    p.0.iter().fold(0u64, |acc, &v| acc << 4 | v as u64)
}

/// All even permutations of degree n (small n only).
pub fn even_elements(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut img: Vec<u8> = (0..n as u8).collect();
    loop {
        let p = Perm(img.clone());
        if p.is_even() {
            out.push(p);
        }
        if !crate::perm::next_permutation(&mut img) {
            break;
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SmallSupportReport {
    /// Best |A^σB ∩ (C₁⊕C₂)| found.
    pub best_intersection: usize,
    pub best_sigma: String,
    /// |A|^{1/3}·|B|.
    pub target: f64,
    pub target_met: bool,
    /// σ-search was exhaustive over A_n.
    pub exact_search: bool,
    /// Sampled E over (τ,π) of the disjoint-support pair count
    /// #{(a,b) : a^τ b^π ∈ C₁⊕C₂}, its closed form
    /// C(n-r,m)/C(n,m)·|A||B|, and the standard error.
    pub pair_count_mean: f64,
    pub pair_count_se: f64,
    pub pair_count_formula: f64,
    pub pair_count_within_4se: bool,
    /// Sampled E of the intersection size |A^τB^π ∩ C₁⊕C₂| (a lower
    /// statistic: multiplicities collapse).
    pub intersection_mean: f64,
    pub in_small_support_regime: bool,
    pub samples: usize,
    pub seed: u64,
}

const SIGMA_SEARCH_BUDGET: u128 = 200_000_000;

/// Search σ for |A^σB ∩ (C₁⊕C₂)| against the |A|^{1/3}|B| target, plus
/// the exact first-moment identity for the disjoint pair count.
pub fn small_support_growth(
    n: usize,
    a: &[Perm],
    type_a: &[usize],
    b: &[Perm],
    type_b: &[usize],
    cfg: &MCConfig,
) -> Result<SmallSupportReport> {
    cfg.validate()?;
    validate_subset_of_class(n, a, type_a)?;
    validate_subset_of_class(n, b, type_b)?;
    let m: usize = type_a.iter().sum();
    let r: usize = type_b.iter().sum();
    let in_small_support_regime = 4 * m <= n && 4 * r <= n;
    let sum_full = full_cycle_type(n, &direct_sum_type(n, type_a, type_b)?)?;

    let group_order = crate::perm::factorial(n) / 2;
    let work = group_order * (a.len() as u128) * (b.len() as u128);
    let exact_search = n <= 9 && work <= SIGMA_SEARCH_BUDGET;

    let intersection_for = |sigma: &Perm| -> usize {
        let a_conj: Vec<Perm> = a.iter().map(|p| p.conjugate_by(sigma)).collect();
        let mut seen: HashSet<Perm> = HashSet::new();
        for u in &a_conj {
            for v in b {
                let prod = u.compose(v);
                if prod.cycle_type() == sum_full {
                    seen.insert(prod);
                }
            }
        }
        seen.len()
    };

    let (best_intersection, best_sigma) = if exact_search {
        let elements = even_elements(n);
        let sizes: Vec<usize> = elements.par_iter().map(|s| intersection_for(s)).collect();
        let mut best = 0usize;
        let mut arg = 0usize;
        for (i, &v) in sizes.iter().enumerate() {
            if v > best {
                best = v;
                arg = i;
            }
        }
        (best, elements[arg].cycle_string())
    } else {
        let mut rng = cfg.stream(u64::MAX);
        let mut best = 0usize;
        let mut arg = Perm::identity(n);
        for _ in 0..cfg.samples {
            let s = Perm::random_even(n, &mut rng);
            let v = intersection_for(&s);
            if v > best {
                best = v;
                arg = s;
            }
        }
        (best, arg.cycle_string())
    };

    let target = (a.len() as f64).powf(1.0 / 3.0) * b.len() as f64;

    // first-moment identity over (τ,π)
    let chunk = 512usize;
    let chunks: Vec<(u64, usize)> = (0..cfg.samples)
        .step_by(chunk)
        .enumerate()
        .map(|(i, start)| (i as u64, (cfg.samples - start).min(chunk)))
        .collect();
    let partials: Vec<(f64, f64, f64)> = chunks
        .par_iter()
        .map(|&(stream, count)| {
            let mut rng = cfg.stream(stream);
            let mut pair_sum = 0.0;
            let mut pair_sq = 0.0;
            let mut inter_sum = 0.0;
            for _ in 0..count {
                let tau = Perm::random_even(n, &mut rng);
                let pi = Perm::random_even(n, &mut rng);
                let a_conj: Vec<Perm> = a.iter().map(|p| p.conjugate_by(&tau)).collect();
                let b_conj: Vec<Perm> = b.iter().map(|p| p.conjugate_by(&pi)).collect();
                let mut pairs = 0usize;
                let mut seen: HashSet<Perm> = HashSet::new();
                for u in &a_conj {
                    for v in &b_conj {
                        let prod = u.compose(v);
                        if prod.cycle_type() == sum_full {
                            pairs += 1;
                            seen.insert(prod);
                        }
                    }
                }
                pair_sum += pairs as f64;
                pair_sq += (pairs * pairs) as f64;
                inter_sum += seen.len() as f64;
            }
            (pair_sum, pair_sq, inter_sum)
        })
        .collect();
    let (mut s1, mut s2, mut si) = (0.0, 0.0, 0.0);
    for (a1, a2, ai) in partials {
        s1 += a1;
        s2 += a2;
        si += ai;
    }
    let ns = cfg.samples as f64;
    let pair_count_mean = s1 / ns;
    let pair_var = (s2 / ns - pair_count_mean * pair_count_mean).max(0.0);
    let pair_count_se = (pair_var / ns).sqrt();
    let pair_count_formula = disjoint_support_prob(n, r, m).value * a.len() as f64 * b.len() as f64;
    let pair_count_within_4se =
        (pair_count_mean - pair_count_formula).abs() <= 4.0 * pair_count_se.max(1e-12);

    Ok(SmallSupportReport {
        best_intersection,
        best_sigma,
        target,
        target_met: best_intersection as f64 >= target,
        exact_search,
        pair_count_mean,
        pair_count_se,
        pair_count_formula,
        pair_count_within_4se,
        intersection_mean: si / ns,
        in_small_support_regime,
        samples: cfg.samples,
        seed: cfg.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::k_subsets;

    #[test]
    fn disjoint_prob_closed_forms() {
        // C(5,3)/C(8,3) = 10/56 = 5/28
        let p = disjoint_support_prob(8, 3, 3);
        assert_eq!((p.numerator, p.denominator), (5, 28));
        assert!(!p.impossible);
        // r = 0: probability 1
        let p = disjoint_support_prob(9, 4, 0);
        assert_eq!((p.numerator, p.denominator), (1, 1));
        // r = n - m: unique complementary support
        let p = disjoint_support_prob(7, 3, 4);
        assert_eq!(p.denominator, binomial(7, 3));
        assert_eq!(p.numerator, 1);
        // impossible case flagged, not an error
        let p = disjoint_support_prob(6, 4, 3);
        assert!(p.impossible);
        assert_eq!(p.value, 0.0);
    }

    #[test]
    fn disjoint_prob_matches_exhaustive_enumeration() {
        for (n, m, r) in [(8, 3, 3), (9, 3, 4), (7, 2, 3), (9, 4, 4)] {
            let fixed: Vec<u8> = (0..r as u8).collect();
            let total = k_subsets(n, m).len() as u128;
            let disjoint = k_subsets(n, m)
                .into_iter()
                .filter(|s| s.iter().all(|p| !fixed.contains(p)))
                .count() as u128;
            let p = disjoint_support_prob(n, m, r);
            assert_eq!(disjoint * p.denominator, p.numerator * total);
        }
    }

    #[test]
    fn disjoint_prob_mc_within_4_sigma() {
        let cfg = MCConfig::new(11, 20_000);
        let p = disjoint_support_prob(8, 3, 3);
        let (est, se) = disjoint_support_prob_mc(8, 3, 3, &cfg);
        assert!((est - p.value).abs() <= 4.0 * se);
    }

    #[test]
    fn paley_zygmund_cases() {
        // indicator: e2 = e1, bound = e1
        assert!((paley_zygmund(0.3, 0.3).unwrap() - 0.3).abs() < 1e-15);
        // e1 = 0
        assert_eq!(paley_zygmund(0.0, 1.0).unwrap(), 0.0);
        // constant c: bound 1
        assert!((paley_zygmund(2.0, 4.0).unwrap() - 1.0).abs() < 1e-15);
        // inconsistent moments rejected
        assert!(paley_zygmund(1.0, 0.5).is_err());
    }

    #[test]
    fn xcount_degenerate_outside_class() {
        let cfg = MCConfig::new(3, 10);
        let a = enumerate_support_class(8, &[3]).unwrap();
        let b = enumerate_support_class(8, &[3]).unwrap();
        let x = Perm::identity(8);
        let rep = xcount_moments(8, &a, &[3], &b, &[3], &x, &cfg).unwrap();
        assert!(rep.degenerate);
        assert_eq!(rep.formula_mean, 0.0);
    }

    #[test]
    fn xcount_full_class_formula_vs_enumeration() {
        let cfg = MCConfig::new(5, 2_000);
        let a = enumerate_support_class(8, &[3]).unwrap();
        let b = enumerate_support_class(8, &[3]).unwrap();
        let x = Perm::from_cycles(8, &[&[0, 1, 2], &[3, 4, 5]]);
        let rep = xcount_moments(8, &a, &[3], &b, &[3], &x, &cfg).unwrap();
        assert!(!rep.in_small_support_regime); // 3 > 8/4
        let enumerated = rep.enumerated_mean.expect("within threshold at n=8");
        assert!(
            (rep.formula_mean - enumerated).abs() <= 1e-12 * rep.formula_mean,
            "formula {} vs enumerated {}",
            rep.formula_mean,
            enumerated
        );
        // sampled mean agrees within 4 standard errors
        assert!((rep.estimate_mean - rep.formula_mean).abs() <= 4.0 * rep.mean_se.max(1e-9));
    }

    #[test]
    fn xcount_uniform_over_the_sum_class() {
        // E[X_x] identical for all x in C₁⊕C₂
        let cfg = MCConfig::new(5, 10);
        let a: Vec<Perm> = enumerate_support_class(8, &[3]).unwrap()[..9].to_vec();
        let b: Vec<Perm> = enumerate_support_class(8, &[3]).unwrap()[..7].to_vec();
        let xs = [
            Perm::from_cycles(8, &[&[0, 1, 2], &[3, 4, 5]]),
            Perm::from_cycles(8, &[&[1, 2, 3], &[4, 5, 7]]),
            Perm::from_cycles(8, &[&[0, 2, 4], &[1, 3, 6]]),
        ];
        let means: Vec<f64> = xs
            .iter()
            .map(|x| {
                xcount_moments(8, &a, &[3], &b, &[3], x, &cfg)
                    .unwrap()
                    .enumerated_mean
                    .unwrap()
            })
            .collect();
        assert!((means[0] - means[1]).abs() < 1e-12);
        assert!((means[0] - means[2]).abs() < 1e-12);
    }

    #[test]
    fn conservation_identity_exact_at_n8() {
        // Σ_x N(x) over the direct-sum class = #disjoint pairs in C₁×C₂,
        // in exact integers
        let c1 = enumerate_support_class(8, &[3]).unwrap();
        let c2 = enumerate_support_class(8, &[3]).unwrap();
        let sum_full = full_cycle_type(8, &[3, 3]).unwrap();
        let d: Vec<Perm> = enumerate_support_class(8, &[3, 3]).unwrap();
        let full_b = full_cycle_type(8, &[3]).unwrap();
        let total_nx: u128 = d
            .iter()
            .map(|x| {
                c1.iter()
                    .filter(|u| u.inverse().compose(x).cycle_type() == full_b)
                    .count() as u128
            })
            .sum();
        let disjoint_pairs: u128 = c1
            .iter()
            .map(|u| {
                let su = u.support();
                c2.iter()
                    .filter(|v| v.support().iter().all(|p| !su.contains(p)))
                    .count() as u128
            })
            .sum();
        assert_eq!(total_nx, disjoint_pairs);
        // and the closed form matches: |C₁||C₂|·C(5,3)/C(8,3)
        let p = disjoint_support_prob(8, 3, 3);
        assert_eq!(
            disjoint_pairs * p.denominator,
            (c1.len() as u128) * (c2.len() as u128) * p.numerator
        );
        let _ = sum_full;
    }

    #[test]
    fn pz_holds_on_enumerated_instances() {
        // n = 7 is inside the pair-enumeration cap; the direct-sum support
        // constraint m + r <= n - 2 forces B into the identity class here
        let cfg = MCConfig::new(9, 200);
        let class = enumerate_support_class(7, &[3]).unwrap();
        let b = vec![Perm::identity(7)];
        let x = Perm::from_cycles(7, &[&[0, 1, 2]]);
        for take in [4usize, 11, 30] {
            let a: Vec<Perm> = class[..take].to_vec();
            let rep = xcount_moments(7, &a, &[3], &b, &[], &x, &cfg).unwrap();
            assert!(rep.enumerated_pairs);
            let e1 = rep.enumerated_mean.unwrap();
            let e2 = rep.exact_second.unwrap();
            let prob = rep.exact_event_prob.unwrap();
            assert!(e2 > 0.0);
            assert!(
                prob + 1e-12 >= e1 * e1 / e2,
                "PZ violated: {prob} < {}",
                e1 * e1 / e2
            );
            // exact enumeration agrees with the closed form
            assert!((e1 - rep.formula_mean).abs() <= 1e-12);
        }
    }

    #[test]
    fn small_support_singleton_target() {
        // |A| = 1: target = |B|, met by a σ making supports disjoint
        let cfg = MCConfig::new(13, 300);
        let a = vec![Perm::from_cycles(9, &[&[0, 1, 2]])];
        // B: both 3-cycles on {3,4,5}
        let b = vec![
            Perm::from_cycles(9, &[&[3, 4, 5]]),
            Perm::from_cycles(9, &[&[3, 5, 4]]),
        ];
        let rep = small_support_growth(9, &a, &[3], &b, &[3], &cfg).unwrap();
        assert!(rep.exact_search);
        assert_eq!(rep.best_intersection, 2);
        assert!(rep.target_met);
        assert!(rep.pair_count_within_4se);
    }
}
