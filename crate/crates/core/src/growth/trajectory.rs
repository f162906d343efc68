//! Greedy growth trajectories P_i = P_{i-1}·A^{σ_i} and covering
//! estimates. A is translate-normalized first (replace A by a⁻¹A for the
//! smallest a, so 1 ∈ A); sizes are then nondecreasing.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::SubsetG;
use crate::group::Group;
use crate::growth::SIGMA_ENUM_CAP;

#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryStep {
    pub sigma: u32,
    pub sigma_display: String,
    /// |P_i| after multiplying by A^{σ_i}.
    pub size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub initial_size: usize,
    pub steps: Vec<TrajectoryStep>,
    /// min_i log(size_i) / (i · log|A|).
    pub fitted_exponent: f64,
    pub reached_group: bool,
}

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum SigmaSelection {
    Exact,
    Sampled { seed: u64, count: usize },
}

/// Greedy trajectory: step i picks the σ maximizing |P_{i-1}·A^σ|, ties
/// broken by smallest element index.
pub fn growth_trajectory(
    a: &SubsetG,
    steps: usize,
    selection: SigmaSelection,
) -> Result<Trajectory> {
    if a.len() < 2 {
        return Err(Error::TooFewElements);
    }
    let group = a.group().clone();
    let order = group.order();
    if matches!(selection, SigmaSelection::Exact) && order > SIGMA_ENUM_CAP {
        return Err(Error::ExactEnumerationCapExceeded {
            order,
            cap: SIGMA_ENUM_CAP,
        });
    }

    // translate-normalize so the identity is in A
    let shift = group.inv(a.indices()[0]);
    let a_norm: Vec<u32> = a.indices().iter().map(|&x| group.mul(shift, x)).collect();
    debug_assert!(a_norm.contains(&group.identity()));

    let mut current: Vec<bool> = vec![false; order];
    for &x in &a_norm {
        current[x as usize] = true;
    }
    let mut current_size = a_norm.len();
    let mut trace = Vec::with_capacity(steps);

    for step in 0..steps {
        let sigmas: Vec<u32> = match selection {
            SigmaSelection::Exact => (0..order as u32).collect(),
            SigmaSelection::Sampled { seed, count } => {
                use rand::{Rng, SeedableRng};
                let mut rng =
                    rand_chacha::ChaCha12Rng::seed_from_u64(seed.wrapping_add(step as u64));
                (0..count).map(|_| rng.gen_range(0..order as u32)).collect()
            }
        };
        let members: Vec<u32> = (0..order as u32).filter(|&i| current[i as usize]).collect();

        let sizes: Vec<usize> = sigmas
            .par_iter()
            .map_init(
                || vec![false; order],
                |scratch, &s| {
                    scratch.iter_mut().for_each(|x| *x = false);
                    let conj: Vec<u32> = a_norm.iter().map(|&x| group.conjugate(x, s)).collect();
                    let mut count = 0usize;
                    for &p in &members {
                        for &c in &conj {
                            let idx = group.mul(p, c) as usize;
                            if !scratch[idx] {
                                scratch[idx] = true;
                                count += 1;
                            }
                        }
                    }
                    count
                },
            )
            .collect();

        let mut best = 0usize;
        let mut best_sigma = u32::MAX;
        for (&s, &size) in sigmas.iter().zip(&sizes) {
            if size > best || (size == best && s < best_sigma) {
                best = size;
                best_sigma = s;
            }
        }

        // apply the winning conjugate
        let conj: Vec<u32> = a_norm
            .iter()
            .map(|&x| group.conjugate(x, best_sigma))
            .collect();
        let mut next = vec![false; order];
        let mut next_size = 0usize;
        for &p in &members {
            for &c in &conj {
                let idx = group.mul(p, c) as usize;
                if !next[idx] {
                    next[idx] = true;
                    next_size += 1;
                }
            }
        }
        debug_assert_eq!(next_size, best);
        current = next;
        current_size = next_size;
        trace.push(TrajectoryStep {
            sigma: best_sigma,
            sigma_display: group.element(best_sigma).display(),
            size: current_size,
        });
        if current_size == order {
            break;
        }
    }

    let log_a = (a.len() as f64).ln();
    let fitted_exponent = trace
        .iter()
        .enumerate()
        .map(|(i, st)| (st.size as f64).ln() / ((i + 1) as f64 * log_a))
        .fold(f64::INFINITY, f64::min);
    Ok(Trajectory {
        initial_size: a_norm.len(),
        steps: trace,
        fitted_exponent,
        reached_group: current_size == order,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CoveringReport {
    /// Number of conjugate factors in the first greedy product equal to G
    /// (the initial normalized copy of A counts as the first factor).
    pub upper: Option<usize>,
    /// Exact minimum over all conjugator choices, when attempted.
    pub exact: Option<usize>,
    pub trajectory: Trajectory,
}

const EXACT_COVERING_ORDER_CAP: usize = 60;
const EXACT_COVERING_STEP_CAP: usize = 4;
const EXACT_COVERING_FRONTIER_CAP: usize = 200_000;

/// Greedy upper bound for the conjugate covering number, plus a BFS exact
/// minimum on very small instances.
pub fn covering_estimate(a: &SubsetG, max_steps: usize) -> Result<CoveringReport> {
    if a.len() < 2 {
        return Err(Error::TooFewElements);
    }
    let group = a.group().clone();
    let order = group.order();

    let trajectory = growth_trajectory(a, max_steps, SigmaSelection::Exact)?;
    let upper = if trajectory.initial_size == order {
        Some(1)
    } else {
        trajectory
            .steps
            .iter()
            .position(|st| st.size == order)
            .map(|i| i + 2) // P_i = A·A^{σ_1}···A^{σ_{i+1}} has i+2 factors
    };

    let exact = if order <= EXACT_COVERING_ORDER_CAP {
        exact_covering(&group, a, EXACT_COVERING_STEP_CAP)
    } else {
        None
    };
    Ok(CoveringReport {
        upper,
        exact,
        trajectory,
    })
}

/// BFS over products of conjugates, levels deduplicated as bitmasks and
/// pruned to maximal sets (supersets dominate: they can only cover sooner).
fn exact_covering(group: &Group, a: &SubsetG, max_steps: usize) -> Option<usize> {
    let order = group.order();
    debug_assert!(order <= 64);
    let full: u64 = if order == 64 {
        u64::MAX
    } else {
        (1u64 << order) - 1
    };

    let conjugates: Vec<Vec<u32>> = {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for s in 0..order as u32 {
            let c: Vec<u32> = {
                let mut v: Vec<u32> = a.indices().iter().map(|&x| group.conjugate(x, s)).collect();
                v.sort_unstable();
                v
            };
            let mask = c.iter().fold(0u64, |m, &x| m | 1 << x);
            if seen.insert(mask) {
                out.push(c);
            }
        }
        out
    };

    let mut frontier: Vec<u64> = conjugates
        .iter()
        .map(|c| c.iter().fold(0u64, |m, &x| m | 1 << x))
        .collect();
    frontier.sort_unstable();
    frontier.dedup();
    if frontier.iter().any(|&m| m == full) {
        return Some(1);
    }

    for depth in 2..=max_steps {
        let mut next = HashSet::new();
        for &mask in &frontier {
            let members: Vec<u32> = (0..order as u32).filter(|&i| mask >> i & 1 == 1).collect();
            for conj in &conjugates {
                let mut out = 0u64;
                for &p in &members {
                    for &c in conj {
                        out |= 1 << group.mul(p, c);
                    }
                }
                if out == full {
                    return Some(depth);
                }
                next.insert(out);
            }
            if next.len() > EXACT_COVERING_FRONTIER_CAP {
                return None;
            }
        }
        // keep only maximal masks
        let mut masks: Vec<u64> = next.into_iter().collect();
        masks.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
        let mut pruned: Vec<u64> = Vec::new();
        'outer: for m in masks {
            for &p in &pruned {
                if p | m == p {
                    continue 'outer;
                }
            }
            pruned.push(m);
        }
        frontier = pruned;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    #[test]
    fn full_group_saturates_in_one_step() {
        let g = build_group(&GroupSpec::Alternating { n: 4 }).unwrap();
        let a = SubsetG::full(g.clone());
        let t = growth_trajectory(&a, 3, SigmaSelection::Exact).unwrap();
        assert_eq!(t.steps[0].size, g.order());
        assert!(t.reached_group);
        let cov = covering_estimate(&a, 3).unwrap();
        assert_eq!(cov.upper, Some(1));
        assert_eq!(cov.exact, Some(1));
    }

    #[test]
    fn sizes_nondecreasing_and_bounded() {
        let g = build_group(&GroupSpec::Alternating { n: 5 }).unwrap();
        for seed in 0..3u64 {
            let a = SubsetG::random(g.clone(), 3, 100 + seed).unwrap();
            let t = growth_trajectory(&a, 6, SigmaSelection::Exact).unwrap();
            let mut prev = t.initial_size;
            for st in &t.steps {
                assert!(st.size >= prev, "trajectory must not shrink");
                assert!(st.size <= g.order());
                prev = st.size;
            }
        }
    }

    #[test]
    fn pair_with_five_cycle_reaches_a5() {
        let g = build_group(&GroupSpec::Alternating { n: 5 }).unwrap();
        let five = (0..g.order() as u32)
            .find(|&i| g.perm(i).unwrap().cycle_type() == vec![5])
            .unwrap();
        let a = SubsetG::new(g.clone(), vec![g.identity(), five]).unwrap();
        let t = growth_trajectory(&a, 12, SigmaSelection::Exact).unwrap();
        assert!(
            t.reached_group,
            "{:?}",
            t.steps.iter().map(|s| s.size).collect::<Vec<_>>()
        );
        assert!(t.fitted_exponent > 0.0);
    }

    #[test]
    fn too_small_sets_rejected() {
        let g = build_group(&GroupSpec::Alternating { n: 5 }).unwrap();
        let a = SubsetG::singleton(g.clone(), 3).unwrap();
        assert!(matches!(
            growth_trajectory(&a, 3, SigmaSelection::Exact),
            Err(Error::TooFewElements)
        ));
    }

    #[test]
    fn covering_upper_at_least_exact() {
        let g = build_group(&GroupSpec::Alternating { n: 5 }).unwrap();
        for seed in 0..3u64 {
            let a = SubsetG::random(g.clone(), 6, 200 + seed).unwrap();
            let cov = covering_estimate(&a, 8).unwrap();
            if let (Some(u), Some(e)) = (cov.upper, cov.exact) {
                assert!(u >= e, "greedy {u} below exact {e}");
            }
        }
    }

    #[test]
    fn normal_class_covering_matches_direct_powers() {
        // for a normal set, conjugates coincide with the set itself, so the
        // exact covering equals the first m with A^m = G
        let g = build_group(&GroupSpec::Alternating { n: 5 }).unwrap();
        let classes = g.classes();
        let five_class = classes
            .classes
            .iter()
            .find(|c| g.perm(c.rep).unwrap().cycle_type() == vec![5])
            .unwrap();
        let a = SubsetG::new(g.clone(), five_class.members.clone()).unwrap();
        let cov = covering_estimate(&a, 6).unwrap();

        // direct power iteration
        let mut power = a.clone();
        let mut m = 1usize;
        while power.len() < g.order() {
            power = crate::growth::product_set(&power, &a).unwrap();
            m += 1;
            assert!(m < 10);
        }
        assert_eq!(cov.exact, Some(m));
        assert!(cov.upper.unwrap() >= m);
    }
}
