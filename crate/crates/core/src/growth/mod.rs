//! Set-product arithmetic and the skew-product search over conjugators,
//! using |A^σB| = |AσB|.

mod audits;
mod detectors;
mod trajectory;

pub use audits::{
    char_growth_audit, class_concentration_audit, wrapping_bound_audit, BoundAudit,
    ClassConcentrationAudit, ConclusionCheck, NamedFlag,
};
pub use detectors::{
    support_profile, umvirate_scan, StructureVerdict, SupportProfile, UmvirateBest, UmvirateScan,
};
pub use trajectory::{
    covering_estimate, growth_trajectory, CoveringReport, SigmaSelection, Trajectory,
    TrajectoryStep,
};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::SubsetG;

/// Exact σ-enumeration cap for per-σ set products.
pub const SIGMA_ENUM_CAP: usize = 10_000;

/// AB = {ab : a ∈ A, b ∈ B}.
pub fn product_set(a: &SubsetG, b: &SubsetG) -> Result<SubsetG> {
    if a.group().id() != b.group().id() {
        return Err(Error::MixedGroups);
    }
    let group = a.group();
    let mut hit = vec![false; group.order()];
    for &x in a.indices() {
        for &y in b.indices() {
            hit[group.mul(x, y) as usize] = true;
        }
    }
    let indices: Vec<u32> = (0..group.order() as u32)
        .filter(|&i| hit[i as usize])
        .collect();
    SubsetG::new(group.clone(), indices)
}

/// |AσB| for one σ, using a caller-provided scratch bitmap.
fn product_size_through(
    group: &crate::group::Group,
    a: &[u32],
    b: &[u32],
    sigma: u32,
    scratch: &mut [bool],
) -> usize {
    scratch.iter_mut().for_each(|x| *x = false);
    let mut count = 0usize;
    for &x in a {
        let xs = group.mul(x, sigma);
        for &y in b {
            let idx = group.mul(xs, y) as usize;
            if !scratch[idx] {
                scratch[idx] = true;
                count += 1;
            }
        }
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum SkewMode {
    Exact,
    Sampled { seed: u64, count: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct SkewReport {
    /// σ attaining the maximum (smallest index on ties).
    pub argmax: u32,
    pub argmax_display: String,
    pub max: usize,
    pub min: usize,
    /// E[1/|A^σB|] over the enumerated or sampled σ.
    pub mean_reciprocal: f64,
    pub mode: SkewMode,
}

/// Maximize/minimize |A^σB| over conjugators σ. Exact mode enumerates all
/// of G; sampled mode draws seeded uniform σ and its max is a lower bound
/// for the true maximum.
pub fn skew_search(a: &SubsetG, b: &SubsetG, mode: SkewMode) -> Result<SkewReport> {
    if a.group().id() != b.group().id() {
        return Err(Error::MixedGroups);
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySubset);
    }
    let group = a.group().clone();
    let order = group.order();

    let sigmas: Vec<u32> = match mode {
        SkewMode::Exact => {
            if order > SIGMA_ENUM_CAP {
                return Err(Error::ExactEnumerationCapExceeded {
                    order,
                    cap: SIGMA_ENUM_CAP,
                });
            }
            (0..order as u32).collect()
        }
        SkewMode::Sampled { seed, count } => {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            (0..count).map(|_| rng.gen_range(0..order as u32)).collect()
        }
    };

    let sizes: Vec<usize> = sigmas
        .par_iter()
        .map_init(
            || vec![false; order],
            |scratch, &s| product_size_through(&group, a.indices(), b.indices(), s, scratch),
        )
        .collect();

    let mut max = 0usize;
    let mut argmax = u32::MAX;
    let mut min = usize::MAX;
    let mut recip = 0.0f64;
    for (&s, &size) in sigmas.iter().zip(&sizes) {
        if size > max || (size == max && s < argmax) {
            max = size;
            argmax = s;
        }
        min = min.min(size);
        recip += 1.0 / size as f64;
    }
    let mean_reciprocal = recip / sigmas.len() as f64;

    Ok(SkewReport {
        argmax,
        argmax_display: group.element(argmax).display(),
        max,
        min,
        mean_reciprocal,
        mode,
    })
}
