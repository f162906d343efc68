//! Conditional-order probe: given a^σ fixed at a realization below x, how
//! often does a second class element a' land below x as well? The
//! conditioning coset is C_a·σ₀ with C_a the centralizer of a and σ₀ the
//! first conjugator (in element-index order) realizing a^σ₀ <= x.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::prob::{sub_permutation_leq, MCConfig};

#[derive(Debug, Clone, Serialize)]
pub struct OrderProbeReport {
    /// Pr[a'^σ <= x] over σ in the coset C_a·σ₀.
    pub estimate: f64,
    pub standard_error: f64,
    /// Enumerated the whole coset instead of sampling.
    pub exact: bool,
    /// Number of coordinates where a and a' disagree (always even when
    /// they agree on the intersection of their supports).
    pub disagreements: usize,
    /// ℓ with 2ℓ = disagreements, when defined.
    pub ell: Option<usize>,
    /// (1/(n-2m))^{ℓ/2}; infinite when n <= 2m + 1.
    pub claim_bound: f64,
    /// a and a' agree on the intersection of their supports; when false
    /// the probability is exactly zero.
    pub agree_on_intersection: bool,
    pub within_bound: bool,
    /// The recorded σ₀ (smallest-index realization of a^σ₀ <= x).
    pub sigma0: u32,
    pub sigma0_display: String,
    pub centralizer_size: usize,
    pub samples: usize,
    pub seed: u64,
}

pub fn order_probe(
    group: &Group,
    a: u32,
    a_prime: u32,
    x: u32,
    cfg: &MCConfig,
) -> Result<OrderProbeReport> {
    cfg.validate()?;
    let classes = group.classes();
    if classes.class_of[a as usize] != classes.class_of[a_prime as usize] {
        return Err(Error::DifferentClasses);
    }
    let pa = group.perm(a)?.clone();
    let pa_prime = group.perm(a_prime)?.clone();
    let px = group.perm(x)?.clone();
    let n = pa.degree();
    let m = pa.support_size();

    let disagreements = (0..n as u8)
        .filter(|&i| pa.apply(i) != pa_prime.apply(i))
        .count();
    let agree_on_intersection = (0..n as u8)
        .all(|i| pa.apply(i) == i || pa_prime.apply(i) == i || pa.apply(i) == pa_prime.apply(i));
    let ell = if disagreements % 2 == 0 {
        Some(disagreements / 2)
    } else {
        None
    };
    let claim_bound = match ell {
        Some(l) if n > 2 * m + 1 => (1.0 / (n - 2 * m) as f64).powf(l as f64 / 2.0),
        _ => f64::INFINITY,
    };

    // first conjugator realizing a^σ₀ <= x, in index order
    let sigma0 = (0..group.order() as u32)
        .find(|&s| {
            let conj = group
                .perm(group.conjugate(a, s))
                .expect("permutation group");
            sub_permutation_leq(conj, &px)
        })
        .ok_or(Error::NoRealization)?;

    // centralizer of a, by scanning the group
    let centralizer: Vec<u32> = (0..group.order() as u32)
        .filter(|&g| group.mul(g, a) == group.mul(a, g))
        .collect();

    // exact zero case, never approximated
    if !agree_on_intersection {
        return Ok(OrderProbeReport {
            estimate: 0.0,
            standard_error: 0.0,
            exact: true,
            disagreements,
            ell,
            claim_bound,
            agree_on_intersection,
            within_bound: true,
            sigma0,
            sigma0_display: group.element(sigma0).display(),
            centralizer_size: centralizer.len(),
            samples: 0,
            seed: cfg.seed,
        });
    }

    let leq_through = |c: u32| -> bool {
        let sigma = group.mul(c, sigma0);
        let conj = group
            .perm(group.conjugate(a_prime, sigma))
            .expect("permutation group");
        sub_permutation_leq(conj, &px)
    };

    let exact = group.order() <= cfg.exact_threshold;
    let (estimate, standard_error, samples) = if exact {
        let hits = centralizer.iter().filter(|&&c| leq_through(c)).count();
        (
            hits as f64 / centralizer.len() as f64,
            0.0,
            centralizer.len(),
        )
    } else {
        let mut rng = cfg.stream(0);
        let mut hits = 0usize;
        for _ in 0..cfg.samples {
            let c = centralizer[rng.gen_range(0..centralizer.len())];
            if leq_through(c) {
                hits += 1;
            }
        }
        let p = hits as f64 / cfg.samples as f64;
        let se = (p * (1.0 - p) / cfg.samples as f64).sqrt();
        (p, se, cfg.samples)
    };

    Ok(OrderProbeReport {
        estimate,
        standard_error,
        exact,
        disagreements,
        ell,
        claim_bound,
        agree_on_intersection,
        within_bound: estimate <= claim_bound + 4.0 * standard_error,
        sigma0,
        sigma0_display: group.element(sigma0).display(),
        centralizer_size: centralizer.len(),
        samples,
        seed: cfg.seed,
    })
}
