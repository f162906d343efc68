//! Experiment dispatch: build the group, execute the configured
//! experiments in order, and assemble the report.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, ensure, Context};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use growthlab_core::chartab::CharacterTable;
use growthlab_core::fourier::{mixed_moment, GroupFunction, SubsetG};
use growthlab_core::group::{build_group_with_cap, Group, GroupSpec, DEFAULT_ORDER_CAP};
use growthlab_core::growth::{
    char_growth_audit, class_concentration_audit, covering_estimate, growth_trajectory,
    skew_search, support_profile, umvirate_scan, wrapping_bound_audit, SigmaSelection, SkewMode,
};
use growthlab_core::perm::Perm;
use growthlab_core::prob::{
    disjoint_support_prob, disjoint_support_prob_mc, enumerate_support_class, order_probe,
    small_support_growth, xcount_moments, MCConfig,
};

use crate::cache::{table_cache, CacheStatus};
use crate::config::{
    build_set, parse_element, ClassSubset, Experiment, ExperimentConfig, SampledSigma,
};
use crate::report::{AuditRow, ExperimentOutcome, GroupSummary, Report, ResultBody, REPORT_SCHEMA};

struct Ctx {
    group: Arc<Group>,
    spec: GroupSpec,
    cache_dir: Option<std::path::PathBuf>,
    table: Option<CharacterTable>,
    cache_events: Vec<String>,
    set_a: Option<SubsetG>,
    set_b: Option<SubsetG>,
}

impl Ctx {
    fn table(&mut self) -> anyhow::Result<&CharacterTable> {
        if self.table.is_none() {
            let (table, status) = table_cache(&self.group, self.cache_dir.as_deref())?;
            if status != CacheStatus::Disabled {
                self.cache_events.push(status.describe(&self.group.name));
            }
            self.table = Some(table);
        }
        Ok(self.table.as_ref().unwrap())
    }

    fn set_a(&self) -> anyhow::Result<&SubsetG> {
        self.set_a
            .as_ref()
            .ok_or_else(|| anyhow!("experiment needs sets.a in the config"))
    }

    fn set_b(&self) -> anyhow::Result<&SubsetG> {
        self.set_b
            .as_ref()
            .ok_or_else(|| anyhow!("experiment needs sets.b in the config"))
    }

    /// Ambient degree for the A_n experiments: an explicit n, or the
    /// configured group when it is alternating.
    fn ambient_n(&self, n: Option<usize>) -> anyhow::Result<usize> {
        match n {
            Some(n) => Ok(n),
            None => match self.spec {
                GroupSpec::Alternating { n } => Ok(n),
                _ => bail!("this experiment needs an explicit n or an alternating group"),
            },
        }
    }
}

pub fn run(config: &ExperimentConfig, cache_dir: Option<&Path>) -> anyhow::Result<Report> {
    let started = Instant::now();
    ensure!(
        config.schema == 1,
        "unsupported config schema {}",
        config.schema
    );
    let cap = config.order_cap.unwrap_or(DEFAULT_ORDER_CAP);
    let group = build_group_with_cap(&config.group, cap)
        .with_context(|| format!("building {}", config.group.name()))?;
    let classes = group.classes();
    let summary = GroupSummary {
        name: group.name.clone(),
        order: group.order(),
        num_classes: classes.len(),
        class_sizes: classes.class_sizes(),
    };

    let mut ctx = Ctx {
        group: group.clone(),
        spec: config.group.clone(),
        cache_dir: cache_dir.map(|p| p.to_path_buf()),
        table: None,
        cache_events: Vec::new(),
        set_a: None,
        set_b: None,
    };
    if let Some(sets) = &config.sets {
        if let Some(spec) = &sets.a {
            ctx.set_a = Some(build_set(&group, spec).context("building sets.a")?);
        }
        if let Some(spec) = &sets.b {
            ctx.set_b = Some(build_set(&group, spec).context("building sets.b")?);
        }
    }

    let mut results = Vec::new();
    for exp in &config.experiments {
        let (pass, body) =
            execute(&mut ctx, exp).with_context(|| format!("experiment {}", exp.name()))?;
        results.push(ExperimentOutcome {
            name: exp.name().to_string(),
            pass,
            result: body,
        });
    }

    let verdict = if results.iter().all(|r| r.pass) {
        "pass"
    } else {
        "fail"
    };
    Ok(Report {
        schema: REPORT_SCHEMA,
        artifact_version: env!("CARGO_PKG_VERSION").to_string(),
        group: summary,
        config: config.clone(),
        results,
        verdict: verdict.to_string(),
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        cache_events: std::mem::take(&mut ctx.cache_events),
    })
}

/// The experiment registry proper.
fn execute(ctx: &mut Ctx, exp: &Experiment) -> anyhow::Result<(bool, ResultBody)> {
    match exp {
        Experiment::GlpsIdentity {
            pairs,
            seed,
            tolerance,
            brute_cap,
        } => glps(ctx, *pairs, *seed, *tolerance, *brute_cap),
        Experiment::Parseval {
            count,
            seed,
            tolerance,
        } => parseval(ctx, *count, *seed, *tolerance),
        Experiment::Adjointness {
            count,
            seed,
            tolerance,
        } => adjointness(ctx, *count, *seed, *tolerance),
        Experiment::TableAudit {} => table_audit(ctx),
        Experiment::WrappingAudit { instances, seed } => wrapping(ctx, *instances, *seed),
        Experiment::CharGrowthAudit {
            instances,
            seed,
            epsilons,
        } => char_growth(ctx, *instances, *seed, epsilons),
        Experiment::GluckScan {} => gluck(ctx),
        Experiment::LarsenTiepScan {} => larsen_tiep(ctx),
        Experiment::SchlagePuchtaScan {} => schlage_puchta(ctx),
        Experiment::SkewSearch { sampled } => skew(ctx, *sampled),
        Experiment::Trajectory { steps, sampled } => trajectory(ctx, *steps, *sampled),
        Experiment::Covering { max_steps } => covering(ctx, *max_steps),
        Experiment::SupportProfile { epsilon, exponent } => profile(ctx, *epsilon, *exponent),
        Experiment::ClassConcentration {
            concentration_exponent,
            growth_exponent,
        } => concentration(ctx, *concentration_exponent, *growth_exponent),
        Experiment::UmvirateScan {
            t_max,
            seed,
            a_exponent,
            b_exponent,
        } => umvirate(ctx, *t_max, *seed, *a_exponent, *b_exponent),
        Experiment::DisjointProb { n, m, r, mc } => disjoint(*n, *m, *r, mc.as_ref()),
        Experiment::Xcount {
            n,
            type_a,
            type_b,
            subset_a,
            subset_b,
            x,
            mc,
        } => xcount(
            ctx,
            *n,
            type_a,
            type_b,
            subset_a,
            subset_b,
            x.as_deref(),
            mc,
        ),
        Experiment::OrderProbe { a, a_prime, x, mc } => probe(ctx, a, a_prime, x, mc),
        Experiment::SmallSupportGrowth {
            n,
            type_a,
            type_b,
            subset_a,
            subset_b,
            mc,
        } => small_support(ctx, *n, type_a, type_b, subset_a, subset_b, mc),
    }
}

fn glps(
    ctx: &mut Ctx,
    pairs: usize,
    seed: u64,
    tolerance: f64,
    brute_cap: usize,
) -> anyhow::Result<(bool, ResultBody)> {
    let group = ctx.group.clone();
    ctx.table()?;
    let table = ctx.table.as_ref().unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut max_dev = 0.0f64;
    let mut checked = 0usize;
    for _ in 0..pairs {
        let f = GroupFunction::random(group.clone(), rng.gen());
        let g = GroupFunction::random(group.clone(), rng.gen());
        let m = mixed_moment(&f, &g, table, brute_cap)?;
        if let Some(gap) = m.relative_gap {
            max_dev = max_dev.max(gap);
            checked += 1;
        }
    }
    let pass = checked == pairs && max_dev <= tolerance;
    Ok((
        pass,
        ResultBody::IdentityBatch {
            cases: checked,
            max_deviation: max_dev,
            tolerance,
            relative: true,
        },
    ))
}

fn parseval(
    ctx: &mut Ctx,
    count: usize,
    seed: u64,
    tolerance: f64,
) -> anyhow::Result<(bool, ResultBody)> {
    let group = ctx.group.clone();
    ctx.table()?;
    let table = ctx.table.as_ref().unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut max_dev = 0.0f64;
    for _ in 0..count {
        let f = GroupFunction::random(group.clone(), rng.gen());
        let total: f64 = (0..table.num_chars())
            .map(|chi| f.project(table, chi).map(|p| p.norm(2).powi(2)))
            .sum::<Result<f64, _>>()?;
        max_dev = max_dev.max((total - f.norm(2).powi(2)).abs());
    }
    Ok((
        max_dev <= tolerance,
        ResultBody::IdentityBatch {
            cases: count,
            max_deviation: max_dev,
            tolerance,
            relative: false,
        },
    ))
}

fn adjointness(
    ctx: &mut Ctx,
    count: usize,
    seed: u64,
    tolerance: f64,
) -> anyhow::Result<(bool, ResultBody)> {
    let group = ctx.group.clone();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut max_dev = 0.0f64;
    for _ in 0..count {
        let f = GroupFunction::random(group.clone(), rng.gen());
        let g = GroupFunction::random(group.clone(), rng.gen());
        let h = GroupFunction::random(group.clone(), rng.gen());
        let lhs = f.convolve(&g)?.inner(&h)?;
        let rhs = g.inner(&f.flip().convolve(&h)?)?;
        max_dev = max_dev.max((lhs - rhs).norm());
    }
    Ok((
        max_dev <= tolerance,
        ResultBody::IdentityBatch {
            cases: count,
            max_deviation: max_dev,
            tolerance,
            relative: false,
        },
    ))
}

fn table_audit(ctx: &mut Ctx) -> anyhow::Result<(bool, ResultBody)> {
    ctx.table()?;
    let table = ctx.table.as_ref().unwrap();
    let report = table.verify();
    let degrees = table.degrees.iter().map(|d| d.round() as i64).collect();
    Ok((report.pass, ResultBody::TableAudit { degrees, report }))
}

fn wrapping(ctx: &mut Ctx, instances: usize, seed: u64) -> anyhow::Result<(bool, ResultBody)> {
    let group = ctx.group.clone();
    ctx.table()?;
    let table = ctx.table.as_ref().unwrap();
    let order = group.order();
    let trivial = table.trivial_char();
    let mut rows = Vec::with_capacity(instances);
    let mut falsifications = 0usize;
    let mut vacuous = 0usize;

    for i in 0..instances {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let size_a = rng.gen_range(1..=order / 2);
        let size_b = rng.gen_range(1..=order / 2);
        let a = SubsetG::random(group.clone(), size_a, rng.gen())?;
        let b = SubsetG::random(group.clone(), size_b, rng.gen())?;
        let s_chars: Vec<usize> = (0..table.num_chars())
            .filter(|&c| c != trivial && rng.gen_bool(0.75))
            .collect();

        let masses = a.density()?.projection_masses(table)?;
        let k_max = s_chars
            .iter()
            .map(|&c| {
                let d = table.degrees[c];
                if masses[c] <= 1e-12 {
                    order as f64
                } else {
                    d * d / masses[c]
                }
            })
            .fold(order as f64, f64::min);
        let u: f64 = rng.gen();
        let k = match i % 3 {
            0 => 1.0 + (k_max - 1.0) * u,
            1 => k_max * (1.0 + u),
            _ => 1.0,
        };
        let in_s: Vec<bool> = {
            let mut v = vec![false; table.num_chars()];
            for &c in &s_chars {
                v[c] = true;
            }
            v
        };
        let tail: f64 = (0..table.num_chars())
            .filter(|&c| !in_s[c])
            .map(|c| table.degrees[c] * table.degrees[c])
            .sum();
        let delta_floor = k * size_b as f64 * tail / order as f64;
        let u2: f64 = rng.gen();
        let delta = match i % 3 {
            1 => u2,
            _ => delta_floor * (1.0 + u2) + 1e-9,
        };

        let audit = wrapping_bound_audit(&a, &b, table, &s_chars, k, delta)?;
        if !audit.pass {
            falsifications += 1;
        }
        if !audit.hypotheses_hold {
            vacuous += 1;
        }
        rows.push(AuditRow::from((
            &audit,
            i,
            size_a,
            size_b,
            k,
            Some(delta),
            None,
        )));
    }
    Ok((
        falsifications == 0,
        ResultBody::AuditBatch {
            instances,
            falsifications,
            vacuous,
            rows,
        },
    ))
}

fn char_growth(
    ctx: &mut Ctx,
    instances: usize,
    seed: u64,
    epsilons: &[f64],
) -> anyhow::Result<(bool, ResultBody)> {
    let group = ctx.group.clone();
    ctx.table()?;
    let table = ctx.table.as_ref().unwrap();
    let order = group.order();
    let mut rows = Vec::new();
    let mut falsifications = 0usize;
    let mut vacuous = 0usize;
    for i in 0..instances {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let size_a = rng.gen_range(1..=order / 2);
        let a = SubsetG::random(group.clone(), size_a, rng.gen())?;
        for &eps in epsilons {
            let b_cap = (((order as f64).powf(1.0 - 2.0 * eps)).floor() as usize).clamp(1, order);
            let size_b = rng.gen_range(1..=b_cap.max(1));
            let b = SubsetG::random(group.clone(), size_b, rng.gen())?;
            let u: f64 = rng.gen();
            let k = (order as f64).powf(eps * u / 2.0) * 0.999;
            let audit = char_growth_audit(&a, &b, table, eps, k)?;
            if !audit.pass {
                falsifications += 1;
            }
            if !audit.hypotheses_hold {
                vacuous += 1;
            }
            rows.push(AuditRow::from((
                &audit,
                i,
                size_a,
                size_b,
                k,
                None,
                Some(eps),
            )));
        }
    }
    Ok((
        falsifications == 0,
        ResultBody::AuditBatch {
            instances: instances * epsilons.len(),
            falsifications,
            vacuous,
            rows,
        },
    ))
}

fn gluck(ctx: &mut Ctx) -> anyhow::Result<(bool, ResultBody)> {
    let GroupSpec::Psl2 { q } = ctx.spec else {
        bail!("gluck-scan needs a psl2 group");
    };
    ctx.table()?;
    let table = ctx.table.as_ref().unwrap();
    let classes = table.classes.clone();
    let trivial = table.trivial_char();
    let mut max_ratio = 0.0f64;
    let mut arg = (0usize, 0usize);
    for t in 0..table.num_chars() {
        if t == trivial {
            continue;
        }
        for k in 0..classes.len() {
            if k == classes.identity_class {
                continue;
            }
            let ratio = table.value(t, k).norm() / table.degrees[t];
            if ratio > max_ratio {
                max_ratio = ratio;
                arg = (t, k);
            }
        }
    }
    let c_hat = -max_ratio.ln() / (q as f64).ln();
    let pass = max_ratio < 1.0 && c_hat > 0.0;
    Ok((
        pass,
        ResultBody::CharacterScan {
            max_ratio: Some(max_ratio),
            fitted_exponent: c_hat,
            argmin_character: arg.0,
            argmin_class: arg.1,
            detail: format!("q = {q}; bound |chi(g)| <= chi(1)/q^c"),
        },
    ))
}

fn larsen_tiep(ctx: &mut Ctx) -> anyhow::Result<(bool, ResultBody)> {
    let group = ctx.group.clone();
    ctx.table()?;
    let table = ctx.table.as_ref().unwrap();
    let classes = table.classes.clone();
    let order = group.order() as f64;
    let mut fit = f64::INFINITY;
    let mut arg = (0usize, 0usize);
    for t in 0..table.num_chars() {
        let d = table.degrees[t];
        if d <= 1.0 + 1e-9 {
            continue;
        }
        for k in 0..classes.len() {
            let class_size = classes.classes[k].size() as f64;
            if k == classes.identity_class || class_size <= 1.0 {
                continue;
            }
            let v = table.value(t, k).norm();
            if v <= 1e-12 {
                continue;
            }
            let c = (1.0 - v.ln() / d.ln()) * order.ln() / class_size.ln();
            if c < fit {
                fit = c;
                arg = (t, k);
            }
        }
    }
    Ok((
        fit > 0.0,
        ResultBody::CharacterScan {
            max_ratio: None,
            fitted_exponent: fit,
            argmin_character: arg.0,
            argmin_class: arg.1,
            detail: "bound |chi(g)| <= chi(1)^(1 - c·log|g^G|/log|G|)".into(),
        },
    ))
}

fn schlage_puchta(ctx: &mut Ctx) -> anyhow::Result<(bool, ResultBody)> {
    let group = ctx.group.clone();
    let n = group
        .permutation_degree()
        .ok_or_else(|| anyhow!("schlage-puchta-scan needs a permutation group"))?;
    ctx.table()?;
    let table = ctx.table.as_ref().unwrap();
    let classes = table.classes.clone();
    let scale = n as f64 * (n as f64).ln();
    let mut fit = f64::INFINITY;
    let mut arg = (0usize, 0usize);
    for t in 0..table.num_chars() {
        let d = table.degrees[t];
        if d <= 1.0 + 1e-9 {
            continue;
        }
        for k in 0..classes.len() {
            if k == classes.identity_class {
                continue;
            }
            let s = group.perm(classes.classes[k].rep)?.support_size() as f64;
            let v = table.value(t, k).norm();
            if v <= 1e-12 {
                continue;
            }
            let c = (1.0 - v.ln() / d.ln()) * scale / s;
            if c < fit {
                fit = c;
                arg = (t, k);
            }
        }
    }
    Ok((
        fit > 0.0,
        ResultBody::CharacterScan {
            max_ratio: None,
            fitted_exponent: fit,
            argmin_character: arg.0,
            argmin_class: arg.1,
            detail: format!("bound |chi(s)| <= chi(1)^(1 - c·support/(n log n)), n = {n}"),
        },
    ))
}

fn skew(ctx: &mut Ctx, sampled: Option<SampledSigma>) -> anyhow::Result<(bool, ResultBody)> {
    let a = ctx.set_a()?;
    let b = ctx.set_b()?;
    let mode = match sampled {
        None => SkewMode::Exact,
        Some(SampledSigma { seed, count }) => SkewMode::Sampled { seed, count },
    };
    let rep = skew_search(a, b, mode)?;
    let pass =
        rep.max >= a.len().max(b.len()) && rep.mean_reciprocal >= 1.0 / rep.max as f64 - 1e-12;
    Ok((pass, ResultBody::Skew(rep)))
}

fn trajectory(
    ctx: &mut Ctx,
    steps: usize,
    sampled: Option<SampledSigma>,
) -> anyhow::Result<(bool, ResultBody)> {
    let a = ctx.set_a()?;
    let selection = match sampled {
        None => SigmaSelection::Exact,
        Some(SampledSigma { seed, count }) => SigmaSelection::Sampled { seed, count },
    };
    let t = growth_trajectory(a, steps, selection)?;
    let mut prev = t.initial_size;
    let mut monotone = true;
    for s in &t.steps {
        monotone &= s.size >= prev;
        prev = s.size;
    }
    Ok((monotone, ResultBody::Trajectory(t)))
}

fn covering(ctx: &mut Ctx, max_steps: usize) -> anyhow::Result<(bool, ResultBody)> {
    let a = ctx.set_a()?;
    let rep = covering_estimate(a, max_steps)?;
    let pass = match (rep.upper, rep.exact) {
        (Some(u), Some(e)) => u >= e,
        _ => true,
    };
    Ok((pass, ResultBody::Covering(rep)))
}

fn profile(ctx: &mut Ctx, epsilon: f64, exponent: f64) -> anyhow::Result<(bool, ResultBody)> {
    let a = ctx.set_a()?;
    let rep = support_profile(a, epsilon, exponent)?;
    Ok((true, ResultBody::SupportProfile(rep)))
}

fn concentration(
    ctx: &mut Ctx,
    concentration_exponent: f64,
    growth_exponent: f64,
) -> anyhow::Result<(bool, ResultBody)> {
    let a = ctx.set_a()?.clone();
    let b = ctx.set_b()?.clone();
    let classes = ctx.group.classes();
    let rep = class_concentration_audit(&a, &b, &classes, concentration_exponent, growth_exponent)?;
    Ok((rep.audit.pass, ResultBody::ClassConcentration(rep)))
}

fn umvirate(
    ctx: &mut Ctx,
    t_max: usize,
    seed: u64,
    a_exponent: f64,
    b_exponent: f64,
) -> anyhow::Result<(bool, ResultBody)> {
    let a = ctx.set_a()?;
    let rep = umvirate_scan(a, t_max, ctx.set_b.as_ref(), seed, a_exponent, b_exponent)?;
    Ok((true, ResultBody::Umvirate(rep)))
}

fn disjoint(
    n: usize,
    m: usize,
    r: usize,
    mc: Option<&MCConfig>,
) -> anyhow::Result<(bool, ResultBody)> {
    let exact = disjoint_support_prob(n, m, r);
    let (mc_estimate, mc_standard_error, within) = match mc {
        Some(cfg) => {
            cfg.validate()?;
            let (est, se) = disjoint_support_prob_mc(n, m, r, cfg);
            let ok = (est - exact.value).abs() <= 4.0 * se.max(1e-12);
            (Some(est), Some(se), Some(ok))
        }
        None => (None, None, None),
    };
    Ok((
        within.unwrap_or(true),
        ResultBody::DisjointProb {
            exact,
            mc_estimate,
            mc_standard_error,
            within_4_se: within,
        },
    ))
}

fn class_subset(n: usize, support_type: &[usize], spec: &ClassSubset) -> anyhow::Result<Vec<Perm>> {
    let full = enumerate_support_class(n, support_type)?;
    match spec {
        ClassSubset::Full => Ok(full),
        ClassSubset::Random { size, seed } => {
            ensure!(
                *size >= 1 && *size <= full.len(),
                "subset size {size} out of range 1..={}",
                full.len()
            );
            let mut pool = full;
            let mut rng = ChaCha12Rng::seed_from_u64(*seed);
            let len = pool.len();
            for i in 0..*size {
                let j = rng.gen_range(i..len);
                pool.swap(i, j);
            }
            pool.truncate(*size);
            Ok(pool)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn xcount(
    ctx: &mut Ctx,
    n: Option<usize>,
    type_a: &[usize],
    type_b: &[usize],
    subset_a: &ClassSubset,
    subset_b: &ClassSubset,
    x: Option<&[u8]>,
    mc: &MCConfig,
) -> anyhow::Result<(bool, ResultBody)> {
    let n = ctx.ambient_n(n)?;
    let a = class_subset(n, type_a, subset_a)?;
    let b = class_subset(n, type_b, subset_b)?;
    let x = match x {
        Some(images) => {
            let p = Perm(images.to_vec());
            ensure!(
                p.is_valid() && p.degree() == n,
                "x must be a permutation of {n} points"
            );
            p
        }
        None => {
            let sum = growthlab_core::prob::direct_sum_type(n, type_a, type_b)?;
            let full = growthlab_core::prob::full_cycle_type(n, &sum)?;
            Perm::canonical_of_type(n, &full)
        }
    };
    let rep = xcount_moments(n, &a, type_a, &b, type_b, &x, mc)?;
    let mut pass = true;
    if let Some(en) = rep.enumerated_mean {
        pass &= (rep.formula_mean - en).abs() <= 1e-9 * rep.formula_mean.max(1.0);
    }
    if !rep.degenerate {
        pass &= (rep.estimate_mean - rep.formula_mean).abs() <= 4.0 * rep.mean_se.max(1e-12);
        if let (Some(freq), Some(_)) = (rep.exact_event_prob, rep.exact_second) {
            pass &= freq + 1e-9 >= rep.pz_bound;
        }
    }
    Ok((pass, ResultBody::Moments(rep)))
}

fn probe(
    ctx: &mut Ctx,
    a: &serde_json::Value,
    a_prime: &serde_json::Value,
    x: &serde_json::Value,
    mc: &MCConfig,
) -> anyhow::Result<(bool, ResultBody)> {
    let group = ctx.group.clone();
    let a = parse_element(&group, a)?;
    let a_prime = parse_element(&group, a_prime)?;
    let x = parse_element(&group, x)?;
    let rep = order_probe(&group, a, a_prime, x, mc)?;
    let mut pass = rep.within_bound;
    if !rep.agree_on_intersection {
        pass &= rep.estimate == 0.0;
    }
    Ok((pass, ResultBody::OrderProbe(rep)))
}

fn small_support(
    ctx: &mut Ctx,
    n: Option<usize>,
    type_a: &[usize],
    type_b: &[usize],
    subset_a: &ClassSubset,
    subset_b: &ClassSubset,
    mc: &MCConfig,
) -> anyhow::Result<(bool, ResultBody)> {
    let n = ctx.ambient_n(n)?;
    let a = class_subset(n, type_a, subset_a)?;
    let b = class_subset(n, type_b, subset_b)?;
    let rep = small_support_growth(n, &a, type_a, &b, type_b, mc)?;
    Ok((rep.pair_count_within_4se, ResultBody::SmallSupport(rep)))
}
