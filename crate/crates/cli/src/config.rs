//! Experiment configuration: one JSON document naming a group, optional
//! sets A and B, and an ordered list of experiments.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::sync::Arc;

use growthlab_core::fourier::SubsetG;
use growthlab_core::group::{Elem, Group, GroupSpec};
use growthlab_core::perm::Perm;
use growthlab_core::prob::MCConfig;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default = "default_schema")]
    pub schema: u64,
    pub group: GroupSpec,
    /// Overrides the default 10^5 element-universe cap.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_cap: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sets: Option<SetBindings>,
    pub experiments: Vec<Experiment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

fn default_schema() -> u64 {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetBindings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<SetSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<SetSpec>,
}

/// Set constructor. Every random constructor carries an explicit seed.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SetSpec {
    /// Elements in the group's native encoding: permutations as 0-based
    /// image arrays, PSL(2,q) as [[a,b],[c,d]], Cayley as indices.
    Explicit {
        elements: Vec<Value>,
    },
    /// Conjugacy class by cycle type ([3,3,1,1] style, 1s included), by
    /// class index, or by a representative element. Cycle types matching
    /// two split classes resolve to the one holding the lex-least element.
    Class {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cycle_type: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        index: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        representative: Option<Value>,
    },
    Random {
        size: usize,
        seed: u64,
    },
    RandomSupportBounded {
        size: usize,
        max_support: usize,
        seed: u64,
    },
    /// Left coset representative·⟨generators⟩.
    Coset {
        generators: Vec<Value>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        representative: Option<Value>,
    },
}

/// Subset-of-a-class constructor for the second-moment experiments.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassSubset {
    Full,
    Random { size: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Experiment {
    GlpsIdentity {
        #[serde(default = "default_fifty")]
        pairs: usize,
        seed: u64,
        #[serde(default = "default_glps_tol")]
        tolerance: f64,
        #[serde(default = "default_brute_cap")]
        brute_cap: usize,
    },
    Parseval {
        #[serde(default = "default_fifty")]
        count: usize,
        seed: u64,
        #[serde(default = "default_exact_tol")]
        tolerance: f64,
    },
    Adjointness {
        #[serde(default = "default_fifty")]
        count: usize,
        seed: u64,
        #[serde(default = "default_exact_tol")]
        tolerance: f64,
    },
    TableAudit {},
    WrappingAudit {
        #[serde(default = "default_two_hundred")]
        instances: usize,
        seed: u64,
    },
    CharGrowthAudit {
        #[serde(default = "default_forty")]
        instances: usize,
        seed: u64,
        epsilons: Vec<f64>,
    },
    GluckScan {},
    LarsenTiepScan {},
    SchlagePuchtaScan {},
    SkewSearch {
        #[serde(default)]
        sampled: Option<SampledSigma>,
    },
    Trajectory {
        steps: usize,
        #[serde(default)]
        sampled: Option<SampledSigma>,
    },
    Covering {
        #[serde(default = "default_twelve")]
        max_steps: usize,
    },
    SupportProfile {
        epsilon: f64,
        #[serde(default = "default_point_nine")]
        exponent: f64,
    },
    ClassConcentration {
        #[serde(default = "default_point_nine")]
        concentration_exponent: f64,
        #[serde(default = "default_point_o_five")]
        growth_exponent: f64,
    },
    UmvirateScan {
        t_max: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default = "default_point_eight")]
        a_exponent: f64,
        #[serde(default = "default_point_two")]
        b_exponent: f64,
    },
    DisjointProb {
        n: usize,
        m: usize,
        r: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mc: Option<MCConfig>,
    },
    Xcount {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        type_a: Vec<usize>,
        type_b: Vec<usize>,
        subset_a: ClassSubset,
        subset_b: ClassSubset,
        /// "canonical" places the two types on disjoint leading points.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        x: Option<Vec<u8>>,
        mc: MCConfig,
    },
    OrderProbe {
        a: Value,
        a_prime: Value,
        x: Value,
        mc: MCConfig,
    },
    SmallSupportGrowth {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        type_a: Vec<usize>,
        type_b: Vec<usize>,
        subset_a: ClassSubset,
        subset_b: ClassSubset,
        mc: MCConfig,
    },
}

fn default_fifty() -> usize {
    50
}
fn default_forty() -> usize {
    40
}
fn default_two_hundred() -> usize {
    200
}
fn default_twelve() -> usize {
    12
}
fn default_glps_tol() -> f64 {
    1e-6
}
fn default_exact_tol() -> f64 {
    1e-9
}
fn default_brute_cap() -> usize {
    360
}
fn default_point_nine() -> f64 {
    0.9
}
fn default_point_o_five() -> f64 {
    0.05
}
fn default_point_eight() -> f64 {
    0.8
}
fn default_point_two() -> f64 {
    0.2
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SampledSigma {
    pub seed: u64,
    pub count: usize,
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::GlpsIdentity { .. } => "glps-identity",
            Experiment::Parseval { .. } => "parseval",
            Experiment::Adjointness { .. } => "adjointness",
            Experiment::TableAudit {} => "table-audit",
            Experiment::WrappingAudit { .. } => "wrapping-audit",
            Experiment::CharGrowthAudit { .. } => "char-growth-audit",
            Experiment::GluckScan {} => "gluck-scan",
            Experiment::LarsenTiepScan {} => "larsen-tiep-scan",
            Experiment::SchlagePuchtaScan {} => "schlage-puchta-scan",
            Experiment::SkewSearch { .. } => "skew-search",
            Experiment::Trajectory { .. } => "trajectory",
            Experiment::Covering { .. } => "covering",
            Experiment::SupportProfile { .. } => "support-profile",
            Experiment::ClassConcentration { .. } => "class-concentration",
            Experiment::UmvirateScan { .. } => "umvirate-scan",
            Experiment::DisjointProb { .. } => "disjoint-prob",
            Experiment::Xcount { .. } => "xcount",
            Experiment::OrderProbe { .. } => "order-probe",
            Experiment::SmallSupportGrowth { .. } => "small-support-growth",
        }
    }
}

/// Parse one element in the group's native JSON encoding. Matrices are
/// accepted in any projective scaling.
pub fn parse_element(group: &Arc<Group>, value: &Value) -> anyhow::Result<u32> {
    let elem = if let Some(n) = group.permutation_degree() {
        let images: Vec<u8> = serde_json::from_value(value.clone())?;
        anyhow::ensure!(images.len() == n, "permutation must have {n} images");
        let p = Perm(images);
        anyhow::ensure!(p.is_valid(), "image array is not a bijection");
        Elem::Perm(p)
    } else if let Some(idx) = value.as_u64() {
        Elem::Idx(idx as u32)
    } else {
        let rows: [[u16; 2]; 2] = serde_json::from_value(value.clone())?;
        group.canonicalize_matrix([rows[0][0], rows[0][1], rows[1][0], rows[1][1]])?
    };
    group
        .index_of(&elem)
        .ok_or_else(|| anyhow::anyhow!("element {} not in {}", elem.display(), group.name))
}

/// Materialize a set constructor.
pub fn build_set(group: &Arc<Group>, spec: &SetSpec) -> anyhow::Result<SubsetG> {
    match spec {
        SetSpec::Explicit { elements } => {
            let indices = elements
                .iter()
                .map(|v| parse_element(group, v))
                .collect::<anyhow::Result<Vec<u32>>>()?;
            Ok(SubsetG::new(group.clone(), indices)?)
        }
        SetSpec::Class {
            cycle_type,
            index,
            representative,
        } => {
            let classes = group.classes();
            let class_idx = if let Some(i) = index {
                anyhow::ensure!(*i < classes.len(), "class index {i} out of range");
                *i
            } else if let Some(rep) = representative {
                let e = parse_element(group, rep)?;
                classes.class_of[e as usize] as usize
            } else if let Some(ct) = cycle_type {
                let n = group
                    .permutation_degree()
                    .ok_or_else(|| anyhow::anyhow!("cycle types need a permutation group"))?;
                anyhow::ensure!(
                    ct.iter().sum::<usize>() == n,
                    "cycle type must be a partition of {n}"
                );
                let mut sorted = ct.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                // the class holding the lex-least element of this type
                (0..group.order() as u32)
                    .find(|&i| group.perm(i).unwrap().cycle_type() == sorted)
                    .map(|i| classes.class_of[i as usize] as usize)
                    .ok_or_else(|| anyhow::anyhow!("no element of cycle type {sorted:?}"))?
            } else {
                anyhow::bail!("class spec needs cycle_type, index, or representative");
            };
            Ok(SubsetG::new(
                group.clone(),
                classes.classes[class_idx].members.clone(),
            )?)
        }
        SetSpec::Random { size, seed } => Ok(SubsetG::random(group.clone(), *size, *seed)?),
        SetSpec::RandomSupportBounded {
            size,
            max_support,
            seed,
        } => Ok(SubsetG::random_support_bounded(
            group.clone(),
            *size,
            *max_support,
            *seed,
        )?),
        SetSpec::Coset {
            generators,
            representative,
        } => {
            let gens = generators
                .iter()
                .map(|v| parse_element(group, v))
                .collect::<anyhow::Result<Vec<u32>>>()?;
            let rep = match representative {
                Some(v) => parse_element(group, v)?,
                None => group.identity(),
            };
            Ok(SubsetG::subgroup_coset(group.clone(), &gens, rep)?)
        }
    }
}
