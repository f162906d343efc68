//! The function algebra on a finite group: densities, convolution under
//! the normalized Haar convention, matrix-coefficient projections, and
//! the generalized Frobenius formula.
//!
//! Conventions, used verbatim everywhere:
//!   ⟨f,g⟩  = (1/|G|) Σ_σ f(σ) conj(g(σ))
//!   f∗g(x) = E_y[f(y) g(y⁻¹x)]
//!   f′(σ)  = conj(f(σ⁻¹))
//!   f^σ(τ) = f(τσ)
//!   f^{=χ} = χ(1)·f∗χ   (projection onto the matrix-coefficient space)

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::group::Group;

/// Subset A ⊆ G as a sorted index set.
#[derive(Clone)]
pub struct SubsetG {
    group: Arc<Group>,
    indices: Vec<u32>,
}

impl std::fmt::Debug for SubsetG {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SubsetG(|A|={} of {})",
            self.indices.len(),
            self.group.name
        )
    }
}

impl SubsetG {
    pub fn new(group: Arc<Group>, mut indices: Vec<u32>) -> Result<SubsetG> {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&max) = indices.last() {
            if max as usize >= group.order() {
                return Err(Error::IndexOutOfRange {
                    index: max,
                    order: group.order(),
                });
            }
        }
        Ok(SubsetG { group, indices })
    }

    pub fn full(group: Arc<Group>) -> SubsetG {
        let indices = (0..group.order() as u32).collect();
        SubsetG { group, indices }
    }

    pub fn singleton(group: Arc<Group>, index: u32) -> Result<SubsetG> {
        SubsetG::new(group, vec![index])
    }

    /// Seeded uniform random k-subset (partial Fisher–Yates).
    pub fn random(group: Arc<Group>, k: usize, seed: u64) -> Result<SubsetG> {
        let order = group.order();
        if k == 0 || k > order {
            return Err(Error::EmptySubset);
        }
        let mut pool: Vec<u32> = (0..order as u32).collect();
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        for i in 0..k {
            let j = rng.gen_range(i..order);
            pool.swap(i, j);
        }
        SubsetG::new(group, pool[..k].to_vec())
    }

    /// Seeded random k-subset among permutation elements of support <= max_support.
    pub fn random_support_bounded(
        group: Arc<Group>,
        k: usize,
        max_support: usize,
        seed: u64,
    ) -> Result<SubsetG> {
        let mut pool: Vec<u32> = (0..group.order() as u32)
            .filter(|&i| {
                group
                    .perm(i)
                    .map(|p| p.support_size() <= max_support)
                    .unwrap_or(false)
            })
            .collect();
        if group.permutation_degree().is_none() {
            return Err(Error::NotPermutationGroup);
        }
        if k == 0 || k > pool.len() {
            return Err(Error::EmptySubset);
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let len = pool.len();
        for i in 0..k {
            let j = rng.gen_range(i..len);
            pool.swap(i, j);
        }
        SubsetG::new(group, pool[..k].to_vec())
    }

    /// Left coset rep·⟨gens⟩.
    pub fn subgroup_coset(group: Arc<Group>, gens: &[u32], rep: u32) -> Result<SubsetG> {
        let order = group.order();
        let mut seen = vec![false; order];
        let e = group.identity();
        seen[e as usize] = true;
        let mut members = vec![e];
        let mut queue = vec![e];
        while let Some(g) = queue.pop() {
            for &s in gens {
                let h = group.mul(g, s);
                if !seen[h as usize] {
                    seen[h as usize] = true;
                    members.push(h);
                    queue.push(h);
                }
            }
        }
        let coset = members.iter().map(|&h| group.mul(rep, h)).collect();
        SubsetG::new(group, coset)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// μ(A) = |A|/|G|.
    pub fn density_value(&self) -> f64 {
        self.len() as f64 / self.group.order() as f64
    }

    /// A⁻¹.
    pub fn inverse_set(&self) -> SubsetG {
        let indices = self.indices.iter().map(|&a| self.group.inv(a)).collect();
        SubsetG::new(self.group.clone(), indices).expect("indices stay in range")
    }

    /// A^s = {s⁻¹ a s}.
    pub fn conjugate_set(&self, s: u32) -> SubsetG {
        let indices = self
            .indices
            .iter()
            .map(|&a| self.group.conjugate(a, s))
            .collect();
        SubsetG::new(self.group.clone(), indices).expect("indices stay in range")
    }

    /// g·A.
    pub fn translate_left(&self, g: u32) -> SubsetG {
        let indices = self.indices.iter().map(|&a| self.group.mul(g, a)).collect();
        SubsetG::new(self.group.clone(), indices).expect("indices stay in range")
    }

    /// A·g.
    pub fn translate_right(&self, g: u32) -> SubsetG {
        let indices = self.indices.iter().map(|&a| self.group.mul(a, g)).collect();
        SubsetG::new(self.group.clone(), indices).expect("indices stay in range")
    }

    /// The density function 1_A/μ(A): |G|/|A| on A, zero elsewhere.
    pub fn density(&self) -> Result<GroupFunction> {
        if self.indices.is_empty() {
            return Err(Error::EmptySubset);
        }
        let order = self.group.order();
        let v = order as f64 / self.indices.len() as f64;
        let mut values = vec![Complex64::new(0.0, 0.0); order];
        for &i in &self.indices {
            values[i as usize] = Complex64::new(v, 0.0);
        }
        Ok(GroupFunction {
            group: self.group.clone(),
            values,
        })
    }
}

/// Complex-valued function on G, stored densely by element index.
#[derive(Clone)]
pub struct GroupFunction {
    group: Arc<Group>,
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn from_values(group: Arc<Group>, values: Vec<Complex64>) -> Result<GroupFunction> {
        if values.len() != group.order() {
            return Err(Error::IndexOutOfRange {
                index: values.len() as u32,
                order: group.order(),
            });
        }
        Ok(GroupFunction { group, values })
    }

    pub fn constant(group: Arc<Group>, c: Complex64) -> GroupFunction {
        let values = vec![c; group.order()];
        GroupFunction { group, values }
    }

    /// Seeded random function with re, im uniform in (-1, 1).
    pub fn random(group: Arc<Group>, seed: u64) -> GroupFunction {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let values = (0..group.order())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        GroupFunction { group, values }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, i: u32) -> Complex64 {
        self.values[i as usize]
    }

    fn same_group(&self, other: &GroupFunction) -> Result<()> {
        if self.group.id() != other.group.id() {
            return Err(Error::MixedGroups);
        }
        Ok(())
    }

    /// ⟨f,g⟩ = (1/|G|) Σ f·conj(g).
    pub fn inner(&self, other: &GroupFunction) -> Result<Complex64> {
        self.same_group(other)?;
        let n = self.values.len() as f64;
        let sum: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        Ok(sum / n)
    }

    /// ‖f‖_p for p in {1, 2}; use `norm_inf` for p = ∞.
    pub fn norm(&self, p: u32) -> f64 {
        let n = self.values.len() as f64;
        match p {
            1 => self.values.iter().map(|z| z.norm()).sum::<f64>() / n,
            2 => (self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() / n).sqrt(),
            _ => panic!("norm(p) supports p = 1, 2"),
        }
    }

    pub fn norm_inf(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// E[f] = ⟨f, 1⟩.
    pub fn mean(&self) -> Complex64 {
        let n = self.values.len() as f64;
        self.values.iter().sum::<Complex64>() / n
    }

    /// f∗g(x) = E_y[f(y) g(y⁻¹x)], exact dense O(|G|²).
    pub fn convolve(&self, other: &GroupFunction) -> Result<GroupFunction> {
        self.same_group(other)?;
        Ok(GroupFunction {
            group: self.group.clone(),
            values: convolve_values(&self.group, &self.values, &other.values),
        })
    }

    /// f′(σ) = conj(f(σ⁻¹)); an involution.
    pub fn flip(&self) -> GroupFunction {
        let values = (0..self.values.len() as u32)
            .map(|i| self.values[self.group.inv(i) as usize].conj())
            .collect();
        GroupFunction {
            group: self.group.clone(),
            values,
        }
    }

    /// f^σ(τ) = f(τσ).
    pub fn right_translate(&self, s: u32) -> GroupFunction {
        let values = (0..self.values.len() as u32)
            .map(|t| self.values[self.group.mul(t, s) as usize])
            .collect();
        GroupFunction {
            group: self.group.clone(),
            values,
        }
    }

    pub fn add(&self, other: &GroupFunction) -> Result<GroupFunction> {
        self.same_group(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(GroupFunction {
            group: self.group.clone(),
            values,
        })
    }

    pub fn sub(&self, other: &GroupFunction) -> Result<GroupFunction> {
        self.same_group(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(GroupFunction {
            group: self.group.clone(),
            values,
        })
    }

    fn check_table(&self, table: &CharacterTable) -> Result<()> {
        if table.group_id() != self.group.id() {
            return Err(Error::MixedGroups);
        }
        if !table.is_verified() {
            return Err(Error::UnverifiedTable);
        }
        Ok(())
    }

    /// f^{=χ} = χ(1)·f∗χ, the orthogonal projection onto W_χ.
    pub fn project(&self, table: &CharacterTable, chi: usize) -> Result<GroupFunction> {
        self.check_table(table)?;
        let chi_vec = table.dense_char(chi);
        let mut values = convolve_values(&self.group, &self.values, chi_vec);
        let d = table.degrees[chi];
        for v in values.iter_mut() {
            *v *= d;
        }
        Ok(GroupFunction {
            group: self.group.clone(),
            values,
        })
    }

    /// ‖f^{=χ}‖₂² = χ(1)·Re⟨f′∗f, χ⟩, without forming the projection.
    pub fn projection_mass(&self, table: &CharacterTable, chi: usize) -> Result<f64> {
        Ok(self.projection_masses(table)?[chi])
    }

    /// All masses at once; f′∗f is convolved a single time.
    pub fn projection_masses(&self, table: &CharacterTable) -> Result<Vec<f64>> {
        self.check_table(table)?;
        let auto = convolve_values(&self.group, &self.flip().values, &self.values);
        let n = auto.len() as f64;
        let r = table.num_chars();
        // ⟨f′∗f, χ⟩ per class, then per character
        let classes = &table.classes;
        let mut class_sums = vec![Complex64::new(0.0, 0.0); classes.len()];
        for (x, v) in auto.iter().enumerate() {
            class_sums[classes.class_of[x] as usize] += v;
        }
        Ok((0..r)
            .map(|t| {
                let inner: Complex64 = (0..classes.len())
                    .map(|k| class_sums[k] * table.value(t, k).conj())
                    .sum::<Complex64>()
                    / n;
                table.degrees[t] * inner.re
            })
            .collect())
    }
}

fn convolve_values(group: &Group, f: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    let order = f.len();
    let mut out = vec![Complex64::new(0.0, 0.0); order];
    for y in 0..order as u32 {
        let fy = f[y as usize];
        if fy.norm_sqr() == 0.0 {
            continue;
        }
        // x = y·z runs over G as z does
        for z in 0..order as u32 {
            let x = group.mul(y, z);
            out[x as usize] += fy * g[z as usize];
        }
    }
    let n = order as f64;
    for v in out.iter_mut() {
        *v /= n;
    }
    out
}

/// E over independent uniform x, y ∈ A of χ(y⁻¹x), by the exact double sum.
pub fn char_autocorrelation(a: &SubsetG, table: &CharacterTable, chi: usize) -> Result<Complex64> {
    if a.is_empty() {
        return Err(Error::EmptySubset);
    }
    if table.group_id() != a.group().id() {
        return Err(Error::MixedGroups);
    }
    let group = a.group();
    let classes = &table.classes;
    let mut counts = vec![0u64; classes.len()];
    for &y in a.indices() {
        let yinv = group.inv(y);
        for &x in a.indices() {
            counts[classes.class_of[group.mul(yinv, x) as usize] as usize] += 1;
        }
    }
    let total = (a.len() as f64) * (a.len() as f64);
    Ok((0..classes.len())
        .map(|k| table.value(chi, k) * (counts[k] as f64))
        .sum::<Complex64>()
        / total)
}

/// Both sides of the generalized Frobenius formula
/// E_σ‖f^σ∗g‖₂² = Σ_χ ‖f^{=χ}‖₂²‖g^{=χ}‖₂²/χ(1)².
#[derive(Debug, Clone, Serialize)]
pub struct MixedMoment {
    /// Average over all σ of ‖f^σ∗g‖₂²; absent when |G| exceeds the cap.
    pub brute: Option<f64>,
    /// The character-sum right-hand side.
    pub spectral: f64,
    /// |brute - spectral| / spectral, when both sides exist.
    pub relative_gap: Option<f64>,
    pub brute_cap: usize,
}

pub const MIXED_MOMENT_BRUTE_CAP: usize = 360;

pub fn mixed_moment(
    f: &GroupFunction,
    g: &GroupFunction,
    table: &CharacterTable,
    brute_cap: usize,
) -> Result<MixedMoment> {
    f.same_group(g)?;
    f.check_table(table)?;
    let fm = f.projection_masses(table)?;
    let gm = g.projection_masses(table)?;
    let spectral: f64 = (0..table.num_chars())
        .map(|t| fm[t] * gm[t] / (table.degrees[t] * table.degrees[t]))
        .sum();

    let order = f.group.order();
    let brute = if order <= brute_cap {
        use rayon::prelude::*;
        let terms: Vec<f64> = (0..order as u32)
            .into_par_iter()
            .map(|s| {
                let fs = f.right_translate(s);
                let conv = convolve_values(&f.group, &fs.values, &g.values);
                conv.iter().map(|z| z.norm_sqr()).sum::<f64>() / order as f64
            })
            .collect();
        // ordered reduction: collect preserves index order
        Some(terms.iter().sum::<f64>() / order as f64)
    } else {
        None
    };

    let relative_gap = brute.map(|b| {
        if spectral == 0.0 {
            b.abs()
        } else {
            (b - spectral).abs() / spectral
        }
    });
    Ok(MixedMoment {
        brute,
        spectral,
        relative_gap,
        brute_cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn a5() -> Arc<Group> {
        build_group(&GroupSpec::Alternating { n: 5 }).unwrap()
    }

    fn s4() -> Arc<Group> {
        build_group(&GroupSpec::Symmetric { n: 4 }).unwrap()
    }

    #[test]
    fn density_basics() {
        let g = a5();
        let full = SubsetG::full(g.clone()).density().unwrap();
        assert!(full.values().iter().all(|z| (z - 1.0).norm() < 1e-12));

        let e = SubsetG::singleton(g.clone(), g.identity()).unwrap();
        let delta = e.density().unwrap();
        assert!((delta.value(g.identity()) - 60.0).norm() < 1e-12);
        assert!((delta.norm(1) - 1.0).abs() < 1e-12);

        let a = SubsetG::random(g.clone(), 7, 1).unwrap();
        let f = a.density().unwrap();
        assert!((f.norm(1) - 1.0).abs() < 1e-12);
        assert!((f.norm_inf() - 1.0 / a.density_value()).abs() < 1e-9);
        // ‖density(A)‖₂² = 1/μ(A)
        assert!((f.norm(2).powi(2) - 1.0 / a.density_value()).abs() < 1e-9);
    }

    #[test]
    fn empty_subset_rejected() {
        let g = a5();
        assert!(SubsetG::new(g.clone(), vec![]).unwrap().density().is_err());
    }

    #[test]
    fn delta_is_convolution_identity() {
        let g = s4();
        let delta = SubsetG::singleton(g.clone(), g.identity())
            .unwrap()
            .density()
            .unwrap();
        let f = GroupFunction::random(g.clone(), 3);
        let conv = delta.convolve(&f).unwrap();
        for i in 0..g.order() as u32 {
            assert!((conv.value(i) - f.value(i)).norm() < 1e-12);
        }
        let one = GroupFunction::constant(g.clone(), Complex64::new(1.0, 0.0));
        let oo = one.convolve(&one).unwrap();
        assert!(oo.values().iter().all(|z| (z - 1.0).norm() < 1e-12));
    }

    #[test]
    fn convolved_densities_live_on_product_set() {
        let g = a5();
        let a = SubsetG::random(g.clone(), 5, 11).unwrap();
        let b = SubsetG::random(g.clone(), 6, 12).unwrap();
        let conv = a
            .density()
            .unwrap()
            .convolve(&b.density().unwrap())
            .unwrap();
        assert!((conv.norm(1) - 1.0).abs() < 1e-12);
        // support inside AB
        let mut ab = vec![false; g.order()];
        for &x in a.indices() {
            for &y in b.indices() {
                ab[g.mul(x, y) as usize] = true;
            }
        }
        for i in 0..g.order() {
            if conv.values()[i].norm() > 1e-12 {
                assert!(ab[i], "convolution mass outside AB");
            }
        }
    }

    #[test]
    fn flip_is_involution_and_maps_density() {
        let g = s4();
        let f = GroupFunction::random(g.clone(), 7);
        let ff = f.flip().flip();
        for i in 0..g.order() as u32 {
            assert!((f.value(i) - ff.value(i)).norm() < 1e-15);
        }
        let a = SubsetG::random(g.clone(), 9, 5).unwrap();
        let lhs = a.density().unwrap().flip();
        let rhs = a.inverse_set().density().unwrap();
        for i in 0..g.order() as u32 {
            assert!((lhs.value(i) - rhs.value(i)).norm() < 1e-12);
        }
    }

    #[test]
    fn adjointness_on_random_triples() {
        // ⟨f∗g, h⟩ = ⟨g, f′∗h⟩, both sides computed independently
        let g = s4();
        for seed in 0..5u64 {
            let f = GroupFunction::random(g.clone(), 100 + seed);
            let gg = GroupFunction::random(g.clone(), 200 + seed);
            let h = GroupFunction::random(g.clone(), 300 + seed);
            let lhs = f.convolve(&gg).unwrap().inner(&h).unwrap();
            let rhs = gg.inner(&f.flip().convolve(&h).unwrap()).unwrap();
            assert!(
                (lhs - rhs).norm() < 1e-9,
                "adjointness gap {}",
                (lhs - rhs).norm()
            );
        }
    }

    #[test]
    fn density_pairs_with_constants() {
        // ⟨density(A), 1⟩ = 1 and ⟨χ, χ⟩ = 1 live in the table audits;
        // here the density side
        let g = a5();
        let a = SubsetG::random(g.clone(), 9, 77).unwrap();
        let one = GroupFunction::constant(g.clone(), Complex64::new(1.0, 0.0));
        let ip = a.density().unwrap().inner(&one).unwrap();
        assert!((ip - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn unverified_tables_rejected_by_projection() {
        let g = s4();
        let t = crate::chartab::CharacterTable::compute(&g).unwrap();
        let untrusted = crate::chartab::CharacterTable::from_parts(
            &g,
            t.classes.clone(),
            t.values.clone(),
            t.tolerance,
        );
        let f = GroupFunction::random(g.clone(), 5);
        assert!(matches!(
            f.project(&untrusted, 0),
            Err(Error::UnverifiedTable)
        ));
    }

    #[test]
    fn mixed_groups_rejected() {
        let g1 = s4();
        let g2 = a5();
        let f = GroupFunction::random(g1, 1);
        let h = GroupFunction::random(g2, 1);
        assert!(matches!(f.convolve(&h), Err(Error::MixedGroups)));
        assert!(matches!(f.inner(&h), Err(Error::MixedGroups)));
    }
}
