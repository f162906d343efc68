//! Complex character tables via the Dixon–Schneider class-sum method.
//!
//! The class-sum matrix M_i has entries a_{ijk} = #{x in C_i : x⁻¹ g_k in
//! C_j}; the central characters ω_t(k) = h_k χ_t(g_k)/χ_t(1) are its
//! common eigenvectors. Scaling by √(h_k/h_j) turns the family into
//! commuting normal matrices, all diagonalized by the unitary whose
//! columns are √(h_j/|G|) χ_t(g_j). A random real combination N plus its
//! transpose then reduces everything to one complex Hermitian
//! eigenproblem, solved by Jacobi rotations.

mod cache;
mod eig;

pub use cache::{load_table, save_table, CacheFingerprint};

use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ConjClasses, Group};

pub const TABLE_TOLERANCE: f64 = 1e-9;
pub const MAX_CLASSES: usize = 300;
const MAX_ATTEMPTS: usize = 32;

pub struct CharacterTable {
    group_id: u64,
    pub classes: Arc<ConjClasses>,
    /// values[t][k] = χ_t on class k; characters sorted by (degree, values).
    pub values: Vec<Vec<Complex64>>,
    /// χ_t(1), from the identity-class column.
    pub degrees: Vec<f64>,
    pub tolerance: f64,
    verified: bool,
    dense: OnceLock<Vec<Vec<Complex64>>>,
}

impl CharacterTable {
    /// Compute and internally audit the table.
    pub fn compute(group: &Group) -> Result<CharacterTable> {
        let classes = group.classes();
        let r = classes.len();
        if r > MAX_CLASSES {
            return Err(Error::TooManyClasses {
                classes: r,
                cap: MAX_CLASSES,
            });
        }
        let order = group.order() as f64;
        let sizes: Vec<f64> = classes.classes.iter().map(|c| c.size() as f64).collect();
        let reps: Vec<u32> = classes.classes.iter().map(|c| c.rep).collect();

        let mut rng = ChaCha12Rng::seed_from_u64(0xd1c5_0e1f);
        for _attempt in 0..MAX_ATTEMPTS {
            let coeffs: Vec<f64> = (0..r).map(|_| rng.gen_range(1.0..2.0)).collect();
            let gamma: f64 = rng.gen_range(0.5..1.5);

            // N = Σ_i c_i a_{ijk} √(h_k/h_j), accumulated per (j,k)
            let mut n_mat = vec![0.0f64; r * r];
            for (k, &gk) in reps.iter().enumerate() {
                for x in 0..group.order() as u32 {
                    let i = classes.class_of[x as usize] as usize;
                    let j = classes.class_of[group.mul(group.inv(x), gk) as usize] as usize;
                    n_mat[j * r + k] += coeffs[i];
                }
            }
            for j in 0..r {
                for k in 0..r {
                    n_mat[j * r + k] *= (sizes[k] / sizes[j]).sqrt();
                }
            }

            // Hermitian combination α N + conj(α) Nᵀ with α = (1 - iγ)/2
            let alpha = Complex64::new(0.5, -gamma / 2.0);
            let mut herm = vec![Complex64::new(0.0, 0.0); r * r];
            for j in 0..r {
                for k in 0..r {
                    herm[j * r + k] = alpha * n_mat[j * r + k] + alpha.conj() * n_mat[k * r + j];
                }
            }

            let eig = eig::hermitian_eig(&herm, r);

            // eigenvalue separation
            let spread = (eig.eigenvalues[r - 1] - eig.eigenvalues[0]).abs().max(1.0);
            let separated = eig
                .eigenvalues
                .windows(2)
                .all(|w| (w[1] - w[0]).abs() > 1e-8 * spread);
            if !separated {
                continue;
            }

            match Self::assemble(group, &classes, &sizes, order, eig) {
                Some(table) => return Ok(table),
                None => continue,
            }
        }
        Err(Error::EigSeparationFailure {
            attempts: MAX_ATTEMPTS,
        })
    }

    fn assemble(
        group: &Group,
        classes: &Arc<ConjClasses>,
        sizes: &[f64],
        order: f64,
        eig: eig::HermitianEig,
    ) -> Option<CharacterTable> {
        let r = classes.len();
        let e = classes.identity_class;
        let mut values: Vec<Vec<Complex64>> = Vec::with_capacity(r);
        for u in &eig.vectors {
            // u_j ∝ √h_j χ(g_j); normalize so χ(1) is real positive
            let w: Vec<Complex64> = (0..r).map(|j| u[j] / sizes[j].sqrt()).collect();
            if w[e].norm() < 1e-12 {
                return None;
            }
            let scale = order.sqrt() * w[e].conj() / w[e].norm();
            values.push(w.iter().map(|&z| scale * z).collect());
        }

        let mut table = CharacterTable {
            group_id: group.id(),
            classes: classes.clone(),
            values,
            degrees: Vec::new(),
            tolerance: TABLE_TOLERANCE,
            verified: false,
            dense: OnceLock::new(),
        };
        table.canonical_sort();
        table.degrees = table.values.iter().map(|row| row[e].re).collect();

        let report = table.verify();
        if !report.pass {
            return None;
        }
        table.verified = true;
        Some(table)
    }

    /// Sort characters by (degree, quantized value vector) so the table is
    /// stable across runs.
    fn canonical_sort(&mut self) {
        let e = self.classes.identity_class;
        let quant = |x: f64| (x * 1e6).round() as i64;
        self.values.sort_by(|a, b| {
            let da = quant(a[e].re);
            let db = quant(b[e].re);
            da.cmp(&db).then_with(|| {
                for (za, zb) in a.iter().zip(b.iter()) {
                    let c = quant(za.re)
                        .cmp(&quant(zb.re))
                        .then(quant(za.im).cmp(&quant(zb.im)));
                    if c != std::cmp::Ordering::Equal {
                        return c;
                    }
                }
                std::cmp::Ordering::Equal
            })
        });
    }

    /// Rebuild from stored values (used by the cache loader and tests).
    /// The result is unverified until `verify` passes via `into_verified`.
    pub fn from_parts(
        group: &Group,
        classes: Arc<ConjClasses>,
        values: Vec<Vec<Complex64>>,
        tolerance: f64,
    ) -> CharacterTable {
        let e = classes.identity_class;
        let degrees = values.iter().map(|row| row[e].re).collect();
        CharacterTable {
            group_id: group.id(),
            classes,
            values,
            degrees,
            tolerance,
            verified: false,
            dense: OnceLock::new(),
        }
    }

    /// Run the audit and keep the table only if it passes.
    pub fn into_verified(mut self) -> Result<CharacterTable> {
        let report = self.verify();
        if !report.pass {
            return Err(Error::UnverifiedTable);
        }
        self.verified = true;
        Ok(self)
    }

    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn num_chars(&self) -> usize {
        self.values.len()
    }

    pub fn group_order(&self) -> usize {
        self.classes.class_of.len()
    }

    #[inline]
    pub fn value(&self, t: usize, class: usize) -> Complex64 {
        self.values[t][class]
    }

    #[inline]
    pub fn value_at_element(&self, t: usize, element: u32) -> Complex64 {
        self.values[t][self.classes.class_of[element as usize] as usize]
    }

    /// Index of the trivial character.
    pub fn trivial_char(&self) -> usize {
        (0..self.num_chars())
            .find(|&t| {
                self.values[t]
                    .iter()
                    .all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-6)
            })
            .expect("every table contains the trivial character")
    }

    /// Characters expanded to dense element vectors, built once per table.
    pub fn dense_char(&self, t: usize) -> &[Complex64] {
        let dense = self.dense.get_or_init(|| {
            let order = self.classes.class_of.len();
            self.values
                .iter()
                .map(|row| {
                    (0..order)
                        .map(|x| row[self.classes.class_of[x] as usize])
                        .collect()
                })
                .collect()
        });
        &dense[t]
    }

    /// Exact-identity audit: row/column orthogonality, degree integrality,
    /// Σχ(1)² = |G|, the regular character, and reality at the identity.
    pub fn verify(&self) -> OrthogonalityReport {
        let r = self.num_chars();
        let order: usize = self.classes.class_of.len();
        let n = order as f64;
        let sizes: Vec<f64> = self
            .classes
            .classes
            .iter()
            .map(|c| c.size() as f64)
            .collect();
        let e = self.classes.identity_class;

        let mut row_dev: f64 = 0.0;
        for s in 0..r {
            for t in 0..r {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..r {
                    acc += sizes[k] / n * self.values[s][k] * self.values[t][k].conj();
                }
                let expect = if s == t { 1.0 } else { 0.0 };
                row_dev = row_dev.max((acc - expect).norm());
            }
        }

        let mut col_dev: f64 = 0.0;
        for k in 0..r {
            for l in 0..r {
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..r {
                    acc += self.values[t][k] * self.values[t][l].conj();
                }
                let expect = if k == l { n / sizes[k] } else { 0.0 };
                col_dev = col_dev.max((acc - expect).norm());
            }
        }

        let degrees: Vec<f64> = self.values.iter().map(|row| row[e].re).collect();
        let degree_dev = degrees
            .iter()
            .map(|d| (d - d.round()).abs())
            .fold(0.0f64, f64::max);
        let identity_reality_dev = self
            .values
            .iter()
            .map(|row| row[e].im.abs())
            .fold(0.0f64, f64::max);
        let sum_sq: f64 = degrees.iter().map(|d| d * d).sum();
        let sum_sq_residual = (sum_sq - n).abs();

        // regular character: Σ_t χ_t(1) χ_t(g) = |G|·[g = 1], per class
        let mut regular_dev: f64 = 0.0;
        for k in 0..r {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..r {
                acc += Complex64::new(degrees[t], 0.0) * self.values[t][k];
            }
            let expect = if k == e { n } else { 0.0 };
            regular_dev = regular_dev.max((acc - expect).norm());
        }

        let tolerance = self.tolerance * n;
        let checks = [
            ("row orthogonality", row_dev),
            ("column orthogonality", col_dev),
            ("degree integrality", degree_dev),
            ("sum of squared degrees", sum_sq_residual),
            ("regular character", regular_dev),
            ("identity reality", identity_reality_dev),
        ];
        let violations: Vec<String> = checks
            .iter()
            .filter(|(_, dev)| *dev > tolerance)
            .map(|(name, dev)| format!("{name}: deviation {dev:.3e} > {tolerance:.3e}"))
            .collect();

        OrthogonalityReport {
            row_orthogonality_dev: row_dev,
            column_orthogonality_dev: col_dev,
            degree_integrality_dev: degree_dev,
            degree_sum_residual: sum_sq_residual,
            regular_character_dev: regular_dev,
            identity_reality_dev,
            tolerance,
            pass: violations.is_empty(),
            violations,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityReport {
    pub row_orthogonality_dev: f64,
    pub column_orthogonality_dev: f64,
    pub degree_integrality_dev: f64,
    pub degree_sum_residual: f64,
    pub regular_character_dev: f64,
    pub identity_reality_dev: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub violations: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn degrees_of(spec: &GroupSpec) -> Vec<i64> {
        let g = build_group(spec).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        t.degrees.iter().map(|d| d.round() as i64).collect()
    }

    #[test]
    fn s3_degrees() {
        assert_eq!(degrees_of(&GroupSpec::Symmetric { n: 3 }), vec![1, 1, 2]);
    }

    #[test]
    fn a5_degrees() {
        assert_eq!(
            degrees_of(&GroupSpec::Alternating { n: 5 }),
            vec![1, 3, 3, 4, 5]
        );
    }

    #[test]
    fn s4_degrees() {
        assert_eq!(
            degrees_of(&GroupSpec::Symmetric { n: 4 }),
            vec![1, 1, 2, 3, 3]
        );
    }

    #[test]
    fn psl27_six_classes_sum_168() {
        let g = build_group(&GroupSpec::Psl2 { q: 7 }).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        assert_eq!(t.num_chars(), 6);
        let sum: f64 = t.degrees.iter().map(|d| d * d).sum();
        assert!((sum - 168.0).abs() < 1e-9);
        assert!(t.verify().pass);
    }

    #[test]
    fn trivial_group_table() {
        let table = vec![vec![0u32]];
        let g = build_group(&GroupSpec::Cayley { table }).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        assert_eq!(t.num_chars(), 1);
        assert!((t.values[0][0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(t.verify().pass);
    }

    #[test]
    fn abelian_cayley_degrees_all_one() {
        let table: Vec<Vec<u32>> = (0..6)
            .map(|i| (0..6).map(|j| (i + j) % 6).collect())
            .collect();
        let g = build_group(&GroupSpec::Cayley { table }).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        assert_eq!(
            t.degrees
                .iter()
                .map(|d| d.round() as i64)
                .collect::<Vec<_>>(),
            vec![1; 6]
        );
        assert!(t.verify().pass);
    }

    #[test]
    fn perturbed_table_fails_with_named_relation() {
        let g = build_group(&GroupSpec::Symmetric { n: 3 }).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        let mut values = t.values.clone();
        values[2][1] += Complex64::new(1e-3, 0.0);
        let bad = CharacterTable::from_parts(&g, t.classes.clone(), values, TABLE_TOLERANCE);
        let report = bad.verify();
        assert!(!report.pass);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn second_orthogonality_is_audited() {
        let g = build_group(&GroupSpec::Alternating { n: 6 }).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        let rep = t.verify();
        assert!(rep.pass, "violations: {:?}", rep.violations);
        assert!(rep.column_orthogonality_dev <= 1e-9 * g.order() as f64);
    }

    #[test]
    fn trivial_char_is_found() {
        let g = build_group(&GroupSpec::Alternating { n: 5 }).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        let triv = t.trivial_char();
        assert!((t.degrees[triv] - 1.0).abs() < 1e-9);
    }
}
