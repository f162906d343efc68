//! Character table cache files.
//!
//! Schema: `{"schema": 1, "fingerprint": {"order", "class_sizes"},
//! "values": [[[re, im]]], "tolerance": 1e-9}`. Floats are written in
//! shortest-roundtrip decimal, so a save/load cycle reproduces every
//! value bit-exactly.

use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::group::Group;

const CACHE_SCHEMA: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFingerprint {
    pub order: u64,
    pub class_sizes: Vec<u64>,
}

impl CacheFingerprint {
    pub fn of(table: &CharacterTable) -> CacheFingerprint {
        CacheFingerprint {
            order: table.classes.class_of.len() as u64,
            class_sizes: table
                .classes
                .classes
                .iter()
                .map(|c| c.size() as u64)
                .collect(),
        }
    }

    pub fn of_group(group: &Group) -> CacheFingerprint {
        let classes = group.classes();
        CacheFingerprint {
            order: group.order() as u64,
            class_sizes: classes.classes.iter().map(|c| c.size() as u64).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema: u64,
    fingerprint: CacheFingerprint,
    values: Vec<Vec<[f64; 2]>>,
    tolerance: f64,
}

pub fn save_table(table: &CharacterTable, path: &Path) -> Result<()> {
    let file = CacheFile {
        schema: CACHE_SCHEMA,
        fingerprint: CacheFingerprint::of(table),
        values: table
            .values
            .iter()
            .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
            .collect(),
        tolerance: table.tolerance,
    };
    let json = serde_json::to_string_pretty(&file)?;
    std::fs::write(path, json)?;
    Ok(())
}

/// Load a table for `group`, checking the schema version and the
/// order/class-size fingerprint, then re-auditing orthogonality.
pub fn load_table(path: &Path, group: &Arc<Group>) -> Result<CharacterTable> {
    let json = std::fs::read_to_string(path)?;
    let file: CacheFile = serde_json::from_str(&json)?;
    if file.schema != CACHE_SCHEMA {
        return Err(Error::CacheVersionMismatch {
            found: file.schema,
            expected: CACHE_SCHEMA,
        });
    }
    let expect = CacheFingerprint::of_group(group);
    if file.fingerprint != expect {
        return Err(Error::CacheFingerprintMismatch(format!(
            "cached order {} / {} classes vs group order {} / {} classes",
            file.fingerprint.order,
            file.fingerprint.class_sizes.len(),
            expect.order,
            expect.class_sizes.len()
        )));
    }
    let values: Vec<Vec<Complex64>> = file
        .values
        .iter()
        .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    let table = CharacterTable::from_parts(group, group.classes(), values, file.tolerance);
    table.into_verified()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    #[test]
    fn roundtrip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a5.json");
        let g = build_group(&GroupSpec::Alternating { n: 5 }).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        save_table(&t, &path).unwrap();
        let loaded = load_table(&path, &g).unwrap();
        assert_eq!(t.values.len(), loaded.values.len());
        for (a, b) in t.values.iter().zip(&loaded.values) {
            for (x, y) in a.iter().zip(b) {
                assert_eq!(x.re.to_bits(), y.re.to_bits());
                assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }
        assert!(loaded.is_verified());
    }

    #[test]
    fn degrees_survive_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s3.json");
        let g = build_group(&GroupSpec::Symmetric { n: 3 }).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        save_table(&t, &path).unwrap();
        let loaded = load_table(&path, &g).unwrap();
        let degs: Vec<i64> = loaded.degrees.iter().map(|d| d.round() as i64).collect();
        assert_eq!(degs, vec![1, 1, 2]);
    }

    #[test]
    fn wrong_fingerprint_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.json");
        let s3 = build_group(&GroupSpec::Symmetric { n: 3 }).unwrap();
        let t = CharacterTable::compute(&s3).unwrap();
        save_table(&t, &path).unwrap();
        let a4 = build_group(&GroupSpec::Alternating { n: 4 }).unwrap();
        assert!(matches!(
            load_table(&path, &a4),
            Err(Error::CacheFingerprintMismatch(_))
        ));
    }

    #[test]
    fn wrong_schema_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.json");
        let s3 = build_group(&GroupSpec::Symmetric { n: 3 }).unwrap();
        let t = CharacterTable::compute(&s3).unwrap();
        save_table(&t, &path).unwrap();
        let mut doc: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        doc["schema"] = serde_json::json!(99);
        std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
        assert!(matches!(
            load_table(&path, &s3),
            Err(Error::CacheVersionMismatch { found: 99, .. })
        ));
    }
}
