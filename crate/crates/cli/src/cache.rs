//! Character table cache: per-group files in a configurable directory.
//! Corrupt or mismatched files are recomputed with a warning, never fatal.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use growthlab_core::chartab::{load_table, save_table, CharacterTable};
use growthlab_core::group::Group;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// Unreadable, wrong version, wrong fingerprint, or failed audit.
    Recomputed(String),
    Disabled,
}

impl CacheStatus {
    pub fn describe(&self, group: &str) -> String {
        match self {
            CacheStatus::Hit => format!("{group}: cache hit"),
            CacheStatus::Miss => format!("{group}: cache miss, table stored"),
            CacheStatus::Recomputed(why) => {
                format!("{group}: cache rejected ({why}), table recomputed")
            }
            CacheStatus::Disabled => format!("{group}: cache disabled"),
        }
    }
}

fn cache_path(dir: &Path, group: &Group) -> PathBuf {
    let safe: String = group
        .name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    dir.join(format!("{safe}-{}.chartab.json", group.order()))
}

/// Compute-or-load with verification. On a miss the computed table is
/// stored; on any rejection the table is recomputed and the file rewritten.
pub fn table_cache(
    group: &Arc<Group>,
    dir: Option<&Path>,
) -> anyhow::Result<(CharacterTable, CacheStatus)> {
    let Some(dir) = dir else {
        return Ok((CharacterTable::compute(group)?, CacheStatus::Disabled));
    };
    std::fs::create_dir_all(dir)?;
    let path = cache_path(dir, group);
    if path.exists() {
        match load_table(&path, group) {
            Ok(table) => return Ok((table, CacheStatus::Hit)),
            Err(err) => {
                let table = CharacterTable::compute(group)?;
                save_table(&table, &path)?;
                return Ok((table, CacheStatus::Recomputed(err.to_string())));
            }
        }
    }
    let table = CharacterTable::compute(group)?;
    save_table(&table, &path)?;
    Ok((table, CacheStatus::Miss))
}
