//! Persistent cache of computed lattices and mark matrices, keyed by a
//! digest of the multiplication table under canonical element order, so
//! different spellings of the same construction share an entry.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use burnside::group::{FiniteGroup, Subgroup};
use burnside::lattice::SubgroupLattice;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub tool_version: String,
    pub group_hash: String,
    pub order: usize,
    pub classes: Vec<CacheClass>,
    pub marks: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
pub struct CacheClass {
    pub members: Vec<u16>,
    pub conjugates: Vec<Vec<u16>>,
    pub normalizer: Vec<u16>,
    pub weyl: i64,
}

pub fn group_digest(g: &FiniteGroup) -> String {
    let mut hasher = Sha256::new();
    hasher.update(g.canonical_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn entry_path(dir: &Path, hash: &str) -> PathBuf {
    dir.join(format!("{hash}.json"))
}

/// Reassemble a lattice from a cache entry. Any inconsistency (wrong hash,
/// wrong order, invariant violation, mark mismatch) is treated as
/// corruption and reported as an error so the caller can recompute.
pub fn lattice_from_entry(
    group: FiniteGroup,
    hash: &str,
    entry: &CacheEntry,
) -> Result<Arc<SubgroupLattice>, burnside::Error> {
    if entry.schema_version != SCHEMA_VERSION
        || entry.group_hash != hash
        || entry.order != group.order()
    {
        return Err(burnside::Error::Internal("cache entry mismatch".into()));
    }
    let mut classes = Vec::with_capacity(entry.classes.len());
    for c in &entry.classes {
        let rep = Subgroup::from_members(&group, c.members.clone())?;
        let normalizer = Subgroup::from_members(&group, c.normalizer.clone())?;
        classes.push((rep, c.conjugates.clone(), normalizer, c.weyl));
    }
    SubgroupLattice::from_parts(group, classes, entry.marks.clone())
}

pub fn entry_from_lattice(hash: &str, lattice: &SubgroupLattice) -> CacheEntry {
    CacheEntry {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        group_hash: hash.to_string(),
        order: lattice.group().order(),
        classes: lattice
            .classes()
            .iter()
            .map(|c| CacheClass {
                members: c.rep.members().to_vec(),
                conjugates: c.conjugates.clone(),
                normalizer: c.normalizer.members().to_vec(),
                weyl: c.weyl_order,
            })
            .collect(),
        marks: lattice.mark_rows().to_vec(),
    }
}

pub fn load(dir: &Path, hash: &str) -> Option<CacheEntry> {
    let bytes = std::fs::read(entry_path(dir, hash)).ok()?;
    serde_json::from_slice(&bytes).ok()
}

/// Atomic write: write to a temporary sibling, then rename into place.
pub fn store(dir: &Path, hash: &str, entry: &CacheEntry) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let target = entry_path(dir, hash);
    let tmp = dir.join(format!("{hash}.json.tmp"));
    let bytes = serde_json::to_vec(entry).expect("cache entry serializes");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, &target)
}
