//! On-disk cache of KL tables, one JSON file per `(W, L)` named by the
//! SHA-256 of a canonical descriptor.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::coxeter::{CoxeterGroup, Elem, WeightFunction};
use crate::hecke::{Hecke, HeckeElt, KlTable};
use crate::ordered::Laurent;

pub const CACHE_DIR_ENV: &str = "CMKL_CACHE_DIR";

const FORMAT: &str = "cmkl-kl-1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] io::Error),
    #[error("corrupt cache entry {path}: {msg}")]
    Corrupt { path: PathBuf, msg: String },
}

/// The canonical text that identifies a KL table: Coxeter matrix, generator
/// order and names, Γ mode and weights.
pub fn descriptor(group: &CoxeterGroup, weights: &WeightFunction) -> String {
    let mut out = format!("{FORMAT}\nmatrix");
    for row in group.matrix().entries() {
        out.push(' ');
        out.push_str(&row.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
    }
    out.push_str(&format!("\ngenerators {}", group.generator_names().join(",")));
    out.push_str(&format!("\nmode {}", weights.mode()));
    out.push_str("\nweights");
    for e in &weights.values {
        out.push_str(&format!(" {e}"));
    }
    out.push('\n');
    out
}

pub fn cache_key(group: &CoxeterGroup, weights: &WeightFunction) -> String {
    hex::encode(Sha256::digest(descriptor(group, weights).as_bytes()))
}

fn elt_json(h: &HeckeElt) -> Value {
    Value::Array(h.iter().map(|(y, a)| json!([y.0, a.to_string()])).collect())
}

fn elt_from_json(v: &Value) -> Option<HeckeElt> {
    let mut map = BTreeMap::new();
    for term in v.as_array()? {
        let y = u32::try_from(term.get(0)?.as_u64()?).ok()?;
        let a: Laurent = term.get(1)?.as_str()?.parse().ok()?;
        map.insert(Elem(y), a);
    }
    Some(HeckeElt::from_map(map))
}

pub fn table_to_json(group: &CoxeterGroup, table: &KlTable) -> Value {
    json!({
        "descriptor": descriptor(group, table.weights()),
        "c": table.c_basis().iter().map(elt_json).collect::<Vec<_>>(),
        "products": table.products().iter()
            .map(|row| row.iter().map(elt_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

/// Rebuilds a table; `None` if the document does not describe `(group, weights)`.
pub fn table_from_json(group: &CoxeterGroup, weights: &WeightFunction, v: &Value) -> Option<KlTable> {
    if v.get("descriptor")?.as_str()? != descriptor(group, weights) {
        return None;
    }
    let c = v
        .get("c")?
        .as_array()?
        .iter()
        .map(elt_from_json)
        .collect::<Option<Vec<_>>>()?;
    let products = v
        .get("products")?
        .as_array()?
        .iter()
        .map(|row| row.as_array()?.iter().map(elt_from_json).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    if c.len() != group.len() || products.len() != group.rank() || products.iter().any(|r| r.len() != group.len()) {
        return None;
    }
    Some(KlTable::from_parts(weights.clone(), c, products))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    Disabled,
}

#[derive(Debug, Clone)]
pub struct KlCache {
    dir: Option<PathBuf>,
}

impl KlCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        KlCache { dir: Some(dir.into()) }
    }

    pub fn disabled() -> Self {
        KlCache { dir: None }
    }

    /// The directory named by `CMKL_CACHE_DIR`, if set.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(d) if !d.is_empty() => Self::new(d),
            _ => Self::disabled(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, group: &CoxeterGroup, weights: &WeightFunction) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}.json", cache_key(group, weights))))
    }

    pub fn load(&self, group: &CoxeterGroup, weights: &WeightFunction) -> Result<Option<KlTable>, CacheError> {
        let Some(path) = self.path_for(group, weights) else {
            return Ok(None);
        };
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |msg: &str| CacheError::Corrupt {
            path: path.clone(),
            msg: msg.into(),
        };
        let v: Value = serde_json::from_str(&text).map_err(|e| corrupt(&e.to_string()))?;
        table_from_json(group, weights, &v)
            .map(Some)
            .ok_or_else(|| corrupt("contents do not match the key"))
    }

    /// Writes to a temporary file in the cache directory, then renames.
    pub fn store(&self, group: &CoxeterGroup, table: &KlTable) -> Result<(), CacheError> {
        let Some(path) = self.path_for(group, table.weights()) else {
            return Ok(());
        };
        let dir = path.parent().expect("cache path has a parent");
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(
            ".{}.{}.tmp",
            path.file_name().unwrap().to_string_lossy(),
            std::process::id()
        ));
        fs::write(&tmp, serde_json::to_vec(&table_to_json(group, table)).expect("json"))?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn get_or_compute(
        &self,
        group: &CoxeterGroup,
        weights: &WeightFunction,
    ) -> Result<(KlTable, CacheStatus), CacheError> {
        if self.dir.is_none() {
            return Ok((Hecke::new(group, weights.clone()).kl_basis(), CacheStatus::Disabled));
        }
        if let Some(t) = self.load(group, weights)? {
            return Ok((t, CacheStatus::Hit));
        }
        let t = Hecke::new(group, weights.clone()).kl_basis();
        self.store(group, &t)?;
        Ok((t, CacheStatus::Miss))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterType;
    use crate::ordered::Exponent;

    #[test]
    fn key_depends_on_weights_and_names() {
        let g = CoxeterGroup::from_type(CoxeterType::B(2)).unwrap();
        let a = WeightFunction::rational(&[(1, 1), (2, 1)]);
        let b = WeightFunction::rational(&[(2, 1), (1, 1)]);
        assert_ne!(cache_key(&g, &a), cache_key(&g, &b));
        assert_eq!(cache_key(&g, &a), cache_key(&g, &a.clone()));
        let renamed = g.clone().with_names(vec!["a".into(), "b".into()]);
        assert_ne!(cache_key(&g, &a), cache_key(&renamed, &a));
        let lex = WeightFunction::new(vec![Exponent::unit(2, 0), Exponent::unit(2, 1)]);
        assert_ne!(cache_key(&g, &a), cache_key(&g, &lex));
        assert_eq!(cache_key(&g, &a).len(), 64);
    }

    #[test]
    fn roundtrip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let cache = KlCache::new(dir.path());
        let g = CoxeterGroup::from_type(CoxeterType::B(3)).unwrap();
        let w = WeightFunction::rational(&[(3, 2), (1, 1), (1, 1)]);
        let (cold, s1) = cache.get_or_compute(&g, &w).unwrap();
        let (warm, s2) = cache.get_or_compute(&g, &w).unwrap();
        assert_eq!((s1, s2), (CacheStatus::Miss, CacheStatus::Hit));
        assert_eq!(cold, warm);
        let leftovers: Vec<_> = fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .filter(|n| n.to_string_lossy().ends_with(".tmp"))
            .collect();
        assert!(leftovers.is_empty());
    }

    #[test]
    fn mismatched_entry_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let cache = KlCache::new(dir.path());
        let g = CoxeterGroup::from_type(CoxeterType::A(2)).unwrap();
        let w = WeightFunction::rational(&[(1, 1), (1, 1)]);
        let path = cache.path_for(&g, &w).unwrap();
        fs::write(&path, "{\"descriptor\": \"other\"}").unwrap();
        assert!(matches!(cache.load(&g, &w), Err(CacheError::Corrupt { .. })));
        fs::write(&path, "not json").unwrap();
        assert!(matches!(cache.load(&g, &w), Err(CacheError::Corrupt { .. })));
    }

    #[test]
    fn disabled_cache_computes() {
        let g = CoxeterGroup::from_type(CoxeterType::A(1)).unwrap();
        let w = WeightFunction::rational(&[(1, 1)]);
        let (t, s) = KlCache::disabled().get_or_compute(&g, &w).unwrap();
        assert_eq!(s, CacheStatus::Disabled);
        assert_eq!(t.len(), 2);
    }
}
