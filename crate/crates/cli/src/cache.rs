//! On-disk cache of character tables keyed by the multiplication table.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use coverhom_core::exactalg::{CyclotomicNumber, Field, Rational};
use coverhom_core::groups::{character_table, inner_product, ComplexCharacter, FiniteGroup};

use crate::error::{CliError, CliResult};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "COVERHOM_CACHE_DIR";

#[derive(Debug, Serialize, Deserialize)]
struct StoredValue {
    conductor: u32,
    coeffs: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct StoredTable {
    version: u32,
    key: String,
    order: usize,
    characters: Vec<Vec<StoredValue>>,
}

/// Outcome of a cache read.
#[derive(Debug)]
pub enum Lookup {
    Hit(Vec<ComplexCharacter>),
    Miss,
    Corrupt(String),
}

/// Hex SHA-256 of the group order and multiplication table.
pub fn table_key(g: &FiniteGroup) -> String {
    let mut hasher = Sha256::new();
    hasher.update((g.order() as u64).to_le_bytes());
    for &x in g.multiplication_table() {
        hasher.update(x.to_le_bytes());
    }
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, g: &FiniteGroup) -> PathBuf {
        self.dir.join(format!("chartable-v{CACHE_VERSION}-{}.json", table_key(g)))
    }

    pub fn load(&self, g: &FiniteGroup) -> Lookup {
        let path = self.path_for(g);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        match decode(g, &text) {
            Ok(table) => Lookup::Hit(table),
            Err(reason) => Lookup::Corrupt(format!("{}: {reason}", path.display())),
        }
    }

    /// Writes to a unique temporary file in the cache directory, then renames
    /// it into place so readers never observe a partial file.
    pub fn store(&self, g: &FiniteGroup, table: &[ComplexCharacter]) -> CliResult<()> {
        std::fs::create_dir_all(&self.dir).map_err(|e| CliError::io(format!("creating {}", self.dir.display()), e))?;
        let stored = StoredTable {
            version: CACHE_VERSION,
            key: table_key(g),
            order: g.order(),
            characters: table
                .iter()
                .map(|chi| {
                    chi.values
                        .iter()
                        .map(|v| StoredValue {
                            conductor: v.conductor(),
                            coeffs: v.coeffs().iter().map(|c| c.to_string()).collect(),
                        })
                        .collect()
                })
                .collect(),
        };
        let target = self.path_for(g);
        let nanos = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_nanos());
        let tmp = self.dir.join(format!(".{}.{}.{nanos}.tmp", stored.key, std::process::id()));
        let write = || -> std::io::Result<()> {
            let mut f = std::fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&stored)?.as_bytes())?;
            f.sync_all()?;
            std::fs::rename(&tmp, &target)
        };
        write().map_err(|e| {
            let _ = std::fs::remove_file(&tmp);
            CliError::io(format!("writing {}", target.display()), e)
        })
    }

    /// Cached table when valid, otherwise a fresh computation that is then
    /// stored. Corrupted entries produce a warning on stderr.
    pub fn character_table(&self, g: &FiniteGroup) -> CliResult<Vec<ComplexCharacter>> {
        match self.load(g) {
            Lookup::Hit(table) => return Ok(table),
            Lookup::Miss => {}
            Lookup::Corrupt(reason) => eprintln!("warning: ignoring corrupted cache entry ({reason}); rebuilding"),
        }
        let table = character_table(g);
        self.store(g, &table)?;
        Ok(table)
    }
}

fn decode(g: &FiniteGroup, text: &str) -> Result<Vec<ComplexCharacter>, String> {
    let stored: StoredTable = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if stored.version != CACHE_VERSION {
        return Err(format!("version {} is not {CACHE_VERSION}", stored.version));
    }
    if stored.key != table_key(g) || stored.order != g.order() {
        return Err("key does not match the group".into());
    }
    let classes = g.classes().len();
    if stored.characters.len() != classes {
        return Err("wrong number of characters".into());
    }
    let mut table = Vec::with_capacity(classes);
    for row in stored.characters {
        if row.len() != classes {
            return Err("wrong number of values".into());
        }
        let values = row
            .into_iter()
            .map(|v| {
                if v.conductor == 0 || v.conductor % 4 == 2 || v.coeffs.len() > v.conductor as usize {
                    return Err(format!("bad conductor {}", v.conductor));
                }
                let coeffs = v
                    .coeffs
                    .iter()
                    .map(|c| c.parse::<Rational>().map_err(|e| format!("bad coefficient `{c}`: {e}")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(CyclotomicNumber::from_exponents(v.conductor, coeffs))
            })
            .collect::<Result<Vec<_>, String>>()?;
        table.push(ComplexCharacter { values });
    }
    // orthonormality catches any tampering that still parses
    for (i, chi) in table.iter().enumerate() {
        for (j, psi) in table.iter().enumerate() {
            let expected = CyclotomicNumber::from_int(i64::from(i == j));
            if inner_product(g, chi, psi) != expected {
                return Err("characters are not orthonormal".into());
            }
        }
    }
    if table.first().is_none_or(|chi| !chi.values.iter().all(|v| v.is_one())) {
        return Err("first character is not trivial".into());
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use coverhom_core::groups::families;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let g = families::dicyclic(3);
        assert!(matches!(cache.load(&g), Lookup::Miss));
        let cold = cache.character_table(&g).unwrap();
        match cache.load(&g) {
            Lookup::Hit(t) => assert_eq!(t, cold),
            other => panic!("{other:?}"),
        }
        std::fs::write(cache.path_for(&g), "{\"version\": 1").unwrap();
        assert!(matches!(cache.load(&g), Lookup::Corrupt(_)));
        assert_eq!(cache.character_table(&g).unwrap(), cold);
        assert!(matches!(cache.load(&g), Lookup::Hit(_)));
    }

    #[test]
    fn tampered_values_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let g = families::symmetric(3);
        cache.character_table(&g).unwrap();
        let path = cache.path_for(&g);
        let text = std::fs::read_to_string(&path).unwrap().replacen("\"-1\"", "\"-2\"", 1);
        std::fs::write(&path, text).unwrap();
        assert!(matches!(cache.load(&g), Lookup::Corrupt(_)));
    }

    #[test]
    fn keys_separate_groups() {
        assert_ne!(table_key(&families::cyclic(4)), table_key(&families::dihedral(2)));
        assert_eq!(table_key(&families::cyclic(4)), table_key(&families::cyclic(4)));
    }
}
