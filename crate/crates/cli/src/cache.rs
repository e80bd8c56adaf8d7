//! On-disk cache of ideal lattices and zero-divisor sets.
//!
//! Entries are addressed by the SHA-256 of the canonical ring descriptor and
//! carry a checksum of the ring's addition and multiplication tables plus a
//! digest of the payload. A hit is installed only after both match and the
//! core re-validates the lattice; anything else is recomputed and a warning
//! is logged. Writes go to a temporary file renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use zerodiv_core::FiniteRing;

pub const CACHE_ENV: &str = "ZERODIV_CACHE_DIR";
const FORMAT: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    format: u32,
    descriptor: String,
    tables: String,
    /// Element indices of each ideal.
    lattice: Vec<Vec<u32>>,
    zero_divisors: Vec<u32>,
    payload: String,
}

/// What happened on a lookup; for logs and tests, never for reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Disabled,
    Hit,
    Miss,
    Corrupt,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

fn hex_digest(bytes: impl AsRef<[u8]>) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn table_checksum(ring: &FiniteRing) -> String {
    let (add, mul) = ring.tables();
    let mut h = Sha256::new();
    h.update((ring.size() as u64).to_le_bytes());
    for v in add.iter().chain(mul) {
        h.update(v.to_le_bytes());
    }
    hex::encode(h.finalize())
}

fn payload_digest(lattice: &[Vec<u32>], zero_divisors: &[u32]) -> String {
    let mut h = Sha256::new();
    for ideal in lattice {
        h.update((ideal.len() as u64).to_le_bytes());
        for v in ideal {
            h.update(v.to_le_bytes());
        }
    }
    h.update([0xff]);
    for v in zero_divisors {
        h.update(v.to_le_bytes());
    }
    hex::encode(h.finalize())
}

impl Cache {
    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    /// The directory from `ZERODIV_CACHE_DIR`, or a `zerodiv-cache` directory
    /// under the system temporary directory. Falls back to no persistence
    /// when the directory cannot be created.
    pub fn from_env() -> Cache {
        let dir = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("zerodiv-cache"));
        Cache::at(&dir)
    }

    pub fn at(dir: &Path) -> Cache {
        match fs::create_dir_all(dir) {
            Ok(()) => Cache {
                dir: Some(dir.to_path_buf()),
            },
            Err(e) => {
                log::warn!("cache directory {} unavailable ({e}); caching in memory only", dir.display());
                Cache::disabled()
            }
        }
    }

    pub fn entry_path(&self, ring: &FiniteRing) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}.json", hex_digest(ring.key()))))
    }

    /// Seeds `ring` from the cache, or computes and stores its lattice and
    /// zero-divisor set.
    pub fn prepare(&self, ring: &FiniteRing) -> Outcome {
        let Some(path) = self.entry_path(ring) else {
            return Outcome::Disabled;
        };
        let outcome = match fs::read(&path) {
            Err(_) => Outcome::Miss,
            Ok(bytes) => match self.install(ring, &bytes) {
                Ok(()) => return Outcome::Hit,
                Err(why) => {
                    log::warn!("discarding cache entry {} for {}: {why}", path.display(), ring.key());
                    Outcome::Corrupt
                }
            },
        };
        if let Err(e) = self.store(ring, &path) {
            log::warn!("cannot write cache entry {}: {e}", path.display());
        }
        outcome
    }

    fn install(&self, ring: &FiniteRing, bytes: &[u8]) -> Result<(), String> {
        let entry: Entry = serde_json::from_slice(bytes).map_err(|e| format!("unreadable ({e})"))?;
        if entry.format != FORMAT || entry.descriptor != ring.key() {
            return Err("entry is for another format or ring".into());
        }
        if entry.tables != table_checksum(ring) {
            return Err("structural checksum mismatch".into());
        }
        if entry.payload != payload_digest(&entry.lattice, &entry.zero_divisors) {
            return Err("payload digest mismatch".into());
        }
        let n = ring.size();
        let mask = |idx: &[u32]| -> Result<Vec<bool>, String> {
            let mut m = vec![false; n];
            for &i in idx {
                *m.get_mut(i as usize).ok_or("element index out of range")? = true;
            }
            Ok(m)
        };
        let sets = entry.lattice.iter().map(|i| mask(i)).collect::<Result<Vec<_>, _>>()?;
        if !ring.lattice_ready() && !ring.seed_lattice(sets) {
            return Err("lattice failed validation".into());
        }
        if !ring.seed_zero_divisors(mask(&entry.zero_divisors)?) {
            return Err("zero-divisor set failed validation".into());
        }
        Ok(())
    }

    fn store(&self, ring: &FiniteRing, path: &Path) -> std::io::Result<()> {
        let lattice: Vec<Vec<u32>> = ring
            .all_ideals()
            .iter()
            .map(|i| i.elements().iter().map(|e| e.0).collect())
            .collect();
        let zero_divisors: Vec<u32> = ring.zero_divisors().iter().map(|e| e.0).collect();
        let entry = Entry {
            format: FORMAT,
            descriptor: ring.key().to_string(),
            tables: table_checksum(ring),
            payload: payload_digest(&lattice, &zero_divisors),
            lattice,
            zero_divisors,
        };
        let dir = path.parent().expect("entries live in the cache directory");
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(&serde_json::to_vec(&entry).expect("entries serialize"))?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use zerodiv_core::{make_ring, RingSpec};

    #[test]
    fn miss_hit_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let spec = RingSpec::zmod(12);
        let first = make_ring(&spec).unwrap();
        assert_eq!(cache.prepare(&first), Outcome::Miss);
        let second = make_ring(&spec).unwrap();
        assert_eq!(cache.prepare(&second), Outcome::Hit);
        assert!(second.lattice_ready());
        assert_eq!(second.all_ideals(), first.all_ideals());

        let path = cache.entry_path(&first).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        // A forged lattice with a matching payload digest still fails core validation.
        let mut entry: Entry = serde_json::from_str(&text).unwrap();
        entry.lattice.pop();
        entry.payload = payload_digest(&entry.lattice, &entry.zero_divisors);
        fs::write(&path, serde_json::to_vec(&entry).unwrap()).unwrap();
        let third = make_ring(&spec).unwrap();
        assert_eq!(cache.prepare(&third), Outcome::Corrupt);
        assert_eq!(third.all_ideals(), first.all_ideals());

        fs::write(&path, b"{ not json").unwrap();
        assert_eq!(cache.prepare(&make_ring(&spec).unwrap()), Outcome::Corrupt);
        // The corrupt entry was replaced.
        assert_eq!(cache.prepare(&make_ring(&spec).unwrap()), Outcome::Hit);
    }
}
