//! On-disk report cache.
//!
//! One file per key, named by the SHA-256 digest of the inputs. Each file
//! starts with a header line naming the format, tool version and digest,
//! followed by the report JSON. Files are written to a temporary file in the
//! same directory and renamed into place, so readers never see a partial
//! entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::report::{Report, TOOL_VERSION};

/// Overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "NUTENSOR_CACHE_DIR";

const FORMAT: &str = "nutensor-cache/1";

/// Digest of a computation: command, group, options and tool version.
pub fn cache_key(command: &str, group: &str, options: &str) -> String {
    key_for_version(TOOL_VERSION, command, group, options)
}

fn key_for_version(version: &str, command: &str, group: &str, options: &str) -> String {
    let mut h = Sha256::new();
    for part in [FORMAT, version, command, group, options] {
        // length-prefixed so that parts cannot run into each other
        h.update((part.len() as u64).to_le_bytes());
        h.update(part.as_bytes());
    }
    hex::encode(h.finalize())
}

#[derive(Debug)]
pub enum Lookup {
    Hit(Box<Report>),
    Miss,
    /// The entry exists but could not be read back; the reason is given.
    Corrupt(String),
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$NUTENSOR_CACHE_DIR`, else `$XDG_CACHE_HOME/nutensor`, else
    /// `$HOME/.cache/nutensor`.
    pub fn from_env() -> Option<Self> {
        let var = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty());
        if let Some(d) = var(CACHE_DIR_ENV) {
            return Some(Cache::new(d));
        }
        if let Some(d) = var("XDG_CACHE_HOME") {
            return Some(Cache::new(Path::new(&d).join("nutensor")));
        }
        var("HOME").map(|h| Cache::new(Path::new(&h).join(".cache").join("nutensor")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    fn header(key: &str) -> String {
        format!("{FORMAT} {TOOL_VERSION} {key}")
    }

    pub fn load(&self, key: &str) -> Lookup {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        let Some((header, body)) = text.split_once('\n') else {
            return Lookup::Corrupt(format!("{}: missing header", path.display()));
        };
        if header != Self::header(key) {
            return Lookup::Corrupt(format!("{}: unexpected header {header:?}", path.display()));
        }
        match Report::from_json(body) {
            Ok(r) => Lookup::Hit(Box::new(r)),
            Err(e) => Lookup::Corrupt(format!("{}: {e}", path.display())),
        }
    }

    pub fn store(&self, key: &str, report: &Report) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        writeln!(tmp, "{}", Self::header(key))?;
        tmp.write_all(report.to_json().as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
