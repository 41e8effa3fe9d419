//! On-disk cache of analysis reports, keyed by catalog content, prime,
//! options and library version.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::analyze::{AnalysisReport, AnalyzeOptions, REPORT_VERSION};
use super::format::{render, CatalogEntry};
use crate::error::Result;

pub const CACHE_ENV: &str = "FUSIONFORGE_CACHE";

#[derive(Serialize, Deserialize)]
struct Envelope {
    key: String,
    report: AnalysisReport,
}

#[derive(Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit(Box<AnalysisReport>),
    Miss,
    /// Unreadable or mismatched file; it will be overwritten.
    Corrupt(String),
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    /// `$FUSIONFORGE_CACHE`, else a directory under the user cache location.
    pub fn from_env() -> Cache {
        if let Some(d) = std::env::var_os(CACHE_ENV) {
            return Cache::new(d);
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache")))
            .unwrap_or_else(std::env::temp_dir);
        Cache::new(base.join("fusionforge"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(entry: &CatalogEntry, p: u64, opts: &AnalyzeOptions) -> String {
        let mut h = Sha256::new();
        h.update(render(std::slice::from_ref(entry)).as_bytes());
        h.update(format!(
            "\np={}\nlattice={}\nelementary={}\nreport={}\nlib={}\n",
            p,
            opts.max_lattice,
            opts.elementary_only,
            REPORT_VERSION,
            env!("CARGO_PKG_VERSION")
        ));
        h.finalize().iter().map(|b| format!("{:02x}", b)).collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", key))
    }

    pub fn get(&self, key: &str) -> Lookup {
        let path = self.path(key);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        match serde_json::from_str::<Envelope>(&text) {
            Ok(env) if env.key == key && env.report.version == REPORT_VERSION => Lookup::Hit(Box::new(env.report)),
            Ok(_) => Lookup::Corrupt("key or version mismatch".into()),
            Err(e) => Lookup::Corrupt(e.to_string()),
        }
    }

    /// Writes to a temporary file in the cache directory, then renames.
    pub fn put(&self, key: &str, report: &AnalysisReport) -> Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let env = Envelope {
            key: key.to_string(),
            report: report.clone(),
        };
        let text = serde_json::to_string_pretty(&env).map_err(|e| crate::Error::Io(e.to_string()))?;
        let tmp = self.dir.join(format!(".{}.{}.tmp", key, std::process::id()));
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, self.path(key))?;
        Ok(())
    }
}
