//! Run manifests and the append-only JSONL result cache.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::output::{canonical, Outcome};

/// What identifies a computation, apart from the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunKey {
    pub label: String,
    pub subcommand: String,
    pub params: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub label: String,
    pub subcommand: String,
    pub params: Value,
    pub seed: u64,
    pub threads: usize,
    pub version: String,
    pub wall_ms: u128,
    /// sha256 of the canonical result text.
    pub digest: String,
}

impl RunManifest {
    pub fn new(key: &RunKey, seed: u64, threads: usize, wall: Duration, result: &Outcome) -> Self {
        RunManifest {
            label: key.label.clone(),
            subcommand: key.subcommand.clone(),
            params: key.params.clone(),
            seed,
            threads,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_ms: wall.as_millis(),
            digest: digest(result),
        }
    }

    fn matches(&self, key: &RunKey, seed: u64) -> bool {
        self.label == key.label
            && self.subcommand == key.subcommand
            && self.params == key.params
            && self.seed == seed
            && self.version == env!("CARGO_PKG_VERSION")
    }
}

pub fn digest(result: &Outcome) -> String {
    let mut h = Sha256::new();
    h.update(canonical(result).as_bytes());
    format!("{:x}", h.finalize())
}

#[derive(Serialize, Deserialize)]
struct Entry {
    manifest: RunManifest,
    result: Outcome,
}

pub struct Cache {
    path: PathBuf,
    entries: Vec<Entry>,
}

impl Cache {
    /// Reads every well-formed line; a missing file is an empty cache.
    pub fn open(path: &Path) -> io::Result<Self> {
        let mut entries = Vec::new();
        match File::open(path) {
            Ok(f) => {
                for line in BufReader::new(f).lines() {
                    if let Ok(e) = serde_json::from_str::<Entry>(&line?) {
                        entries.push(e);
                    }
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(Cache {
            path: path.to_path_buf(),
            entries,
        })
    }

    pub fn lookup(&self, key: &RunKey, seed: u64) -> Option<Outcome> {
        self.entries
            .iter()
            .find(|e| e.manifest.matches(key, seed) && e.manifest.digest == digest(&e.result))
            .map(|e| e.result.clone())
    }

    pub fn append(&mut self, manifest: &RunManifest, result: &Outcome) -> io::Result<()> {
        let entry = Entry {
            manifest: manifest.clone(),
            result: result.clone(),
        };
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{}", serde_json::to_string(&entry).map_err(io::Error::other)?)?;
        self.entries.push(entry);
        Ok(())
    }
}
