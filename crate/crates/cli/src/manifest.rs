use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDigest {
    /// Path relative to the output directory.
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

/// Provenance written next to every run's outputs as `manifest.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub seed: Option<u64>,
    pub version: String,
    pub started: String,
    pub finished: String,
    pub outputs: Vec<OutputDigest>,
}

/// Collects files written into one output directory.
pub struct OutDir {
    dir: PathBuf,
    written: Vec<OutputDigest>,
    started: String,
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

impl OutDir {
    pub fn create(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(OutDir { dir: dir.to_path_buf(), written: Vec::new(), started: now() })
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> std::io::Result<()> {
        fs::write(self.dir.join(name), bytes)?;
        self.written.push(OutputDigest {
            path: name.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
            bytes: bytes.len() as u64,
        });
        Ok(())
    }

    pub fn finish(mut self, argv: &[String], seed: Option<u64>) -> std::io::Result<RunManifest> {
        let manifest = RunManifest {
            command_line: argv.to_vec(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            started: std::mem::take(&mut self.started),
            finished: now(),
            outputs: std::mem::take(&mut self.written),
        };
        let json = serde_json::to_vec_pretty(&manifest).map_err(std::io::Error::other)?;
        fs::write(self.dir.join("manifest.json"), json)?;
        Ok(manifest)
    }
}
