use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::cache::CacheStats;
use crate::error::Result;
use crate::verifier::{CheckResult, PClassCertificate, Summary};

pub const TOOL: &str = "graphcap";

/// Flags that influenced the run, echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub kmax: Option<u32>,
    pub tol: Option<f64>,
    pub power: Option<u32>,
    pub budget_nodes: Option<u64>,
    pub budget_seconds: Option<u64>,
    pub seed: Option<u64>,
    pub cache: bool,
    pub verify_cache: bool,
    /// Full suite configuration for `verify`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub suite: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub timestamp: u64,
    pub command: String,
    pub config: ConfigEcho,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub result: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub summary: Option<Summary>,
    #[serde(default)]
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub certificates: Vec<PClassCertificate>,
    pub cache: CacheStats,
}

impl ReportDocument {
    pub fn new(command: &str, config: ConfigEcho, cache: CacheStats) -> Self {
        ReportDocument {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            command: command.into(),
            config,
            result: None,
            summary: None,
            checks: Vec::new(),
            certificates: Vec::new(),
            cache,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    /// Writes into `dir` under a fresh name; existing reports are never
    /// overwritten.
    pub fn append_to_dir(&self, dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let json = self.to_json()?;
        for seq in 0.. {
            let path = dir.join(format!("{}-{}-{seq:04}.json", self.command, self.timestamp));
            match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(mut f) => {
                    use std::io::Write;
                    f.write_all(json.as_bytes())?;
                    return Ok(path);
                }
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
                Err(e) => return Err(e.into()),
            }
        }
        unreachable!()
    }
}

/// Replaces the timestamp so two reports can be compared byte for byte.
pub fn mask_timestamp(json: &str) -> String {
    let mut v: serde_json::Value = match serde_json::from_str(json) {
        Ok(v) => v,
        Err(_) => return json.to_string(),
    };
    if let Some(t) = v.get_mut("timestamp") {
        *t = serde_json::Value::from(0);
    }
    serde_json::to_string_pretty(&v).unwrap_or_default() + "\n"
}
