use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Everything needed to reproduce a report. Thread count is never recorded.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub version: &'static str,
    pub command: String,
    pub args: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    pub inputs: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(command: &str, args: &[String]) -> Self {
        RunManifest {
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            args: strip_threads(args),
            seed: None,
            field: None,
            timing_ms: None,
            inputs: BTreeMap::new(),
        }
    }

    pub fn hash_input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.insert(name.to_string(), sha256_hex(bytes));
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn strip_threads(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if a == "--threads" {
            skip = true;
            continue;
        }
        if a.starts_with("--threads=") || a == "--timing" {
            continue;
        }
        out.push(a.clone());
    }
    out
}
