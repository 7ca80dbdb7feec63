//! Run manifests: everything needed to repeat a run bit for bit, including
//! the full text of every material file.

use std::path::Path;

use lifshitz::materials::{parse_material, shipped, Material};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{is_builtin, RunConfig};
use crate::error::{CliError, Result};

pub const MANIFEST_FILE: &str = "manifest.json";

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialRecord {
    /// As given by the user (path or built-in name).
    pub spec: String,
    /// `builtin:<name>` or the file path that was read.
    pub source: String,
    pub name: String,
    pub sha256: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub file: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    /// RFC 3339, UTC.
    pub timestamp: String,
    pub command: String,
    pub config: RunConfig,
    pub materials: Vec<MaterialRecord>,
    pub outputs: Vec<OutputRecord>,
    pub converged: bool,
    /// Manifest this run was replayed from, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replay_of: Option<String>,
}

impl RunManifest {
    pub fn new(
        config: &RunConfig,
        materials: &[MaterialRecord],
        outputs: Vec<OutputRecord>,
        converged: bool,
    ) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            command: config.task.name().into(),
            config: config.clone(),
            materials: materials.to_vec(),
            outputs,
            converged,
            replay_of: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifests always serialize");
        s.push('\n');
        s
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

/// Reads a material from a file path or, failing that, the bundled set.
pub fn load_material(spec: &str) -> Result<(Material, MaterialRecord)> {
    let (text, source) = if is_builtin(spec) {
        let (_, text) = shipped::by_name(spec).expect("checked by is_builtin");
        (
            text.to_string(),
            format!("builtin:{}", spec.to_ascii_lowercase()),
        )
    } else {
        let path = Path::new(spec);
        if !path.is_file() {
            return Err(CliError::Input(format!(
                "material '{spec}' is neither a readable file nor a built-in name \
                 (au, sio2, bromobenzene, vacuum, perfect_conductor)"
            )));
        }
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        (text, spec.to_string())
    };
    let material = parse_material(&text, &source).map_err(|e| named(e, &source))?;
    let record = MaterialRecord {
        spec: spec.to_string(),
        source,
        name: material.name.clone(),
        sha256: sha256_hex(text.as_bytes()),
        text,
    };
    Ok((material, record))
}

/// Rebuilds materials from the text embedded in a manifest, checking each
/// against its recorded digest.
pub fn restore_material(record: &MaterialRecord) -> Result<Material> {
    let digest = sha256_hex(record.text.as_bytes());
    if digest != record.sha256 {
        return Err(CliError::Input(format!(
            "material '{}' in manifest does not match its sha256",
            record.source
        )));
    }
    parse_material(&record.text, &record.source).map_err(|e| named(e, &record.source))
}

/// Parse errors already carry the file name; other errors get it prepended.
fn named(e: lifshitz::Error, source: &str) -> CliError {
    match e {
        lifshitz::Error::Parse { .. } => e.into(),
        other => CliError::Input(format!("{source}: {other}")),
    }
}
