//! Optional on-disk cache for exhaustive verification reports, enabled by
//! `TOURSID_CACHE_DIR`. Cache failures are ignored.

use std::path::PathBuf;

use serde_json::Value;

const ENV: &str = "TOURSID_CACHE_DIR";

/// Hex of the joined parts, so keys are valid file names.
pub fn key(parts: &[&str]) -> String {
    parts.join("\u{1f}").bytes().map(|b| format!("{b:02x}")).collect()
}

fn path(key: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(ENV)?;
    Some(PathBuf::from(dir).join(format!("verify-{key}.json")))
}

pub fn load(key: &str) -> Option<Value> {
    let text = std::fs::read_to_string(path(key)?).ok()?;
    serde_json::from_str(&text).ok()
}

pub fn store(key: &str, value: &Value) {
    let Some(p) = path(key) else { return };
    if let Some(dir) = p.parent() {
        let _ = std::fs::create_dir_all(dir);
    }
    let _ = std::fs::write(p, value.to_string());
}
