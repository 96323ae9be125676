//! Merging JSON config files with command-line flags.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::{CliError, Format};

/// Options shared by every command.
pub struct Settings {
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

pub fn load(path: &Path) -> Result<Map<String, Value>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(CliError::Usage(format!("{}: config must be a JSON object", path.display()))),
        Err(e) => Err(CliError::Usage(format!("{}: {e}", path.display()))),
    }
}

/// Moves `out` and `format` from the file into `settings` unless the flags
/// already set them.
pub fn split_common(mut file: Map<String, Value>, settings: &mut Settings) -> Result<Map<String, Value>, CliError> {
    if let Some(v) = file.remove("out") {
        let p: PathBuf = serde_json::from_value(v).map_err(|e| CliError::Usage(format!("config key out: {e}")))?;
        settings.out.get_or_insert(p);
    }
    if let Some(v) = file.remove("format") {
        let f: Format = serde_json::from_value(v).map_err(|e| CliError::Usage(format!("config key format: {e}")))?;
        settings.format.get_or_insert(f);
    }
    Ok(file)
}

/// Flags override file values; unknown keys are rejected by `T`.
pub fn merge<T: Serialize + DeserializeOwned>(flags: &T, file: Option<&Map<String, Value>>) -> Result<T, CliError> {
    let Value::Object(from_flags) = serde_json::to_value(flags).expect("arguments serialize") else {
        unreachable!("argument structs serialize to objects");
    };
    let mut merged = file.cloned().unwrap_or_default();
    for (k, v) in from_flags {
        if !v.is_null() {
            merged.insert(k, v);
        }
    }
    serde_json::from_value(Value::Object(merged)).map_err(|e| CliError::Usage(format!("config: {e}")))
}
