//! Key-value configuration files: one `key = value` per line, `#` comments,
//! keys matching the long flag names. Flags always override file values.

use std::collections::BTreeMap;
use std::path::Path;

use crate::CliError;

pub const KNOWN_KEYS: &[&str] = &[
    "epsilon",
    "temperature_mk",
    "omega_d_ghz",
    "omega_d_rad",
    "l_eff_mm",
    "v_mps",
    "convention",
    "pipeline",
    "units",
    "out",
    "allow_nonperturbative",
];

/// Parses a config file into normalized key/value pairs (`-` treated as `_`).
pub fn parse_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_str(&text)
}

pub fn parse_str(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!("line {}: expected `key = value`", lineno + 1))
        })?;
        let key = key.trim().replace('-', "_");
        let value = value.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(CliError::Config(format!(
                "line {}: unknown key `{key}`",
                lineno + 1
            )));
        }
        if out.insert(key.clone(), value).is_some() {
            return Err(CliError::Config(format!(
                "line {}: duplicate key `{key}`",
                lineno + 1
            )));
        }
    }
    Ok(out)
}

pub fn parse_f64(key: &str, value: &str) -> Result<f64, CliError> {
    value
        .parse::<f64>()
        .map_err(|_| CliError::Config(format!("key `{key}`: `{value}` is not a number")))
}

pub fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(CliError::Config(format!(
            "key `{key}`: `{value}` is not a boolean"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_comments_and_whitespace() {
        let m = parse_str("# comment\n\nepsilon = 0.1\ntemperature-mk = 50\n").unwrap();
        assert_eq!(m.get("epsilon").unwrap(), "0.1");
        assert_eq!(m.get("temperature_mk").unwrap(), "50");
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        assert!(parse_str("bogus = 1\n").is_err());
        assert!(parse_str("epsilon = 1\nepsilon = 2\n").is_err());
        assert!(parse_str("epsilon\n").is_err());
    }
}
