//! Flat `key = value` text files.

use std::collections::BTreeMap;

/// Parses `key = value` lines. Blank lines and lines starting with `#` are
/// skipped; a repeated key is an error.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`", n + 1))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(format!("line {}: empty key", n + 1));
        }
        if out.insert(k.to_string(), v.trim().to_string()).is_some() {
            return Err(format!("line {}: duplicate key `{k}`", n + 1));
        }
    }
    Ok(out)
}


pub(crate) fn parse_field<T: std::str::FromStr>(name: &'static str, value: &str) -> crate::error::Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| crate::error::Error::invalid(name, format!("cannot parse `{value}`")))
}

/// `auto` or a number.
pub(crate) fn parse_optional_f64(name: &'static str, value: &str) -> crate::error::Result<Option<f64>> {
    match value.trim() {
        "auto" => Ok(None),
        v => parse_field(name, v).map(Some),
    }
}

pub(crate) fn format_optional_f64(v: Option<f64>) -> String {
    v.map_or_else(|| "auto".to_string(), |s| format!("{s:?}"))
}
