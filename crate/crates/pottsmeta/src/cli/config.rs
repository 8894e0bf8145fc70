//! Config files: `key = value` lines or a flat JSON object. Entries become
//! long flags placed before the user's own, so explicit flags win.

use crate::error::{Error, Result};

pub fn parse(text: &str) -> Result<Vec<(String, String)>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("config: {e}")))?;
        let obj = v.as_object().ok_or_else(|| Error::Parse("config JSON must be an object".into()))?;
        return obj
            .iter()
            .map(|(k, v)| {
                let s = match v {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(_) | serde_json::Value::Bool(_) => v.to_string(),
                    serde_json::Value::Array(xs) => {
                        xs.iter().map(|x| x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string())).collect::<Vec<_>>().join(",")
                    }
                    _ => return Err(Error::Parse(format!("config key {k:?} has an unsupported value"))),
                };
                Ok((k.clone(), s))
            })
            .collect();
    }
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", i + 1)))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Normalizes `snake_case` keys to flag names and leading dashes away.
pub fn flag_name(key: &str) -> String {
    let k = key.trim_start_matches('-');
    if k.len() == 1 {
        k.to_string()
    } else {
        k.replace('_', "-")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_value_and_json_agree() {
        let a = parse("# model\nq = 4\nK=9\n\nbeta = 2.5 # inverse temperature\n").unwrap();
        let b = parse(r#"{"q": 4, "K": 9, "beta": 2.5}"#).unwrap();
        let sort = |mut v: Vec<(String, String)>| {
            v.sort();
            v
        };
        assert_eq!(sort(a), sort(b));
    }

    #[test]
    fn arrays_and_errors() {
        let v = parse(r#"{"observe": ["gate", "tube-exit"], "unsafe_params": true}"#).unwrap();
        assert!(v.contains(&("observe".into(), "gate,tube-exit".into())));
        assert_eq!(flag_name("unsafe_params"), "unsafe-params");
        assert_eq!(flag_name("K"), "K");
        assert!(parse("q 3").is_err());
        assert!(parse("[1, 2]").is_err());
    }
}
