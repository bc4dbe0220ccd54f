//! Scenario config files.
//!
//! A config file is a JSON object holding any subset of the scenario fields.
//! It is laid over a base preset, so `{"n_devices": 250}` is a complete file.
//! Nested sections (`geometry`, `traffic`, `power`, `qlearning`) merge field
//! by field. Keys the scenario does not define are rejected.

use crate::CliError;
use mmimo_core::campaign::{Preset, ScenarioConfig};
use mmimo_core::SimError;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use std::path::Path;

pub fn load(path: &Path, base: Preset) -> Result<ScenarioConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse(&text, base)
}

pub fn parse(text: &str, base: Preset) -> Result<ScenarioConfig, CliError> {
    let overlay: Value =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config is not valid JSON: {e}")))?;
    let Value::Object(overlay) = overlay else {
        return Err(CliError::Usage("config must be a JSON object".into()));
    };
    let base_cfg = ScenarioConfig::preset(base);
    let mut merged = serde_json::to_value(&base_cfg).expect("scenario serializes");
    let Value::Object(target) = &mut merged else { unreachable!() };
    merge(target, &overlay, "")?;

    if let Err(e) = serde_json::from_value::<ScenarioConfig>(merged.clone()) {
        // serde does not report where a type error sits; apply keys one by one
        let key = overlay
            .iter()
            .find(|(k, v)| {
                let mut one = serde_json::to_value(&base_cfg).expect("scenario serializes");
                let Value::Object(t) = &mut one else { unreachable!() };
                let single: Map<String, Value> = [((*k).clone(), (*v).clone())].into_iter().collect();
                merge(t, &single, "").is_ok() && serde_json::from_value::<ScenarioConfig>(one).is_err()
            })
            .map(|(k, _)| k.clone())
            .unwrap_or_default();
        return Err(CliError::Usage(format!("bad value for key `{key}`: {e}")));
    }
    let cfg: ScenarioConfig = serde_json::from_value(merged).expect("checked above");
    check(&cfg)?;
    Ok(cfg)
}

fn merge(target: &mut Map<String, Value>, overlay: &Map<String, Value>, prefix: &str) -> Result<(), CliError> {
    for (k, v) in overlay {
        let path = format!("{prefix}{k}");
        match target.get_mut(k) {
            None => return Err(CliError::Usage(format!("unknown config key `{path}`"))),
            Some(Value::Object(inner)) => match v {
                Value::Object(sub) => merge(inner, sub, &format!("{path}."))?,
                _ => return Err(CliError::Usage(format!("key `{path}` must be an object"))),
            },
            Some(slot) => *slot = v.clone(),
        }
    }
    Ok(())
}

/// Scenario validation, with parameter problems reported as usage errors.
pub fn check(cfg: &ScenarioConfig) -> Result<(), CliError> {
    cfg.validate().map_err(|e| match e {
        SimError::InvalidParameter { name, reason } => CliError::Usage(format!("invalid key `{name}`: {reason}")),
        other => CliError::Runtime(other.into()),
    })
}

/// Hex SHA-256 of the compact JSON serialization. Field order is fixed by
/// the struct definition, so equal configs give equal digests.
pub fn digest<T: serde::Serialize>(value: &T) -> String {
    let text = serde_json::to_string(value).expect("config serializes");
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn usage(r: Result<ScenarioConfig, CliError>) -> String {
        match r {
            Err(CliError::Usage(m)) => m,
            other => panic!("expected usage error, got {other:?}"),
        }
    }

    #[test]
    fn empty_object_is_the_preset() {
        assert_eq!(parse("{}", Preset::Optimized).unwrap(), ScenarioConfig::preset(Preset::Optimized));
    }

    #[test]
    fn overrides_nested_fields() {
        let c = parse(r#"{"n_devices": 250, "geometry": {"cell_radius_m": 100.0}}"#, Preset::Baseline).unwrap();
        assert_eq!(c.n_devices, 250);
        assert_eq!(c.geometry.cell_radius_m, 100.0);
        assert_eq!(c.geometry.min_distance_m, ScenarioConfig::preset(Preset::Baseline).geometry.min_distance_m);
    }

    #[test]
    fn unknown_keys_are_named() {
        assert!(usage(parse(r#"{"n_device": 3}"#, Preset::Baseline)).contains("`n_device`"));
        assert!(usage(parse(r#"{"power": {"p_fix": 3}}"#, Preset::Baseline)).contains("`power.p_fix`"));
    }

    #[test]
    fn bad_values_are_named() {
        assert!(usage(parse(r#"{"combiner": "mmse"}"#, Preset::Baseline)).contains("`combiner`"));
        assert!(usage(parse(r#"{"tau_p": 500}"#, Preset::Baseline)).contains("`tau_p`"));
        assert!(usage(parse("[1]", Preset::Baseline)).contains("object"));
        assert!(usage(parse("{", Preset::Baseline)).contains("JSON"));
    }

    #[test]
    fn digest_tracks_content() {
        let a = ScenarioConfig::preset(Preset::Baseline);
        let mut b = a.clone();
        assert_eq!(digest(&a), digest(&b));
        b.master_seed += 1;
        assert_ne!(digest(&a), digest(&b));
        assert_eq!(digest(&a).len(), 64);
    }
}
