//! Flat key-value experiment parameters with typed access.
//!
//! Defaults come from the recipe table; `--set key=value` overrides win.
//! Override keys must exist among the defaults and parse as the same kind.

use anyhow::{anyhow, bail, Result};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(u64),
    Text(String),
}

impl Value {
    pub fn parse_like(&self, raw: &str) -> Result<Value> {
        match self {
            Value::Float(_) => raw
                .parse::<f64>()
                .map(Value::Float)
                .map_err(|_| anyhow!("expected a number, got `{raw}`")),
            Value::Int(_) => raw
                .parse::<u64>()
                .map(Value::Int)
                .map_err(|_| anyhow!("expected a non-negative integer, got `{raw}`")),
            Value::Text(_) => Ok(Value::Text(raw.to_string())),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Value::Float(v) => format!("{v}"),
            Value::Int(v) => format!("{v}"),
            Value::Text(v) => v.clone(),
        }
    }
}

/// Resolved parameter set of one run.
#[derive(Debug, Clone)]
pub struct Params {
    values: BTreeMap<String, Value>,
}

impl Params {
    pub fn resolve(
        defaults: &[(&str, Value)],
        overrides: &[(String, String)],
    ) -> Result<Params> {
        let mut values: BTreeMap<String, Value> = defaults
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        for (key, raw) in overrides {
            let Some(default) = values.get(key) else {
                bail!("unknown parameter `{key}`");
            };
            let parsed = default
                .parse_like(raw)
                .map_err(|e| anyhow!("parameter `{key}`: {e}"))?;
            values.insert(key.clone(), parsed);
        }
        Ok(Params { values })
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        match self.values.get(key) {
            Some(Value::Float(v)) => Ok(*v),
            Some(Value::Int(v)) => Ok(*v as f64),
            _ => bail!("parameter `{key}` is not a number"),
        }
    }

    pub fn u32(&self, key: &str) -> Result<u32> {
        match self.values.get(key) {
            Some(Value::Int(v)) => Ok(u32::try_from(*v)?),
            _ => bail!("parameter `{key}` is not an integer"),
        }
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        match self.values.get(key) {
            Some(Value::Int(v)) => Ok(usize::try_from(*v)?),
            _ => bail!("parameter `{key}` is not an integer"),
        }
    }

    pub fn text(&self, key: &str) -> Result<&str> {
        match self.values.get(key) {
            Some(Value::Text(v)) => Ok(v),
            _ => bail!("parameter `{key}` is not text"),
        }
    }

    /// Comma-separated integer list.
    pub fn u32_list(&self, key: &str) -> Result<Vec<u32>> {
        let raw = self.text(key)?;
        raw.split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| anyhow!("parameter `{key}`: bad integer `{s}`"))
            })
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Value)> {
        self.values.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_type_check() {
        let defaults = [
            ("nu", Value::Float(1.0)),
            ("m", Value::Int(0)),
            ("field", Value::Text("cs".into())),
        ];
        let p = Params::resolve(
            &defaults,
            &[("nu".into(), "2.5".into()), ("m".into(), "3".into())],
        )
        .unwrap();
        assert_eq!(p.f64("nu").unwrap(), 2.5);
        assert_eq!(p.u32("m").unwrap(), 3);
        assert_eq!(p.text("field").unwrap(), "cs");

        assert!(Params::resolve(&defaults, &[("bogus".into(), "1".into())]).is_err());
        assert!(Params::resolve(&defaults, &[("m".into(), "-1".into())]).is_err());
        assert!(Params::resolve(&defaults, &[("nu".into(), "abc".into())]).is_err());
    }
}
