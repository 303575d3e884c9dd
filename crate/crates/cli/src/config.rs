//! TOML config files. Top-level keys apply to every subcommand that accepts
//! them; a table named after a subcommand applies to that subcommand only.
//! Flags on the command line take precedence over both.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use toml::{Table, Value};

pub const GLOBAL_KEYS: [&str; 2] = ["format", "output"];

#[derive(Debug, Clone, Default)]
pub struct Config {
    table: Table,
    keys: BTreeMap<String, BTreeSet<String>>,
}

/// Config keys accepted by each subcommand: long flag names and positional ids.
pub fn subcommand_keys(cmd: &clap::Command) -> BTreeMap<String, BTreeSet<String>> {
    cmd.get_subcommands()
        .map(|sub| {
            let keys = sub
                .get_arguments()
                .filter(|a| !a.is_global_set())
                .filter_map(|a| match a.get_long() {
                    Some(long) => Some(long.to_string()),
                    None if a.is_positional() => Some(a.get_id().to_string()),
                    None => None,
                })
                .filter(|k| k != "help" && !GLOBAL_KEYS.contains(&k.as_str()))
                .collect();
            (sub.get_name().to_string(), keys)
        })
        .collect()
}

impl Config {
    pub fn empty(cmd: &clap::Command) -> Self {
        Config {
            table: Table::new(),
            keys: subcommand_keys(cmd),
        }
    }

    pub fn load(path: &Path, cmd: &clap::Command) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("invalid argument: cannot read config {}", path.display()))?;
        Self::parse(&text, cmd)
    }

    /// Parses and validates every key against the known flags.
    pub fn parse(text: &str, cmd: &clap::Command) -> Result<Self> {
        let table: Table = text
            .parse()
            .map_err(|e| anyhow!("parse error: config: {e}"))?;
        let cfg = Config {
            table,
            keys: subcommand_keys(cmd),
        };
        for (key, value) in &cfg.table {
            match value {
                Value::Table(inner) => {
                    let allowed = cfg
                        .keys
                        .get(key)
                        .ok_or_else(|| anyhow!("invalid argument: config table [{key}] is not a subcommand"))?;
                    if let Some(bad) = inner.keys().find(|k| !allowed.contains(*k)) {
                        bail!("invalid argument: config key {key}.{bad} is not a flag of {key}");
                    }
                }
                _ if GLOBAL_KEYS.contains(&key.as_str()) => {}
                _ if cfg.keys.values().any(|ks| ks.contains(key)) => {}
                _ => bail!("invalid argument: unknown config key {key:?}"),
            }
        }
        Ok(cfg)
    }

    pub fn global<T: DeserializeOwned>(&self, key: &str) -> Result<Option<T>> {
        self.table
            .get(key)
            .map(|v| {
                v.clone()
                    .try_into()
                    .map_err(|e| anyhow!("invalid argument: config key {key}: {e}"))
            })
            .transpose()
    }

    /// `cli` with absent options filled from the config.
    pub fn merge<T: Serialize + DeserializeOwned>(&self, sub: &str, cli: &T) -> Result<T> {
        let allowed = self.keys.get(sub).cloned().unwrap_or_default();
        let mut merged = Table::new();
        for (k, v) in &self.table {
            if !v.is_table() && allowed.contains(k) {
                merged.insert(k.clone(), v.clone());
            }
        }
        if let Some(Value::Table(inner)) = self.table.get(sub) {
            merged.extend(inner.clone());
        }
        let given = Value::try_from(cli).map_err(|e| anyhow!("invalid argument: {e}"))?;
        if let Value::Table(given) = given {
            merged.extend(given.into_iter().filter(|(_, v)| v.as_bool() != Some(false)));
        }
        Value::Table(merged)
            .try_into()
            .map_err(|e| anyhow!("invalid argument: config for {sub}: {e}"))
    }
}
