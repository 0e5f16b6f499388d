//! `key=value` configuration files.
//!
//! Keys are long flag names. A key fills in its flag only when the command
//! line does not give it, and keys that the chosen subcommand does not
//! accept are skipped, so one file can serve several subcommands. A key no
//! subcommand knows is a usage error.

use std::collections::BTreeSet;
use std::ffi::OsString;

use clap::Command;

#[derive(Debug, PartialEq, Eq)]
pub enum ConfigFileError {
    /// Unreadable file: an operational failure.
    Io(String),
    /// Malformed content or unknown key: a usage error.
    Usage(String),
}

/// Parses `key = value` lines; `#` starts a comment line.
pub fn parse(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
        let k = k.trim().trim_start_matches("--");
        if k.is_empty() {
            return Err(format!("line {}: empty key", i + 1));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Value of `--config`, if present on the command line.
fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(p.into());
        }
    }
    None
}

struct FlagInfo {
    takes_value: bool,
}

fn long_flags(cmd: &Command) -> Vec<(String, FlagInfo)> {
    cmd.get_arguments()
        .filter_map(|a| {
            let takes_value = a.get_action().takes_values();
            a.get_long().map(|l| (l.to_string(), FlagInfo { takes_value }))
        })
        .collect()
}

/// Appends flags from the `--config` file to `args`.
pub fn expand_args(cmd: &Command, args: Vec<OsString>) -> Result<Vec<OsString>, ConfigFileError> {
    let Some(path) = config_path(&args) else { return Ok(args) };
    let text =
        std::fs::read_to_string(&path).map_err(|e| ConfigFileError::Io(format!("reading config file {}: {e}", path.to_string_lossy())))?;
    let entries = parse(&text).map_err(|e| ConfigFileError::Usage(format!("config file {}: {e}", path.to_string_lossy())))?;

    let mut known: BTreeSet<String> = long_flags(cmd).into_iter().map(|(k, _)| k).collect();
    for sub in cmd.get_subcommands() {
        known.extend(long_flags(sub).into_iter().map(|(k, _)| k));
    }
    // the first argument naming a subcommand selects the flags that apply
    let sub = args.iter().skip(1).find_map(|a| cmd.find_subcommand(a.to_string_lossy().as_ref()));
    let flags = sub.map(long_flags).unwrap_or_default();
    let given: BTreeSet<String> =
        args.iter().filter_map(|a| a.to_str()?.strip_prefix("--").map(|f| f.split('=').next().unwrap_or(f).to_string())).collect();

    let mut out = args;
    for (key, value) in entries {
        if !known.contains(&key) {
            return Err(ConfigFileError::Usage(format!("config file {}: unknown key '{key}'", path.to_string_lossy())));
        }
        if key == "config" || given.contains(&key) {
            continue;
        }
        let Some((_, info)) = flags.iter().find(|(k, _)| *k == key) else { continue };
        if info.takes_value {
            out.push(format!("--{key}").into());
            out.push(value.into());
        } else if matches!(value.as_str(), "true" | "yes" | "1") {
            out.push(format!("--{key}").into());
        }
    }
    Ok(out)
}
