//! `--config` files: flat `key=value` lines whose keys are long flag names.
//!
//! The file is expanded into `--key=value` arguments placed directly after the
//! subcommand, so flags given on the command line come later and win.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use crate::error::{CliError, CliResult};

/// Keys that are switches rather than valued options.
const SWITCHES: &[&str] = &["dump-config"];

/// Parses config text into `--key=value` arguments.
pub fn parse(text: &str) -> CliResult<Vec<String>> {
    let mut args = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("config line {}: expected key=value, got {line:?}", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-') {
            return Err(CliError::config(format!("config line {}: bad key {key:?}", lineno + 1)));
        }
        if key == "config" {
            return Err(CliError::config("config files cannot include other config files"));
        }
        if SWITCHES.contains(&key) {
            match value {
                "true" => args.push(format!("--{key}")),
                "false" => {}
                _ => return Err(CliError::config(format!("config line {}: {key} takes true or false", lineno + 1))),
            }
            continue;
        }
        if value.is_empty() {
            return Err(CliError::config(format!("config line {}: empty value for {key}", lineno + 1)));
        }
        args.push(format!("--{key}={value}"));
    }
    Ok(args)
}

fn config_path(args: &[OsString]) -> CliResult<Option<OsString>> {
    let mut found = None;
    let mut iter = args.iter();
    while let Some(a) = iter.next() {
        let Some(s) = a.to_str() else { continue };
        if s == "--" {
            break;
        }
        if s == "--config" {
            let path = iter.next().ok_or_else(|| CliError::config("--config needs a path"))?;
            found = Some(path.clone());
        } else if let Some(p) = s.strip_prefix("--config=") {
            found = Some(OsString::from(p));
        }
    }
    Ok(found)
}

/// Returns `args` with the contents of any `--config` file spliced in after
/// the subcommand. The last `--config` wins.
pub fn expand(args: Vec<OsString>) -> CliResult<Vec<OsString>> {
    let Some(sub) = args.iter().skip(1).position(|a| !a.to_string_lossy().starts_with('-')).map(|i| i + 1) else {
        return Ok(args);
    };
    let Some(path) = config_path(&args[sub + 1..])? else {
        return Ok(args);
    };
    let text = fs::read_to_string(Path::new(&path))
        .map_err(|e| CliError::config(format!("cannot read config {}: {e}", Path::new(&path).display())))?;
    let injected = parse(&text)?;
    let mut out = Vec::with_capacity(args.len() + injected.len());
    out.extend_from_slice(&args[..=sub]);
    out.extend(injected.into_iter().map(OsString::from));
    out.extend_from_slice(&args[sub + 1..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lines() {
        let text = "# comment\npotential = yukawa-cos\n\ndelta=0.5\nV0=-10\ndump-config=false\n";
        assert_eq!(parse(text).unwrap(), vec!["--potential=yukawa-cos", "--delta=0.5", "--V0=-10"]);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse("delta").is_err());
        assert!(parse("de lta=1").is_err());
        assert!(parse("delta=").is_err());
        assert!(parse("config=x").is_err());
        assert!(parse("dump-config=yes").is_err());
    }

    #[test]
    fn splices_after_subcommand() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        fs::write(&path, "N=50\nell=1\n").unwrap();
        let args: Vec<OsString> =
            ["trispectra", "solve", "--config", path.to_str().unwrap(), "--N", "80"].iter().map(OsString::from).collect();
        let out = expand(args).unwrap();
        let out: Vec<_> = out.iter().map(|a| a.to_str().unwrap()).collect();
        assert_eq!(&out[..4], &["trispectra", "solve", "--N=50", "--ell=1"]);
        assert_eq!(&out[6..], &["--N", "80"]);
    }
}
