//! `key=value` configuration files, spliced into the argument list ahead of
//! the user's own flags so that flags win.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use crate::error::{CliError, CliResult};

/// Parses `key=value` lines; `#` starts a comment, blank lines are skipped.
pub fn parse_config(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", i + 1)));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

/// Flags for the config entries. Boolean entries become a bare flag when
/// true and nothing when false.
fn entries_to_flags(entries: &[(String, String)]) -> Vec<OsString> {
    let mut out = Vec::new();
    for (k, v) in entries {
        match v.to_ascii_lowercase().as_str() {
            "true" | "yes" | "on" => out.push(format!("--{k}").into()),
            "false" | "no" | "off" => {}
            _ => {
                out.push(format!("--{k}").into());
                out.push(v.into());
            }
        }
    }
    out
}

/// The `--config` value in a raw argument list, if any.
pub fn find_config_arg(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            return None;
        }
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(v));
        }
    }
    None
}

/// The subcommand path named in a raw argument list.
pub fn subcommand_path(args: &[OsString]) -> Option<Vec<&'static str>> {
    const TOP: [&str; 4] = ["run", "certify", "lowerbound", "flow"];
    const CERTIFY: [&str; 3] = ["stepsize", "eagc", "lyapunov"];
    let pos = args.iter().skip(1).position(|a| TOP.iter().any(|t| a == *t))? + 1;
    let top = TOP.into_iter().find(|t| args[pos] == *t)?;
    if top != "certify" {
        return Some(vec![top]);
    }
    let sub = args.get(pos + 1)?;
    CERTIFY.into_iter().find(|c| sub == *c).map(|c| vec![top, c])
}

/// Position right after the subcommand path `path` in `args` (which include
/// the program name), or `None` if the path is not found.
fn insertion_point(args: &[OsString], path: &[&str]) -> Option<usize> {
    let mut pos = 1;
    for name in path {
        let found = args[pos..].iter().position(|a| a == name)?;
        pos += found + 1;
    }
    Some(pos)
}

/// The argument list with the config file's flags inserted after `path`.
/// Keys `config`, `seed` and `verbose` are global and go right after the
/// program name.
pub fn splice_config(args: &[OsString], path: &[&str], file: &Path) -> CliResult<Vec<OsString>> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", file.display())))?;
    let entries = parse_config(&text)?;
    let (globals, local): (Vec<_>, Vec<_>) = entries
        .into_iter()
        .filter(|(k, _)| k != "config")
        .partition(|(k, _)| k == "seed" || k == "verbose");
    let at = insertion_point(args, path)
        .ok_or_else(|| CliError::Usage("cannot locate the subcommand for config splicing".into()))?;
    let mut out: Vec<OsString> = vec![args[0].clone()];
    out.extend(entries_to_flags(&globals));
    out.extend_from_slice(&args[1..at]);
    out.extend(entries_to_flags(&local));
    out.extend_from_slice(&args[at..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn parses_comments_and_underscores() {
        let e = parse_config("# c\nalpha0 = 0.5\n\nno_bound=true # trailing\n").unwrap();
        assert_eq!(e, vec![("alpha0".into(), "0.5".into()), ("no-bound".into(), "true".into())]);
        assert!(parse_config("nonsense").is_err());
    }

    #[test]
    fn flags_follow_config_entries() {
        let dir = std::env::temp_dir().join(format!("am-config-{}", std::process::id()));
        std::fs::write(&dir, "iters=5\nseed=9\ndense=true\n").unwrap();
        let args = os(&["bin", "--config", "f", "run", "--iters", "7"]);
        let got = splice_config(&args, &["run"], &dir).unwrap();
        std::fs::remove_file(&dir).ok();
        assert_eq!(
            got,
            os(&["bin", "--seed", "9", "--config", "f", "run", "--iters", "5", "--dense", "--iters", "7"])
        );
    }

    #[test]
    fn raw_scans() {
        let args = os(&["bin", "--config=a.cfg", "certify", "lyapunov", "--problem", "run"]);
        assert_eq!(find_config_arg(&args), Some(PathBuf::from("a.cfg")));
        assert_eq!(subcommand_path(&args), Some(vec!["certify", "lyapunov"]));
        let args = os(&["bin", "-v", "flow", "--config", "b"]);
        assert_eq!(find_config_arg(&args), Some(PathBuf::from("b")));
        assert_eq!(subcommand_path(&args), Some(vec!["flow"]));
        assert_eq!(subcommand_path(&os(&["bin", "certify"])), None);
    }

    #[test]
    fn nested_subcommand_path() {
        let args = os(&["bin", "certify", "eagc", "--k", "3"]);
        assert_eq!(insertion_point(&args, &["certify", "eagc"]), Some(3));
        assert_eq!(insertion_point(&args, &["run"]), None);
    }
}
