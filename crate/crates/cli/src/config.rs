//! `--config <file>` support: a flat `key = value` file whose keys are the
//! long flag names of the chosen subcommand.
//!
//! Config entries are spliced in right after the subcommand, ahead of the
//! explicit flags, so flags given on the command line take precedence.

use std::path::Path;

/// Parses `key = value` lines; `#` starts a comment, blank lines are ignored.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("line {}: expected `key = value`, got `{line}`", lineno + 1));
        };
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(format!("line {}: empty key", lineno + 1));
        }
        out.push((key.to_string(), value.trim().to_string()));
    }
    Ok(out)
}

/// Turns config entries into flags; boolean `true` becomes a bare flag and `false` is dropped.
pub fn config_to_args(entries: &[(String, String)]) -> Vec<String> {
    let mut args = Vec::new();
    for (key, value) in entries {
        match value.as_str() {
            "true" => args.push(format!("--{key}")),
            "false" => {}
            _ => args.push(format!("--{key}={value}")),
        }
    }
    args
}

/// Removes `--config <file>` / `--config=<file>` from `argv` and splices the
/// file's entries in after the first positional argument (the subcommand).
pub fn expand_config(argv: Vec<String>) -> Result<Vec<String>, String> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut file = None;
    let mut it = argv.into_iter();
    if let Some(prog) = it.next() {
        rest.push(prog);
    }
    while let Some(arg) = it.next() {
        if arg == "--config" {
            file = Some(it.next().ok_or("--config needs a file argument")?);
        } else if let Some(f) = arg.strip_prefix("--config=") {
            file = Some(f.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(file) = file else { return Ok(rest) };
    let text = std::fs::read_to_string(Path::new(&file)).map_err(|e| format!("cannot read config `{file}`: {e}"))?;
    let extra = config_to_args(&parse_config(&text)?);
    let at = rest.iter().skip(1).position(|a| !a.starts_with('-')).map(|p| p + 2).unwrap_or(rest.len());
    rest.splice(at..at, extra);
    Ok(rest)
}
