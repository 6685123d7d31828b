//! Run manifests and the text/JSON report documents.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, CliResult};

pub const TOOL: &str = "qmed";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything needed to reproduce a run: the command line, the resolved
/// configuration and the seed. `timestamp` is taken from
/// `SOURCE_DATE_EPOCH` when set and is otherwise null, so reruns are
/// byte-identical.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest<C: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub master_seed: Option<u64>,
    pub config: C,
    pub timestamp: Option<u64>,
}

impl<C: Serialize> Manifest<C> {
    pub fn new(command: &[String], master_seed: Option<u64>, config: C) -> Self {
        Manifest {
            tool: TOOL,
            version: VERSION,
            command: command.to_vec(),
            master_seed,
            config,
            timestamp: std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.trim().parse().ok()),
        }
    }

    pub fn command_line(&self) -> String {
        self.command.iter().map(|a| shell_quote(a)).collect::<Vec<_>>().join(" ")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }

    /// `# `-prefixed header used at the top of text reports and CSV files.
    pub fn comment_block(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# {TOOL} {VERSION}").unwrap();
        writeln!(s, "# command: {}", self.command_line()).unwrap();
        match self.master_seed {
            Some(seed) => writeln!(s, "# master_seed: {seed}").unwrap(),
            None => writeln!(s, "# master_seed: -").unwrap(),
        }
        writeln!(s, "# config: {}", serde_json::to_string(&self.config).expect("config serializes")).unwrap();
        match self.timestamp {
            Some(t) => writeln!(s, "# timestamp: {t}").unwrap(),
            None => writeln!(s, "# timestamp: null").unwrap(),
        }
        s
    }
}

fn shell_quote(a: &str) -> String {
    let plain = !a.is_empty()
        && a.chars().all(|c| c.is_ascii_alphanumeric() || "-_./=,:+@%".contains(c));
    if plain {
        a.to_string()
    } else {
        format!("'{}'", a.replace('\'', r"'\''"))
    }
}

#[derive(Serialize)]
struct Document<'a, C: Serialize, R: Serialize> {
    manifest: &'a Manifest<C>,
    report: &'a R,
}

pub fn json_document<C: Serialize, R: Serialize>(manifest: &Manifest<C>, report: &R) -> String {
    let mut s = serde_json::to_string_pretty(&Document { manifest, report }).expect("report serializes");
    s.push('\n');
    s
}

/// Left-aligned first column, right-aligned numeric columns.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut first = true;
        let mut l = String::new();
        for (i, cell) in cells.enumerate().take(cols) {
            if !first {
                l.push_str("  ");
            }
            let pad = width[i] - cell.chars().count();
            if i == 0 {
                l.push_str(cell);
                l.extend(std::iter::repeat_n(' ', pad));
            } else {
                l.extend(std::iter::repeat_n(' ', pad));
                l.push_str(cell);
            }
            first = false;
        }
        out.push_str(l.trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting() {
        assert_eq!(shell_quote("--grid=8"), "--grid=8");
        assert_eq!(shell_quote("a b"), "'a b'");
        assert_eq!(shell_quote("it's"), r"'it'\''s'");
    }

    #[test]
    fn table_alignment() {
        let t = table(&["name", "v"], &[vec!["a".into(), "1.5".into()], vec!["long".into(), "2".into()]]);
        assert_eq!(t, "name    v\na     1.5\nlong    2\n");
    }
}
