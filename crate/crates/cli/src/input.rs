//! Point files: `x,y` rows, an optional header row, `#` comment lines.

use std::fs;
use std::path::Path;

use quarter_median::Point2;

use crate::error::{CliError, CliResult};

pub fn read_points(path: &Path) -> CliResult<Vec<Point2>> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::Input(format!("{}: not valid UTF-8", path.display())))?;
    parse_points(&text).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_points(text: &str) -> CliResult<Vec<Point2>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut points = Vec::new();
    let mut header_allowed = true;
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Input(format!("malformed CSV: {e}")))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 2 {
            return Err(CliError::Input(format!(
                "line {line}: expected 2 fields, found {}",
                record.len()
            )));
        }
        match (parse_real(&record[0]), parse_real(&record[1])) {
            (Some(x), Some(y)) => {
                points.push(Point2::new(x, y));
                header_allowed = false;
            }
            _ if header_allowed && is_header(&record[0]) && is_header(&record[1]) => {
                header_allowed = false;
            }
            _ => {
                return Err(CliError::Input(format!(
                    "line {line}: cannot parse '{},{}' as two finite reals",
                    &record[0], &record[1]
                )));
            }
        }
    }
    if points.is_empty() {
        return Err(CliError::Input("no data rows".into()));
    }
    Ok(points)
}

fn parse_real(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn is_header(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == ' ')
}
