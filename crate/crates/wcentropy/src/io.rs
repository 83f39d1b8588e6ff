//! Sample-file parsing and plot-data serialization.
//!
//! Input files are UTF-8 text with comma- or whitespace-separated decimal
//! values; `#` starts a line comment. Output CSV uses a header row, LF line
//! endings, and 17-significant-digit decimals so every f64 survives a
//! round trip.

use std::path::Path;

use crate::empirical::CurvePoint;
use crate::error::{Error, Result};

/// Parse sample text into rows of values, preserving the line structure.
pub fn parse_sample_rows(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (line_idx, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        let mut token_start = None;
        // manual scan to keep byte columns for error reports
        for (col, ch) in line.char_indices().chain([(line.len(), ' ')]) {
            if ch.is_whitespace() || ch == ',' {
                if let Some(start) = token_start.take() {
                    let token = &line[start..col];
                    let value: f64 = token.parse().map_err(|_| Error::Parse {
                        line: line_idx + 1,
                        column: start + 1,
                        message: format!("expected a decimal number, got {token:?}"),
                    })?;
                    if !value.is_finite() || value < 0.0 {
                        return Err(Error::Domain(format!(
                            "line {}, column {}: lifetimes must be finite and >= 0, got {token}",
                            line_idx + 1,
                            start + 1
                        )));
                    }
                    row.push(value);
                }
            } else if token_start.is_none() {
                token_start = Some(col);
            }
        }
        if !row.is_empty() {
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Parse a sample file into a flat list, preserving file (row-major) order.
pub fn parse_sample_file(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_sample_rows(&text)?.into_iter().flatten().collect())
}

/// Flatten rows column by column. Requires a rectangular grid.
pub fn flatten_column_major(rows: &[Vec<f64>]) -> Result<Vec<f64>> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::Parameter(
            "column-major ordering requires every row to have the same number of values".into(),
        ));
    }
    let mut out = Vec::with_capacity(rows.len() * width);
    for col in 0..width {
        for row in rows {
            out.push(row[col]);
        }
    }
    Ok(out)
}

/// Render a float with 17 significant digits (exact f64 round trip).
pub fn format_g17(value: f64) -> String {
    format!("{value:.16e}")
}

/// Serialize curve points as `n,wcre,wce` CSV (single weight function).
pub fn curves_to_csv(points: &[CurvePoint], header_comments: &[String]) -> String {
    let mut out = String::new();
    for comment in header_comments {
        out.push_str("# ");
        out.push_str(comment);
        out.push('\n');
    }
    out.push_str("n,wcre,wce\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{}\n",
            p.n,
            format_g17(p.wcre),
            format_g17(p.wce)
        ));
    }
    out
}

/// Serialize aligned curves for several weight functions: one `wcre[spec]`,
/// `wce[spec]` column pair per function.
pub fn multi_curves_to_csv(
    specs: &[String],
    series: &[Vec<CurvePoint>],
    header_comments: &[String],
) -> String {
    let mut out = String::new();
    for comment in header_comments {
        out.push_str("# ");
        out.push_str(comment);
        out.push('\n');
    }
    out.push('n');
    for spec in specs {
        out.push_str(&format!(",wcre[{spec}],wce[{spec}]"));
    }
    out.push('\n');
    let rows = series.first().map_or(0, Vec::len);
    for i in 0..rows {
        out.push_str(&series[0][i].n.to_string());
        for s in series {
            out.push_str(&format!(
                ",{},{}",
                format_g17(s[i].wcre),
                format_g17(s[i].wce)
            ));
        }
        out.push('\n');
    }
    out
}

/// Parse single-function curve CSV back into points (comments skipped).
pub fn parse_curves_csv(text: &str) -> Result<Vec<CurvePoint>> {
    let mut points = Vec::new();
    for (line_idx, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with('n') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: line_idx + 1,
                column: 1,
                message: format!("expected 3 fields, got {}", fields.len()),
            });
        }
        let parse = |tok: &str| -> Result<f64> {
            tok.trim().parse().map_err(|_| Error::Parse {
                line: line_idx + 1,
                column: 1,
                message: format!("bad number {tok:?}"),
            })
        };
        points.push(CurvePoint {
            n: parse(fields[0])? as usize,
            wcre: parse(fields[1])?,
            wce: parse(fields[2])?,
        });
    }
    Ok(points)
}
