//! Leaf-record serialization and point-set file parsing.
//!
//! Leaves are written one per line, either as JSONL records
//! `{"a": [...], "b": [...], "t": j, "w": weight}` or as CSV rows flattening
//! alpha then beta. Floats are printed with 17 significant digits, so a
//! reloaded cover compares bit-for-bit equal to the original. A truncated
//! emission ends with a trailer line marking how many leaves were flushed.

use crate::discrepancy::PointSet;
use crate::error::{Error, Result};
use crate::geometry::{Point, TypedBracket};
use serde::Deserialize;
use std::io::{BufRead, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafFormat {
    Jsonl,
    Csv,
}

fn write_float(out: &mut String, v: f64) {
    use std::fmt::Write as _;
    // 17 significant digits round-trip any f64.
    let _ = write!(out, "{v:.16e}");
}

fn float_list(coords: &[f64]) -> String {
    let mut s = String::new();
    for (i, &c) in coords.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        write_float(&mut s, c);
    }
    s
}

pub fn csv_header(dim: usize) -> String {
    let mut cols = Vec::with_capacity(2 * dim + 2);
    for i in 0..dim {
        cols.push(format!("a{i}"));
    }
    for i in 0..dim {
        cols.push(format!("b{i}"));
    }
    cols.push("t".into());
    cols.push("w".into());
    cols.join(",")
}

pub fn write_leaf<W: Write>(out: &mut W, leaf: &TypedBracket, format: LeafFormat) -> Result<()> {
    let mut line = String::new();
    match format {
        LeafFormat::Jsonl => {
            line.push_str("{\"a\":[");
            line.push_str(&float_list(leaf.alpha().coords()));
            line.push_str("],\"b\":[");
            line.push_str(&float_list(leaf.beta().coords()));
            line.push_str("],\"t\":");
            line.push_str(&leaf.type_index().to_string());
            line.push_str(",\"w\":");
            write_float(&mut line, leaf.weight());
            line.push('}');
        }
        LeafFormat::Csv => {
            line.push_str(&float_list(leaf.alpha().coords()));
            line.push(',');
            line.push_str(&float_list(leaf.beta().coords()));
            line.push(',');
            line.push_str(&leaf.type_index().to_string());
            line.push(',');
            write_float(&mut line, leaf.weight());
        }
    }
    line.push('\n');
    out.write_all(line.as_bytes())?;
    Ok(())
}

pub fn write_truncation_trailer<W: Write>(
    out: &mut W,
    emitted: u64,
    format: LeafFormat,
) -> Result<()> {
    let line = match format {
        LeafFormat::Jsonl => format!("{{\"truncated\":true,\"emitted\":{emitted}}}\n"),
        LeafFormat::Csv => format!("# truncated emitted={emitted}\n"),
    };
    out.write_all(line.as_bytes())?;
    Ok(())
}

#[derive(Deserialize)]
struct LeafRecord {
    a: Vec<f64>,
    b: Vec<f64>,
    t: u32,
    #[allow(dead_code)]
    w: f64,
}

#[derive(Deserialize)]
struct TrailerRecord {
    truncated: bool,
    #[allow(dead_code)]
    emitted: u64,
}

/// A reloaded cover plus whether the emission had been truncated.
#[derive(Debug)]
pub struct LoadedCover {
    pub leaves: Vec<TypedBracket>,
    pub truncated: bool,
}

/// Re-parses an emitted cover. Detects the format from the first line.
pub fn read_cover<R: BufRead>(input: R) -> Result<LoadedCover> {
    let mut leaves = Vec::new();
    let mut truncated = false;
    let mut format: Option<LeafFormat> = None;
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fmt = *format.get_or_insert_with(|| {
            if trimmed.starts_with('{') {
                LeafFormat::Jsonl
            } else {
                LeafFormat::Csv
            }
        });
        match fmt {
            LeafFormat::Jsonl => {
                if let Ok(t) = serde_json::from_str::<TrailerRecord>(trimmed) {
                    if t.truncated {
                        truncated = true;
                        continue;
                    }
                }
                let rec: LeafRecord = serde_json::from_str(trimmed).map_err(|e| Error::Parse {
                    line: lineno,
                    message: e.to_string(),
                })?;
                leaves.push(record_to_bracket(rec, lineno)?);
            }
            LeafFormat::Csv => {
                if trimmed.starts_with('#') {
                    if trimmed.contains("truncated") {
                        truncated = true;
                    }
                    continue;
                }
                if trimmed.starts_with('a') {
                    continue; // header row
                }
                let fields: Vec<&str> = trimmed.split(',').collect();
                if fields.len() < 4 || fields.len() % 2 != 0 {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("expected 2d+2 fields, got {}", fields.len()),
                    });
                }
                let d = (fields.len() - 2) / 2;
                let parse = |s: &str| -> Result<f64> {
                    s.parse::<f64>().map_err(|e| Error::Parse {
                        line: lineno,
                        message: format!("bad float {s:?}: {e}"),
                    })
                };
                let a = fields[..d].iter().map(|s| parse(s)).collect::<Result<Vec<_>>>()?;
                let b = fields[d..2 * d]
                    .iter()
                    .map(|s| parse(s))
                    .collect::<Result<Vec<_>>>()?;
                let t = fields[2 * d].parse::<u32>().map_err(|e| Error::Parse {
                    line: lineno,
                    message: format!("bad type index: {e}"),
                })?;
                let w = parse(fields[2 * d + 1])?;
                leaves.push(record_to_bracket(LeafRecord { a, b, t, w }, lineno)?);
            }
        }
    }
    Ok(LoadedCover { leaves, truncated })
}

fn record_to_bracket(rec: LeafRecord, lineno: usize) -> Result<TypedBracket> {
    let alpha = Point::new(rec.a).map_err(|e| Error::Parse {
        line: lineno,
        message: e.to_string(),
    })?;
    let beta = Point::new(rec.b).map_err(|e| Error::Parse {
        line: lineno,
        message: e.to_string(),
    })?;
    TypedBracket::new(alpha, beta, rec.t).map_err(|e| Error::Parse {
        line: lineno,
        message: e.to_string(),
    })
}

/// Parses a point-set file: one point per line, whitespace-separated decimal
/// coordinates in `[0,1)`, `#` comment lines and blank lines ignored. The
/// first data line fixes the dimension. Errors carry the offending line
/// number.
pub fn read_point_set<R: BufRead>(input: R) -> Result<PointSet> {
    let mut points: Vec<Point> = Vec::new();
    let mut dim: Option<usize> = None;
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let coords: Vec<f64> = trimmed
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>().map_err(|e| Error::Parse {
                    line: lineno,
                    message: format!("bad coordinate {tok:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(d) = dim {
            if coords.len() != d {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected {d} coordinates, got {}", coords.len()),
                });
            }
        } else {
            dim = Some(coords.len());
        }
        for (index, &value) in coords.iter().enumerate() {
            if !(0.0..1.0).contains(&value) {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("coordinate {value} at column {index} outside [0,1)"),
                });
            }
        }
        points.push(Point::new(coords).map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?);
    }
    PointSet::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposer::collect_cover;
    use std::io::Cursor;

    fn bits(b: &TypedBracket) -> Vec<u64> {
        let mut v: Vec<u64> = b.alpha().coords().iter().map(|c| c.to_bits()).collect();
        v.extend(b.beta().coords().iter().map(|c| c.to_bits()));
        v.push(b.type_index() as u64);
        v
    }

    #[test]
    fn jsonl_round_trip_is_bit_exact() {
        let (_, leaves) = collect_cover(3, 0.3).unwrap();
        let mut buf = Vec::new();
        for leaf in &leaves {
            write_leaf(&mut buf, leaf, LeafFormat::Jsonl).unwrap();
        }
        let loaded = read_cover(Cursor::new(buf)).unwrap();
        assert!(!loaded.truncated);
        assert_eq!(loaded.leaves.len(), leaves.len());
        for (orig, back) in leaves.iter().zip(&loaded.leaves) {
            assert_eq!(bits(orig), bits(back));
        }
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let (_, leaves) = collect_cover(2, 0.25).unwrap();
        let mut buf = Vec::new();
        buf.extend_from_slice(csv_header(2).as_bytes());
        buf.push(b'\n');
        for leaf in &leaves {
            write_leaf(&mut buf, leaf, LeafFormat::Csv).unwrap();
        }
        let loaded = read_cover(Cursor::new(buf)).unwrap();
        assert_eq!(loaded.leaves.len(), leaves.len());
        for (orig, back) in leaves.iter().zip(&loaded.leaves) {
            assert_eq!(bits(orig), bits(back));
        }
    }

    #[test]
    fn truncation_trailer_detected() {
        let (_, leaves) = collect_cover(1, 0.5).unwrap();
        let mut buf = Vec::new();
        write_leaf(&mut buf, &leaves[0], LeafFormat::Jsonl).unwrap();
        write_truncation_trailer(&mut buf, 1, LeafFormat::Jsonl).unwrap();
        let loaded = read_cover(Cursor::new(buf)).unwrap();
        assert!(loaded.truncated);
        assert_eq!(loaded.leaves.len(), 1);

        let mut buf = Vec::new();
        write_leaf(&mut buf, &leaves[0], LeafFormat::Csv).unwrap();
        write_truncation_trailer(&mut buf, 1, LeafFormat::Csv).unwrap();
        let loaded = read_cover(Cursor::new(buf)).unwrap();
        assert!(loaded.truncated);
    }

    #[test]
    fn seventeen_significant_digits() {
        let root = 0.5f64.sqrt();
        let bracket = TypedBracket::new(
            crate::geometry::Point::new(vec![0.0, 0.0]).unwrap(),
            crate::geometry::Point::new(vec![root, 1.0]).unwrap(),
            1,
        )
        .unwrap();
        let mut buf = Vec::new();
        write_leaf(&mut buf, &bracket, LeafFormat::Jsonl).unwrap();
        let line = String::from_utf8(buf).unwrap();

        let formatted = format!("{root:.16e}");
        assert!(line.contains(&formatted), "{line}");
        // 17 significant digits, and they reparse to the identical f64
        let mantissa: String = formatted
            .split('e')
            .next()
            .unwrap()
            .chars()
            .filter(|c| c.is_ascii_digit())
            .collect();
        assert_eq!(mantissa.len(), 17);
        assert_eq!(formatted.parse::<f64>().unwrap().to_bits(), root.to_bits());
    }

    #[test]
    fn point_file_parsing() {
        let text = "# centered grid\n0.25 0.25\n0.75 0.25\n\n0.25 0.75\n0.75 0.75\n";
        let ps = read_point_set(Cursor::new(text)).unwrap();
        assert_eq!(ps.len(), 4);
        assert_eq!(ps.dim(), 2);
    }

    #[test]
    fn point_file_errors_carry_line_numbers() {
        let err = read_point_set(Cursor::new("0.5 0.5\n0.2 1.0\n")).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other}"),
        }

        let err = read_point_set(Cursor::new("0.5 0.5\n0.2\n")).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other}"),
        }

        let err = read_point_set(Cursor::new("0.5 abc\n")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));

        assert!(matches!(
            read_point_set(Cursor::new("# only a comment\n")),
            Err(Error::EmptyPointSet)
        ));
    }
}
