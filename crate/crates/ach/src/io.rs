//! File formats.
//!
//! Curves use a long CSV layout with header `curve_id,t,value`, one row per
//! knot, rows grouped by curve and ascending in `t` within a group. Floats are
//! written with Rust's shortest round-trip formatting, so a write followed by a
//! read reproduces every value bit for bit.

use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use ach_core::eval::{BenchmarkResult, Summary};
use ach_core::{CurveBatch, DepthReport, SampledCurve};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("line {line}: field `{field}` is not a number: `{value}`")]
    NotNumeric {
        line: u64,
        field: &'static str,
        value: String,
    },
    #[error("line {line}: expected 3 fields (curve_id,t,value), found {found}")]
    Ragged { line: u64, found: usize },
    #[error("line {line}: times of curve `{id}` are not strictly increasing ({prev} then {t})")]
    TimesOutOfOrder {
        line: u64,
        id: String,
        prev: f64,
        t: f64,
    },
    #[error("line {line}: rows of curve `{id}` are not contiguous")]
    Interleaved { line: u64, id: String },
    #[error("line {line}: bad header, expected `{expected}`")]
    Header { line: u64, expected: &'static str },
    #[error(transparent)]
    Curve(#[from] ach_core::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl IoError {
    /// True for failures of the file system rather than of the content.
    pub fn is_io(&self) -> bool {
        matches!(self, IoError::Io { .. })
    }
}

pub type Result<T, E = IoError> = std::result::Result<T, E>;

/// Optional mapping of observation times onto `[0, 1]`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub enum Rescale {
    /// Times must already lie in `[0, 1]`.
    #[default]
    None,
    /// Map `[start, end]` affinely onto `[0, 1]`.
    Interval(f64, f64),
    /// Use the smallest and largest time of the file.
    Auto,
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn csv_error(e: csv::Error, path: &Path) -> IoError {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(source) => IoError::Io {
            path: path.to_path_buf(),
            source,
        },
        other => IoError::Csv {
            line,
            message: format!("{other:?}"),
        },
    }
}

fn parse_num(raw: &str, line: u64, field: &'static str) -> Result<f64> {
    let v: f64 = raw.trim().parse().map_err(|_| IoError::NotNumeric {
        line,
        field,
        value: raw.to_string(),
    })?;
    if !v.is_finite() {
        return Err(IoError::NotNumeric {
            line,
            field,
            value: raw.to_string(),
        });
    }
    Ok(v)
}

struct Group {
    id: String,
    line: u64,
    times: Vec<f64>,
    values: Vec<f64>,
}

/// Parses the long curve format from any reader. `origin` labels I/O errors.
pub fn read_curves_from<R: Read>(reader: R, rescale: Rescale, origin: &Path) -> Result<CurveBatch> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut groups: Vec<Group> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut header_done = false;
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(e, origin))?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if !header_done {
            header_done = true;
            let cols: Vec<&str> = rec.iter().collect();
            if cols != ["curve_id", "t", "value"] {
                return Err(IoError::Header {
                    line,
                    expected: "curve_id,t,value",
                });
            }
            continue;
        }
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != 3 {
            return Err(IoError::Ragged {
                line,
                found: rec.len(),
            });
        }
        let id = &rec[0];
        let t = parse_num(&rec[1], line, "t")?;
        let v = parse_num(&rec[2], line, "value")?;
        match groups.last_mut() {
            Some(g) if g.id == id => {
                let prev = *g.times.last().expect("groups start non-empty");
                if t <= prev {
                    return Err(IoError::TimesOutOfOrder {
                        line,
                        id: id.to_string(),
                        prev,
                        t,
                    });
                }
                g.times.push(t);
                g.values.push(v);
            }
            _ => {
                if !seen.insert(id.to_string()) {
                    return Err(IoError::Interleaved {
                        line,
                        id: id.to_string(),
                    });
                }
                groups.push(Group {
                    id: id.to_string(),
                    line,
                    times: vec![t],
                    values: vec![v],
                });
            }
        }
    }
    let interval = match rescale {
        Rescale::None => None,
        Rescale::Interval(a, b) => Some((a, b)),
        Rescale::Auto => {
            let lo = groups
                .iter()
                .map(|g| g.times[0])
                .fold(f64::INFINITY, f64::min);
            let hi = groups
                .iter()
                .map(|g| g.times[g.times.len() - 1])
                .fold(f64::NEG_INFINITY, f64::max);
            Some((lo, hi))
        }
    };
    let curves = groups
        .into_iter()
        .map(|g| {
            let line = g.line;
            let built = match interval {
                None => SampledCurve::new(g.id, g.times, g.values),
                Some((a, b)) => SampledCurve::from_interval(g.id, g.times, g.values, a, b),
            };
            built.map_err(|e| IoError::Csv {
                line,
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveBatch::new(curves)?)
}

pub fn read_curves(path: &Path, rescale: Rescale) -> Result<CurveBatch> {
    read_curves_from(open(path)?, rescale, path)
}

pub fn write_curves_to<W: Write>(batch: &CurveBatch, writer: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["curve_id", "t", "value"])?;
    for c in batch {
        for (t, v) in c.times().iter().zip(c.values()) {
            w.write_record([c.id(), &t.to_string(), &v.to_string()])?;
        }
    }
    w.flush()
}

fn with_path<T>(path: &Path, r: std::io::Result<T>) -> Result<T> {
    r.map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_curves(batch: &CurveBatch, path: &Path) -> Result<()> {
    with_path(path, write_curves_to(batch, create(path)?))
}

/// `curve_id,is_anomaly` with `true`/`false` values.
pub fn write_labels(batch: &CurveBatch, labels: &[bool], path: &Path) -> Result<()> {
    let out = create(path)?;
    with_path(
        path,
        (|| {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["curve_id", "is_anomaly"])?;
            for (c, l) in batch.iter().zip(labels) {
                w.write_record([c.id(), if *l { "true" } else { "false" }])?;
            }
            w.flush()
        })(),
    )
}

/// `curve_id,depth,rank`, most atypical curve first.
pub fn write_report_to<W: Write>(report: &DepthReport, writer: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["curve_id", "depth", "rank"])?;
    for (pos, &i) in report.ranking.iter().enumerate() {
        let (id, depth) = &report.scores[i];
        w.write_record([id.as_str(), &depth.to_string(), &(pos + 1).to_string()])?;
    }
    w.flush()
}

pub fn write_report(report: &DepthReport, path: &Path) -> Result<()> {
    with_path(path, write_report_to(report, create(path)?))
}

/// Long-form results: `method,kind,alpha_or_severity,repetition,value`.
pub fn write_results_to<W: Write>(result: &BenchmarkResult, writer: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["method", "kind", "alpha_or_severity", "repetition", "value"])?;
    for r in &result.records {
        w.write_record([
            r.method.as_str(),
            r.kind.as_str(),
            &r.param.to_string(),
            &r.repetition.to_string(),
            &r.value.to_string(),
        ])?;
    }
    w.flush()
}

pub fn write_results(result: &BenchmarkResult, path: &Path) -> Result<()> {
    with_path(path, write_results_to(result, create(path)?))
}

#[derive(Debug, Serialize)]
struct CellJson<'a> {
    method: &'a str,
    kind: &'a str,
    alpha_or_severity: f64,
    repetitions: usize,
    mean: f64,
    sd: f64,
}

#[derive(Debug, Serialize)]
struct SummaryJson<'a, C: Serialize> {
    benchmark: &'a str,
    config: C,
    cells: Vec<CellJson<'a>>,
}

/// JSON summary for plotting: benchmark name, echoed config and per-cell
/// mean/sd.
pub fn summary_json<C: Serialize>(
    benchmark: &str,
    config: C,
    summaries: &[Summary],
) -> Result<String> {
    let cells = summaries
        .iter()
        .map(|s| CellJson {
            method: &s.method,
            kind: &s.kind,
            alpha_or_severity: s.param,
            repetitions: s.repetitions,
            mean: s.mean,
            sd: s.sd,
        })
        .collect();
    Ok(serde_json::to_string_pretty(&SummaryJson {
        benchmark,
        config,
        cells,
    })?)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut f = create(path)?;
    with_path(path, f.write_all(text.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<CurveBatch> {
        read_curves_from(text.as_bytes(), Rescale::None, Path::new("<mem>"))
    }

    #[test]
    fn two_row_file() {
        let b = parse("curve_id,t,value\na,0,1\na,1,2\n").unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.curves()[0].times(), &[0.0, 1.0]);
        assert_eq!(b.curves()[0].values(), &[1.0, 2.0]);
    }

    #[test]
    fn out_of_order_names_id_and_line() {
        let err = parse("curve_id,t,value\na,0,1\na,1,2\nb,0.5,1\nb,0.2,3\n").unwrap_err();
        match err {
            IoError::TimesOutOfOrder { line, id, .. } => {
                assert_eq!(id, "b");
                assert_eq!(line, 5);
            }
            other => panic!("unexpected {other}"),
        }
        assert!(err_text("curve_id,t,value\nq,0.3,1\nq,0.3,2\n").contains("`q`"));
    }

    fn err_text(s: &str) -> String {
        parse(s).unwrap_err().to_string()
    }

    #[test]
    fn ragged_and_non_numeric() {
        assert!(matches!(
            parse("curve_id,t,value\na,0,1\na,1\n"),
            Err(IoError::Ragged { line: 3, found: 2 })
        ));
        assert!(matches!(
            parse("curve_id,t,value\na,0,1\na,1,x\n"),
            Err(IoError::NotNumeric {
                line: 3,
                field: "value",
                ..
            })
        ));
        assert!(matches!(
            parse("curve_id,t,value\na,zero,1\n"),
            Err(IoError::NotNumeric {
                line: 2,
                field: "t",
                ..
            })
        ));
        assert!(matches!(
            parse("curve_id,t,value\na,0,NaN\na,1,1\n"),
            Err(IoError::NotNumeric { .. })
        ));
    }

    #[test]
    fn interleaved_groups_and_header() {
        assert!(matches!(
            parse("curve_id,t,value\na,0,1\na,1,1\nb,0,1\nb,1,1\na,0.5,2\n"),
            Err(IoError::Interleaved { line: 6, .. })
        ));
        assert!(matches!(
            parse("id,t,v\na,0,1\n"),
            Err(IoError::Header { .. })
        ));
    }

    #[test]
    fn single_knot_curve_reports_line() {
        let e = parse("curve_id,t,value\na,0,1\na,1,1\nb,0.5,1\n").unwrap_err();
        assert!(matches!(e, IoError::Csv { line: 4, .. }), "{e}");
    }

    #[test]
    fn rescale_modes() {
        let text = "curve_id,t,value\na,10,1\na,20,2\nb,12,1\nb,15,0\n";
        assert!(parse(text).is_err());
        let auto = read_curves_from(text.as_bytes(), Rescale::Auto, Path::new("m")).unwrap();
        assert_eq!(auto.curves()[0].times(), &[0.0, 1.0]);
        assert_eq!(auto.curves()[1].times(), &[0.2, 0.5]);
        let fixed = read_curves_from(
            text.as_bytes(),
            Rescale::Interval(0.0, 40.0),
            Path::new("m"),
        )
        .unwrap();
        assert_eq!(fixed.curves()[0].times(), &[0.25, 0.5]);
    }

    #[test]
    fn missing_file_is_io() {
        let e = read_curves(Path::new("/definitely/not/here.csv"), Rescale::None).unwrap_err();
        assert!(e.is_io());
        assert!(e.to_string().contains("/definitely/not/here.csv"));
    }
}
