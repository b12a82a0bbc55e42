//! File formats.
//!
//! Signals as CSV:
//!
//! ```text
//! # delta=0.1
//! n,re,im
//! -2,0.5,0
//! ...
//! ```
//!
//! The `# delta=` line is optional (default `√(1/N)`). Rows may come in any
//! order but their indices must form exactly the centered range for their
//! count. Signals as JSON: `{"delta": 0.1, "re": [...], "im": [...]}` with
//! `delta` optional and arrays in ascending index order.
//!
//! Experiment reports as CSV start with `# key=value` metadata lines followed
//! by `index,a,b,c,d[,a2,b2,c2,d2],nmse`; as JSON they are the serde form of
//! [`ExperimentReport`]. Floats are written in shortest round-trip form, so
//! both encodings read back bit-for-bit.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::{ExperimentRecord, ExperimentReport, Protocol};
use crate::error::{LctError, Result};
use crate::params::LctParams;
use crate::signal::{centered_range, slot_of, Signal};

/// Encoding chosen from a file extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn from_path(path: &Path) -> Result<Format> {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("csv") => Ok(Format::Csv),
            Some("json") => Ok(Format::Json),
            _ => Err(LctError::Format(format!(
                "cannot infer format of {}: expected a .csv or .json extension",
                path.display()
            ))),
        }
    }
}

/// Shortest round-trip decimal, in exponent form for very large or small
/// magnitudes.
pub fn fmt_f64(v: f64) -> String {
    let m = v.abs();
    if m == 0.0 || (1e-5..1e16).contains(&m) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn split_comment(line: &str) -> Option<(&str, &str)> {
    let body = line.trim().strip_prefix('#')?;
    let (k, v) = body.split_once('=')?;
    Some((k.trim(), v.trim()))
}

fn parse_f64(field: &str, what: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| LctError::Format(format!("invalid {what}: {field:?}")))
}

/// Reads a signal in CSV form.
pub fn read_signal_csv<R: Read>(reader: R) -> Result<Signal> {
    let mut delta = None;
    let mut body = String::new();
    for line in BufReader::new(reader).lines() {
        let line = line?;
        if let Some((k, v)) = split_comment(&line) {
            if k == "delta" {
                delta = Some(parse_f64(v, "delta")?);
            }
        } else if !line.trim_start().starts_with('#') {
            body.push_str(&line);
            body.push('\n');
        }
    }
    let mut csv = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(body.as_bytes());
    let headers = csv.headers().map_err(|e| LctError::Format(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["n", "re", "im"] {
        return Err(LctError::Format(format!("expected header n,re,im, found {}", headers.iter().collect::<Vec<_>>().join(","))));
    }
    let mut rows = Vec::new();
    for rec in csv.records() {
        let rec = rec.map_err(|e| LctError::Format(e.to_string()))?;
        let n: i64 = rec[0].parse().map_err(|_| LctError::Format(format!("invalid index: {:?}", &rec[0])))?;
        rows.push((n, Complex64::new(parse_f64(&rec[1], "real part")?, parse_f64(&rec[2], "imaginary part")?)));
    }
    if rows.is_empty() {
        return Err(LctError::EmptySignal);
    }
    let len = rows.len();
    let range = centered_range(len);
    let mut samples = vec![None; len];
    for (n, z) in rows {
        if !range.contains(&n) {
            return Err(LctError::Format(format!(
                "index {n} is outside the centered range {}..={} for {len} samples",
                range.start,
                range.end - 1
            )));
        }
        let slot = &mut samples[slot_of(n, len)];
        if slot.is_some() {
            return Err(LctError::Format(format!("index {n} appears twice")));
        }
        *slot = Some(z);
    }
    let samples: Vec<Complex64> = samples.into_iter().map(|z| z.expect("every slot filled")).collect();
    match delta {
        Some(d) => Signal::with_delta(samples, d),
        None => Signal::new(samples),
    }
}

/// Writes a signal in CSV form, always including the `# delta=` line.
pub fn write_signal_csv<W: Write>(signal: &Signal, mut writer: W) -> Result<()> {
    writeln!(writer, "# delta={}", fmt_f64(signal.delta()))?;
    writeln!(writer, "n,re,im")?;
    for (n, z) in signal.indices().zip(signal.samples()) {
        writeln!(writer, "{n},{},{}", fmt_f64(z.re), fmt_f64(z.im))?;
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct SignalJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    re: Vec<f64>,
    im: Vec<f64>,
}

pub fn read_signal_json<R: Read>(reader: R) -> Result<Signal> {
    let raw: SignalJson = serde_json::from_reader(reader).map_err(|e| LctError::Format(e.to_string()))?;
    if raw.re.len() != raw.im.len() {
        return Err(LctError::LengthMismatch { left: raw.re.len(), right: raw.im.len() });
    }
    let samples = raw.re.into_iter().zip(raw.im).map(|(r, i)| Complex64::new(r, i)).collect();
    match raw.delta {
        Some(d) => Signal::with_delta(samples, d),
        None => Signal::new(samples),
    }
}

pub fn write_signal_json<W: Write>(signal: &Signal, writer: W) -> Result<()> {
    let raw = SignalJson {
        delta: Some(signal.delta()),
        re: signal.samples().iter().map(|z| z.re).collect(),
        im: signal.samples().iter().map(|z| z.im).collect(),
    };
    serde_json::to_writer(writer, &raw).map_err(|e| LctError::Format(e.to_string()))
}

pub fn read_signal(path: &Path) -> Result<Signal> {
    let format = Format::from_path(path)?;
    let file = fs::File::open(path).map_err(|e| LctError::Io(format!("{}: {e}", path.display())))?;
    match format {
        Format::Csv => read_signal_csv(file),
        Format::Json => read_signal_json(file),
    }
}

pub fn write_signal(signal: &Signal, path: &Path) -> Result<()> {
    let format = Format::from_path(path)?;
    let mut file = std::io::BufWriter::new(fs::File::create(path).map_err(|e| LctError::Io(format!("{}: {e}", path.display())))?);
    match format {
        Format::Csv => write_signal_csv(signal, &mut file)?,
        Format::Json => write_signal_json(signal, &mut file)?,
    }
    file.flush()?;
    Ok(())
}

/// Writes a report as CSV. Additivity reports carry the second matrix in
/// the `a2..d2` columns.
pub fn write_report_csv<W: Write>(report: &ExperimentReport, mut writer: W) -> Result<()> {
    writeln!(writer, "# protocol={}", report.protocol)?;
    writeln!(writer, "# signal={}", report.signal)?;
    writeln!(writer, "# n={}", report.n)?;
    writeln!(writer, "# seed={}", report.seed)?;
    if let Some(limit) = report.chirp_limit {
        writeln!(writer, "# chirp_limit={}", fmt_f64(limit))?;
    }
    let pair = report.protocol == Protocol::Additivity;
    writeln!(writer, "{}", if pair { "index,a,b,c,d,a2,b2,c2,d2,nmse" } else { "index,a,b,c,d,nmse" })?;
    for r in &report.records {
        write!(writer, "{}", r.index)?;
        for v in r.params.as_array() {
            write!(writer, ",{}", fmt_f64(v))?;
        }
        if pair {
            let second = r.second.ok_or_else(|| LctError::Format(format!("record {} has no second matrix", r.index)))?;
            for v in second.as_array() {
                write!(writer, ",{}", fmt_f64(v))?;
            }
        }
        writeln!(writer, ",{}", fmt_f64(r.nmse))?;
    }
    Ok(())
}

pub fn read_report_csv<R: Read>(reader: R) -> Result<ExperimentReport> {
    let mut meta = BTreeMap::new();
    let mut body = String::new();
    for line in BufReader::new(reader).lines() {
        let line = line?;
        if let Some((k, v)) = split_comment(&line) {
            meta.insert(k.to_string(), v.to_string());
        } else if !line.trim_start().starts_with('#') {
            body.push_str(&line);
            body.push('\n');
        }
    }
    let field = |k: &str| meta.get(k).ok_or_else(|| LctError::Format(format!("missing metadata line '# {k}='")));
    let protocol: Protocol = field("protocol")?.parse()?;
    let signal = field("signal")?.clone();
    let n = field("n")?.parse().map_err(|_| LctError::Format("invalid n".into()))?;
    let seed = field("seed")?.parse().map_err(|_| LctError::Format("invalid seed".into()))?;
    let chirp_limit = meta.get("chirp_limit").map(|v| parse_f64(v, "chirp_limit")).transpose()?;

    let pair = protocol == Protocol::Additivity;
    let mut csv = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(body.as_bytes());
    let width = if pair { 10 } else { 6 };
    let mut records = Vec::new();
    for rec in csv.records() {
        let rec = rec.map_err(|e| LctError::Format(e.to_string()))?;
        if rec.len() != width {
            return Err(LctError::Format(format!("expected {width} columns, found {}", rec.len())));
        }
        let index = rec[0].parse().map_err(|_| LctError::Format(format!("invalid index: {:?}", &rec[0])))?;
        let num = |i: usize| parse_f64(&rec[i], "matrix entry");
        let params = LctParams::new(num(1)?, num(2)?, num(3)?, num(4)?)?;
        let second = if pair { Some(LctParams::new(num(5)?, num(6)?, num(7)?, num(8)?)?) } else { None };
        let nmse = parse_f64(&rec[width - 1], "nmse")?;
        records.push(ExperimentRecord { index, params, second, nmse });
    }
    Ok(ExperimentReport { protocol, signal, n, seed, chirp_limit, records })
}

pub fn write_report_json<W: Write>(report: &ExperimentReport, writer: W) -> Result<()> {
    serde_json::to_writer_pretty(writer, report).map_err(|e| LctError::Format(e.to_string()))
}

pub fn read_report_json<R: Read>(reader: R) -> Result<ExperimentReport> {
    serde_json::from_reader(reader).map_err(|e| LctError::Format(e.to_string()))
}

pub fn write_report(report: &ExperimentReport, path: &Path) -> Result<()> {
    let format = Format::from_path(path)?;
    let mut file = std::io::BufWriter::new(fs::File::create(path).map_err(|e| LctError::Io(format!("{}: {e}", path.display())))?);
    match format {
        Format::Csv => write_report_csv(report, &mut file)?,
        Format::Json => write_report_json(report, &mut file)?,
    }
    file.flush()?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<ExperimentReport> {
    let format = Format::from_path(path)?;
    let file = fs::File::open(path).map_err(|e| LctError::Io(format!("{}: {e}", path.display())))?;
    match format {
        Format::Csv => read_report_csv(file),
        Format::Json => read_report_json(file),
    }
}
