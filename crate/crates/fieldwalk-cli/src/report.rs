//! Deterministic CSV and JSON rendering.
//!
//! CSV emits floating-point values with 12 significant digits in
//! scientific notation; JSON documents carry the fully resolved
//! configuration under `meta` and row objects under `data`. Identical
//! invocations produce byte-identical output.

use std::io::{self, Write};

use clap::ValueEnum;
use fieldwalk_core::ResourceCount;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// 12 significant digits, scientific notation.
pub fn float(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Serialize)]
pub struct WalkMeta {
    pub command: &'static str,
    pub steps: u32,
    pub theta: f64,
    pub phi: f64,
    pub alpha_squared: f64,
}

#[derive(Serialize)]
pub struct DecohereMeta {
    pub command: &'static str,
    pub steps: u32,
    pub theta: f64,
    pub phi: f64,
    pub sigma_pp: f64,
    pub sigma_bs: f64,
    pub trials: u32,
    pub seed: u64,
    pub mode: &'static str,
    pub sharing: &'static str,
}

#[derive(Serialize)]
pub struct CompareMeta {
    pub command: &'static str,
    pub steps: u32,
    pub theta: f64,
    pub phi: f64,
    pub against: &'static str,
}

#[derive(Serialize)]
pub struct ResourcesMeta {
    pub command: &'static str,
    pub steps: u32,
    pub layout: &'static str,
}

#[derive(Serialize)]
pub struct MomentsSummary {
    pub mean: f64,
    pub variance: f64,
    pub std_dev: f64,
}

#[derive(Serialize)]
pub struct CompareSummary {
    pub tv_distance: f64,
    pub walk: MomentsSummary,
    pub reference: MomentsSummary,
}

#[derive(Serialize)]
struct ValueRow {
    k: i64,
    value: f64,
}

#[derive(Serialize)]
struct StderrRow {
    k: i64,
    value: f64,
    stderr: f64,
}

#[derive(Serialize)]
struct CompareRow {
    k: i64,
    walk: f64,
    reference: f64,
}

#[derive(Serialize)]
struct ResourceRow {
    layout: &'static str,
    steps: u32,
    beam_splitters: u64,
    phase_shifters: u64,
    aoms: u64,
    detectors: u64,
}

#[derive(Serialize)]
struct Doc<'a, M: Serialize, R: Serialize> {
    meta: &'a M,
    data: &'a [R],
}

#[derive(Serialize)]
struct SummaryDoc<'a, M: Serialize, S: Serialize, R: Serialize> {
    meta: &'a M,
    summary: &'a S,
    data: &'a [R],
}

fn json<T: Serialize>(w: &mut dyn Write, doc: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, doc).map_err(io::Error::other)?;
    writeln!(w)
}

pub fn walk(
    w: &mut dyn Write,
    meta: &WalkMeta,
    rows: &[(i64, f64)],
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "k,value")?;
            for &(k, value) in rows {
                writeln!(w, "{k},{}", float(value))?;
            }
            Ok(())
        }
        Format::Json => {
            let data: Vec<ValueRow> = rows.iter().map(|&(k, value)| ValueRow { k, value }).collect();
            json(w, &Doc { meta, data: &data })
        }
    }
}

pub fn decohere(
    w: &mut dyn Write,
    meta: &DecohereMeta,
    rows: &[(i64, f64, f64)],
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "k,value,stderr")?;
            for &(k, value, stderr) in rows {
                writeln!(w, "{k},{},{}", float(value), float(stderr))?;
            }
            Ok(())
        }
        Format::Json => {
            let data: Vec<StderrRow> = rows
                .iter()
                .map(|&(k, value, stderr)| StderrRow { k, value, stderr })
                .collect();
            json(w, &Doc { meta, data: &data })
        }
    }
}

pub fn compare(
    w: &mut dyn Write,
    meta: &CompareMeta,
    summary: &CompareSummary,
    rows: &[(i64, f64, f64)],
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "# tv_distance={}", float(summary.tv_distance))?;
            for (label, m) in [("walk", &summary.walk), ("reference", &summary.reference)] {
                writeln!(w, "# {label}_mean={}", float(m.mean))?;
                writeln!(w, "# {label}_variance={}", float(m.variance))?;
                writeln!(w, "# {label}_std_dev={}", float(m.std_dev))?;
            }
            writeln!(w, "k,walk,reference")?;
            for &(k, walk, reference) in rows {
                writeln!(w, "{k},{},{}", float(walk), float(reference))?;
            }
            Ok(())
        }
        Format::Json => {
            let data: Vec<CompareRow> = rows
                .iter()
                .map(|&(k, walk, reference)| CompareRow { k, walk, reference })
                .collect();
            json(
                w,
                &SummaryDoc {
                    meta,
                    summary,
                    data: &data,
                },
            )
        }
    }
}

pub fn resources(
    w: &mut dyn Write,
    meta: &ResourcesMeta,
    count: &ResourceCount,
    format: Format,
) -> io::Result<()> {
    let row = ResourceRow {
        layout: meta.layout,
        steps: meta.steps,
        beam_splitters: count.beam_splitters,
        phase_shifters: count.phase_shifters,
        aoms: count.aoms,
        detectors: count.detectors,
    };
    match format {
        Format::Csv => {
            writeln!(w, "layout,steps,beam_splitters,phase_shifters,aoms,detectors")?;
            writeln!(
                w,
                "{},{},{},{},{},{}",
                row.layout, row.steps, row.beam_splitters, row.phase_shifters, row.aoms, row.detectors
            )
        }
        Format::Json => json(w, &Doc { meta, data: &[row] }),
    }
}
