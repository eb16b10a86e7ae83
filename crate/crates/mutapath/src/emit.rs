//! Report files.
//!
//! CSV outputs:
//!
//! | file | columns |
//! |------|---------|
//! | `pairs.csv` | id, project, status, k, initial_diff, remaining_diff, progress, expansions, wall_time, excluded, ops |
//! | `per_project.csv` | project, ops, R, P, U, excluded, R_pct, P_pct, U_pct |
//! | `operator_usage.csv` | operator, count_pitest, count_extended |
//! | `length_histogram.csv` | ops, status, k, count |
//! | `extrapolation.csv` | ops, percentile, expected_k |
//!
//! JSON output: `results.json`, an array of pair results with every field.
//! Floats are written with six decimals in CSV; output depends only on the
//! inputs, so identical inputs give byte-identical files.

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use mutapath_core::{PairResult, SummaryTables};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

pub const CSV_FILES: [&str; 5] = [
    "pairs.csv",
    "per_project.csv",
    "operator_usage.csv",
    "length_histogram.csv",
    "extrapolation.csv",
];
pub const JSON_FILE: &str = "results.json";

/// Writes the requested formats into `out_dir` (created if missing) and
/// returns the written paths in a fixed order.
pub fn emit(
    tables: &SummaryTables,
    results: &[PairResult],
    out_dir: &Path,
    formats: &BTreeSet<Format>,
) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    if formats.contains(&Format::Csv) {
        let files: [(&str, Vec<Vec<String>>); 5] = [
            (CSV_FILES[0], pairs_rows(results)),
            (CSV_FILES[1], per_project_rows(tables)),
            (CSV_FILES[2], usage_rows(tables)),
            (CSV_FILES[3], length_rows(tables)),
            (CSV_FILES[4], extrapolation_rows(tables)),
        ];
        for (name, rows) in files {
            let path = out_dir.join(name);
            write_csv(&path, &rows)?;
            written.push(path);
        }
    }
    if formats.contains(&Format::Json) {
        let path = out_dir.join(JSON_FILE);
        let mut text = serde_json::to_string_pretty(results).map_err(io::Error::other)?;
        text.push('\n');
        fs::write(&path, text)?;
        written.push(path);
    }
    Ok(written)
}

fn write_csv(path: &Path, rows: &[Vec<String>]) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}

fn float(x: f64) -> String {
    format!("{x:.6}")
}

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

pub fn pairs_rows(results: &[PairResult]) -> Vec<Vec<String>> {
    let mut rows = vec![header(&[
        "id",
        "project",
        "status",
        "k",
        "initial_diff",
        "remaining_diff",
        "progress",
        "expansions",
        "wall_time",
        "excluded",
        "ops",
    ])];
    rows.extend(results.iter().map(|r| {
        vec![
            r.id.clone(),
            r.project.clone(),
            r.status.map(|s| s.to_string()).unwrap_or_default(),
            r.k.to_string(),
            r.initial_diff.to_string(),
            r.remaining_diff.to_string(),
            float(r.progress),
            r.expansions.to_string(),
            float(r.wall_time),
            r.excluded.to_string(),
            r.ops.as_str().to_string(),
        ]
    }));
    rows
}

fn per_project_rows(t: &SummaryTables) -> Vec<Vec<String>> {
    let mut rows = vec![header(&[
        "project", "ops", "R", "P", "U", "excluded", "R_pct", "P_pct", "U_pct",
    ])];
    rows.extend(t.per_project.iter().map(|r| {
        let [pr, pp, pu] = r.percentages();
        vec![
            r.project.clone(),
            r.ops.as_str().to_string(),
            r.r.to_string(),
            r.p.to_string(),
            r.u.to_string(),
            r.excluded.to_string(),
            float(pr),
            float(pp),
            float(pu),
        ]
    }));
    rows
}

fn usage_rows(t: &SummaryTables) -> Vec<Vec<String>> {
    let mut rows = vec![header(&["operator", "count_pitest", "count_extended"])];
    rows.extend(t.operator_usage.iter().map(|r| {
        vec![
            r.operator.name().to_string(),
            r.count_pitest.to_string(),
            r.count_extended.to_string(),
        ]
    }));
    rows
}

fn length_rows(t: &SummaryTables) -> Vec<Vec<String>> {
    let mut rows = vec![header(&["ops", "status", "k", "count"])];
    rows.extend(t.length_histogram.iter().map(|r| {
        vec![
            r.ops.as_str().to_string(),
            r.status.to_string(),
            r.k.to_string(),
            r.count.to_string(),
        ]
    }));
    rows
}

fn extrapolation_rows(t: &SummaryTables) -> Vec<Vec<String>> {
    let mut rows = vec![header(&["ops", "percentile", "expected_k"])];
    rows.extend(t.extrapolation.iter().map(|r| {
        vec![
            r.ops.as_str().to_string(),
            r.percentile.to_string(),
            r.expected_k.to_string(),
        ]
    }));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use mutapath_core::summarize;

    #[test]
    fn empty_results_give_header_only_csvs() {
        let dir = tempfile::tempdir().unwrap();
        let formats = BTreeSet::from([Format::Csv]);
        let written = emit(&summarize(&[]), &[], dir.path(), &formats).unwrap();
        let names: Vec<_> = written
            .iter()
            .map(|p| p.file_name().unwrap().to_str().unwrap().to_string())
            .collect();
        assert_eq!(names, CSV_FILES);
        let pairs = fs::read_to_string(dir.path().join("pairs.csv")).unwrap();
        assert_eq!(
            pairs,
            "id,project,status,k,initial_diff,remaining_diff,progress,expansions,wall_time,excluded,ops\n"
        );
        // operator usage always lists every operator
        let usage = fs::read_to_string(dir.path().join("operator_usage.csv")).unwrap();
        assert_eq!(usage.lines().count(), 17);
        assert!(!dir.path().join(JSON_FILE).exists());
    }

    #[test]
    fn json_only() {
        let dir = tempfile::tempdir().unwrap();
        let written = emit(
            &summarize(&[]),
            &[],
            dir.path(),
            &BTreeSet::from([Format::Json]),
        )
        .unwrap();
        assert_eq!(written, [dir.path().join(JSON_FILE)]);
        assert_eq!(fs::read_to_string(&written[0]).unwrap(), "[]\n");
    }

    #[test]
    fn format_names() {
        assert_eq!("csv".parse::<Format>(), Ok(Format::Csv));
        assert_eq!("json".parse::<Format>(), Ok(Format::Json));
        assert!("xml".parse::<Format>().is_err());
    }
}
