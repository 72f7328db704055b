//! CSV export, import, validation and summary statistics.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiment::observer::ParameterSeries;
use crate::experiment::recorder::BestSoFarTable;
use crate::experiment::runner::BenchResult;
use crate::scalar::Scalar;

pub const RESULTS_HEADER: [&str; 7] = ["suite", "problem", "instance", "dim", "run", "fes", "best_so_far"];
pub const PARAMETERS_HEADER: [&str; 6] = ["problem", "instance", "run", "generation", "mu_f", "mu_cr"];

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("in-memory writer cannot fail");
    String::from_utf8(bytes).expect("csv output is utf-8")
}

/// Best-so-far table as CSV text, sorted by (problem, instance, run, fes).
pub fn results_csv<T: Scalar>(suite_name: &str, dim: usize, table: &BestSoFarTable<T>) -> String {
    let mut order: Vec<usize> = (0..table.runs()).collect();
    order.sort_by_key(|&t| table.keys()[t]);
    let mut w = writer();
    w.write_record(RESULTS_HEADER).expect("in-memory write");
    let dim = dim.to_string();
    for t in order {
        let key = table.keys()[t];
        let (p, i, r) = (key.problem_id.to_string(), key.instance_id.to_string(), key.run_index.to_string());
        for (k, v) in table.row(t).iter().enumerate() {
            w.write_record([
                suite_name,
                &p,
                &i,
                &dim,
                &r,
                &table.fes_at(k).to_string(),
                &v.to_string(),
            ])
            .expect("in-memory write");
        }
    }
    finish(w)
}

/// Parameter traces as CSV text; series without `mu_f`/`mu_cr` are skipped.
pub fn parameters_csv(series: &[ParameterSeries]) -> String {
    let mut sorted: Vec<&ParameterSeries> = series.iter().collect();
    sorted.sort_by_key(|s| s.key);
    let mut w = writer();
    w.write_record(PARAMETERS_HEADER).expect("in-memory write");
    for s in sorted {
        let (Some(mu_f), Some(mu_cr)) = (s.column("mu_f"), s.column("mu_cr")) else {
            continue;
        };
        for ((g, f), cr) in s.generations.iter().zip(mu_f).zip(mu_cr) {
            w.write_record([
                s.key.problem_id.to_string(),
                s.key.instance_id.to_string(),
                s.key.run_index.to_string(),
                g.to_string(),
                f.to_string(),
                cr.to_string(),
            ])
            .expect("in-memory write");
        }
    }
    finish(w)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn export_csv<T: Scalar, R>(result: &BenchResult<T, R>, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &results_csv(&result.suite_name, result.dim, &result.table))
}

pub fn export_parameter_csv(series: &[ParameterSeries], path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &parameters_csv(series))
}

/// One data row of a results CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub suite: String,
    pub problem: u32,
    pub instance: u32,
    pub dim: usize,
    pub run: u32,
    pub fes: u64,
    pub best_so_far: f64,
}

/// Parses results CSV text; `path` is only used in error messages.
pub fn parse_results(text: &str, path: &Path) -> Result<Vec<ResultRow>> {
    let err = |line: u64, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    match records.next() {
        None => return Err(err(1, "empty file, expected header".into())),
        Some(Err(e)) => return Err(err(1, e.to_string())),
        Some(Ok(h)) => {
            if h.iter().ne(RESULTS_HEADER) {
                return Err(err(1, format!("expected header `{}`", RESULTS_HEADER.join(","))));
            }
        }
    }
    let mut rows = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            err(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != RESULTS_HEADER.len() {
            return Err(err(line, format!("expected {} fields, found {}", RESULTS_HEADER.len(), rec.len())));
        }
        fn field<V: std::str::FromStr>(rec: &csv::StringRecord, i: usize) -> std::result::Result<V, String> {
            rec[i]
                .parse()
                .map_err(|_| format!("invalid {} `{}`", RESULTS_HEADER[i], &rec[i]))
        }
        let parse = || -> std::result::Result<ResultRow, String> {
            Ok(ResultRow {
                suite: rec[0].to_string(),
                problem: field(&rec, 1)?,
                instance: field(&rec, 2)?,
                dim: field(&rec, 3)?,
                run: field(&rec, 4)?,
                fes: field(&rec, 5)?,
                best_so_far: field(&rec, 6)?,
            })
        };
        rows.push(parse().map_err(|m| err(line, m))?);
    }
    Ok(rows)
}

pub fn read_results(path: impl AsRef<Path>) -> Result<Vec<ResultRow>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_results(&text, path)
}

type RunId = (u32, u32, u32);

fn group_runs(rows: &[ResultRow]) -> BTreeMap<RunId, Vec<&ResultRow>> {
    let mut runs: BTreeMap<RunId, Vec<&ResultRow>> = BTreeMap::new();
    for r in rows {
        runs.entry((r.problem, r.instance, r.run)).or_default().push(r);
    }
    runs
}

/// Checks the recorder contract on parsed rows: every run has exactly
/// `max_fes / interval` checkpoints at `interval, 2 * interval, ...` and a
/// non-increasing best-so-far. Returns the number of runs.
pub fn validate_results(rows: &[ResultRow], max_fes: u64, interval: u64) -> std::result::Result<usize, String> {
    let expected = (max_fes / interval) as usize;
    let runs = group_runs(rows);
    for ((p, i, r), series) in &runs {
        if series.len() != expected {
            return Err(format!(
                "problem {p} instance {i} run {r}: {} checkpoints, expected {expected}",
                series.len()
            ));
        }
        for (k, row) in series.iter().enumerate() {
            if row.fes != (k as u64 + 1) * interval {
                return Err(format!("problem {p} instance {i} run {r}: checkpoint {k} at fes {}", row.fes));
            }
            if k > 0 && row.best_so_far > series[k - 1].best_so_far {
                return Err(format!("problem {p} instance {i} run {r}: best-so-far increases at fes {}", row.fes));
            }
        }
    }
    Ok(runs.len())
}

/// Final-checkpoint statistics for one (problem, instance).
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub problem: u32,
    pub instance: u32,
    pub runs: usize,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single run.
    pub std: f64,
    pub min: f64,
    pub median: f64,
}

pub fn summarize(rows: &[ResultRow]) -> Vec<Summary> {
    let mut finals: BTreeMap<(u32, u32), Vec<f64>> = BTreeMap::new();
    for ((p, i, _), series) in group_runs(rows) {
        let last = series.iter().max_by_key(|r| r.fes).expect("groups are non-empty");
        finals.entry((p, i)).or_default().push(last.best_so_far);
    }
    finals
        .into_iter()
        .map(|((problem, instance), mut v)| {
            let n = v.len();
            let mean = v.iter().sum::<f64>() / n as f64;
            let std = if n > 1 {
                (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
            } else {
                0.0
            };
            v.sort_by(f64::total_cmp);
            let median = if n % 2 == 1 {
                v[n / 2]
            } else {
                0.5 * (v[n / 2 - 1] + v[n / 2])
            };
            Summary {
                problem,
                instance,
                runs: n,
                mean,
                std,
                min: v[0],
                median,
            }
        })
        .collect()
}
