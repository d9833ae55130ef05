//! Command-line front end for `lgb-core`.
//!
//! Each subcommand writes its report to a caller-supplied writer and
//! returns the process exit code, so the binary stays a thin wrapper.

pub mod args;

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use lgb_core::oracle::verify;
use lgb_core::{
    degree_bound, generic_hilbert_series, lgb_improved_with, BracketSeries, DegreeTrace,
    LgbOptions, LgbResult, LgbRun, Tier,
};

pub use args::{Cli, Command, OutputFormat};

/// Exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_GENERICITY: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] lgb_core::Error),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(lgb_core::Error::GenericityViolation { .. }) => EXIT_GENERICITY,
            CliError::Io(_) => 1,
            _ => EXIT_INVALID,
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match &cli.command {
        Command::Compute(a) => {
            let spec = a.spec.spec()?;
            let tier = Tier::try_from(a.tier)?;
            let run = lgb_improved_with(
                &spec,
                LgbOptions {
                    tier,
                    threads: a.threads,
                },
            )?;
            write_compute(&run.result, a.format, out)?;
        }
        Command::Hilbert(a) => {
            let spec = a.spec.spec()?;
            let cap = a.cap.unwrap_or(degree_bound(&spec) as usize);
            let series = generic_hilbert_series(&spec, cap);
            write_hilbert(&series, a.format, out)?;
        }
        Command::Stats(a) => {
            let spec = a.spec.spec()?;
            let mut runs = Vec::new();
            for tier in a.tiers()? {
                let run = lgb_improved_with(
                    &spec,
                    LgbOptions {
                        tier,
                        threads: a.threads,
                    },
                )?;
                runs.push((tier, run.result.traces));
            }
            write_stats(&runs, a.format, out)?;
        }
        Command::Bench(a) => {
            let spec = a.spec.spec()?;
            let mut rows = Vec::new();
            for tier in a.tiers()? {
                let start = Instant::now();
                let run = lgb_improved_with(
                    &spec,
                    LgbOptions {
                        tier,
                        threads: a.threads,
                    },
                )?;
                rows.push(BenchRow::new(tier, start.elapsed().as_secs_f64(), &run));
            }
            write_bench(&rows, a.format, out)?;
        }
        Command::Verify(a) => {
            if a.format == OutputFormat::Csv {
                return Err(CliError::Invalid(
                    "verify supports text and json only".into(),
                ));
            }
            let spec = a.spec.spec()?;
            let seeds = a.seeds()?;
            let report = verify(&spec, &seeds, a.prime, a.budget)?;
            for (kind, t) in report
                .trials
                .iter()
                .map(|t| ("trial", t))
                .chain(report.retries.iter().map(|t| ("retry", t)))
            {
                match a.format {
                    OutputFormat::Json => {
                        #[derive(Serialize)]
                        struct Line<'a> {
                            kind: &'a str,
                            #[serde(flatten)]
                            trial: &'a lgb_core::oracle::TrialReport,
                        }
                        serde_json::to_writer(&mut *out, &Line { kind, trial: t })?;
                        writeln!(out)?;
                    }
                    _ => writeln!(
                        out,
                        "{kind} seed={} {}",
                        t.seed,
                        if t.matched { "match" } else { "MISMATCH" }
                    )?,
                }
            }
            let verdict = if report.passed { "PASS" } else { "FAIL" };
            match a.format {
                OutputFormat::Json => {
                    serde_json::to_writer(
                        &mut *out,
                        &serde_json::json!({"spec": report.spec, "passed": report.passed}),
                    )?;
                    writeln!(out)?;
                }
                _ => writeln!(out, "{verdict} {}", report.spec)?,
            }
            if !report.passed {
                return Ok(EXIT_MISMATCH);
            }
        }
    }
    Ok(EXIT_OK)
}

pub const TRACE_HEADER: [&str; 5] = [
    "d",
    "candidates_checked",
    "b_d_size",
    "n_d",
    "relevant_generators",
];

pub fn write_compute(
    result: &LgbResult,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, result)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            // Header comes from the DegreeTrace field names.
            let mut w = csv::Writer::from_writer(out);
            for t in &result.traces {
                w.serialize(t)?;
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            writeln!(out, "{}  D={}", result.spec, result.degree_bound)?;
            writeln!(out, "{} leading monomials", result.leading_monomials.len())?;
            for (d, group) in result.by_degree() {
                let names: Vec<String> = group.iter().map(|m| m.to_string()).collect();
                writeln!(out, "  degree {d} ({}): {}", group.len(), names.join(", "))?;
            }
            writeln!(out)?;
            writeln!(
                out,
                "{:>4} {:>14} {:>10} {:>8} {:>10}",
                "d", "candidates", "|B_d|", "N_d", "relevant"
            )?;
            for t in &result.traces {
                writeln!(
                    out,
                    "{:>4} {:>14} {:>10} {:>8} {:>10}",
                    t.d, t.candidates_checked, t.b_d_size, t.n_d, t.relevant_generators
                )?;
            }
        }
    }
    Ok(())
}

pub fn write_hilbert(
    series: &BracketSeries,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer(&mut *out, series)?;
            writeln!(out)?;
        }
        OutputFormat::Text => {
            writeln!(out, "{series}")?;
            writeln!(out, "finite: {}", series.finite)?;
        }
        OutputFormat::Csv => {
            return Err(CliError::Invalid(
                "hilbert supports text and json only".into(),
            ))
        }
    }
    Ok(())
}

pub fn write_stats(
    runs: &[(Tier, Vec<DegreeTrace>)],
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            let map: BTreeMap<String, &Vec<DegreeTrace>> = runs
                .iter()
                .map(|(t, tr)| (format!("tier{}", t.level()), tr))
                .collect();
            serde_json::to_writer_pretty(&mut *out, &map)?;
            writeln!(out)?;
        }
        OutputFormat::Csv | OutputFormat::Text => {
            let mut header = vec!["d".to_string()];
            for (t, _) in runs {
                header.push(format!("tier{}_candidates_checked", t.level()));
                header.push(format!("tier{}_relevant_generators", t.level()));
            }
            let max_d = runs
                .iter()
                .flat_map(|(_, tr)| tr.iter().map(|t| t.d))
                .max()
                .unwrap_or(0);
            let mut rows = Vec::new();
            for d in 1..=max_d {
                let mut row = vec![d.to_string()];
                for (_, tr) in runs {
                    match tr.iter().find(|t| t.d == d) {
                        Some(t) => {
                            row.push(t.candidates_checked.to_string());
                            row.push(t.relevant_generators.to_string());
                        }
                        None => row.extend([String::new(), String::new()]),
                    }
                }
                rows.push(row);
            }
            if format == OutputFormat::Csv {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&header)?;
                for r in &rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            } else {
                write_table(&header, &rows, out)?;
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub tier: u8,
    pub wall_seconds: f64,
    pub total_candidates_checked: u64,
    pub total_divisibility_checks: u64,
    pub peak_candidate_set_size: u64,
    pub generators: usize,
}

impl BenchRow {
    pub fn new(tier: Tier, wall_seconds: f64, run: &LgbRun) -> Self {
        BenchRow {
            tier: tier.level(),
            wall_seconds,
            total_candidates_checked: run.result.traces.iter().map(|t| t.candidates_checked).sum(),
            total_divisibility_checks: run.work.iter().map(|w| w.divisibility_checks).sum(),
            peak_candidate_set_size: run
                .work
                .iter()
                .map(|w| w.candidate_set_size)
                .max()
                .unwrap_or(0),
            generators: run.result.leading_monomials.len(),
        }
    }
}

pub fn write_bench(
    rows: &[BenchRow],
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            let header: Vec<String> = [
                "tier",
                "seconds",
                "candidates",
                "divisibility_checks",
                "peak_set",
                "generators",
            ]
            .map(String::from)
            .to_vec();
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.tier.to_string(),
                        format!("{:.3}", r.wall_seconds),
                        r.total_candidates_checked.to_string(),
                        r.total_divisibility_checks.to_string(),
                        r.peak_candidate_set_size.to_string(),
                        r.generators.to_string(),
                    ]
                })
                .collect();
            write_table(&header, &body, out)?;
        }
    }
    Ok(())
}

fn write_table(
    header: &[String],
    rows: &[Vec<String>],
    out: &mut dyn Write,
) -> std::io::Result<()> {
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].len())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end())?;
    }
    Ok(())
}
