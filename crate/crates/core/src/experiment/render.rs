use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{ConstantsReport, ModelConfig, TableOutput, ThetaSweep, TruncationSweep};
use crate::error::{Error, Result};
use crate::symmetric_series::IdentityReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Pretty,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "pretty" | "pretty-table" | "table" => Ok(OutputFormat::Pretty),
            other => Err(format!("unknown output format `{other}`")),
        }
    }
}

fn csv_string(header: &[&str], records: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| Error::Contract(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in records {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Contract(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is built from UTF-8 strings"))
}

fn json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Contract(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn pct(v: f64) -> String {
    format!("{v:+.1}")
}

fn config_line(c: &ModelConfig) -> String {
    format!(
        "# theta={} t_max={} backend={} hl_mode={} hl_cutoff={}",
        c.theta,
        c.t_max,
        serde_json::to_value(c.backend)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default(),
        c.hl_mode,
        c.hl_cutoff
    )
}

pub const TABLE_CSV_HEADER: [&str; 8] = [
    "x",
    "z",
    "pi2_true",
    "hl_pred",
    "hl_rel_err_pct",
    "tw_pred",
    "tw_rel_err_pct",
    "d_approx",
];

pub fn render_table(out: &TableOutput, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => json_string(out),
        OutputFormat::Csv => csv_string(
            &TABLE_CSV_HEADER,
            out.rows.iter().map(|r| {
                vec![
                    r.x.to_string(),
                    r.z.to_string(),
                    r.pi2_true.to_string(),
                    r.hl_pred.to_string(),
                    pct(r.hl_rel_err_pct),
                    r.tw_pred.to_string(),
                    pct(r.tw_rel_err_pct),
                    r.d_approx.to_string(),
                ]
            }),
        ),
        OutputFormat::Pretty => {
            let mut s = config_line(&out.config);
            s.push('\n');
            let _ = writeln!(
                s,
                "{:>12} {:>5} {:>10} {:>10} {:>9} {:>12} {:>9} {:>10}",
                "x", "z", "pi2(x)", "HL", "err HL", "this work", "err", "D_approx"
            );
            for r in &out.rows {
                let _ = writeln!(
                    s,
                    "{:>12} {:>5} {:>10} {:>10} {:>8}% {:>12} {:>8}% {:>10.6}",
                    r.x,
                    r.z,
                    r.pi2_true,
                    r.hl_pred,
                    pct(r.hl_rel_err_pct),
                    r.tw_pred,
                    pct(r.tw_rel_err_pct),
                    r.d_approx
                );
            }
            for r in &out.rows {
                if let Some(flag) = &r.hl_flag {
                    let _ = writeln!(s, "! x = {}: {flag}", r.x);
                }
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct WithConfig<'a, T> {
    config: &'a ModelConfig,
    #[serde(flatten)]
    result: &'a T,
}

pub fn render_truncation_sweep(
    sweep: &TruncationSweep,
    config: &ModelConfig,
    format: OutputFormat,
) -> Result<String> {
    match format {
        OutputFormat::Json => json_string(&WithConfig { config, result: sweep }),
        OutputFormat::Csv => csv_string(
            &["t_max", "d_approx", "numerator", "denominator", "raw", "prediction"],
            sweep.rows.iter().map(|r| {
                vec![
                    r.t_max.to_string(),
                    r.d_approx.to_string(),
                    r.numerator.to_string(),
                    r.denominator.to_string(),
                    r.raw.to_string(),
                    r.prediction.to_string(),
                ]
            }),
        ),
        OutputFormat::Pretty => {
            let mut s = config_line(config);
            let _ = writeln!(
                s,
                "\n# x={} z={} odd primes={} backend={} D(z) exact={:.9}",
                sweep.x, sweep.z, sweep.odd_prime_count, sweep.backend, sweep.d_exact
            );
            let _ = writeln!(s, "{:>6} {:>16} {:>14}", "t_max", "D_approx", "prediction");
            for r in &sweep.rows {
                let _ = writeln!(s, "{:>6} {:>16.9} {:>14}", r.t_max, r.d_approx, r.prediction);
            }
            Ok(s)
        }
    }
}

pub fn render_theta_sweep(
    sweep: &ThetaSweep,
    config: &ModelConfig,
    format: OutputFormat,
) -> Result<String> {
    match format {
        OutputFormat::Json => json_string(&WithConfig { config, result: sweep }),
        OutputFormat::Csv => csv_string(
            &["theta", "z", "odd_primes", "backend", "d_approx", "raw", "prediction"],
            sweep.rows.iter().map(|r| {
                vec![
                    r.theta.to_string(),
                    r.z.to_string(),
                    r.odd_prime_count.to_string(),
                    r.backend.to_string(),
                    r.d_approx.to_string(),
                    r.raw.to_string(),
                    r.prediction.to_string(),
                ]
            }),
        ),
        OutputFormat::Pretty => {
            let mut s = config_line(config);
            let _ = writeln!(s, "\n# x={} t_max={}", sweep.x, sweep.t_max);
            let _ = writeln!(
                s,
                "{:>8} {:>10} {:>10} {:>16} {:>14}",
                "theta", "z", "odd primes", "D_approx", "prediction"
            );
            for r in &sweep.rows {
                let _ = writeln!(
                    s,
                    "{:>8} {:>10} {:>10} {:>16.9} {:>14}",
                    r.theta, r.z, r.odd_prime_count, r.d_approx, r.prediction
                );
            }
            Ok(s)
        }
    }
}

pub fn render_identities(report: &IdentityReport, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => json_string(report),
        OutputFormat::Csv => csv_string(
            &["identity", "max_residual", "passed"],
            report.checks.iter().map(|c| {
                vec![c.name.clone(), c.max_residual.to_string(), c.passed.to_string()]
            }),
        ),
        OutputFormat::Pretty => {
            let mut s = format!(
                "# z={} t_max={} backend={} tolerance={:e} odd primes={}\n",
                report.z, report.t_max, report.backend, report.tolerance, report.odd_prime_count
            );
            for (t, v) in report.values.iter().enumerate() {
                let _ = writeln!(s, "f({t}; {}) = {v:.15}", report.z);
            }
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "{:<22} max residual {:>10.3e}  {}",
                    c.name,
                    c.max_residual,
                    if c.passed { "ok" } else { "FAIL" }
                );
            }
            Ok(s)
        }
    }
}

pub fn render_constants(report: &ConstantsReport, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => json_string(report),
        OutputFormat::Csv => {
            let mut records = vec![
                vec!["two_c2".into(), report.hl.cutoff.to_string(), report.hl.value.to_string()],
                vec!["mertens".into(), String::new(), report.mertens.to_string()],
                vec!["mertens_odd".into(), String::new(), report.mertens_odd.to_string()],
            ];
            records.extend(report.odd_prime_zeta.iter().map(|z| {
                vec![
                    format!("odd_prime_zeta_{}", z.k),
                    z.cutoff.to_string(),
                    z.partial_sum.to_string(),
                ]
            }));
            csv_string(&["name", "cutoff", "value"], records)
        }
        OutputFormat::Pretty => {
            let mut lines = vec![
                (format!("2C2 (partial product, p <= {})", report.hl.cutoff), report.hl.value),
                ("M (Meissel-Mertens)".to_string(), report.mertens),
                ("M - 1/2 (odd primes)".to_string(), report.mertens_odd),
            ];
            lines.extend(report.odd_prime_zeta.iter().map(|z| {
                (format!("sum_{{3<=p<={}}} p^-{}", z.cutoff, z.k), z.partial_sum)
            }));
            let width = lines.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
            let mut s = String::new();
            for (i, (label, v)) in lines.iter().enumerate() {
                let _ = writeln!(s, "{label:<width$}  {v:>16.12}");
                if i == 2 {
                    let _ = writeln!(
                        s,
                        "    note: -0.0718 is M - 1/3 ({:.6}), not M - 1/2",
                        report.mertens - 1.0 / 3.0
                    );
                }
            }
            Ok(s)
        }
    }
}
