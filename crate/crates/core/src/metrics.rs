//! Per-process and aggregate scheduling metrics.
//!
//! Averages and percentages are exact rationals; they are only rounded when
//! rendered (one decimal for times, two for percentages).

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::engine::replay_check;
use crate::model::{ExecutionTrace, Millis, PolicyDescriptor, Workload};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("trace does not replay against the workload: {}", .0.join("; "))]
    InconsistentTrace(Vec<String>),
    #[error("{algorithm} covers cases [{found}], expected [{expected}]")]
    MismatchedCaseSets {
        algorithm: String,
        expected: String,
        found: String,
    },
    #[error("baseline {0} is not among the compared runs")]
    MissingBaseline(String),
}

/// Renders `value` with `decimals` fractional digits, rounding half away
/// from zero.
pub fn format_fixed(value: Rational, decimals: u32) -> String {
    let scale = 10i64.pow(decimals);
    let scaled = value * scale;
    let neg = scaled < Rational::from_integer(0);
    let abs = if neg { -scaled } else { scaled };
    let rounded = (abs + Ratio::new(1, 2)).floor().to_integer();
    let sign = if neg && rounded != 0 { "-" } else { "" };
    if decimals == 0 {
        return format!("{sign}{rounded}");
    }
    format!(
        "{sign}{}.{:0width$}",
        rounded / scale,
        rounded % scale,
        width = decimals as usize
    )
}

/// Parses a plain decimal such as `261.4`, `1,155.40` or `41.23%`.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let cleaned: String = text
        .trim()
        .trim_end_matches('%')
        .chars()
        .filter(|c| *c != ',')
        .collect();
    let (neg, digits) = match cleaned.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, cleaned.as_str()),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let int: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let denom = 10i64.checked_pow(frac.len() as u32)?;
    let frac: i64 = if frac.is_empty() {
        0
    } else {
        frac.parse().ok()?
    };
    let v = Ratio::new(int.checked_mul(denom)?.checked_add(frac)?, denom);
    Some(if neg { -v } else { v })
}

pub(crate) fn ser_one_decimal<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(format_fixed(*v, 1).parse().unwrap_or(f64::NAN))
}

pub(crate) fn ser_two_decimals<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(format_fixed(*v, 2).parse().unwrap_or(f64::NAN))
}

fn ser_ratio_f64<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(*v.numer() as f64 / *v.denom() as f64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProcessMetrics {
    pub pid: String,
    pub arrival: Millis,
    pub burst: Millis,
    pub completion: Millis,
    pub turnaround: Millis,
    pub waiting: Millis,
    pub response: Millis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunMetrics {
    pub descriptor: PolicyDescriptor,
    pub per_process: Vec<ProcessMetrics>,
    #[serde(serialize_with = "ser_one_decimal")]
    pub avg_waiting: Rational,
    #[serde(serialize_with = "ser_one_decimal")]
    pub avg_turnaround: Rational,
    #[serde(serialize_with = "ser_one_decimal")]
    pub avg_response: Rational,
    pub context_switches: u64,
    pub makespan: Millis,
    /// Processes per millisecond.
    #[serde(serialize_with = "ser_ratio_f64")]
    pub throughput: Rational,
    /// Percent of the makespan the CPU was busy.
    #[serde(serialize_with = "ser_ratio_f64")]
    pub cpu_utilization: Rational,
    pub quantum_log: Vec<Millis>,
}

/// Slices − 1. Every slice boundary is a switch, including a quantum expiry
/// that hands the CPU straight back to the same process; idle gaps add
/// nothing.
pub fn context_switches(trace: &ExecutionTrace) -> u64 {
    trace.slices.len().saturating_sub(1) as u64
}

fn mean(values: impl Iterator<Item = Millis>, n: usize) -> Rational {
    let total: i64 = values.map(|v| v as i64).sum();
    Ratio::new(total, n.max(1) as i64)
}

pub fn compute_metrics(
    trace: &ExecutionTrace,
    workload: &Workload,
) -> Result<RunMetrics, MetricsError> {
    let replay = replay_check(trace, workload);
    if !replay.passed() {
        return Err(MetricsError::InconsistentTrace(replay.violations));
    }
    let per_process: Vec<ProcessMetrics> = workload
        .processes()
        .iter()
        .map(|p| {
            let mut first = None;
            let mut completion = p.arrival;
            for s in trace.slices.iter().filter(|s| s.pid == p.pid) {
                first.get_or_insert(s.start);
                completion = s.end;
            }
            let turnaround = completion - p.arrival;
            ProcessMetrics {
                pid: p.pid.clone(),
                arrival: p.arrival,
                burst: p.burst,
                completion,
                turnaround,
                waiting: turnaround - p.burst,
                response: first.unwrap_or(p.arrival) - p.arrival,
            }
        })
        .collect();
    let n = per_process.len();
    let makespan = trace.makespan_end() - workload.min_arrival();
    let span = makespan.max(1) as i64;
    Ok(RunMetrics {
        descriptor: trace.algorithm.clone(),
        avg_waiting: mean(per_process.iter().map(|m| m.waiting), n),
        avg_turnaround: mean(per_process.iter().map(|m| m.turnaround), n),
        avg_response: mean(per_process.iter().map(|m| m.response), n),
        per_process,
        context_switches: context_switches(trace),
        makespan,
        throughput: Ratio::new(n as i64, span),
        cpu_utilization: Ratio::new(workload.total_burst() as i64 * 100, span),
        quantum_log: trace.quanta(),
    })
}

/// The three numbers the comparison tables carry per (case, algorithm).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseSummary {
    pub case: String,
    pub context_switches: u64,
    #[serde(serialize_with = "ser_one_decimal")]
    pub avg_waiting: Rational,
    #[serde(serialize_with = "ser_one_decimal")]
    pub avg_turnaround: Rational,
}

impl CaseSummary {
    pub fn from_run(case: impl Into<String>, run: &RunMetrics) -> Self {
        Self {
            case: case.into(),
            context_switches: run.context_switches,
            avg_waiting: run.avg_waiting,
            avg_turnaround: run.avg_turnaround,
        }
    }
}

/// One algorithm's results across a set of cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmCases {
    pub descriptor: PolicyDescriptor,
    pub cases: Vec<CaseSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub descriptor: PolicyDescriptor,
    pub cases: Vec<CaseSummary>,
    pub context_switch_total: u64,
    #[serde(serialize_with = "ser_two_decimals")]
    pub waiting_total: Rational,
    #[serde(serialize_with = "ser_two_decimals")]
    pub turnaround_total: Rational,
    #[serde(serialize_with = "ser_two_decimals")]
    pub waiting_gain_pct: Rational,
    #[serde(serialize_with = "ser_two_decimals")]
    pub turnaround_gain_pct: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub group: String,
    pub baseline: PolicyDescriptor,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    pub fn row(&self, descriptor: &PolicyDescriptor) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| &r.descriptor == descriptor)
    }
}

/// (baseline − total) / baseline × 100; zero when the baseline total is zero.
pub fn percentage_gain(baseline_total: Rational, total: Rational) -> Rational {
    if baseline_total == Rational::from_integer(0) {
        return Rational::from_integer(0);
    }
    (baseline_total - total) / baseline_total * 100
}

/// Sums every algorithm's case averages and expresses each total as a
/// reduction relative to `baseline`.
pub fn compare_runs(
    group: impl Into<String>,
    runs: &[AlgorithmCases],
    baseline: &PolicyDescriptor,
) -> Result<ComparisonReport, MetricsError> {
    let base = runs
        .iter()
        .find(|r| &r.descriptor == baseline)
        .ok_or_else(|| MetricsError::MissingBaseline(baseline.to_string()))?;
    let case_key = |r: &AlgorithmCases| {
        let mut ids: Vec<String> = r.cases.iter().map(|c| c.case.clone()).collect();
        ids.sort();
        ids
    };
    let expected = case_key(base);
    for r in runs {
        let found = case_key(r);
        if found != expected {
            return Err(MetricsError::MismatchedCaseSets {
                algorithm: r.descriptor.to_string(),
                expected: expected.join(","),
                found: found.join(","),
            });
        }
    }
    let totals = |r: &AlgorithmCases| {
        let zero = Rational::from_integer(0);
        r.cases.iter().fold((0u64, zero, zero), |(cs, w, t), c| {
            (
                cs + c.context_switches,
                w + c.avg_waiting,
                t + c.avg_turnaround,
            )
        })
    };
    let (_, base_wait, base_tat) = totals(base);
    let rows = runs
        .iter()
        .map(|r| {
            let (cs, w, t) = totals(r);
            ComparisonRow {
                descriptor: r.descriptor.clone(),
                cases: r.cases.clone(),
                context_switch_total: cs,
                waiting_total: w,
                turnaround_total: t,
                waiting_gain_pct: percentage_gain(base_wait, w),
                turnaround_gain_pct: percentage_gain(base_tat, t),
            }
        })
        .collect();
    Ok(ComparisonReport {
        group: group.into(),
        baseline: baseline.clone(),
        rows,
    })
}
