//! Re-running the published experiments and checking every table cell.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::engine::{simulate, EngineError};
use crate::metrics::{
    compare_runs, compute_metrics, format_fixed, AlgorithmCases, CaseSummary, ComparisonReport,
    MetricsError, Rational, RunMetrics,
};
use crate::model::{PolicyDescriptor, PolicyName};
use crate::policies::from_descriptor;
use crate::workloads::{
    expected_aggregate, expected_grand, expected_row, paper_case, ArrivalGroup, CaseId,
};

#[derive(Debug, Error)]
pub enum ReproduceError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CellStatus {
    Match,
    Mismatch,
    KnownErratum { erratum: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellOutcome {
    /// `per-case`, `group` or `grand`.
    pub table: &'static str,
    /// Case id, arrival group or `grand`.
    pub scope: String,
    pub algorithm: PolicyName,
    pub field: String,
    pub actual: String,
    /// The published value.
    pub expected: String,
    #[serde(flatten)]
    pub status: CellStatus,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub matched: usize,
    pub mismatched: usize,
    pub known_errata: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReproductionReport {
    pub cases: Vec<CaseId>,
    pub cells: Vec<CellOutcome>,
    pub summary: Summary,
    pub exit_status: i32,
}

impl ReproductionReport {
    pub fn passed(&self) -> bool {
        self.exit_status == 0
    }

    pub fn flagged(&self) -> impl Iterator<Item = &CellOutcome> {
        self.cells
            .iter()
            .filter(|c| matches!(c.status, CellStatus::KnownErratum { .. }))
    }
}

/// Runs one reference case under the published setting of `name`.
pub fn run_paper_case(case: CaseId, name: PolicyName) -> Result<RunMetrics, ReproduceError> {
    let workload = paper_case(case);
    let policy = from_descriptor(&PolicyDescriptor::paper_default(name));
    let trace = simulate(&workload, policy.as_ref())?;
    Ok(compute_metrics(&trace, &workload)?)
}

fn join(quanta: &[u64]) -> String {
    quanta
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn errata_for(name: PolicyName, cases: &[CaseId]) -> Vec<&'static str> {
    cases
        .iter()
        .filter_map(|c| expected_row(*c, name).erratum.map(|e| e.id))
        .collect()
}

struct Collector {
    cells: Vec<CellOutcome>,
}

impl Collector {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        table: &'static str,
        scope: &str,
        algorithm: PolicyName,
        field: &str,
        actual: String,
        expected: String,
        erratum: Option<(String, bool)>,
    ) {
        let status = if actual == expected {
            CellStatus::Match
        } else {
            match erratum {
                // Only excused when the simulation lands on the rule-derived value.
                Some((id, true)) => CellStatus::KnownErratum { erratum: id },
                _ => CellStatus::Mismatch,
            }
        };
        self.cells.push(CellOutcome {
            table,
            scope: scope.to_string(),
            algorithm,
            field: field.to_string(),
            actual,
            expected,
            status,
        });
    }
}

/// Simulates all seven algorithms on `cases` and grades every published
/// cell. Group aggregates are graded when all three cases of the group are
/// selected; grand totals and gains when all six are.
pub fn reproduce_paper(cases: &[CaseId]) -> Result<ReproductionReport, ReproduceError> {
    let mut cases: Vec<CaseId> = cases.to_vec();
    cases.sort();
    cases.dedup();
    let mut col = Collector { cells: Vec::new() };
    let mut runs: Vec<(CaseId, PolicyName, RunMetrics)> = Vec::new();

    for &case in &cases {
        for name in PolicyName::ALL {
            let m = run_paper_case(case, name)?;
            let exp = expected_row(case, name);
            let table = "per-case";
            let scope = case.as_str();
            let derived = exp.erratum.as_ref().map(|e| &e.derived);
            let excuse = |ok: bool| exp.erratum.as_ref().map(|e| (e.id.to_string(), ok));
            col.push(
                table,
                scope,
                name,
                "quanta",
                join(&m.quantum_log),
                join(&exp.quanta),
                excuse(derived.is_some_and(|d| d.quanta == m.quantum_log)),
            );
            col.push(
                table,
                scope,
                name,
                "context_switches",
                m.context_switches.to_string(),
                exp.context_switches.to_string(),
                excuse(derived.is_some_and(|d| d.context_switches == m.context_switches)),
            );
            col.push(
                table,
                scope,
                name,
                "avg_waiting",
                format_fixed(m.avg_waiting, 1),
                format_fixed(exp.avg_waiting, 1),
                excuse(derived.is_some_and(|d| d.avg_waiting == m.avg_waiting)),
            );
            col.push(
                table,
                scope,
                name,
                "avg_turnaround",
                format_fixed(m.avg_turnaround, 1),
                format_fixed(exp.avg_turnaround, 1),
                excuse(derived.is_some_and(|d| d.avg_turnaround == m.avg_turnaround)),
            );
            runs.push((case, name, m));
        }
    }

    let lookup = |case: CaseId, name: PolicyName| {
        runs.iter()
            .find(|(c, n, _)| *c == case && *n == name)
            .map(|(_, _, m)| m)
            .expect("every selected run is present")
    };

    for group in [ArrivalGroup::Zero, ArrivalGroup::NonZero] {
        let gcases = group.cases();
        if !gcases.iter().all(|c| cases.contains(c)) {
            continue;
        }
        let table = "group";
        for name in PolicyName::ALL {
            let exp = expected_aggregate(group, name);
            let mut cs_total = 0;
            let zero = Rational::from_integer(0);
            let (mut w_total, mut t_total) = (zero, zero);
            for (k, case) in gcases.into_iter().enumerate() {
                let m = lookup(case, name);
                let knock = errata_for(name, &[case]);
                let excuse = (!knock.is_empty()).then(|| (knock.join("+"), true));
                let scope = case.as_str();
                col.push(
                    table,
                    scope,
                    name,
                    "context_switches",
                    m.context_switches.to_string(),
                    exp.context_switches[k].to_string(),
                    excuse.clone(),
                );
                col.push(
                    table,
                    scope,
                    name,
                    "waiting",
                    format_fixed(m.avg_waiting, 2),
                    format_fixed(exp.waiting[k], 2),
                    excuse.clone(),
                );
                col.push(
                    table,
                    scope,
                    name,
                    "turnaround",
                    format_fixed(m.avg_turnaround, 2),
                    format_fixed(exp.turnaround[k], 2),
                    excuse,
                );
                cs_total += m.context_switches;
                w_total += m.avg_waiting;
                t_total += m.avg_turnaround;
            }
            let knock = errata_for(name, &gcases);
            let excuse = (!knock.is_empty()).then(|| (knock.join("+"), true));
            let scope = group.as_str();
            col.push(
                table,
                scope,
                name,
                "context_switch_total",
                cs_total.to_string(),
                exp.context_switch_total.to_string(),
                excuse.clone(),
            );
            col.push(
                table,
                scope,
                name,
                "waiting_total",
                format_fixed(w_total, 2),
                format_fixed(exp.waiting_total, 2),
                excuse.clone(),
            );
            col.push(
                table,
                scope,
                name,
                "turnaround_total",
                format_fixed(t_total, 2),
                format_fixed(exp.turnaround_total, 2),
                excuse,
            );
        }
    }

    if CaseId::ALL.iter().all(|c| cases.contains(c)) {
        let grand = grand_comparison_from(&runs)?;
        for name in PolicyName::ALL {
            let exp = expected_grand(name);
            let row = grand
                .row(&PolicyDescriptor::paper_default(name))
                .expect("every algorithm compared");
            let knock = errata_for(name, &CaseId::ALL);
            let excuse = (!knock.is_empty()).then(|| (knock.join("+"), true));
            col.push(
                "grand",
                "grand",
                name,
                "waiting_total",
                format_fixed(row.waiting_total, 2),
                format_fixed(exp.waiting_total, 2),
                excuse.clone(),
            );
            col.push(
                "grand",
                "grand",
                name,
                "waiting_gain_pct",
                format_fixed(row.waiting_gain_pct, 2),
                format_fixed(exp.waiting_gain_pct, 2),
                excuse.clone(),
            );
            col.push(
                "grand",
                "grand",
                name,
                "turnaround_total",
                format_fixed(row.turnaround_total, 2),
                format_fixed(exp.turnaround_total, 2),
                excuse.clone(),
            );
            col.push(
                "grand",
                "grand",
                name,
                "turnaround_gain_pct",
                format_fixed(row.turnaround_gain_pct, 2),
                format_fixed(exp.turnaround_gain_pct, 2),
                excuse,
            );
        }
    }

    let mut summary = Summary::default();
    for c in &col.cells {
        match c.status {
            CellStatus::Match => summary.matched += 1,
            CellStatus::Mismatch => summary.mismatched += 1,
            CellStatus::KnownErratum { .. } => summary.known_errata += 1,
        }
    }
    let exit_status = i32::from(summary.mismatched > 0);
    Ok(ReproductionReport {
        cases,
        cells: col.cells,
        summary,
        exit_status,
    })
}

fn comparison(
    group: &str,
    runs: &[(CaseId, PolicyName, RunMetrics)],
    cases: &[CaseId],
) -> Result<ComparisonReport, ReproduceError> {
    let per_alg: Vec<AlgorithmCases> = PolicyName::ALL
        .into_iter()
        .map(|name| AlgorithmCases {
            descriptor: PolicyDescriptor::paper_default(name),
            cases: cases
                .iter()
                .filter_map(|case| {
                    runs.iter()
                        .find(|(c, n, _)| c == case && *n == name)
                        .map(|(c, _, m)| CaseSummary::from_run(c.as_str(), m))
                })
                .collect(),
        })
        .collect();
    Ok(compare_runs(
        group,
        &per_alg,
        &PolicyDescriptor::paper_default(PolicyName::RoundRobin),
    )?)
}

fn grand_comparison_from(
    runs: &[(CaseId, PolicyName, RunMetrics)],
) -> Result<ComparisonReport, ReproduceError> {
    comparison("grand", runs, &CaseId::ALL)
}

/// Simulated comparisons for the zero-arrival group, the staggered group and
/// all six cases, in that order, each against RR with quantum 25.
pub fn paper_comparisons() -> Result<[ComparisonReport; 3], ReproduceError> {
    let mut runs = Vec::new();
    for case in CaseId::ALL {
        for name in PolicyName::ALL {
            runs.push((case, name, run_paper_case(case, name)?));
        }
    }
    Ok([
        comparison(
            ArrivalGroup::Zero.as_str(),
            &runs,
            &ArrivalGroup::Zero.cases(),
        )?,
        comparison(
            ArrivalGroup::NonZero.as_str(),
            &runs,
            &ArrivalGroup::NonZero.cases(),
        )?,
        grand_comparison_from(&runs)?,
    ])
}

/// Human-readable report: one line per (table, scope, algorithm) row.
pub fn render_text(report: &ReproductionReport) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < report.cells.len() {
        let head = &report.cells[i];
        let mut j = i;
        let mut parts = Vec::new();
        let mut tag = "ok";
        while j < report.cells.len()
            && report.cells[j].table == head.table
            && report.cells[j].scope == head.scope
            && report.cells[j].algorithm == head.algorithm
        {
            let c = &report.cells[j];
            parts.push(match &c.status {
                CellStatus::Match => format!("{}={}", c.field, c.actual),
                CellStatus::Mismatch => {
                    tag = "MISMATCH";
                    format!("{}={} (expected {})", c.field, c.actual, c.expected)
                }
                CellStatus::KnownErratum { erratum } => {
                    if tag == "ok" {
                        tag = "erratum";
                    }
                    format!(
                        "{}={} (published {}, {erratum})",
                        c.field, c.actual, c.expected
                    )
                }
            });
            j += 1;
        }
        let _ = writeln!(
            out,
            "[{tag:>8}] {:<8} {:<7} {:<6} {}",
            head.table,
            head.scope,
            head.algorithm.as_str(),
            parts.join("; ")
        );
        i = j;
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "\n{} cells: {} match, {} known errata, {} mismatch",
        report.cells.len(),
        s.matched,
        s.known_errata,
        s.mismatched
    );
    out
}

#[derive(Debug, Error)]
#[error("no comparison report for group {0:?}")]
pub struct MissingGroup(pub String);

/// CSV rows `figure,algorithm,metric,case_group,value` for the six result
/// figures: waiting and turnaround per case and total for each arrival group
/// (fig2..fig5) and the grand percentage reductions (fig6, fig7).
pub fn export_figure_data(reports: &[ComparisonReport]) -> Result<String, MissingGroup> {
    let find = |g: &str| {
        reports
            .iter()
            .find(|r| r.group == g)
            .ok_or_else(|| MissingGroup(g.to_string()))
    };
    let zero = find(ArrivalGroup::Zero.as_str())?;
    let nonzero = find(ArrivalGroup::NonZero.as_str())?;
    let grand = find("grand")?;

    let mut out = String::from("figure,algorithm,metric,case_group,value\n");
    let mut row = |fig: &str, alg: PolicyName, metric: &str, group: &str, v: Rational| {
        let _ = writeln!(
            out,
            "{fig},{},{metric},{group},{}",
            alg.as_str(),
            format_fixed(v, 2)
        );
    };
    for (report, wfig, tfig) in [(zero, "fig2", "fig3"), (nonzero, "fig4", "fig5")] {
        for (fig, metric, waiting) in [(wfig, "waiting_ms", true), (tfig, "turnaround_ms", false)] {
            for r in &report.rows {
                for c in &r.cases {
                    let v = if waiting {
                        c.avg_waiting
                    } else {
                        c.avg_turnaround
                    };
                    row(fig, r.descriptor.name, metric, &c.case, v);
                }
                let total = if waiting {
                    r.waiting_total
                } else {
                    r.turnaround_total
                };
                row(fig, r.descriptor.name, metric, &report.group, total);
            }
        }
    }
    for r in &grand.rows {
        row(
            "fig6",
            r.descriptor.name,
            "waiting_gain_pct",
            "grand",
            r.waiting_gain_pct,
        );
    }
    for r in &grand.rows {
        row(
            "fig7",
            r.descriptor.name,
            "tat_gain_pct",
            "grand",
            r.turnaround_gain_pct,
        );
    }
    Ok(out)
}
