//! One check per acceptance criterion. Each returns a short summary on
//! success and the first few failures otherwise.

use std::process::Command;

use dynrr::format::{parse_workload, serialize_workload, WorkloadFormat};
use dynrr::metrics::format_fixed;
use dynrr::model::{PolicyName, Termination};
use dynrr::reproduce::paper_comparisons;
use dynrr::workloads::{expected_row, CaseId};
use dynrr::{replay_check, ExecutionTrace, PolicyDescriptor, Workload};

use super::oracle::{oracle, Algo};
use super::published::{
    is_erratum, Aggregate, CASES, ERRATA, GRAND, NONZERO_GROUP, ROWS, ZERO_GROUP,
};
use super::{completions, random_workload, run};

pub type Outcome = Result<String, String>;

fn verdict(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Ok(ok)
    } else {
        let n = failures.len();
        let mut head: Vec<String> = failures.into_iter().take(5).collect();
        if n > 5 {
            head.push(format!("... {} more", n - 5));
        }
        Err(head.join("; "))
    }
}

/// Decimal text scaled to an integer number of `10^-places` units.
pub fn scaled(text: &str, places: u32) -> i64 {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    assert!(
        frac.len() as u32 <= places,
        "{text} has more than {places} decimals"
    );
    let mut digits = format!("{int}{frac}");
    for _ in frac.len() as u32..places {
        digits.push('0');
    }
    digits.parse().expect("decimal text")
}

pub fn case_workload(case: &str) -> Workload {
    let (_, rows) = CASES.iter().find(|(c, _)| *c == case).expect("known case");
    Workload::validate(
        format!("case {case}"),
        rows.iter()
            .enumerate()
            .map(|(i, (a, b))| (format!("P{}", i + 1), *a as i64, *b as i64)),
    )
    .unwrap()
}

pub fn illustration() -> Workload {
    Workload::validate(
        "ILL",
        [
            ("P1", 0, 15),
            ("P2", 0, 32),
            ("P3", 0, 102),
            ("P4", 0, 48),
            ("P5", 0, 29),
        ],
    )
    .unwrap()
}

/// Integer waiting and turnaround sums for a run; averages are these over n.
pub fn totals(w: &Workload, trace: &ExecutionTrace) -> (i64, i64) {
    let done = completions(w, trace);
    let mut wait = 0;
    let mut tat = 0;
    for (p, c) in w.processes().iter().zip(done) {
        let t = (c - p.arrival) as i64;
        tat += t;
        wait += t - p.burst as i64;
    }
    (wait, tat)
}

/// Does `sum / n` equal the decimal `text` exactly?
fn average_is(sum: i64, n: usize, text: &str) -> bool {
    sum * 100 == scaled(text, 2) * n as i64
}

fn row_matches(w: &Workload, algo: &str, row: &super::published::Row) -> Vec<String> {
    let (trace, metrics) = run(w, algo);
    let (wait, tat) = totals(w, &trace);
    let n = w.len();
    let mut bad = Vec::new();
    if trace.quanta() != row.2 {
        bad.push(format!("quanta {:?} != {:?}", trace.quanta(), row.2));
    }
    if metrics.context_switches != row.3 {
        bad.push(format!(
            "context switches {} != {}",
            metrics.context_switches, row.3
        ));
    }
    if !average_is(wait, n, row.4) {
        bad.push(format!("waiting {wait}/{n} != {}", row.4));
    }
    if !average_is(tat, n, row.5) {
        bad.push(format!("turnaround {tat}/{n} != {}", row.5));
    }
    bad
}

fn policy_name(algo: &str) -> PolicyName {
    algo.parse::<PolicyDescriptor>().unwrap().name
}

pub fn golden_rows() -> Outcome {
    let mut failures = Vec::new();
    let mut matched = 0;
    let mut errata = 0;
    for row in &ROWS {
        let (case, algo) = (row.0, row.1);
        let w = case_workload(case);
        let registry = expected_row(case.parse::<CaseId>().unwrap(), policy_name(algo));
        if is_erratum(case, algo) {
            let derived = ERRATA.iter().find(|r| r.0 == case && r.1 == algo).unwrap();
            let wrong = row_matches(&w, algo, row);
            if wrong.is_empty() {
                failures.push(format!(
                    "{case}/{algo}: published erratum row unexpectedly reproduced"
                ));
            }
            let off = row_matches(&w, algo, derived);
            if !off.is_empty() {
                failures.push(format!("{case}/{algo} derived: {}", off.join(", ")));
            }
            match registry.erratum {
                Some(e) => {
                    let d = &e.derived;
                    let ok = d.quanta == derived.2
                        && d.context_switches == derived.3
                        && format_fixed(d.avg_waiting, 1) == derived.4
                        && format_fixed(d.avg_turnaround, 1) == derived.5;
                    if !ok {
                        failures.push(format!(
                            "{case}/{algo}: registry erratum {} carries wrong derived values",
                            e.id
                        ));
                    }
                    errata += 1;
                }
                None => failures.push(format!("{case}/{algo}: not registered as an erratum")),
            }
        } else {
            let bad = row_matches(&w, algo, row);
            if bad.is_empty() {
                matched += 1;
            } else {
                failures.push(format!("{case}/{algo}: {}", bad.join(", ")));
            }
            if registry.erratum.is_some() {
                failures.push(format!(
                    "{case}/{algo}: spuriously registered as an erratum"
                ));
            }
            if registry.quanta != row.2 || registry.context_switches != row.3 {
                failures.push(format!(
                    "{case}/{algo}: registry disagrees with the reference table"
                ));
            }
        }
    }
    if matched != 40 || errata != 2 {
        failures.push(format!(
            "{matched} rows matched and {errata} errata flagged; want 40 and 2"
        ));
    }
    verdict(
        failures,
        format!("{matched}/42 rows exact, {errata} known errata with derived values"),
    )
}

pub fn illustration_walkthrough() -> Outcome {
    let w = illustration();
    let (trace, metrics) = run(&w, "dabrr");
    let mut failures = Vec::new();
    if trace.quanta() != [45, 30, 27] {
        failures.push(format!("quanta {:?}", trace.quanta()));
    }
    let tat: Vec<u64> = metrics.per_process.iter().map(|p| p.turnaround).collect();
    let wait: Vec<u64> = metrics.per_process.iter().map(|p| p.waiting).collect();
    if tat != [15, 76, 226, 169, 44] {
        failures.push(format!("turnarounds {tat:?}"));
    }
    if wait != [0, 44, 124, 121, 15] {
        failures.push(format!("waits {wait:?}"));
    }
    let (ws, ts) = totals(&w, &trace);
    if !average_is(ts, 5, "106") || !average_is(ws, 5, "60.8") {
        failures.push(format!("averages {ts}/5 and {ws}/5"));
    }
    if format_fixed(metrics.avg_turnaround, 1) != "106.0"
        || format_fixed(metrics.avg_waiting, 1) != "60.8"
    {
        failures.push("library averages differ".into());
    }
    verdict(failures, "quanta 45,30,27; averages 106 and 60.8".into())
}

/// Hundredths-exact (half away from zero) percentage reduction of `total` against `base`.
pub fn gain_hundredths(base: i64, total: i64) -> i64 {
    let num = (base - total) * 10_000;
    let q = (2 * num.abs() + base) / (2 * base);
    if num < 0 {
        -q
    } else {
        q
    }
}

fn hundredths_text(v: i64) -> String {
    let sign = if v < 0 { "-" } else { "" };
    format!("{sign}{}.{:02}", v.abs() / 100, v.abs() % 100)
}

fn group_check(group: &str, cases: [&str; 3], table: &[Aggregate; 7], failures: &mut Vec<String>) {
    for (algo, cs, wait, tat) in table {
        if *algo == "sarr" {
            continue;
        }
        let mut cs_total = 0;
        let (mut w_total, mut t_total) = (0i64, 0i64);
        for (k, case) in cases.iter().enumerate() {
            let w = case_workload(case);
            let (trace, metrics) = run(&w, algo);
            let (ws, ts) = totals(&w, &trace);
            cs_total += metrics.context_switches;
            // Every case has five processes, so an average is sum × 20 hundredths.
            w_total += ws * 20;
            t_total += ts * 20;
            if metrics.context_switches != cs[k]
                || ws * 20 != scaled(wait[k], 2)
                || ts * 20 != scaled(tat[k], 2)
            {
                failures.push(format!("{group}/{case}/{algo}: per-case cell differs"));
            }
        }
        if cs_total != cs[3] || w_total != scaled(wait[3], 2) || t_total != scaled(tat[3], 2) {
            failures.push(format!(
                "{group}/{algo}: totals {cs_total}, {}, {}",
                hundredths_text(w_total),
                hundredths_text(t_total)
            ));
        }
    }
}

pub fn aggregates() -> Outcome {
    let mut failures = Vec::new();
    group_check("zero", ["I", "II", "III"], &ZERO_GROUP, &mut failures);
    group_check("nonzero", ["IV", "V", "VI"], &NONZERO_GROUP, &mut failures);

    let grand_totals = |algo: &str| {
        let mut w_total = 0;
        let mut t_total = 0;
        for (case, _) in CASES {
            let w = case_workload(case);
            let (trace, _) = run(&w, algo);
            let (ws, ts) = totals(&w, &trace);
            w_total += ws * 20;
            t_total += ts * 20;
        }
        (w_total, t_total)
    };
    let (base_w, base_t) = grand_totals("rr:q=25");
    let library = paper_comparisons().map_err(|e| e.to_string())?;
    let grand = &library[2];
    let mut dabrr = String::new();
    for (algo, w_text, wg_text, t_text, tg_text) in GRAND {
        if algo == "sarr" {
            continue;
        }
        let (w, t) = grand_totals(algo);
        let (wg, tg) = (gain_hundredths(base_w, w), gain_hundredths(base_t, t));
        let ours = [
            hundredths_text(w),
            hundredths_text(wg),
            hundredths_text(t),
            hundredths_text(tg),
        ];
        if ours != [w_text, wg_text, t_text, tg_text] {
            failures.push(format!("grand/{algo}: {ours:?}"));
        }
        let row = grand
            .row(&algo.parse().unwrap())
            .expect("library compares every algorithm");
        let lib = [
            format_fixed(row.waiting_total, 2),
            format_fixed(row.waiting_gain_pct, 2),
            format_fixed(row.turnaround_total, 2),
            format_fixed(row.turnaround_gain_pct, 2),
        ];
        if lib != ours {
            failures.push(format!("grand/{algo}: library reports {lib:?}"));
        }
        if algo == "dabrr" {
            dabrr = format!("DABRR gains {}% / {}%", ours[1], ours[3]);
        }
    }
    verdict(
        failures,
        format!("group and grand totals exact outside SARR; {dabrr}"),
    )
}

pub fn oracle_workloads(random: u64) -> Vec<Workload> {
    let mut all: Vec<Workload> = CASES.iter().map(|(c, _)| case_workload(c)).collect();
    all.push(illustration());
    all.extend((0..random).map(|seed| random_workload(seed, 12, 200)));
    all
}

pub fn oracle_equivalence(random: u64) -> Outcome {
    let mut failures = Vec::new();
    let workloads = oracle_workloads(random);
    for w in &workloads {
        for algo in Algo::PAPER {
            let (trace, _) = run(w, &algo.descriptor());
            let expected = oracle(w, algo);
            let got = completions(w, &trace);
            if got != expected.completion {
                failures.push(format!(
                    "{} / {}: {got:?} vs {:?}",
                    w.label(),
                    algo.descriptor(),
                    expected.completion
                ));
            }
            if trace.quanta() != expected.quanta {
                failures.push(format!(
                    "{} / {}: quanta differ",
                    w.label(),
                    algo.descriptor()
                ));
            }
        }
    }
    verdict(
        failures,
        format!("{} workloads x 7 policies agree", workloads.len()),
    )
}

/// Checks a trace against the model's invariants without using the library's
/// own replay checker.
pub fn trace_violations(w: &Workload, trace: &ExecutionTrace) -> Vec<String> {
    let mut v = Vec::new();
    let procs = w.processes();
    let idx = |pid: &str| procs.iter().position(|p| p.pid == pid);
    let mut ran = vec![0u64; procs.len()];
    let mut last_end = vec![None; procs.len()];
    for s in &trace.slices {
        let Some(i) = idx(&s.pid) else {
            v.push(format!("unknown pid {}", s.pid));
            continue;
        };
        if s.end <= s.start {
            v.push(format!("empty slice for {}", s.pid));
        }
        if s.start < procs[i].arrival {
            v.push(format!("{} ran before arriving", s.pid));
        }
        if s.end - s.start > s.quantum_in_effect {
            v.push(format!("{} overran its quantum", s.pid));
        }
        ran[i] += s.end - s.start;
        let finished = ran[i] == procs[i].burst;
        if finished != (s.termination == Termination::Completed) {
            v.push(format!("{} termination flag wrong", s.pid));
        }
        last_end[i] = Some(s.end);
    }
    for (i, p) in procs.iter().enumerate() {
        if ran[i] != p.burst {
            v.push(format!("{} ran {} of {}", p.pid, ran[i], p.burst));
        }
    }
    let mut spans: Vec<(u64, u64, bool)> = trace
        .slices
        .iter()
        .map(|s| (s.start, s.end, true))
        .chain(trace.idles.iter().map(|g| (g.start, g.end, false)))
        .collect();
    spans.sort();
    let mut clock = 0;
    for (start, end, _) in &spans {
        if *start != clock {
            v.push(format!("timeline break at {clock}"));
        }
        clock = *end;
    }
    if spans.last().is_some_and(|s| !s.2) {
        v.push("timeline ends idle".into());
    }
    for g in &trace.idles {
        for (i, p) in procs.iter().enumerate() {
            let busy_until = last_end[i].unwrap_or(0);
            if p.arrival <= g.start && busy_until > g.start {
                v.push(format!("idle at {} while {} waited", g.start, p.pid));
            }
        }
    }
    v
}

pub fn fcfs_slices(w: &Workload) -> Vec<(String, u64, u64)> {
    let mut clock = 0;
    w.processes()
        .iter()
        .map(|p| {
            let s = (p.pid.clone(), clock, clock + p.burst);
            clock += p.burst;
            s
        })
        .collect()
}

/// Every property, over `count` generated workloads and all seven policies.
pub fn properties(count: u64) -> Outcome {
    let mut failures = Vec::new();
    let mut push = |w: &Workload, algo: &str, what: String| {
        failures.push(format!("{} / {algo}: {what}", w.label()))
    };
    for seed in 0..count {
        let w = random_workload(1_000_000 + seed, 12, 200);
        for algo in Algo::PAPER {
            let d = algo.descriptor();
            let (trace, metrics) = run(&w, &d);
            for e in trace_violations(&w, &trace) {
                push(&w, &d, e);
            }
            if !replay_check(&trace, &w).passed() {
                push(&w, &d, "replay check rejected the trace".into());
            }
            if run(&w, &d).0 != trace {
                push(&w, &d, "not deterministic".into());
            }
            let q = trace.quanta();
            if q.is_empty() || q.contains(&0) {
                push(&w, &d, format!("quantum log {q:?}"));
            }
            if algo == Algo::Irrvq && q.len() > w.len() {
                push(
                    &w,
                    &d,
                    format!("{} cycles for {} processes", q.len(), w.len()),
                );
            }
            if metrics.context_switches + 1 != trace.slices.len() as u64 {
                push(&w, &d, "context switches != slices - 1".into());
            }
        }
        let p = &w.processes()[0];
        let single = Workload::validate(
            "single",
            [(p.pid.clone(), p.arrival as i64, p.burst as i64)],
        )
        .unwrap();
        for algo in Algo::PAPER {
            let (trace, _) = run(&single, &algo.descriptor());
            if completions(&single, &trace) != [p.arrival + p.burst] {
                push(
                    &single,
                    &algo.descriptor(),
                    "single process did not finish at arrival + burst".into(),
                );
            }
        }
        let zero = Workload::validate(
            "zero arrivals",
            w.processes()
                .iter()
                .map(|p| (p.pid.clone(), 0, p.burst as i64)),
        )
        .unwrap();
        let (trace, _) = run(&zero, "rr:q=1000");
        let got: Vec<(String, u64, u64)> = trace
            .slices
            .iter()
            .map(|s| (s.pid.clone(), s.start, s.end))
            .collect();
        if got != fcfs_slices(&zero) {
            push(&zero, "rr:q=1000", "differs from FCFS".into());
        }
    }
    verdict(
        failures,
        format!("{count} workloads x 7 policies, all properties hold"),
    )
}

pub fn cli_contract(bin: &str, scratch: &std::path::Path) -> Outcome {
    let mut failures = Vec::new();
    let out = Command::new(bin)
        .args(["reproduce-paper", "--cases", "all", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.code() != Some(0) {
        failures.push(format!("reproduce-paper exited {:?}", out.status.code()));
    }
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let cells = report["cells"].as_array().cloned().unwrap_or_default();
    let mut per_case_flags = Vec::new();
    let mut knock_ons = 0;
    for c in &cells {
        let status = c["status"].as_str().unwrap_or("");
        if status == "mismatch" {
            failures.push(format!("mismatch: {c}"));
        }
        if status != "known_erratum" {
            continue;
        }
        let scope = c["scope"].as_str().unwrap_or("");
        let field = c["field"].as_str().unwrap_or("");
        let table = c["table"].as_str().unwrap_or("");
        let aggregate_table = table != "per-case";
        let aggregate_scope = ["III", "VI", "zero", "nonzero", "grand"].contains(&scope);
        if c["algorithm"] != "SARR" {
            failures.push(format!("non-SARR cell flagged: {c}"));
        } else if !aggregate_table {
            per_case_flags.push(format!("{scope}:{field}"));
        } else if aggregate_scope {
            knock_ons += 1;
        } else {
            failures.push(format!("aggregate cell outside the errata flagged: {c}"));
        }
    }
    per_case_flags.sort();
    let want: Vec<String> = ["III", "VI"]
        .iter()
        .flat_map(|s| {
            [
                "avg_turnaround",
                "avg_waiting",
                "context_switches",
                "quanta",
            ]
            .map(|f| format!("{s}:{f}"))
        })
        .collect();
    if per_case_flags != want {
        failures.push(format!("per-case flagged cells {per_case_flags:?}"));
    }

    let csv = scratch.join("w.csv");
    let json = scratch.join("w.json");
    for (path, format) in [(&csv, WorkloadFormat::Csv), (&json, WorkloadFormat::Json)] {
        let status = Command::new(bin)
            .args([
                "generate",
                "--n",
                "9",
                "--burst-min",
                "1",
                "--burst-max",
                "200",
                "--order",
                "random",
            ])
            .args(["--arrival", "staggered:30", "--seed", "7", "-o"])
            .arg(path)
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            failures.push(format!("generate to {} failed", path.display()));
            continue;
        }
        let written = std::fs::read(path).map_err(|e| e.to_string())?;
        let once = serialize_workload(
            &parse_workload(&written, format).map_err(|e| e.to_string())?,
            format,
        );
        let twice = serialize_workload(
            &parse_workload(&once, format).map_err(|e| e.to_string())?,
            format,
        );
        if once != written || twice != once {
            failures.push(format!("{format:?} round trip is not byte-stable"));
        }
    }
    let messy = b"pid , arrival_ms , burst_ms\r\n P1 , 0 , 5 \r\nP2,3,7\r\n";
    let once = serialize_workload(
        &parse_workload(messy, WorkloadFormat::Csv).unwrap(),
        WorkloadFormat::Csv,
    );
    let twice = serialize_workload(
        &parse_workload(&once, WorkloadFormat::Csv).unwrap(),
        WorkloadFormat::Csv,
    );
    if once != twice {
        failures.push("normalized CSV is not a fixed point".into());
    }
    verdict(
        failures,
        format!(
            "exit 0, 8 erratum cells + {knock_ons} SARR knock-ons flagged, round trips byte-stable"
        ),
    )
}
