use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dynrr::engine::simulate;
use dynrr::format::{parse_workload, serialize_workload, WorkloadFormat};
use dynrr::gantt::render_gantt;
use dynrr::metrics::{
    compare_runs, compute_metrics, format_fixed, AlgorithmCases, CaseSummary, RunMetrics,
};
use dynrr::model::{PolicyDescriptor, Workload};
use dynrr::policies::from_descriptor;
use dynrr::reproduce::{export_figure_data, paper_comparisons, render_text, reproduce_paper};
use dynrr::workloads::{
    fixture, generate_workload, ArrivalPattern, BurstOrder, CaseId, GeneratorSpec,
};

#[derive(Parser)]
#[command(
    name = "dynrr",
    version,
    about = "Round-robin scheduling simulator with dynamic time quanta"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RunFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Asc,
    Desc,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one algorithm on one workload.
    Run {
        /// e.g. `rr:q=25`, `dabrr`, `rp5:base=25`, `mrr:floor=25`
        #[arg(long)]
        algo: PolicyDescriptor,
        /// A CSV/JSON file or `case:ID` (I..VI, ILL).
        #[arg(long)]
        workload: String,
        #[arg(long, value_enum, default_value = "text")]
        format: RunFormat,
        /// Append an ASCII Gantt chart (text format only).
        #[arg(long)]
        gantt: bool,
        #[arg(long, default_value_t = 100)]
        width: usize,
    },
    /// Run several algorithms on one workload and report gains over a baseline.
    Compare {
        #[arg(long)]
        workload: String,
        #[arg(long, value_delimiter = ',', required = true)]
        algos: Vec<PolicyDescriptor>,
        #[arg(long, default_value = "rr:q=25")]
        baseline: PolicyDescriptor,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Re-run the six published cases and grade every table cell.
    ReproducePaper {
        /// Comma-separated case ids, or `all`.
        #[arg(long, default_value = "all")]
        cases: String,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Write a seeded random workload.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        burst_min: u64,
        #[arg(long)]
        burst_max: u64,
        #[arg(long, value_enum)]
        order: OrderArg,
        /// `zero` or `staggered:G` (max gap in ms between consecutive arrivals).
        #[arg(long)]
        arrival: String,
        #[arg(long)]
        seed: u64,
        /// Output path; `.json` selects JSON, anything else CSV.
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Write the data behind the result figures as CSV.
    ExportFigures {
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
}

/// A failure that maps to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn load_workload(arg: &str) -> Result<Workload, UsageError> {
    if let Some(id) = arg.strip_prefix("case:") {
        return fixture(id).ok_or_else(|| UsageError(format!("unknown case {id:?} (I..VI, ILL)")));
    }
    let path = Path::new(arg);
    let bytes = fs::read(path).map_err(|e| UsageError(format!("{arg}: {e}")))?;
    parse_workload(&bytes, WorkloadFormat::from_path(path))
        .map_err(|e| UsageError(format!("{arg}: {e}")))
}

fn execute(
    workload: &Workload,
    desc: &PolicyDescriptor,
) -> Result<(dynrr::ExecutionTrace, RunMetrics), UsageError> {
    let policy = from_descriptor(desc);
    let trace = simulate(workload, policy.as_ref())?;
    let metrics = compute_metrics(&trace, workload)?;
    Ok((trace, metrics))
}

fn quanta_list(q: &[u64]) -> String {
    q.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn run_text(workload: &Workload, m: &RunMetrics) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "workload:   {}", workload.label());
    let _ = writeln!(out, "algorithm:  {}", m.descriptor);
    let _ = writeln!(out, "quanta:     {}", quanta_list(&m.quantum_log));
    let _ = writeln!(
        out,
        "\n{:<8} {:>8} {:>8} {:>11} {:>11} {:>8} {:>9}",
        "pid", "arrival", "burst", "completion", "turnaround", "waiting", "response"
    );
    for p in &m.per_process {
        let _ = writeln!(
            out,
            "{:<8} {:>8} {:>8} {:>11} {:>11} {:>8} {:>9}",
            p.pid, p.arrival, p.burst, p.completion, p.turnaround, p.waiting, p.response
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "average waiting time:     {}",
        format_fixed(m.avg_waiting, 1)
    );
    let _ = writeln!(
        out,
        "average turnaround time:  {}",
        format_fixed(m.avg_turnaround, 1)
    );
    let _ = writeln!(
        out,
        "average response time:    {}",
        format_fixed(m.avg_response, 1)
    );
    let _ = writeln!(out, "context switches:         {}", m.context_switches);
    let _ = writeln!(out, "makespan:                 {} ms", m.makespan);
    let _ = writeln!(
        out,
        "throughput:               {} proc/s",
        format_fixed(m.throughput * 1000, 2)
    );
    let _ = writeln!(
        out,
        "cpu utilization:          {}%",
        format_fixed(m.cpu_utilization, 2)
    );
    out
}

fn run_csv(m: &RunMetrics) -> String {
    let mut out = String::from(
        "pid,arrival_ms,burst_ms,completion_ms,turnaround_ms,waiting_ms,response_ms\n",
    );
    for p in &m.per_process {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            p.pid, p.arrival, p.burst, p.completion, p.turnaround, p.waiting, p.response
        );
    }
    out
}

fn parse_arrival(s: &str) -> Result<ArrivalPattern, UsageError> {
    if s == "zero" {
        return Ok(ArrivalPattern::AllZero);
    }
    s.strip_prefix("staggered:")
        .and_then(|g| g.parse().ok())
        .map(|max_gap| ArrivalPattern::Staggered { max_gap })
        .ok_or_else(|| {
            UsageError(format!(
                "--arrival must be `zero` or `staggered:G`, got {s:?}"
            ))
        })
}

fn parse_cases(s: &str) -> Result<Vec<CaseId>, UsageError> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(CaseId::ALL.to_vec());
    }
    s.split(',')
        .map(|c| c.parse::<CaseId>().map_err(UsageError::from))
        .collect()
}

fn dispatch(cli: Cli) -> Result<ExitCode, UsageError> {
    match cli.command {
        Command::Run {
            algo,
            workload,
            format,
            gantt,
            width,
        } => {
            let workload = load_workload(&workload)?;
            let (trace, metrics) = execute(&workload, &algo)?;
            match format {
                RunFormat::Text => {
                    print!("{}", run_text(&workload, &metrics));
                    if gantt {
                        print!("\n{}", render_gantt(&trace, width));
                    }
                }
                RunFormat::Json => {
                    let doc = serde_json::json!({ "metrics": metrics, "trace": trace });
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                }
                RunFormat::Csv => print!("{}", run_csv(&metrics)),
            }
        }
        Command::Compare {
            workload,
            mut algos,
            baseline,
            format,
        } => {
            let workload = load_workload(&workload)?;
            if !algos.contains(&baseline) {
                algos.insert(0, baseline.clone());
            }
            let mut runs = Vec::new();
            let mut quanta = Vec::new();
            for desc in &algos {
                let (_, m) = execute(&workload, desc)?;
                quanta.push(m.quantum_log.clone());
                runs.push(AlgorithmCases {
                    descriptor: desc.clone(),
                    cases: vec![CaseSummary::from_run(workload.label(), &m)],
                });
            }
            let report = compare_runs(workload.label(), &runs, &baseline)?;
            match format {
                ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                ReportFormat::Text => {
                    println!("workload: {}   baseline: {}", workload.label(), baseline);
                    println!(
                        "{:<14} {:<22} {:>4} {:>9} {:>11} {:>9} {:>9}",
                        "algorithm", "quanta", "cs", "waiting", "turnaround", "wait %", "tat %"
                    );
                    for (row, q) in report.rows.iter().zip(&quanta) {
                        println!(
                            "{:<14} {:<22} {:>4} {:>9} {:>11} {:>9} {:>9}",
                            row.descriptor.to_string(),
                            quanta_list(q),
                            row.context_switch_total,
                            format_fixed(row.waiting_total, 1),
                            format_fixed(row.turnaround_total, 1),
                            format_fixed(row.waiting_gain_pct, 2),
                            format_fixed(row.turnaround_gain_pct, 2)
                        );
                    }
                }
            }
        }
        Command::ReproducePaper { cases, format } => {
            let cases = parse_cases(&cases)?;
            let report = reproduce_paper(&cases)?;
            match format {
                ReportFormat::Text => print!("{}", render_text(&report)),
                ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
            }
            return Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::Generate {
            n,
            burst_min,
            burst_max,
            order,
            arrival,
            seed,
            output,
        } => {
            let spec = GeneratorSpec {
                n,
                burst_min,
                burst_max,
                order: match order {
                    OrderArg::Asc => BurstOrder::Ascending,
                    OrderArg::Desc => BurstOrder::Descending,
                    OrderArg::Random => BurstOrder::Random,
                },
                arrival: parse_arrival(&arrival)?,
                seed,
            };
            let workload = generate_workload(&spec)?;
            fs::write(
                &output,
                serialize_workload(&workload, WorkloadFormat::from_path(&output)),
            )
            .map_err(|e| UsageError(format!("{}: {e}", output.display())))?;
        }
        Command::ExportFigures { output } => {
            let reports = paper_comparisons()?;
            let csv = export_figure_data(&reports)?;
            fs::write(&output, csv)
                .map_err(|e| UsageError(format!("{}: {e}", output.display())))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
