//! Domain types shared by the engine, the policies and the metrics.
//!
//! All times are integer milliseconds.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Integer milliseconds.
pub type Millis = u64;

/// One CPU-bound process: identifier, arrival instant and total CPU demand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProcessSpec {
    pub pid: String,
    pub arrival: Millis,
    pub burst: Millis,
}

impl ProcessSpec {
    pub fn new(pid: impl Into<String>, arrival: Millis, burst: Millis) -> Self {
        Self {
            pid: pid.into(),
            arrival,
            burst,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorkloadError {
    #[error("workload has no processes")]
    EmptyWorkload,
    #[error("record {index}: empty pid")]
    EmptyPid { index: usize },
    #[error("duplicate pid {0}")]
    DuplicatePid(String),
    #[error("process {0}: burst must be at least 1 ms")]
    NonPositiveBurst(String),
    #[error("process {0}: arrival must not be negative")]
    NegativeArrival(String),
}

/// A validated, non-empty set of processes in submission order.
///
/// Submission order is kept exactly as given; it breaks every arrival tie.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Workload {
    label: String,
    processes: Vec<ProcessSpec>,
}

impl Workload {
    /// Validates raw `(pid, arrival, burst)` records.
    ///
    /// Signed inputs are accepted so that negative values coming from files
    /// are reported as such instead of failing to parse.
    pub fn validate<I, S>(label: impl Into<String>, records: I) -> Result<Self, WorkloadError>
    where
        I: IntoIterator<Item = (S, i64, i64)>,
        S: Into<String>,
    {
        let mut processes = Vec::new();
        let mut seen = HashSet::new();
        for (index, (pid, arrival, burst)) in records.into_iter().enumerate() {
            let pid: String = pid.into();
            if pid.is_empty() {
                return Err(WorkloadError::EmptyPid { index });
            }
            if !seen.insert(pid.clone()) {
                return Err(WorkloadError::DuplicatePid(pid));
            }
            if burst < 1 {
                return Err(WorkloadError::NonPositiveBurst(pid));
            }
            if arrival < 0 {
                return Err(WorkloadError::NegativeArrival(pid));
            }
            processes.push(ProcessSpec {
                pid,
                arrival: arrival as Millis,
                burst: burst as Millis,
            });
        }
        if processes.is_empty() {
            return Err(WorkloadError::EmptyWorkload);
        }
        Ok(Self {
            label: label.into(),
            processes,
        })
    }

    pub fn from_specs(
        label: impl Into<String>,
        specs: impl IntoIterator<Item = ProcessSpec>,
    ) -> Result<Self, WorkloadError> {
        Self::validate(
            label,
            specs.into_iter().map(|p| {
                (
                    p.pid,
                    i64::try_from(p.arrival).unwrap_or(i64::MAX),
                    i64::try_from(p.burst).unwrap_or(i64::MAX),
                )
            }),
        )
    }

    /// The records of this workload, suitable for feeding back into [`Workload::validate`].
    pub fn records(&self) -> impl Iterator<Item = (String, i64, i64)> + '_ {
        self.processes
            .iter()
            .map(|p| (p.pid.clone(), p.arrival as i64, p.burst as i64))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn processes(&self) -> &[ProcessSpec] {
        &self.processes
    }

    pub fn len(&self) -> usize {
        self.processes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.processes.is_empty()
    }

    pub fn index_of(&self, pid: &str) -> Option<usize> {
        self.processes.iter().position(|p| p.pid == pid)
    }

    pub fn get(&self, pid: &str) -> Option<&ProcessSpec> {
        self.processes.iter().find(|p| p.pid == pid)
    }

    pub fn min_arrival(&self) -> Millis {
        self.processes.iter().map(|p| p.arrival).min().unwrap_or(0)
    }

    pub fn total_burst(&self) -> Millis {
        self.processes.iter().map(|p| p.burst).sum()
    }
}

/// Why a dispatch slice ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Completed,
    QuantumExpired,
}

/// One contiguous interval of CPU given to a process.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slice {
    pub pid: String,
    pub start: Millis,
    pub end: Millis,
    /// 1-based.
    pub cycle: u32,
    pub quantum_in_effect: Millis,
    pub termination: Termination,
}

impl Slice {
    pub fn duration(&self) -> Millis {
        self.end - self.start
    }
}

/// An interval where nothing admitted had work left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdleGap {
    pub start: Millis,
    pub end: Millis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumEntry {
    pub cycle: u32,
    pub quantum: Millis,
}

/// Everything one simulation run produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExecutionTrace {
    pub algorithm: PolicyDescriptor,
    pub slices: Vec<Slice>,
    pub idles: Vec<IdleGap>,
    pub quantum_log: Vec<QuantumEntry>,
}

impl ExecutionTrace {
    pub fn quanta(&self) -> Vec<Millis> {
        self.quantum_log.iter().map(|e| e.quantum).collect()
    }

    /// Time at which the last slice of `pid` ends.
    pub fn completion_of(&self, pid: &str) -> Option<Millis> {
        self.slices
            .iter()
            .rev()
            .find(|s| s.pid == pid)
            .map(|s| s.end)
    }

    pub fn makespan_end(&self) -> Millis {
        self.slices.last().map_or(0, |s| s.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PolicyName {
    #[serde(rename = "RR")]
    RoundRobin,
    #[serde(rename = "DQRRR")]
    Dqrrr,
    #[serde(rename = "IRRVQ")]
    Irrvq,
    #[serde(rename = "SARR")]
    Sarr,
    #[serde(rename = "RP5")]
    Rp5,
    #[serde(rename = "MRR")]
    Mrr,
    #[serde(rename = "DABRR")]
    Dabrr,
}

impl PolicyName {
    /// Table column order.
    pub const ALL: [PolicyName; 7] = [
        PolicyName::RoundRobin,
        PolicyName::Dqrrr,
        PolicyName::Irrvq,
        PolicyName::Sarr,
        PolicyName::Rp5,
        PolicyName::Mrr,
        PolicyName::Dabrr,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PolicyName::RoundRobin => "RR",
            PolicyName::Dqrrr => "DQRRR",
            PolicyName::Irrvq => "IRRVQ",
            PolicyName::Sarr => "SARR",
            PolicyName::Rp5 => "RP5",
            PolicyName::Mrr => "MRR",
            PolicyName::Dabrr => "DABRR",
        }
    }

    /// Lower-case keyword used in algorithm specs (`rr:q=25`).
    pub fn keyword(self) -> &'static str {
        match self {
            PolicyName::RoundRobin => "rr",
            PolicyName::Dqrrr => "dqrrr",
            PolicyName::Irrvq => "irrvq",
            PolicyName::Sarr => "sarr",
            PolicyName::Rp5 => "rp5",
            PolicyName::Mrr => "mrr",
            PolicyName::Dabrr => "dabrr",
        }
    }

    /// Parameter names this policy takes, in rendering order.
    pub fn knobs(self) -> &'static [&'static str] {
        match self {
            PolicyName::RoundRobin => &["q"],
            PolicyName::Rp5 => &["base"],
            PolicyName::Mrr => &["floor"],
            _ => &[],
        }
    }
}

impl fmt::Display for PolicyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescriptorError {
    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),
    #[error("{algorithm}: unknown parameter {param:?}")]
    UnknownParameter { algorithm: String, param: String },
    #[error("{algorithm}: missing parameter {param:?}")]
    MissingParameter { algorithm: String, param: String },
    #[error("{algorithm}: parameter {param:?} must be a positive integer, got {value:?}")]
    BadValue {
        algorithm: String,
        param: String,
        value: String,
    },
}

/// A policy name plus its integer knobs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PolicyDescriptor {
    pub name: PolicyName,
    pub parameters: BTreeMap<String, u64>,
}

impl PolicyDescriptor {
    pub fn new(name: PolicyName, parameters: &[(&str, u64)]) -> Result<Self, DescriptorError> {
        let mut map = BTreeMap::new();
        for (k, v) in parameters {
            if !name.knobs().contains(k) {
                return Err(DescriptorError::UnknownParameter {
                    algorithm: name.keyword().into(),
                    param: (*k).into(),
                });
            }
            if *v == 0 {
                return Err(DescriptorError::BadValue {
                    algorithm: name.keyword().into(),
                    param: (*k).into(),
                    value: "0".into(),
                });
            }
            map.insert((*k).to_string(), *v);
        }
        for knob in name.knobs() {
            if !map.contains_key(*knob) {
                return Err(DescriptorError::MissingParameter {
                    algorithm: name.keyword().into(),
                    param: (*knob).into(),
                });
            }
        }
        Ok(Self {
            name,
            parameters: map,
        })
    }

    /// The descriptor used for `name` in the published experiments
    /// (RR quantum 25, RP-5 base 25, MRR floor 25).
    pub fn paper_default(name: PolicyName) -> Self {
        let params: &[(&str, u64)] = match name {
            PolicyName::RoundRobin => &[("q", 25)],
            PolicyName::Rp5 => &[("base", 25)],
            PolicyName::Mrr => &[("floor", 25)],
            _ => &[],
        };
        Self::new(name, params).expect("static parameters are well-formed")
    }

    pub fn param(&self, key: &str) -> Option<u64> {
        self.parameters.get(key).copied()
    }
}

impl fmt::Display for PolicyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name.keyword())?;
        let mut sep = ':';
        for knob in self.name.knobs() {
            if let Some(v) = self.parameters.get(*knob) {
                write!(f, "{sep}{knob}={v}")?;
                sep = ',';
            }
        }
        Ok(())
    }
}

impl FromStr for PolicyDescriptor {
    type Err = DescriptorError;

    /// Accepts `rr:q=25`, `dabrr`, `rp5:base=25`, `mrr:floor=25`, ...
    /// Parameters may be separated by `,` or `:`. Omitted knobs take the
    /// published default of 25.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        let name = PolicyName::ALL
            .into_iter()
            .find(|n| {
                n.keyword().eq_ignore_ascii_case(head) || n.as_str().eq_ignore_ascii_case(head)
            })
            .ok_or_else(|| DescriptorError::UnknownAlgorithm(s.to_string()))?;
        let mut desc = Self::paper_default(name);
        if let Some(rest) = rest {
            for part in rest.split([',', ':']).filter(|p| !p.is_empty()) {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| DescriptorError::BadValue {
                        algorithm: name.keyword().into(),
                        param: part.into(),
                        value: String::new(),
                    })?;
                let knob = name.knobs().iter().find(|kn| **kn == k).ok_or_else(|| {
                    DescriptorError::UnknownParameter {
                        algorithm: name.keyword().into(),
                        param: k.into(),
                    }
                })?;
                let value: u64 =
                    v.parse()
                        .ok()
                        .filter(|v| *v > 0)
                        .ok_or_else(|| DescriptorError::BadValue {
                            algorithm: name.keyword().into(),
                            param: k.into(),
                            value: v.into(),
                        })?;
                desc.parameters.insert((*knob).to_string(), value);
            }
        }
        Ok(desc)
    }
}
