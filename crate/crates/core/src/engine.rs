//! Discrete-event execution kernel.
//!
//! The engine owns the clock, admission of arrivals and the ready queue.
//! A [`Policy`] only decides, once per cycle, the dispatch order and the
//! quantum. Context switches cost zero time.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::model::{
    ExecutionTrace, IdleGap, Millis, PolicyDescriptor, QuantumEntry, Slice, Termination, Workload,
};

/// When processes that arrive mid-cycle become eligible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrivalMode {
    /// Held until the running cycle has dispatched every planned process.
    CycleBoundary,
    /// Checked after every slice; any arrival abandons the rest of the
    /// cycle and a new one is planned over everything admitted.
    SliceBoundaryRestart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QueueDiscipline {
    /// Classic circular FIFO: arrivals join the tail, then the preempted
    /// process rejoins behind them. The quantum never changes.
    FifoTailRejoin,
    /// The ready set is planned as a whole at the start of each cycle.
    CyclePass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReadyEntry {
    pub pid: String,
    pub remaining: Millis,
    pub arrival: Millis,
    pub dispatched_before: bool,
    /// Position in the workload's submission order.
    pub submission_index: usize,
}

/// The ready queue as seen by a policy at the start of a cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReadySnapshot {
    /// Current queue order.
    pub entries: Vec<ReadyEntry>,
    pub now: Millis,
    /// 1-based.
    pub cycle_index: u32,
    pub contains_new_arrivals: bool,
}

impl ReadySnapshot {
    pub fn new(entries: Vec<ReadyEntry>, now: Millis, cycle_index: u32) -> Self {
        let contains_new_arrivals = entries.iter().any(|e| !e.dispatched_before);
        Self {
            entries,
            now,
            cycle_index,
            contains_new_arrivals,
        }
    }

    pub fn remaining(&self) -> Vec<Millis> {
        self.entries.iter().map(|e| e.remaining).collect()
    }

    pub fn queue_order(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.pid.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclePlan {
    pub order: Vec<String>,
    pub quantum: Millis,
}

/// A scheduling policy: a pure planning function plus how the engine
/// should treat arrivals and the queue around it.
pub trait Policy: Send + Sync {
    fn descriptor(&self) -> PolicyDescriptor;
    fn arrival_mode(&self) -> ArrivalMode;
    fn queue_discipline(&self) -> QueueDiscipline;
    /// Must return a permutation of the snapshot's pids and a quantum >= 1.
    fn plan(&self, snapshot: &ReadySnapshot) -> CyclePlan;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("policy {policy} returned an invalid plan in cycle {cycle}: {reason}")]
    PolicyPlanInvalid {
        policy: String,
        cycle: u32,
        reason: String,
    },
}

struct Kernel<'a> {
    workload: &'a Workload,
    policy: &'a dyn Policy,
    remaining: Vec<Millis>,
    dispatched: Vec<bool>,
    /// Indices sorted by (arrival, submission index).
    arrival_order: Vec<usize>,
    next_arrival: usize,
    queue: VecDeque<usize>,
    clock: Millis,
    trace: ExecutionTrace,
}

impl<'a> Kernel<'a> {
    fn new(workload: &'a Workload, policy: &'a dyn Policy) -> Self {
        let procs = workload.processes();
        let mut arrival_order: Vec<usize> = (0..procs.len()).collect();
        arrival_order.sort_by_key(|&i| procs[i].arrival);
        Self {
            workload,
            policy,
            remaining: procs.iter().map(|p| p.burst).collect(),
            dispatched: vec![false; procs.len()],
            arrival_order,
            next_arrival: 0,
            queue: VecDeque::new(),
            clock: 0,
            trace: ExecutionTrace {
                algorithm: policy.descriptor(),
                slices: Vec::new(),
                idles: Vec::new(),
                quantum_log: Vec::new(),
            },
        }
    }

    fn arrival(&self, idx: usize) -> Millis {
        self.workload.processes()[idx].arrival
    }

    fn pending_arrival(&self) -> Option<Millis> {
        self.arrival_order
            .get(self.next_arrival)
            .map(|&i| self.arrival(i))
    }

    fn has_arrived_now(&self) -> bool {
        self.pending_arrival().is_some_and(|a| a <= self.clock)
    }

    fn admit(&mut self) {
        while let Some(&idx) = self.arrival_order.get(self.next_arrival) {
            if self.arrival(idx) > self.clock {
                break;
            }
            self.queue.push_back(idx);
            self.next_arrival += 1;
        }
    }

    /// Returns false when the run is over.
    fn idle_until_next_arrival(&mut self) -> bool {
        match self.pending_arrival() {
            Some(at) => {
                if at > self.clock {
                    self.trace.idles.push(IdleGap {
                        start: self.clock,
                        end: at,
                    });
                    self.clock = at;
                }
                self.admit();
                true
            }
            None => false,
        }
    }

    fn snapshot(&self, cycle_index: u32) -> ReadySnapshot {
        let procs = self.workload.processes();
        let entries = self
            .queue
            .iter()
            .map(|&i| ReadyEntry {
                pid: procs[i].pid.clone(),
                remaining: self.remaining[i],
                arrival: procs[i].arrival,
                dispatched_before: self.dispatched[i],
                submission_index: i,
            })
            .collect();
        ReadySnapshot::new(entries, self.clock, cycle_index)
    }

    fn checked_plan(&mut self, cycle: u32) -> Result<(Vec<usize>, Millis), EngineError> {
        let snapshot = self.snapshot(cycle);
        let plan = self.policy.plan(&snapshot);
        let invalid = |reason: String| EngineError::PolicyPlanInvalid {
            policy: self.policy.descriptor().to_string(),
            cycle,
            reason,
        };
        if plan.quantum < 1 {
            return Err(invalid("quantum must be at least 1".into()));
        }
        if plan.order.len() != snapshot.entries.len() {
            return Err(invalid(format!(
                "order has {} entries, ready queue has {}",
                plan.order.len(),
                snapshot.entries.len()
            )));
        }
        let mut taken = vec![false; snapshot.entries.len()];
        let mut order = Vec::with_capacity(plan.order.len());
        for pid in &plan.order {
            let pos = snapshot
                .entries
                .iter()
                .position(|e| &e.pid == pid)
                .ok_or_else(|| invalid(format!("{pid} is not in the ready queue")))?;
            if std::mem::replace(&mut taken[pos], true) {
                return Err(invalid(format!("{pid} planned twice")));
            }
            order.push(snapshot.entries[pos].submission_index);
        }
        self.trace.quantum_log.push(QuantumEntry {
            cycle,
            quantum: plan.quantum,
        });
        Ok((order, plan.quantum))
    }

    /// Runs `idx` for up to one quantum; returns true if it still has work.
    fn dispatch(&mut self, idx: usize, quantum: Millis, cycle: u32) -> bool {
        let run = quantum.min(self.remaining[idx]);
        let start = self.clock;
        self.clock += run;
        self.remaining[idx] -= run;
        self.dispatched[idx] = true;
        let left = self.remaining[idx] > 0;
        self.trace.slices.push(Slice {
            pid: self.workload.processes()[idx].pid.clone(),
            start,
            end: self.clock,
            cycle,
            quantum_in_effect: quantum,
            termination: if left {
                Termination::QuantumExpired
            } else {
                Termination::Completed
            },
        });
        left
    }

    fn run_fifo(mut self) -> Result<ExecutionTrace, EngineError> {
        self.admit();
        if self.queue.is_empty() {
            self.idle_until_next_arrival();
        }
        // The quantum is constant, so the policy is consulted once.
        let (_, quantum) = self.checked_plan(1)?;
        let mut cycle = 0;
        let mut pass_left = 0usize;
        loop {
            let Some(idx) = self.queue.pop_front() else {
                if self.idle_until_next_arrival() {
                    continue;
                }
                break;
            };
            if pass_left == 0 {
                cycle += 1;
                pass_left = self.queue.len() + 1;
            }
            pass_left -= 1;
            let left = self.dispatch(idx, quantum, cycle);
            self.admit();
            if left {
                self.queue.push_back(idx);
            }
        }
        Ok(self.trace)
    }

    fn run_cycles(mut self) -> Result<ExecutionTrace, EngineError> {
        let restart = self.policy.arrival_mode() == ArrivalMode::SliceBoundaryRestart;
        self.admit();
        let mut cycle = 0;
        loop {
            if self.queue.is_empty() {
                if self.idle_until_next_arrival() {
                    continue;
                }
                break;
            }
            cycle += 1;
            let (order, quantum) = self.checked_plan(cycle)?;
            let mut survivors = Vec::with_capacity(order.len());
            let mut cut = order.len();
            for (k, &idx) in order.iter().enumerate() {
                if self.dispatch(idx, quantum, cycle) {
                    survivors.push(idx);
                }
                if restart && self.has_arrived_now() {
                    cut = k + 1;
                    break;
                }
            }
            self.queue = survivors
                .into_iter()
                .chain(order[cut..].iter().copied())
                .collect();
            self.admit();
        }
        Ok(self.trace)
    }
}

/// Runs `workload` under `policy` to completion.
pub fn simulate(workload: &Workload, policy: &dyn Policy) -> Result<ExecutionTrace, EngineError> {
    let kernel = Kernel::new(workload, policy);
    match policy.queue_discipline() {
        QueueDiscipline::FifoTailRejoin => kernel.run_fifo(),
        QueueDiscipline::CyclePass => kernel.run_cycles(),
    }
}

/// Outcome of [`replay_check`]; empty `violations` means the trace is sound.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub violations: Vec<String>,
}

impl ReplayReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Re-validates every structural property of `trace` against `workload`:
/// conservation, arrival precedence, non-overlap, contiguity and work
/// conservation across idle gaps.
pub fn replay_check(trace: &ExecutionTrace, workload: &Workload) -> ReplayReport {
    let mut v = Vec::new();
    let procs = workload.processes();
    let mut executed = vec![0u64; procs.len()];
    let mut last_slice = vec![None; procs.len()];
    let mut completion = vec![None; procs.len()];

    for (n, s) in trace.slices.iter().enumerate() {
        let Some(idx) = workload.index_of(&s.pid) else {
            v.push(format!("slice {n}: unknown pid {}", s.pid));
            continue;
        };
        if s.end <= s.start {
            v.push(format!("slice {n} ({}): empty or reversed interval", s.pid));
            continue;
        }
        if s.duration() > s.quantum_in_effect {
            v.push(format!("slice {n} ({}): longer than its quantum", s.pid));
        }
        if s.start < procs[idx].arrival {
            v.push(format!(
                "slice {n} ({}): starts at {} before arrival {}",
                s.pid, s.start, procs[idx].arrival
            ));
        }
        executed[idx] += s.duration();
        last_slice[idx] = Some(n);
        completion[idx] = Some(s.end);
    }
    for (n, s) in trace.slices.iter().enumerate() {
        if let Some(idx) = workload.index_of(&s.pid) {
            let is_last = last_slice[idx] == Some(n);
            if is_last != (s.termination == Termination::Completed) {
                v.push(format!(
                    "slice {n} ({}): termination flag disagrees with position",
                    s.pid
                ));
            }
        }
    }
    for (idx, p) in procs.iter().enumerate() {
        if executed[idx] != p.burst {
            v.push(format!(
                "{}: executed {} ms of a {} ms burst",
                p.pid, executed[idx], p.burst
            ));
        }
    }

    let mut spans: Vec<(Millis, Millis)> = trace
        .slices
        .iter()
        .map(|s| (s.start, s.end))
        .chain(trace.idles.iter().map(|g| (g.start, g.end)))
        .collect();
    spans.sort_unstable();
    let mut cursor = 0;
    for (start, end) in &spans {
        if *start != cursor {
            v.push(format!(
                "timeline {} at {cursor}: next interval starts at {start}",
                if *start < cursor { "overlap" } else { "gap" }
            ));
        }
        cursor = cursor.max(*end);
    }
    if trace.slices.last().map(|s| s.end) != spans.last().map(|s| s.1) {
        v.push("timeline does not end with a slice".into());
    }

    for gap in &trace.idles {
        if gap.end <= gap.start {
            v.push(format!(
                "idle [{}, {}): empty or reversed",
                gap.start, gap.end
            ));
            continue;
        }
        for (idx, p) in procs.iter().enumerate() {
            if p.arrival < gap.end && completion[idx].is_none_or(|c| c > gap.start) {
                v.push(format!(
                    "idle [{}, {}) while {} had work",
                    gap.start, gap.end, p.pid
                ));
            }
        }
    }

    if trace.quantum_log.is_empty() {
        v.push("empty quantum log".into());
    }
    if trace.quantum_log.iter().any(|e| e.quantum == 0) {
        v.push("zero quantum in log".into());
    }
    ReplayReport { violations: v }
}
