//! The seven round-robin variants.
//!
//! Every dynamic quantum is floored to whole milliseconds and clamped to at
//! least 1. Sorting is always by (remaining, arrival, submission index) so
//! that equal bursts still produce a total order.

use crate::engine::{ArrivalMode, CyclePlan, Policy, QueueDiscipline, ReadyEntry, ReadySnapshot};
use crate::model::{Millis, PolicyDescriptor, PolicyName};

/// ⌊Σ remaining / n⌋, at least 1.
pub fn mean_quantum(remaining: &[Millis]) -> Millis {
    assert!(!remaining.is_empty(), "mean of an empty ready queue");
    let total: Millis = remaining.iter().sum();
    (total / remaining.len() as Millis).max(1)
}

/// Median of the remaining bursts; an even count floors the mean of the two
/// middle values.
pub fn median_quantum(remaining: &[Millis]) -> Millis {
    assert!(!remaining.is_empty(), "median of an empty ready queue");
    let mut sorted = remaining.to_vec();
    sorted.sort_unstable();
    let mid = sorted.len() / 2;
    let m = if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2
    };
    m.max(1)
}

/// Spread of the remaining bursts (max − min), never below `floor`. A lone
/// process gets its own remaining burst, again never below `floor`.
pub fn range_quantum(remaining: &[Millis], floor: Millis) -> Millis {
    assert!(!remaining.is_empty(), "range of an empty ready queue");
    let floor = floor.max(1);
    if remaining.len() == 1 {
        return remaining[0].max(floor);
    }
    let max = remaining.iter().max().copied().unwrap_or(0);
    let min = remaining.iter().min().copied().unwrap_or(0);
    (max - min).max(floor)
}

fn ascending(entries: &[ReadyEntry]) -> Vec<&ReadyEntry> {
    let mut sorted: Vec<&ReadyEntry> = entries.iter().collect();
    sorted.sort_by_key(|e| (e.remaining, e.arrival, e.submission_index));
    sorted
}

fn ascending_order(entries: &[ReadyEntry]) -> Vec<String> {
    ascending(entries)
        .into_iter()
        .map(|e| e.pid.clone())
        .collect()
}

/// Lowest, highest, second lowest, second highest, ... ending in the middle.
pub fn alternating_min_max_order(entries: &[ReadyEntry]) -> Vec<String> {
    let sorted = ascending(entries);
    let mut out = Vec::with_capacity(sorted.len());
    let (mut lo, mut hi) = (0usize, sorted.len());
    while lo < hi {
        out.push(sorted[lo].pid.clone());
        lo += 1;
        if lo < hi {
            hi -= 1;
            out.push(sorted[hi].pid.clone());
        }
    }
    out
}

/// Static-quantum round robin.
#[derive(Debug, Clone)]
pub struct RoundRobin {
    quantum: Millis,
}

impl Policy for RoundRobin {
    fn descriptor(&self) -> PolicyDescriptor {
        PolicyDescriptor::new(PolicyName::RoundRobin, &[("q", self.quantum)])
            .expect("quantum is positive")
    }
    fn arrival_mode(&self) -> ArrivalMode {
        ArrivalMode::SliceBoundaryRestart
    }
    fn queue_discipline(&self) -> QueueDiscipline {
        QueueDiscipline::FifoTailRejoin
    }
    fn plan(&self, snapshot: &ReadySnapshot) -> CyclePlan {
        CyclePlan {
            order: snapshot.queue_order(),
            quantum: self.quantum,
        }
    }
}

/// Average-burst round robin: ascending order, quantum = mean remaining,
/// replanned as soon as anything new arrives.
#[derive(Debug, Clone, Default)]
pub struct Dabrr;

impl Policy for Dabrr {
    fn descriptor(&self) -> PolicyDescriptor {
        PolicyDescriptor::paper_default(PolicyName::Dabrr)
    }
    fn arrival_mode(&self) -> ArrivalMode {
        ArrivalMode::SliceBoundaryRestart
    }
    fn queue_discipline(&self) -> QueueDiscipline {
        QueueDiscipline::CyclePass
    }
    fn plan(&self, snapshot: &ReadySnapshot) -> CyclePlan {
        CyclePlan {
            order: ascending_order(&snapshot.entries),
            quantum: mean_quantum(&snapshot.remaining()),
        }
    }
}

/// Self-adjusting round robin: queue order, quantum = median remaining.
#[derive(Debug, Clone, Default)]
pub struct Sarr;

impl Policy for Sarr {
    fn descriptor(&self) -> PolicyDescriptor {
        PolicyDescriptor::paper_default(PolicyName::Sarr)
    }
    fn arrival_mode(&self) -> ArrivalMode {
        ArrivalMode::CycleBoundary
    }
    fn queue_discipline(&self) -> QueueDiscipline {
        QueueDiscipline::CyclePass
    }
    fn plan(&self, snapshot: &ReadySnapshot) -> CyclePlan {
        CyclePlan {
            order: snapshot.queue_order(),
            quantum: median_quantum(&snapshot.remaining()),
        }
    }
}

/// Median quantum with a min/max alternating arrangement whenever new
/// processes joined; otherwise the requeue order is kept.
#[derive(Debug, Clone, Default)]
pub struct Dqrrr;

impl Policy for Dqrrr {
    fn descriptor(&self) -> PolicyDescriptor {
        PolicyDescriptor::paper_default(PolicyName::Dqrrr)
    }
    fn arrival_mode(&self) -> ArrivalMode {
        ArrivalMode::CycleBoundary
    }
    fn queue_discipline(&self) -> QueueDiscipline {
        QueueDiscipline::CyclePass
    }
    fn plan(&self, snapshot: &ReadySnapshot) -> CyclePlan {
        let order = if snapshot.contains_new_arrivals {
            alternating_min_max_order(&snapshot.entries)
        } else {
            snapshot.queue_order()
        };
        CyclePlan {
            order,
            quantum: median_quantum(&snapshot.remaining()),
        }
    }
}

/// Shortest-remaining quantum: ascending order, quantum = smallest remaining
/// burst, so at least one process finishes every cycle.
#[derive(Debug, Clone, Default)]
pub struct Irrvq;

impl Policy for Irrvq {
    fn descriptor(&self) -> PolicyDescriptor {
        PolicyDescriptor::paper_default(PolicyName::Irrvq)
    }
    fn arrival_mode(&self) -> ArrivalMode {
        ArrivalMode::CycleBoundary
    }
    fn queue_discipline(&self) -> QueueDiscipline {
        QueueDiscipline::CyclePass
    }
    fn plan(&self, snapshot: &ReadySnapshot) -> CyclePlan {
        let quantum = snapshot
            .entries
            .iter()
            .map(|e| e.remaining)
            .min()
            .unwrap_or(1)
            .max(1);
        CyclePlan {
            order: ascending_order(&snapshot.entries),
            quantum,
        }
    }
}

/// Doubling quantum: `base`, `2·base`, `4·base`, ... in queue order.
#[derive(Debug, Clone)]
pub struct Rp5 {
    base: Millis,
}

impl Policy for Rp5 {
    fn descriptor(&self) -> PolicyDescriptor {
        PolicyDescriptor::new(PolicyName::Rp5, &[("base", self.base)]).expect("base is positive")
    }
    fn arrival_mode(&self) -> ArrivalMode {
        ArrivalMode::CycleBoundary
    }
    fn queue_discipline(&self) -> QueueDiscipline {
        QueueDiscipline::CyclePass
    }
    fn plan(&self, snapshot: &ReadySnapshot) -> CyclePlan {
        let shift = snapshot.cycle_index.saturating_sub(1).min(63);
        let quantum = self.base.checked_mul(1 << shift).unwrap_or(Millis::MAX);
        CyclePlan {
            order: snapshot.queue_order(),
            quantum,
        }
    }
}

/// Range quantum: ascending order, quantum = max − min remaining with a floor.
#[derive(Debug, Clone)]
pub struct Mrr {
    floor: Millis,
}

impl Policy for Mrr {
    fn descriptor(&self) -> PolicyDescriptor {
        PolicyDescriptor::new(PolicyName::Mrr, &[("floor", self.floor)]).expect("floor is positive")
    }
    fn arrival_mode(&self) -> ArrivalMode {
        ArrivalMode::CycleBoundary
    }
    fn queue_discipline(&self) -> QueueDiscipline {
        QueueDiscipline::CyclePass
    }
    fn plan(&self, snapshot: &ReadySnapshot) -> CyclePlan {
        CyclePlan {
            order: ascending_order(&snapshot.entries),
            quantum: range_quantum(&snapshot.remaining(), self.floor),
        }
    }
}

/// # Panics
/// If `q` is zero.
pub fn make_round_robin(q: Millis) -> RoundRobin {
    assert!(q >= 1, "round robin quantum must be positive");
    RoundRobin { quantum: q }
}

pub fn make_dabrr() -> Dabrr {
    Dabrr
}

pub fn make_sarr() -> Sarr {
    Sarr
}

pub fn make_dqrrr() -> Dqrrr {
    Dqrrr
}

pub fn make_irrvq() -> Irrvq {
    Irrvq
}

/// # Panics
/// If `base` is zero.
pub fn make_rp5(base: Millis) -> Rp5 {
    assert!(base >= 1, "RP-5 base quantum must be positive");
    Rp5 { base }
}

/// # Panics
/// If `floor` is zero.
pub fn make_mrr(floor: Millis) -> Mrr {
    assert!(floor >= 1, "MRR floor must be positive");
    Mrr { floor }
}

/// Builds the policy a descriptor names.
pub fn from_descriptor(desc: &PolicyDescriptor) -> Box<dyn Policy> {
    let knob = |k: &str| desc.param(k).unwrap_or(25).max(1);
    match desc.name {
        PolicyName::RoundRobin => Box::new(make_round_robin(knob("q"))),
        PolicyName::Dqrrr => Box::new(make_dqrrr()),
        PolicyName::Irrvq => Box::new(make_irrvq()),
        PolicyName::Sarr => Box::new(make_sarr()),
        PolicyName::Rp5 => Box::new(make_rp5(knob("base"))),
        PolicyName::Mrr => Box::new(make_mrr(knob("floor"))),
        PolicyName::Dabrr => Box::new(make_dabrr()),
    }
}

/// All seven policies with the published parameters, in table column order.
pub fn paper_policies() -> Vec<Box<dyn Policy>> {
    PolicyName::ALL
        .into_iter()
        .map(|n| from_descriptor(&PolicyDescriptor::paper_default(n)))
        .collect()
}
