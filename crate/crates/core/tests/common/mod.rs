#![allow(dead_code)]

pub mod criteria;
pub mod published;

use dynrr::metrics::{compute_metrics, RunMetrics};
use dynrr::policies::from_descriptor;
use dynrr::{simulate, ExecutionTrace, PolicyDescriptor, Workload};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn run(w: &Workload, descriptor: &str) -> (ExecutionTrace, RunMetrics) {
    let desc: PolicyDescriptor = descriptor.parse().expect("valid descriptor");
    let policy = from_descriptor(&desc);
    let trace = simulate(w, policy.as_ref()).expect("simulation succeeds");
    let metrics = compute_metrics(&trace, w).expect("consistent trace");
    (trace, metrics)
}

pub fn completions(w: &Workload, trace: &ExecutionTrace) -> Vec<u64> {
    w.processes()
        .iter()
        .map(|p| {
            trace
                .completion_of(&p.pid)
                .expect("every process completes")
        })
        .collect()
}

/// Arbitrary workloads with unsorted arrivals, idle stretches and duplicate bursts.
pub fn random_workload(seed: u64, max_n: usize, max_burst: u64) -> Workload {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_n);
    let spread = match rng.random_range(0..4) {
        0 => 0,
        1 => 20,
        2 => 200,
        _ => 2000,
    };
    let records: Vec<(String, i64, i64)> = (0..n)
        .map(|i| {
            let arrival = rng.random_range(0..=spread) as i64;
            let burst = rng.random_range(1..=max_burst) as i64;
            (format!("P{}", i + 1), arrival, burst)
        })
        .collect();
    Workload::validate(format!("random seed={seed}"), records).expect("valid random workload")
}
