//! Published test cases, their expected results, and a seeded generator.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::metrics::{parse_decimal, Rational};
use crate::model::{Millis, PolicyDescriptor, PolicyName, Workload};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CaseId {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl CaseId {
    pub const ALL: [CaseId; 6] = [
        CaseId::I,
        CaseId::II,
        CaseId::III,
        CaseId::IV,
        CaseId::V,
        CaseId::VI,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::I => "I",
            CaseId::II => "II",
            CaseId::III => "III",
            CaseId::IV => "IV",
            CaseId::V => "V",
            CaseId::VI => "VI",
        }
    }

    pub fn zero_arrival(self) -> bool {
        matches!(self, CaseId::I | CaseId::II | CaseId::III)
    }

    /// `zero` for I–III, `nonzero` for IV–VI.
    pub fn group(self) -> ArrivalGroup {
        if self.zero_arrival() {
            ArrivalGroup::Zero
        } else {
            ArrivalGroup::NonZero
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown case {0:?} (expected I..VI)")]
pub struct UnknownCase(pub String);

impl FromStr for CaseId {
    type Err = UnknownCase;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownCase(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrivalGroup {
    Zero,
    NonZero,
}

impl ArrivalGroup {
    pub fn as_str(self) -> &'static str {
        match self {
            ArrivalGroup::Zero => "zero",
            ArrivalGroup::NonZero => "nonzero",
        }
    }

    pub fn cases(self) -> [CaseId; 3] {
        match self {
            ArrivalGroup::Zero => [CaseId::I, CaseId::II, CaseId::III],
            ArrivalGroup::NonZero => [CaseId::IV, CaseId::V, CaseId::VI],
        }
    }
}

/// (arrival, burst) for P1..P5.
type CaseRows = [(Millis, Millis); 5];

#[rustfmt::skip]
const CASE_DATA: [(CaseId, &str, CaseRows); 6] = [
    (CaseId::I, "zero arrival, ascending bursts", [(0, 40), (0, 55), (0, 60), (0, 90), (0, 102)]),
    (CaseId::II, "zero arrival, descending bursts", [(0, 105), (0, 85), (0, 55), (0, 43), (0, 35)]),
    (CaseId::III, "zero arrival, random bursts", [(0, 105), (0, 60), (0, 120), (0, 48), (0, 75)]),
    (CaseId::IV, "staggered arrival, ascending bursts", [(0, 27), (3, 32), (5, 55), (7, 82), (9, 110)]),
    (CaseId::V, "staggered arrival, descending bursts", [(0, 95), (2, 75), (4, 60), (8, 43), (16, 26)]),
    (CaseId::VI, "staggered arrival, random bursts", [(0, 45), (5, 90), (8, 70), (15, 38), (20, 55)]),
];

fn five(label: String, rows: &[(Millis, Millis)]) -> Workload {
    Workload::validate(
        label,
        rows.iter()
            .enumerate()
            .map(|(i, (a, b))| (format!("P{}", i + 1), *a as i64, *b as i64)),
    )
    .expect("fixtures are valid")
}

pub fn paper_case(id: CaseId) -> Workload {
    let (_, desc, rows) = CASE_DATA
        .iter()
        .find(|(c, _, _)| *c == id)
        .expect("every case has data");
    five(format!("case {id}: {desc}"), rows)
}

/// Five zero-arrival processes used to walk through the DABRR cycles.
pub fn illustration_workload() -> Workload {
    five(
        "ILL: DABRR walkthrough".into(),
        &[(0, 15), (0, 32), (0, 102), (0, 48), (0, 29)],
    )
}

/// Resolves a fixture name: `I`..`VI` or `ILL`.
pub fn fixture(name: &str) -> Option<Workload> {
    if name.trim().eq_ignore_ascii_case("ILL") {
        return Some(illustration_workload());
    }
    name.parse::<CaseId>().ok().map(paper_case)
}

/// Values the rule-faithful simulation produces for a cell the published
/// tables got wrong.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedValues {
    pub quanta: Vec<Millis>,
    pub context_switches: u64,
    #[serde(serialize_with = "crate::metrics::ser_one_decimal")]
    pub avg_waiting: Rational,
    #[serde(serialize_with = "crate::metrics::ser_one_decimal")]
    pub avg_turnaround: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub id: &'static str,
    pub explanation: &'static str,
    pub derived: DerivedValues,
}

/// One published result row (one algorithm on one case).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedRow {
    pub case: CaseId,
    pub algorithm: PolicyDescriptor,
    pub quanta: Vec<Millis>,
    pub context_switches: u64,
    #[serde(serialize_with = "crate::metrics::ser_one_decimal")]
    pub avg_waiting: Rational,
    #[serde(serialize_with = "crate::metrics::ser_one_decimal")]
    pub avg_turnaround: Rational,
    pub erratum: Option<Erratum>,
}

type RowData = (&'static [Millis], u64, &'static str, &'static str);

/// Per case, columns in [`PolicyName::ALL`] order.
#[rustfmt::skip]
const PUBLISHED: [(CaseId, [RowData; 7]); 6] = [
    (CaseId::I, [
        (&[25], 16, "192", "261.4"),
        (&[60, 36, 6], 7, "162.2", "231.6"),
        (&[40, 15, 5, 30, 12], 14, "165", "234.4"),
        (&[60, 36, 6], 7, "119", "188.4"),
        (&[25, 50, 100], 11, "167", "236.4"),
        (&[62, 25, 25], 8, "124.4", "193.8"),
        (&[69, 27, 6], 7, "120.8", "190.2"),
    ]),
    (CaseId::II, [
        (&[25], 15, "209.4", "274"),
        (&[55, 40, 10], 7, "144.8", "209.4"),
        (&[35, 8, 12, 30, 20], 14, "142", "206.6"),
        (&[55, 40, 10], 7, "185.8", "250.4"),
        (&[25, 50, 100], 11, "224.8", "289.4"),
        (&[70, 25, 25], 7, "106.8", "171.4"),
        (&[64, 31, 10], 7, "105.6", "170.2"),
    ]),
    (CaseId::III, [
        (&[25], 17, "245.4", "327"),
        (&[75, 37, 8], 7, "192.8", "274.4"),
        (&[48, 12, 15, 30, 15], 14, "193.2", "274.8"),
        (&[120], 4, "177.6", "259.2"),
        (&[25, 50, 100], 11, "237.8", "319.4"),
        (&[72, 45, 25], 8, "168.6", "250.2"),
        (&[81, 31, 8], 7, "141.6", "223.2"),
    ]),
    (CaseId::IV, [
        (&[25], 15, "144.4", "205.6"),
        (&[27, 68, 28, 14], 7, "107.2", "168.4"),
        (&[27, 32, 23, 27, 28], 10, "98.2", "159.4"),
        (&[27, 68, 28, 14], 7, "88", "149.2"),
        (&[25, 50, 100], 8, "104.4", "165.6"),
        (&[27, 78, 28, 25], 7, "90", "151.2"),
        (&[27, 69, 27, 14], 7, "88.2", "149.4"),
    ]),
    (CaseId::V, [
        (&[25], 13, "191", "250.8"),
        (&[95, 51, 16, 8], 7, "138.4", "198.2"),
        (&[95, 26, 17, 17, 15], 10, "133.8", "193.6"),
        (&[95, 51, 16, 8], 7, "172.4", "232.2"),
        (&[25, 50, 100], 8, "197", "256.8"),
        (&[95, 49, 25, 25], 7, "124.6", "184.4"),
        (&[95, 51, 16, 8], 7, "125", "184.8"),
    ]),
    (CaseId::VI, [
        (&[25], 13, "173.2", "232.8"),
        (&[45, 62, 18, 10], 7, "113.6", "173.2"),
        (&[45, 38, 17, 15, 20], 10, "111.4", "171"),
        (&[45, 54, 16, 20], 8, "148.6", "208.2"),
        (&[25, 50, 100], 8, "149.2", "208.8"),
        (&[45, 52, 35, 25], 8, "116.4", "176"),
        (&[45, 63, 17, 10], 7, "97.8", "157.4"),
    ]),
];

fn dec(s: &str) -> Rational {
    parse_decimal(s).expect("registry decimals are well-formed")
}

fn erratum_for(case: CaseId, name: PolicyName) -> Option<Erratum> {
    match (case, name) {
        (CaseId::III, PolicyName::Sarr) => Some(Erratum {
            id: "E1",
            explanation: "published SARR row uses a single quantum of 120 and 4 switches; the \
                          median of the five bursts is 75, which yields quanta 75,37,8",
            derived: DerivedValues {
                quanta: vec![75, 37, 8],
                context_switches: 7,
                avg_waiting: dec("217.8"),
                avg_turnaround: dec("299.4"),
            },
        }),
        (CaseId::VI, PolicyName::Sarr) => Some(Erratum {
            id: "E2",
            explanation: "published SARR row uses 54 as the second quantum; the median of the \
                          remaining bursts 90,70,38,55 is 62, which yields quanta 45,62,18,10",
            derived: DerivedValues {
                quanta: vec![45, 62, 18, 10],
                context_switches: 7,
                avg_waiting: dec("150.8"),
                avg_turnaround: dec("210.4"),
            },
        }),
        _ => None,
    }
}

/// The published row for `algorithm` on `case`. The parameters of
/// `algorithm` are ignored; rows exist only for the published settings.
pub fn expected_row(case: CaseId, algorithm: PolicyName) -> ExpectedRow {
    let (_, rows) = PUBLISHED
        .iter()
        .find(|(c, _)| *c == case)
        .expect("every case is published");
    let col = PolicyName::ALL
        .iter()
        .position(|n| *n == algorithm)
        .expect("known algorithm");
    let (quanta, cs, w, t) = rows[col];
    ExpectedRow {
        case,
        algorithm: PolicyDescriptor::paper_default(algorithm),
        quanta: quanta.to_vec(),
        context_switches: cs,
        avg_waiting: dec(w),
        avg_turnaround: dec(t),
        erratum: erratum_for(case, algorithm),
    }
}

pub fn expected_rows() -> Vec<ExpectedRow> {
    CaseId::ALL
        .into_iter()
        .flat_map(|c| PolicyName::ALL.into_iter().map(move |n| expected_row(c, n)))
        .collect()
}

/// A published per-group aggregate row: three per-case columns plus total
/// for switches, waiting and turnaround.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedAggregate {
    pub group: ArrivalGroup,
    pub algorithm: PolicyName,
    pub context_switches: [u64; 3],
    pub context_switch_total: u64,
    pub waiting: [Rational; 3],
    pub waiting_total: Rational,
    pub turnaround: [Rational; 3],
    pub turnaround_total: Rational,
}

type AggData = ([u64; 4], [&'static str; 4], [&'static str; 4]);

#[rustfmt::skip]
const AGGREGATES: [(ArrivalGroup, [AggData; 7]); 2] = [
    (ArrivalGroup::Zero, [
        ([16, 15, 17, 48], ["192.00", "209.40", "245.40", "646.80"], ["261.40", "274.00", "327.00", "862.40"]),
        ([7, 7, 7, 21], ["162.20", "144.80", "192.80", "499.80"], ["231.60", "209.40", "274.40", "715.40"]),
        ([14, 14, 14, 42], ["165.00", "142.00", "193.20", "500.20"], ["234.40", "206.60", "274.80", "715.80"]),
        ([7, 7, 4, 18], ["119.00", "185.80", "177.60", "482.40"], ["188.40", "250.40", "259.20", "698.00"]),
        ([11, 11, 11, 33], ["167.00", "224.80", "237.80", "629.60"], ["236.40", "289.40", "319.40", "845.20"]),
        ([8, 7, 8, 23], ["124.40", "106.80", "168.60", "399.80"], ["193.80", "171.40", "250.20", "615.40"]),
        ([7, 7, 7, 21], ["120.80", "105.60", "141.60", "368.00"], ["190.20", "170.20", "223.20", "583.60"]),
    ]),
    (ArrivalGroup::NonZero, [
        ([15, 13, 13, 41], ["144.40", "191.00", "173.20", "508.60"], ["205.60", "250.80", "232.80", "689.20"]),
        ([7, 7, 7, 21], ["107.20", "138.40", "113.60", "359.20"], ["168.40", "198.20", "173.20", "539.80"]),
        ([10, 10, 10, 30], ["98.20", "133.80", "111.40", "343.40"], ["159.40", "193.60", "171.00", "524.00"]),
        ([7, 7, 8, 22], ["88.00", "172.40", "148.60", "409.00"], ["149.20", "232.20", "208.20", "589.60"]),
        ([8, 8, 8, 24], ["104.40", "197.00", "149.20", "450.60"], ["165.60", "256.80", "208.80", "631.20"]),
        ([7, 7, 8, 22], ["90.00", "124.60", "116.40", "331.00"], ["151.20", "184.40", "176.00", "511.60"]),
        ([7, 7, 7, 21], ["88.20", "125.00", "97.80", "311.00"], ["149.40", "184.80", "157.40", "491.60"]),
    ]),
];

pub fn expected_aggregate(group: ArrivalGroup, algorithm: PolicyName) -> ExpectedAggregate {
    let (_, rows) = AGGREGATES
        .iter()
        .find(|(g, _)| *g == group)
        .expect("both groups published");
    let col = PolicyName::ALL
        .iter()
        .position(|n| *n == algorithm)
        .expect("known algorithm");
    let (cs, w, t) = rows[col];
    ExpectedAggregate {
        group,
        algorithm,
        context_switches: [cs[0], cs[1], cs[2]],
        context_switch_total: cs[3],
        waiting: [dec(w[0]), dec(w[1]), dec(w[2])],
        waiting_total: dec(w[3]),
        turnaround: [dec(t[0]), dec(t[1]), dec(t[2])],
        turnaround_total: dec(t[3]),
    }
}

/// Grand totals over all six cases and the reduction versus RR.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedGrand {
    pub algorithm: PolicyName,
    pub waiting_total: Rational,
    pub waiting_gain_pct: Rational,
    pub turnaround_total: Rational,
    pub turnaround_gain_pct: Rational,
}

#[rustfmt::skip]
const GRAND: [(&str, &str, &str, &str); 7] = [
    ("1,155.40", "0.00%", "1,551.60", "0.00%"),
    ("859.00", "25.65%", "1,255.20", "19.10%"),
    ("843.60", "26.99%", "1,239.80", "20.10%"),
    ("891.40", "22.85%", "1,287.60", "20.10%"),
    ("1,080.20", "6.51%", "1,476.40", "4.85%"),
    ("730.80", "36.75%", "1,127.00", "27.37%"),
    ("679.00", "41.23%", "1,075.20", "30.70%"),
];

pub fn expected_grand(algorithm: PolicyName) -> ExpectedGrand {
    let col = PolicyName::ALL
        .iter()
        .position(|n| *n == algorithm)
        .expect("known algorithm");
    let (w, wg, t, tg) = GRAND[col];
    ExpectedGrand {
        algorithm,
        waiting_total: dec(w),
        waiting_gain_pct: dec(wg),
        turnaround_total: dec(t),
        turnaround_gain_pct: dec(tg),
    }
}

/// Aggregate cells that inherit a per-case erratum.
pub fn aggregate_inherits_erratum(algorithm: PolicyName) -> Option<&'static str> {
    (algorithm == PolicyName::Sarr).then_some("E1/E2")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BurstOrder {
    Ascending,
    Descending,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrivalPattern {
    AllZero,
    /// Cumulative gaps drawn uniformly from `[0, max_gap]`.
    Staggered {
        max_gap: Millis,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSpec {
    pub n: usize,
    pub burst_min: Millis,
    pub burst_max: Millis,
    pub order: BurstOrder,
    pub arrival: ArrivalPattern,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("process count must be at least 1")]
    NoProcesses,
    #[error("burst range [{0}, {1}] must be positive and non-empty")]
    BadBurstRange(Millis, Millis),
}

/// Deterministic in `spec.seed`; pids are `P1`..`Pn` in submission order.
pub fn generate_workload(spec: &GeneratorSpec) -> Result<Workload, GeneratorError> {
    if spec.n == 0 {
        return Err(GeneratorError::NoProcesses);
    }
    if spec.burst_min == 0 || spec.burst_min > spec.burst_max {
        return Err(GeneratorError::BadBurstRange(
            spec.burst_min,
            spec.burst_max,
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut bursts: Vec<Millis> = (0..spec.n)
        .map(|_| rng.random_range(spec.burst_min..=spec.burst_max))
        .collect();
    match spec.order {
        BurstOrder::Ascending => bursts.sort_unstable(),
        BurstOrder::Descending => bursts.sort_unstable_by(|a, b| b.cmp(a)),
        BurstOrder::Random => {}
    }
    let mut clock = 0;
    let arrivals: Vec<Millis> = (0..spec.n)
        .map(|i| match spec.arrival {
            ArrivalPattern::AllZero => 0,
            ArrivalPattern::Staggered { max_gap } => {
                if i > 0 {
                    clock += rng.random_range(0..=max_gap);
                }
                clock
            }
        })
        .collect();
    let label = format!(
        "generated n={} bursts={}..{} seed={}",
        spec.n, spec.burst_min, spec.burst_max, spec.seed
    );
    Ok(Workload::validate(
        label,
        bursts
            .into_iter()
            .zip(arrivals)
            .enumerate()
            .map(|(i, (b, a))| (format!("P{}", i + 1), a as i64, b as i64)),
    )
    .expect("generated records satisfy the workload invariants"))
}
