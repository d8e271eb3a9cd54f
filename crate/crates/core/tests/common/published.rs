//! Published reference data, kept separate from the library's own registry
//! so the two can be cross-checked.

pub type Row = (
    &'static str,
    &'static str,
    &'static [u64],
    u64,
    &'static str,
    &'static str,
);

/// (case, algorithm, quanta, context switches, avg waiting, avg turnaround)
#[rustfmt::skip]
pub const ROWS: [Row; 42] = [
    ("I", "rr:q=25", &[25], 16, "192", "261.4"),
    ("I", "dqrrr", &[60, 36, 6], 7, "162.2", "231.6"),
    ("I", "irrvq", &[40, 15, 5, 30, 12], 14, "165", "234.4"),
    ("I", "sarr", &[60, 36, 6], 7, "119", "188.4"),
    ("I", "rp5:base=25", &[25, 50, 100], 11, "167", "236.4"),
    ("I", "mrr:floor=25", &[62, 25, 25], 8, "124.4", "193.8"),
    ("I", "dabrr", &[69, 27, 6], 7, "120.8", "190.2"),
    ("II", "rr:q=25", &[25], 15, "209.4", "274"),
    ("II", "dqrrr", &[55, 40, 10], 7, "144.8", "209.4"),
    ("II", "irrvq", &[35, 8, 12, 30, 20], 14, "142", "206.6"),
    ("II", "sarr", &[55, 40, 10], 7, "185.8", "250.4"),
    ("II", "rp5:base=25", &[25, 50, 100], 11, "224.8", "289.4"),
    ("II", "mrr:floor=25", &[70, 25, 25], 7, "106.8", "171.4"),
    ("II", "dabrr", &[64, 31, 10], 7, "105.6", "170.2"),
    ("III", "rr:q=25", &[25], 17, "245.4", "327"),
    ("III", "dqrrr", &[75, 37, 8], 7, "192.8", "274.4"),
    ("III", "irrvq", &[48, 12, 15, 30, 15], 14, "193.2", "274.8"),
    ("III", "sarr", &[120], 4, "177.6", "259.2"),
    ("III", "rp5:base=25", &[25, 50, 100], 11, "237.8", "319.4"),
    ("III", "mrr:floor=25", &[72, 45, 25], 8, "168.6", "250.2"),
    ("III", "dabrr", &[81, 31, 8], 7, "141.6", "223.2"),
    ("IV", "rr:q=25", &[25], 15, "144.4", "205.6"),
    ("IV", "dqrrr", &[27, 68, 28, 14], 7, "107.2", "168.4"),
    ("IV", "irrvq", &[27, 32, 23, 27, 28], 10, "98.2", "159.4"),
    ("IV", "sarr", &[27, 68, 28, 14], 7, "88", "149.2"),
    ("IV", "rp5:base=25", &[25, 50, 100], 8, "104.4", "165.6"),
    ("IV", "mrr:floor=25", &[27, 78, 28, 25], 7, "90", "151.2"),
    ("IV", "dabrr", &[27, 69, 27, 14], 7, "88.2", "149.4"),
    ("V", "rr:q=25", &[25], 13, "191", "250.8"),
    ("V", "dqrrr", &[95, 51, 16, 8], 7, "138.4", "198.2"),
    ("V", "irrvq", &[95, 26, 17, 17, 15], 10, "133.8", "193.6"),
    ("V", "sarr", &[95, 51, 16, 8], 7, "172.4", "232.2"),
    ("V", "rp5:base=25", &[25, 50, 100], 8, "197", "256.8"),
    ("V", "mrr:floor=25", &[95, 49, 25, 25], 7, "124.6", "184.4"),
    ("V", "dabrr", &[95, 51, 16, 8], 7, "125", "184.8"),
    ("VI", "rr:q=25", &[25], 13, "173.2", "232.8"),
    ("VI", "dqrrr", &[45, 62, 18, 10], 7, "113.6", "173.2"),
    ("VI", "irrvq", &[45, 38, 17, 15, 20], 10, "111.4", "171"),
    ("VI", "sarr", &[45, 54, 16, 20], 8, "148.6", "208.2"),
    ("VI", "rp5:base=25", &[25, 50, 100], 8, "149.2", "208.8"),
    ("VI", "mrr:floor=25", &[45, 52, 35, 25], 8, "116.4", "176"),
    ("VI", "dabrr", &[45, 63, 17, 10], 7, "97.8", "157.4"),
];

/// Rows whose published values contradict the median rule, with the values
/// the rule actually produces: (case, algorithm, quanta, cs, waiting, turnaround).
#[rustfmt::skip]
pub const ERRATA: [Row; 2] = [
    ("III", "sarr", &[75, 37, 8], 7, "217.8", "299.4"),
    ("VI", "sarr", &[45, 62, 18, 10], 7, "150.8", "210.4"),
];

pub fn is_erratum(case: &str, algo: &str) -> bool {
    ERRATA.iter().any(|r| r.0 == case && r.1 == algo)
}

/// (arrival, burst) per process, P1..P5.
#[rustfmt::skip]
pub const CASES: [(&str, [(u64, u64); 5]); 6] = [
    ("I", [(0, 40), (0, 55), (0, 60), (0, 90), (0, 102)]),
    ("II", [(0, 105), (0, 85), (0, 55), (0, 43), (0, 35)]),
    ("III", [(0, 105), (0, 60), (0, 120), (0, 48), (0, 75)]),
    ("IV", [(0, 27), (3, 32), (5, 55), (7, 82), (9, 110)]),
    ("V", [(0, 95), (2, 75), (4, 60), (8, 43), (16, 26)]),
    ("VI", [(0, 45), (5, 90), (8, 70), (15, 38), (20, 55)]),
];

/// Group aggregate rows: algorithm, per-case and total context switches,
/// waiting and turnaround.
pub type Aggregate = (&'static str, [u64; 4], [&'static str; 4], [&'static str; 4]);

#[rustfmt::skip]
pub const ZERO_GROUP: [Aggregate; 7] = [
    ("rr:q=25", [16, 15, 17, 48], ["192.00", "209.40", "245.40", "646.80"], ["261.40", "274.00", "327.00", "862.40"]),
    ("dqrrr", [7, 7, 7, 21], ["162.20", "144.80", "192.80", "499.80"], ["231.60", "209.40", "274.40", "715.40"]),
    ("irrvq", [14, 14, 14, 42], ["165.00", "142.00", "193.20", "500.20"], ["234.40", "206.60", "274.80", "715.80"]),
    ("sarr", [7, 7, 4, 18], ["119.00", "185.80", "177.60", "482.40"], ["188.40", "250.40", "259.20", "698.00"]),
    ("rp5:base=25", [11, 11, 11, 33], ["167.00", "224.80", "237.80", "629.60"], ["236.40", "289.40", "319.40", "845.20"]),
    ("mrr:floor=25", [8, 7, 8, 23], ["124.40", "106.80", "168.60", "399.80"], ["193.80", "171.40", "250.20", "615.40"]),
    ("dabrr", [7, 7, 7, 21], ["120.80", "105.60", "141.60", "368.00"], ["190.20", "170.20", "223.20", "583.60"]),
];

#[rustfmt::skip]
pub const NONZERO_GROUP: [Aggregate; 7] = [
    ("rr:q=25", [15, 13, 13, 41], ["144.40", "191.00", "173.20", "508.60"], ["205.60", "250.80", "232.80", "689.20"]),
    ("dqrrr", [7, 7, 7, 21], ["107.20", "138.40", "113.60", "359.20"], ["168.40", "198.20", "173.20", "539.80"]),
    ("irrvq", [10, 10, 10, 30], ["98.20", "133.80", "111.40", "343.40"], ["159.40", "193.60", "171.00", "524.00"]),
    ("sarr", [7, 7, 8, 22], ["88.00", "172.40", "148.60", "409.00"], ["149.20", "232.20", "208.20", "589.60"]),
    ("rp5:base=25", [8, 8, 8, 24], ["104.40", "197.00", "149.20", "450.60"], ["165.60", "256.80", "208.80", "631.20"]),
    ("mrr:floor=25", [7, 7, 8, 22], ["90.00", "124.60", "116.40", "331.00"], ["151.20", "184.40", "176.00", "511.60"]),
    ("dabrr", [7, 7, 7, 21], ["88.20", "125.00", "97.80", "311.00"], ["149.40", "184.80", "157.40", "491.60"]),
];

/// (algorithm, waiting grand total, waiting gain %, turnaround grand total, turnaround gain %)
#[rustfmt::skip]
pub const GRAND: [(&str, &str, &str, &str, &str); 7] = [
    ("rr:q=25", "1155.40", "0.00", "1551.60", "0.00"),
    ("dqrrr", "859.00", "25.65", "1255.20", "19.10"),
    ("irrvq", "843.60", "26.99", "1239.80", "20.10"),
    ("sarr", "891.40", "22.85", "1287.60", "20.10"),
    ("rp5:base=25", "1080.20", "6.51", "1476.40", "4.85"),
    ("mrr:floor=25", "730.80", "36.75", "1127.00", "27.37"),
    ("dabrr", "679.00", "41.23", "1075.20", "30.70"),
];
