//! ASCII Gantt charts.
//!
//! Each block of output has three lines: a banner with the quantum of every
//! cycle, the dispatched pids, and the end time of each cell right-aligned
//! under its closing bar. Idle gaps show as `--`. Blocks wrap to the
//! requested width.

use crate::model::{ExecutionTrace, Millis};

pub const MIN_WIDTH: usize = 40;

struct Cell {
    text: String,
    end: Millis,
    /// `None` for idle cells.
    cycle: Option<(u32, Millis)>,
}

impl Cell {
    fn width(&self) -> usize {
        self.text.len().max(self.end.to_string().len()) + 2
    }
}

fn cells(trace: &ExecutionTrace) -> Vec<Cell> {
    let mut out: Vec<(Millis, Cell)> = trace
        .slices
        .iter()
        .map(|s| {
            (
                s.start,
                Cell {
                    text: s.pid.clone(),
                    end: s.end,
                    cycle: Some((s.cycle, s.quantum_in_effect)),
                },
            )
        })
        .chain(trace.idles.iter().map(|g| {
            (
                g.start,
                Cell {
                    text: "--".into(),
                    end: g.end,
                    cycle: None,
                },
            )
        }))
        .collect();
    out.sort_by_key(|(start, _)| *start);
    out.into_iter().map(|(_, c)| c).collect()
}

fn banner_fill(inner: usize, quantum: Millis) -> String {
    let label = format!(" {quantum} ");
    if inner >= label.len() + 2 {
        let dashes = inner - label.len();
        let left = dashes / 2;
        let right = dashes - left;
        format!("<{}{label}{}>", "-".repeat(left - 1), "-".repeat(right - 1))
    } else {
        let q = quantum.to_string();
        if inner >= q.len() {
            format!("{q:^inner$}")
        } else {
            "-".repeat(inner)
        }
    }
}

fn render_block(cells: &[Cell], out: &mut String) {
    let mut banner = String::from("|");
    let mut row = String::from("|");
    let mut labels = String::from(" ");
    let mut i = 0;
    while i < cells.len() {
        let group = cells[i].cycle;
        let mut j = i;
        let mut inner = 0;
        while j < cells.len() && cells[j].cycle == group && (group.is_some() || j == i) {
            inner += cells[j].width() + usize::from(j > i);
            j += 1;
        }
        match group {
            Some((_, q)) => banner.push_str(&banner_fill(inner, q)),
            None => banner.push_str(&" ".repeat(inner)),
        }
        banner.push('|');
        i = j;
    }
    for c in cells {
        let w = c.width();
        row.push_str(&format!("{:^w$}|", c.text));
        labels.push_str(&format!("{:>w$}", c.end, w = w + 1));
    }
    for line in [banner, row, labels] {
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

/// Renders `trace` as text no wider than `width` columns (at least
/// [`MIN_WIDTH`]). A single cell wider than the limit still gets its own
/// block.
pub fn render_gantt(trace: &ExecutionTrace, width: usize) -> String {
    let width = width.max(MIN_WIDTH);
    let cells = cells(trace);
    let mut out = format!("{}\n", trace.algorithm);
    let mut start = 0;
    while start < cells.len() {
        let mut used = 1;
        let mut end = start;
        while end < cells.len() {
            let need = cells[end].width() + 1;
            if end > start && used + need > width {
                break;
            }
            used += need;
            end += 1;
        }
        if start > 0 {
            out.push('\n');
        }
        render_block(&cells[start..end], &mut out);
        start = end;
    }
    out
}

/// Every numeric end label in `chart`, in order.
pub fn end_labels(chart: &str) -> Vec<Millis> {
    chart
        .lines()
        .filter(|l| l.starts_with(' '))
        .flat_map(|l| l.split_whitespace().filter_map(|t| t.parse().ok()))
        .collect()
}
