//! Solver results as text or JSON, keyed by input vertex identifiers.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::GameFile;
use crate::game::{Player, Strategy};
use crate::lifting::{LiftEvent, Normalization, Solution};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsDocument {
    pub n: usize,
    pub m: usize,
    pub d: u32,
    pub eta: usize,
    /// Bit budget of the space lifted over.
    pub budget: usize,
    pub normalization: Normalization,
    pub lifts_total: u64,
    pub lifts_max: u64,
    /// `|S| + 1`, the most lifts any vertex may take.
    pub lift_bound: u64,
    pub lifts_per_vertex: BTreeMap<u64, u64>,
    pub evaluations: u64,
    pub max_counter_bits: usize,
    pub measure_bits: usize,
    /// Present only when timing was requested, so that untimed output is
    /// reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub even_wins: Vec<u64>,
    pub odd_wins: Vec<u64>,
    /// Even's choices on its winning region; empty when only Odd's
    /// strategy was computed.
    pub strategy: BTreeMap<u64, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub odd_strategy: Option<BTreeMap<u64, u64>>,
    pub stats: StatsDocument,
}

fn relabel(file: &GameFile, s: &Strategy) -> BTreeMap<u64, u64> {
    s.iter().map(|(&v, &w)| (file.id(v), file.id(w))).collect()
}

impl ResultDocument {
    pub fn new(file: &GameFile, solution: &Solution, wall_time: Option<Duration>) -> Self {
        let game = &file.game;
        let r = &solution.result;
        let st = &solution.stats;
        let stats = game.stats();
        let ids = |set: &std::collections::BTreeSet<usize>| {
            let mut v: Vec<u64> = set.iter().map(|&v| file.id(v)).collect();
            v.sort_unstable();
            v
        };
        let mut warnings = Vec::new();
        if st.normalization == Normalization::SkippedPriorityZero {
            warnings.push(
                "more than half the vertices are odd but priority 0 occurs; solved without dualizing".to_string(),
            );
        }
        ResultDocument {
            even_wins: ids(&r.even_wins),
            odd_wins: ids(&r.odd_wins),
            strategy: r.strategy(Player::Even).map(|s| relabel(file, s)).unwrap_or_default(),
            odd_strategy: r.strategy(Player::Odd).map(|s| relabel(file, s)),
            stats: StatsDocument {
                n: stats.n,
                m: stats.m,
                d: stats.d,
                eta: stats.eta,
                budget: st.budget,
                normalization: st.normalization,
                lifts_total: st.total_lifts(),
                lifts_max: st.max_lifts(),
                lift_bound: st.lift_bound(),
                lifts_per_vertex: st.lifts.iter().enumerate().map(|(v, &k)| (file.id(v), k)).collect(),
                evaluations: st.evaluations,
                max_counter_bits: st.max_bits_used,
                measure_bits: st.measure_bits,
                wall_time_ms: wall_time.map(|t| t.as_secs_f64() * 1e3),
                warnings,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn region_line(label: &str, ids: &[u64]) -> String {
    let mut line = label.to_string();
    line.push(':');
    for id in ids {
        write!(line, " {id}").unwrap();
    }
    line
}

/// The text rendering: winning regions, then one `strategy:` line per
/// strategy edge sorted by vertex id, then statistics when asked for.
pub fn emit_text(doc: &ResultDocument, with_stats: bool) -> String {
    let mut out = String::new();
    writeln!(out, "{}", region_line("even", &doc.even_wins)).unwrap();
    writeln!(out, "{}", region_line("odd", &doc.odd_wins)).unwrap();
    for (v, w) in &doc.strategy {
        writeln!(out, "strategy: {v}->{w}").unwrap();
    }
    for (v, w) in doc.odd_strategy.iter().flatten() {
        writeln!(out, "odd-strategy: {v}->{w}").unwrap();
    }
    if with_stats {
        let s = &doc.stats;
        let normalization = serde_json::to_value(s.normalization).expect("serializes");
        writeln!(out, "stats: n={} m={} d={} eta={} g={}", s.n, s.m, s.d, s.eta, s.budget).unwrap();
        writeln!(out, "stats: normalization={}", normalization.as_str().unwrap_or("?")).unwrap();
        writeln!(
            out,
            "stats: lifts total={} max={} bound={} evaluations={}",
            s.lifts_total, s.lifts_max, s.lift_bound, s.evaluations
        )
        .unwrap();
        writeln!(out, "stats: max counter bits={} measure bits={}", s.max_counter_bits, s.measure_bits).unwrap();
        let hist: Vec<String> = s.lifts_per_vertex.iter().map(|(v, k)| format!("{v}:{k}")).collect();
        writeln!(out, "stats: lifts per vertex {}", hist.join(" ")).unwrap();
        if let Some(t) = s.wall_time_ms {
            writeln!(out, "stats: wall time {t:.3} ms").unwrap();
        }
    }
    for w in &doc.stats.warnings {
        writeln!(out, "warning: {w}").unwrap();
    }
    out
}

/// One line per lift: `lift <id>: <old> -> <new>`.
pub fn format_trace(file: &GameFile, events: &[LiftEvent]) -> String {
    let mut out = String::new();
    for e in events {
        writeln!(out, "lift {}: {} -> {}", file.id(e.vertex), e.old, e.new).unwrap();
    }
    out
}
