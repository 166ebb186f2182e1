//! Benchmark records, the CSV schema, and the shared-partition comparison.
//!
//! CSV columns, in order:
//! `instance,spec,algorithm,n,arcs,hda_ms,classify_ms,schedule_ms,big_loops,
//! node_scans,arc_relaxations,improvements,origins,snoa,ooa,onoa,lambda,
//! regular_way,wrong_way`. Ratios are derived from the raw counters when a
//! record is built; floats use the shortest round-trip representation.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::algebra::MinPlus;
use crate::error::{GenError, SolveError};
use crate::generators::{gen_grid, GridSpec};
use crate::graph::{Cost, Graph};
use crate::partition::hda;
use crate::pipeline::{optimise, Algorithm, Counters, PhaseTimes, PipelineRun};
use crate::state::NoProbe;

pub const CSV_COLUMNS: [&str; 19] = [
    "instance",
    "spec",
    "algorithm",
    "n",
    "arcs",
    "hda_ms",
    "classify_ms",
    "schedule_ms",
    "big_loops",
    "node_scans",
    "arc_relaxations",
    "improvements",
    "origins",
    "snoa",
    "ooa",
    "onoa",
    "lambda",
    "regular_way",
    "wrong_way",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance: String,
    pub spec: String,
    pub algorithm: String,
    pub n: u64,
    pub arcs: u64,
    pub hda_ms: f64,
    pub classify_ms: f64,
    pub schedule_ms: f64,
    pub big_loops: u64,
    pub node_scans: u64,
    pub arc_relaxations: u64,
    pub improvements: u64,
    pub origins: u64,
    pub snoa: f64,
    pub ooa: f64,
    pub onoa: f64,
    pub lambda: f64,
    pub regular_way: u64,
    pub wrong_way: u64,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn ratio(count: u64, arcs: u64) -> f64 {
    if arcs == 0 {
        0.0
    } else {
        count as f64 / arcs as f64
    }
}

impl BenchRecord {
    pub fn new(
        instance: &str,
        spec: &str,
        algorithm: Algorithm,
        g: &Graph,
        counters: &Counters,
        times: &PhaseTimes,
    ) -> Self {
        let arcs = g.arc_count() as u64;
        BenchRecord {
            instance: instance.to_string(),
            spec: spec.to_string(),
            algorithm: algorithm.name().to_string(),
            n: g.node_count() as u64,
            arcs,
            hda_ms: ms(times.hda),
            classify_ms: ms(times.classify),
            schedule_ms: ms(times.schedule),
            big_loops: counters.big_loops,
            node_scans: counters.node_scans,
            arc_relaxations: counters.arc_relaxations,
            improvements: counters.improvements,
            origins: counters.origins,
            snoa: ratio(counters.node_scans, arcs),
            ooa: ratio(counters.origins, arcs),
            onoa: ratio(counters.improvements, arcs),
            lambda: ratio(counters.node_scans, arcs),
            regular_way: counters.regular_way,
            wrong_way: counters.wrong_way,
        }
    }

    pub fn from_run<C>(instance: &str, spec: &str, g: &Graph, run: &PipelineRun<C>) -> Self {
        Self::new(instance, spec, run.algorithm, g, &run.counters, &run.times)
    }

    /// Direction split sums to the improvements and every ratio equals its
    /// counter quotient.
    pub fn bookkeeping_ok(&self) -> bool {
        self.regular_way + self.wrong_way == self.improvements
            && self.snoa == ratio(self.node_scans, self.arcs)
            && self.lambda == ratio(self.node_scans, self.arcs)
            && self.ooa == ratio(self.origins, self.arcs)
            && self.onoa == ratio(self.improvements, self.arcs)
    }

    /// Key-value rendering for terminals.
    pub fn to_text(&self) -> String {
        format!(
            "algorithm={} n={} arcs={} hda_ms={:.3} classify_ms={:.3} schedule_ms={:.3} \
             BL={} node_scans={} improvements={} origins={} snoa={:.4} ooa={:.4} onoa={:.4} \
             regular_way={} wrong_way={}",
            self.algorithm,
            self.n,
            self.arcs,
            self.hda_ms,
            self.classify_ms,
            self.schedule_ms,
            self.big_loops,
            self.node_scans,
            self.improvements,
            self.origins,
            self.snoa,
            self.ooa,
            self.onoa,
            self.regular_way,
            self.wrong_way
        )
    }
}

pub fn to_csv(records: &[BenchRecord]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if records.is_empty() {
        w.write_record(CSV_COLUMNS)?;
    }
    for r in records {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn from_csv(text: &str) -> Result<Vec<BenchRecord>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect()
}

/// Short description of a grid spec used in the `spec` column.
pub fn grid_label(spec: &GridSpec) -> String {
    format!(
        "grid {}x{} w={}..{} seed={}{}",
        spec.rows,
        spec.cols,
        spec.weight_min,
        spec.weight_max,
        spec.seed,
        if spec.plant_hzp { " hzp" } else { "" }
    )
}

/// One optimiser's result on the shared partition.
#[derive(Clone, Debug)]
pub struct ComparisonRow {
    pub algorithm: Algorithm,
    pub counters: Counters,
    pub times: PhaseTimes,
    pub costs: Vec<Option<Cost>>,
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub hda_time: Duration,
    pub rows: Vec<ComparisonRow>,
}

impl Comparison {
    /// The first pair of algorithms whose final costs differ, if any.
    pub fn disagreement(&self) -> Option<(Algorithm, Algorithm, u32)> {
        let first = self.rows.first()?;
        for row in &self.rows[1..] {
            if let Some(i) = first.costs.iter().zip(&row.costs).position(|(a, b)| a != b) {
                return Some((first.algorithm, row.algorithm, i as u32 + 1));
            }
        }
        None
    }

    pub fn records(&self, instance: &str, spec: &str, g: &Graph) -> Vec<BenchRecord> {
        self.rows
            .iter()
            .map(|r| {
                let times = PhaseTimes {
                    hda: self.hda_time,
                    ..r.times
                };
                BenchRecord::new(instance, spec, r.algorithm, g, &r.counters, &times)
            })
            .collect()
    }

    /// Rows are metrics, columns are algorithms.
    pub fn table(&self, g: &Graph) -> String {
        let recs = self.records("", "", g);
        let mut out = String::new();
        let _ = write!(out, "{:<8}", "");
        for r in &recs {
            let _ = write!(out, "{:>12}", r.algorithm.to_uppercase());
        }
        out.push('\n');
        let line = |out: &mut String, name: &str, f: &dyn Fn(&BenchRecord) -> String| {
            let _ = write!(out, "{name:<8}");
            for r in &recs {
                let _ = write!(out, "{:>12}", f(r));
            }
            out.push('\n');
        };
        line(&mut out, "R.T(ms)", &|r| {
            format!("{:.1}", r.classify_ms + r.schedule_ms)
        });
        line(&mut out, "BL", &|r| r.big_loops.to_string());
        line(&mut out, "SNOA", &|r| format!("{:.2}", r.snoa));
        line(&mut out, "OOA", &|r| format!("{:.2}", r.ooa));
        line(&mut out, "ONOA", &|r| format!("{:.2}", r.onoa));
        let _ = writeln!(out, "HDA took {:.1} ms", ms(self.hda_time));
        out
    }
}

/// Partitions once from `source`, then runs every algorithm in
/// `algorithms` on its own copy of the partition state.
pub fn compare(g: &Graph, source: u32, algorithms: &[Algorithm]) -> Result<Comparison, SolveError> {
    let (regions, state, hda_report) = hda(g, source, &MinPlus)?;
    let rows = algorithms
        .iter()
        .map(|&algorithm| {
            let mut s = state.clone();
            let (counters, times) =
                optimise(algorithm, g, &regions, &mut s, &MinPlus, &mut NoProbe);
            ComparisonRow {
                algorithm,
                counters,
                times,
                costs: s.costs(),
            }
        })
        .collect();
    Ok(Comparison {
        hda_time: hda_report.wall_time,
        rows,
    })
}

/// Generates one grid and benchmarks each algorithm on it.
pub fn bench_grid(spec: &GridSpec, algorithms: &[Algorithm]) -> Result<Vec<BenchRecord>, GenError> {
    let inst = gen_grid(spec)?;
    let cmp =
        compare(&inst.graph, inst.source, algorithms).expect("grid source is always in range");
    let id = format!("{}x{}", spec.rows, spec.cols);
    Ok(cmp.records(&id, &grid_label(spec), &inst.graph))
}
