//! Partition followed by one optimiser, with uniform counters for reporting.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::algebra::CostAlgebra;
use crate::eom::{eom_two_course_with_probe, eom_with_probe, EomReport};
use crate::error::SolveError;
use crate::graph::Graph;
use crate::monarchy::{classify_status, run_scheduler_with_probe, MonarchyReport, SchedulerKind};
use crate::oracle::{check_reachability, check_tree, Consistency, Failure, VerificationReport};
use crate::partition::{hda_multi, HdaReport};
use crate::state::{Probe, Regions, SolverState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Partition only.
    Hda,
    Eom,
    EomTwoCourse,
    Scheduler(SchedulerKind),
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Hda,
        Algorithm::Eom,
        Algorithm::EomTwoCourse,
        Algorithm::Scheduler(SchedulerKind::Hrp),
        Algorithm::Scheduler(SchedulerKind::Fr),
        Algorithm::Scheduler(SchedulerKind::Ht),
    ];

    /// Every algorithm that runs to the optimal fixpoint.
    pub const OPTIMISERS: [Algorithm; 5] = [
        Algorithm::Eom,
        Algorithm::EomTwoCourse,
        Algorithm::Scheduler(SchedulerKind::Hrp),
        Algorithm::Scheduler(SchedulerKind::Fr),
        Algorithm::Scheduler(SchedulerKind::Ht),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Hda => "hda",
            Algorithm::Eom => "eom",
            Algorithm::EomTwoCourse => "eom2",
            Algorithm::Scheduler(k) => k.name(),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hda" => Ok(Algorithm::Hda),
            "eom" => Ok(Algorithm::Eom),
            "eom2" => Ok(Algorithm::EomTwoCourse),
            other => other
                .parse()
                .map(Algorithm::Scheduler)
                .map_err(|_| SolveError::UnknownAlgorithm(s.to_string())),
        }
    }
}

/// Optimiser counters common to every algorithm.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    pub big_loops: u64,
    pub node_scans: u64,
    pub arc_relaxations: u64,
    pub improvements: u64,
    pub origins: u64,
    pub regular_way: u64,
    pub wrong_way: u64,
}

impl From<&EomReport> for Counters {
    fn from(r: &EomReport) -> Self {
        Counters {
            big_loops: r.big_loops,
            node_scans: r.node_scans,
            arc_relaxations: r.arc_relaxations,
            improvements: r.improvements,
            origins: 0,
            regular_way: r.regular_way,
            wrong_way: r.wrong_way,
        }
    }
}

impl From<&MonarchyReport> for Counters {
    fn from(r: &MonarchyReport) -> Self {
        Counters {
            big_loops: r.big_loops,
            node_scans: r.node_scans,
            arc_relaxations: r.arc_relaxations,
            improvements: r.improvements,
            origins: r.origins_after_classify,
            regular_way: r.regular_way,
            wrong_way: r.wrong_way,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PhaseTimes {
    pub hda: Duration,
    pub classify: Duration,
    pub schedule: Duration,
}

#[derive(Clone, Debug)]
pub struct PipelineRun<C> {
    pub algorithm: Algorithm,
    pub regions: Regions,
    pub state: SolverState<C>,
    pub hda: HdaReport,
    pub counters: Counters,
    pub times: PhaseTimes,
}

/// Runs the optimiser phase on an existing partition result.
pub fn optimise<A: CostAlgebra, P: Probe<A::Cost>>(
    algorithm: Algorithm,
    g: &Graph,
    regions: &Regions,
    state: &mut SolverState<A::Cost>,
    algebra: &A,
    probe: &mut P,
) -> (Counters, PhaseTimes) {
    let mut times = PhaseTimes::default();
    let counters = match algorithm {
        Algorithm::Hda => Counters::default(),
        Algorithm::Eom => {
            let r = eom_with_probe(g, regions, state, algebra, probe);
            times.schedule = r.wall_time;
            Counters::from(&r)
        }
        Algorithm::EomTwoCourse => {
            let r = eom_two_course_with_probe(g, regions, state, algebra, probe);
            times.schedule = r.wall_time;
            Counters::from(&r)
        }
        Algorithm::Scheduler(kind) => {
            let started = web_time::Instant::now();
            let statuses = classify_status(g, regions, state, algebra);
            times.classify = started.elapsed();
            let r = run_scheduler_with_probe(kind, g, regions, state, statuses, algebra, probe);
            times.schedule = r.wall_time;
            Counters::from(&r)
        }
    };
    (counters, times)
}

/// Partition from `sources`, then `algorithm`. With `tagged`, nodes record
/// their winning source.
pub fn run_pipeline<A: CostAlgebra, P: Probe<A::Cost>>(
    g: &Graph,
    sources: &[u32],
    algorithm: Algorithm,
    algebra: &A,
    tagged: bool,
    probe: &mut P,
) -> Result<PipelineRun<A::Cost>, SolveError> {
    let (regions, mut state, hda) = hda_multi(g, sources, algebra, tagged)?;
    let (mut counters, mut times) = optimise(algorithm, g, &regions, &mut state, algebra, probe);
    if algorithm == Algorithm::Hda {
        counters.node_scans = hda.reached_count as u64;
        counters.arc_relaxations = hda.arc_inspections;
        counters.improvements = hda.improvements;
        counters.regular_way = hda.improvements;
    }
    times.hda = hda.wall_time;
    Ok(PipelineRun {
        algorithm,
        regions,
        state,
        hda,
        counters,
        times,
    })
}

/// Probe that audits the tree and reachability at every big loop (and,
/// optionally, after every accepted relaxation). Failures are collected
/// together with the loop at which they appeared.
pub struct InvariantProbe<'a, A: CostAlgebra> {
    g: &'a Graph,
    regions: &'a Regions,
    algebra: &'a A,
    per_relaxation: bool,
    labeled: usize,
    pub big_loops_checked: usize,
    pub relaxations_checked: usize,
    pub report: VerificationReport,
}

impl<'a, A: CostAlgebra> InvariantProbe<'a, A> {
    pub fn new(g: &'a Graph, regions: &'a Regions, algebra: &'a A) -> Self {
        InvariantProbe {
            g,
            regions,
            algebra,
            per_relaxation: false,
            labeled: regions.reached_count(),
            big_loops_checked: 0,
            relaxations_checked: 0,
            report: VerificationReport::default(),
        }
    }

    /// Also check acyclicity after every accepted relaxation (quadratic).
    pub fn per_relaxation(mut self, on: bool) -> Self {
        self.per_relaxation = on;
        self
    }

    fn audit(&mut self, state: &SolverState<A::Cost>, when: String) {
        let mut rep = check_tree(self.g, state, self.algebra, Consistency::Monotone);
        rep.merge(check_reachability(state, self.regions));
        let labeled = state.labeled_count();
        if labeled < self.labeled {
            rep.failures.push(Failure {
                check: "reachability",
                location: "labelled set".into(),
                expected: format!(">= {}", self.labeled),
                got: labeled.to_string(),
            });
        }
        self.labeled = self.labeled.max(labeled);
        for mut f in rep.failures {
            f.location = format!("{} ({when})", f.location);
            self.report.failures.push(f);
        }
    }
}

impl<A: CostAlgebra> Probe<A::Cost> for InvariantProbe<'_, A> {
    fn on_improve(&mut self, state: &SolverState<A::Cost>, node: u32) {
        if self.per_relaxation {
            self.relaxations_checked += 1;
            self.audit(state, format!("after improving {node}"));
        }
    }

    fn on_big_loop(&mut self, state: &SolverState<A::Cost>, big_loop: usize) {
        self.big_loops_checked += 1;
        self.audit(state, format!("big loop {big_loop}"));
    }
}
