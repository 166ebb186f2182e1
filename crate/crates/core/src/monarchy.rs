//! Origin-driven push relaxation with three worklist schedulers.
//!
//! After the partition, [`classify_status`] keeps active only the nodes that
//! can improve a neighbour while nothing can improve them. A scheduler then
//! walks the partition order, lets each active node push to its leaves,
//! re-activates every improved leaf, and decides where the pointer goes
//! next:
//!
//! * `Hrp` moves left to right and jumps back to an improved leaf that sits
//!   to the left of the pointer.
//! * `Fr` jumps to the improved leaf with the smallest position, wherever it
//!   is, and otherwise keeps moving right.
//! * `Ht` chases like `Fr` but remembers where the chase began and returns
//!   to the position right after it once the chase hits a node that improves
//!   nothing.
//!
//! `Fr` and `Ht` wrap to the head of the order at its end; one wrap is one
//! big loop. All three stop after a big loop without improvements.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use web_time::Instant;

use crate::algebra::CostAlgebra;
use crate::error::SolveError;
use crate::graph::Graph;
use crate::partition::{hda_multi, HdaReport};
use crate::state::{comp_push, per_arc, DirectionSplit, NoProbe, Probe, Regions, SolverState};

/// Activity flag per node: 1 active, 0 dormant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatusMap(pub Vec<u8>);

impl StatusMap {
    /// Every reached node active.
    pub fn all_active(regions: &Regions) -> Self {
        let mut s = vec![0; regions.region.len()];
        for &v in &regions.order {
            s[v as usize] = 1;
        }
        StatusMap(s)
    }

    pub fn is_active(&self, v: u32) -> bool {
        self.0[v as usize] == 1
    }

    pub fn active_count(&self) -> usize {
        self.0.iter().filter(|&&s| s == 1).count()
    }

    pub fn active_nodes(&self) -> Vec<u32> {
        (0..self.0.len() as u32)
            .filter(|&v| self.0[v as usize] == 1)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchedulerKind {
    Hrp,
    Fr,
    Ht,
}

impl SchedulerKind {
    pub const ALL: [SchedulerKind; 3] = [SchedulerKind::Hrp, SchedulerKind::Fr, SchedulerKind::Ht];

    pub fn name(self) -> &'static str {
        match self {
            SchedulerKind::Hrp => "hrp",
            SchedulerKind::Fr => "fr",
            SchedulerKind::Ht => "ht",
        }
    }
}

impl fmt::Display for SchedulerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchedulerKind {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hrp" => Ok(SchedulerKind::Hrp),
            "fr" => Ok(SchedulerKind::Fr),
            "ht" | "h&t" => Ok(SchedulerKind::Ht),
            _ => Err(SolveError::UnknownScheduler(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonarchyReport {
    pub big_loops: u64,
    /// Active nodes processed.
    pub node_scans: u64,
    pub arc_relaxations: u64,
    pub improvements: u64,
    pub origins_after_classify: u64,
    pub regular_way: u64,
    pub wrong_way: u64,
    pub wall_time: Duration,
}

impl MonarchyReport {
    pub fn lambda(&self, g: &Graph) -> f64 {
        per_arc(self.node_scans, g)
    }

    pub fn snoa(&self, g: &Graph) -> f64 {
        per_arc(self.node_scans, g)
    }

    pub fn ooa(&self, g: &Graph) -> f64 {
        per_arc(self.origins_after_classify, g)
    }

    pub fn onoa(&self, g: &Graph) -> f64 {
        per_arc(self.improvements, g)
    }
}

/// One scan over the order: a leaf that can be improved goes dormant, and so
/// does a root that improves nothing. The survivors are the origins.
pub fn classify_status<A: CostAlgebra>(
    g: &Graph,
    regions: &Regions,
    state: &SolverState<A::Cost>,
    algebra: &A,
) -> StatusMap {
    let mut status = StatusMap::all_active(regions);
    for &u in &regions.order {
        if !state.is_labeled(u) {
            status.0[u as usize] = 0;
            continue;
        }
        let cu = state.cost[u as usize];
        let mut improves_any = false;
        for (v, w) in g.leaves(u) {
            let improvable = !state.is_labeled(v)
                || algebra.better(algebra.extend(cu, w), state.cost[v as usize]);
            if improvable && !state.is_source(v) {
                status.0[v as usize] = 0;
                improves_any = true;
            }
        }
        if !improves_any {
            status.0[u as usize] = 0;
        }
    }
    status
}

struct Scheduler<'a, A: CostAlgebra, P> {
    g: &'a Graph,
    regions: &'a Regions,
    state: &'a mut SolverState<A::Cost>,
    status: Vec<u8>,
    algebra: &'a A,
    probe: &'a mut P,
    report: MonarchyReport,
    split: DirectionSplit,
}

impl<A: CostAlgebra, P: Probe<A::Cost>> Scheduler<'_, A, P> {
    /// Pushes from `u` to all its leaves and deactivates `u`. Returns the
    /// number of improved leaves and the smallest position among them.
    #[inline]
    fn process(&mut self, u: u32) -> (u64, u32) {
        self.report.node_scans += 1;
        let mut improved = 0;
        let mut best_pos = u32::MAX;
        for (v, w) in self.g.leaves(u) {
            self.report.arc_relaxations += 1;
            if comp_push(self.state, self.algebra, u, v, w) {
                improved += 1;
                self.status[v as usize] = 1;
                self.split.record(self.regions, v, u);
                best_pos = best_pos.min(self.regions.position[v as usize]);
                self.probe.on_improve(self.state, v);
            }
        }
        self.status[u as usize] = 0;
        (improved, best_pos)
    }

    #[inline]
    fn node_at(&self, pos: u32) -> u32 {
        self.regions.order[pos as usize - 1]
    }

    fn big_loop_done(&mut self) {
        self.report.big_loops += 1;
        self.probe
            .on_big_loop(self.state, self.report.big_loops as usize);
    }

    fn high_rank_priority(&mut self) {
        let len = self.regions.order.len() as u32;
        loop {
            let mut flag = 0;
            let mut i = 1;
            while i <= len {
                let u = self.node_at(i);
                if self.status[u as usize] == 1 {
                    let (improved, best_pos) = self.process(u);
                    flag += improved;
                    if improved > 0 && best_pos < i {
                        i = best_pos;
                        continue;
                    }
                }
                i += 1;
            }
            self.report.improvements += flag;
            self.big_loop_done();
            if flag == 0 {
                break;
            }
        }
    }

    fn roam(&mut self, return_to_anchor: bool) {
        let len = self.regions.order.len() as u32;
        let mut i = 1;
        let mut cycle = 0u64;
        let mut anchor: Option<u32> = None;
        loop {
            if i > len {
                self.report.improvements += cycle;
                self.big_loop_done();
                if cycle == 0 {
                    break;
                }
                cycle = 0;
                anchor = None;
                i = 1;
                continue;
            }
            let u = self.node_at(i);
            if self.status[u as usize] == 1 {
                let (improved, best_pos) = self.process(u);
                if improved > 0 {
                    cycle += improved;
                    if return_to_anchor && anchor.is_none() {
                        anchor = Some(i);
                    }
                    i = best_pos;
                    continue;
                }
                if let Some(start) = anchor.take() {
                    i = start + 1;
                    continue;
                }
            }
            i += 1;
        }
    }
}

pub fn run_scheduler<A: CostAlgebra>(
    kind: SchedulerKind,
    g: &Graph,
    regions: &Regions,
    state: &mut SolverState<A::Cost>,
    statuses: StatusMap,
    algebra: &A,
) -> MonarchyReport {
    run_scheduler_with_probe(kind, g, regions, state, statuses, algebra, &mut NoProbe)
}

pub fn run_scheduler_with_probe<A: CostAlgebra, P: Probe<A::Cost>>(
    kind: SchedulerKind,
    g: &Graph,
    regions: &Regions,
    state: &mut SolverState<A::Cost>,
    statuses: StatusMap,
    algebra: &A,
    probe: &mut P,
) -> MonarchyReport {
    let started = Instant::now();
    let origins = statuses.active_count() as u64;
    let mut s = Scheduler {
        g,
        regions,
        state,
        status: statuses.0,
        algebra,
        probe,
        report: MonarchyReport {
            origins_after_classify: origins,
            ..MonarchyReport::default()
        },
        split: DirectionSplit::default(),
    };
    match kind {
        SchedulerKind::Hrp => s.high_rank_priority(),
        SchedulerKind::Fr => s.roam(false),
        SchedulerKind::Ht => s.roam(true),
    }
    let mut report = s.report;
    report.regular_way = s.split.regular_way;
    report.wrong_way = s.split.wrong_way;
    report.wall_time = started.elapsed();
    report
}

#[derive(Clone, Debug)]
pub struct MultiSourceRun<C> {
    pub regions: Regions,
    pub state: SolverState<C>,
    pub hda: HdaReport,
    pub classify_time: Duration,
    pub report: MonarchyReport,
}

impl<C: Copy> MultiSourceRun<C> {
    /// Winning source per node (index by node id; `0` for unreached).
    pub fn tags(&self) -> &[u32] {
        self.state
            .tags
            .as_deref()
            .expect("multi-source state is always tagged")
    }
}

/// All sources start in region 1 at cost zero; every node ends with the best
/// cost over all sources and a tag naming a source that achieves it. Ties go
/// to whichever source labelled the node first.
pub fn multi_source_solve<A: CostAlgebra>(
    g: &Graph,
    sources: &[u32],
    algebra: &A,
    kind: SchedulerKind,
) -> Result<MultiSourceRun<A::Cost>, SolveError> {
    multi_source_solve_with_probe(g, sources, algebra, kind, &mut NoProbe)
}

pub fn multi_source_solve_with_probe<A: CostAlgebra, P: Probe<A::Cost>>(
    g: &Graph,
    sources: &[u32],
    algebra: &A,
    kind: SchedulerKind,
    probe: &mut P,
) -> Result<MultiSourceRun<A::Cost>, SolveError> {
    let (regions, mut state, hda) = hda_multi(g, sources, algebra, true)?;
    let started = Instant::now();
    let statuses = classify_status(g, &regions, &state, algebra);
    let classify_time = started.elapsed();
    let report = run_scheduler_with_probe(kind, g, &regions, &mut state, statuses, algebra, probe);
    Ok(MultiSourceRun {
        regions,
        state,
        hda,
        classify_time,
        report,
    })
}
