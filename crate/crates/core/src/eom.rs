//! Fixpoint sweeps over the partition order.
//!
//! Each sweep visits every node of the order and lets it pull from all of
//! its in-neighbours. Sweeps repeat until one of them makes no improvement;
//! at that point no arc can improve any label, which is the Bellman-Ford
//! optimality condition.

use std::time::Duration;

use web_time::Instant;

use crate::algebra::CostAlgebra;
use crate::graph::Graph;
use crate::state::{comp_pull, per_arc, DirectionSplit, NoProbe, Probe, Regions, SolverState};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EomReport {
    /// Full sweeps, including the final one without improvements.
    pub big_loops: u64,
    pub improvements: u64,
    pub node_scans: u64,
    pub arc_relaxations: u64,
    pub regular_way: u64,
    pub wrong_way: u64,
    pub wall_time: Duration,
}

impl EomReport {
    pub fn snoa(&self, g: &Graph) -> f64 {
        per_arc(self.node_scans, g)
    }

    pub fn onoa(&self, g: &Graph) -> f64 {
        per_arc(self.improvements, g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sweep {
    HeadToTail,
    Alternating,
}

pub fn eom<A: CostAlgebra>(
    g: &Graph,
    regions: &Regions,
    state: &mut SolverState<A::Cost>,
    algebra: &A,
) -> EomReport {
    run(g, regions, state, algebra, Sweep::HeadToTail, &mut NoProbe)
}

/// Odd sweeps run head to tail, even sweeps tail to head. Converges to the
/// same fixpoint as [`eom`].
pub fn eom_two_course<A: CostAlgebra>(
    g: &Graph,
    regions: &Regions,
    state: &mut SolverState<A::Cost>,
    algebra: &A,
) -> EomReport {
    run(g, regions, state, algebra, Sweep::Alternating, &mut NoProbe)
}

pub fn eom_with_probe<A: CostAlgebra, P: Probe<A::Cost>>(
    g: &Graph,
    regions: &Regions,
    state: &mut SolverState<A::Cost>,
    algebra: &A,
    probe: &mut P,
) -> EomReport {
    run(g, regions, state, algebra, Sweep::HeadToTail, probe)
}

pub fn eom_two_course_with_probe<A: CostAlgebra, P: Probe<A::Cost>>(
    g: &Graph,
    regions: &Regions,
    state: &mut SolverState<A::Cost>,
    algebra: &A,
    probe: &mut P,
) -> EomReport {
    run(g, regions, state, algebra, Sweep::Alternating, probe)
}

fn run<A: CostAlgebra, P: Probe<A::Cost>>(
    g: &Graph,
    regions: &Regions,
    state: &mut SolverState<A::Cost>,
    algebra: &A,
    sweep: Sweep,
    probe: &mut P,
) -> EomReport {
    let started = Instant::now();
    let mut report = EomReport::default();
    let mut split = DirectionSplit::default();

    loop {
        report.big_loops += 1;
        let backwards = sweep == Sweep::Alternating && report.big_loops % 2 == 0;
        let mut flag = 0u64;
        let len = regions.order.len();
        for k in 0..len {
            let u = regions.order[if backwards { len - 1 - k } else { k }];
            report.node_scans += 1;
            for (v, w) in g.in_neighbors(u) {
                report.arc_relaxations += 1;
                if state.is_labeled(v) && comp_pull(state, algebra, u, v, w) {
                    flag += 1;
                    split.record(regions, u, v);
                    probe.on_improve(state, u);
                }
            }
        }
        report.improvements += flag;
        probe.on_big_loop(state, report.big_loops as usize);
        if flag == 0 {
            break;
        }
    }

    report.regular_way = split.regular_way;
    report.wrong_way = split.wrong_way;
    report.wall_time = started.elapsed();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MinPlus;
    use crate::graph::Arc;
    use crate::partition::hda;

    fn triangle() -> Graph {
        Graph::build(
            3,
            vec![Arc::new(1, 2, 10), Arc::new(1, 3, 1), Arc::new(3, 2, 1)],
            false,
        )
        .unwrap()
    }

    #[test]
    fn triangle_fixes_the_gap() {
        let g = triangle();
        let (r, mut s, _) = hda(&g, 1, &MinPlus).unwrap();
        let rep = eom(&g, &r, &mut s, &MinPlus);
        assert_eq!(&s.cost[1..], &[0, 2, 1]);
        assert_eq!(&s.parent[1..], &[0, 3, 1]);
        assert_eq!(rep.big_loops, 2);
        assert_eq!(rep.improvements, 1);
        // node 2 (region 2) takes node 3 (region 2) as parent
        assert_eq!((rep.regular_way, rep.wrong_way), (0, 1));
    }

    #[test]
    fn two_course_reaches_same_fixpoint() {
        let g = triangle();
        let (r, mut s, _) = hda(&g, 1, &MinPlus).unwrap();
        eom_two_course(&g, &r, &mut s, &MinPlus);
        assert_eq!(&s.cost[1..], &[0, 2, 1]);
    }

    #[test]
    fn already_optimal_needs_one_sweep() {
        let g = Graph::build(3, vec![Arc::new(1, 2, 1), Arc::new(2, 3, 1)], false).unwrap();
        let (r, mut s, _) = hda(&g, 1, &MinPlus).unwrap();
        let rep = eom(&g, &r, &mut s, &MinPlus);
        assert_eq!((rep.big_loops, rep.improvements), (1, 0));
        let (r, mut s, _) = hda(&g, 1, &MinPlus).unwrap();
        let rep = eom_two_course(&g, &r, &mut s, &MinPlus);
        assert_eq!((rep.big_loops, rep.improvements), (1, 0));
    }

    #[test]
    fn zero_cycle_terminates() {
        let g = Graph::build(
            4,
            vec![
                Arc::new(1, 2, 3),
                Arc::new(2, 3, 0),
                Arc::new(3, 4, 0),
                Arc::new(4, 2, 0),
            ],
            false,
        )
        .unwrap();
        let (r, mut s, _) = hda(&g, 1, &MinPlus).unwrap();
        let rep = eom(&g, &r, &mut s, &MinPlus);
        assert_eq!(&s.cost[1..], &[0, 3, 3, 3]);
        assert!(rep.big_loops <= 4);
    }
}
