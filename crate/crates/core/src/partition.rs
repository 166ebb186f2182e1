//! Breadth-first layer partition fused with pull relaxation from the layer
//! directly above.
//!
//! Every reached node ends up with the best cost among the paths that use
//! the minimum number of hops, and its parent lies one region up. Arcs inside
//! a region or pointing back up are never relaxed here; the optimisers in
//! [`crate::eom`] and [`crate::monarchy`] correct those.

use std::time::Duration;

use web_time::Instant;

use crate::algebra::CostAlgebra;
use crate::error::SolveError;
use crate::graph::Graph;
use crate::state::{comp_pull, Regions, SolverState};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HdaReport {
    pub reached_count: usize,
    pub region_count: usize,
    /// Adjacency entries read; at most `2E`.
    pub arc_inspections: u64,
    pub improvements: u64,
    pub wall_time: Duration,
}

pub type HdaOutput<C> = (Regions, SolverState<C>, HdaReport);

/// Single-source partition and layered relaxation.
pub fn hda<A: CostAlgebra>(
    g: &Graph,
    source: u32,
    algebra: &A,
) -> Result<HdaOutput<A::Cost>, SolveError> {
    run(g, &[source], algebra, false)
}

/// All `sources` share region 1 at cost zero. With `tagged`, every node
/// records which source its label descends from.
pub fn hda_multi<A: CostAlgebra>(
    g: &Graph,
    sources: &[u32],
    algebra: &A,
    tagged: bool,
) -> Result<HdaOutput<A::Cost>, SolveError> {
    run(g, sources, algebra, tagged)
}

pub(crate) fn validate_sources(g: &Graph, sources: &[u32]) -> Result<Vec<u32>, SolveError> {
    if sources.is_empty() {
        return Err(SolveError::NoSources);
    }
    let mut seen = vec![false; g.node_count() + 1];
    let mut out = Vec::with_capacity(sources.len());
    for &s in sources {
        if !g.contains(s) {
            return Err(SolveError::SourceOutOfRange {
                node: s,
                n: g.node_count(),
            });
        }
        if !std::mem::replace(&mut seen[s as usize], true) {
            out.push(s);
        }
    }
    Ok(out)
}

fn run<A: CostAlgebra>(
    g: &Graph,
    sources: &[u32],
    algebra: &A,
    tagged: bool,
) -> Result<HdaOutput<A::Cost>, SolveError> {
    let started = Instant::now();
    let sources = validate_sources(g, sources)?;
    let n = g.node_count();
    let mut regions = Regions::empty(n);
    let mut state = SolverState::new(n, &sources, algebra.zero(), tagged);
    let mut report = HdaReport::default();

    for &s in &sources {
        state.status[s as usize] = 1;
        regions.push(s, 1);
    }

    let mut frontier_start = 0;
    let mut reg = 1u32;
    while frontier_start < regions.order.len() {
        let frontier_end = regions.order.len();
        for idx in frontier_start..frontier_end {
            let u = regions.order[idx];
            let rank_u = regions.region[u as usize];
            if g.is_directed() {
                for (v, _) in g.leaves(u) {
                    report.arc_inspections += 1;
                    if state.status[v as usize] == 0 {
                        state.status[v as usize] = 1;
                        regions.push(v, reg + 1);
                    }
                }
                for (v, w) in g.in_neighbors(u) {
                    report.arc_inspections += 1;
                    let rank_v = regions.region[v as usize];
                    if rank_v != 0 && rank_v < rank_u && comp_pull(&mut state, algebra, u, v, w) {
                        report.improvements += 1;
                    }
                }
            } else {
                // Forward and reverse units coincide: one pass discovers and pulls.
                for (v, w) in g.leaves(u) {
                    report.arc_inspections += 1;
                    if state.status[v as usize] == 0 {
                        state.status[v as usize] = 1;
                        regions.push(v, reg + 1);
                    } else if regions.region[v as usize] < rank_u
                        && comp_pull(&mut state, algebra, u, v, w)
                    {
                        report.improvements += 1;
                    }
                }
            }
        }
        frontier_start = frontier_end;
        reg += 1;
    }

    report.reached_count = regions.reached_count();
    report.region_count = regions.region_count();
    report.wall_time = started.elapsed();
    Ok((regions, state, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MinPlus;
    use crate::graph::Arc;

    fn triangle() -> Graph {
        Graph::build(
            3,
            vec![Arc::new(1, 2, 10), Arc::new(1, 3, 1), Arc::new(3, 2, 1)],
            false,
        )
        .unwrap()
    }

    #[test]
    fn triangle_keeps_direct_arc() {
        let (r, s, rep) = hda(&triangle(), 1, &MinPlus).unwrap();
        assert_eq!(r.order, vec![1, 2, 3]);
        assert_eq!(&r.region[1..], &[1, 2, 2]);
        assert_eq!(&r.position[1..], &[1, 2, 3]);
        assert_eq!(&s.cost[1..], &[0, 10, 1]);
        assert_eq!(&s.parent[1..], &[0, 1, 1]);
        assert_eq!(rep.reached_count, 3);
        assert_eq!(rep.region_count, 2);
    }

    #[test]
    fn path_graph() {
        let g = Graph::build(3, vec![Arc::new(1, 2, 1), Arc::new(2, 3, 1)], false).unwrap();
        let (r, s, _) = hda(&g, 1, &MinPlus).unwrap();
        assert_eq!(&r.region[1..], &[1, 2, 3]);
        assert_eq!(&s.cost[1..], &[0, 1, 2]);
    }

    #[test]
    fn single_node() {
        let g = Graph::build(1, vec![], false).unwrap();
        let (r, s, _) = hda(&g, 1, &MinPlus).unwrap();
        assert_eq!(r.order, vec![1]);
        assert_eq!(s.cost_of(1), Some(0));
        assert_eq!(s.parent[1], 0);
    }

    #[test]
    fn disconnected_nodes_stay_unreached() {
        let g = Graph::build(4, vec![Arc::new(1, 2, 3), Arc::new(3, 4, 1)], false).unwrap();
        let (r, s, rep) = hda(&g, 1, &MinPlus).unwrap();
        assert_eq!(rep.reached_count, 2);
        assert_eq!(r.region[3], 0);
        assert_eq!(r.position[4], 0);
        assert_eq!(s.cost_of(3), None);
        assert_eq!(s.parent[4], 0);
    }

    #[test]
    fn directed_pull_reads_reverse_unit() {
        // 3 -> 1 points back up the ranks and is never relaxed.
        let g = Graph::build(
            3,
            vec![Arc::new(1, 2, 1), Arc::new(2, 3, 1), Arc::new(3, 1, 0)],
            true,
        )
        .unwrap();
        let (r, s, _) = hda(&g, 1, &MinPlus).unwrap();
        assert_eq!(&r.region[1..], &[1, 2, 3]);
        assert_eq!(&s.cost[1..], &[0, 1, 2]);
        assert_eq!(s.parent[1], 0);
    }

    #[test]
    fn rejects_bad_source() {
        assert_eq!(
            hda(&triangle(), 4, &MinPlus).unwrap_err(),
            SolveError::SourceOutOfRange { node: 4, n: 3 }
        );
        assert_eq!(
            hda_multi(&triangle(), &[], &MinPlus, true).unwrap_err(),
            SolveError::NoSources
        );
    }

    #[test]
    fn inspections_bounded_by_twice_arcs() {
        let g = triangle();
        let (_, _, rep) = hda(&g, 1, &MinPlus).unwrap();
        assert!(rep.arc_inspections <= 2 * g.arc_count() as u64);
    }
}
