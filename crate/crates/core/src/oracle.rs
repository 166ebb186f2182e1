//! Reference solvers and invariant audits.
//!
//! None of the code here shares a path with the solvers it checks: the
//! oracles keep their own distance arrays and the audits only read a
//! finished (or paused) [`SolverState`].

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;

use crate::algebra::CostAlgebra;
use crate::graph::Graph;
use crate::state::{Regions, SolverState};

/// Distances and parents from a reference solver, indexed by node id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult<C> {
    pub dist: Vec<Option<C>>,
    pub parent: Vec<u32>,
}

impl<C: Copy> OracleResult<C> {
    fn new(n: usize) -> Self {
        OracleResult {
            dist: vec![None; n + 1],
            parent: vec![0; n + 1],
        }
    }

    /// Distances for nodes `1..=n`.
    pub fn distances(&self) -> &[Option<C>] {
        &self.dist[1..]
    }
}

/// Label-setting Dijkstra with a binary heap.
pub fn dijkstra_oracle<A>(g: &Graph, source: u32, algebra: &A) -> OracleResult<A::Cost>
where
    A: CostAlgebra,
    A::Cost: Ord,
{
    let n = g.node_count();
    let mut out = OracleResult::new(n);
    let mut done = vec![false; n + 1];
    let mut heap = BinaryHeap::new();
    out.dist[source as usize] = Some(algebra.zero());
    heap.push(Reverse((algebra.zero(), source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if std::mem::replace(&mut done[u as usize], true) {
            continue;
        }
        for (v, w) in g.leaves(u) {
            let cand = algebra.extend(d, w);
            let slot = &mut out.dist[v as usize];
            if slot.is_none_or(|cur| algebra.better(cand, cur)) {
                *slot = Some(cand);
                out.parent[v as usize] = u;
                heap.push(Reverse((cand, v)));
            }
        }
    }
    out
}

/// Rounds of full relaxation over every arc, at most `n - 1` of them.
pub fn bellman_ford_oracle<A: CostAlgebra>(
    g: &Graph,
    source: u32,
    algebra: &A,
) -> OracleResult<A::Cost> {
    let n = g.node_count();
    let mut out = OracleResult::new(n);
    out.dist[source as usize] = Some(algebra.zero());
    for _ in 1..n.max(1) {
        let mut changed = false;
        for (u, v, w) in g.forward_entries() {
            let Some(du) = out.dist[u as usize] else {
                continue;
            };
            let cand = algebra.extend(du, w);
            if out.dist[v as usize].is_none_or(|dv| algebra.better(cand, dv)) && v != source {
                out.dist[v as usize] = Some(cand);
                out.parent[v as usize] = u;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    out
}

/// Hop levels from a plain breadth-first search; `None` when unreachable.
pub fn bfs_levels(g: &Graph, sources: &[u32]) -> Vec<Option<usize>> {
    let mut level = vec![None; g.node_count() + 1];
    let mut queue = VecDeque::new();
    for &s in sources {
        if level[s as usize].is_none() {
            level[s as usize] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let next = level[u as usize].unwrap() + 1;
        for (v, _) in g.leaves(u) {
            if level[v as usize].is_none() {
                level[v as usize] = Some(next);
                queue.push_back(v);
            }
        }
    }
    level
}

/// Best cost among minimum-hop paths, computed level by level.
pub fn minhop_dp_oracle<A: CostAlgebra>(
    g: &Graph,
    source: u32,
    algebra: &A,
) -> OracleResult<A::Cost> {
    let n = g.node_count();
    let level = bfs_levels(g, &[source]);
    let mut nodes: Vec<u32> = (1..=n as u32)
        .filter(|&v| level[v as usize].is_some())
        .collect();
    nodes.sort_by_key(|&v| level[v as usize]);

    let mut out = OracleResult::new(n);
    out.dist[source as usize] = Some(algebra.zero());
    for &v in &nodes {
        if v == source {
            continue;
        }
        let lv = level[v as usize].unwrap();
        let mut best: Option<(A::Cost, u32)> = None;
        for (u, w) in g.in_neighbors(v) {
            if level[u as usize] != Some(lv - 1) {
                continue;
            }
            let cand = algebra.extend(out.dist[u as usize].expect("upper level is final"), w);
            if best.is_none_or(|(b, _)| algebra.better(cand, b)) {
                best = Some((cand, u));
            }
        }
        let (d, p) = best.expect("a node at level k has an in-neighbour at level k - 1");
        out.dist[v as usize] = Some(d);
        out.parent[v as usize] = p;
    }
    out
}

/// Largest graph accepted by [`brute_force_oracle`].
pub const BRUTE_FORCE_MAX_NODES: usize = 12;

/// Exhaustive enumeration of simple paths. Returns `None` above
/// [`BRUTE_FORCE_MAX_NODES`] nodes.
pub fn brute_force_oracle<A: CostAlgebra>(
    g: &Graph,
    source: u32,
    algebra: &A,
) -> Option<OracleResult<A::Cost>> {
    let n = g.node_count();
    if n > BRUTE_FORCE_MAX_NODES {
        return None;
    }
    fn walk<A: CostAlgebra>(
        g: &Graph,
        algebra: &A,
        u: u32,
        cost: A::Cost,
        on_path: &mut [bool],
        out: &mut OracleResult<A::Cost>,
    ) {
        for (v, w) in g.leaves(u) {
            if on_path[v as usize] {
                continue;
            }
            let c = algebra.extend(cost, w);
            if out.dist[v as usize].is_none_or(|d| algebra.better(c, d)) {
                out.dist[v as usize] = Some(c);
                out.parent[v as usize] = u;
            }
            on_path[v as usize] = true;
            walk(g, algebra, v, c, on_path, out);
            on_path[v as usize] = false;
        }
    }
    let mut out = OracleResult::new(n);
    out.dist[source as usize] = Some(algebra.zero());
    let mut on_path = vec![false; n + 1];
    on_path[source as usize] = true;
    walk(g, algebra, source, algebra.zero(), &mut on_path, &mut out);
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: &'static str,
    pub location: String,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {}: expected {}, got {}",
            self.check, self.location, self.expected, self.got
        )
    }
}

/// Collected failures of one or more audits; `ok()` iff none.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.failures.extend(other.failures);
    }

    fn fail(
        &mut self,
        check: &'static str,
        location: impl Into<String>,
        expected: impl fmt::Display,
        got: impl fmt::Display,
    ) {
        self.failures.push(Failure {
            check,
            location: location.into(),
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return writeln!(f, "ok");
        }
        writeln!(f, "FAILED ({} issue(s))", self.failures.len())?;
        for fail in &self.failures {
            writeln!(f, "  {fail}")?;
        }
        Ok(())
    }
}

/// How strictly [`check_tree`] compares a node's cost to its parent's.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Consistency {
    /// `cost[v] == extend(cost[parent], via)`; holds after the partition and
    /// on every halted state.
    Exact,
    /// `extend(cost[parent], via)` is not worse than `cost[v]`; holds at
    /// every point of a run, since a parent may improve before its children
    /// catch up.
    Monotone,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Unknown,
    OnStack,
    Rooted,
    Broken,
}

/// Walks parent pointers from every labelled node. Returns per-node marks
/// (`true` when the chain ends at a source) and records cycles and orphan
/// chains in `report`.
fn audit_chains<C: Copy + Eq>(
    state: &SolverState<C>,
    report: &mut VerificationReport,
) -> Vec<bool> {
    let n = state.node_count();
    let mut mark = vec![Mark::Unknown; n + 1];
    let mut stack = Vec::new();
    for start in 1..=n as u32 {
        if mark[start as usize] != Mark::Unknown || !state.is_labeled(start) {
            continue;
        }
        let mut v = start;
        let outcome = loop {
            match mark[v as usize] {
                Mark::Rooted => break Mark::Rooted,
                Mark::Broken => break Mark::Broken,
                Mark::OnStack => {
                    let at = stack.iter().position(|&x| x == v).unwrap();
                    let cycle: Vec<String> = stack[at..]
                        .iter()
                        .chain(std::iter::once(&v))
                        .map(|x: &u32| x.to_string())
                        .collect();
                    report.fail(
                        "tree",
                        format!("cycle {}", cycle.join(" -> ")),
                        "acyclic parents",
                        "cycle",
                    );
                    break Mark::Broken;
                }
                Mark::Unknown => {}
            }
            mark[v as usize] = Mark::OnStack;
            stack.push(v);
            let p = state.parent[v as usize];
            if p == 0 {
                if state.is_source(v) {
                    break Mark::Rooted;
                }
                report.fail(
                    "tree",
                    format!("node {v}"),
                    "chain ending at a source",
                    "unlabelled root",
                );
                break Mark::Broken;
            }
            if p as usize > n {
                break Mark::Broken;
            }
            v = p;
        };
        for x in stack.drain(..) {
            mark[x as usize] = outcome;
        }
    }
    mark.into_iter().map(|m| m == Mark::Rooted).collect()
}

/// Acyclicity, parent-arc existence and cost consistency along parents.
pub fn check_tree<A: CostAlgebra>(
    g: &Graph,
    state: &SolverState<A::Cost>,
    algebra: &A,
    consistency: Consistency,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    let n = state.node_count();
    for &s in &state.sources {
        if state.parent[s as usize] != 0 {
            report.fail(
                "tree",
                format!("source {s}"),
                "parent 0",
                state.parent[s as usize],
            );
        }
        if state.cost[s as usize] != algebra.zero() {
            report.fail(
                "tree",
                format!("source {s}"),
                format!("{:?}", algebra.zero()),
                format!("{:?}", state.cost[s as usize]),
            );
        }
    }
    for v in 1..=n as u32 {
        let p = state.parent[v as usize];
        if p == 0 {
            continue;
        }
        if !g.contains(p) {
            report.fail("tree", format!("node {v}"), "parent in range", p);
            continue;
        }
        let w = state.via[v as usize];
        if !g.has_arc(p, v, w) {
            report.fail(
                "tree",
                format!("arc ({p},{v})"),
                format!("arc of weight {w} in graph"),
                "missing",
            );
            continue;
        }
        let through = algebra.extend(state.cost[p as usize], w);
        let cost = state.cost[v as usize];
        let bad = match consistency {
            Consistency::Exact => through != cost,
            Consistency::Monotone => algebra.better(cost, through),
        };
        if bad {
            report.fail(
                "tree",
                format!("node {v} via {p}"),
                format!("{through:?}"),
                format!("{cost:?}"),
            );
        }
    }
    audit_chains(state, &mut report);
    report
}

/// Every reached node carries a parent chain to a source, and the labelled
/// set equals the reached set.
pub fn check_reachability<C: Copy + Eq>(
    state: &SolverState<C>,
    regions: &Regions,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    let mut scratch = VerificationReport::default();
    let rooted = audit_chains(state, &mut scratch);
    for v in 1..=state.node_count() as u32 {
        let reached = regions.is_reached(v);
        let labeled = state.is_labeled(v);
        if reached && !rooted[v as usize] {
            report.fail(
                "reachability",
                format!("node {v}"),
                "chain to a source",
                "none",
            );
        }
        if labeled != reached {
            report.fail(
                "reachability",
                format!("node {v}"),
                if reached { "labelled" } else { "unlabelled" },
                if labeled { "labelled" } else { "unlabelled" },
            );
        }
    }
    report
}

/// No arc can improve its head's label.
pub fn check_fixpoint<A: CostAlgebra>(
    g: &Graph,
    state: &SolverState<A::Cost>,
    algebra: &A,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    for (u, v, w) in g.forward_entries() {
        if !state.is_labeled(u) {
            continue;
        }
        let cand = algebra.extend(state.cost[u as usize], w);
        if !state.is_labeled(v) {
            report.fail(
                "fixpoint",
                format!("arc ({u},{v})"),
                format!("label <= {cand:?}"),
                "unlabelled",
            );
        } else if algebra.better(cand, state.cost[v as usize]) {
            report.fail(
                "fixpoint",
                format!("arc ({u},{v})"),
                format!("cost <= {cand:?}"),
                format!("{:?}", state.cost[v as usize]),
            );
        }
    }
    report
}

/// Compares exported costs against reference distances node by node.
pub fn check_distances<C: Copy + Eq + fmt::Debug>(
    state: &SolverState<C>,
    reference: &[Option<C>],
) -> VerificationReport {
    let mut report = VerificationReport::default();
    for v in 1..=state.node_count() as u32 {
        let got = state.cost_of(v);
        let want = reference[v as usize];
        if got != want {
            report.fail(
                "distance",
                format!("node {v}"),
                format!("{want:?}"),
                format!("{got:?}"),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MinPlus;
    use crate::eom::eom;
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
    fn oracles_on_triangle() {
        let g = triangle();
        let want = [Some(0), Some(2), Some(1)];
        assert_eq!(dijkstra_oracle(&g, 1, &MinPlus).distances(), &want[..]);
        assert_eq!(bellman_ford_oracle(&g, 1, &MinPlus).distances(), &want[..]);
        assert_eq!(
            brute_force_oracle(&g, 1, &MinPlus).unwrap().distances(),
            &want[..]
        );
        assert_eq!(
            minhop_dp_oracle(&g, 1, &MinPlus).distances(),
            &[Some(0), Some(10), Some(1)]
        );
    }

    #[test]
    fn oracles_on_trivial_graphs() {
        let single = Graph::build(1, vec![], false).unwrap();
        assert_eq!(
            dijkstra_oracle(&single, 1, &MinPlus).distances(),
            &[Some(0)]
        );
        assert_eq!(
            bellman_ford_oracle(&single, 1, &MinPlus).distances(),
            &[Some(0)]
        );
        let split = Graph::build(2, vec![], false).unwrap();
        assert_eq!(
            dijkstra_oracle(&split, 1, &MinPlus).distances(),
            &[Some(0), None]
        );
        assert_eq!(
            minhop_dp_oracle(&split, 1, &MinPlus).distances(),
            &[Some(0), None]
        );
    }

    #[test]
    fn unit_weights_minhop_is_hop_count() {
        let g = Graph::build(
            4,
            vec![
                Arc::new(1, 2, 1),
                Arc::new(2, 3, 1),
                Arc::new(1, 4, 1),
                Arc::new(4, 3, 1),
            ],
            false,
        )
        .unwrap();
        assert_eq!(
            minhop_dp_oracle(&g, 1, &MinPlus).distances(),
            &[Some(0), Some(1), Some(2), Some(1)]
        );
    }

    #[test]
    fn bellman_ford_handles_zero_cycle() {
        let g = Graph::build(
            3,
            vec![Arc::new(1, 2, 4), Arc::new(2, 3, 0), Arc::new(3, 2, 0)],
            true,
        )
        .unwrap();
        assert_eq!(
            bellman_ford_oracle(&g, 1, &MinPlus).distances(),
            &[Some(0), Some(4), Some(4)]
        );
    }

    #[test]
    fn brute_force_is_capped() {
        let g = Graph::build(13, vec![], false).unwrap();
        assert!(brute_force_oracle(&g, 1, &MinPlus).is_none());
    }

    #[test]
    fn hda_state_is_a_tree_but_not_a_fixpoint() {
        let g = triangle();
        let (r, mut s, _) = hda(&g, 1, &MinPlus).unwrap();
        assert!(check_tree(&g, &s, &MinPlus, Consistency::Exact).ok());
        assert!(check_reachability(&s, &r).ok());
        let fix = check_fixpoint(&g, &s, &MinPlus);
        assert_eq!(fix.failures.len(), 1);
        assert_eq!(fix.failures[0].location, "arc (3,2)");
        assert_eq!(fix.failures[0].got, "10");

        eom(&g, &r, &mut s, &MinPlus);
        assert!(check_fixpoint(&g, &s, &MinPlus).ok());
        assert!(check_tree(&g, &s, &MinPlus, Consistency::Exact).ok());
    }

    #[test]
    fn two_cycle_is_rejected() {
        let g = triangle();
        let mut s = SolverState::new(3, &[1], 0u64, false);
        s.set_label(2, 3, 1, 1);
        s.set_label(3, 2, 1, 1);
        let rep = check_tree(&g, &s, &MinPlus, Consistency::Monotone);
        assert!(!rep.ok());
        assert!(rep
            .failures
            .iter()
            .any(|f| f.location.contains("2 -> 3 -> 2") || f.location.contains("3 -> 2 -> 3")));
    }

    #[test]
    fn missing_parent_arc_is_rejected() {
        let g = Graph::build(3, vec![Arc::new(1, 2, 1), Arc::new(2, 3, 1)], false).unwrap();
        let mut s = SolverState::new(3, &[1], 0u64, false);
        s.set_label(2, 1, 1, 1);
        s.set_label(3, 1, 1, 1);
        let rep = check_tree(&g, &s, &MinPlus, Consistency::Exact);
        assert_eq!(rep.failures.len(), 1);
        assert_eq!(rep.failures[0].location, "arc (1,3)");
    }

    #[test]
    fn zero_graph_is_a_fixpoint_at_zero() {
        let g = Graph::build(
            3,
            vec![Arc::new(1, 2, 0), Arc::new(2, 3, 0), Arc::new(3, 1, 0)],
            false,
        )
        .unwrap();
        let (r, mut s, _) = hda(&g, 1, &MinPlus).unwrap();
        eom(&g, &r, &mut s, &MinPlus);
        assert!(check_fixpoint(&g, &s, &MinPlus).ok());
        assert_eq!(&s.cost[1..], &[0, 0, 0]);
    }

    #[test]
    fn reachability_flags_unreached_labels() {
        let g = Graph::build(3, vec![Arc::new(1, 2, 1)], false).unwrap();
        let (r, mut s, _) = hda(&g, 1, &MinPlus).unwrap();
        assert!(check_reachability(&s, &r).ok());
        s.set_label(3, 2, 5, 0);
        assert!(!check_reachability(&s, &r).ok());
    }

    #[test]
    fn report_display() {
        let mut rep = VerificationReport::default();
        assert_eq!(rep.to_string(), "ok\n");
        rep.fail("fixpoint", "arc (3,2)", "cost <= 2", "10");
        assert!(rep
            .to_string()
            .contains("fixpoint at arc (3,2): expected cost <= 2, got 10"));
    }
}
