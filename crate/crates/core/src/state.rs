//! Mutable solver arrays shared by every phase, and the two relaxation
//! primitives.
//!
//! The parent array follows the classic convention: `parent[v] == 0` means
//! `v` has no label yet. Sources also have `parent == 0` but are always
//! labelled, which is tracked separately so that a source can never be
//! relabelled through `parent == 0`.

use crate::algebra::CostAlgebra;
use crate::graph::{Graph, Weight};

/// Partition triple: discovery order, node -> region, node -> position.
///
/// All per-node arrays are indexed by node id and have length `n + 1`;
/// positions and regions are 1-based and `0` marks an unreached node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regions {
    pub order: Vec<u32>,
    pub region: Vec<u32>,
    pub position: Vec<u32>,
}

impl Regions {
    pub fn empty(n: usize) -> Self {
        Regions {
            order: Vec::with_capacity(n),
            region: vec![0; n + 1],
            position: vec![0; n + 1],
        }
    }

    pub fn reached_count(&self) -> usize {
        self.order.len()
    }

    pub fn region_count(&self) -> usize {
        self.order
            .last()
            .map_or(0, |&v| self.region[v as usize] as usize)
    }

    pub fn is_reached(&self, v: u32) -> bool {
        self.position[v as usize] != 0
    }

    pub(crate) fn push(&mut self, v: u32, region: u32) {
        self.order.push(v);
        self.region[v as usize] = region;
        self.position[v as usize] = self.order.len() as u32;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverState<C> {
    pub parent: Vec<u32>,
    pub cost: Vec<C>,
    /// Weight of the arc `parent[v] -> v` that produced `cost[v]`.
    pub via: Vec<Weight>,
    /// Partition bookkeeping flag (0 unvisited, 1 visited).
    pub status: Vec<u8>,
    pub sources: Vec<u32>,
    is_source: Vec<bool>,
    /// Winning source per node, present for multi-source runs.
    pub tags: Option<Vec<u32>>,
}

impl<C: Copy + Eq> SolverState<C> {
    /// Fresh state with every source labelled at `zero`.
    pub fn new(n: usize, sources: &[u32], zero: C, tagged: bool) -> Self {
        let mut is_source = vec![false; n + 1];
        for &s in sources {
            is_source[s as usize] = true;
        }
        let tags = tagged.then(|| {
            let mut t = vec![0; n + 1];
            for &s in sources {
                t[s as usize] = s;
            }
            t
        });
        SolverState {
            parent: vec![0; n + 1],
            cost: vec![zero; n + 1],
            via: vec![0; n + 1],
            status: vec![0; n + 1],
            sources: sources.to_vec(),
            is_source,
            tags,
        }
    }

    pub fn node_count(&self) -> usize {
        self.parent.len() - 1
    }

    #[inline]
    pub fn is_source(&self, v: u32) -> bool {
        self.is_source[v as usize]
    }

    #[inline]
    pub fn is_labeled(&self, v: u32) -> bool {
        self.parent[v as usize] != 0 || self.is_source[v as usize]
    }

    /// Exported cost: `None` marks an unreached node, distinct from any
    /// finite cost including zero.
    pub fn cost_of(&self, v: u32) -> Option<C> {
        self.is_labeled(v).then(|| self.cost[v as usize])
    }

    pub fn costs(&self) -> Vec<Option<C>> {
        (1..=self.node_count() as u32)
            .map(|v| self.cost_of(v))
            .collect()
    }

    pub fn labeled_count(&self) -> usize {
        (1..=self.node_count() as u32)
            .filter(|&v| self.is_labeled(v))
            .count()
    }

    /// Unconditional label write used by the relaxations and by importers.
    #[inline]
    pub fn set_label(&mut self, node: u32, parent: u32, cost: C, via: Weight) {
        let i = node as usize;
        self.parent[i] = parent;
        self.cost[i] = cost;
        self.via[i] = via;
        if let Some(tags) = self.tags.as_mut() {
            tags[i] = tags[parent as usize];
        }
    }

    #[inline]
    fn offer<A: CostAlgebra<Cost = C>>(
        &mut self,
        algebra: &A,
        target: u32,
        from: u32,
        candidate: C,
        weight: Weight,
    ) -> bool {
        let t = target as usize;
        let accept = if self.parent[t] == 0 {
            !self.is_source[t]
        } else {
            algebra.better(candidate, self.cost[t])
        };
        if accept {
            self.set_label(target, from, candidate, weight);
        }
        accept
    }
}

/// Pull relaxation: `root` takes `leaf`'s cost extended by `weight` if it has
/// no label yet or the candidate is strictly better.
#[inline]
pub fn comp_pull<A: CostAlgebra>(
    state: &mut SolverState<A::Cost>,
    algebra: &A,
    root: u32,
    leaf: u32,
    weight: Weight,
) -> bool {
    debug_assert!(state.is_labeled(leaf));
    let candidate = algebra.extend(state.cost[leaf as usize], weight);
    state.offer(algebra, root, leaf, candidate, weight)
}

/// Push relaxation: `root` forwards its cost extended by `weight` to `leaf`.
#[inline]
pub fn comp_push<A: CostAlgebra>(
    state: &mut SolverState<A::Cost>,
    algebra: &A,
    root: u32,
    leaf: u32,
    weight: Weight,
) -> bool {
    debug_assert!(state.is_labeled(root));
    let candidate = algebra.extend(state.cost[root as usize], weight);
    state.offer(algebra, leaf, root, candidate, weight)
}

/// Hooks for invariant checking during a run.
pub trait Probe<C> {
    /// Called after every accepted relaxation; `node` is the improved node.
    fn on_improve(&mut self, _state: &SolverState<C>, _node: u32) {}

    /// Called at each big-loop boundary with the 1-based loop count.
    fn on_big_loop(&mut self, _state: &SolverState<C>, _big_loop: usize) {}
}

/// Probe that does nothing.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoProbe;

impl<C> Probe<C> for NoProbe {}

/// Direction split of accepted relaxations relative to the partition ranks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DirectionSplit {
    /// Improved node sits in a lower rank (larger region number) than its new parent.
    pub regular_way: u64,
    /// Improved node sits at or above its new parent's rank.
    pub wrong_way: u64,
}

impl DirectionSplit {
    #[inline]
    pub(crate) fn record(&mut self, regions: &Regions, improved: u32, parent: u32) {
        if regions.region[improved as usize] > regions.region[parent as usize] {
            self.regular_way += 1;
        } else {
            self.wrong_way += 1;
        }
    }
}

/// Ratio helper for the per-arc metrics; zero when the graph has no arcs.
pub(crate) fn per_arc(count: u64, g: &Graph) -> f64 {
    match g.arc_count() {
        0 => 0.0,
        e => count as f64 / e as f64,
    }
}
