//! Immutable graph store with forward and reverse star units.
//!
//! Nodes are numbered `1..=n`; `0` is reserved as the "unset" sentinel in
//! every per-node array used by the solvers. Adjacency is kept in CSR form,
//! indexed by node id, with entries in arc-list insertion order.

use std::fmt;

use crate::error::GraphError;

/// Arc weight. Costs accumulate in [`Cost`].
pub type Weight = u32;

/// Path cost under the default min-plus algebra.
pub type Cost = u64;

/// 1-based node identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u32);

impl NodeId {
    /// Returns `None` for the reserved value `0`.
    pub fn new(value: u32) -> Option<Self> {
        (value != 0).then_some(NodeId(value))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One input arc `head -> tail` with its weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub head: u32,
    pub tail: u32,
    pub weight: Weight,
}

impl Arc {
    pub fn new(head: u32, tail: u32, weight: Weight) -> Self {
        Arc { head, tail, weight }
    }
}

/// Compressed adjacency: `targets[offsets[u]..offsets[u + 1]]` are the
/// neighbours of `u`.
#[derive(Clone, Debug)]
struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<Weight>,
}

impl Adjacency {
    /// Stable counting sort of `(from, to, w)` triples by `from`.
    fn build(n: usize, entries: impl Iterator<Item = (u32, u32, Weight)> + Clone) -> Self {
        let mut offsets = vec![0usize; n + 2];
        for (from, _, _) in entries.clone() {
            offsets[from as usize + 1] += 1;
        }
        for i in 1..offsets.len() {
            offsets[i] += offsets[i - 1];
        }
        let total = offsets[n + 1];
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; total];
        let mut weights = vec![0 as Weight; total];
        for (from, to, w) in entries {
            let slot = &mut cursor[from as usize];
            targets[*slot] = to;
            weights[*slot] = w;
            *slot += 1;
        }
        Adjacency {
            offsets,
            targets,
            weights,
        }
    }

    #[inline]
    fn range(&self, u: usize) -> std::ops::Range<usize> {
        self.offsets[u]..self.offsets[u + 1]
    }

    #[inline]
    fn iter(&self, u: usize) -> Neighbors<'_> {
        let r = self.range(u);
        Neighbors {
            targets: &self.targets[r.clone()],
            weights: &self.weights[r],
            pos: 0,
        }
    }
}

/// Iterator over `(neighbor, weight)` pairs of one star unit.
#[derive(Clone)]
pub struct Neighbors<'a> {
    targets: &'a [u32],
    weights: &'a [Weight],
    pos: usize,
}

impl Iterator for Neighbors<'_> {
    type Item = (u32, Weight);

    #[inline]
    fn next(&mut self) -> Option<Self::Item> {
        let i = self.pos;
        if i < self.targets.len() {
            self.pos += 1;
            Some((self.targets[i], self.weights[i]))
        } else {
            None
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.targets.len() - self.pos;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Neighbors<'_> {}

/// Immutable weighted graph. Undirected input is materialised in both
/// directions, so `arc_count` counts every undirected edge twice.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    directed: bool,
    arcs: Vec<Arc>,
    forward: Adjacency,
    // `None` for undirected graphs, where the reverse unit equals the forward one.
    reverse: Option<Adjacency>,
    max_out_degree: usize,
}

impl Graph {
    /// Validates the arc list and builds both star units.
    pub fn build(n: usize, arcs: Vec<Arc>, directed: bool) -> Result<Self, GraphError> {
        if n > u32::MAX as usize - 1 {
            return Err(GraphError::TooManyNodes(n));
        }
        for (index, a) in arcs.iter().enumerate() {
            let in_range = |x: u32| x >= 1 && (x as usize) <= n;
            if !in_range(a.head) || !in_range(a.tail) {
                return Err(GraphError::EndpointOutOfRange { index, arc: *a, n });
            }
            if a.head == a.tail {
                return Err(GraphError::SelfLoop { index, arc: *a });
            }
        }

        let forward = if directed {
            Adjacency::build(n, arcs.iter().map(|a| (a.head, a.tail, a.weight)))
        } else {
            // Each edge appears in both endpoints' lists in arc-list order.
            Adjacency::build(
                n,
                arcs.iter()
                    .flat_map(|a| [(a.head, a.tail, a.weight), (a.tail, a.head, a.weight)]),
            )
        };
        let reverse =
            directed.then(|| Adjacency::build(n, arcs.iter().map(|a| (a.tail, a.head, a.weight))));
        let max_out_degree = (1..=n).map(|u| forward.range(u).len()).max().unwrap_or(0);

        Ok(Graph {
            n,
            directed,
            arcs,
            forward,
            reverse,
            max_out_degree,
        })
    }

    /// Like [`Graph::build`] but accepts signed weights and rejects negatives
    /// with a diagnostic naming the arc.
    pub fn build_signed(
        n: usize,
        arcs: &[(i64, i64, i64)],
        directed: bool,
    ) -> Result<Self, GraphError> {
        let mut out = Vec::with_capacity(arcs.len());
        for (index, &(h, t, w)) in arcs.iter().enumerate() {
            if w < 0 {
                return Err(GraphError::NegativeWeight {
                    index,
                    head: h,
                    tail: t,
                    weight: w,
                });
            }
            if w > Weight::MAX as i64 {
                return Err(GraphError::WeightTooLarge { index, weight: w });
            }
            let to_id = |x: i64| -> Result<u32, GraphError> {
                u32::try_from(x).map_err(|_| GraphError::EndpointOutOfRange {
                    index,
                    arc: Arc::new(0, 0, w as Weight),
                    n,
                })
            };
            out.push(Arc::new(to_id(h)?, to_id(t)?, w as Weight));
        }
        Graph::build(n, out, directed)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// The arcs exactly as supplied to [`Graph::build`].
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// `E = Σ |L(i)|`, the number of forward adjacency entries.
    pub fn arc_count(&self) -> usize {
        self.forward.targets.len()
    }

    /// `m = max |L(i)|`.
    pub fn max_out_degree(&self) -> usize {
        self.max_out_degree
    }

    pub fn contains(&self, u: u32) -> bool {
        u >= 1 && (u as usize) <= self.n
    }

    /// Leaves of `u` in insertion order. Panics if `u` is out of range; use
    /// [`Graph::try_leaves`] for checked access.
    #[inline]
    pub fn leaves(&self, u: u32) -> Neighbors<'_> {
        debug_assert!(self.contains(u));
        self.forward.iter(u as usize)
    }

    #[inline]
    pub fn in_neighbors(&self, u: u32) -> Neighbors<'_> {
        debug_assert!(self.contains(u));
        self.reverse
            .as_ref()
            .unwrap_or(&self.forward)
            .iter(u as usize)
    }

    pub fn try_leaves(&self, u: u32) -> Result<Neighbors<'_>, GraphError> {
        self.check_node(u)?;
        Ok(self.leaves(u))
    }

    pub fn try_in_neighbors(&self, u: u32) -> Result<Neighbors<'_>, GraphError> {
        self.check_node(u)?;
        Ok(self.in_neighbors(u))
    }

    pub fn out_degree(&self, u: u32) -> usize {
        self.forward.range(u as usize).len()
    }

    /// Whether some arc `from -> to` carries exactly `weight`.
    pub fn has_arc(&self, from: u32, to: u32, weight: Weight) -> bool {
        self.contains(from) && self.leaves(from).any(|(v, w)| v == to && w == weight)
    }

    /// Every forward entry as `(from, to, weight)`.
    pub fn forward_entries(&self) -> impl Iterator<Item = (u32, u32, Weight)> + '_ {
        (1..=self.n as u32).flat_map(move |u| self.leaves(u).map(move |(v, w)| (u, v, w)))
    }

    pub fn check_node(&self, u: u32) -> Result<(), GraphError> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(GraphError::NodeOutOfRange { node: u, n: self.n })
        }
    }
}
