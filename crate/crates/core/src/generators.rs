//! Seeded instance generators.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`), seeded with
//! `seed_from_u64`, so instances are reproducible across platforms for a
//! fixed seed. Weights are drawn in arc-list order; planting a zero path
//! overwrites weights after drawing and leaves the stream untouched.
//!
//! Grid layout: `rows x cols`, row 0 at the bottom, ids assigned column-major
//! from the bottom-left corner: `id(row, col) = col * rows + row + 1`. The
//! source is always the bottom-left corner, id 1.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GenError;
use crate::graph::{Arc, Graph, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
    pub weight_min: Weight,
    pub weight_max: Weight,
    pub seed: u64,
    pub plant_hzp: bool,
}

impl GridSpec {
    pub fn new(rows: usize, cols: usize) -> Self {
        GridSpec {
            rows,
            cols,
            weight_min: 1,
            weight_max: 10,
            seed: 0,
            plant_hzp: false,
        }
    }

    pub fn weights(mut self, min: Weight, max: Weight) -> Self {
        self.weight_min = min;
        self.weight_max = max;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn hzp(mut self, plant: bool) -> Self {
        self.plant_hzp = plant;
        self
    }

    pub fn node_count(&self) -> usize {
        self.rows * self.cols
    }

    /// Undirected edges: `rows (cols - 1) + cols (rows - 1)`.
    pub fn edge_count(&self) -> usize {
        self.rows * self.cols.saturating_sub(1) + self.cols * self.rows.saturating_sub(1)
    }

    pub fn id(&self, row: usize, col: usize) -> u32 {
        (col * self.rows + row + 1) as u32
    }

    /// Inverse of [`GridSpec::id`].
    pub fn coords(&self, id: u32) -> (usize, usize) {
        let k = id as usize - 1;
        (k % self.rows, k / self.rows)
    }

    fn validate(&self) -> Result<(), GenError> {
        if self.rows < 1 || self.cols < 1 {
            return Err(GenError::EmptyGrid {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.weight_min > self.weight_max {
            return Err(GenError::EmptyWeightRange {
                min: self.weight_min,
                max: self.weight_max,
            });
        }
        Ok(())
    }

    /// Weight range for arcs off the planted path. With a planted path the
    /// lower bound is lifted to 1 so the zero path is strictly optimal.
    fn effective_weights(&self) -> (Weight, Weight) {
        if self.plant_hzp {
            let lo = self.weight_min.max(1);
            (lo, self.weight_max.max(lo))
        } else {
            (self.weight_min, self.weight_max)
        }
    }
}

/// A planted Hamiltonian path whose arcs all weigh zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HzpPlan {
    pub path: Vec<u32>,
    pub terminal: u32,
}

#[derive(Clone, Debug)]
pub struct GridInstance {
    pub spec: GridSpec,
    pub graph: Graph,
    pub source: u32,
    pub hzp: Option<HzpPlan>,
}

/// Column snake: up column 0, one step right, down column 1, and so on.
pub fn serpentine(spec: &GridSpec) -> HzpPlan {
    let mut path = Vec::with_capacity(spec.node_count());
    for col in 0..spec.cols {
        if col % 2 == 0 {
            path.extend((0..spec.rows).map(|row| spec.id(row, col)));
        } else {
            path.extend((0..spec.rows).rev().map(|row| spec.id(row, col)));
        }
    }
    let terminal = *path.last().expect("grid has at least one node");
    HzpPlan { path, terminal }
}

/// Grid arcs in emission order, without weights.
pub fn grid_edges(spec: &GridSpec) -> Vec<(u32, u32)> {
    let mut edges = Vec::with_capacity(spec.edge_count());
    for col in 0..spec.cols {
        for row in 0..spec.rows {
            if row + 1 < spec.rows {
                edges.push((spec.id(row, col), spec.id(row + 1, col)));
            }
            if col + 1 < spec.cols {
                edges.push((spec.id(row, col), spec.id(row, col + 1)));
            }
        }
    }
    edges
}

pub fn gen_grid(spec: &GridSpec) -> Result<GridInstance, GenError> {
    spec.validate()?;
    let (lo, hi) = spec.effective_weights();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut arcs: Vec<Arc> = grid_edges(spec)
        .into_iter()
        .map(|(a, b)| Arc::new(a, b, rng.gen_range(lo..=hi)))
        .collect();

    let hzp = spec.plant_hzp.then(|| serpentine(spec));
    if let Some(plan) = &hzp {
        let mut order = vec![0usize; spec.node_count() + 1];
        for (i, &v) in plan.path.iter().enumerate() {
            order[v as usize] = i;
        }
        for a in &mut arcs {
            if order[a.head as usize].abs_diff(order[a.tail as usize]) == 1 {
                a.weight = 0;
            }
        }
    }

    let graph = Graph::build(spec.node_count(), arcs, false)?;
    Ok(GridInstance {
        spec: *spec,
        graph,
        source: 1,
        hzp,
    })
}

/// Uniform arc sampling without self-loops; parallel arcs allowed.
pub fn gen_random_graph(
    n: usize,
    arc_count: usize,
    weights: (Weight, Weight),
    seed: u64,
    directed: bool,
) -> Result<Graph, GenError> {
    check_weights(weights)?;
    if arc_count > 0 && n < 2 {
        return Err(GenError::InfeasibleArcCount { n, arcs: arc_count });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arcs = (0..arc_count)
        .map(|_| random_arc(&mut rng, n, weights))
        .collect();
    Ok(Graph::build(n, arcs, directed)?)
}

/// Random graph in which every node is reachable from `source`: a random
/// spanning arborescence rooted there plus `extra_arcs` uniform arcs.
pub fn gen_random_connected_graph(
    n: usize,
    extra_arcs: usize,
    weights: (Weight, Weight),
    seed: u64,
    directed: bool,
    source: u32,
) -> Result<Graph, GenError> {
    check_weights(weights)?;
    if n == 0 || source == 0 || source as usize > n {
        return Err(GenError::Graph(crate::error::GraphError::NodeOutOfRange {
            node: source,
            n,
        }));
    }
    if extra_arcs > 0 && n < 2 {
        return Err(GenError::InfeasibleArcCount {
            n,
            arcs: extra_arcs,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes: Vec<u32> = (1..=n as u32).filter(|&v| v != source).collect();
    nodes.shuffle(&mut rng);
    nodes.insert(0, source);

    let mut arcs = Vec::with_capacity(n - 1 + extra_arcs);
    for i in 1..n {
        let parent = nodes[rng.gen_range(0..i)];
        arcs.push(Arc::new(
            parent,
            nodes[i],
            rng.gen_range(weights.0..=weights.1),
        ));
    }
    for _ in 0..extra_arcs {
        arcs.push(random_arc(&mut rng, n, weights));
    }
    arcs.shuffle(&mut rng);
    Ok(Graph::build(n, arcs, directed)?)
}

fn check_weights((min, max): (Weight, Weight)) -> Result<(), GenError> {
    if min > max {
        Err(GenError::EmptyWeightRange { min, max })
    } else {
        Ok(())
    }
}

fn random_arc(rng: &mut ChaCha8Rng, n: usize, (lo, hi): (Weight, Weight)) -> Arc {
    let head = rng.gen_range(1..=n as u32);
    let mut tail = rng.gen_range(1..n as u32);
    if tail >= head {
        tail += 1;
    }
    Arc::new(head, tail, rng.gen_range(lo..=hi))
}

/// Constant-size grids of varying shape, each with the zero path planted.
pub fn shape_sweep_specs(
    n_total: usize,
    col_values: &[usize],
    seed: u64,
) -> Result<Vec<GridSpec>, GenError> {
    col_values
        .iter()
        .map(|&cols| {
            if cols == 0 || !n_total.is_multiple_of(cols) {
                return Err(GenError::NotADivisor {
                    total: n_total,
                    cols,
                });
            }
            Ok(GridSpec::new(n_total / cols, cols).seed(seed).hzp(true))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts() {
        let inst = gen_grid(&GridSpec::new(3, 4)).unwrap();
        assert_eq!(inst.graph.node_count(), 12);
        assert_eq!(inst.graph.arcs().len(), 17);
        assert_eq!(inst.graph.arc_count(), 34);
        assert_eq!(inst.spec.edge_count(), 17);
    }

    #[test]
    fn single_cell_grid() {
        let inst = gen_grid(&GridSpec::new(1, 1)).unwrap();
        assert_eq!(inst.graph.node_count(), 1);
        assert_eq!(inst.graph.arc_count(), 0);
    }

    #[test]
    fn two_by_two_serpentine() {
        let spec = GridSpec::new(2, 2).hzp(true);
        let plan = serpentine(&spec);
        // bottom-left, top-left, top-right, bottom-right
        assert_eq!(plan.path, vec![1, 2, 4, 3]);
        assert_eq!(plan.terminal, spec.id(0, 1));
    }

    #[test]
    fn terminal_side_follows_column_parity() {
        let odd = GridSpec::new(2, 3);
        assert_eq!(serpentine(&odd).terminal, odd.id(1, 2));
        let even = GridSpec::new(3, 2);
        assert_eq!(serpentine(&even).terminal, even.id(0, 1));
    }

    #[test]
    fn planted_arcs_are_zero_and_others_positive() {
        let spec = GridSpec::new(4, 5).weights(0, 3).seed(11).hzp(true);
        let inst = gen_grid(&spec).unwrap();
        let plan = inst.hzp.as_ref().unwrap();
        let mut order = [0usize; 21];
        for (i, &v) in plan.path.iter().enumerate() {
            order[v as usize] = i;
        }
        let mut zero = 0;
        for a in inst.graph.arcs() {
            if order[a.head as usize].abs_diff(order[a.tail as usize]) == 1 {
                assert_eq!(a.weight, 0);
                zero += 1;
            } else {
                assert!(a.weight >= 1);
            }
        }
        assert_eq!(zero, 19);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(
            gen_grid(&GridSpec::new(0, 3)),
            Err(GenError::EmptyGrid { .. })
        ));
        assert!(matches!(
            gen_grid(&GridSpec::new(2, 2).weights(5, 1)),
            Err(GenError::EmptyWeightRange { .. })
        ));
        assert!(matches!(
            gen_random_graph(1, 1, (0, 1), 0, true),
            Err(GenError::InfeasibleArcCount { .. })
        ));
    }

    #[test]
    fn random_graph_is_deterministic() {
        let a = gen_random_graph(5, 20, (0, 10), 42, true).unwrap();
        let b = gen_random_graph(5, 20, (0, 10), 42, true).unwrap();
        assert_eq!(a.arcs(), b.arcs());
        let c = gen_random_graph(5, 20, (0, 10), 43, true).unwrap();
        assert_ne!(a.arcs(), c.arcs());
        assert_eq!(
            gen_random_graph(1, 0, (0, 10), 1, false)
                .unwrap()
                .arc_count(),
            0
        );
    }

    #[test]
    fn connected_generator_reaches_everything() {
        for seed in 0..20 {
            let g = gen_random_connected_graph(15, 10, (0, 10), seed, true, 1).unwrap();
            let (r, _, _) = crate::partition::hda(&g, 1, &crate::algebra::MinPlus).unwrap();
            assert_eq!(r.reached_count(), 15);
        }
    }

    #[test]
    fn sweep_specs() {
        let specs = shape_sweep_specs(10_000, &[100, 10], 0).unwrap();
        assert_eq!((specs[0].rows, specs[0].cols), (100, 100));
        assert_eq!((specs[1].rows, specs[1].cols), (1000, 10));
        assert!(specs.iter().all(|s| s.plant_hzp));
        assert!(matches!(
            shape_sweep_specs(10_000, &[3], 0),
            Err(GenError::NotADivisor { cols: 3, .. })
        ));
    }
}
