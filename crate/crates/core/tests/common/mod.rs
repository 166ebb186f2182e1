#![allow(dead_code)]

use monarchy_sssp::generators::{gen_grid, gen_random_connected_graph, GridInstance, GridSpec};
use monarchy_sssp::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Case {
    pub name: String,
    pub graph: Graph,
    pub source: u32,
    pub grid: Option<GridInstance>,
}

/// 500 random graphs where every node is reachable from node 1: n in
/// [2, 60], up to n(n-1) extra arcs, weights in [0, 10], directedness
/// alternating.
pub fn random_corpus(count: usize) -> Vec<Case> {
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE + i as u64);
            let n = rng.gen_range(2..=60usize);
            let dense = n * (n - 1);
            let extra = match i % 3 {
                0 => rng.gen_range(0..=n),
                1 => rng.gen_range(0..=dense / 4),
                _ => rng.gen_range(0..=dense),
            };
            let directed = i % 2 == 0;
            let graph =
                gen_random_connected_graph(n, extra, (0, 10), i as u64, directed, 1).unwrap();
            Case {
                name: format!("random#{i} n={n} extra={extra} directed={directed}"),
                graph,
                source: 1,
                grid: None,
            }
        })
        .collect()
}

/// 50 grids up to 30x30, every other one with a planted zero path.
pub fn grid_corpus(count: usize) -> Vec<Case> {
    (0..count)
        .map(|j| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF + j as u64);
            let rows = rng.gen_range(1..=30);
            let cols = rng.gen_range(1..=30);
            let hzp = j % 2 == 0;
            let lo = if j % 4 == 1 { 0 } else { 1 };
            let spec = GridSpec::new(rows, cols)
                .weights(lo, 10)
                .seed(j as u64)
                .hzp(hzp);
            let inst = gen_grid(&spec).unwrap();
            Case {
                name: format!("grid#{j} {rows}x{cols} hzp={hzp}"),
                graph: inst.graph.clone(),
                source: inst.source,
                grid: Some(inst),
            }
        })
        .collect()
}

pub fn full_corpus() -> Vec<Case> {
    let mut c = random_corpus(500);
    c.extend(grid_corpus(50));
    c
}
