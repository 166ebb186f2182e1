//! Browser bindings: solve a generated grid, compare every optimiser on one
//! partition, and run a small shape sweep. See `www/` for the page.

use monarchy_sssp::bench;
use monarchy_sssp::generators::{gen_grid, shape_sweep_specs, GridSpec};
use monarchy_sssp::pipeline::run_pipeline;
use monarchy_sssp::{Algorithm, MinPlus, NoProbe};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest grid the page will build; keeps a tab responsive.
pub const MAX_NODES: usize = 250_000;

fn grid_spec(
    rows: usize,
    cols: usize,
    wmin: u32,
    wmax: u32,
    seed: u64,
    hzp: bool,
) -> Result<GridSpec, String> {
    if rows.saturating_mul(cols) > MAX_NODES {
        return Err(format!("grid too large: at most {MAX_NODES} nodes"));
    }
    Ok(GridSpec::new(rows, cols)
        .weights(wmin, wmax)
        .seed(seed)
        .hzp(hzp))
}

#[wasm_bindgen]
pub struct GridSolution {
    rows: usize,
    cols: usize,
    costs: Vec<f64>,
    regions: Vec<u32>,
    parents: Vec<u32>,
    path: Vec<u32>,
    summary: String,
}

#[wasm_bindgen]
impl GridSolution {
    #[wasm_bindgen(getter)]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[wasm_bindgen(getter)]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Cost per node in id order, `-1` for unreached.
    pub fn costs(&self) -> Vec<f64> {
        self.costs.clone()
    }

    pub fn regions(&self) -> Vec<u32> {
        self.regions.clone()
    }

    pub fn parents(&self) -> Vec<u32> {
        self.parents.clone()
    }

    /// Tree path from the source to the far corner.
    pub fn path(&self) -> Vec<u32> {
        self.path.clone()
    }

    /// Counters and phase times as JSON.
    pub fn summary(&self) -> String {
        self.summary.clone()
    }
}

pub fn solve_grid_native(
    rows: usize,
    cols: usize,
    wmin: u32,
    wmax: u32,
    seed: u64,
    hzp: bool,
    algo: &str,
) -> Result<GridSolution, String> {
    let algorithm: Algorithm = algo.parse().map_err(|e| format!("{e}"))?;
    let inst =
        gen_grid(&grid_spec(rows, cols, wmin, wmax, seed, hzp)?).map_err(|e| e.to_string())?;
    let g = &inst.graph;
    let run = run_pipeline(g, &[inst.source], algorithm, &MinPlus, false, &mut NoProbe)
        .map_err(|e| e.to_string())?;
    let record = bench::BenchRecord::from_run("grid", &bench::grid_label(&inst.spec), g, &run);

    let far = inst
        .hzp
        .as_ref()
        .map_or(g.node_count() as u32, |p| p.terminal);
    let mut path = vec![far];
    let mut v = far;
    while run.state.parent[v as usize] != 0 && path.len() <= g.node_count() {
        v = run.state.parent[v as usize];
        path.push(v);
    }
    path.reverse();

    Ok(GridSolution {
        rows,
        cols,
        costs: run
            .state
            .costs()
            .into_iter()
            .map(|c| c.map_or(-1.0, |c| c as f64))
            .collect(),
        regions: run.regions.region[1..].to_vec(),
        parents: run.state.parent[1..].to_vec(),
        path,
        summary: serde_json::to_string(&record).expect("record serialises"),
    })
}

#[wasm_bindgen]
pub fn solve_grid(
    rows: usize,
    cols: usize,
    wmin: u32,
    wmax: u32,
    seed: u64,
    hzp: bool,
    algo: &str,
) -> Result<GridSolution, JsError> {
    solve_grid_native(rows, cols, wmin, wmax, seed, hzp, algo).map_err(|e| JsError::new(&e))
}

pub fn compare_grid_native(
    rows: usize,
    cols: usize,
    wmin: u32,
    wmax: u32,
    seed: u64,
    hzp: bool,
) -> Result<String, String> {
    let inst =
        gen_grid(&grid_spec(rows, cols, wmin, wmax, seed, hzp)?).map_err(|e| e.to_string())?;
    let g = &inst.graph;
    let cmp = bench::compare(g, inst.source, &Algorithm::OPTIMISERS).map_err(|e| e.to_string())?;
    let records = cmp.records("grid", &bench::grid_label(&inst.spec), g);
    let disagreement = cmp
        .disagreement()
        .map(|(a, b, v)| format!("{a} and {b} disagree at node {v}"));
    Ok(json!({
        "agree": disagreement.is_none(),
        "disagreement": disagreement,
        "records": records,
    })
    .to_string())
}

/// JSON `{agree, disagreement, records}`.
#[wasm_bindgen]
pub fn compare_grid(
    rows: usize,
    cols: usize,
    wmin: u32,
    wmax: u32,
    seed: u64,
    hzp: bool,
) -> Result<String, JsError> {
    compare_grid_native(rows, cols, wmin, wmax, seed, hzp).map_err(|e| JsError::new(&e))
}

pub fn shape_sweep_native(
    n_total: usize,
    cols: &str,
    algos: &str,
    seed: u64,
) -> Result<String, String> {
    if n_total > MAX_NODES {
        return Err(format!("at most {MAX_NODES} nodes"));
    }
    let cols = cols
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad column count `{c}`"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let algos = algos
        .split(',')
        .map(|a| a.trim().parse::<Algorithm>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut records = Vec::new();
    for spec in shape_sweep_specs(n_total, &cols, seed).map_err(|e| e.to_string())? {
        records.extend(bench::bench_grid(&spec, &algos).map_err(|e| e.to_string())?);
    }
    bench::to_csv(&records).map_err(|e| e.to_string())
}

/// CSV with one row per (shape, algorithm).
#[wasm_bindgen]
pub fn shape_sweep(n_total: usize, cols: &str, algos: &str, seed: u64) -> Result<String, JsError> {
    shape_sweep_native(n_total, cols, algos, seed).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hzp_grid_solves_to_zero() {
        let s = solve_grid_native(12, 9, 1, 10, 4, true, "ht").unwrap();
        assert_eq!(s.costs().len(), 108);
        assert!(s.costs().iter().all(|&c| c == 0.0));
        assert_eq!(s.path().len(), 108);
        let summary: serde_json::Value = serde_json::from_str(&s.summary()).unwrap();
        assert_eq!(summary["algorithm"], "ht");
    }

    #[test]
    fn compare_reports_agreement() {
        let text = compare_grid_native(20, 20, 1, 10, 1, false).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["agree"], true);
        assert_eq!(v["records"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn sweep_rows_and_errors() {
        let csv = shape_sweep_native(1000, "10, 100", "eom,ht", 2).unwrap();
        assert_eq!(csv.lines().count(), 5);
        assert!(shape_sweep_native(1000, "3", "eom", 2).is_err());
        assert!(shape_sweep_native(1000, "10", "bogus", 2).is_err());
        assert!(solve_grid_native(1000, 1000, 1, 10, 0, false, "ht").is_err());
    }
}
