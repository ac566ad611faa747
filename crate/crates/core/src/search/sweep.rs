//! Grid runs of the maximum search.

use std::time::Instant;

use serde::Serialize;

use super::{max_s_witness, SearchMode, SearchProblem};
use crate::family::{binomial, GroundParams};

/// One grid cell. Column order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub d: usize,
    pub s: usize,
    pub mode: &'static str,
    pub best_size: Option<u64>,
    pub bound_nm1_d: Option<u64>,
    pub complete: Option<bool>,
    pub nodes: Option<u64>,
    pub seconds: Option<f64>,
    pub error: Option<String>,
}

/// Runs every cell in grid order. A failing cell yields a row with `error`
/// set and the sweep continues.
pub fn sweep(grid: &[GroundParams], mode: SearchMode, node_limit: u64, threads: usize) -> Vec<SweepRow> {
    grid.iter()
        .map(|params| {
            let mut row = SweepRow {
                n: params.n,
                d: params.d,
                s: params.s,
                mode: mode.as_str(),
                best_size: None,
                bound_nm1_d: binomial(params.n as u64 - 1, params.d as u64).ok(),
                complete: None,
                nodes: None,
                seconds: None,
                error: None,
            };
            let mut problem = SearchProblem::new(*params, mode);
            problem.node_limit = node_limit;
            problem.threads = threads;
            let start = Instant::now();
            match max_s_witness(&problem) {
                Ok(r) => {
                    row.best_size = Some(r.best_size);
                    row.complete = Some(r.complete);
                    row.nodes = Some(r.nodes_explored);
                    row.seconds = Some(start.elapsed().as_secs_f64());
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect()
}
