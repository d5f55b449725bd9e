//! Ratio sweep over `(n, c, d, K)` grids.

use anyhow::{anyhow, bail, Context};
use clap::Args;
use num_rational::Ratio;
use rayon::prelude::*;
use ringgroom::approx::{algorithm_a, algorithm_a_quasi, quasi_ratio_limit, ratio_report, uniform_ratio_limit, within};
use ringgroom::bounds::best_lower_bound;
use ringgroom::model::{quasi_uniform_random, uniform_instance};
use ringgroom::{adm_count, Rational};
use serde_json::{json, Value};

use crate::render;

#[derive(Args, Debug, Clone)]
pub struct BenchGrid {
    /// Vertex counts: `lo..=hi`, `lo-hi` or a comma list.
    #[arg(long, default_value = "2..=12")]
    pub n: String,
    #[arg(long, default_value = "1..=8")]
    pub c: String,
    /// Uniform demand, or the largest demand for `K > 1`.
    #[arg(long, default_value = "1..=8")]
    pub d: String,
    /// Ratio bounds; `K = 1` runs the uniform algorithm.
    #[arg(long, default_value = "1")]
    pub k: String,
    /// Required when some `K > 1`; cell `i` uses `seed + i`.
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Parses `lo..=hi`, `lo-hi`, a single value or a comma list.
pub fn parse_list(spec: &str) -> anyhow::Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bounds = part
            .split_once("..=")
            .or_else(|| part.split_once('-'));
        match bounds {
            Some((lo, hi)) => {
                let lo: u64 = lo.trim().parse().with_context(|| format!("bad range {part:?}"))?;
                let hi: u64 = hi.trim().parse().with_context(|| format!("bad range {part:?}"))?;
                if lo > hi {
                    bail!("empty range {part:?}");
                }
                out.extend(lo..=hi);
            }
            None => out.push(part.parse().with_context(|| format!("bad value {part:?}"))?),
        }
    }
    if out.is_empty() {
        bail!("empty list {spec:?}");
    }
    Ok(out)
}

#[derive(Clone, Copy)]
struct Cell {
    n: usize,
    c: u32,
    d: u32,
    k: Ratio<u64>,
    seed: u64,
}

fn run_cell(cell: Cell) -> Value {
    let Cell { n, c, d, k, seed } = cell;
    let k_big = Rational::new(*k.numer() as i128, *k.denom() as i128);
    let (limit, built) = if k == Ratio::from_integer(1) {
        (
            uniform_ratio_limit(),
            uniform_instance(n, c, d)
                .map_err(|e| anyhow!(e))
                .and_then(|inst| Ok((algorithm_a(n, c, d)?, inst))),
        )
    } else {
        (
            quasi_ratio_limit(k_big),
            quasi_uniform_random(n, c, d, k, seed)
                .map_err(|e| anyhow!(e))
                .and_then(|inst| Ok((algorithm_a_quasi(&inst, None)?, inst))),
        )
    };
    let mut row = json!({ "n": n, "c": c, "d": d, "k": k.to_string() });
    match built {
        Ok((sol, inst)) => {
            let bound = best_lower_bound(&inst).best_integer;
            row["adms"] = json!(adm_count(&sol));
            row["bound"] = json!(bound);
            match ratio_report(&inst, &sol) {
                Ok(ratio) => {
                    row["ratio"] = render::rational(ratio);
                    row["ok"] = json!(within(ratio, limit));
                }
                Err(e) => {
                    row["error"] = json!(e.to_string());
                    row["ok"] = json!(false);
                }
            }
        }
        Err(e) => {
            row["error"] = json!(e.to_string());
            row["ok"] = json!(false);
        }
    }
    row
}

/// Runs every cell (in parallel) and reports them in grid order.
pub fn run_bench(grid: &BenchGrid) -> anyhow::Result<Value> {
    let ns = parse_list(&grid.n)?;
    let cs = parse_list(&grid.c)?;
    let ds = parse_list(&grid.d)?;
    let ks: Vec<Ratio<u64>> = grid
        .k
        .split(',')
        .map(|s| s.trim().parse::<Ratio<u64>>().map_err(|_| anyhow!("bad K {s:?}")))
        .collect::<anyhow::Result<_>>()?;
    if ks.iter().any(|&k| k < Ratio::from_integer(1)) {
        bail!("K must be at least 1");
    }
    let random = ks.iter().any(|&k| k > Ratio::from_integer(1));
    let base = match (random, grid.seed) {
        (true, None) => bail!("--seed is required when some K > 1"),
        (_, seed) => seed.unwrap_or(0),
    };
    if ns.iter().any(|&n| n < 2) || cs.contains(&0) || ds.contains(&0) {
        bail!("grid values must satisfy n >= 2, c >= 1, d >= 1");
    }
    let mut cells = Vec::new();
    for &k in &ks {
        for &n in &ns {
            for &c in &cs {
                for &d in &ds {
                    let seed = base.wrapping_add(cells.len() as u64);
                    cells.push(Cell { n: n as usize, c: c as u32, d: d as u32, k, seed });
                }
            }
        }
    }
    let rows: Vec<Value> = cells.par_iter().map(|&cell| run_cell(cell)).collect();
    let violations = rows.iter().filter(|r| r["ok"] != json!(true)).count();
    let max_ratio = rows
        .iter()
        .filter_map(|r| r["ratio"]["exact"].as_str())
        .filter_map(|s| s.parse::<Rational>().ok())
        .max();
    Ok(json!({
        "command": "bench",
        "cells": rows,
        "summary": {
            "cells": cells.len(),
            "max_ratio": max_ratio.map_or(Value::Null, render::rational),
            "uniform_limit": render::surd(uniform_ratio_limit()),
            "violations": violations,
        },
        "status": if violations == 0 { "ok" } else { "violation" },
    }))
}
