//! Report values and their two renderings. Every command builds one JSON
//! value; the table view is derived from it, so both show the same numbers.

use num_traits::{Signed, Zero};
use ringgroom::bounds::BoundReport;
use ringgroom::numeric::Surd;
use ringgroom::{Instance, Rational};
use serde_json::{json, Map, Value};

pub fn decimal(q: Rational) -> String {
    let scale = Rational::from_integer(1_000_000);
    let neg = q.is_negative();
    let scaled = (q.abs() * scale).round().to_integer();
    let sign = if neg && scaled != 0 { "-" } else { "" };
    format!("{sign}{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

pub fn rational(q: Rational) -> Value {
    json!({ "exact": q.to_string(), "approx": decimal(q) })
}

pub fn surd(s: Surd) -> Value {
    let (lo, _) = s.bracket(7);
    json!({ "ceil": s.ceil(), "approx": decimal(lo), "exact": s.to_string() })
}

pub fn instance_summary(inst: &Instance) -> Value {
    let values: Vec<u32> = inst.demands().map(|(_, u)| u).collect();
    let k = ringgroom::bounds::detect_k(inst);
    json!({
        "n": inst.n(),
        "c": inst.capacity(),
        "pairs_with_demand": values.len(),
        "total_demand": values.iter().map(|&u| u as u64).sum::<u64>(),
        "min_demand": values.iter().min().copied().unwrap_or(0),
        "max_demand": values.iter().max().copied().unwrap_or(0),
        "k": k.map_or(Value::Null, rational),
    })
}

pub fn bounds(r: &BoundReport) -> Value {
    json!({
        "lp": rational(r.lp),
        "lp_ceil": if r.lp.is_zero() { 0 } else { r.lp_ceil() },
        "add_drop": r.add_drop,
        "remainder": r.prop3,
        "uniform": r.thm1.map_or(Value::Null, surd),
        "quasi_uniform": r.cor1.map_or(Value::Null, surd),
        "best": r.best_integer,
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_flat_object(v: &Value) -> bool {
    v.as_object().is_some_and(|o| o.values().all(|x| !x.is_array()))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            // exact values read as "7/2 (~3.500000)"
            if let (Some(exact), Some(approx)) = (map.get("exact"), map.get("approx")) {
                let head = match map.get("ceil") {
                    Some(ceil) => format!("ceil {} = {}", scalar(ceil), scalar(exact)),
                    None => scalar(exact),
                };
                out.push((prefix.to_string(), format!("{head} (~{})", scalar(approx))));
                return;
            }
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn columns(rows: &[Value]) -> String {
    let mut header: Vec<String> = Vec::new();
    let mut cells: Vec<Vec<(String, String)>> = Vec::new();
    for row in rows {
        let mut flat = Vec::new();
        flatten("", row, &mut flat);
        for (k, _) in &flat {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
        cells.push(flat);
    }
    let grid: Vec<Vec<String>> = cells
        .iter()
        .map(|flat| {
            header
                .iter()
                .map(|h| flat.iter().find(|(k, _)| k == h).map_or("-".into(), |(_, v)| v.clone()))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = header
        .iter()
        .enumerate()
        .map(|(i, h)| grid.iter().map(|r| r[i].len()).chain([h.len()]).max().unwrap_or(0))
        .collect();
    let line = |vals: &[String]| -> String {
        let padded: Vec<String> =
            vals.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&header);
    for r in &grid {
        out.push_str(&line(r));
    }
    out
}

/// Aligned `key  value` lines; arrays of flat objects become column tables.
pub fn table(report: &Value) -> String {
    let mut out = String::new();
    let empty = Map::new();
    let map = report.as_object().unwrap_or(&empty);
    let mut pending: Vec<(String, String)> = Vec::new();
    let flush = |pending: &mut Vec<(String, String)>, out: &mut String| {
        let width = pending.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in pending.drain(..) {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
    };
    for (key, value) in map {
        match value {
            Value::Array(rows) if !rows.is_empty() && rows.iter().all(is_flat_object) => {
                flush(&mut pending, &mut out);
                out.push_str(&format!("{key}:\n"));
                out.push_str(&columns(rows));
            }
            _ => flatten(key, value, &mut pending),
        }
    }
    flush(&mut pending, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals() {
        assert_eq!(decimal(Rational::new(7, 2)), "3.500000");
        assert_eq!(decimal(Rational::new(1, 3)), "0.333333");
        assert_eq!(decimal(Rational::new(2, 3)), "0.666667");
        assert_eq!(decimal(Rational::new(-1, 8)), "-0.125000");
        assert_eq!(decimal(Rational::from_integer(105)), "105.000000");
    }

    #[test]
    fn table_flattens_exact_values() {
        let v = json!({ "a": 1, "b": { "c": rational(Rational::new(7, 2)) }, "d": null });
        assert_eq!(table(&v), "a    1\nb.c  7/2 (~3.500000)\nd    -\n");
    }

    #[test]
    fn arrays_become_columns() {
        let v = json!({ "cells": [ { "n": 2, "ratio": "1" }, { "n": 10, "ratio": "3/2" } ] });
        assert_eq!(table(&v), "cells:\n n  ratio\n 2      1\n10    3/2\n");
    }
}
