//! Browser bindings. Every export returns a JSON string; errors come back as
//! thrown strings.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use spindla::decomposition::analyze;
use spindla::model::{build_ghz_closure, ModelParams};
use spindla::symgroup::{hook_length, num_standard_tableaux, partitions, subspace_dim};
use spindla::RegisterSpec;

/// Closures get slow in a single browser thread beyond this.
pub const MAX_QUBITS: usize = 5;

/// `n!` fits in 128 bits up to here.
pub const MAX_DIMS_N: usize = 30;

#[derive(Serialize)]
pub struct DimsRow {
    pub partition: String,
    pub syt: usize,
    pub hook: String,
    pub dim: usize,
}

#[derive(Serialize)]
pub struct DimsTable {
    pub n: usize,
    pub rows: Vec<DimsRow>,
    pub total: String,
    pub largest: usize,
}

pub fn analyze_json(nc: usize, np: usize, gamma_c: f64, gamma_p: f64, seed: u64) -> Result<String, String> {
    if !(1..=2).contains(&nc) {
        return Err(format!("n_c must be 1 or 2, got {nc}"));
    }
    let reg = RegisterSpec::with_cap(nc, np, MAX_QUBITS).map_err(|e| e.to_string())?;
    let p = ModelParams::new(reg, gamma_c, gamma_p).map_err(|e| e.to_string())?;
    let report = analyze(&p, seed).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

pub fn dims_table(n: usize) -> Result<DimsTable, String> {
    if n == 0 || n > MAX_DIMS_N {
        return Err(format!("n must lie in 1..={MAX_DIMS_N}, got {n}"));
    }
    let mut total: u128 = 0;
    let rows: Vec<DimsRow> = partitions(n)
        .into_iter()
        .map(|shape| {
            let (syt, dim) = (num_standard_tableaux(&shape), subspace_dim(&shape));
            total += syt as u128 * dim as u128;
            DimsRow { partition: shape.to_string(), syt, hook: hook_length(&shape).to_string(), dim }
        })
        .collect();
    let largest = rows.iter().map(|r| r.dim).max().unwrap_or(0);
    Ok(DimsTable { n, rows, total: total.to_string(), largest })
}

pub fn ghz_dim(n: usize) -> Result<usize, String> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(format!("n must lie in 2..={MAX_QUBITS}, got {n}"));
    }
    build_ghz_closure(n).map(|b| b.dim()).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = analyze)]
pub fn analyze_js(nc: usize, np: usize, gamma_c: f64, gamma_p: f64, seed: u32) -> Result<String, JsError> {
    analyze_json(nc, np, gamma_c, gamma_p, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = dims)]
pub fn dims_js(n: usize) -> Result<String, JsError> {
    let table = dims_table(n).map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&table).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = ghzClosureDim)]
pub fn ghz_closure_dim_js(n: usize) -> Result<usize, JsError> {
    ghz_dim(n).map_err(|e| JsError::new(&e))
}
