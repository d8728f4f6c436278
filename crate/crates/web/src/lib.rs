//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! The `*_report` functions are plain Rust so they can be tested natively;
//! the exported wrappers only convert errors to `JsValue`.

use order3::catalog;
use order3::contraction::{self, ContractionExponents};
use order3::solver;
use order3::{AlgebraOrder3, GaussRational};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn parse_params(s: &str) -> Result<Vec<GaussRational>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<GaussRational>().map_err(|e| e.to_string()))
        .collect()
}

fn load(name: &str, params: &str) -> Result<AlgebraOrder3, String> {
    catalog::build(name, &parse_params(params)?).map_err(|e| e.to_string())
}

/// Names and descriptions of the catalog, as JSON.
pub fn catalog_report() -> String {
    let v: Vec<_> = catalog::CATALOG.iter().map(|(n, d)| json!({"name": n, "about": d})).collect();
    serde_json::to_string(&v).expect("serializable")
}

/// J1-J4 residual counts for a catalog algebra.
pub fn validate_report(name: &str, params: &str) -> Result<String, String> {
    let alg = load(name, params)?;
    let r = alg.jacobi_residuals();
    Ok(json!({
        "label": alg.label,
        "dims": [alg.m(), alg.n()],
        "valid": r.is_zero(),
        "residual_counts": r.counts(),
        "first_violation": r.first_violation(),
        "support": alg.support_size(),
    })
    .to_string())
}

/// Nullity of the 3-bracket equations over sl(2) for a sum like `D1+D0`.
pub fn solve_report(rep: &str) -> Result<String, String> {
    let g0 = catalog::sl2();
    let action = catalog::build_rep("sl2", rep).map_err(|e| e.to_string())?;
    let sol = solver::solve_brackets(&g0, &action).map_err(|e| e.to_string())?;
    let basis: Vec<Vec<String>> = sol
        .basis
        .iter()
        .map(|v| {
            v.iter()
                .map(|(&(a, b, c, i), x)| format!("{{Y{},Y{},Y{}}} -> ({}) X{}", a + 1, b + 1, c + 1, x, i + 1))
                .collect()
        })
        .collect();
    Ok(json!({
        "rep": rep,
        "dim": action.dim,
        "unknowns": sol.unknown_count,
        "rank": sol.rank,
        "nullity": sol.nullity,
        "basis": basis,
    })
    .to_string())
}

/// Contraction degrees and, when it exists, the limit's support.
pub fn contract_report(name: &str, params: &str, exps: &str) -> Result<String, String> {
    let alg = load(name, params)?;
    let mut ex = ContractionExponents::parse(exps).map_err(|e| e.to_string())?;
    if ex.a.len() == 1 {
        ex.a = vec![ex.a[0].clone(); alg.m()];
    }
    if ex.b.len() == 1 {
        ex.b = vec![ex.b[0].clone(); alg.n()];
    }
    let deg = contraction::ww_degrees(&alg, &ex).map_err(|e| e.to_string())?;
    let mut hist = std::collections::BTreeMap::<String, usize>::new();
    for d in deg.c.values().chain(deg.d.values()).chain(deg.e.values()) {
        *hist.entry(d.to_string()).or_default() += 1;
    }
    let limit = contraction::ww_contract(&alg, &ex).ok();
    let same_as = limit.as_ref().and_then(|l| {
        catalog::CATALOG.iter().filter(|(n, _)| !["F11", "sl2red"].contains(n)).find_map(|(n, _)| {
            let c = catalog::build(n, &[]).ok()?;
            (c.dims() == l.dims()
                && c.c_entries() == l.c_entries()
                && c.d_entries() == l.d_entries()
                && c.e_entries() == l.e_entries())
            .then(|| n.to_string())
        })
    });
    Ok(json!({
        "exponents": ex.to_string(),
        "degree_counts": hist,
        "obstruction": deg.first_negative(),
        "limit_support": limit.as_ref().map(|l| l.support_size()),
        "limit_valid": limit.as_ref().map(|l| l.is_valid()),
        "limit_is": same_as,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn catalog_json() -> String {
    catalog_report()
}

#[wasm_bindgen]
pub fn validate(name: &str, params: &str) -> Result<String, JsValue> {
    validate_report(name, params).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn solve_sl2(rep: &str) -> Result<String, JsValue> {
    solve_report(rep).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn contract(name: &str, params: &str, exps: &str) -> Result<String, JsValue> {
    contract_report(name, params, exps).map_err(|e| JsValue::from_str(&e))
}
