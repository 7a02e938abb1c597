//! wasm-bindgen exports for the static demo page in `www/`. Every export
//! takes and returns strings, so the same functions run natively in tests.

use mgce::parse_manifest;
use mgce_core::ce::{betti, ce_cohomological, ce_homological, CeSide};
use mgce_core::enveloping::{pbw_truncate, u_cone_mixed};
use mgce_core::lie::{bar_name, fixtures, validate_lie};
use mgce_core::linalg::rank;
use mgce_core::sym::Monomial;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const FIXTURES: [(&str, &str); 7] = [
    ("aff1", include_str!("../../cli/fixtures/aff1.json")),
    ("heis3", include_str!("../../cli/fixtures/heis3.json")),
    ("sl2", include_str!("../../cli/fixtures/sl2.json")),
    ("abelian_3", include_str!("../../cli/fixtures/abelian_3.json")),
    ("aff1_x_sl2", include_str!("../../cli/fixtures/aff1_x_sl2.json")),
    ("trivial_shifted", include_str!("../../cli/fixtures/trivial_shifted.json")),
    ("aff1_ext", include_str!("../../cli/fixtures/aff1_ext.json")),
];

/// Largest weight the page will compute; keeps the tab responsive.
const MAX_WEIGHT_LIMIT: usize = 6;

fn error(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn side(s: &str) -> Result<CeSide, String> {
    match s {
        "hom" => Ok(CeSide::Homological),
        "cohom" => Ok(CeSide::Cohomological),
        other => Err(format!("side must be hom or cohom, got {other:?}")),
    }
}

/// Names of the bundled manifests.
#[wasm_bindgen]
pub fn fixture_names() -> String {
    Value::from(FIXTURES.iter().map(|(n, _)| *n).collect::<Vec<_>>()).to_string()
}

/// Manifest text of a bundled fixture, or an empty string.
#[wasm_bindgen]
pub fn fixture_json(name: &str) -> String {
    FIXTURES.iter().find(|(n, _)| *n == name).map_or(String::new(), |(_, t)| t.to_string())
}

fn window(manifest: &str, max_weight: i32) -> Result<(mgce_core::lie::DgLieAlgebra, usize), String> {
    let m = parse_manifest(manifest).map_err(|e| e.to_string())?;
    let g = m.lie();
    validate_lie(&g).map_err(|v| v.to_string())?;
    let p = if max_weight < 0 { m.requests.and_then(|r| r.max_weight).unwrap_or(g.dim()) } else { max_weight as usize };
    if p > MAX_WEIGHT_LIMIT {
        return Err(format!("max weight {p} is above the demo limit {MAX_WEIGHT_LIMIT}"));
    }
    Ok((g, p))
}

/// Betti numbers of the Tate realization; a negative `max_weight` means
/// the default (`dim g`). Returns `{"betti": [[degree, dim], ...], "warnings": [...]}`.
#[wasm_bindgen]
pub fn betti_json(manifest: &str, side_name: &str, max_weight: i32) -> String {
    let run = || -> Result<Value, String> {
        let (g, p) = window(manifest, max_weight)?;
        let r = betti(&g, side(side_name)?, None, p, None).map_err(|e| e.to_string())?;
        Ok(json!({
            "max_weight": p,
            "betti": r.betti.iter().map(|(n, k)| json!([n, k])).collect::<Vec<_>>(),
            "warnings": r.warnings.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        }))
    };
    run().map_or_else(error, |v| v.to_string())
}

/// Cells of `CE_ε` or `CE^ε`: `[[weight, degree, dim, eps_rank], ...]`.
#[wasm_bindgen]
pub fn weight_table_json(manifest: &str, side_name: &str, max_weight: i32) -> String {
    let run = || -> Result<Value, String> {
        let (g, p) = window(manifest, max_weight)?;
        let module = match side(side_name)? {
            CeSide::Homological => ce_homological(&g, p).module().clone(),
            CeSide::Cohomological => ce_cohomological(&g, p).module().clone(),
        };
        let rows: Vec<Value> =
            module.cell_dims().iter().map(|(&(w, n), &k)| json!([w, n, k, rank(&module.epsilon(w, n))])).collect();
        Ok(json!({ "max_weight": p, "cells": rows }))
    };
    run().map_or_else(error, |v| v.to_string())
}

/// `ε(u ⊗ ē₁ē₂)` on `U(Cn(aff(1)))` for PBW words `u` of length `≤ 2`.
#[wasm_bindgen]
pub fn paper_example_json() -> String {
    let g = fixtures::aff1();
    let u = match u_cone_mixed(&g, 3, 2) {
        Ok(u) => u,
        Err(e) => return error(e),
    };
    let names = g.names();
    let show = |m: &Monomial, bar: bool| -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter().map(|&i| if bar { bar_name(&names[i]) } else { names[i].clone() }).collect::<Vec<_>>().join(" ")
    };
    let mut rows = Vec::new();
    for w in pbw_truncate(&g, 2).basis() {
        let terms = u.eps_of(&w, &vec![0, 1]).unwrap_or_default();
        let text: Vec<String> =
            terms.iter().map(|((a, s), c)| format!("{c} · {} ⊗ {}", show(a, false), show(s, true))).collect();
        rows.push(json!({ "u": show(&w, false), "eps": text }));
    }
    json!({ "rows": rows }).to_string()
}
