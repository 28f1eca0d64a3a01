//! Browser bindings. Each export takes and returns JSON strings; the
//! `*_json` functions hold the logic so they can be tested natively.

use mrlai_core::classify::{self, Grid};
use mrlai_core::corpus::{self, Overrides};
use mrlai_core::orders::{self, OrderKind};
use mrlai_core::{mrlai, Convention, Dist, DistSpec};
use serde::Deserialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

#[derive(Deserialize)]
struct GridRequest {
    t_min: f64,
    t_max: f64,
    #[serde(default = "default_points")]
    n: usize,
    #[serde(default)]
    conv: Convention,
}

fn default_points() -> usize {
    200
}

fn parse<T: for<'de> Deserialize<'de>>(what: &str, text: &str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| format!("{what}: {e}"))
}

fn build(what: &str, text: &str) -> Result<Dist, String> {
    let spec = DistSpec::from_json(text).map_err(|e| format!("{what}: {e}"))?;
    Dist::build(&spec).map_err(|e| format!("{what}: {e}"))
}

fn grid(req: &GridRequest) -> Result<Grid, String> {
    Grid::linear(req.t_min, req.t_max, req.n).map_err(|e| e.to_string())
}

/// Profile and ageing verdicts of one distribution.
pub fn curve_json(spec: &str, request: &str) -> Result<String, String> {
    let d = build("spec", spec)?;
    let req: GridRequest = parse("grid", request)?;
    let g = grid(&req)?;
    let profile = mrlai::profile(&d, &g.points(), req.conv).map_err(|e| e.to_string())?;
    let classes = classify::classify_all(&d, &g, req.conv).map_err(|e| e.to_string())?;
    Ok(json!({ "profile": profile, "classes": classes }).to_string())
}

/// Every order verdict of `X` against `Y`, plus both MRLAI curves.
pub fn compare_json(x: &str, y: &str, request: &str) -> Result<String, String> {
    let (dx, dy) = (build("X", x)?, build("Y", y)?);
    let req: GridRequest = parse("grid", request)?;
    let g = grid(&req)?;
    let mut verdicts = Vec::new();
    for k in OrderKind::ALL {
        let v = if k == OrderKind::Mrlai {
            orders::compare(&dx, &dy, &g, req.conv, orders::DEFAULT_TOL)
        } else {
            orders::order(k, &dx, &dy, &g, req.conv, orders::DEFAULT_TOL)
        };
        verdicts.push(match v {
            Ok(v) => serde_json::to_value(v).map_err(|e| e.to_string())?,
            Err(e) => json!({ "order": k.name(), "relation": "undefined", "note": e.to_string() }),
        });
    }
    let ts = g.points();
    let lx = mrlai::profile(&dx, &ts, req.conv).map_err(|e| e.to_string())?.l;
    let ly = mrlai::profile(&dy, &ts, req.conv).map_err(|e| e.to_string())?.l;
    Ok(json!({ "t": ts, "L_x": lx, "L_y": ly, "verdicts": verdicts }).to_string())
}

/// The corpus report for a comma-separated glob filter; empty means all.
pub fn corpus_json(filter: &str) -> Result<String, String> {
    let filter = Some(filter.trim()).filter(|f| !f.is_empty());
    corpus::reproduce(filter, &Overrides::default())
        .map(|r| r.to_json())
        .map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn curve(spec: &str, request: &str) -> Result<String, JsValue> {
    curve_json(spec, request).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn compare(x: &str, y: &str, request: &str) -> Result<String, JsValue> {
    compare_json(x, y, request).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn reproduce(filter: &str) -> Result<String, JsValue> {
    corpus_json(filter).map_err(|e| JsValue::from_str(&e))
}
