//! Browser bindings: the two-color coefficient curve, a dealing-method
//! inspector and a single three-color grid cell.
//!
//! Every export returns a JSON string. The `*_json` functions hold the logic
//! and are plain Rust so they can be tested natively.

use dealmix::exact::{format_exact, to_f64};
use dealmix::lab::{conjecture_metric, three_type_coefficient, two_type_sweep, MethodSpec};
use dealmix::DealingMethod;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn spec(text: &str) -> Result<MethodSpec, String> {
    text.trim().parse::<MethodSpec>().map_err(|e| e.to_string())
}

fn four_player(text: &str, cards: u32) -> Result<DealingMethod, String> {
    if cards == 0 || !cards.is_multiple_of(4) {
        return Err(format!("{cards} cards cannot be dealt to 4 players"));
    }
    spec(text)?.build(4, cards as usize / 4).map_err(|e| e.to_string())
}

/// `{"b": [...], "series": [{"method", "exact": [...], "float": [...]}]}`.
pub fn two_type_curve_json(cards: u32, methods: &str) -> Result<String, String> {
    let names: Vec<&str> = methods.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        return Err("no methods given".into());
    }
    let built = names.iter().map(|m| four_player(m, cards)).collect::<Result<Vec<_>, _>>()?;
    let rows = two_type_sweep(cards, &built).map_err(|e| e.to_string())?;
    let series: Vec<Value> = names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            json!({
                "method": name,
                "exact": rows.iter().map(|r| format_exact(&r.coefficients[i])).collect::<Vec<_>>(),
                "float": rows.iter().map(|r| to_f64(&r.coefficients[i])).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({ "b": rows.iter().map(|r| r.b).collect::<Vec<_>>(), "series": series }).to_string())
}

/// Position sums, the position-sum spread and the pairwise `Z` matrix of a method.
pub fn inspect_method_json(method: &str, players: usize, hand: usize) -> Result<String, String> {
    let m = spec(method)?.build(players, hand).map_err(|e| e.to_string())?;
    let metric = conjecture_metric(&m);
    Ok(json!({
        "sequence": m.to_symbols(),
        "position_sums": m.position_sums(),
        "metric": format_exact(&metric),
        "metric_float": to_f64(&metric),
        "z_matrix": m.dealing_z_matrix(),
    })
    .to_string())
}

/// Leading coefficient of the ordered deck `(b, r, cards - b - r)`.
pub fn three_type_cell_json(b: u32, r: u32, cards: u32, method: &str) -> Result<String, String> {
    let m = four_player(method, cards)?;
    let c = three_type_coefficient(b, r, cards, &m).map_err(|e| e.to_string())?;
    Ok(json!({ "b": b, "r": r, "g": cards - b - r, "exact": format_exact(&c), "float": to_f64(&c) }).to_string())
}

#[wasm_bindgen]
pub fn two_type_curve(cards: u32, methods: &str) -> Result<String, JsValue> {
    two_type_curve_json(cards, methods).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn inspect_method(method: &str, players: usize, hand: usize) -> Result<String, JsValue> {
    inspect_method_json(method, players, hand).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn three_type_cell(b: u32, r: u32, cards: u32, method: &str) -> Result<String, JsValue> {
    three_type_cell_json(b, r, cards, method).map_err(|e| JsValue::from_str(&e))
}
