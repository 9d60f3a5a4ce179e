//! Browser bindings. Each export takes a word in the `a, b, A, B, [x,y], ^n`
//! syntax and returns a JSON string; errors come back as a thrown string.

use fkt_core::certificate::{certify, Level};
use fkt_core::geometry::{build_link_curves, pl_linking_number, PLCurve};
use fkt_core::word::{magnus_expansion, milnor_invariants, unlink_criterion, Word};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Magnus terms shown on the page stop at this degree.
const SHOWN_DEGREE: usize = 3;

fn parse(phi: &str) -> Result<Word, String> {
    Word::parse(phi).map_err(|e| e.to_string())
}

fn approx(c: &PLCurve) -> Vec<Vec<f64>> {
    c.points.iter().map(|p| p.to_f64()).collect()
}

pub fn invariants_json(phi: &str) -> Result<String, String> {
    let w = parse(phi)?;
    let inv = milnor_invariants(&w);
    Ok(json!({
        "phi": w.to_string(),
        "exp": [inv.exp_a, inv.exp_b],
        "lcs_depth": inv.lcs_depth,
        "mu12": inv.mu12,
        "magnus": magnus_expansion(&w, SHOWN_DEGREE).to_string(),
        "unlink_criterion": unlink_criterion(&w),
    })
    .to_string())
}

pub fn link_json(phi: &str) -> Result<String, String> {
    let w = parse(phi)?;
    let c = build_link_curves(&w);
    let lk = |a: &PLCurve, b: &PLCurve| pl_linking_number(a, b).map_err(|e| e.to_string());
    Ok(json!({
        "phi": w.to_string(),
        "g1": approx(&c.g1),
        "g2": approx(&c.g2),
        "g3": approx(&c.g3),
        "lk_g1_g2": lk(&c.g1, &c.g2)?,
        "lk_g3_g1": lk(&c.g3, &c.g1)?,
        "lk_g3_g2": lk(&c.g3, &c.g2)?,
    })
    .to_string())
}

pub fn certificate_json(phi: &str, level: &str, seed: u64) -> Result<String, String> {
    let w = parse(phi)?;
    let level: Level = level.parse()?;
    let cert = certify(&w, level, seed).map_err(|e| e.to_string())?;
    Ok(cert.to_json_string())
}

#[wasm_bindgen]
pub fn invariants(phi: &str) -> Result<String, JsValue> {
    invariants_json(phi).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn link(phi: &str) -> Result<String, JsValue> {
    link_json(phi).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn certificate(phi: &str, level: &str, seed: u32) -> Result<String, JsValue> {
    certificate_json(phi, level, seed.into()).map_err(|e| JsValue::from_str(&e))
}
