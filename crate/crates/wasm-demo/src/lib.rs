//! Browser bindings: component counts for small pairs, a sweep curve at
//! fixed offsets, and step-by-step replay of certificate cases. Each
//! export takes and returns plain strings; results are JSON.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use fsgraph::bigraph::parse_bg;
use fsgraph::cert::{builtin_corpus, parse_gadget, verify_certificate, GadgetCase};
use fsgraph::fs::{fs_component_count_with, CountOptions};
use fsgraph::random_lab::{sweep, SweepConfig, SweepRow};

/// Largest `2r` counted in the page; 8! states stay interactive.
pub const DEMO_CAP: usize = 8;

pub const DEMO_OFFSETS: [f64; 7] = [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0];

#[derive(Debug, Serialize)]
pub struct Components {
    pub r: usize,
    pub component_count: u64,
    pub component_sizes: Vec<u64>,
    pub parity_split: (u64, u64),
}

pub fn components(x_bg: &str, y_bg: &str) -> Result<Components, String> {
    let x = parse_bg(x_bg, "X").map_err(|e| e.to_string())?;
    let y = parse_bg(y_bg, "Y").map_err(|e| e.to_string())?;
    let rep = fs_component_count_with(&x, &y, &CountOptions { cap: DEMO_CAP, workers: Some(1) })
        .map_err(|e| e.to_string())?;
    Ok(Components {
        r: rep.r,
        component_count: rep.component_count,
        component_sizes: rep.component_sizes,
        parity_split: rep.parity_split,
    })
}

#[derive(Debug, Serialize)]
pub struct CurvePoint {
    pub c: f64,
    #[serde(flatten)]
    pub row: SweepRow,
}

pub fn sweep_curve(r: usize, samples: u64, seed: u64) -> Result<Vec<CurvePoint>, String> {
    let cfg = SweepConfig::from_offsets(r, &DEMO_OFFSETS, samples, seed);
    let rows = sweep(&cfg, Some(1)).map_err(|e| e.to_string())?;
    Ok(DEMO_OFFSETS.iter().zip(rows).map(|(&c, row)| CurvePoint { c, row }).collect())
}

#[derive(Debug, Serialize)]
pub struct Frame {
    pub step: usize,
    /// The swap just made, e.g. "uw"; empty for the start.
    pub swap: String,
    /// Token name at each position; position `i` is the home of token `i`.
    pub placement: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Replay {
    pub name: String,
    pub tokens: Vec<String>,
    pub y_edges: Vec<String>,
    pub x_edges: Vec<String>,
    pub choice_groups: usize,
    pub instantiations: usize,
    pub accepted: bool,
    pub frames: Vec<Frame>,
}

/// `source` is either a built-in case name or the text of a case file.
pub fn replay(source: &str) -> Result<Replay, String> {
    let case = match builtin_corpus().into_iter().find(|c| c.name == source.trim()) {
        Some(c) => c,
        None => parse_gadget(source, "case").map_err(|e| e.to_string())?,
    };
    let verdict = verify_certificate(&case).map_err(|e| e.to_string())?;
    Ok(Replay {
        frames: frames(&case),
        name: case.name.clone(),
        tokens: case.tokens.clone(),
        y_edges: case.y_edges.iter().map(|&p| case.pair_text(p)).collect(),
        x_edges: case.x_edges.iter().map(|&p| case.pair_text(p)).collect(),
        choice_groups: case.choices.len(),
        instantiations: verdict.instantiations_checked,
        accepted: verdict.accepted,
    })
}

fn frames(case: &GadgetCase) -> Vec<Frame> {
    let k = case.k();
    let mut token_at: Vec<usize> = (0..k).collect();
    let names = |t: &[usize]| t.iter().map(|&i| case.tokens[i].clone()).collect();
    let mut out = vec![Frame { step: 0, swap: String::new(), placement: names(&token_at) }];
    for (i, &(a, b)) in case.sequence.0.iter().enumerate() {
        let pa = token_at.iter().position(|&t| t == a).expect("token placed");
        let pb = token_at.iter().position(|&t| t == b).expect("token placed");
        token_at.swap(pa, pb);
        out.push(Frame { step: i + 1, swap: case.pair_text((a, b)), placement: names(&token_at) });
    }
    out
}

pub fn case_names() -> Vec<String> {
    builtin_corpus().into_iter().map(|c| c.name).collect()
}

fn to_json<T: Serialize>(v: Result<T, String>) -> Result<String, JsValue> {
    v.and_then(|v| serde_json::to_string(&v).map_err(|e| e.to_string()))
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = countComponents)]
pub fn count_components_js(x_bg: &str, y_bg: &str) -> Result<String, JsValue> {
    to_json(components(x_bg, y_bg))
}

#[wasm_bindgen(js_name = sweepCurve)]
pub fn sweep_curve_js(r: usize, samples: u32, seed: u32) -> Result<String, JsValue> {
    to_json(sweep_curve(r, samples.into(), seed.into()))
}

#[wasm_bindgen(js_name = replayCase)]
pub fn replay_js(source: &str) -> Result<String, JsValue> {
    to_json(replay(source))
}

#[wasm_bindgen(js_name = caseNames)]
pub fn case_names_js() -> String {
    serde_json::to_string(&case_names()).expect("strings serialize")
}
