//! Three operations for the static page in `www/`. Each takes and returns
//! the CLI's text formats; the `*_text` functions are the native entry points.

use dwl_epc::coherent::refine;
use dwl_epc::dwl::DwlTrace;
use dwl_epc::pipeline::{refute, RefuteError};
use dwl_epc::sketch::sketch;
use dwl_epc::structures::{cfi_pair, Structure};
use wasm_bindgen::prelude::*;

fn parse(label: &str, text: &str) -> Result<Structure, String> {
    Structure::parse(text).map_err(|e| format!("{label}: {e}"))
}

/// Sketch of the stable colouring of one structure.
pub fn sketch_text(graph: &str) -> Result<String, String> {
    let s = parse("graph", graph)?;
    Ok(sketch(&s, &refine(&s)).to_text())
}

/// CFI companion of a base graph in structure text form.
pub fn cfi_text(base: &str, twist: bool, ordered: bool) -> Result<String, String> {
    let (_, s) = cfi_pair(&parse("base", base)?, twist, ordered).map_err(|e| e.to_string())?;
    Ok(s.to_text())
}

/// Report followed by the proof text, or a `NOT_DISTINGUISHED` line.
pub fn refute_text(g: &str, h: &str, trace: &str) -> Result<String, String> {
    let (g, h) = (parse("G", g)?, parse("H", h)?);
    let trace = DwlTrace::parse(trace).map_err(|e| format!("trace: {e}"))?;
    match refute(&g, &h, &trace) {
        Ok(r) => Ok(format!("outcome REFUTED\n{}\n{}", r.report(), r.proof.to_text())),
        Err(RefuteError::NotDistinguished) => Ok("outcome NOT_DISTINGUISHED\n".to_string()),
        Err(e) => Err(e.to_string()),
    }
}

#[wasm_bindgen(js_name = sketch)]
pub fn sketch_js(graph: &str) -> Result<String, JsError> {
    sketch_text(graph).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = cfi)]
pub fn cfi_js(base: &str, twist: bool, ordered: bool) -> Result<String, JsError> {
    cfi_text(base, twist, ordered).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = refute)]
pub fn refute_js(g: &str, h: &str, trace: &str) -> Result<String, JsError> {
    refute_text(g, h, trace).map_err(|e| JsError::new(&e))
}
