//! Browser bindings: norm forms, prime splitting and representability.
//!
//! Each export takes a bundled spec name or spec JSON text and returns JSON.
//! The plain functions in [`api`] carry the logic so they run natively too.

use wasm_bindgen::prelude::*;

pub mod api {
    use normlab_core::arith::{primes_in, PrimeRange};
    use normlab_core::bundled;
    use normlab_core::field::{validate, FieldSpec, NormFormHandle};
    use normlab_core::represent::{is_norm_integer, is_norm_prime};
    use normlab_core::splitting::{class_of, splitting_type};
    use serde_json::{json, Value};

    /// Widest prime range one call may scan.
    pub const MAX_SPLIT_RANGE: u64 = 1_000_000;

    fn spec(text: &str) -> Result<FieldSpec, String> {
        let t = text.trim();
        if t.starts_with('{') {
            FieldSpec::from_json(t).map_err(|e| e.to_string())
        } else {
            bundled::spec(t).map_err(|e| e.to_string())
        }
    }

    fn handle(text: &str) -> Result<NormFormHandle, String> {
        validate(spec(text)?)
            .and_then(|k| k.norm_form())
            .map_err(|e| e.to_string())
    }

    pub fn bundled_names() -> String {
        Value::from(bundled::names().collect::<Vec<_>>()).to_string()
    }

    pub fn norm_form(text: &str) -> Result<String, String> {
        let h = handle(text)?;
        Ok(json!({
            "label": h.field.label(),
            "degree": h.degree(),
            "form": h.to_string(),
            "warnings": h.field.warnings(),
        })
        .to_string())
    }

    pub fn split_range(text: &str, lo: u64, hi: u64) -> Result<String, String> {
        if hi < lo || hi - lo > MAX_SPLIT_RANGE {
            return Err(format!("range must be ascending and at most {MAX_SPLIT_RANGE} wide"));
        }
        let k = validate(spec(text)?).map_err(|e| e.to_string())?;
        let mut rows = Vec::new();
        for p in primes_in(PrimeRange::new(lo, hi)) {
            let st = splitting_type(&k, p, 0).map_err(|e| e.to_string())?;
            rows.push(json!({ "p": p, "pairs": st.pairs, "class": class_of(&st) }));
        }
        Ok(Value::from(rows).to_string())
    }

    pub fn represent(text: &str, n: u64, prime: bool) -> Result<String, String> {
        let h = handle(text)?;
        let v = if prime { is_norm_prime(&h, n, 0) } else { is_norm_integer(&h, n, 0) }.map_err(|e| e.to_string())?;
        Ok(json!({ "n": n, "verdict": v.answer, "witness": v.witness, "route": v.route }).to_string())
    }
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = bundledNames)]
pub fn bundled_names() -> String {
    api::bundled_names()
}

#[wasm_bindgen(js_name = normForm)]
pub fn norm_form(spec: &str) -> Result<String, JsValue> {
    js(api::norm_form(spec))
}

#[wasm_bindgen(js_name = splitRange)]
pub fn split_range(spec: &str, lo: u32, hi: u32) -> Result<String, JsValue> {
    js(api::split_range(spec, lo.into(), hi.into()))
}

#[wasm_bindgen]
pub fn represent(spec: &str, n: u32, prime: bool) -> Result<String, JsValue> {
    js(api::represent(spec, n.into(), prime))
}
