//! Browser bindings for the demo page in `www/`.
//!
//! Each export returns a JSON string; errors come back as `{"error": ...}`
//! so the page only has one shape to handle.

use biquad::family::{final_family, ParamPoint};
use biquad::quartic::{build_quartics, tangent_variants, verify_square_point};
use biquad::search::{enumerate_pairs, SearchConfig};
use biquad::{FamilyParams, MonicQuartic, Rational};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest bound the page may search; bigger ones stall the tab.
pub const MAX_SEARCH_BOUND: u32 = 200;

fn to_text(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

pub fn family_member(a: i64, b: i64) -> Result<Value, String> {
    let pt = ParamPoint::new(a, b).map_err(|e| e.to_string())?;
    let m = final_family(&pt).map_err(|e| e.to_string())?;
    let strs = |v: &[num_bigint::BigInt; 3]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    Ok(json!({
        "pair": m.pair,
        "x": strs(&m.roots.x),
        "y": strs(&m.roots.y),
        "t": m.t.map(|t| t.to_string()),
        "trivial": m.trivial,
    }))
}

fn samples(f: &MonicQuartic, lo: f64, hi: f64, n: usize) -> Vec<[f64; 2]> {
    let n = n.clamp(2, 2000);
    (0..n)
        .map(|i| {
            let t = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            let c = |r: &Rational| r.to_f64();
            let v = (((t + c(&f.c3)) * t + c(&f.c2)) * t + c(&f.c1)) * t + c(&f.c0);
            [t, v]
        })
        .collect()
}

/// Curve `which` (1 or 2) for `(p, q, r)`, its distinguished point, the
/// tangent points from it, and `n` samples of `f(t)` on `[lo, hi]`.
pub fn quartic_view(
    p: i64,
    q: i64,
    r: i64,
    which: u8,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Value, String> {
    let params = FamilyParams::from_i64s(p, q, r).map_err(|e| e.to_string())?;
    let (q1, q2) = build_quartics(&params).map_err(|e| e.to_string())?;
    let (f, t) = match which {
        1 => (q1, biquad::family::t_candidate_1(&params)),
        2 => (q2, biquad::family::t_candidate_2(&params)),
        _ => return Err("curve must be 1 or 2".into()),
    };
    let t = t.map_err(|e| e.to_string())?;
    let point = verify_square_point(&f, &t).ok_or("candidate is not on the curve")?;
    let tangents: Vec<Value> = if point.y.is_zero() {
        Vec::new()
    } else {
        tangent_variants(&f, &point)
            .into_iter()
            .filter_map(|v| v.outcome.ok().flatten())
            .map(|p| json!({ "t": p.t, "y": p.y, "tf": p.t.to_f64(), "yf": p.y.to_f64() }))
            .collect()
    };
    Ok(json!({
        "curve": f,
        "point": { "t": point.t, "y": point.y, "tf": point.t.to_f64(), "yf": point.y.to_f64() },
        "tangents": tangents,
        "samples": samples(&f, lo, hi, n),
    }))
}

pub fn small_search(max: u32) -> Result<Value, String> {
    if max == 0 || max > MAX_SEARCH_BOUND {
        return Err(format!("bound must be between 1 and {MAX_SEARCH_BOUND}"));
    }
    let report = enumerate_pairs(&SearchConfig::new(max));
    Ok(json!({ "pairs": report.pairs, "triads_enumerated": report.triads_enumerated }))
}

#[wasm_bindgen]
pub fn generate(a: i32, b: i32) -> String {
    to_text(family_member(a.into(), b.into()))
}

#[wasm_bindgen]
pub fn quartic(p: i32, q: i32, r: i32, which: u8, lo: f64, hi: f64, n: usize) -> String {
    to_text(quartic_view(p.into(), q.into(), r.into(), which, lo, hi, n))
}

#[wasm_bindgen]
pub fn search(max: u32) -> String {
    to_text(small_search(max))
}
