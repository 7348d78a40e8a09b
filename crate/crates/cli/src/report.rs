//! JSON rendering of core results. Numbers that may exceed 64 bits are
//! written as decimal strings; nothing is ever a float.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use sponge_core::enumerative::{HilbertSeries, IntPoly};
use sponge_core::{ExtendedFVector, HomologyProfile};

pub fn big(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn bigs(ns: &[BigInt]) -> Value {
    Value::Array(ns.iter().map(big).collect())
}

pub fn profile(h: &HomologyProfile) -> Value {
    let groups: Vec<Value> = h
        .degrees()
        .filter(|&d| !h.at(d).is_zero())
        .map(|d| {
            let g = h.at(d);
            json!({
                "degree": d,
                "free_rank": g.free_rank,
                "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Value::Array(groups)
}

pub fn poly(p: &IntPoly) -> Value {
    json!({ "coefficients": bigs(p.coefficients()), "text": p.to_string() })
}

pub fn series(s: &HilbertSeries) -> Value {
    json!({
        "numerator": bigs(s.numerator.coefficients()),
        "denominator_power": s.denominator_power,
        "expansion": bigs(&s.expand(10)),
    })
}

pub fn fvector(fv: &ExtendedFVector) -> Value {
    json!({ "n": fv.n, "f": fv.f, "b": fv.b, "text": fv.to_string() })
}
