//! Report assembly and canonical JSON rendering.
//!
//! Every command produces a `Report`: a human-readable transcript plus a
//! JSON document with the tool version, a digest of the input spec, the
//! effective parameters, and structured results. The JSON is canonical
//! in the byte sense: keys are sorted, rationals are rendered as `p/q`
//! strings, and nothing in it depends on wall-clock time or hash-map
//! iteration order, so repeated runs of the same command on the same
//! input produce identical bytes.
//!
//! Witnesses are serialized as explicit canonical words rather than
//! opaque prose so that a verdict of `fails` can be replayed against a
//! freshly built ball.

use rlcm_core::ball::{Ball, CancellationWitness, ElementId, Side};
use rlcm_core::inclusions::{FactorizationWitness, OrthogonalityWitness, RespectsWitness};
use rlcm_core::lcm::{EmptyReason, LcmResult, RightLcmWitness};
use rlcm_core::matrix::{Rational, RationalMatrix};
use rlcm_core::verdict::Verdict;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub digest: String,
    pub parameters: Value,
    pub results: Value,
    /// Whether every verdict in the report holds; `--assert-holds`
    /// turns this into the exit status.
    pub all_hold: bool,
    pub human: String,
}

impl Report {
    pub fn json(&self) -> String {
        let doc = json!({
            "command": self.command,
            "input": { "sha256": self.digest },
            "parameters": self.parameters,
            "results": self.results,
            "tool": { "name": "rlcm", "version": env!("CARGO_PKG_VERSION") },
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("reports are plain trees");
        out.push('\n');
        out
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        use std::fmt::Write;
        write!(out, "{byte:02x}").expect("writing to a string");
    }
    out
}

pub fn rational_value(r: &Rational) -> Value {
    use num_traits::One;
    if r.denom().is_one() {
        Value::String(r.numer().to_string())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn matrix_value(m: &RationalMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| rational_value(m.get(i, j))).collect()))
        .collect();
    Value::Array(rows)
}

/// Renders an element by its canonical word, `"e"` for the identity.
pub fn element_value(ball: &Ball, id: ElementId) -> Value {
    let n = ball.presentation().alphabet_size();
    Value::String(ball.element(id).canonical().symbols(n))
}

pub fn verdict_value<W>(v: &Verdict<W>, witness: impl FnOnce(&W) -> Value) -> Value {
    match v {
        Verdict::Holds => json!({ "verdict": "holds" }),
        Verdict::Fails(w) => json!({ "verdict": "fails", "witness": witness(w) }),
        Verdict::Inconclusive { bound } => {
            json!({ "verdict": "inconclusive", "bound": bound })
        }
    }
}

pub fn empty_reason_value(ball: &Ball, reason: &EmptyReason) -> Value {
    let n = ball.presentation().alphabet_size();
    match *reason {
        EmptyReason::InfiniteOrderGenerators { x, g, y, h } => json!({
            "kind": "infinite_order_generators",
            "x": element_value(ball, x),
            "g": rlcm_core::Word::generator(g).symbols(n),
            "y": element_value(ball, y),
            "h": rlcm_core::Word::generator(h).symbols(n),
        }),
    }
}

pub fn lcm_value(ball: &Ball, result: &LcmResult) -> Value {
    match result {
        LcmResult::Lcm { r } => json!({
            "kind": "lcm",
            "element": element_value(ball, *r),
            "length": ball.length_of(*r),
        }),
        LcmResult::ProvenEmpty { reason } => json!({
            "kind": "proven_empty",
            "reason": empty_reason_value(ball, reason),
        }),
        LcmResult::EmptyUpTo { bound } => json!({ "kind": "empty_up_to", "bound": bound }),
        LcmResult::InconclusiveUpTo { bound } => {
            json!({ "kind": "inconclusive_up_to", "bound": bound })
        }
    }
}

pub fn cancellation_witness_value(ball: &Ball, w: &CancellationWitness) -> Value {
    let n = ball.presentation().alphabet_size();
    json!({
        "side": match w.side { Side::Left => "left", Side::Right => "right" },
        "multiplier": w.multiplier.symbols(n),
        "x": w.x.symbols(n),
        "y": w.y.symbols(n),
    })
}

pub fn right_lcm_witness_value(ball: &Ball, w: &RightLcmWitness) -> Value {
    json!({
        "x": element_value(ball, w.x),
        "y": element_value(ball, w.y),
        "reason": empty_reason_value(ball, &w.reason),
    })
}

pub fn factorization_witness_value(ball: &Ball, w: &FactorizationWitness) -> Value {
    json!({
        "w": element_value(ball, w.w),
        "x": element_value(ball, w.x),
        "y": element_value(ball, w.y),
    })
}

pub fn orthogonality_witness_value(ball: &Ball, w: &OrthogonalityWitness) -> Value {
    json!({
        "x": element_value(ball, w.x),
        "y": element_value(ball, w.y),
        "reason": empty_reason_value(ball, &w.reason),
        "ambient_multiple": element_value(ball, w.ambient_multiple),
    })
}

pub fn respects_witness_value(ball: &Ball, w: &RespectsWitness) -> Value {
    json!({
        "x": element_value(ball, w.x),
        "y": element_value(ball, w.y),
        "stray": element_value(ball, w.stray),
    })
}
