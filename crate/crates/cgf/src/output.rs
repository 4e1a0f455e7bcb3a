//! Number formatting and JSON/CSV/b-file encoders.

use cgf_core::forms::{CycloForm, NecessaryReport, RationalForm};
use cgf_core::stats::{rat_to_f64, Rat};
use cgf_core::IntPoly;
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// Significant digits for every printed float.
pub const SIG_DIGITS: usize = 12;

/// `x` rounded to twelve significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest decimal text of `x` rounded to twelve significant digits.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(x);
    if r == 0.0 {
        return "0".into();
    }
    let mag = r.abs();
    if (1e-6..1e15).contains(&mag) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Float as a JSON number, `null` when not finite.
pub fn float_json(x: f64) -> Value {
    json!(round_sig(x))
}

/// Exact rational as `p/q`.
pub fn rat_str(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn ubig_json(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// Coefficients low to high.
pub fn poly_json(p: &IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(big_json).collect())
}

pub fn rational_json(rf: &RationalForm) -> Value {
    json!({
        "alpha": ubig_json(&rf.alpha),
        "beta": rf.beta,
        "numer": rf.numer,
        "denom": rf.denom,
    })
}

pub fn cyclo_json(cf: &CycloForm) -> Value {
    json!({
        "alpha": ubig_json(&cf.alpha),
        "beta": cf.beta,
        "indices": cf.indices,
    })
}

/// `{"d", "num", "den", "float"}` for one indexed exact value.
pub fn indexed_rat_json(d: u32, x: &Rat) -> Value {
    json!({
        "d": d,
        "num": x.numer().to_string(),
        "den": x.denom().to_string(),
        "float": float_json(rat_to_f64(x)),
    })
}

pub fn necessary_json(r: &NecessaryReport) -> Value {
    json!({
        "span": r.span_ok,
        "ends": r.ends_ok,
        "variance_bounds": r.variance_bounds_ok,
        "kurtosis": r.kurtosis_ok,
        "power_sums": r.power_sums_ok.iter().map(|&(d, ok)| json!({"d": d, "ok": ok})).collect::<Vec<_>>(),
        "majorization": r.majorization_ok,
        "gale": r.gale_ok,
        "pointwise": r.pointwise_ok,
        "mandatory_ok": r.mandatory_ok(),
    })
}

/// Pretty JSON followed by a newline.
pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// CSV text from a header and string rows.
pub fn csv_text(header: &[&str], rows: &[Vec<String>]) -> crate::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("CSV of ASCII fields is UTF-8"))
}

/// OEIS b-file: one `n a(n)` line per term.
pub fn bfile_text(terms: &[(u64, usize)]) -> String {
    terms.iter().map(|(n, a)| format!("{n} {a}\n")).collect()
}
