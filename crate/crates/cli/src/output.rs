//! Number formatting and atomic file output.

use std::io::Write;
use std::path::Path;

use serde_json::Value;

/// Significant digits of every floating-point number the CLI prints.
pub const SIGNIFICANT_DIGITS: usize = 15;

/// `v` rounded to 15 significant digits; prints back without further loss.
pub fn round_sig(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.*e}", SIGNIFICANT_DIGITS - 1).parse().expect("formatted float parses")
}

/// Plain notation in [1e-5, 1e15), exponent notation outside it.
pub fn format_float(v: f64) -> String {
    let r = round_sig(v);
    let a = r.abs();
    if a == 0.0 || (1e-5..1e15).contains(&a) || !a.is_finite() {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Rounds every float inside a JSON tree.
pub fn round_json(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let r = round_sig(n.as_f64().expect("f64 number"));
            if let Some(num) = serde_json::Number::from_f64(r) {
                *n = num;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
