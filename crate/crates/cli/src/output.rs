//! Deterministic text formatting shared by the CSV and JSON emitters.

/// Reals are printed in scientific notation with 12 significant digits so
/// identical runs produce byte-identical files.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    let x = if x == 0.0 { 0.0 } else { x }; // normalize -0.0
    format!("{x:.11e}")
}

pub fn fmt_flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}
