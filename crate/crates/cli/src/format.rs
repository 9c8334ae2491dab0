//! Number formatting shared by every CSV writer.

/// Formats `x` like C's `%.9g`: nine significant digits, trailing zeros
/// dropped, scientific notation outside `1e-4 <= |x| < 1e9`.
pub fn sig9(x: f64) -> String {
    sig(x, 9)
}

pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    // rounding to `digits` can carry into a new decade, so take the exponent
    // from the rounded scientific form
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{}{:02}", trim(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
