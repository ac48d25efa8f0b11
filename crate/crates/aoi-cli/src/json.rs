//! Output formatting with a fixed contract: JSON objects keep their
//! insertion order and every floating-point number is printed with 12
//! significant digits, locale-independently. `serde_json` is still used on
//! the *input* side; on the output side the byte-stability guarantee calls
//! for full control over ordering and number layout, hence this small
//! purpose-built emitter.

use std::fmt::Write as _;

/// Formats `v` with 12 significant digits. Fixed-point notation is used for
/// decimal exponents in [-4, 11], scientific (`1.5e-7`) outside; trailing
/// zeros in the fraction are trimmed, so round values stay short ("2", not
/// "2.00000000000"). Negative zero prints as "0".
pub fn fmt_sig12(v: f64) -> String {
    fmt_sig(v, 12)
}

/// [`fmt_sig12`] with a configurable significant-digit count (1..=17);
/// the shorter widths serve plot tick labels.
pub fn fmt_sig(v: f64, sig: usize) -> String {
    assert!((1..=17).contains(&sig));
    if v == 0.0 {
        return "0".to_string();
    }
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }

    // `{:.*e}` renders a mantissa with exactly `sig` significant digits and a
    // correctly carried exponent (e.g. 0.09999… rounds to "1.00000000000e-1").
    let sci = format!("{:.*e}", sig - 1, v.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent always present");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };

    let sign = if v < 0.0 { "-" } else { "" };
    let body = if (-4..12).contains(&exp) {
        if exp >= 0 {
            let int_len = exp as usize + 1;
            if digits.len() <= int_len {
                format!("{digits:0<int_len$}")
            } else {
                format!("{}.{}", &digits[..int_len], &digits[int_len..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        }
    } else if digits.len() == 1 {
        format!("{digits}e{exp}")
    } else {
        format!("{}.{}e{exp}", &digits[..1], &digits[1..])
    };
    format!("{sign}{body}")
}

/// A JSON value that renders with insertion-ordered object keys and
/// [`fmt_sig12`] numbers.
pub enum JsonValue {
    Num(f64),
    Int(u64),
    Str(String),
    Null,
    Obj(Vec<(&'static str, JsonValue)>),
}

impl JsonValue {
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            Self::Num(v) => {
                let s = fmt_sig12(*v);
                // JSON has no inf/nan literals; a solver that produced one
                // has already failed louder upstream, but stay well-formed.
                if s.contains('n') || s.contains("inf") {
                    let _ = write!(out, "null");
                } else {
                    let _ = write!(out, "{s}");
                }
            }
            Self::Int(v) => {
                let _ = write!(out, "{v}");
            }
            Self::Str(s) => write_escaped(out, s),
            Self::Null => out.push_str("null"),
            Self::Obj(fields) => {
                out.push('{');
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_escaped(out, key);
                    out.push(':');
                    value.write(out);
                }
                out.push('}');
            }
        }
    }
}

fn write_escaped(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}
