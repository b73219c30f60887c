//! JSON rendering with fixed 17-significant-digit floats, and the serde
//! adapters that give complex numbers their {"re", "im"} shape.

use crate::{Error, Result, C64};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use std::fmt::Write;

/// 17 significant digits in exponent form; round-trips exactly.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".into()
    }
}

/// Same digits for CSV cells, where non-finite values are spelled out.
pub fn fmt_f64_csv(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize, pretty: bool) {
    let pad = |out: &mut String, n: usize| {
        if pretty {
            out.push('\n');
            out.push_str(&"  ".repeat(n));
        }
    };
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&fmt_f64(n.as_f64().unwrap_or(f64::NAN)));
            } else {
                let _ = write!(out, "{n}");
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).unwrap_or_default()),
        Value::Array(a) => {
            if a.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                pad(out, indent + 1);
                write_value(out, x, indent + 1, pretty);
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(m) => {
            if m.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (i, (k, x)) in m.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                pad(out, indent + 1);
                out.push_str(&serde_json::to_string(k).unwrap_or_default());
                out.push(':');
                if pretty {
                    out.push(' ');
                }
                write_value(out, x, indent + 1, pretty);
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

/// Indented rendering, LF line endings, trailing newline.
pub fn render_pretty(v: &Value) -> String {
    let mut s = String::new();
    write_value(&mut s, v, 0, true);
    s.push('\n');
    s
}

/// Single-line rendering (no trailing newline).
pub fn render_line(v: &Value) -> String {
    let mut s = String::new();
    write_value(&mut s, v, 0, false);
    s
}

pub fn to_value<T: Serialize>(t: &T) -> Result<Value> {
    serde_json::to_value(t).map_err(|e| Error::Domain(format!("cannot serialize report: {e}")))
}

pub fn complex_value(z: C64) -> Value {
    serde_json::json!({ "re": z.re, "im": z.im })
}

/// Parses "a+bi", "a-bi", "bi", "a", "i", "-2.5e-3+1e2i" and friends.
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Domain(format!("not a complex literal: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t.parse::<f64>().map(|x| C64::new(x, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    let imag = |p: &str| -> Result<f64> {
        match p {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => p.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(i) => {
            let re = body[..i].parse::<f64>().map_err(|_| bad())?;
            Ok(C64::new(re, imag(&body[i..])?))
        }
        None => Ok(C64::new(0.0, imag(body)?)),
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    re: Option<f64>,
    im: Option<f64>,
}

impl Repr {
    fn get(self) -> C64 {
        C64::new(self.re.unwrap_or(f64::NAN), self.im.unwrap_or(f64::NAN))
    }
}

/// Accepts {"re","im"}, a bare number or an "a+bi" string.
#[derive(Deserialize)]
#[serde(untagged)]
enum Loose {
    Obj(Repr),
    Num(f64),
    Str(String),
}

impl Loose {
    fn get<E: serde::de::Error>(self) -> std::result::Result<C64, E> {
        match self {
            Loose::Obj(r) => Ok(r.get()),
            Loose::Num(x) => Ok(C64::new(x, 0.0)),
            Loose::Str(s) => parse_complex(&s).map_err(E::custom),
        }
    }
}

/// serde adapter: C64 as {"re", "im"}; null components read back as NaN.
pub mod cplx {
    use super::*;

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr { re: Some(z.re), im: Some(z.im) }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<C64, D::Error> {
        Loose::deserialize(d)?.get()
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(z: &Option<C64>, s: S) -> std::result::Result<S::Ok, S::Error> {
            z.map(|z| Repr { re: Some(z.re), im: Some(z.im) }).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<C64>, D::Error> {
            Option::<Loose>::deserialize(d)?.map(Loose::get).transpose()
        }
    }
}

/// serde adapter: f64 whose NaN is written as null and read back as NaN.
pub mod real {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(*x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}
