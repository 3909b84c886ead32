//! Minimal deterministic JSON writer.
//!
//! Golden files depend on byte-identical output, so values are serialized by
//! hand: object fields appear in insertion order, exact integers print as
//! integers, and high-precision reals print with exactly 20 significant
//! digits (round-half-even), as produced by `BigFloat::to_decimal`.

use nct_core::BigFloat;
use num_bigint::BigInt;

#[derive(Clone, Debug)]
pub enum JVal {
    Null,
    Bool(bool),
    Int(BigInt),
    USize(usize),
    U64(u64),
    I64(i64),
    /// Pre-formatted decimal numeral (already valid JSON).
    Num(String),
    Str(String),
    Arr(Vec<JVal>),
    Obj(Vec<(&'static str, JVal)>),
}

impl JVal {
    pub fn real(x: &BigFloat) -> JVal {
        JVal::Num(x.to_decimal(20))
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        self.write(&mut s);
        s
    }

    fn write(&self, out: &mut String) {
        match self {
            JVal::Null => out.push_str("null"),
            JVal::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            JVal::Int(n) => out.push_str(&n.to_string()),
            JVal::USize(n) => out.push_str(&n.to_string()),
            JVal::U64(n) => out.push_str(&n.to_string()),
            JVal::I64(n) => out.push_str(&n.to_string()),
            JVal::Num(s) => out.push_str(s),
            JVal::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            JVal::Arr(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            JVal::Obj(fields) => {
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    JVal::Str(k.to_string()).write(out);
                    out.push(':');
                    v.write(out);
                }
                out.push('}');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_in_field_order() {
        let v = JVal::Obj(vec![
            ("b", JVal::U64(2)),
            ("a", JVal::Arr(vec![JVal::Bool(true), JVal::Null])),
            ("s", JVal::Str("x\"y".into())),
        ]);
        assert_eq!(v.render(), r#"{"b":2,"a":[true,null],"s":"x\"y"}"#);
    }
}
