//! Text and CSV renderings of JSON report values.

use serde_json::{Map, Value};

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some(String::new()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn inline(v: &Value, sep: &str) -> String {
    match v {
        Value::Array(items) => items.iter().map(|x| inline(x, sep)).collect::<Vec<_>>().join(sep),
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| format!("{k}={}", inline(x, sep)))
            .collect::<Vec<_>>()
            .join(" "),
        other => scalar(other).unwrap_or_default(),
    }
}

fn text_into(out: &mut String, map: &Map<String, Value>, indent: usize) {
    let pad = " ".repeat(indent);
    for (key, v) in map {
        match v {
            Value::Object(inner) => {
                out.push_str(&format!("{pad}{key}:\n"));
                text_into(out, inner, indent + 2);
            }
            Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
                out.push_str(&format!("{pad}{key}:\n"));
                for x in items {
                    out.push_str(&format!("{pad}  {}\n", inline(x, ", ")));
                }
            }
            other => out.push_str(&format!("{pad}{key}: {}\n", inline(other, ", "))),
        }
    }
}

/// One `key: value` line per field; nested lists one item per line.
pub fn text(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut out = String::new();
            text_into(&mut out, map, 0);
            out
        }
        other => format!("{}\n", inline(other, ", ")),
    }
}

fn csv_cell(v: &Value) -> String {
    let s = match v {
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => inline(v, ";"),
        Value::Array(items) => items.len().to_string(),
        Value::Object(_) => String::new(),
        other => scalar(other).unwrap_or_default(),
    };
    s.replace(", ", "; ").replace([',', '\n'], ";")
}

/// Header of top-level field names and one value row. Lists of scalars are
/// joined with `;`, lists of records are replaced by their length.
pub fn csv(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let keys: Vec<&str> = map
                .iter()
                .filter(|(_, x)| !x.is_object())
                .map(|(k, _)| k.as_str())
                .collect();
            let cells: Vec<String> = keys.iter().map(|k| csv_cell(&map[*k])).collect();
            format!("{}\n{}\n", keys.join(","), cells.join(","))
        }
        other => format!("value\n{}\n", csv_cell(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_layout() {
        let v = json!({"n": 3, "ok": true, "counts": [1, 2], "rows": [[1, 2], [3]], "inner": {"a": "x"}});
        assert_eq!(
            text(&v),
            "n: 3\nok: true\ncounts: 1, 2\nrows:\n  1, 2\n  3\ninner:\n  a: x\n"
        );
    }

    #[test]
    fn csv_layout() {
        let v = json!({"n": 3, "counts": [1, 2], "records": [{"a": 1}, {"a": 2}], "note": "a, b", "none": null});
        assert_eq!(csv(&v), "n,counts,records,note,none\n3,1;2,2,a; b,\n");
    }
}
