use serde_json::Value;

pub fn render_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

/// One `key: value` line per leaf, keys joined with `.` and array
/// positions written as `[i]`.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    flatten(v, String::new(), &mut out);
    out
}

fn flatten(v: &Value, prefix: String, out: &mut String) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(child, key, out);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, child) in items.iter().enumerate() {
                flatten(child, format!("{prefix}[{i}]"), out);
            }
        }
        leaf => {
            let text = match leaf {
                Value::String(s) => s.clone(),
                Value::Object(_) => "{}".to_string(),
                Value::Array(_) => "[]".to_string(),
                other => other.to_string(),
            };
            out.push_str(&prefix);
            out.push_str(": ");
            out.push_str(&text);
            out.push('\n');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattens_nested_values() {
        let v = json!({"a": {"b": [1, "x"]}, "c": true, "d": []});
        assert_eq!(render_text(&v), "a.b[0]: 1\na.b[1]: x\nc: true\nd: []\n");
    }
}
