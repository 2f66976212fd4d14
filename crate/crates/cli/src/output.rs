//! JSON envelope and the plain-text rendering of the same data.

use serde_json::{json, Value};

use crate::commands::{CliError, Report};
use crate::Format;

const TOOL: &str = "trank";

fn envelope(command: &str, report: &Report) -> Value {
    let mut meta = json!({ "heuristic_fields": report.heuristic_fields });
    if !report.notes.is_empty() {
        meta["notes"] = json!(report.notes);
    }
    json!({
        "tool": TOOL,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "input": report.input,
        "result": report.result,
        "meta": meta,
    })
}

pub fn render(command: &str, report: &Report, format: Format) -> String {
    let value = envelope(command, report);
    match format {
        Format::Json => serde_json::to_string_pretty(&value).expect("JSON values always serialize"),
        Format::Text => {
            let mut out = format!("{TOOL} {} {command}\n", env!("CARGO_PKG_VERSION"));
            for key in ["input", "result", "meta"] {
                out.push_str(key);
                out.push_str(":\n");
                write_text(&value[key], 1, &mut out);
            }
            out.trim_end().to_string()
        }
    }
}

pub fn render_error(command: &str, e: &CliError, format: Format) -> String {
    match format {
        Format::Json => {
            let value = json!({
                "tool": TOOL,
                "version": env!("CARGO_PKG_VERSION"),
                "command": command,
                "error": { "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() },
            });
            serde_json::to_string_pretty(&value).expect("JSON values always serialize")
        }
        Format::Text => format!("error ({}): {e}", e.kind()),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.is_empty() => Some("[]".into()),
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::Number(_))) => {
            Some(format!("({})", items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")))
        }
        // flat records such as scan rows fit on one line
        Value::Object(map) if map.values().all(|x| !x.is_object() && scalar(x).is_some()) => Some(
            map.iter().map(|(k, x)| format!("{k}={}", scalar(x).unwrap_or_default())).collect::<Vec<_>>().join("  "),
        ),
        _ => None,
    }
}

fn write_text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(item, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_text(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
