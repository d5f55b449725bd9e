//! Text formats for instances and solutions.
//!
//! Both are JSON objects written with a fixed key order and one demand (or
//! routed entry) per line so files diff cleanly. The reader also accepts bare
//! identifier keys (`{n: 4, c: 2, demands: [[1, 3, 2]]}`).

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::Deserialize;
use thiserror::Error;

use super::{Arc, Instance, Pair, RingPlan, RoutedDemand, Solution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field} (line {line}): {message}")]
    Field {
        field: String,
        line: usize,
        message: String,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    n: i64,
    c: i64,
    #[serde(default)]
    demands: Vec<(i64, i64, i64)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolution {
    rings: Vec<RawRing>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    adms: Vec<i64>,
    #[serde(default)]
    routed: Vec<(i64, i64, String, i64)>,
}

fn syntax(err: serde_json::Error) -> ParseError {
    ParseError::Syntax {
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    }
}

/// Parses an instance file. Duplicate demand triples accumulate.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let text = quote_bare_keys(text);
    let raw: RawInstance = serde_json::from_str(&text).map_err(syntax)?;
    let field = |name: &str, message: String| ParseError::Field {
        field: name.to_string(),
        line: key_line(&text, name).unwrap_or(1),
        message,
    };
    if raw.n < 2 {
        return Err(field("n", format!("ring size must be at least 2, got {}", raw.n)));
    }
    if raw.c < 1 || raw.c > u32::MAX as i64 {
        return Err(field("c", format!("capacity must be a positive 32-bit integer, got {}", raw.c)));
    }
    let n = raw.n as usize;
    let lines = element_lines(&text, "demands");
    let mut inst = Instance::empty(n, raw.c as u32).map_err(|e| field("n", e.to_string()))?;
    for (idx, &(j, k, u)) in raw.demands.iter().enumerate() {
        let err = |message: String| ParseError::Field {
            field: format!("demands[{idx}]"),
            line: lines.get(idx).copied().unwrap_or(1),
            message,
        };
        for v in [j, k] {
            if v < 1 || v > raw.n {
                return Err(err(format!("vertex {v} outside 1..={n}")));
            }
        }
        if j == k {
            return Err(err(format!("self-demand at vertex {j}")));
        }
        if u < 0 {
            return Err(err(format!("negative units ({u})")));
        }
        if u > u32::MAX as i64 {
            return Err(err(format!("units {u} too large")));
        }
        inst.add_demand(j as usize, k as usize, u as u32)
            .map_err(|e| err(e.to_string()))?;
    }
    Ok(inst)
}

/// Writes an instance: `n`, `c`, then one aggregated `[j, k, units]` triple per
/// line in lexicographic pair order.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"n\": {},", inst.n());
    let _ = writeln!(out, "  \"c\": {},", inst.capacity());
    let rows: Vec<String> = inst
        .demands()
        .map(|(p, u)| format!("    [{}, {}, {}]", p.j(), p.k(), u))
        .collect();
    write_array(&mut out, "  \"demands\": ", &rows, "\n");
    out.push_str("}\n");
    out
}

/// Parses a solution file. Structural problems (bad arc names, `j == k`,
/// zero units) are parse errors; feasibility is left to the verifier.
pub fn parse_solution(text: &str) -> Result<Solution, ParseError> {
    let text = quote_bare_keys(text);
    let raw: RawSolution = serde_json::from_str(&text).map_err(syntax)?;
    let ring_lines = element_lines(&text, "rings");
    let mut rings = Vec::with_capacity(raw.rings.len());
    for (ri, ring) in raw.rings.into_iter().enumerate() {
        let line = ring_lines.get(ri).copied().unwrap_or(1);
        let err = |field: String, message: String| ParseError::Field { field, line, message };
        let mut adms = BTreeSet::new();
        for (ai, &v) in ring.adms.iter().enumerate() {
            if v < 1 {
                return Err(err(format!("rings[{ri}].adms[{ai}]"), format!("vertex {v} must be positive")));
            }
            adms.insert(v as usize);
        }
        let mut routed = Vec::with_capacity(ring.routed.len());
        for (ei, (j, k, arc, u)) in ring.routed.into_iter().enumerate() {
            let field = format!("rings[{ri}].routed[{ei}]");
            if j < 1 || k < 1 {
                return Err(err(field, "vertices must be positive".into()));
            }
            if j >= k {
                return Err(err(field, format!("expected j < k, got [{j}, {k}]")));
            }
            let arc = match arc.as_str() {
                "inner" => Arc::Inner,
                "outer" => Arc::Outer,
                other => return Err(err(field, format!("unknown arc {other:?}"))),
            };
            if u < 1 || u > u32::MAX as i64 {
                return Err(err(field, format!("units must be a positive 32-bit integer, got {u}")));
            }
            let pair = Pair::new(j as usize, k as usize).expect("j < k checked");
            routed.push(RoutedDemand::new(pair, arc, u as u32));
        }
        rings.push(RingPlan { adms, routed });
    }
    Ok(Solution { rings })
}

/// Writes a solution with each ring's routing merged and sorted.
pub fn serialize_solution(sol: &Solution) -> String {
    let mut out = String::from("{\n");
    let rings: Vec<String> = sol
        .rings
        .iter()
        .map(|ring| {
            let ring = ring.normalized();
            let adms: Vec<String> = ring.adms.iter().map(|v| v.to_string()).collect();
            let mut s = String::from("    {\n");
            let _ = writeln!(s, "      \"adms\": [{}],", adms.join(", "));
            let rows: Vec<String> = ring
                .routed
                .iter()
                .map(|r| {
                    format!(
                        "        [{}, {}, \"{}\", {}]",
                        r.pair.j(),
                        r.pair.k(),
                        r.arc,
                        r.units
                    )
                })
                .collect();
            write_array(&mut s, "      \"routed\": ", &rows, "\n");
            s.push_str("    }");
            s
        })
        .collect();
    write_array(&mut out, "  \"rings\": ", &rings, "\n");
    out.push_str("}\n");
    out
}

fn write_array(out: &mut String, prefix: &str, rows: &[String], end: &str) {
    out.push_str(prefix);
    if rows.is_empty() {
        out.push_str("[]");
    } else {
        out.push_str("[\n");
        out.push_str(&rows.join(",\n"));
        out.push('\n');
        // closing bracket aligned with the key
        let indent = prefix.len() - prefix.trim_start().len();
        out.push_str(&" ".repeat(indent));
        out.push(']');
    }
    out.push_str(end);
}

/// Wraps bare identifier object keys in quotes so the text parses as JSON.
fn quote_bare_keys(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 16);
    let mut chars = text.char_indices().peekable();
    let mut in_string = false;
    let mut escaped = false;
    // last significant (non-whitespace) char outside strings
    let mut last = '\0';
    while let Some((_, ch)) = chars.next() {
        if in_string {
            out.push(ch);
            if escaped {
                escaped = false;
            } else if ch == '\\' {
                escaped = true;
            } else if ch == '"' {
                in_string = false;
                last = '"';
            }
            continue;
        }
        if ch == '"' {
            in_string = true;
            out.push(ch);
            continue;
        }
        if (ch.is_ascii_alphabetic() || ch == '_') && (last == '{' || last == ',') {
            let mut ident = String::from(ch);
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    ident.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push('"');
            out.push_str(&ident);
            out.push('"');
            last = '"';
            continue;
        }
        if !ch.is_whitespace() {
            last = ch;
        }
        out.push(ch);
    }
    out
}

/// Byte offset just past the first `"key"` that appears outside a string
/// value, together with its line number.
fn find_key(text: &str, key: &str) -> Option<(usize, usize)> {
    let needle = format!("\"{key}\"");
    let mut line = 1;
    let mut in_string = false;
    let mut escaped = false;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b == b'\n' {
            line += 1;
        }
        if in_string {
            if escaped {
                escaped = false;
            } else if b == b'\\' {
                escaped = true;
            } else if b == b'"' {
                in_string = false;
            }
            i += 1;
            continue;
        }
        if b == b'"' {
            if text[i..].starts_with(&needle) {
                let rest = text[i + needle.len()..].trim_start();
                if rest.starts_with(':') {
                    return Some((i + needle.len(), line));
                }
            }
            in_string = true;
        }
        i += 1;
    }
    None
}

fn key_line(text: &str, key: &str) -> Option<usize> {
    find_key(text, key).map(|(_, line)| line)
}

/// Line on which each element of the array stored under `key` begins.
fn element_lines(text: &str, key: &str) -> Vec<usize> {
    let Some((start, mut line)) = find_key(text, key) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut in_string = false;
    let mut escaped = false;
    let mut expecting_element = false;
    for ch in text[start..].chars() {
        if ch == '\n' {
            line += 1;
            continue;
        }
        if in_string {
            if escaped {
                escaped = false;
            } else if ch == '\\' {
                escaped = true;
            } else if ch == '"' {
                in_string = false;
            }
            continue;
        }
        if ch.is_whitespace() {
            continue;
        }
        if depth == 1 && expecting_element && ch != ']' {
            out.push(line);
            expecting_element = false;
        }
        match ch {
            '"' => in_string = true,
            '[' | '{' => {
                depth += 1;
                if depth == 1 {
                    expecting_element = true;
                }
            }
            ']' | '}' => {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    break;
                }
            }
            ',' if depth == 1 => expecting_element = true,
            _ => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{adm_count, total_demand};

    #[test]
    fn parses_bare_key_instance() {
        let inst = parse_instance("{n:4, c:2, demands:[[1,3,2]]}").unwrap();
        assert_eq!(inst.n(), 4);
        assert_eq!(inst.capacity(), 2);
        assert_eq!(inst.entry(1, 3), 2);
        assert_eq!(inst.entry(3, 1), 2);
        assert_eq!(total_demand(&inst), 2);
    }

    #[test]
    fn self_demand_reports_line() {
        let text = "{\n  \"n\": 4,\n  \"c\": 1,\n  \"demands\": [\n    [1, 2, 1],\n    [2, 2, 1]\n  ]\n}\n";
        match parse_instance(text) {
            Err(ParseError::Field { field, line, message }) => {
                assert_eq!(field, "demands[1]");
                assert_eq!(line, 6);
                assert!(message.contains("self-demand"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_fields() {
        let cases = [
            ("{n:1, c:1, demands:[]}", "n"),
            ("{n:3, c:0, demands:[]}", "c"),
            ("{n:3, c:1, demands:[[1,4,1]]}", "demands[0]"),
            ("{n:3, c:1, demands:[[1,2,-1]]}", "demands[0]"),
        ];
        for (text, expected) in cases {
            match parse_instance(text) {
                Err(ParseError::Field { field, .. }) => assert_eq!(field, expected, "{text}"),
                other => panic!("{text}: unexpected {other:?}"),
            }
        }
        assert!(matches!(
            parse_instance("{n:3, c:1, demands:[[1,2]]}"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_instance("{n:3, c:1, extra: 1}"),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn instance_text_is_stable() {
        let inst = parse_instance("{n:4, c:2, demands:[[3,1,2],[2,4,1],[1,3,1]]}").unwrap();
        let text = serialize_instance(&inst);
        assert_eq!(
            text,
            "{\n  \"n\": 4,\n  \"c\": 2,\n  \"demands\": [\n    [1, 3, 3],\n    [2, 4, 1]\n  ]\n}\n"
        );
        assert_eq!(parse_instance(&text).unwrap(), inst);
        let empty = Instance::empty(3, 1).unwrap();
        assert_eq!(
            serialize_instance(&empty),
            "{\n  \"n\": 3,\n  \"c\": 1,\n  \"demands\": []\n}\n"
        );
    }

    #[test]
    fn solution_round_trip() {
        let text = "{\n  \"rings\": [\n    {\n      \"adms\": [1, 2, 3],\n      \"routed\": [\n        [1, 2, \"inner\", 1],\n        [1, 3, \"outer\", 1],\n        [2, 3, \"inner\", 1]\n      ]\n    }\n  ]\n}\n";
        let sol = parse_solution(text).unwrap();
        assert_eq!(adm_count(&sol), 3);
        assert_eq!(serialize_solution(&sol), text);
        let empty = Solution::default();
        assert_eq!(serialize_solution(&empty), "{\n  \"rings\": []\n}\n");
        assert_eq!(parse_solution(&serialize_solution(&empty)).unwrap(), empty);
    }

    #[test]
    fn solution_structural_errors() {
        assert!(parse_solution("{rings:[{adms:[1,2], routed:[[2,1,\"inner\",1]]}]}").is_err());
        assert!(parse_solution("{rings:[{adms:[1,2], routed:[[1,2,\"left\",1]]}]}").is_err());
        assert!(parse_solution("{rings:[{adms:[1,2], routed:[[1,2,\"inner\",0]]}]}").is_err());
    }

    #[test]
    fn bare_keys_leave_strings_alone() {
        let s = quote_bare_keys("{a: \"x, b: y\", b_2: [1]}");
        assert_eq!(s, "{\"a\": \"x, b: y\", \"b_2\": [1]}");
    }
}
