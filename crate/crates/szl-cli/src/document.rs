//! The graph document format: one directive per line, `#` starts a comment.
//!
//! ```text
//! ell 5
//! vertices 4
//! edge 0 1 3
//! boundary 5 5 5 5
//! ```
//!
//! `vertices` must come before `edge` and `boundary` lines; each unordered
//! pair may appear at most once. All parse errors carry a line number.

use szl_core::graph::Multigraph;

/// A parsed input file: an optional modulus parameter, the graph, and an
/// optional boundary value vector (resolved against `ell` at use time).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphDocument {
    pub ell: Option<u32>,
    pub graph: Multigraph,
    pub boundary: Option<Vec<u32>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn parse_int<T: std::str::FromStr>(line: usize, field: &str, text: &str) -> Result<T, ParseError> {
    text.parse()
        .or_else(|_| err(line, format!("invalid {field} {text:?}")))
}

pub fn parse_graph_file(text: &str) -> Result<GraphDocument, ParseError> {
    let mut ell: Option<u32> = None;
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();
    let mut seen_pairs: Vec<(usize, usize)> = Vec::new();
    let mut boundary: Option<Vec<u32>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields[0] {
            "ell" => {
                if fields.len() != 2 {
                    return err(line, "ell takes exactly one value");
                }
                if ell.is_some() {
                    return err(line, "duplicate ell directive");
                }
                ell = Some(parse_int(line, "modulus parameter", fields[1])?);
            }
            "vertices" => {
                if fields.len() != 2 {
                    return err(line, "vertices takes exactly one value");
                }
                if n.is_some() {
                    return err(line, "duplicate vertices directive");
                }
                n = Some(parse_int(line, "vertex count", fields[1])?);
            }
            "edge" => {
                let count = match n {
                    Some(c) => c,
                    None => return err(line, "edge before vertices directive"),
                };
                if fields.len() != 4 {
                    return err(line, "edge takes three values: u v multiplicity");
                }
                let u: usize = parse_int(line, "vertex index", fields[1])?;
                let v: usize = parse_int(line, "vertex index", fields[2])?;
                let m: u32 = parse_int(line, "multiplicity", fields[3])?;
                if u == v {
                    return err(line, format!("loop edge at vertex {u}"));
                }
                if u >= count || v >= count {
                    return err(
                        line,
                        format!("vertex index out of range for {count} vertices"),
                    );
                }
                let key = (u.min(v), u.max(v));
                if seen_pairs.contains(&key) {
                    return err(line, format!("duplicate pair {{{}, {}}}", key.0, key.1));
                }
                seen_pairs.push(key);
                edges.push((u, v, m));
            }
            "boundary" => {
                let count = match n {
                    Some(c) => c,
                    None => return err(line, "boundary before vertices directive"),
                };
                if boundary.is_some() {
                    return err(line, "duplicate boundary directive");
                }
                if fields.len() - 1 != count {
                    return err(
                        line,
                        format!(
                            "boundary has {} values, graph has {count} vertices",
                            fields.len() - 1
                        ),
                    );
                }
                let values = fields[1..]
                    .iter()
                    .map(|f| parse_int(line, "boundary value", f))
                    .collect::<Result<Vec<u32>, _>>()?;
                boundary = Some(values);
            }
            other => return err(line, format!("unknown directive {other:?}")),
        }
    }

    let n = match n {
        Some(c) => c,
        None => return err(text.lines().count().max(1), "missing vertices directive"),
    };
    let graph = Multigraph::from_edges(n, &edges)
        .map_err(|e| ParseError {
            line: text.lines().count().max(1),
            message: e.to_string(),
        })?;
    Ok(GraphDocument {
        ell,
        graph,
        boundary,
    })
}

/// Canonical rendering; `parse_graph_file(render_document(d)) == d`.
pub fn render_document(doc: &GraphDocument) -> String {
    let mut out = String::new();
    if let Some(ell) = doc.ell {
        out.push_str(&format!("ell {ell}\n"));
    }
    out.push_str(&format!("vertices {}\n", doc.graph.n()));
    for (u, v, m) in doc.graph.edges() {
        out.push_str(&format!("edge {u} {v} {m}\n"));
    }
    if let Some(boundary) = &doc.boundary {
        let values: Vec<String> = boundary.iter().map(|b| b.to_string()).collect();
        out.push_str(&format!("boundary {}\n", values.join(" ")));
    }
    out
}
