use crate::error::{Error, Result};

use super::{Edge, Quiver};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        kind: "syntax",
        line,
        column,
        message: message.into(),
    }
}

fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

/// Parses the line-oriented quiver format:
///
/// ```text
/// # comment
/// vertices: v w
/// edges:
///   e: v -> w
/// ```
///
/// `edges:` may also carry one edge on the same line.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    enum Section {
        None,
        Vertices,
        Edges,
    }
    let mut section = Section::None;
    let mut vertices: Vec<String> = Vec::new();
    let mut raw_edges: Vec<(String, String, String, usize)> = Vec::new();
    let mut seen_vertices = false;

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let indent = content.len() - content.trim_start().len();
        let body = content.trim();
        if body.is_empty() {
            continue;
        }
        let mut rest = body;
        let mut rest_col = indent + 1;
        if let Some(r) = body.strip_prefix("vertices:") {
            if seen_vertices {
                return Err(syntax(line_no, indent + 1, "repeated `vertices:` section"));
            }
            seen_vertices = true;
            section = Section::Vertices;
            rest = r;
            rest_col += "vertices:".len();
        } else if let Some(r) = body.strip_prefix("edges:") {
            section = Section::Edges;
            rest = r;
            rest_col += "edges:".len();
        }
        let lead = rest.len() - rest.trim_start().len();
        rest_col += lead;
        let rest = rest.trim();
        if rest.is_empty() {
            continue;
        }
        match section {
            Section::None => {
                return Err(syntax(line_no, rest_col, "expected `vertices:` or `edges:`"));
            }
            Section::Vertices => {
                let mut col = rest_col;
                for tok in rest.split(' ') {
                    if tok.is_empty() {
                        col += 1;
                        continue;
                    }
                    if !is_name(tok) {
                        return Err(syntax(line_no, col, format!("bad vertex name `{}`", tok)));
                    }
                    vertices.push(tok.to_string());
                    col += tok.chars().count() + 1;
                }
            }
            Section::Edges => {
                let Some((name, arrow)) = rest.split_once(':') else {
                    return Err(syntax(line_no, rest_col, "expected `name: source -> range`"));
                };
                let name = name.trim();
                if !is_name(name) {
                    return Err(syntax(line_no, rest_col, format!("bad edge name `{}`", name)));
                }
                let arrow_col = rest_col + rest.find(':').unwrap_or(0) + 1;
                let Some((s, r)) = arrow.split_once("->") else {
                    return Err(syntax(line_no, arrow_col, "expected `->`"));
                };
                let (s, r) = (s.trim(), r.trim());
                if !is_name(s) {
                    return Err(syntax(line_no, arrow_col, "missing source vertex"));
                }
                if !is_name(r) {
                    let col = rest_col + rest.find("->").unwrap_or(0) + 2;
                    return Err(syntax(line_no, col, "missing range vertex"));
                }
                raw_edges.push((name.to_string(), s.to_string(), r.to_string(), line_no));
            }
        }
    }

    let mut edges = Vec::with_capacity(raw_edges.len());
    for (name, s, r, _line) in raw_edges {
        let find = |v: &str| {
            vertices.iter().position(|w| w == v).ok_or_else(|| Error::UnknownSymbol {
                symbol: v.to_string(),
                context: format!("the declared vertices (edge `{}`)", name),
            })
        };
        let source = find(&s)?;
        let range = find(&r)?;
        edges.push(Edge { name, source, range });
    }
    Quiver::new(vertices, edges)
}
