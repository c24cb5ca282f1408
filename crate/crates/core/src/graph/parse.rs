use std::collections::BTreeSet;

use super::{EdgeId, GraphError, MultiGraph, VertexId};

/// Parses either a builtin graph name or an edge-list document.
///
/// Builtins: `K<n>`, complete multipartite `K<a>,<b>[,<c>...]` (so `K3,3`
/// and `K3,3,1`, whose apex is vertex 7), `petersen`, `C<n>`, `P<n>` and
/// `grid<r>x<c>`.
///
/// Edge lists start with a `<n> <m>` header followed by `m` lines `u v` or
/// `u v id`. When every endpoint lies in `1..=n` the vertex set is `1..=n`;
/// otherwise it is the set of ids mentioned, which must number exactly `n`.
/// Blank lines and `#` comments are ignored.
pub fn parse_graph(text: &str) -> Result<MultiGraph, GraphError> {
    let trimmed = text.trim();
    if !trimmed.is_empty() && !trimmed.contains(char::is_whitespace) {
        return builtin(trimmed);
    }
    parse_edge_list(text)
}

fn parse_edge_list(text: &str) -> Result<MultiGraph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(GraphError::Malformed {
        line: 1,
        message: "empty document".into(),
    })?;
    let header = integers(header_line, header)?;
    let [n, m] = header[..] else {
        return Err(malformed(header_line, "header must be `<vertex count> <edge count>`"));
    };
    if n < 0 || m < 0 {
        return Err(malformed(header_line, "counts must be nonnegative"));
    }
    let (n, m) = (n as usize, m as usize);

    let mut g = MultiGraph::new();
    let mut next_id = 0u32;
    let mut count = 0usize;
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        count += 1;
        if count > m {
            return Err(malformed(line, &format!("more than the declared {m} edges")));
        }
        let fields = integers(line, body)?;
        let (u, v, id) = match fields[..] {
            [u, v] => (u, v, EdgeId(next_id)),
            [u, v, id] => {
                let id = u32::try_from(id).map_err(|_| malformed(line, "edge id out of range"))?;
                (u, v, EdgeId(id))
            }
            _ => return Err(malformed(line, "edge line must be `u v` or `u v id`")),
        };
        g.insert_edge(id, u, v)?;
        next_id = next_id.max(id.0 + 1);
    }
    if count != m {
        return Err(malformed(
            last_line,
            &format!("declared {m} edges but found {count}"),
        ));
    }

    let mentioned: BTreeSet<VertexId> = g.vertices().collect();
    if mentioned.iter().all(|&v| v >= 1 && v <= n as VertexId) {
        for v in 1..=n as VertexId {
            g.add_vertex(v);
        }
    } else if mentioned.len() != n {
        return Err(malformed(
            header_line,
            &format!("declared {n} vertices but edges mention {}", mentioned.len()),
        ));
    }
    Ok(g)
}

fn integers(line: usize, body: &str) -> Result<Vec<i64>, GraphError> {
    body.split_whitespace()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| malformed(line, &format!("`{t}` is not an integer")))
        })
        .collect()
}

fn malformed(line: usize, message: &str) -> GraphError {
    GraphError::Malformed { line, message: message.to_string() }
}

/// Constructs a named builtin graph.
pub fn builtin(name: &str) -> Result<MultiGraph, GraphError> {
    let unknown = || GraphError::UnknownBuiltin(name.to_string());
    let lower = name.to_ascii_lowercase();
    let count = |s: &str| s.parse::<usize>().ok().filter(|n| (1..=64).contains(n));

    if lower == "petersen" {
        return Ok(petersen());
    }
    if let Some(rest) = lower.strip_prefix("grid") {
        let (r, c) = rest.split_once('x').ok_or_else(unknown)?;
        let (r, c) = (count(r).ok_or_else(unknown)?, count(c).ok_or_else(unknown)?);
        return Ok(grid(r, c));
    }
    if let Some(rest) = lower.strip_prefix('c') {
        let n = count(rest).filter(|&n| n >= 3).ok_or_else(unknown)?;
        return Ok(MultiGraph::from_edges((1..=n as VertexId).map(|i| (i, i % n as VertexId + 1)))
            .with_name(format!("C{n}")));
    }
    if let Some(rest) = lower.strip_prefix('p') {
        let n = count(rest).ok_or_else(unknown)?;
        let mut g = MultiGraph::from_edges((1..n as VertexId).map(|i| (i, i + 1)));
        g.add_vertex(1);
        return Ok(g.with_name(format!("P{n}")));
    }
    if let Some(rest) = lower.strip_prefix('k') {
        let parts = rest
            .split(',')
            .map(count)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(unknown)?;
        return Ok(complete_multipartite(&parts));
    }
    Err(unknown())
}

/// `K<n>` for a single part size, `K<a>,<b>,...` otherwise. Parts take
/// consecutive ids starting at 1; edges appear in lexicographic order.
fn complete_multipartite(parts: &[usize]) -> MultiGraph {
    let name = format!(
        "K{}",
        parts.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    );
    let mut part_of = Vec::new();
    if let [n] = parts {
        part_of.extend(0..*n);
    } else {
        for (p, &size) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(p, size));
        }
    }
    let mut g = MultiGraph::new();
    let n = part_of.len();
    for i in 0..n {
        g.add_vertex(i as VertexId + 1);
        for j in i + 1..n {
            if part_of[i] != part_of[j] {
                g.add_edge(i as VertexId + 1, j as VertexId + 1);
            }
        }
    }
    g.with_name(name)
}

/// Outer 5-cycle 1..5, inner pentagram 6..10, spokes `i - i+5`.
fn petersen() -> MultiGraph {
    let mut g = MultiGraph::new();
    for i in 0..5 {
        g.add_edge(i + 1, (i + 1) % 5 + 1);
    }
    for i in 0..5 {
        g.add_edge(i + 6, (i + 2) % 5 + 6);
    }
    for i in 1..=5 {
        g.add_edge(i, i + 5);
    }
    g.with_name("petersen")
}

fn grid(rows: usize, cols: usize) -> MultiGraph {
    let id = |r: usize, c: usize| (r * cols + c + 1) as VertexId;
    let mut g = MultiGraph::new();
    for r in 0..rows {
        for c in 0..cols {
            g.add_vertex(id(r, c));
            if c + 1 < cols {
                g.add_edge(id(r, c), id(r, c + 1));
            }
            if r + 1 < rows {
                g.add_edge(id(r, c), id(r + 1, c));
            }
        }
    }
    g.with_name(format!("grid{rows}x{cols}"))
}
