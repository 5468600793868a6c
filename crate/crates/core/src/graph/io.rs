//! Tab-separated graph file format.
//!
//! ```text
//! # directed
//! # vertex lonely.onion
//! a.onion    b.onion    3
//! ```
//!
//! The header names the directedness. `# vertex` lines declare vertices
//! without edges; every other non-blank line is `source<TAB>target<TAB>weight`.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use super::{Directedness, GraphError, ServiceGraph};

pub fn write_graph<W: Write>(g: &ServiceGraph, mut out: W) -> Result<(), GraphError> {
    let header = if g.is_directed() { "directed" } else { "undirected" };
    writeln!(out, "# {header}")?;
    for v in 0..g.n() {
        if g.out_degree(v) == 0 && g.in_degree(v) == 0 {
            writeln!(out, "# vertex {}", g.vertex(v))?;
        }
    }
    for e in g.edges() {
        writeln!(out, "{}\t{}\t{}", g.vertex(e.source), g.vertex(e.target), e.weight)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_graph<R: BufRead>(input: R) -> Result<ServiceGraph, GraphError> {
    let parse_err = |line: usize, message: &str| GraphError::Parse {
        line,
        message: message.to_string(),
    };
    let mut directedness = None;
    let mut vertices = BTreeSet::new();
    let mut edges = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if directedness.is_none() {
                directedness = Some(match rest {
                    "directed" => Directedness::Directed,
                    "undirected" => Directedness::Undirected,
                    _ => return Err(parse_err(line_no, "expected `# directed` or `# undirected` header")),
                });
            } else if let Some(v) = rest.strip_prefix("vertex ") {
                let v = v.trim();
                if v.is_empty() {
                    return Err(parse_err(line_no, "empty vertex id"));
                }
                vertices.insert(v.to_string());
            }
            // other comment lines are ignored
            continue;
        }
        if directedness.is_none() {
            return Err(parse_err(line_no, "missing directedness header"));
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 || fields[0].is_empty() || fields[1].is_empty() {
            return Err(parse_err(line_no, "expected source<TAB>target<TAB>weight"));
        }
        let weight: u64 = fields[2]
            .trim()
            .parse()
            .map_err(|_| parse_err(line_no, "weight is not a positive integer"))?;
        edges.push((fields[0].to_string(), fields[1].to_string(), weight));
    }
    let directedness = directedness.ok_or_else(|| parse_err(1, "missing directedness header"))?;
    ServiceGraph::from_edges(directedness, vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_isolated_vertex() {
        let g = ServiceGraph::from_edges(
            Directedness::Directed,
            ["lonely".to_string()],
            [("a".to_string(), "b".to_string(), 3), ("b".to_string(), "a".to_string(), 1)],
        )
        .unwrap();
        let mut buf = Vec::new();
        write_graph(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text, "# directed\n# vertex lonely\na\tb\t3\nb\ta\t1\n");
        let h = read_graph(buf.as_slice()).unwrap();
        assert_eq!(h.vertices(), g.vertices());
        assert_eq!(h.edge_map(), g.edge_map());
        assert!(h.is_directed());
    }

    #[test]
    fn parse_errors_carry_line() {
        let err = read_graph("a\tb\t1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 1, .. }));
        let err = read_graph("# undirected\na\tb\n".as_bytes()).unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }));
        let err = read_graph("# undirected\na\tb\tx\n".as_bytes()).unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }));
        assert!(matches!(
            read_graph("# sideways\n".as_bytes()),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_graph("# directed\na\tb\t0\n".as_bytes()),
            Err(GraphError::ZeroWeight(..))
        ));
    }
}
