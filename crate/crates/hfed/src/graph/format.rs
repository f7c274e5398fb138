//! Line-oriented text format for graphs and problem instances.
//!
//! ```text
//! # comment
//! p edge <n> <m>
//! e <u> <v>        (exactly m lines, 1 <= u < v <= n)
//! k <budget>       (instance files only)
//! ```

use super::Graph;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header `{text}` (expected `p edge <n> <m>`)")]
    MalformedHeader { line: usize, text: String },
    #[error("missing `p edge <n> <m>` header")]
    MissingHeader,
    #[error("line {line}: malformed edge `{text}` (expected `e <u> <v>`)")]
    MalformedEdge { line: usize, text: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: endpoint {value} out of range 1..={max}")]
    EndpointOutOfRange { line: usize, value: usize, max: usize },
    #[error("line {line}: duplicate edge ({u},{v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("line {line}: malformed budget `{text}` (expected `k <budget>`)")]
    MalformedBudget { line: usize, text: String },
    #[error("line {line}: second `k` line")]
    DuplicateBudget { line: usize },
    #[error("instance file is missing its `k <budget>` line")]
    MissingBudget,
    #[error("line {line}: budget line `{text}` not allowed in a graph file")]
    UnexpectedBudget { line: usize, text: String },
    #[error("line {line}: unrecognized line `{text}`")]
    UnexpectedLine { line: usize, text: String },
}

/// Parses a graph file. A trailing `k` line is rejected; use
/// [`crate::planner::parse_instance`] for instance files.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let (graph, budget) = parse_lines(text)?;
    if budget.is_some() {
        // locate the k line again for a useful error position
        for (idx, raw) in text.lines().enumerate() {
            let t = raw.trim();
            if t.starts_with('k') {
                return Err(ParseError::UnexpectedBudget {
                    line: idx + 1,
                    text: t.to_string(),
                });
            }
        }
    }
    Ok(graph)
}

/// Shared parser: returns the graph and the optional budget line.
pub(crate) fn parse_lines(text: &str) -> Result<(Graph, Option<usize>), ParseError> {
    let mut graph: Option<Graph> = None;
    let mut declared = 0usize;
    let mut found = 0usize;
    let mut budget: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if graph.is_some() {
                    return Err(ParseError::UnexpectedLine {
                        line,
                        text: t.to_string(),
                    });
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(ParseError::MalformedHeader {
                        line,
                        text: t.to_string(),
                    });
                }
                let n: usize = fields[2].parse().map_err(|_| ParseError::MalformedHeader {
                    line,
                    text: t.to_string(),
                })?;
                let m: usize = fields[3].parse().map_err(|_| ParseError::MalformedHeader {
                    line,
                    text: t.to_string(),
                })?;
                graph = Some(Graph::new(n));
                declared = m;
            }
            "e" => {
                let g = graph.as_mut().ok_or(ParseError::MissingHeader)?;
                if fields.len() != 3 {
                    return Err(ParseError::MalformedEdge {
                        line,
                        text: t.to_string(),
                    });
                }
                let u: usize = fields[1].parse().map_err(|_| ParseError::MalformedEdge {
                    line,
                    text: t.to_string(),
                })?;
                let v: usize = fields[2].parse().map_err(|_| ParseError::MalformedEdge {
                    line,
                    text: t.to_string(),
                })?;
                if u == v {
                    return Err(ParseError::SelfLoop { line, vertex: u });
                }
                let n = g.vertex_count();
                for value in [u, v] {
                    if value == 0 || value > n {
                        return Err(ParseError::EndpointOutOfRange {
                            line,
                            value,
                            max: n,
                        });
                    }
                }
                let (a, b) = (u.min(v) - 1, u.max(v) - 1);
                if g.has_edge(a, b) {
                    return Err(ParseError::DuplicateEdge {
                        line,
                        u: a + 1,
                        v: b + 1,
                    });
                }
                g.add_edge(a, b);
                found += 1;
            }
            "k" => {
                if graph.is_none() {
                    return Err(ParseError::MissingHeader);
                }
                if budget.is_some() {
                    return Err(ParseError::DuplicateBudget { line });
                }
                if fields.len() != 2 {
                    return Err(ParseError::MalformedBudget {
                        line,
                        text: t.to_string(),
                    });
                }
                let b: usize = fields[1].parse().map_err(|_| ParseError::MalformedBudget {
                    line,
                    text: t.to_string(),
                })?;
                budget = Some(b);
            }
            _ => {
                return Err(ParseError::UnexpectedLine {
                    line,
                    text: t.to_string(),
                });
            }
        }
    }

    let graph = graph.ok_or(ParseError::MissingHeader)?;
    if found != declared {
        return Err(ParseError::EdgeCountMismatch { declared, found });
    }
    Ok((graph, budget))
}

/// Graph serialized in the file format, with a trailing newline.
pub fn write_graph(g: &Graph) -> String {
    g.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_p3() {
        let g = parse_graph("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn parse_isolated_vertex() {
        let g = parse_graph("p edge 1 0\n").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let g = parse_graph("# a triangle\n\np edge 3 3\ne 1 2\n# middle\ne 1 3\ne 2 3\n").unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn duplicate_edge_is_rejected() {
        let err = parse_graph("p edge 2 2\ne 1 2\ne 1 2\n").unwrap_err();
        assert_eq!(err, ParseError::DuplicateEdge { line: 3, u: 1, v: 2 });
        // also when written in the other orientation
        let err = parse_graph("p edge 2 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert_eq!(err, ParseError::DuplicateEdge { line: 3, u: 1, v: 2 });
    }

    #[test]
    fn self_loop_is_rejected() {
        let err = parse_graph("p edge 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(err, ParseError::SelfLoop { line: 2, vertex: 1 });
    }

    #[test]
    fn out_of_range_endpoint_is_rejected() {
        let err = parse_graph("p edge 2 1\ne 1 3\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::EndpointOutOfRange { line: 2, value: 3, max: 2 }
        );
        let err = parse_graph("p edge 2 1\ne 0 1\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::EndpointOutOfRange { line: 2, value: 0, max: 2 }
        );
    }

    #[test]
    fn malformed_header_is_rejected() {
        assert!(matches!(
            parse_graph("p vertices 3 2\n"),
            Err(ParseError::MalformedHeader { .. })
        ));
        assert_eq!(parse_graph("e 1 2\n"), Err(ParseError::MissingHeader));
    }

    #[test]
    fn edge_count_must_match_header() {
        assert_eq!(
            parse_graph("p edge 3 2\ne 1 2\n"),
            Err(ParseError::EdgeCountMismatch { declared: 2, found: 1 })
        );
    }

    #[test]
    fn budget_line_rejected_in_graph_files() {
        assert!(matches!(
            parse_graph("p edge 1 0\nk 2\n"),
            Err(ParseError::UnexpectedBudget { line: 2, .. })
        ));
    }

    #[test]
    fn roundtrip() {
        let g = Graph::twin_star(2, 3);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }
}
