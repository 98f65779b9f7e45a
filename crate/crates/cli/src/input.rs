//! Graph and argument-list parsing.

use feynman_gw_core::{Error, FeynmanGraph, GraphJson};

use crate::CliError;

/// Parses a graph from JSON (`{"vertices":n,"edges":[[u,v],...]}`) or from
/// text with one `u v` pair per line. Blank lines and `#` comments are
/// skipped in text; the vertex count is the largest label seen.
pub fn parse_graph(input: &str) -> Result<FeynmanGraph, CliError> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

fn parse_json(input: &str) -> Result<FeynmanGraph, CliError> {
    let j: GraphJson = serde_json::from_str(input).map_err(|e| {
        CliError::input(
            "graph_json",
            format!("line {}, column {}: {e}", e.line(), e.column()),
        )
    })?;
    FeynmanGraph::from_json(&j).map_err(|e| match e {
        Error::EndpointOutOfRange { edge, endpoint, vertices } => {
            let slot = if j.edges[edge - 1][0] == endpoint { 0 } else { 1 };
            CliError::input(
                e.code(),
                format!("edges[{}][{slot}]: endpoint {endpoint} outside 1..={vertices}", edge - 1),
            )
        }
        Error::NoVertices => CliError::input(e.code(), "vertices: must be positive"),
        other => other.into(),
    })
}

fn parse_text(input: &str) -> Result<FeynmanGraph, CliError> {
    let mut edges = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || CliError::input("graph_text", format!("line {}: expected two vertex labels, got `{line}`", i + 1));
        if fields.len() != 2 {
            return Err(bad());
        }
        let u: usize = fields[0].parse().map_err(|_| bad())?;
        let v: usize = fields[1].parse().map_err(|_| bad())?;
        if u == 0 || v == 0 {
            return Err(CliError::input("graph_text", format!("line {}: vertex labels start at 1", i + 1)));
        }
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(CliError::input("graph_text", "no edges given"));
    }
    let n = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
    Ok(FeynmanGraph::new(n, &edges)?)
}

/// Comma-separated list of nonnegative integers, e.g. `0,0,2`.
pub fn parse_list(flag: &str, s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::input("usage", format!("--{flag}: `{t}` is not a nonnegative integer")))
        })
        .collect()
}

/// Inclusive range `a..b` or a comma-separated list.
pub fn parse_degrees(s: &str) -> Result<Vec<u32>, CliError> {
    if let Some((lo, hi)) = s.split_once("..") {
        let bad = || CliError::input("usage", format!("--degrees: bad range `{s}`"));
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if lo == 0 || lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    let v = parse_list("degrees", s)?;
    if v.contains(&0) {
        return Err(CliError::input("usage", "--degrees: degrees start at 1"));
    }
    Ok(v)
}
