//! Graph documents: the JSON form written by `gen`, plus DIMACS `p edge` input.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use septamer::families::LabeledGraph;
use septamer::mwis::Weight;
use septamer::{Graph, VertexSet};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Number>>,
}

/// A validated document.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub graph: Graph,
    pub labels: BTreeMap<String, usize>,
    pub weights: Option<Vec<Weight>>,
}

impl GraphDocument {
    pub fn from_labeled(lg: &LabeledGraph) -> Self {
        GraphDocument {
            n: lg.graph.n(),
            edges: lg.graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: lg.labels.clone(),
            weights: None,
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphDocument {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: BTreeMap::new(),
            weights: None,
        }
    }

    pub fn validate(self) -> Result<Loaded, CliError> {
        let n = self.n;
        let mut seen = BTreeSet::new();
        for (i, &[u, v]) in self.edges.iter().enumerate() {
            if u >= v {
                return Err(CliError::input(format!("edges[{i}]: expected u < v, got [{u}, {v}]")));
            }
            if v >= n {
                return Err(CliError::input(format!("edges[{i}]: vertex {v} out of range (n = {n})")));
            }
            if !seen.insert((u, v)) {
                return Err(CliError::input(format!("edges[{i}]: duplicate edge [{u}, {v}]")));
            }
        }
        for (name, &v) in &self.labels {
            if v >= n {
                return Err(CliError::input(format!("labels.{name}: vertex {v} out of range (n = {n})")));
            }
        }
        let weights = match self.weights {
            None => None,
            Some(ws) => Some(parse_weights(&ws, n, "weights")?),
        };
        let graph = Graph::from_edges(n, self.edges.iter().map(|&[u, v]| (u, v)))
            .map_err(|e| CliError::input(e.to_string()))?;
        Ok(Loaded { graph, labels: self.labels, weights })
    }
}

pub fn parse_weights(ws: &[Number], n: usize, field: &str) -> Result<Vec<Weight>, CliError> {
    if ws.len() != n {
        return Err(CliError::input(format!("{field}: expected {n} entries, got {}", ws.len())));
    }
    ws.iter()
        .enumerate()
        .map(|(i, w)| {
            let text = w.to_string();
            let value = parse_decimal(&text).ok_or_else(|| {
                CliError::input(format!("{field}[{i}]: {text} is not representable as an exact weight"))
            })?;
            if value < Weight::from_integer(0) {
                return Err(CliError::input(format!("{field}[{i}]: weight {text} is negative")));
            }
            Ok(value)
        })
        .collect()
}

/// Exact value of a JSON number literal such as `-12.5e-3`.
pub fn parse_decimal(text: &str) -> Option<Weight> {
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let digits = digits.trim_start_matches('0');
    if digits.len() > 30 {
        return None;
    }
    let numer: i128 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let scale = exp - frac.len() as i32;
    if scale.unsigned_abs() > 30 {
        return if numer == 0 { Some(Weight::from_integer(0)) } else { None };
    }
    let pow = 10i128.checked_pow(scale.unsigned_abs())?;
    let value = if scale >= 0 {
        Ratio::from_integer(numer.checked_mul(pow)?)
    } else {
        Ratio::new(numer, pow)
    };
    Some(if neg { -value } else { value })
}

/// Parses either format; JSON when the first non-blank byte is `{`.
pub fn parse_graph(text: &str) -> Result<Loaded, CliError> {
    if text.trim_start().starts_with('{') {
        let doc: GraphDocument = serde_json::from_str(text).map_err(|e| {
            CliError::input(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        doc.validate()
    } else {
        parse_dimacs(text)
    }
}

/// `p edge N M` followed by `M` lines `e u v` (1-indexed). `c` lines are comments.
pub fn parse_dimacs(text: &str) -> Result<Loaded, CliError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let bad = |msg: String| CliError::input(format!("line {lineno}: {msg}"));
        let mut parts = line.split_whitespace();
        match parts.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(bad("second problem line".into()));
                }
                let fields: Vec<&str> = parts.collect();
                let [kind, n, m] = fields[..] else {
                    return Err(bad("expected `p edge N M`".into()));
                };
                if kind != "edge" && kind != "col" {
                    return Err(bad(format!("unsupported problem type `{kind}`")));
                }
                let n = n.parse().map_err(|_| bad(format!("invalid vertex count `{n}`")))?;
                let m = m.parse().map_err(|_| bad(format!("invalid edge count `{m}`")))?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| bad("edge before problem line".into()))?;
                let fields: Vec<&str> = parts.collect();
                let [u, v] = fields[..] else {
                    return Err(bad("expected `e u v`".into()));
                };
                let parse = |s: &str| -> Result<usize, CliError> {
                    match s.parse::<usize>() {
                        Ok(x) if (1..=n).contains(&x) => Ok(x - 1),
                        _ => Err(bad(format!("vertex `{s}` is not in 1..={n}"))),
                    }
                };
                let (u, v) = (parse(u)?, parse(v)?);
                if u == v {
                    return Err(bad(format!("self-loop on vertex {}", u + 1)));
                }
                edges.push((u, v));
            }
            Some(other) => return Err(bad(format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| CliError::input("missing `p edge N M` line"))?;
    if edges.len() != m {
        return Err(CliError::input(format!("header declares {m} edges, found {}", edges.len())));
    }
    let graph = Graph::from_edges(n, edges).map_err(|e| CliError::input(e.to_string()))?;
    Ok(Loaded { graph, labels: BTreeMap::new(), weights: None })
}

impl Loaded {
    /// A vertex by label, falling back to a plain index.
    pub fn resolve(&self, token: &str) -> Result<usize, CliError> {
        let token = token.trim();
        if let Some(&v) = self.labels.get(token) {
            return Ok(v);
        }
        match token.parse::<usize>() {
            Ok(v) if v < self.graph.n() => Ok(v),
            Ok(v) => Err(CliError::input(format!("vertex {v} out of range (n = {})", self.graph.n()))),
            Err(_) => Err(CliError::input(format!("unknown vertex label `{token}`"))),
        }
    }

    pub fn resolve_list(&self, list: &str) -> Result<VertexSet, CliError> {
        list.split(',').filter(|t| !t.trim().is_empty()).map(|t| self.resolve(t)).collect()
    }

    pub fn label_of(&self, v: usize) -> Option<&str> {
        self.labels.iter().find(|(_, &x)| x == v).map(|(k, _)| k.as_str())
    }
}
