//! Reading graphs and graph lists from files: JSON (one graph object or an
//! array of them) or graph6, one graph per line.

use std::fs;
use std::path::Path;

use serde_json::Value;
use ufgraph_core::SimpleGraph;

use crate::formats::graph_from_json;
use crate::graph6;

pub fn parse_graphs(text: &str) -> Result<Vec<SimpleGraph>, String> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        let v: Value = serde_json::from_str(trimmed).map_err(|e| e.to_string())?;
        return match v {
            Value::Array(items) => items.iter().map(graph_from_json).collect(),
            other => Ok(vec![graph_from_json(&other)?]),
        };
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| graph6::decode(l).map_err(|e| e.to_string()))
        .collect()
}

pub fn read_graphs(path: &Path) -> Result<Vec<SimpleGraph>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))?;
    parse_graphs(&text).map_err(|e| format!("{}: {}", path.display(), e))
}

/// Exactly one graph.
pub fn read_graph(path: &Path) -> Result<SimpleGraph, String> {
    let mut all = read_graphs(path)?;
    match all.len() {
        1 => Ok(all.pop().expect("one graph")),
        k => Err(format!("{}: expected one graph, found {}", path.display(), k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_formats() {
        let a = parse_graphs("# triangle\nBw\n\nA_\n").unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a[0].size(), 3);
        let b = parse_graphs(r#"{"vertices":[1,2],"edges":[[1,2]]}"#).unwrap();
        assert_eq!(b[0].ids(), &[1, 2]);
        let c = parse_graphs(r#"[{"edges":[]},{"vertices":[0,1],"edges":[[0,1]]}]"#).unwrap();
        assert_eq!(c.len(), 2);
        assert!(parse_graphs("??x").is_err());
    }
}
