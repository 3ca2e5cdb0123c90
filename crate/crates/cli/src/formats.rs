//! JSON interchange for graphs, morphisms, cotrees, complexes and reports,
//! plus sparse matrix text and the plain cell-count table.
//!
//! Objects are `serde_json` maps, which keep keys sorted, so output is
//! byte-identical across runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use ufgraph_core::abrams::{CubicalComplex, Slot};
use ufgraph_core::cograph::{Cotree, CotreeLabel, CotreeNode};
use ufgraph_core::generation::{GenerationReport, StageReport};
use ufgraph_core::homology::{HomologySummary, Presentation, SparseMatrix, Subgroup};
use ufgraph_core::morphism::TopMinorMorphism;
use ufgraph_core::swiatkowski::{support_vertices, SupportReport, SwiatkowskiCell, VertexState};
use ufgraph_core::{Error, Path, SimpleGraph, VertexId};

use crate::graph6;

/// Graph schema: `{"vertices":[ids],"edges":[[a,b],...],"labels":{id:token}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(default)]
    pub vertices: Vec<VertexId>,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default)]
    pub labels: BTreeMap<String, String>,
}

impl GraphJson {
    pub fn from_graph(g: &SimpleGraph) -> Self {
        let labels = (0..g.order())
            .filter_map(|v| g.label(v).map(|l| (g.id(v).to_string(), l.to_string())))
            .collect();
        GraphJson {
            vertices: g.ids().to_vec(),
            edges: g.edges().iter().map(|&(a, b)| [g.id(a), g.id(b)]).collect(),
            labels,
        }
    }

    /// Vertices missing from the list but named by an edge are an error.
    pub fn to_graph(&self) -> Result<SimpleGraph, Error> {
        let pairs: Vec<(VertexId, VertexId)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut g = SimpleGraph::new(&self.vertices, &pairs)?;
        for (id, label) in &self.labels {
            let v = id
                .parse::<VertexId>()
                .ok()
                .and_then(|id| g.index_of(id))
                .ok_or_else(|| Error::DanglingEndpoint(id.parse().unwrap_or(-1)))?;
            g = g.with_label(v, label.clone());
        }
        Ok(g)
    }
}

pub fn graph_to_json(g: &SimpleGraph) -> Value {
    serde_json::to_value(GraphJson::from_graph(g)).expect("graph serializes")
}

pub fn graph_from_json(v: &Value) -> Result<SimpleGraph, String> {
    let parsed: GraphJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
    parsed.to_graph().map_err(|e| e.to_string())
}

/// Number when it fits in 64 bits, decimal string otherwise.
pub fn big(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn big_rows(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(big).collect())).collect())
}

fn edge_key(g: &SimpleGraph, e: usize) -> String {
    let (a, b) = g.edge(e);
    format!("{}-{}", g.id(a), g.id(b))
}

/// Morphism schema: `{"rho_V":{src:dst},"rho_E":{"a-b":[path vertex ids]}}`,
/// all ids. Paths run from the image of `a` to the image of `b`.
pub fn morphism_to_json(m: &TopMinorMorphism) -> Value {
    let (s, t) = (&m.source, &m.target);
    let rho_v: serde_json::Map<String, Value> =
        (0..s.order()).map(|v| (s.id(v).to_string(), json!(t.id(m.rho_v[v])))).collect();
    let rho_e: serde_json::Map<String, Value> = (0..s.size())
        .map(|e| {
            let from = m.rho_v[s.edge(e).0];
            let walk: Vec<VertexId> = m.rho_e[e].oriented_from(from).iter().map(|&x| t.id(x)).collect();
            (edge_key(s, e), json!(walk))
        })
        .collect();
    json!({ "rho_V": rho_v, "rho_E": rho_e })
}

/// Inverse of [`morphism_to_json`]; the result is not validated.
pub fn morphism_from_json(v: &Value, source: Arc<SimpleGraph>, target: Arc<SimpleGraph>) -> Result<TopMinorMorphism, String> {
    let obj = v.as_object().ok_or("morphism must be an object")?;
    let rv = obj.get("rho_V").and_then(Value::as_object).ok_or("missing rho_V")?;
    let re = obj.get("rho_E").and_then(Value::as_object).ok_or("missing rho_E")?;
    let tgt_index = |x: &Value| -> Result<usize, String> {
        let id = x.as_i64().ok_or("vertex ids must be integers")?;
        target.index_of(id).ok_or_else(|| format!("{} is not a target vertex", id))
    };
    let mut rho_v = Vec::with_capacity(source.order());
    for v in 0..source.order() {
        let x = rv.get(&source.id(v).to_string()).ok_or_else(|| format!("rho_V misses {}", source.id(v)))?;
        rho_v.push(tgt_index(x)?);
    }
    let mut rho_e = Vec::with_capacity(source.size());
    for e in 0..source.size() {
        let key = edge_key(&source, e);
        let (a, b) = source.edge(e);
        let alt = format!("{}-{}", source.id(b), source.id(a));
        let walk = re.get(&key).or_else(|| re.get(&alt)).and_then(Value::as_array).ok_or_else(|| format!("rho_E misses {}", key))?;
        let verts = walk.iter().map(tgt_index).collect::<Result<Vec<_>, _>>()?;
        rho_e.push(Path::new(verts).map_err(|e| e.to_string())?);
    }
    Ok(TopMinorMorphism::new(source, target, rho_v, rho_e))
}

/// Cotree schema: `{"nodes":[{"id","label","children":[ids]}],"root":id,
/// "leaf_map":{leaf:vertex}}` with vertex indices of the cograph.
pub fn cotree_to_json(t: &Cotree) -> Value {
    let nodes: Vec<Value> = t
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| json!({ "id": i, "label": n.label.token(), "children": n.children }))
        .collect();
    let leaf_map: serde_json::Map<String, Value> = t.leaf_map.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({ "nodes": nodes, "root": t.root, "leaf_map": leaf_map })
}

pub fn cotree_from_json(v: &Value) -> Result<Cotree, String> {
    #[derive(Deserialize)]
    struct NodeJson {
        id: usize,
        label: String,
        #[serde(default)]
        children: Vec<usize>,
    }
    #[derive(Deserialize)]
    struct TreeJson {
        nodes: Vec<NodeJson>,
        root: usize,
        #[serde(default)]
        leaf_map: BTreeMap<String, usize>,
    }
    let parsed: TreeJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
    let mut slots: Vec<Option<CotreeNode>> = vec![None; parsed.nodes.len()];
    for n in parsed.nodes {
        let label = CotreeLabel::parse(&n.label).ok_or_else(|| format!("bad label {:?}", n.label))?;
        let slot = slots.get_mut(n.id).ok_or_else(|| format!("node id {} out of range", n.id))?;
        if slot.is_some() {
            return Err(format!("node id {} repeated", n.id));
        }
        *slot = Some(CotreeNode { label, children: n.children });
    }
    let nodes = slots.into_iter().map(|s| s.expect("every id filled")).collect();
    let mut t = Cotree::from_nodes(nodes, parsed.root);
    if !parsed.leaf_map.is_empty() {
        t.leaf_map = parsed
            .leaf_map
            .iter()
            .map(|(k, v)| k.parse::<usize>().map(|k| (k, *v)).map_err(|_| format!("bad leaf key {:?}", k)))
            .collect::<Result<_, _>>()?;
    }
    Ok(t)
}

pub fn presentation_to_json(p: &Presentation) -> Value {
    json!({ "free": p.free, "torsion": p.torsion.iter().map(big).collect::<Vec<_>>() })
}

pub fn summary_to_json(s: &HomologySummary) -> Value {
    json!({ "betti": s.betti, "torsion": big_rows(&s.torsion) })
}

pub fn subgroup_to_json(s: &Subgroup) -> Value {
    json!({
        "ambient": presentation_to_json(&s.ambient),
        "rank": s.rank(),
        "is_everything": s.is_everything(),
        "index": s.index().as_ref().map(big),
        "hnf": big_rows(&s.hnf),
    })
}

fn slot_token(g: &SimpleGraph, s: Slot) -> String {
    match s {
        Slot::Vertex(v) => g.id(v).to_string(),
        Slot::Edge(e) => edge_key(g, e),
    }
}

pub fn matrix_to_json(m: &SparseMatrix) -> Value {
    let entries: Vec<Value> = m.triplets().map(|(r, c, v)| json!([r, c, v])).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

/// Complex dump: cells per dimension as slot tokens, and boundary triplets.
pub fn complex_to_json(cx: &CubicalComplex) -> Value {
    let g = cx.graph();
    let cells: Vec<Value> = (0..=cx.top())
        .map(|d| {
            Value::Array(
                cx.cells(d)
                    .map(|c| Value::Array(c.slots.iter().map(|&s| json!(slot_token(g, s))).collect()))
                    .collect(),
            )
        })
        .collect();
    let boundaries: Vec<Value> = (1..=cx.top())
        .map(|d| {
            let mut m = matrix_to_json(cx.chain_complex().boundary(d));
            m["degree"] = json!(d);
            m
        })
        .collect();
    json!({
        "graph": graph_to_json(g),
        "n": cx.particles(),
        "ordered": cx.is_ordered(),
        "cell_counts": cx.cell_counts(),
        "cells": cells,
        "boundaries": boundaries,
    })
}

/// Coordinate text: a `rows cols nnz` header, then `row col value` lines,
/// 0-indexed. Lines starting with `#` are comments.
pub fn matrix_to_text(m: &SparseMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# rows cols nnz");
    let _ = writeln!(out, "{} {} {}", m.rows(), m.cols(), m.nnz());
    for (r, c, v) in m.triplets() {
        let _ = writeln!(out, "{} {} {}", r, c, v);
    }
    out
}

pub fn matrix_from_text(text: &str) -> Result<SparseMatrix, String> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or("missing shape line")?;
    let nums = |l: &str| -> Result<Vec<i64>, String> {
        l.split_whitespace().map(|x| x.parse::<i64>().map_err(|_| format!("bad number {:?}", x))).collect()
    };
    let shape = nums(header)?;
    if shape.len() < 2 || shape[0] < 0 || shape[1] < 0 {
        return Err("shape line needs rows and cols".into());
    }
    let (rows, cols) = (shape[0] as usize, shape[1] as usize);
    let mut entries = Vec::new();
    for l in lines {
        let t = nums(l)?;
        if t.len() != 3 || t[0] < 0 || t[1] < 0 || t[0] as usize >= rows || t[1] as usize >= cols {
            return Err(format!("bad entry line {:?}", l));
        }
        entries.push((t[0] as usize, t[1] as usize, t[2]));
    }
    if let Some(&nnz) = shape.get(2) {
        if nnz as usize != entries.len() {
            return Err(format!("header promises {} entries, found {}", nnz, entries.len()));
        }
    }
    Ok(SparseMatrix::from_triplets(rows, cols, &entries))
}

/// `cells 10 30 15` style table used by golden files.
pub fn counts_table(counts: &[usize], summary: &HomologySummary) -> String {
    let row = |xs: Vec<String>| xs.join(" ");
    let mut out = String::new();
    let _ = writeln!(out, "cells {}", row(counts.iter().map(ToString::to_string).collect()));
    let _ = writeln!(out, "betti {}", row(summary.betti.iter().map(ToString::to_string).collect()));
    for (d, t) in summary.torsion.iter().enumerate() {
        if !t.is_empty() {
            let _ = writeln!(out, "torsion {} {}", d, row(t.iter().map(ToString::to_string).collect()));
        }
    }
    out
}

/// One row per cell: the weight of every edge, the state of every vertex
/// (`empty`, `self` or the half-edge's edge) and the support size.
pub fn cells_to_csv(g: &SimpleGraph, cells: &[SwiatkowskiCell]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (0..g.size()).map(|e| format!("e{}", edge_key(g, e))).collect();
    header.extend((0..g.order()).map(|v| format!("v{}", g.id(v))));
    header.push("support".into());
    w.write_record(&header).expect("in-memory csv");
    for c in cells {
        let mut row: Vec<String> = c.edge_weights.iter().map(ToString::to_string).collect();
        row.extend(c.vertex_states.iter().map(|st| match st {
            VertexState::Empty => "empty".to_string(),
            VertexState::Itself => "self".to_string(),
            VertexState::Half(e) => edge_key(g, *e),
        }));
        row.push(support_vertices(g, c).len().to_string());
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8 csv")
}

pub fn support_report_to_json(r: &SupportReport) -> Value {
    let violations: Vec<String> = r.violations.iter().map(|v| format!("{:?}", v)).collect();
    json!({
        "i": r.i,
        "n": r.n,
        "cells": r.cells,
        "max_support": r.max_support,
        "bound": r.bound,
        "ambient_is_cograph": r.ambient_is_cograph,
        "violations": violations,
        "passed": r.passed(),
    })
}

pub fn generation_to_json(r: &GenerationReport) -> Value {
    let generators: Vec<Value> = r
        .generators
        .iter()
        .map(|s| {
            json!({
                "generator": graph_to_json(&s.generator),
                "graph6": graph6::encode(&s.generator),
                "evaluated": s.evaluated,
                "morphisms": s.morphisms,
                "isotopy_classes": s.isotopy_classes,
                "images": s.images,
                "image_rank": s.image_rank,
                "cumulative_rank": s.cumulative_rank,
                "witness": s.witness.as_ref().map(morphism_to_json),
            })
        })
        .collect();
    let levels: Vec<Value> = r
        .levels
        .iter()
        .map(|l| {
            json!({
                "level": l.level,
                "rank": l.rank,
                "is_generated": l.is_generated,
                "agrees_with_previous": l.agrees_with_previous,
            })
        })
        .collect();
    json!({
        "target": graph_to_json(&r.target),
        "i": r.i,
        "n": r.n,
        "ordered": r.ordered,
        "level": r.level,
        "subdivided": { "vertices": r.subdivided.order(), "edges": r.subdivided.size() },
        "ambient": presentation_to_json(&r.ambient),
        "achieved": subgroup_to_json(&r.achieved),
        "is_generated": r.is_generated,
        "generators": generators,
        "levels": levels,
    })
}

/// Human-readable generation table.
pub fn generation_table(r: &GenerationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "H_{}(D_{}) at extra subdivision {}: rank {}, torsion {:?}",
        r.i,
        r.n,
        r.level,
        r.ambient.free,
        r.ambient.torsion.iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    let _ = writeln!(out, "{:<14} {:>10} {:>10} {:>16}", "generator", "morphisms", "image rank", "cumulative rank");
    for s in &r.generators {
        let name = graph6::encode(&s.generator);
        if s.evaluated {
            let _ = writeln!(out, "{:<14} {:>10} {:>10} {:>16}", name, s.morphisms, s.image_rank, s.cumulative_rank);
        } else {
            let _ = writeln!(out, "{:<14} {:>10} {:>10} {:>16}", name, "-", "-", s.cumulative_rank);
        }
    }
    let _ = writeln!(out, "generated: {}", r.is_generated);
    out
}

pub fn stage_to_json(r: &StageReport, subdivided: &SimpleGraph) -> Value {
    json!({
        "stage": r.filter.token(),
        "level": r.level,
        "subdivided": { "vertices": subdivided.order(), "edges": subdivided.size() },
        "candidates": r.candidates,
        "maximal": r.maximal.len(),
        "contributing": r.contributing,
        "subgroup": subgroup_to_json(&r.subgroup),
        "rank": r.subgroup.rank(),
        "of": r.subgroup.ambient.free,
    })
}

pub fn stage_table(r: &StageReport) -> String {
    format!(
        "{} at extra subdivision {}: rank {} of {}, {} maximal of {} candidates, full group: {}\n",
        r.filter.token(),
        r.level,
        r.subgroup.rank(),
        r.subgroup.ambient.free,
        r.maximal.len(),
        r.candidates,
        r.subgroup.is_everything()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use ufgraph_core::cograph::{cotree_of, enumerate_cotrees};
    use ufgraph_core::graph::{family, Family};
    use ufgraph_core::morphism::{enumerate_tm, EmbeddingKind};

    #[test]
    fn graph_round_trip() {
        let g = SimpleGraph::new(&[4, 7, 9], &[(4, 9), (7, 9)]).unwrap().with_label(1, "x");
        let v = graph_to_json(&g);
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"edges":[[4,9],[7,9]],"labels":{"7":"x"},"vertices":[4,7,9]}"#
        );
        assert_eq!(graph_from_json(&v).unwrap(), g);
        assert!(graph_from_json(&json!({"vertices":[0],"edges":[[0,1]]})).is_err());
    }

    #[test]
    fn morphism_round_trip() {
        let s = Arc::new(family(&Family::Cycle(3)).unwrap());
        let t = Arc::new(family(&Family::Complete(4)).unwrap());
        for m in enumerate_tm(&s, &t, EmbeddingKind::Tm, None).morphisms {
            let v = morphism_to_json(&m);
            let back = morphism_from_json(&v, s.clone(), t.clone()).unwrap();
            assert_eq!(back.rho_v, m.rho_v);
            assert_eq!(back.image_edges(), m.image_edges());
            assert!(back.is_valid());
        }
    }

    #[test]
    fn cotree_round_trip() {
        for t in enumerate_cotrees(4) {
            assert_eq!(cotree_from_json(&cotree_to_json(&t)).unwrap(), t);
        }
        let k2 = cotree_of(&family(&Family::Complete(2)).unwrap()).unwrap();
        assert_eq!(cotree_from_json(&cotree_to_json(&k2)).unwrap(), k2);
        assert!(cotree_from_json(&json!({"nodes":[{"id":0,"label":"X"}],"root":0})).is_err());
    }

    #[test]
    fn cell_csv_shape() {
        let k2 = family(&Family::Complete(2)).unwrap();
        let cells = ufgraph_core::swiatkowski::enumerate_cells(&k2, 1, 2);
        let text = cells_to_csv(&k2, &cells);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "e0-1,v0,v1,support");
        assert_eq!(lines.len(), cells.len() + 1);
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = SparseMatrix::from_triplets(3, 2, &[(0, 0, 1), (2, 1, -4)]);
        let text = matrix_to_text(&m);
        assert_eq!(text, "# rows cols nnz\n3 2 2\n0 0 1\n2 1 -4\n");
        assert_eq!(matrix_from_text(&text).unwrap(), m);
        assert!(matrix_from_text("2 2 1\n5 0 1\n").is_err());
        assert!(matrix_from_text("2 2 2\n0 0 1\n").is_err());
    }
}
