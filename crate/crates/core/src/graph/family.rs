use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{SimpleGraph, VertexId};
use crate::error::{Error, Result};

/// Named graph families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `n` isolated vertices.
    Empty(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// Cycle on `n >= 3` vertices.
    Cycle(usize),
    /// Path on `n >= 1` vertices.
    Path(usize),
    /// One center with `k` leaves.
    Star(usize),
    /// Path on `k + 1` vertices with every edge doubled, one copy of each
    /// doubled pair subdivided once.
    RobertsonChain(usize),
    /// Robertson chain with three leaves attached at each end vertex.
    RobertsonChainLeaves(usize),
    /// Two poles joined by three internally disjoint arcs with the given
    /// numbers of edges.
    Theta(usize, usize, usize),
}

impl Family {
    /// Parse a family token and its integer parameters, e.g.
    /// `("robertson_chain", [2])`.
    pub fn parse(name: &str, params: &[usize]) -> Result<Family> {
        let want = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad(name, format!("expected {} parameter(s), got {}", k, params.len())))
            }
        };
        Ok(match name {
            "empty" => {
                want(1)?;
                Family::Empty(params[0])
            }
            "complete" => {
                want(1)?;
                Family::Complete(params[0])
            }
            "complete_bipartite" => {
                want(2)?;
                Family::CompleteBipartite(params[0], params[1])
            }
            "cycle" => {
                want(1)?;
                Family::Cycle(params[0])
            }
            "path" => {
                want(1)?;
                Family::Path(params[0])
            }
            "star" => {
                want(1)?;
                Family::Star(params[0])
            }
            "robertson_chain" => {
                want(1)?;
                Family::RobertsonChain(params[0])
            }
            "robertson_chain_leaves" => {
                want(1)?;
                Family::RobertsonChainLeaves(params[0])
            }
            "theta" => {
                want(3)?;
                Family::Theta(params[0], params[1], params[2])
            }
            _ => return Err(bad(name, "unknown family".to_string())),
        })
    }
}

fn bad(family: &str, reason: String) -> Error {
    Error::BadParams { family: family.to_string(), reason }
}

fn build(n: usize, edges: Vec<(usize, usize)>) -> SimpleGraph {
    let ids: Vec<VertexId> = (0..n as VertexId).collect();
    SimpleGraph::from_index_edges(ids, edges)
}

pub fn family(f: &Family) -> Result<SimpleGraph> {
    Ok(match *f {
        Family::Empty(n) => build(n, Vec::new()),
        Family::Complete(n) => {
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    edges.push((a, b));
                }
            }
            build(n, edges)
        }
        Family::CompleteBipartite(p, q) => {
            let mut edges = Vec::new();
            for a in 0..p {
                for b in 0..q {
                    edges.push((a, p + b));
                }
            }
            build(p + q, edges)
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(bad("cycle", format!("need at least 3 vertices, got {}", n)));
            }
            build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
        }
        Family::Path(n) => {
            if n == 0 {
                return Err(bad("path", "need at least 1 vertex".to_string()));
            }
            build(n, (1..n).map(|i| (i - 1, i)).collect())
        }
        Family::Star(k) => build(k + 1, (1..=k).map(|i| (0, i)).collect()),
        Family::RobertsonChain(k) => {
            if k == 0 {
                return Err(bad("robertson_chain", "k must be positive".to_string()));
            }
            robertson_chain(k, 0)
        }
        Family::RobertsonChainLeaves(k) => {
            if k == 0 {
                return Err(bad("robertson_chain_leaves", "k must be positive".to_string()));
            }
            robertson_chain(k, 3)
        }
        Family::Theta(a, b, c) => {
            let arcs = [a, b, c];
            if arcs.contains(&0) {
                return Err(bad("theta", "arc lengths must be positive".to_string()));
            }
            if arcs.iter().filter(|&&l| l == 1).count() > 1 {
                return Err(bad("theta", "at most one arc may have length 1".to_string()));
            }
            let mut edges = Vec::new();
            let mut next = 2;
            for len in arcs {
                let mut prev = 0;
                for _ in 1..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
                edges.push((prev, 1));
            }
            build(next, edges)
        }
    })
}

/// Spine vertices `0..=k`, midpoints `k+1..=2k`, then `leaves` leaves at
/// vertex 0 followed by `leaves` leaves at vertex `k`.
fn robertson_chain(k: usize, leaves: usize) -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..k {
        let mid = k + 1 + i;
        edges.push((i, i + 1));
        edges.push((i, mid));
        edges.push((mid, i + 1));
    }
    let mut next = 2 * k + 1;
    for end in [0, k] {
        for _ in 0..leaves {
            edges.push((end, next));
            next += 1;
        }
    }
    build(next, edges)
}
