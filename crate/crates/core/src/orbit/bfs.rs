//! Breadth-first search of the Cremona orbit, deduplicated by canonical form.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{canonical_form, condition_star, cremona_at, CanonicalForm, CenterSet, Configuration};

#[derive(Clone, Copy, Debug)]
pub struct OrbitLimits {
    pub max_depth: usize,
    pub max_nodes: usize,
    /// Threads used to expand a frontier; the output does not depend on it.
    pub workers: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParentEdge {
    pub parent: usize,
    pub centers: CenterSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitNode {
    pub id: usize,
    pub canonical_form: CanonicalForm,
    pub depth: usize,
    pub representative: Configuration,
    pub parent_edge: Option<ParentEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEdge {
    pub source: usize,
    pub target: usize,
    pub centers: CenterSet,
}

/// A move whose result could not be canonicalized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedMove {
    pub source: usize,
    pub centers: CenterSet,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitGraph {
    pub max_depth: usize,
    pub max_nodes: usize,
    /// The node cap stopped the search before `max_depth` was exhausted.
    pub truncated: bool,
    pub nodes: Vec<OrbitNode>,
    pub edges: Vec<OrbitEdge>,
    pub skipped: Vec<SkippedMove>,
}

enum Expansion {
    Child(Configuration, CanonicalForm),
    Degenerate(String),
}

fn expand(config: &Configuration, centers: CenterSet) -> Option<Expansion> {
    if !condition_star(config, centers) {
        return None;
    }
    let child = match cremona_at(config, centers) {
        Ok(c) => c,
        Err(e) => return Some(Expansion::Degenerate(e.to_string())),
    };
    Some(match canonical_form(&child) {
        Ok(cf) => Expansion::Child(child, cf),
        Err(e) => Expansion::Degenerate(e.to_string()),
    })
}

/// Explores configurations reachable by Cremona moves at every center set
/// satisfying (*), level by level. Children of a level are computed in
/// parallel and merged in (parent id, center set) order, so the graph is the
/// same for any worker count.
pub fn orbit_bfs(config: &Configuration, limits: OrbitLimits) -> Result<OrbitGraph> {
    if limits.max_nodes < 1 || limits.workers < 1 {
        return Err(Error::InvalidParameter("max_nodes and workers must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(limits.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;

    let root_cf = canonical_form(config)?;
    let mut index: HashMap<CanonicalForm, usize> = HashMap::new();
    index.insert(root_cf.clone(), 0);
    let mut graph = OrbitGraph {
        max_depth: limits.max_depth,
        max_nodes: limits.max_nodes,
        truncated: false,
        nodes: vec![OrbitNode {
            id: 0,
            canonical_form: root_cf,
            depth: 0,
            representative: config.clone(),
            parent_edge: None,
        }],
        edges: Vec::new(),
        skipped: Vec::new(),
    };

    let k = config.k();
    let mut frontier: Vec<usize> = vec![0];
    for depth in 0..limits.max_depth {
        if frontier.is_empty() {
            break;
        }
        let tasks: Vec<(usize, CenterSet)> =
            frontier.iter().flat_map(|&id| CenterSet::all(k).map(move |c| (id, c))).collect();
        let results: Vec<Option<Expansion>> = pool.install(|| {
            tasks
                .par_iter()
                .map(|&(id, centers)| expand(&graph.nodes[id].representative, centers))
                .collect()
        });

        let mut next = Vec::new();
        for (&(source, centers), result) in tasks.iter().zip(results) {
            match result {
                None => {}
                Some(Expansion::Degenerate(reason)) => graph.skipped.push(SkippedMove { source, centers, reason }),
                Some(Expansion::Child(child, cf)) => {
                    let target = match index.get(&cf) {
                        Some(&t) => t,
                        None => {
                            if graph.nodes.len() >= limits.max_nodes {
                                graph.truncated = true;
                                return Ok(graph);
                            }
                            let id = graph.nodes.len();
                            index.insert(cf.clone(), id);
                            graph.nodes.push(OrbitNode {
                                id,
                                canonical_form: cf,
                                depth: depth + 1,
                                representative: child,
                                parent_edge: Some(ParentEdge { parent: source, centers }),
                            });
                            next.push(id);
                            id
                        }
                    };
                    graph.edges.push(OrbitEdge { source, target, centers });
                }
            }
        }
        frontier = next;
    }
    Ok(graph)
}
