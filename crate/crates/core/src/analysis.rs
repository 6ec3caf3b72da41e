//! Structural metrics of entanglement graphs and random pruning of links.

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{EgraphSpec, NetworkState};

/// Simple graph whose edges are the endpoint pairs of the live links.
/// Parallel links collapse into one edge.
pub fn realized_egraph(state: &NetworkState) -> EgraphSpec {
    let mut g = EgraphSpec::empty(state.num_nodes(), "realized");
    for link in state.links() {
        // links are canonical and in range, so this cannot fail
        let _ = g.insert_edge(link.a(), link.b());
    }
    g
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphMetrics {
    #[serde(rename = "degrees")]
    pub degree_histogram: BTreeMap<usize, usize>,
    pub mean_degree: f64,
    #[serde(rename = "clustering")]
    pub clustering_coefficient: f64,
    /// Mean shortest-path length over pairs in the same component; 0 when no
    /// such pair exists.
    pub avg_path_length: f64,
    #[serde(rename = "components")]
    pub num_components: usize,
    #[serde(rename = "edges")]
    pub edge_count: usize,
}

fn bfs_distances(adj: &[Vec<usize>], source: usize, dist: &mut [Option<usize>]) {
    dist.fill(None);
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap_or(0) + 1;
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(d);
                queue.push_back(v);
            }
        }
    }
}

fn local_clustering(adj: &[Vec<usize>], node: usize) -> f64 {
    let nbrs = &adj[node];
    let deg = nbrs.len();
    if deg < 2 {
        return 0.0;
    }
    let mut triangles = 0usize;
    for (i, &u) in nbrs.iter().enumerate() {
        for &v in &nbrs[i + 1..] {
            if adj[u].binary_search(&v).is_ok() {
                triangles += 1;
            }
        }
    }
    triangles as f64 / (deg * (deg - 1) / 2) as f64
}

pub fn compute_metrics(g: &EgraphSpec) -> GraphMetrics {
    let n = g.num_nodes();
    let adj = g.adjacency();

    let mut degree_histogram = BTreeMap::new();
    for list in &adj {
        *degree_histogram.entry(list.len()).or_insert(0) += 1;
    }

    let clustering_coefficient = if n == 0 {
        0.0
    } else {
        (0..n).map(|v| local_clustering(&adj, v)).sum::<f64>() / n as f64
    };

    let mut dist = vec![None; n];
    let mut component = vec![usize::MAX; n];
    let mut num_components = 0;
    let (mut path_sum, mut pairs) = (0u64, 0u64);
    for source in 0..n {
        bfs_distances(&adj, source, &mut dist);
        if component[source] == usize::MAX {
            for (v, d) in dist.iter().enumerate() {
                if d.is_some() {
                    component[v] = num_components;
                }
            }
            num_components += 1;
        }
        for d in dist[source + 1..].iter().flatten() {
            path_sum += *d as u64;
            pairs += 1;
        }
    }

    GraphMetrics {
        degree_histogram,
        mean_degree: if n == 0 {
            0.0
        } else {
            2.0 * g.edge_count() as f64 / n as f64
        },
        clustering_coefficient,
        avg_path_length: if pairs == 0 {
            0.0
        } else {
            path_sum as f64 / pairs as f64
        },
        num_components,
        edge_count: g.edge_count(),
    }
}

/// Measures away each live link independently with probability
/// `1 - keep_prob`. Links are visited in id order. Returns the number of links
/// destroyed.
pub fn prune_links(state: &mut NetworkState, keep_prob: f64, seed: u64) -> Result<usize> {
    if !(0.0..=1.0).contains(&keep_prob) {
        return Err(Error::Domain(format!(
            "keep probability must lie in [0, 1], got {keep_prob}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let doomed: Vec<_> = state
        .link_ids()
        .into_iter()
        .filter(|_| rng.random::<f64>() >= keep_prob)
        .collect();
    for &id in &doomed {
        state.destroy_link(id)?;
    }
    Ok(doomed.len())
}
