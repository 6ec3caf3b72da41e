#![allow(clippy::needless_range_loop)]

use egraphsim::analysis::{compute_metrics, prune_links, realized_egraph};
use egraphsim::network::{EgraphSpec, NodeId};
use egraphsim::planner::{execute_plan, plan_complete, plan_hierarchical, plan_random};
use egraphsim::swap::SwapMode;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{Binomial, ChiSquared, ContinuousCDF, Discrete};

struct Brute {
    clustering: f64,
    avg_path: f64,
    components: usize,
}

/// Floyd-Warshall distances, triple enumeration for clustering, label
/// propagation for components.
fn brute_force(n: usize, edges: &[(usize, usize)]) -> Brute {
    const INF: usize = usize::MAX / 4;
    let mut adj = vec![vec![false; n]; n];
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
    }
    for &(a, b) in edges {
        adj[a][b] = true;
        adj[b][a] = true;
        d[a][b] = 1;
        d[b][a] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let (mut sum, mut pairs) = (0usize, 0usize);
    for i in 0..n {
        for j in i + 1..n {
            if d[i][j] < INF {
                sum += d[i][j];
                pairs += 1;
            }
        }
    }
    let mut clustering = 0.0;
    for v in 0..n {
        let nbrs: Vec<usize> = (0..n).filter(|&u| adj[v][u]).collect();
        let k = nbrs.len();
        if k >= 2 {
            let mut closed = 0;
            for x in 0..k {
                for y in x + 1..k {
                    if adj[nbrs[x]][nbrs[y]] {
                        closed += 1;
                    }
                }
            }
            clustering += closed as f64 / (k * (k - 1) / 2) as f64;
        }
    }
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in 0..n {
            if d[i][j] < INF {
                label[j] = label[j].min(i);
            }
        }
    }
    let mut roots = label.clone();
    roots.sort_unstable();
    roots.dedup();
    Brute {
        clustering: if n == 0 { 0.0 } else { clustering / n as f64 },
        avg_path: if pairs == 0 {
            0.0
        } else {
            sum as f64 / pairs as f64
        },
        components: roots.len(),
    }
}

fn check_graph(n: usize, edges: &[(usize, usize)]) {
    let g = EgraphSpec::new(n, "g", edges.iter().map(|&(a, b)| (NodeId(a), NodeId(b)))).unwrap();
    let m = compute_metrics(&g);
    let b = brute_force(n, edges);
    assert!(
        (m.clustering_coefficient - b.clustering).abs() < 1e-12,
        "{edges:?}"
    );
    assert!((m.avg_path_length - b.avg_path).abs() < 1e-12, "{edges:?}");
    assert_eq!(m.num_components, b.components, "{edges:?}");
    let degree_sum: usize = m.degree_histogram.iter().map(|(d, c)| d * c).sum();
    assert_eq!(degree_sum, 2 * m.edge_count);
    assert!((0.0..=1.0).contains(&m.clustering_coefficient));
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

#[test]
fn metrics_match_brute_force_exhaustively_up_to_six_nodes() {
    for n in 1..=6 {
        let pairs = all_pairs(n);
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            check_graph(n, &edges);
        }
    }
}

#[test]
fn metrics_match_brute_force_on_sampled_seven_node_graphs() {
    let pairs = all_pairs(7);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20_000 {
        let mask: u32 = rng.random_range(0..1 << pairs.len());
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        check_graph(7, &edges);
    }
}

#[test]
fn hierarchical_metrics() {
    let plan = plan_hierarchical(3).unwrap();
    let ex = execute_plan(&plan, &mut SwapMode::Ideal).unwrap();
    let m = compute_metrics(&realized_egraph(&ex.state));
    assert_eq!(m.edge_count, 15);
    assert!((m.mean_degree - 2.0 * 15.0 / 9.0).abs() < 1e-12);
    assert_eq!(m.num_components, 1);
}

#[test]
fn pruned_complete_graph_is_erdos_renyi() {
    let n = 8;
    let p = 0.3;
    let edges = n * (n - 1) / 2;
    let trials = 4000;
    let base = execute_plan(&plan_complete(n).unwrap(), &mut SwapMode::Ideal).unwrap();
    let mut counts = vec![0u64; edges + 1];
    let mut per_edge = vec![0u64; edges];
    let pairs = all_pairs(n);
    for seed in 0..trials {
        let mut state = base.state.clone();
        prune_links(&mut state, p, seed).unwrap();
        let g = realized_egraph(&state);
        counts[g.edge_count()] += 1;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if g.contains(NodeId(a), NodeId(b)) {
                per_edge[i] += 1;
            }
        }
    }

    // chi-square on the edge-count histogram against Binomial(edges, p),
    // merging bins until each expects at least 5 observations
    let binom = Binomial::new(p, edges as u64).unwrap();
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut obs, mut exp) = (0.0, 0.0);
    for k in 0..=edges {
        obs += counts[k] as f64;
        exp += binom.pmf(k as u64) * trials as f64;
        if exp >= 5.0 {
            bins.push((obs, exp));
            (obs, exp) = (0.0, 0.0);
        }
    }
    let last = bins.last_mut().unwrap();
    last.0 += obs;
    last.1 += exp;
    let stat: f64 = bins.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    let critical = ChiSquared::new((bins.len() - 1) as f64)
        .unwrap()
        .inverse_cdf(0.999);
    assert!(
        stat < critical,
        "chi-square {stat} >= {critical} over {} bins",
        bins.len()
    );

    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    for (i, &kept) in per_edge.iter().enumerate() {
        let freq = kept as f64 / trials as f64;
        assert!(
            (freq - p).abs() < 4.5 * sigma,
            "edge {:?} kept {freq}",
            pairs[i]
        );
    }
}

#[test]
fn random_plan_matches_binomial_mean() {
    let total: usize = (1..=100)
        .map(|seed| plan_random(20, 0.3, seed).unwrap().target().edge_count())
        .sum();
    let mean = total as f64 / 100.0;
    let sigma = (190.0 * 0.3 * 0.7 / 100.0f64).sqrt();
    assert!((mean - 57.0).abs() <= 3.0 * sigma, "mean {mean}");
}
