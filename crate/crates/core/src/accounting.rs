//! Closed-form initial-link costs for each topology, and reports comparing
//! them with the costs actually paid by executed plans.
//!
//! All evaluators use exact integer arithmetic.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::CostLedger;

/// Reference ring cost `2N`.
pub fn formula_ring(nodes: u64) -> Result<u64> {
    if nodes < 3 {
        return Err(Error::InvalidTopology(format!(
            "a ring needs at least 3 nodes, got {nodes}"
        )));
    }
    nodes
        .checked_mul(2)
        .ok_or_else(|| Error::Range(format!("ring cost for {nodes} nodes overflows")))
}

fn lattice_overflow(side: u64) -> Error {
    Error::Range(format!(
        "lattice cost for side {side} does not fit in 64 bits"
    ))
}

/// `(n-1) * sum_{i=1}^{n-1} (2^i + 1) + n^2 - 1`, summed term by term.
pub fn formula_lattice_unexpanded(side: u64) -> Result<u64> {
    if side < 2 {
        return Err(Error::InvalidTopology(format!(
            "a lattice needs side at least 2, got {side}"
        )));
    }
    let mut inner = 0u64;
    for i in 1..side {
        let term = 1u64
            .checked_shl(i as u32)
            .and_then(|p| p.checked_add(1))
            .ok_or_else(|| lattice_overflow(side))?;
        inner = inner
            .checked_add(term)
            .ok_or_else(|| lattice_overflow(side))?;
    }
    (side - 1)
        .checked_mul(inner)
        .and_then(|v| v.checked_add(side * side - 1))
        .ok_or_else(|| lattice_overflow(side))
}

/// Reference lattice cost `(n-1) 2^n + 2(n-1)^2`, cross-checked against the
/// unexpanded sum.
pub fn formula_lattice(side: u64) -> Result<u64> {
    if side < 2 {
        return Err(Error::InvalidTopology(format!(
            "a lattice needs side at least 2, got {side}"
        )));
    }
    if side >= 64 {
        return Err(lattice_overflow(side));
    }
    let m = side - 1;
    let expanded = m
        .checked_mul(1u64 << side)
        .and_then(|v| v.checked_add(2 * m * m))
        .ok_or_else(|| lattice_overflow(side))?;
    let unexpanded = formula_lattice_unexpanded(side)?;
    if expanded != unexpanded {
        return Err(Error::Domain(format!(
            "lattice forms disagree at side {side}: {expanded} vs {unexpanded}"
        )));
    }
    Ok(expanded)
}

/// Cost actually paid by the row-major lattice plan: `(n-1) n (n+1)`.
pub fn lattice_rowmajor_cost(side: u64) -> u64 {
    (side - 1) * side * (side + 1)
}

/// Reference complete-graph cost `(N-1) N (N+1) / 6`, cross-checked against
/// `sum_{i=1}^{N-1} i (N - i)`.
pub fn formula_complete(nodes: u64) -> Result<u64> {
    if nodes < 2 {
        return Err(Error::InvalidTopology(format!(
            "a complete graph needs at least 2 nodes, got {nodes}"
        )));
    }
    let n = nodes as u128;
    let closed = (n - 1) * n * (n + 1) / 6;
    let summed: u128 = (1..n).map(|i| i * (n - i)).sum();
    if closed != summed {
        return Err(Error::Domain(format!(
            "complete-graph forms disagree at {nodes} nodes"
        )));
    }
    u64::try_from(closed)
        .map_err(|_| Error::Range(format!("complete-graph cost for {nodes} nodes overflows")))
}

/// Mean number of local links per edge of the complete graph, as an exact
/// rational. Equals `(N + 1) / 3`.
pub fn avg_links_per_edge(nodes: u64) -> Result<Ratio<u64>> {
    let total = formula_complete(nodes)?;
    let edges = nodes * (nodes - 1) / 2;
    Ok(Ratio::new(total, edges))
}

/// Reference hierarchical small-world cost `N (1 + log2(N - 1))`. Requires
/// `N - 1` to be a power of two of at least 2.
pub fn formula_hsw(nodes: u64) -> Result<u64> {
    if nodes < 3 || !(nodes - 1).is_power_of_two() {
        return Err(Error::Domain(format!(
            "hierarchical cost needs N - 1 to be a power of two >= 2, got N = {nodes}"
        )));
    }
    let levels = (nodes - 1).trailing_zeros() as u64;
    nodes
        .checked_mul(1 + levels)
        .ok_or_else(|| Error::Range(format!("hierarchical cost for {nodes} nodes overflows")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub topology: String,
    pub params: BTreeMap<String, u64>,
    pub paper_formula_value: u64,
    pub simulated_value: u64,
    pub ratio: f64,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub const CSV_HEADER: &str = "topology,params,paper_K,simulated_K,ratio,match";

impl CostReport {
    pub fn csv_row(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{},{},{},{},{:.12},{}",
            self.topology,
            params,
            self.paper_formula_value,
            self.simulated_value,
            self.ratio,
            self.matches
        )
    }
}

fn param(params: &BTreeMap<String, u64>, key: &str) -> Result<u64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::Domain(format!("missing parameter `{key}`")))
}

/// Reference cost for a topology label.
pub fn reference_formula(topology: &str, params: &BTreeMap<String, u64>) -> Result<u64> {
    match topology {
        "ring" => formula_ring(param(params, "nodes")?),
        "complete" | "random" => formula_complete(param(params, "nodes")?),
        "lattice" | "lattice-rowmajor" | "lattice-snake" => formula_lattice(param(params, "side")?),
        "hierarchical" => {
            let nodes = match params.get("levels") {
                Some(&m) if (1..63).contains(&m) => (1u64 << m) + 1,
                Some(&m) => return Err(Error::Domain(format!("unsupported level count {m}"))),
                None => param(params, "nodes")?,
            };
            formula_hsw(nodes)
        }
        other => Err(Error::Domain(format!("unknown topology `{other}`"))),
    }
}

/// Compares the initial links recorded in `ledger` with the reference cost.
pub fn compare(
    topology: &str,
    params: &BTreeMap<String, u64>,
    ledger: &CostLedger,
) -> Result<CostReport> {
    compare_value(topology, params, ledger.initial_links_created())
}

pub fn compare_value(
    topology: &str,
    params: &BTreeMap<String, u64>,
    simulated_value: u64,
) -> Result<CostReport> {
    let reference = reference_formula(topology, params)?;
    let ratio = if reference == 0 {
        f64::NAN
    } else {
        simulated_value as f64 / reference as f64
    };
    Ok(CostReport {
        topology: topology.to_string(),
        params: params.clone(),
        paper_formula_value: reference,
        simulated_value,
        ratio,
        matches: reference == simulated_value,
    })
}
