//! Compiles target entanglement graphs into an initial link allocation and a
//! swap schedule, and runs those schedules against a fresh network.
//!
//! Every target edge `(a, b)` gets its own chain of `b - a` local links, one
//! per segment it covers, merged left to right by swaps at `a+1, ..., b-1`.
//! Links are never shared between edges, so the cost of a plan is the sum of
//! the spans of its edges.
//!
//! # Link handles
//!
//! A schedule refers to links through plan-local [`LinkHandle`]s. With `K`
//! total allocated links, handles `0..K` name the initial links in the order
//! [`NetworkState::with_allocation`] creates them: all links of segment 0,
//! then segment 1, and so on. The `i`-th swap instruction produces handle
//! `K + i`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::realized_egraph;
use crate::error::{Error, Result};
use crate::network::{Edge, EgraphSpec, LinkId, NetworkState, NodeId};
use crate::swap::{perform_swap, SwapMode, SwapRecord};

/// Upper bound on the number of initial links a single plan may allocate.
pub const MAX_PLAN_COST: u64 = 20_000_000;

/// Largest supported hierarchy depth.
pub const MAX_LEVELS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinkHandle(pub u64);

impl fmt::Display for LinkHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapInstruction {
    pub node: NodeId,
    pub left: LinkHandle,
    pub right: LinkHandle,
}

/// The chained-swap recipe for a single link between `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkFragment {
    pub a: NodeId,
    pub b: NodeId,
}

impl LinkFragment {
    /// Local links consumed.
    pub fn cost(&self) -> u64 {
        (self.b.0 - self.a.0) as u64
    }

    pub fn segments(&self) -> std::ops::Range<usize> {
        self.a.0..self.b.0
    }

    /// Swap nodes in execution order.
    pub fn swap_nodes(&self) -> impl Iterator<Item = NodeId> {
        (self.a.0 + 1..self.b.0).map(NodeId)
    }
}

/// Recipe for a link between `a` and `b` (given in either order).
pub fn plan_link(a: NodeId, b: NodeId) -> Result<LinkFragment> {
    if a == b {
        return Err(Error::DegenerateLink(a));
    }
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    Ok(LinkFragment { a, b })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PlanRepr")]
pub struct Plan {
    target: EgraphSpec,
    allocation: Vec<u64>,
    schedule: Vec<SwapInstruction>,
    predicted_cost: u64,
    /// Links measured away after every swap has run.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    destroy: Vec<LinkHandle>,
}

#[derive(Deserialize)]
struct PlanRepr {
    target: EgraphSpec,
    allocation: Vec<u64>,
    schedule: Vec<SwapInstruction>,
    predicted_cost: u64,
    #[serde(default)]
    destroy: Vec<LinkHandle>,
}

impl TryFrom<PlanRepr> for Plan {
    type Error = Error;

    fn try_from(repr: PlanRepr) -> Result<Self> {
        if repr.allocation.len() + 1 != repr.target.num_nodes() {
            return Err(Error::PlanCorruption(format!(
                "allocation covers {} segments but the target has {} nodes",
                repr.allocation.len(),
                repr.target.num_nodes()
            )));
        }
        if repr.allocation.iter().sum::<u64>() != repr.predicted_cost {
            return Err(Error::PlanCorruption(
                "predicted_cost differs from the allocation total".into(),
            ));
        }
        Ok(Plan {
            target: repr.target,
            allocation: repr.allocation,
            schedule: repr.schedule,
            predicted_cost: repr.predicted_cost,
            destroy: repr.destroy,
        })
    }
}

impl Plan {
    /// Dedicated-links plan for an arbitrary target graph.
    pub fn for_target(target: EgraphSpec) -> Result<Self> {
        Ok(compile(target)?.0)
    }

    pub fn target(&self) -> &EgraphSpec {
        &self.target
    }

    pub fn allocation(&self) -> &[u64] {
        &self.allocation
    }

    pub fn schedule(&self) -> &[SwapInstruction] {
        &self.schedule
    }

    pub fn destroy(&self) -> &[LinkHandle] {
        &self.destroy
    }

    pub fn predicted_cost(&self) -> u64 {
        self.predicted_cost
    }

    pub fn num_nodes(&self) -> usize {
        self.target.num_nodes()
    }

    pub fn swap_count(&self) -> usize {
        self.schedule.len()
    }
}

/// Allocation and schedule for `target`, plus the handle of the finished link
/// of each edge (in lexicographic edge order).
fn compile(target: EgraphSpec) -> Result<(Plan, Vec<LinkHandle>)> {
    let n = target.num_nodes();
    if n < 2 {
        return Err(Error::InvalidTopology(format!(
            "a line network needs at least 2 nodes, got {n}"
        )));
    }
    let fragments: Vec<LinkFragment> = target
        .edges()
        .map(|(a, b)| plan_link(a, b))
        .collect::<Result<_>>()?;

    let predicted_cost: u64 = fragments.iter().map(LinkFragment::cost).sum();
    if predicted_cost > MAX_PLAN_COST {
        return Err(Error::Range(format!(
            "plan needs {predicted_cost} initial links, limit is {MAX_PLAN_COST}"
        )));
    }

    let mut allocation = vec![0u64; n - 1];
    for f in &fragments {
        for s in f.segments() {
            allocation[s] += 1;
        }
    }
    let mut next_on_segment: Vec<u64> = allocation
        .iter()
        .scan(0u64, |offset, &count| {
            let start = *offset;
            *offset += count;
            Some(start)
        })
        .collect();

    let mut next_produced = predicted_cost;
    let mut schedule =
        Vec::with_capacity((predicted_cost as usize).saturating_sub(fragments.len()));
    let mut finished = Vec::with_capacity(fragments.len());
    for f in &fragments {
        let mut take = |segment: usize| {
            let h = LinkHandle(next_on_segment[segment]);
            next_on_segment[segment] += 1;
            h
        };
        let mut acc = take(f.a.0);
        for node in f.swap_nodes() {
            let right = take(node.0);
            schedule.push(SwapInstruction {
                node,
                left: acc,
                right,
            });
            acc = LinkHandle(next_produced);
            next_produced += 1;
        }
        finished.push(acc);
    }

    let plan = Plan {
        target,
        allocation,
        schedule,
        predicted_cost,
        destroy: Vec::new(),
    };
    Ok((plan, finished))
}

fn edge(a: usize, b: usize) -> Edge {
    (NodeId(a), NodeId(b))
}

/// Cycle `0 - 1 - ... - (N-1) - 0`.
pub fn plan_ring(nodes: usize) -> Result<Plan> {
    if nodes < 3 {
        return Err(Error::InvalidTopology(format!(
            "a ring needs at least 3 nodes, got {nodes}"
        )));
    }
    let edges = (0..nodes - 1)
        .map(|i| edge(i, i + 1))
        .chain(std::iter::once(edge(0, nodes - 1)));
    Plan::for_target(EgraphSpec::new(nodes, "ring", edges)?)
}

/// Every pair of nodes linked.
pub fn plan_complete(nodes: usize) -> Result<Plan> {
    if nodes < 2 {
        return Err(Error::InvalidTopology(format!(
            "a complete graph needs at least 2 nodes, got {nodes}"
        )));
    }
    let edges = (0..nodes).flat_map(|i| (i + 1..nodes).map(move |j| edge(i, j)));
    Plan::for_target(EgraphSpec::new(nodes, "complete", edges)?)
}

/// How lattice sites are laid out along the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeEmbedding {
    /// Site `(r, c)` at position `r * n + c`.
    RowMajor,
    /// Boustrophedon: odd rows run right to left.
    Snake,
}

impl LatticeEmbedding {
    pub fn position(&self, side: usize, row: usize, col: usize) -> usize {
        match self {
            LatticeEmbedding::RowMajor => row * side + col,
            LatticeEmbedding::Snake if row % 2 == 1 => row * side + (side - 1 - col),
            LatticeEmbedding::Snake => row * side + col,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            LatticeEmbedding::RowMajor => "rowmajor",
            LatticeEmbedding::Snake => "snake",
        }
    }
}

impl FromStr for LatticeEmbedding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rowmajor" | "row-major" => Ok(LatticeEmbedding::RowMajor),
            "snake" => Ok(LatticeEmbedding::Snake),
            other => Err(Error::Domain(format!(
                "unknown lattice embedding `{other}`"
            ))),
        }
    }
}

impl fmt::Display for LatticeEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `side x side` square grid.
pub fn plan_lattice(side: usize, embedding: LatticeEmbedding) -> Result<Plan> {
    if side < 2 {
        return Err(Error::InvalidTopology(format!(
            "a lattice needs side at least 2, got {side}"
        )));
    }
    // cost is (side - 1) side (side + 1); refuse before building the edge set
    if (side as u128 - 1) * side as u128 * (side as u128 + 1) > MAX_PLAN_COST as u128 {
        return Err(Error::Range(format!(
            "lattice side {side} exceeds the plan size limit"
        )));
    }
    let pos = |r, c| NodeId(embedding.position(side, r, c));
    let mut edges = Vec::with_capacity(2 * side * (side - 1));
    for r in 0..side {
        for c in 0..side {
            if c + 1 < side {
                edges.push((pos(r, c), pos(r, c + 1)));
            }
            if r + 1 < side {
                edges.push((pos(r, c), pos(r + 1, c)));
            }
        }
    }
    let name = format!("lattice-{}", embedding.as_str());
    Plan::for_target(EgraphSpec::new(side * side, name, edges)?)
}

/// Dyadic hierarchy over `2^levels + 1` nodes: the chain plus, for each level
/// `i` in `1..=levels`, links between consecutive multiples of `2^i`.
pub fn hierarchical_target(levels: u32) -> Result<EgraphSpec> {
    if levels < 1 {
        return Err(Error::InvalidTopology(
            "a hierarchical graph needs at least one level".into(),
        ));
    }
    if levels > MAX_LEVELS {
        return Err(Error::Range(format!(
            "at most {MAX_LEVELS} levels are supported, got {levels}"
        )));
    }
    let span = 1usize << levels;
    let nodes = span + 1;
    let chain = (0..span).map(|i| edge(i, i + 1));
    let shortcuts = (1..=levels).flat_map(move |level| {
        let step = 1usize << level;
        (0..span / step).map(move |j| edge(j * step, (j + 1) * step))
    });
    EgraphSpec::new(nodes, "hierarchical", chain.chain(shortcuts))
}

pub fn plan_hierarchical(levels: u32) -> Result<Plan> {
    Plan::for_target(hierarchical_target(levels)?)
}

/// Complete graph whose links are each kept with probability `keep_prob`;
/// the rest are measured away after construction, so the full complete-graph
/// cost is still paid.
pub fn plan_random(nodes: usize, keep_prob: f64, seed: u64) -> Result<Plan> {
    if !(0.0..=1.0).contains(&keep_prob) {
        return Err(Error::Domain(format!(
            "keep probability must lie in [0, 1], got {keep_prob}"
        )));
    }
    let complete = plan_complete(nodes)?;
    let (mut plan, finished) = compile(complete.target.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut survivors = EgraphSpec::empty(nodes, "random");
    for ((a, b), handle) in complete.target.edges().zip(finished) {
        if rng.random::<f64>() < keep_prob {
            survivors.insert_edge(a, b)?;
        } else {
            plan.destroy.push(handle);
        }
    }
    plan.target = survivors;
    Ok(plan)
}

/// A named topology with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Topology {
    Ring {
        nodes: usize,
    },
    Lattice {
        side: usize,
        embedding: LatticeEmbedding,
    },
    Complete {
        nodes: usize,
    },
    Random {
        nodes: usize,
        keep_prob: f64,
        seed: u64,
    },
    Hierarchical {
        levels: u32,
    },
}

impl Topology {
    pub fn plan(&self) -> Result<Plan> {
        match *self {
            Topology::Ring { nodes } => plan_ring(nodes),
            Topology::Lattice { side, embedding } => plan_lattice(side, embedding),
            Topology::Complete { nodes } => plan_complete(nodes),
            Topology::Random {
                nodes,
                keep_prob,
                seed,
            } => plan_random(nodes, keep_prob, seed),
            Topology::Hierarchical { levels } => plan_hierarchical(levels),
        }
    }

    /// Label understood by [`crate::accounting::compare`].
    pub fn label(&self) -> String {
        match self {
            Topology::Ring { .. } => "ring".into(),
            Topology::Lattice { embedding, .. } => format!("lattice-{}", embedding.as_str()),
            Topology::Complete { .. } => "complete".into(),
            Topology::Random { .. } => "random".into(),
            Topology::Hierarchical { .. } => "hierarchical".into(),
        }
    }

    /// Integer parameters that determine the cost formula.
    pub fn params(&self) -> BTreeMap<String, u64> {
        let mut p = BTreeMap::new();
        match *self {
            Topology::Ring { nodes } | Topology::Complete { nodes } => {
                p.insert("nodes".into(), nodes as u64);
            }
            Topology::Random { nodes, seed, .. } => {
                p.insert("nodes".into(), nodes as u64);
                p.insert("seed".into(), seed);
            }
            Topology::Lattice { side, .. } => {
                p.insert("side".into(), side as u64);
            }
            Topology::Hierarchical { levels } => {
                p.insert("levels".into(), levels as u64);
            }
        }
        p
    }
}

/// Outcome of running a plan.
#[derive(Debug, Clone)]
pub struct Execution {
    pub state: NetworkState,
    pub egraph: EgraphSpec,
    pub records: Vec<SwapRecord>,
}

/// Allocates a fresh network per `plan.allocation`, runs the schedule, then the
/// scheduled destructions.
pub fn execute_plan(plan: &Plan, mode: &mut SwapMode) -> Result<Execution> {
    let mut state = NetworkState::with_allocation(plan.num_nodes(), &plan.allocation)?;
    let mut handles: Vec<Option<LinkId>> = state.link_ids().into_iter().map(Some).collect();
    if handles.len() as u64 != plan.predicted_cost {
        return Err(Error::PlanCorruption(
            "allocation does not match predicted cost".into(),
        ));
    }
    handles.reserve(plan.schedule.len());

    let resolve = |handles: &mut Vec<Option<LinkId>>, h: LinkHandle| {
        handles
            .get_mut(h.0 as usize)
            .and_then(Option::take)
            .ok_or_else(|| Error::PlanCorruption(format!("handle {h} does not name a live link")))
    };

    let mut records = Vec::with_capacity(plan.schedule.len());
    for (i, instr) in plan.schedule.iter().enumerate() {
        let left = resolve(&mut handles, instr.left)?;
        let right = resolve(&mut handles, instr.right)?;
        let record = perform_swap(&mut state, instr.node, left, right, mode).map_err(|e| {
            Error::PlanCorruption(format!("swap instruction {i} at node {}: {e}", instr.node))
        })?;
        handles.push(Some(record.produced));
        records.push(record);
    }
    for &h in &plan.destroy {
        let id = resolve(&mut handles, h)?;
        state.destroy_link(id)?;
    }

    let egraph = realized_egraph(&state).with_name(plan.target.name());
    if !egraph.same_graph(&plan.target) || state.link_count() != plan.target.edge_count() {
        return Err(Error::PlanCorruption(format!(
            "realized graph has {} links over {} edges, target has {} edges",
            state.link_count(),
            egraph.edge_count(),
            plan.target.edge_count()
        )));
    }
    Ok(Execution {
        state,
        egraph,
        records,
    })
}
