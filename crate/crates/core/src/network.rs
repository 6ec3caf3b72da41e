//! Nodes on a line, the entanglement links between them, and the ledger of
//! resources spent building them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for the normalization of Schmidt coefficients.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Ordered Schmidt coefficients `(lambda1, lambda2)` of a pure two-qubit state
/// `sqrt(lambda1)|00> + sqrt(lambda2)|11>`, with `lambda1 >= lambda2` and
/// `lambda1 + lambda2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSchmidt")]
pub struct SchmidtPair {
    lambda1: f64,
    lambda2: f64,
}

#[derive(Deserialize)]
struct RawSchmidt {
    lambda1: f64,
    lambda2: f64,
}

impl TryFrom<RawSchmidt> for SchmidtPair {
    type Error = Error;

    fn try_from(raw: RawSchmidt) -> Result<Self> {
        SchmidtPair::new(raw.lambda1, raw.lambda2)
    }
}

impl SchmidtPair {
    pub fn new(lambda1: f64, lambda2: f64) -> Result<Self> {
        let invalid = |reason| Error::InvalidSchmidt {
            lambda1,
            lambda2,
            reason,
        };
        if !lambda1.is_finite() || !lambda2.is_finite() {
            return Err(invalid("coefficients must be finite"));
        }
        if !(0.0..=1.0).contains(&lambda1) || !(0.0..=1.0).contains(&lambda2) {
            return Err(invalid("coefficients must lie in [0, 1]"));
        }
        if (lambda1 + lambda2 - 1.0).abs() > NORM_TOLERANCE {
            return Err(invalid("coefficients must sum to 1"));
        }
        if lambda1 < lambda2 {
            return Err(invalid("lambda1 must be at least lambda2"));
        }
        Ok(Self { lambda1, lambda2 })
    }

    /// Builds the pair from its smaller coefficient, which must lie in `[0, 1/2]`.
    pub fn from_lambda2(lambda2: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&lambda2) {
            return Err(Error::InvalidSchmidt {
                lambda1: 1.0 - lambda2,
                lambda2,
                reason: "lambda2 must lie in [0, 1/2]",
            });
        }
        Ok(Self {
            lambda1: 1.0 - lambda2,
            lambda2,
        })
    }

    /// The state whose singlet conversion probability is `scp`.
    pub fn from_scp(scp: f64) -> Result<Self> {
        Self::from_lambda2(scp / 2.0)
    }

    /// Normalizes two non-negative weights and sorts them descending. A zero
    /// total yields the product state.
    pub fn from_weights(w1: f64, w2: f64) -> Self {
        debug_assert!(w1 >= 0.0 && w2 >= 0.0);
        let total = w1 + w2;
        if total <= 0.0 {
            return Self::product();
        }
        let lo = w1.min(w2);
        let lambda2 = lo / total;
        Self {
            lambda1: 1.0 - lambda2,
            lambda2,
        }
    }

    pub const fn maximal() -> Self {
        Self {
            lambda1: 0.5,
            lambda2: 0.5,
        }
    }

    pub const fn product() -> Self {
        Self {
            lambda1: 1.0,
            lambda2: 0.0,
        }
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    /// Singlet conversion probability `2 * lambda2`.
    pub fn scp(&self) -> f64 {
        2.0 * self.lambda2
    }

    pub fn is_maximal(&self) -> bool {
        (self.lambda2 - 0.5).abs() <= NORM_TOLERANCE
    }
}

impl Default for SchmidtPair {
    fn default() -> Self {
        Self::maximal()
    }
}

/// Position of a node on the line.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<usize> for NodeId {
    fn from(index: usize) -> Self {
        NodeId(index)
    }
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct LinkId(pub u64);

impl fmt::Display for LinkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An entanglement link. Endpoints are stored in canonical order `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntLink {
    id: LinkId,
    a: NodeId,
    b: NodeId,
    state: SchmidtPair,
}

impl EntLink {
    pub fn new(id: LinkId, a: NodeId, b: NodeId, state: SchmidtPair) -> Result<Self> {
        if a == b {
            return Err(Error::DegenerateLink(a));
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Ok(Self { id, a, b, state })
    }

    pub fn id(&self) -> LinkId {
        self.id
    }

    pub fn a(&self) -> NodeId {
        self.a
    }

    pub fn b(&self) -> NodeId {
        self.b
    }

    pub fn endpoints(&self) -> (NodeId, NodeId) {
        (self.a, self.b)
    }

    pub fn state(&self) -> SchmidtPair {
        self.state
    }

    /// Line distance `b - a`.
    pub fn span(&self) -> usize {
        self.b.0 - self.a.0
    }

    pub fn is_local(&self) -> bool {
        self.span() == 1
    }

    pub fn touches(&self, node: NodeId) -> bool {
        self.a == node || self.b == node
    }

    /// The endpoint that is not `node`, if `node` is an endpoint.
    pub fn other_end(&self, node: NodeId) -> Option<NodeId> {
        if self.a == node {
            Some(self.b)
        } else if self.b == node {
            Some(self.a)
        } else {
            None
        }
    }
}

/// Exact resource counters for one run.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CostLedger {
    initial_links_created: u64,
    swaps_performed: u64,
    links_destroyed: u64,
    per_segment_created: Vec<u64>,
}

impl CostLedger {
    pub fn new(segments: usize) -> Self {
        Self {
            per_segment_created: vec![0; segments],
            ..Self::default()
        }
    }

    pub fn initial_links_created(&self) -> u64 {
        self.initial_links_created
    }

    pub fn swaps_performed(&self) -> u64 {
        self.swaps_performed
    }

    pub fn links_destroyed(&self) -> u64 {
        self.links_destroyed
    }

    pub fn per_segment_created(&self) -> &[u64] {
        &self.per_segment_created
    }

    /// Number of links that should be alive given the counters: each swap
    /// consumes two links and produces one.
    pub fn expected_live_links(&self) -> u64 {
        self.initial_links_created - self.links_destroyed - self.swaps_performed
    }

    fn is_consistent(&self) -> bool {
        self.per_segment_created.iter().sum::<u64>() == self.initial_links_created
            && self.links_destroyed + self.swaps_performed <= self.initial_links_created
    }

    fn record_local(&mut self, segment: usize) {
        self.initial_links_created += 1;
        self.per_segment_created[segment] += 1;
    }

    pub(crate) fn record_swap(&mut self) {
        self.swaps_performed += 1;
    }

    fn record_destroyed(&mut self) {
        self.links_destroyed += 1;
    }
}

/// `N` nodes on a line, the live links between them and the cost ledger.
///
/// Every local link and every swap product takes the next id, so ids are
/// dense and links are stored in a slab indexed by id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "NetworkRepr", try_from = "NetworkRepr")]
pub struct NetworkState {
    num_nodes: usize,
    links: Vec<Option<EntLink>>,
    live: usize,
    ledger: CostLedger,
}

impl NetworkState {
    /// An empty network of `num_nodes` nodes.
    pub fn new(num_nodes: usize) -> Result<Self> {
        if num_nodes < 2 {
            return Err(Error::InvalidTopology(format!(
                "a line network needs at least 2 nodes, got {num_nodes}"
            )));
        }
        Ok(Self {
            num_nodes,
            links: Vec::new(),
            live: 0,
            ledger: CostLedger::new(num_nodes - 1),
        })
    }

    /// `k` maximally entangled local links on each of the `N - 1` segments.
    pub fn chain(num_nodes: usize, k: u64) -> Result<Self> {
        let segments = num_nodes.saturating_sub(1);
        Self::with_allocation(num_nodes, &vec![k; segments])
    }

    /// Maximally entangled local links per segment. Links are created segment
    /// by segment, so ids are assigned in segment-major order.
    pub fn with_allocation(num_nodes: usize, allocation: &[u64]) -> Result<Self> {
        let mut state = Self::new(num_nodes)?;
        if allocation.len() != state.segments() {
            return Err(Error::InvalidTopology(format!(
                "allocation has {} entries for {} segments",
                allocation.len(),
                state.segments()
            )));
        }
        for (segment, &count) in allocation.iter().enumerate() {
            for _ in 0..count {
                state.add_local_link(segment, SchmidtPair::maximal())?;
            }
        }
        Ok(state)
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn segments(&self) -> usize {
        self.num_nodes - 1
    }

    pub fn ledger(&self) -> &CostLedger {
        &self.ledger
    }

    pub fn link(&self, id: LinkId) -> Option<&EntLink> {
        usize::try_from(id.0)
            .ok()
            .and_then(|i| self.links.get(i))
            .and_then(Option::as_ref)
    }

    /// Live links in id order.
    pub fn links(&self) -> impl Iterator<Item = &EntLink> + '_ {
        self.links.iter().flatten()
    }

    pub fn link_ids(&self) -> Vec<LinkId> {
        self.links().map(|l| l.id).collect()
    }

    pub fn link_count(&self) -> usize {
        self.live
    }

    pub fn check_node(&self, node: NodeId) -> Result<()> {
        if node.0 >= self.num_nodes {
            return Err(Error::NodeOutOfRange {
                node,
                num_nodes: self.num_nodes,
            });
        }
        Ok(())
    }

    /// Creates a link between `segment` and `segment + 1`, charged as an
    /// initial resource.
    pub fn add_local_link(&mut self, segment: usize, state: SchmidtPair) -> Result<EntLink> {
        if segment >= self.segments() {
            return Err(Error::SegmentOutOfRange {
                segment,
                segments: self.segments(),
            });
        }
        let link = self.insert(NodeId(segment), NodeId(segment + 1), state)?;
        self.ledger.record_local(segment);
        Ok(link)
    }

    /// Removes a link by a computational-basis measurement of one of its qubits.
    pub fn destroy_link(&mut self, id: LinkId) -> Result<EntLink> {
        let link = self.take(id).ok_or(Error::MissingLink(id))?;
        self.ledger.record_destroyed();
        Ok(link)
    }

    fn insert(&mut self, a: NodeId, b: NodeId, state: SchmidtPair) -> Result<EntLink> {
        self.check_node(a)?;
        self.check_node(b)?;
        let link = EntLink::new(self.next_id(), a, b, state)?;
        self.links.push(Some(link));
        self.live += 1;
        Ok(link)
    }

    fn next_id(&self) -> LinkId {
        LinkId(self.links.len() as u64)
    }

    fn take(&mut self, id: LinkId) -> Option<EntLink> {
        let link = self.links.get_mut(usize::try_from(id.0).ok()?)?.take()?;
        self.live -= 1;
        Some(link)
    }

    /// Replaces two live links with one produced by a swap. The caller has
    /// already validated the operands.
    pub(crate) fn apply_swap(
        &mut self,
        consumed: (LinkId, LinkId),
        a: NodeId,
        b: NodeId,
        state: SchmidtPair,
    ) -> Result<EntLink> {
        let produced = EntLink::new(self.next_id(), a, b, state)?;
        self.take(consumed.0);
        self.take(consumed.1);
        self.links.push(Some(produced));
        self.live += 1;
        self.ledger.record_swap();
        Ok(produced)
    }
}

#[derive(Serialize, Deserialize)]
struct LinkRepr {
    id: LinkId,
    a: NodeId,
    b: NodeId,
    lambda2: f64,
}

#[derive(Serialize, Deserialize)]
struct NetworkRepr {
    num_nodes: usize,
    links: Vec<LinkRepr>,
    ledger: CostLedger,
}

impl From<NetworkState> for NetworkRepr {
    fn from(state: NetworkState) -> Self {
        Self {
            num_nodes: state.num_nodes,
            links: state
                .links()
                .map(|l| LinkRepr {
                    id: l.id,
                    a: l.a,
                    b: l.b,
                    lambda2: l.state.lambda2,
                })
                .collect(),
            ledger: state.ledger,
        }
    }
}

impl TryFrom<NetworkRepr> for NetworkState {
    type Error = Error;

    fn try_from(repr: NetworkRepr) -> Result<Self> {
        let mut state = NetworkState::new(repr.num_nodes)?;
        if repr.ledger.per_segment_created.len() != state.segments() || !repr.ledger.is_consistent()
        {
            return Err(Error::Domain("inconsistent ledger".into()));
        }
        let issued = repr.ledger.initial_links_created + repr.ledger.swaps_performed;
        let slots = usize::try_from(issued)
            .ok()
            .filter(|&n| n >= repr.links.len())
            .ok_or_else(|| Error::Domain("inconsistent ledger".into()))?;
        state.links = vec![None; slots];
        for l in repr.links {
            state.check_node(l.a)?;
            state.check_node(l.b)?;
            let link = EntLink::new(l.id, l.a, l.b, SchmidtPair::from_lambda2(l.lambda2)?)?;
            let slot = usize::try_from(l.id.0)
                .ok()
                .and_then(|i| state.links.get_mut(i))
                .ok_or_else(|| Error::Domain(format!("link id {} was never issued", l.id)))?;
            if slot.replace(link).is_some() {
                return Err(Error::Domain(format!("duplicate link id {}", l.id)));
            }
            state.live += 1;
        }
        if state.live as u64 != repr.ledger.expected_live_links() {
            return Err(Error::Domain(
                "live link count disagrees with ledger".into(),
            ));
        }
        state.ledger = repr.ledger;
        Ok(state)
    }
}

/// An unordered edge stored as `(low, high)`.
pub type Edge = (NodeId, NodeId);

pub fn canonical_edge(a: NodeId, b: NodeId) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A target or realized entanglement graph: a simple undirected graph on
/// `num_nodes` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EgraphRepr")]
pub struct EgraphSpec {
    num_nodes: usize,
    edges: BTreeSet<Edge>,
    name: String,
}

#[derive(Deserialize)]
struct EgraphRepr {
    num_nodes: usize,
    edges: Vec<Edge>,
    name: String,
}

impl TryFrom<EgraphRepr> for EgraphSpec {
    type Error = Error;

    fn try_from(repr: EgraphRepr) -> Result<Self> {
        let count = repr.edges.len();
        let spec = EgraphSpec::new(repr.num_nodes, repr.name, repr.edges)?;
        if spec.edge_count() != count {
            return Err(Error::Domain("duplicate edges".into()));
        }
        Ok(spec)
    }
}

impl EgraphSpec {
    /// Builds a graph from edges given in either orientation; duplicates
    /// collapse.
    pub fn new(
        num_nodes: usize,
        name: impl Into<String>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let mut spec = Self::empty(num_nodes, name);
        for (a, b) in edges {
            spec.insert_edge(a, b)?;
        }
        Ok(spec)
    }

    pub fn empty(num_nodes: usize, name: impl Into<String>) -> Self {
        Self {
            num_nodes,
            edges: BTreeSet::new(),
            name: name.into(),
        }
    }

    /// Returns false if the edge was already present.
    pub fn insert_edge(&mut self, a: NodeId, b: NodeId) -> Result<bool> {
        if a == b {
            return Err(Error::DegenerateLink(a));
        }
        for n in [a, b] {
            if n.0 >= self.num_nodes {
                return Err(Error::NodeOutOfRange {
                    node: n,
                    num_nodes: self.num_nodes,
                });
            }
        }
        Ok(self.edges.insert(canonical_edge(a, b)))
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, a: NodeId, b: NodeId) -> bool {
        self.edges.contains(&canonical_edge(a, b))
    }

    /// Same vertex count and edge set, ignoring the label.
    pub fn same_graph(&self, other: &EgraphSpec) -> bool {
        self.num_nodes == other.num_nodes && self.edges == other.edges
    }

    /// Sorted adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_nodes];
        for &(a, b) in &self.edges {
            adj[a.0].push(b.0);
            adj[b.0].push(a.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}
