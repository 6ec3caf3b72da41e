//! Entanglement swapping: Bell measurement on two qubits held by a common
//! node, which joins the two links into one between the outer endpoints.

mod oracle;

pub use oracle::{product_state, statevector_oracle};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{LinkId, NetworkState, NodeId, SchmidtPair};

/// Bell states on the measured pair: `Psi = (|00> +- |11>)/sqrt2`,
/// `Phi = (|01> +- |10>)/sqrt2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellLabel {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl BellLabel {
    /// Fixed order used for tables and inverse-CDF sampling.
    pub const ALL: [BellLabel; 4] = [
        BellLabel::PsiPlus,
        BellLabel::PsiMinus,
        BellLabel::PhiPlus,
        BellLabel::PhiMinus,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BellLabel::PsiPlus => "PsiPlus",
            BellLabel::PsiMinus => "PsiMinus",
            BellLabel::PhiPlus => "PhiPlus",
            BellLabel::PhiMinus => "PhiMinus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellOutcome {
    pub label: BellLabel,
    pub probability: f64,
    pub result: SchmidtPair,
}

/// Closed-form outcome table for swapping links in states `s1 = (l1, l2)` and
/// `s2 = (m1, m2)`.
///
/// Psi outcomes leave the outer qubits in a state with weights `(l1 m1, l2 m2)`
/// and Phi outcomes in one with weights `(l1 m2, l2 m1)`; each sign occurs with
/// half the total weight. Zero-probability outcomes report the product state.
pub fn swap_outcomes(s1: SchmidtPair, s2: SchmidtPair) -> [BellOutcome; 4] {
    let (l1, l2) = (s1.lambda1(), s1.lambda2());
    let (m1, m2) = (s2.lambda1(), s2.lambda2());
    let (psi_hi, psi_lo) = (l1 * m1, l2 * m2);
    let (phi_a, phi_b) = (l1 * m2, l2 * m1);
    let psi = BellOutcome {
        label: BellLabel::PsiPlus,
        probability: 0.5 * (psi_hi + psi_lo),
        result: SchmidtPair::from_weights(psi_hi, psi_lo),
    };
    let phi = BellOutcome {
        label: BellLabel::PhiPlus,
        probability: 0.5 * (phi_a + phi_b),
        result: SchmidtPair::from_weights(phi_a, phi_b),
    };
    [
        psi,
        BellOutcome {
            label: BellLabel::PsiMinus,
            ..psi
        },
        phi,
        BellOutcome {
            label: BellLabel::PhiMinus,
            ..phi
        },
    ]
}

/// Expected singlet conversion probability of the swapped link.
pub fn average_scp(s1: SchmidtPair, s2: SchmidtPair) -> f64 {
    swap_outcomes(s1, s2)
        .iter()
        .map(|o| o.probability * o.result.scp())
        .sum()
}

/// Picks the outcome whose cumulative-probability interval contains `u`,
/// walking the table in its fixed order. `u` is expected in `[0, 1)`.
pub fn sample_outcome(outcomes: &[BellOutcome; 4], u: f64) -> &BellOutcome {
    let mut cumulative = 0.0;
    for o in outcomes {
        cumulative += o.probability;
        if u < cumulative {
            return o;
        }
    }
    // Rounding left u above the total; fall back to the last reachable outcome.
    outcomes
        .iter()
        .rev()
        .find(|o| o.probability > 0.0)
        .unwrap_or(&outcomes[0])
}

/// Sample mean and standard error of the swapped link's SCP over `samples`
/// independent swaps.
pub fn monte_carlo_scp<R: Rng + ?Sized>(
    s1: SchmidtPair,
    s2: SchmidtPair,
    samples: u64,
    rng: &mut R,
) -> (f64, f64) {
    if samples == 0 {
        return (f64::NAN, f64::NAN);
    }
    let outcomes = swap_outcomes(s1, s2);
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..samples {
        let scp = sample_outcome(&outcomes, rng.random::<f64>()).result.scp();
        sum += scp;
        sum_sq += scp * scp;
    }
    let m = samples as f64;
    let mean = sum / m;
    let var = if samples > 1 {
        ((sum_sq - m * mean * mean) / (m - 1.0)).max(0.0)
    } else {
        0.0
    };
    (mean, (var / m).sqrt())
}

/// Seeded generator for sampled swaps. ChaCha8 keeps streams identical across
/// platforms and releases.
#[derive(Debug, Clone)]
pub struct SampledStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SampledStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// How the state of a swapped link is determined.
#[derive(Debug, Clone)]
pub enum SwapMode {
    /// Both inputs maximally entangled; the output is too.
    Ideal,
    /// Output carries the expected SCP over all outcomes.
    Average,
    /// One outcome drawn from its Born probability.
    Sampled(Box<SampledStream>),
}

impl SwapMode {
    pub fn sampled(seed: u64) -> Self {
        SwapMode::Sampled(Box::new(SampledStream::new(seed)))
    }

    pub fn tag(&self) -> SwapModeTag {
        match self {
            SwapMode::Ideal => SwapModeTag::Ideal,
            SwapMode::Average => SwapModeTag::Average,
            SwapMode::Sampled(_) => SwapModeTag::Sampled,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            SwapMode::Sampled(s) => Some(s.seed()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SwapModeTag {
    Ideal,
    Average,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwapRecord {
    pub node: NodeId,
    pub consumed: (LinkId, LinkId),
    pub produced: LinkId,
    pub mode: SwapModeTag,
    pub outcome_label: Option<BellLabel>,
}

/// Bell-measures the qubits of `link_a` and `link_b` held at `node`, replacing
/// both links with one between their other endpoints.
pub fn perform_swap(
    state: &mut NetworkState,
    node: NodeId,
    link_a: LinkId,
    link_b: LinkId,
    mode: &mut SwapMode,
) -> Result<SwapRecord> {
    if link_a == link_b {
        return Err(Error::Aliasing(link_a));
    }
    state.check_node(node)?;
    let first = *state.link(link_a).ok_or(Error::MissingLink(link_a))?;
    let second = *state.link(link_b).ok_or(Error::MissingLink(link_b))?;
    let outer = |link: &crate::network::EntLink| {
        link.other_end(node).ok_or_else(|| {
            Error::SwapTopology(format!(
                "link {} ({}, {}) does not end at node {node}",
                link.id(),
                link.a(),
                link.b()
            ))
        })
    };
    let (left, right) = (outer(&first)?, outer(&second)?);
    if left == right {
        return Err(Error::SwapTopology(format!(
            "links {link_a} and {link_b} both join nodes {node} and {left}; swapping would create a self-link"
        )));
    }

    let (s1, s2) = (first.state(), second.state());
    let (result, outcome_label) = match mode {
        SwapMode::Ideal => {
            for s in [s1, s2] {
                if !s.is_maximal() {
                    return Err(Error::NotMaximallyEntangled(s.lambda2()));
                }
            }
            (SchmidtPair::maximal(), None)
        }
        SwapMode::Average => {
            let scp = average_scp(s1, s2).clamp(0.0, 1.0);
            (SchmidtPair::from_scp(scp)?, None)
        }
        SwapMode::Sampled(stream) => {
            let outcomes = swap_outcomes(s1, s2);
            let picked = sample_outcome(&outcomes, stream.rng().random::<f64>());
            (picked.result, Some(picked.label))
        }
    };

    let produced = state.apply_swap((link_a, link_b), left, right, result)?;
    Ok(SwapRecord {
        node,
        consumed: (link_a, link_b),
        produced: produced.id(),
        mode: mode.tag(),
        outcome_label,
    })
}
