//! Brute-force four-qubit state-vector evaluation of a Bell measurement on
//! the middle qubits of two link states.
//!
//! Qubit order is 1, 2, 3, 4 with qubit 1 as the most significant bit of the
//! amplitude index. Qubits (1,2) hold the first link, (3,4) the second, and
//! the measured pair is (2,3). Everything here works from amplitudes and a
//! 2x2 reduced density matrix, independently of the closed form in the
//! parent module.

use std::f64::consts::FRAC_1_SQRT_2;

use super::{BellLabel, BellOutcome};
use crate::network::SchmidtPair;

/// Amplitudes `<q2 q3|B>` of each Bell state, indexed `[q2][q3]`.
fn bell_amplitudes(label: BellLabel) -> [[f64; 2]; 2] {
    let h = FRAC_1_SQRT_2;
    match label {
        BellLabel::PsiPlus => [[h, 0.0], [0.0, h]],
        BellLabel::PsiMinus => [[h, 0.0], [0.0, -h]],
        BellLabel::PhiPlus => [[0.0, h], [h, 0.0]],
        BellLabel::PhiMinus => [[0.0, h], [-h, 0.0]],
    }
}

fn two_qubit_amplitudes(s: SchmidtPair) -> [[f64; 2]; 2] {
    [[s.lambda1().sqrt(), 0.0], [0.0, s.lambda2().sqrt()]]
}

/// The 16 amplitudes of `|phi_12> (x) |phi_34>`.
pub fn product_state(s1: SchmidtPair, s2: SchmidtPair) -> [f64; 16] {
    let p = two_qubit_amplitudes(s1);
    let q = two_qubit_amplitudes(s2);
    let mut psi = [0.0; 16];
    for (idx, amp) in psi.iter_mut().enumerate() {
        let (q1, q2, q3, q4) = ((idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1);
        *amp = p[q1][q2] * q[q3][q4];
    }
    psi
}

/// Unnormalized post-measurement amplitudes of qubits (1,4), indexed `[q1][q4]`.
fn project_middle(psi: &[f64; 16], label: BellLabel) -> [[f64; 2]; 2] {
    let bell = bell_amplitudes(label);
    let mut out = [[0.0; 2]; 2];
    for (idx, amp) in psi.iter().enumerate() {
        let (q1, q2, q3, q4) = ((idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1);
        out[q1][q4] += bell[q2][q3] * amp;
    }
    out
}

/// Eigenvalues of the reduced state of qubit 1, i.e. the squared singular
/// values of the normalized amplitude matrix.
fn schmidt_from_amplitudes(m: [[f64; 2]; 2], probability: f64) -> SchmidtPair {
    if probability <= 0.0 {
        return SchmidtPair::product();
    }
    // rho = M M^T / p
    let r00 = (m[0][0] * m[0][0] + m[0][1] * m[0][1]) / probability;
    let r11 = (m[1][0] * m[1][0] + m[1][1] * m[1][1]) / probability;
    let r01 = (m[0][0] * m[1][0] + m[0][1] * m[1][1]) / probability;
    let det_m = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let det_rho = det_m * det_m / (probability * probability);
    let trace = r00 + r11;
    // trace^2 - 4 det written without cancellation
    let disc = ((r00 - r11) * (r00 - r11) + 4.0 * r01 * r01).sqrt();
    let large = 0.5 * (trace + disc);
    let small = if large > 0.0 { det_rho / large } else { 0.0 };
    SchmidtPair::from_weights(large, small)
}

/// Outcome table computed by explicit projection of the 16-amplitude state,
/// in the order PsiPlus, PsiMinus, PhiPlus, PhiMinus.
pub fn statevector_oracle(s1: SchmidtPair, s2: SchmidtPair) -> [BellOutcome; 4] {
    let psi = product_state(s1, s2);
    BellLabel::ALL.map(|label| {
        let m = project_middle(&psi, label);
        let probability = m.iter().flatten().map(|a| a * a).sum::<f64>();
        BellOutcome {
            label,
            probability,
            result: schmidt_from_amplitudes(m, probability),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_state_is_normalized() {
        let s1 = SchmidtPair::from_lambda2(0.3).unwrap();
        let s2 = SchmidtPair::from_lambda2(0.1).unwrap();
        let norm: f64 = product_state(s1, s2).iter().map(|a| a * a).sum();
        assert!((norm - 1.0).abs() < 1e-15);
    }

    #[test]
    fn product_inputs_only_hit_psi() {
        let out = statevector_oracle(SchmidtPair::product(), SchmidtPair::product());
        assert!((out[0].probability - 0.5).abs() < 1e-15);
        assert!((out[1].probability - 0.5).abs() < 1e-15);
        assert_eq!(out[2].probability, 0.0);
        assert_eq!(out[3].probability, 0.0);
        assert!(out.iter().all(|o| o.result.scp() == 0.0));
    }

    #[test]
    fn maximal_inputs_give_maximal_outputs() {
        let out = statevector_oracle(SchmidtPair::maximal(), SchmidtPair::maximal());
        for o in out {
            assert!((o.probability - 0.25).abs() < 1e-15);
            assert!((o.result.lambda2() - 0.5).abs() < 1e-15);
        }
    }
}
