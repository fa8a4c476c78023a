//! Pins the label-level gate conventions against explicit state vectors.
//!
//! Qubits are indexed so that bit `q` of a basis index is qubit `q`. For a
//! pair the convention is qubit 0 = Alice, qubit 1 = Bob.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C;
use purify_core::label::recurrence_relabel;
use purify_core::{bx_relabel, bxor, measure_compare, sigma_x_relabel, Axis, BellLabel};

type State = Vec<C>;

fn bell(label: BellLabel) -> State {
    let s = FRAC_1_SQRT_2;
    let sign = if label.phase { -s } else { s };
    let mut v = vec![C::new(0.0, 0.0); 4];
    if label.amplitude {
        // |01> + sign |10>, Alice is qubit 0
        v[0b10] = C::new(s, 0.0);
        v[0b01] = C::new(sign, 0.0);
    } else {
        v[0b00] = C::new(s, 0.0);
        v[0b11] = C::new(sign, 0.0);
    }
    v
}

fn kron(a: &State, b: &State) -> State {
    // a occupies the low qubits, b the high ones
    let mut out = vec![C::new(0.0, 0.0); a.len() * b.len()];
    for (j, bj) in b.iter().enumerate() {
        for (i, ai) in a.iter().enumerate() {
            out[j * a.len() + i] = ai * bj;
        }
    }
    out
}

fn apply_single(state: &State, qubit: usize, m: [[C; 2]; 2]) -> State {
    let mut out = vec![C::new(0.0, 0.0); state.len()];
    for (idx, amp) in state.iter().enumerate() {
        let bit = (idx >> qubit) & 1;
        for (nb, row) in m.iter().enumerate() {
            let target = (idx & !(1 << qubit)) | (nb << qubit);
            out[target] += row[bit] * amp;
        }
    }
    out
}

fn apply_cnot(state: &State, control: usize, target: usize) -> State {
    let mut out = vec![C::new(0.0, 0.0); state.len()];
    for (idx, amp) in state.iter().enumerate() {
        let dest = if (idx >> control) & 1 == 1 { idx ^ (1 << target) } else { idx };
        out[dest] += amp;
    }
    out
}

fn overlap(a: &State, b: &State) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C>().norm()
}

/// The unique label whose Bell state matches `state` up to a global phase.
fn identify_pair(state: &State) -> BellLabel {
    let hits: Vec<BellLabel> = BellLabel::ALL
        .into_iter()
        .filter(|&l| (overlap(&bell(l), state) - 1.0).abs() < 1e-12)
        .collect();
    assert_eq!(hits.len(), 1, "not a Bell state: {state:?}");
    hits[0]
}

fn identify_two_pairs(state: &State) -> (BellLabel, BellLabel) {
    let mut hits = Vec::new();
    for s in BellLabel::ALL {
        for t in BellLabel::ALL {
            if (overlap(&kron(&bell(s), &bell(t)), state) - 1.0).abs() < 1e-12 {
                hits.push((s, t));
            }
        }
    }
    assert_eq!(hits.len(), 1);
    hits[0]
}

fn pauli_x() -> [[C; 2]; 2] {
    let (o, z) = (C::new(1.0, 0.0), C::new(0.0, 0.0));
    [[z, o], [o, z]]
}

/// exp(-i pi sigma_x / 4)
fn rot_x_half_pi() -> [[C; 2]; 2] {
    let c = C::new(FRAC_1_SQRT_2, 0.0);
    let s = C::new(0.0, -FRAC_1_SQRT_2);
    [[c, s], [s, c]]
}

fn hadamard() -> [[C; 2]; 2] {
    let h = C::new(FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

/// Bilateral CNOT on source pair (qubits 0, 1) and target pair (qubits 2, 3).
fn bilateral_cnot(s: BellLabel, t: BellLabel) -> (BellLabel, BellLabel) {
    let psi = kron(&bell(s), &bell(t));
    let psi = apply_cnot(&psi, 0, 2);
    let psi = apply_cnot(&psi, 1, 3);
    identify_two_pairs(&psi)
}

#[test]
fn bxor_matches_bilateral_cnot() {
    for s in BellLabel::ALL {
        for t in BellLabel::ALL {
            assert_eq!(bxor(s, t), bilateral_cnot(s, t), "source {s}, target {t}");
        }
    }
    assert_eq!(
        bilateral_cnot(BellLabel::PSI_PLUS, BellLabel::PHI_PLUS),
        (BellLabel::PSI_PLUS, BellLabel::PSI_PLUS)
    );
    assert_eq!(
        bilateral_cnot(BellLabel::PHI_MINUS, BellLabel::PHI_MINUS),
        (BellLabel::PHI_PLUS, BellLabel::PHI_MINUS)
    );
}

#[test]
fn sigma_x_matches_unilateral_flip() {
    for l in BellLabel::ALL {
        let out = identify_pair(&apply_single(&bell(l), 0, pauli_x()));
        assert_eq!(sigma_x_relabel(l), out, "label {l}");
    }
    assert_eq!(sigma_x_relabel(BellLabel::PHI_PLUS), BellLabel::PSI_PLUS);
    assert_eq!(sigma_x_relabel(BellLabel::PSI_MINUS), BellLabel::PHI_MINUS);
}

#[test]
fn bx_matches_bilateral_rotation() {
    for l in BellLabel::ALL {
        let psi = apply_single(&bell(l), 0, rot_x_half_pi());
        let psi = apply_single(&psi, 1, rot_x_half_pi());
        assert_eq!(bx_relabel(l), identify_pair(&psi), "label {l}");
    }
}

#[test]
fn composite_relabel_matches_circuit() {
    for l in BellLabel::ALL {
        let psi = apply_single(&bell(l), 0, pauli_x());
        let psi = apply_single(&psi, 0, rot_x_half_pi());
        let psi = apply_single(&psi, 1, rot_x_half_pi());
        assert_eq!(recurrence_relabel(l), identify_pair(&psi), "label {l}");
    }
}

/// Probability that Alice and Bob see opposite outcomes along `axis`.
fn disagreement(label: BellLabel, axis: Axis) -> f64 {
    let mut psi = bell(label);
    if axis == Axis::X {
        psi = apply_single(&psi, 0, hadamard());
        psi = apply_single(&psi, 1, hadamard());
    }
    psi.iter()
        .enumerate()
        .filter(|(i, _)| (i & 1) != ((i >> 1) & 1))
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

#[test]
fn comparison_outcomes_are_deterministic_and_match() {
    for l in BellLabel::ALL {
        for axis in [Axis::X, Axis::Z] {
            let p = disagreement(l, axis);
            let expected = if measure_compare(l, axis) { 1.0 } else { 0.0 };
            assert!((p - expected).abs() < 1e-12, "label {l}, axis {axis:?}: {p}");
        }
    }
}
