//! Bell-state labels and the label-level action of the local operations used
//! by the purification protocols.
//!
//! A Bell state is identified by two classical bits. The *phase* bit tells
//! whether the two halves anticorrelate in the x basis; the *amplitude* bit
//! tells whether they anticorrelate in the z basis. Global phases are
//! dropped, so every operation here is a permutation of the four labels (or
//! of pairs of labels).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BellLabel {
    pub phase: bool,
    pub amplitude: bool,
}

impl BellLabel {
    pub const PHI_PLUS: BellLabel = BellLabel::new(false, false);
    pub const PSI_PLUS: BellLabel = BellLabel::new(false, true);
    pub const PHI_MINUS: BellLabel = BellLabel::new(true, false);
    pub const PSI_MINUS: BellLabel = BellLabel::new(true, true);

    /// All four labels in code order 00, 01, 10, 11.
    pub const ALL: [BellLabel; 4] = [
        BellLabel::PHI_PLUS,
        BellLabel::PSI_PLUS,
        BellLabel::PHI_MINUS,
        BellLabel::PSI_MINUS,
    ];

    pub const fn new(phase: bool, amplitude: bool) -> Self {
        BellLabel { phase, amplitude }
    }

    /// Two-bit code with the phase bit as the high bit.
    pub const fn code(self) -> u8 {
        ((self.phase as u8) << 1) | self.amplitude as u8
    }

    pub fn from_code(code: u8) -> Result<Self> {
        if code > 3 {
            return Err(Error::Usage(format!("Bell label code {code} is not a 2-bit value")));
        }
        Ok(Self::from_code_unchecked(code))
    }

    pub(crate) const fn from_code_unchecked(code: u8) -> Self {
        BellLabel::new(code & 2 != 0, code & 1 != 0)
    }

    pub fn name(self) -> &'static str {
        match self.code() {
            0 => "Phi+",
            1 => "Psi+",
            2 => "Phi-",
            _ => "Psi-",
        }
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.phase as u8, self.amplitude as u8)
    }
}

/// Measurement basis for the comparison tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Z,
}

/// Bilateral XOR: both parties apply a CNOT from the `source` pair to the
/// `target` pair.
///
/// Bit flips propagate forward (target amplitude picks up the source
/// amplitude) and phase flips propagate backward (source phase picks up the
/// target phase).
pub fn bxor(source: BellLabel, target: BellLabel) -> (BellLabel, BellLabel) {
    (
        BellLabel::new(source.phase ^ target.phase, source.amplitude),
        BellLabel::new(target.phase, target.amplitude ^ source.amplitude),
    )
}

/// Unilateral pi rotation about x: flips the amplitude bit.
pub fn sigma_x_relabel(label: BellLabel) -> BellLabel {
    BellLabel::new(label.phase, !label.amplitude)
}

/// Bilateral pi/2 rotation about x: swaps Phi+ and Psi+, fixes Phi- and Psi-.
pub fn bx_relabel(label: BellLabel) -> BellLabel {
    if label.phase {
        label
    } else {
        BellLabel::new(false, !label.amplitude)
    }
}

/// The post-round relabeling of the recurrence method (sigma_x, then B_x).
/// Net effect: swaps Phi- and Psi-.
pub fn recurrence_relabel(label: BellLabel) -> BellLabel {
    bx_relabel(sigma_x_relabel(label))
}

/// Outcome of Alice and Bob measuring their halves along `axis` and
/// comparing: `false` when identical, `true` when opposite.
pub fn measure_compare(label: BellLabel, axis: Axis) -> bool {
    match axis {
        Axis::Z => label.amplitude,
        Axis::X => label.phase,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_round_trip() {
        for code in 0..4u8 {
            assert_eq!(BellLabel::from_code(code).unwrap().code(), code);
        }
        assert!(BellLabel::from_code(4).is_err());
        assert_eq!(BellLabel::PSI_PLUS.to_string(), "01");
        assert_eq!(BellLabel::PHI_MINUS.to_string(), "10");
    }

    #[test]
    fn bxor_examples() {
        use BellLabel as L;
        assert_eq!(bxor(L::PHI_PLUS, L::PHI_PLUS), (L::PHI_PLUS, L::PHI_PLUS));
        assert_eq!(bxor(L::PSI_PLUS, L::PHI_PLUS), (L::PSI_PLUS, L::PSI_PLUS));
        assert_eq!(bxor(L::PHI_MINUS, L::PHI_MINUS), (L::PHI_PLUS, L::PHI_MINUS));
    }

    #[test]
    fn bxor_collects_pair_parities() {
        for s in BellLabel::ALL {
            for t in BellLabel::ALL {
                let (s2, t2) = bxor(s, t);
                // joint parities land on one side, the other bits are untouched
                assert_eq!(s2.phase, s.phase ^ t.phase);
                assert_eq!(t2.amplitude, s.amplitude ^ t.amplitude);
                assert_eq!(t2.phase, t.phase);
                assert_eq!(s2.amplitude, s.amplitude);
                assert_eq!(bxor(s2, t2), (s, t));
            }
        }
    }

    #[test]
    fn relabels_are_involutions() {
        for l in BellLabel::ALL {
            assert_eq!(sigma_x_relabel(sigma_x_relabel(l)), l);
            assert_eq!(bx_relabel(bx_relabel(l)), l);
        }
        assert_eq!(sigma_x_relabel(BellLabel::PHI_PLUS), BellLabel::PSI_PLUS);
        assert_eq!(sigma_x_relabel(BellLabel::PSI_MINUS), BellLabel::PHI_MINUS);
        assert_eq!(bx_relabel(BellLabel::PHI_PLUS), BellLabel::PSI_PLUS);
        assert_eq!(bx_relabel(BellLabel::PHI_MINUS), BellLabel::PHI_MINUS);
    }

    #[test]
    fn composite_relabel_swaps_minus_states() {
        assert_eq!(recurrence_relabel(BellLabel::PHI_PLUS), BellLabel::PHI_PLUS);
        assert_eq!(recurrence_relabel(BellLabel::PSI_PLUS), BellLabel::PSI_PLUS);
        assert_eq!(recurrence_relabel(BellLabel::PHI_MINUS), BellLabel::PSI_MINUS);
        assert_eq!(recurrence_relabel(BellLabel::PSI_MINUS), BellLabel::PHI_MINUS);
    }

    #[test]
    fn comparison_outcomes() {
        assert!(measure_compare(BellLabel::PSI_MINUS, Axis::Z));
        assert!(!measure_compare(BellLabel::PSI_PLUS, Axis::X));
        assert!(measure_compare(BellLabel::PHI_MINUS, Axis::X));
        assert!(!measure_compare(BellLabel::PHI_MINUS, Axis::Z));
    }
}
