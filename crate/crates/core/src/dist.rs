use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::entropy::entropy_unchecked;
use crate::error::{Error, Result};
use crate::label::BellLabel;

/// Allowed deviation of the probability total from one.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// A Bell-diagonal two-qubit state: probabilities of Phi+, Psi+, Phi-, Psi-
/// (label codes 00, 01, 10, 11).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellDiagonal {
    probs: [f64; 4],
}

impl BellDiagonal {
    pub fn new(p00: f64, p01: f64, p10: f64, p11: f64) -> Result<Self> {
        Self::from_probs([p00, p01, p10, p11])
    }

    pub fn from_probs(probs: [f64; 4]) -> Result<Self> {
        if let Some(p) = probs.iter().find(|p| !(**p >= 0.0 && **p <= 1.0)) {
            return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::Domain(format!(
                "Bell-diagonal probabilities sum to {total}, not 1"
            )));
        }
        Ok(BellDiagonal { probs })
    }

    /// Scales non-negative weights to a distribution.
    pub(crate) fn from_weights(weights: [f64; 4]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            return Err(Error::Degenerate("all weights vanish".into()));
        }
        Ok(BellDiagonal {
            probs: weights.map(|w| w / total),
        })
    }

    /// Werner-form state: `F` on Phi+ and `(1 - F) / 3` on each other label.
    pub fn werner(fidelity: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&fidelity) {
            return Err(Error::Domain(format!("fidelity {fidelity} outside [0, 1]")));
        }
        let g = (1.0 - fidelity) / 3.0;
        Ok(BellDiagonal {
            probs: [fidelity, g, g, g],
        })
    }

    pub fn pure() -> Self {
        BellDiagonal {
            probs: [1.0, 0.0, 0.0, 0.0],
        }
    }

    pub fn uniform() -> Self {
        BellDiagonal { probs: [0.25; 4] }
    }

    /// Uniform draw from the probability simplex.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let w: [f64; 4] = std::array::from_fn(|_| -(1.0 - rng.gen::<f64>()).ln());
        Self::from_weights(w).expect("exponential draws are positive")
    }

    pub fn probs(&self) -> [f64; 4] {
        self.probs
    }

    pub fn prob(&self, label: BellLabel) -> f64 {
        self.probs[label.code() as usize]
    }

    /// Overlap with Phi+.
    pub fn fidelity(&self) -> f64 {
        self.probs[0]
    }

    /// Shannon entropy of the label distribution, equal to the von Neumann
    /// entropy of the state.
    pub fn entropy(&self) -> f64 {
        entropy_unchecked(self.probs)
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

impl fmt::Display for BellDiagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.probs;
        write!(f, "{a},{b},{c},{d}")
    }
}

/// Parses `p00,p01,p10,p11`.
impl FromStr for BellDiagonal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Usage(format!("bad probability {x:?}: {e}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        let probs: [f64; 4] = parts.try_into().map_err(|v: Vec<f64>| {
            Error::Usage(format!("expected 4 comma-separated probabilities, got {}", v.len()))
        })?;
        BellDiagonal::from_probs(probs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn validation() {
        assert!(BellDiagonal::new(0.5, 0.5, 0.0, 0.0).is_ok());
        assert!(BellDiagonal::new(0.5, 0.6, -0.1, 0.0).is_err());
        assert!(BellDiagonal::new(0.5, 0.4, 0.0, 0.0).is_err());
        assert!(BellDiagonal::new(f64::NAN, 1.0, 0.0, 0.0).is_err());
        assert!(BellDiagonal::werner(1.2).is_err());
    }

    #[test]
    fn werner_shape() {
        let w = BellDiagonal::werner(0.7).unwrap();
        let [f, a, b, c] = w.probs();
        assert_eq!(f, 0.7);
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert!((w.total() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn parse() {
        let d: BellDiagonal = "0.7, 0.1, 0.1, 0.1".parse().unwrap();
        assert_eq!(d.fidelity(), 0.7);
        assert!("0.7,0.3".parse::<BellDiagonal>().is_err());
        assert!("0.7,0.3,x,0".parse::<BellDiagonal>().is_err());
    }

    #[test]
    fn random_points_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let d = BellDiagonal::random(&mut rng);
            assert!((d.total() - 1.0).abs() < SUM_TOLERANCE);
            assert!(d.probs().iter().all(|&p| p >= 0.0));
        }
    }
}
