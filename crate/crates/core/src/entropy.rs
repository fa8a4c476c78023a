use crate::error::{Error, Result};

/// Normalization slack accepted by [`shannon_entropy`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Shannon entropy in bits, with `0 log 0 = 0`.
///
/// Rejects negative entries and distributions whose total differs from one
/// by more than [`NORMALIZATION_TOLERANCE`].
pub fn shannon_entropy(dist: &[f64]) -> Result<f64> {
    if let Some(p) = dist.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
        return Err(Error::Domain(format!("probability {p} is negative or not finite")));
    }
    let total: f64 = dist.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::Domain(format!(
            "probabilities sum to {total}, not 1"
        )));
    }
    Ok(entropy_unchecked(dist.iter().copied()))
}

/// Entropy of already-validated probabilities.
pub(crate) fn entropy_unchecked(dist: impl IntoIterator<Item = f64>) -> f64 {
    dist.into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}
