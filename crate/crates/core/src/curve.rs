//! Yield curves over a fidelity grid.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::BellDiagonal;
use crate::error::{Error, Result};
use crate::protocols::{
    best_combined_yield, best_ms_yield, hashing_yield, ls_yield, recurrence_schedule_yield, Terminal,
    DEFAULT_K_MAX, DEFAULT_M_MAX,
};

/// Grid points beyond this count are rejected.
pub const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    /// Direct one-way hashing.
    Hashing,
    /// Best number of recurrence rounds, then hashing.
    Recurrence,
    /// Block method at its best block size.
    Ms,
    /// The four-pair protocol.
    Ls,
    /// Best of recurrence rounds followed by hashing or by the four-pair protocol.
    Combined,
}

impl Protocol {
    pub const ALL: [Protocol; 5] = [
        Protocol::Hashing,
        Protocol::Recurrence,
        Protocol::Ms,
        Protocol::Ls,
        Protocol::Combined,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Protocol::Hashing => "hashing",
            Protocol::Recurrence => "recurrence",
            Protocol::Ms => "ms",
            Protocol::Ls => "ls",
            Protocol::Combined => "combined",
        }
    }

    /// Optimized yield and the chosen configuration (rounds or block size)
    /// where the protocol has one.
    pub fn evaluate(self, dist: &BellDiagonal, k_max: usize, m_max: usize) -> Result<(f64, Option<usize>)> {
        Ok(match self {
            Protocol::Hashing => (hashing_yield(dist), None),
            Protocol::Recurrence => {
                let c = recurrence_schedule_yield(dist, Terminal::Hashing, k_max)?;
                (c.value, Some(c.rounds))
            }
            Protocol::Ms => {
                let c = best_ms_yield(dist, m_max)?;
                (c.value, Some(c.block))
            }
            Protocol::Ls => (ls_yield(dist), None),
            Protocol::Combined => {
                let (_, c) = best_combined_yield(dist, k_max)?;
                (c.value, Some(c.rounds))
            }
        })
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Protocol::ALL
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| Error::Usage(format!("unknown protocol {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveConfig {
    pub protocols: Vec<Protocol>,
    pub k_max: usize,
    pub m_max: usize,
}

impl Default for CurveConfig {
    fn default() -> Self {
        CurveConfig {
            protocols: Protocol::ALL.to_vec(),
            k_max: DEFAULT_K_MAX,
            m_max: DEFAULT_M_MAX,
        }
    }
}

/// Per-protocol yields at one input. Protocols that were not requested are
/// `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YieldPoint {
    #[serde(rename = "F")]
    pub fidelity: f64,
    pub yield_hashing: Option<f64>,
    pub best_k: Option<usize>,
    pub yield_recurrence: Option<f64>,
    pub best_m: Option<usize>,
    pub yield_ms: Option<f64>,
    pub yield_ls: Option<f64>,
    pub yield_combined: Option<f64>,
}

pub fn yield_point(dist: &BellDiagonal, config: &CurveConfig) -> Result<YieldPoint> {
    let mut point = YieldPoint {
        fidelity: dist.fidelity(),
        yield_hashing: None,
        best_k: None,
        yield_recurrence: None,
        best_m: None,
        yield_ms: None,
        yield_ls: None,
        yield_combined: None,
    };
    for &p in &config.protocols {
        let (value, choice) = p.evaluate(dist, config.k_max, config.m_max)?;
        match p {
            Protocol::Hashing => point.yield_hashing = Some(value),
            Protocol::Recurrence => {
                point.yield_recurrence = Some(value);
                point.best_k = choice;
            }
            Protocol::Ms => {
                point.yield_ms = Some(value);
                point.best_m = choice;
            }
            Protocol::Ls => point.yield_ls = Some(value),
            Protocol::Combined => point.yield_combined = Some(value),
        }
    }
    Ok(point)
}

/// Werner yield curve; points are evaluated in parallel and returned in
/// grid order.
pub fn yield_curve(grid: &[f64], config: &CurveConfig) -> Result<Vec<YieldPoint>> {
    grid.par_iter()
        .map(|&f| yield_point(&BellDiagonal::werner(f)?, config))
        .collect()
}

/// `f_min, f_min + step, ...` up to `f_max` inclusive, each point rounded to
/// 12 significant digits.
pub fn fidelity_grid(f_min: f64, f_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(0.0 <= f_min && f_min < f_max && f_max <= 1.0) {
        return Err(Error::Usage(format!(
            "fidelity range must satisfy 0 <= f_min < f_max <= 1, got [{f_min}, {f_max}]"
        )));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Usage(format!("step must be positive, got {step}")));
    }
    let intervals = ((f_max - f_min) / step + 1e-9).floor();
    if intervals + 1.0 > MAX_GRID_POINTS as f64 {
        return Err(Error::Usage(format!(
            "grid of {intervals} steps exceeds {MAX_GRID_POINTS} points"
        )));
    }
    Ok((0..=intervals as usize)
        .map(|i| round_significant(f_min + i as f64 * step, 12).min(f_max))
        .collect())
}

/// Rounds to `digits` significant decimal digits.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("formatted float parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = fidelity_grid(0.25, 1.0, 0.001).unwrap();
        assert_eq!(g.len(), 751);
        assert_eq!(g[0], 0.25);
        assert_eq!(g[550], 0.8);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert_eq!(fidelity_grid(0.5, 1.0, 0.3).unwrap(), vec![0.5, 0.8]);
    }

    #[test]
    fn grid_validation() {
        assert!(fidelity_grid(0.6, 0.5, 0.01).is_err());
        assert!(fidelity_grid(0.5, 0.5, 0.01).is_err());
        assert!(fidelity_grid(-0.1, 0.5, 0.01).is_err());
        assert!(fidelity_grid(0.1, 1.5, 0.01).is_err());
        assert!(fidelity_grid(0.1, 0.5, 0.0).is_err());
        assert!(fidelity_grid(0.1, 0.5, f64::NAN).is_err());
        assert!(fidelity_grid(0.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(round_significant(0.1 + 0.2, 12), 0.3);
        assert_eq!(round_significant(1.0, 12), 1.0);
        assert_eq!(round_significant(0.0, 12), 0.0);
        assert_eq!(round_significant(123.456789, 4), 123.5);
    }

    #[test]
    fn protocol_names_round_trip() {
        for p in Protocol::ALL {
            assert_eq!(p.name().parse::<Protocol>().unwrap(), p);
        }
        assert!("twirl".parse::<Protocol>().is_err());
    }

    #[test]
    fn endpoint_rows() {
        let config = CurveConfig::default();
        let top = yield_point(&BellDiagonal::pure(), &config).unwrap();
        assert_eq!(top.yield_hashing, Some(1.0));
        assert_eq!(top.yield_ls, Some(0.5));
        let m = top.best_m.unwrap() as f64;
        assert!((top.yield_ms.unwrap() - (m - 1.0) / m).abs() < 1e-12);
        let bottom = yield_point(&BellDiagonal::werner(0.25).unwrap(), &config).unwrap();
        for y in [
            bottom.yield_hashing,
            bottom.yield_recurrence,
            bottom.yield_ms,
            bottom.yield_ls,
            bottom.yield_combined,
        ] {
            assert_eq!(y, Some(0.0));
        }
    }

    #[test]
    fn unrequested_protocols_are_empty() {
        let config = CurveConfig {
            protocols: vec![Protocol::Ls],
            ..CurveConfig::default()
        };
        let p = yield_point(&BellDiagonal::werner(0.8).unwrap(), &config).unwrap();
        assert!(p.yield_ls.is_some());
        assert_eq!(p.yield_ms, None);
        assert_eq!(p.best_k, None);
    }
}
