//! Where does the four-pair protocol beat every competitor?

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{fidelity_grid, Protocol};
use crate::dist::BellDiagonal;
use crate::error::Result;
use crate::protocols::{ls_yield, DEFAULT_K_MAX, DEFAULT_M_MAX};

/// Default width of the final bisection bracket around each endpoint.
pub const DEFAULT_BISECT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanConfig {
    pub competitors: Vec<Protocol>,
    pub k_max: usize,
    pub m_max: usize,
    pub bisect_tol: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            competitors: vec![Protocol::Recurrence, Protocol::Ms],
            k_max: DEFAULT_K_MAX,
            m_max: DEFAULT_M_MAX,
            bisect_tol: DEFAULT_BISECT_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompetitorValue {
    pub protocol: Protocol,
    pub value: f64,
    /// Chosen round count or block size.
    pub config: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub fidelity: f64,
    pub ls: f64,
    pub competitors: Vec<CompetitorValue>,
    /// The four-pair yield is strictly larger than every competitor's.
    pub ls_wins: bool,
}

impl ScanPoint {
    /// Best competitor at this point, if any were configured.
    pub fn best_competitor(&self) -> Option<&CompetitorValue> {
        self.competitors
            .iter()
            .fold(None, |best: Option<&CompetitorValue>, c| match best {
                Some(b) if b.value >= c.value => Some(b),
                _ => Some(c),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Endpoint {
    pub fidelity: f64,
    /// False when the endpoint is the edge of the scanned range.
    pub refined: bool,
    pub point: ScanPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossoverInterval {
    pub start: Endpoint,
    pub end: Endpoint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossoverReport {
    pub intervals: Vec<CrossoverInterval>,
    pub points: Vec<ScanPoint>,
}

pub fn evaluate_point(fidelity: f64, config: &ScanConfig) -> Result<ScanPoint> {
    let dist = BellDiagonal::werner(fidelity)?;
    let ls = ls_yield(&dist);
    let competitors = config
        .competitors
        .iter()
        .map(|&protocol| {
            let (value, choice) = protocol.evaluate(&dist, config.k_max, config.m_max)?;
            Ok(CompetitorValue {
                protocol,
                value,
                config: choice,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ls_wins = competitors.iter().all(|c| ls > c.value);
    Ok(ScanPoint {
        fidelity,
        ls,
        competitors,
        ls_wins,
    })
}

/// Scans the Werner fidelity grid, collects the maximal runs of points where
/// the four-pair protocol strictly wins, and bisects each interior boundary
/// between its losing and winning neighbours.
pub fn crossover_scan(f_min: f64, f_max: f64, step: f64, config: &ScanConfig) -> Result<CrossoverReport> {
    let grid = fidelity_grid(f_min, f_max, step)?;
    let points = grid
        .par_iter()
        .map(|&f| evaluate_point(f, config))
        .collect::<Result<Vec<_>>>()?;

    let mut intervals = Vec::new();
    let mut i = 0;
    while i < points.len() {
        if !points[i].ls_wins {
            i += 1;
            continue;
        }
        let first = i;
        while i + 1 < points.len() && points[i + 1].ls_wins {
            i += 1;
        }
        let last = i;
        let start = if first == 0 {
            edge(&points[first])
        } else {
            refine(points[first - 1].fidelity, points[first].fidelity, config)?
        };
        let end = if last + 1 == points.len() {
            edge(&points[last])
        } else {
            refine(points[last + 1].fidelity, points[last].fidelity, config)?
        };
        intervals.push(CrossoverInterval { start, end });
        i += 1;
    }
    Ok(CrossoverReport { intervals, points })
}

fn edge(point: &ScanPoint) -> Endpoint {
    Endpoint {
        fidelity: point.fidelity,
        refined: false,
        point: point.clone(),
    }
}

/// Bisects between a losing and a winning fidelity until the bracket is no
/// wider than the tolerance; the endpoint is the bracket midpoint.
fn refine(mut losing: f64, mut winning: f64, config: &ScanConfig) -> Result<Endpoint> {
    while (winning - losing).abs() > config.bisect_tol {
        let mid = 0.5 * (losing + winning);
        if evaluate_point(mid, config)?.ls_wins {
            winning = mid;
        } else {
            losing = mid;
        }
    }
    let fidelity = 0.5 * (losing + winning);
    Ok(Endpoint {
        fidelity,
        refined: true,
        point: evaluate_point(fidelity, config)?,
    })
}
