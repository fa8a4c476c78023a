//! Yield formulas for the purification protocols and their compositions.
//!
//! Every yield is in ebits per input pair and clamped to `[0, 1]`: a protocol
//! whose formula goes negative is simply not run.

use serde::{Deserialize, Serialize};

use crate::dist::BellDiagonal;
use crate::enumerate::{ls_exact, product_table};
use crate::error::{Error, Result};

pub const DEFAULT_K_MAX: usize = 64;
pub const DEFAULT_M_MAX: usize = 64;
/// Largest block size accepted by the multinomial block-method path.
pub const MAX_MS_BLOCK: usize = 128;

fn clamp_yield(y: f64) -> f64 {
    y.clamp(0.0, 1.0)
}

/// Yield of hashing `kept` of every `block` pairs after a post-selection that
/// succeeded with `p_pass`, when the kept pairs carry `entropy` bits.
fn block_yield(p_pass: f64, kept: usize, block: usize, entropy: f64) -> f64 {
    let kept = kept as f64;
    clamp_yield(p_pass * kept / block as f64 * (1.0 - entropy / kept))
}

/// One-way hashing: `1 - S(rho)`.
pub fn hashing_yield(dist: &BellDiagonal) -> f64 {
    clamp_yield(1.0 - dist.entropy())
}

/// One round of the recurrence method: the closed-form map on
/// `(p00, p01, p10, p11)` together with the pass probability.
pub fn recurrence_step(dist: &BellDiagonal) -> Result<(BellDiagonal, f64)> {
    let [p00, p01, p10, p11] = dist.probs();
    let p_pass = p00 * p00 + p01 * p01 + p10 * p10 + p11 * p11 + 2.0 * p00 * p10 + 2.0 * p01 * p11;
    if !(p_pass > 0.0) {
        return Err(Error::Degenerate("recurrence pass probability is zero".into()));
    }
    let next = BellDiagonal::from_weights([
        p00 * p00 + p10 * p10,
        p01 * p01 + p11 * p11,
        2.0 * p01 * p11,
        2.0 * p00 * p10,
    ])?;
    Ok((next, p_pass))
}

/// Protocol applied after the recurrence rounds of a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Terminal {
    Hashing,
    /// Block method with the given block size.
    Ms(usize),
    /// The four-pair protocol.
    Ls,
}

impl Terminal {
    pub fn yield_of(self, dist: &BellDiagonal) -> Result<f64> {
        match self {
            Terminal::Hashing => Ok(hashing_yield(dist)),
            Terminal::Ms(m) => ms_yield(dist, m),
            Terminal::Ls => Ok(ls_yield(dist)),
        }
    }

    /// Upper bound of the terminal yield over all inputs.
    fn ceiling(self) -> f64 {
        match self {
            Terminal::Hashing => 1.0,
            Terminal::Ms(m) => (m as f64 - 1.0) / m as f64,
            Terminal::Ls => 0.5,
        }
    }
}

/// `k` recurrence rounds followed by a terminal protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolSchedule {
    rounds: usize,
    terminal: Terminal,
}

impl ProtocolSchedule {
    pub fn new(rounds: usize, terminal: Terminal) -> Result<Self> {
        Self::with_max_rounds(rounds, terminal, DEFAULT_K_MAX)
    }

    pub fn with_max_rounds(rounds: usize, terminal: Terminal, k_max: usize) -> Result<Self> {
        if rounds > k_max {
            return Err(Error::Capacity {
                what: "recurrence rounds",
                got: rounds,
                min: 0,
                max: k_max,
            });
        }
        if let Terminal::Ms(m) = terminal {
            check_block(m)?;
        }
        Ok(ProtocolSchedule { rounds, terminal })
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn terminal(&self) -> Terminal {
        self.terminal
    }
}

/// Each recurrence round keeps at most one pair out of two, and only when
/// the comparison passes.
pub fn pipeline_yield(dist: &BellDiagonal, schedule: &ProtocolSchedule) -> Result<f64> {
    let mut d = *dist;
    let mut survival = 1.0;
    for _ in 0..schedule.rounds {
        let (next, p_pass) = recurrence_step(&d)?;
        survival *= p_pass / 2.0;
        d = next;
    }
    Ok(survival * schedule.terminal.yield_of(&d)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScheduleChoice {
    pub rounds: usize,
    pub value: f64,
}

/// Best number of recurrence rounds in `0..=k_max` before `terminal`.
///
/// The search is exhaustive; it stops early only once the surviving pair
/// fraction drops below the best value found, past which no later round can
/// win. Ties go to the smaller round count.
pub fn recurrence_schedule_yield(
    dist: &BellDiagonal,
    terminal: Terminal,
    k_max: usize,
) -> Result<ScheduleChoice> {
    if let Terminal::Ms(m) = terminal {
        check_block(m)?;
    }
    let mut best = ScheduleChoice {
        rounds: 0,
        value: terminal.yield_of(dist)?,
    };
    let mut d = *dist;
    let mut survival = 1.0;
    for k in 1..=k_max {
        let (next, p_pass) = recurrence_step(&d)?;
        survival *= p_pass / 2.0;
        d = next;
        if survival * terminal.ceiling() <= best.value {
            break;
        }
        let value = survival * terminal.yield_of(&d)?;
        if value > best.value {
            best = ScheduleChoice { rounds: k, value };
        }
    }
    Ok(best)
}

fn check_block(m: usize) -> Result<()> {
    if !(2..=MAX_MS_BLOCK).contains(&m) {
        return Err(Error::Capacity {
            what: "block size",
            got: m,
            min: 2,
            max: MAX_MS_BLOCK,
        });
    }
    Ok(())
}

/// Block method statistics `(p_pass, joint entropy of the m - 1 kept
/// labels)` without enumerating `4^m` strings.
///
/// After XORing every source into the target, a kept source string's
/// weight depends only on how many of each label it holds: summing over the
/// target's phase bit `t`, it is `p(t, parity) * prod_i p(s_i + (t, 0))`,
/// where `parity` is the parity of the sources' amplitude bits. The sums run
/// over the compositions `(n00, n01, n10, n11)` of `m - 1` weighted by their
/// multinomial counts.
pub fn ms_statistics(dist: &BellDiagonal, m: usize) -> Result<(f64, f64)> {
    check_block(m)?;
    let n = m - 1;
    let p = dist.probs();
    let powers: Vec<Vec<f64>> = p
        .iter()
        .map(|&x| (0..=n).map(|e| x.powi(e as i32)).collect())
        .collect();
    let binom = binomial_rows(n);
    let mut p_pass = 0.0;
    // sum of mult * w * log2(w)
    let mut wlogw = 0.0;
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                let d = n - a - b - c;
                let parity = (b + d) % 2;
                let w = p[parity] * powers[0][a] * powers[1][b] * powers[2][c] * powers[3][d]
                    + p[2 + parity] * powers[2][a] * powers[3][b] * powers[0][c] * powers[1][d];
                if w > 0.0 {
                    let mult = binom[n][a] * binom[n - a][b] * binom[n - a - b][c];
                    p_pass += mult * w;
                    wlogw += mult * w * w.log2();
                }
            }
        }
    }
    if !(p_pass > 0.0) {
        return Ok((0.0, 0.0));
    }
    let entropy = (p_pass.log2() - wlogw / p_pass).max(0.0);
    Ok((p_pass, entropy))
}

fn binomial_rows(n: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![1.0; i + 1];
        for j in 1..i {
            row[j] = rows[i - 1][j - 1] + rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// Block method yield `p_pass (m-1)/m (1 - H/(m-1))`.
pub fn ms_yield(dist: &BellDiagonal, m: usize) -> Result<f64> {
    let (p_pass, entropy) = ms_statistics(dist, m)?;
    Ok(block_yield(p_pass, m - 1, m, entropy))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockChoice {
    pub block: usize,
    pub value: f64,
}

/// Best block size in `2..=m_max`; ties go to the smaller block.
pub fn best_ms_yield(dist: &BellDiagonal, m_max: usize) -> Result<BlockChoice> {
    check_block(m_max)?;
    let mut best = BlockChoice {
        block: 2,
        value: ms_yield(dist, 2)?,
    };
    for m in 3..=m_max {
        let value = ms_yield(dist, m)?;
        if value > best.value {
            best = BlockChoice { block: m, value };
        }
    }
    Ok(best)
}

/// Four-pair protocol statistics `(p_pass, H(Q))` by enumeration.
pub fn ls_statistics(dist: &BellDiagonal) -> (f64, f64) {
    let table = product_table(dist, 4).expect("4 pairs is within capacity");
    let cond = ls_exact(&table).expect("table has 4 pairs");
    (cond.p_pass, cond.posterior_entropy())
}

/// Four-pair protocol yield `p_pass/2 (1 - H(Q)/2)`.
pub fn ls_yield(dist: &BellDiagonal) -> f64 {
    let (p_pass, entropy) = ls_statistics(dist);
    block_yield(p_pass, 2, 4, entropy)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LsClosedForm {
    pub p_pass: f64,
    pub entropy: f64,
    pub value: f64,
}

/// `-(mult * q) log2 q` for a class of `mult` equal posterior weights.
fn class_entropy(mult: f64, weight: f64, p_pass: f64) -> f64 {
    let q = weight / p_pass;
    if q > 0.0 {
        -mult * q * q.log2()
    } else {
        0.0
    }
}

/// Closed form of the four-pair protocol for a Werner state of fidelity `F`.
pub fn ls_closed_form_werner(fidelity: f64) -> Result<LsClosedForm> {
    if !(0.0..=1.0).contains(&fidelity) {
        return Err(Error::Domain(format!("fidelity {fidelity} outside [0, 1]")));
    }
    let f = fidelity;
    let g = (1.0 - f) / 3.0;
    let (f2, g2) = (f * f, g * g);
    let p_pass = f2 * f2 + 18.0 * f2 * g2 + 24.0 * f * g2 * g + 21.0 * g2 * g2;
    let entropy = class_entropy(1.0, f2 * f2 + 3.0 * g2 * g2, p_pass)
        + class_entropy(9.0, 2.0 * f2 * g2 + 2.0 * g2 * g2, p_pass)
        + class_entropy(6.0, 4.0 * f * g2 * g, p_pass);
    Ok(LsClosedForm {
        p_pass,
        entropy,
        value: block_yield(p_pass, 2, 4, entropy),
    })
}

/// Closed form of the four-pair protocol for any Bell-diagonal state.
pub fn ls_closed_form_general(dist: &BellDiagonal) -> LsClosedForm {
    let [a, b, c, d] = dist.probs();
    let (a2, b2, c2, d2) = (a * a, b * b, c * c, d * d);
    let quartic = a2 * a2 + b2 * b2 + c2 * c2 + d2 * d2;
    let product = a * b * c * d;
    let pair_ab_cd = 2.0 * a2 * b2 + 2.0 * c2 * d2;
    let pair_ac_bd = 2.0 * a2 * c2 + 2.0 * b2 * d2;
    let pair_ad_bc = 2.0 * a2 * d2 + 2.0 * b2 * c2;
    let p_pass = quartic + 24.0 * product + 3.0 * (pair_ab_cd + pair_ac_bd + pair_ad_bc);
    let entropy = class_entropy(1.0, quartic, p_pass)
        + class_entropy(6.0, 4.0 * product, p_pass)
        + class_entropy(3.0, pair_ab_cd, p_pass)
        + class_entropy(3.0, pair_ac_bd, p_pass)
        + class_entropy(3.0, pair_ad_bc, p_pass);
    LsClosedForm {
        p_pass,
        entropy,
        value: block_yield(p_pass, 2, 4, entropy),
    }
}

/// Best recurrence-then-terminal pipeline over `k <= k_max` rounds, for
/// hashing and four-pair terminals.
pub fn best_combined_yield(dist: &BellDiagonal, k_max: usize) -> Result<(Terminal, ScheduleChoice)> {
    let hashing = recurrence_schedule_yield(dist, Terminal::Hashing, k_max)?;
    let ls = recurrence_schedule_yield(dist, Terminal::Ls, k_max)?;
    Ok(if ls.value > hashing.value {
        (Terminal::Ls, ls)
    } else {
        (Terminal::Hashing, hashing)
    })
}
