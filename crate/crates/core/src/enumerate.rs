//! Exhaustive enumeration over joint label strings.
//!
//! A [`WeightedStringTable`] materializes the product distribution of `n`
//! independent pairs over all `4^n` label strings. The table can be pushed
//! through an XOR circuit, post-selected on comparison outcomes and
//! marginalized onto the pairs that are kept. Weights are either `f64`
//! probabilities or exact [`BellPolynomial`]s, so the same code path yields
//! numeric answers and exact symbolic closed forms.

use std::collections::BTreeMap;
use std::io;

use serde::Serialize;

use crate::circuit::BxorCircuit;
use crate::dist::BellDiagonal;
use crate::entropy::entropy_unchecked;
use crate::error::{Error, Result};
use crate::label::{measure_compare, recurrence_relabel, Axis, BellLabel};
use crate::poly::{BellPolynomial, VarSet};
use crate::string::{apply_f_bits, pair_code, BellString};

/// Largest number of pairs that is materialized densely (`4^10` entries).
pub const MAX_DENSE_PAIRS: usize = 10;

/// Largest block size accepted by [`ms_exact`].
pub const MS_EXACT_MAX_BLOCK: usize = 8;

/// Semiring operations needed to propagate weights.
pub trait Weight: Clone + Send + Sync {
    fn zero_like(&self) -> Self;
    fn accumulate(&mut self, other: &Self);
    fn product(&self, other: &Self) -> Self;
}

impl Weight for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }

    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }

    fn product(&self, other: &Self) -> Self {
        self * other
    }
}

impl Weight for BellPolynomial {
    fn zero_like(&self) -> Self {
        BellPolynomial::zero(self.vars())
    }

    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }

    fn product(&self, other: &Self) -> Self {
        self * other
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedStringTable<W> {
    pairs: usize,
    weights: Vec<W>,
}

impl<W: Weight> WeightedStringTable<W> {
    /// Product distribution of `pairs` independent pairs with the given
    /// per-label weights (label-code order 00, 01, 10, 11).
    pub fn product(label_weights: &[W; 4], pairs: usize) -> Result<Self> {
        if !(1..=MAX_DENSE_PAIRS).contains(&pairs) {
            return Err(Error::Capacity {
                what: "pairs",
                got: pairs,
                min: 1,
                max: MAX_DENSE_PAIRS,
            });
        }
        let mut weights = label_weights.to_vec();
        for _ in 1..pairs {
            weights = weights
                .iter()
                .flat_map(|w| label_weights.iter().map(move |lw| w.product(lw)))
                .collect();
        }
        Ok(WeightedStringTable { pairs, weights })
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, s: &BellString) -> Option<&W> {
        (s.len() == self.pairs).then(|| &self.weights[s.index() as usize])
    }

    pub fn iter(&self) -> impl Iterator<Item = (BellString, &W)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .map(|(i, w)| (BellString::from_index(i as u32, self.pairs), w))
    }

    pub fn total(&self) -> W {
        let mut acc = self.weights[0].zero_like();
        for w in &self.weights {
            acc.accumulate(w);
        }
        acc
    }

    /// Maps every string through `circuit`, keeps those for which `pass`
    /// holds on the image, and marginalizes the survivors onto `keep`.
    pub fn condition(
        &self,
        circuit: impl Fn(u32) -> u32,
        pass: impl Fn(u32) -> bool,
        keep: &[usize],
    ) -> ConditionalResult<W> {
        let n = self.pairs;
        let zero = self.weights[0].zero_like();
        let mut p_pass = zero.clone();
        let mut p_fail = zero.clone();
        let mut marginals: BTreeMap<u32, W> = BTreeMap::new();
        for (index, w) in self.weights.iter().enumerate() {
            let image = circuit(index as u32);
            if pass(image) {
                p_pass.accumulate(w);
                let key = keep
                    .iter()
                    .fold(0u32, |acc, &i| (acc << 2) | pair_code(image, n, i) as u32);
                marginals
                    .entry(key)
                    .or_insert_with(|| zero.clone())
                    .accumulate(w);
            } else {
                p_fail.accumulate(w);
            }
        }
        ConditionalResult {
            p_pass,
            p_fail,
            weights: marginals
                .into_iter()
                .map(|(k, w)| (BellString::from_index(k, keep.len()), w))
                .collect(),
        }
    }
}

/// Numeric product table for a Bell-diagonal state.
pub fn product_table(dist: &BellDiagonal, pairs: usize) -> Result<WeightedStringTable<f64>> {
    WeightedStringTable::product(&dist.probs(), pairs)
}

/// Symbolic product table: `F`/`G` weights for [`VarSet::Werner`], one
/// variable per label for [`VarSet::General`].
pub fn product_table_symbolic(
    vars: VarSet,
    pairs: usize,
) -> Result<WeightedStringTable<BellPolynomial>> {
    WeightedStringTable::product(&vars.label_weights(), pairs)
}

/// Outcome of a post-selection.
///
/// `weights` holds the *unnormalized* weight of every surviving marginal
/// string; it sums to `p_pass`. For numeric weights use
/// [`ConditionalResult::posterior`] to get the normalized distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalResult<W> {
    pub p_pass: W,
    pub p_fail: W,
    pub weights: BTreeMap<BellString, W>,
}

impl ConditionalResult<f64> {
    /// Normalized posterior; empty when nothing passes.
    pub fn posterior(&self) -> BTreeMap<BellString, f64> {
        if !(self.p_pass > 0.0) {
            return BTreeMap::new();
        }
        self.weights
            .iter()
            .map(|(s, w)| (s.clone(), w / self.p_pass))
            .collect()
    }

    /// Entropy of the normalized posterior, in bits (zero when nothing passes).
    pub fn posterior_entropy(&self) -> f64 {
        if !(self.p_pass > 0.0) {
            return 0.0;
        }
        entropy_unchecked(self.weights.values().map(|w| w / self.p_pass))
    }
}

/// The four-pair protocol on a four-pair table: apply the bijection `f`,
/// require agreeing x outcomes on the third pair and agreeing z outcomes on
/// the fourth, and keep the first two pairs.
pub fn ls_exact<W: Weight>(table: &WeightedStringTable<W>) -> Result<ConditionalResult<W>> {
    if table.pairs() != 4 {
        return Err(Error::Usage(format!(
            "the four-pair protocol needs a 4-pair table, got {} pairs",
            table.pairs()
        )));
    }
    Ok(table.condition(
        |s| apply_f_bits(s as u8) as u32,
        ls_passes,
        &[0, 1],
    ))
}

/// Pass test on an f-image: the 5th bit (pair 3, x test) and the 8th bit
/// (pair 4, z test) are both zero.
fn ls_passes(image: u32) -> bool {
    let third = BellLabel::from_code_unchecked(pair_code(image, 4, 2));
    let fourth = BellLabel::from_code_unchecked(pair_code(image, 4, 3));
    !measure_compare(third, Axis::X) && !measure_compare(fourth, Axis::Z)
}

/// One row of the four-pair pass table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRecord {
    pub monomial: BellPolynomial,
    pub input: BellString,
    pub f_image: BellString,
    pub marginal: BellString,
}

/// Every four-pair Werner input string that passes both comparisons, with
/// its probability monomial, its image under `f` and the marginal on the
/// kept pairs. Sorted by marginal, then by input.
pub fn generate_table() -> Vec<TableRecord> {
    let table = product_table_symbolic(VarSet::Werner, 4).expect("4 pairs is within capacity");
    let mut rows: Vec<TableRecord> = table
        .iter()
        .filter_map(|(input, w)| {
            let image = apply_f_bits(input.index() as u8) as u32;
            ls_passes(image).then(|| {
                let f_image = BellString::from_index(image, 4);
                let marginal = BellString::new(f_image.labels()[..2].to_vec());
                TableRecord {
                    monomial: w.clone(),
                    input,
                    f_image,
                    marginal,
                }
            })
        })
        .collect();
    rows.sort_by(|a, b| (&a.marginal, &a.input).cmp(&(&b.marginal, &b.input)));
    rows
}

/// Writes table records as CSV with header `monomial,input,f_image,marginal`.
pub fn write_table_csv<Wr: io::Write>(records: &[TableRecord], out: Wr) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()
}

/// Raw post-selected source distribution of one recurrence round, before the
/// relabeling: BXOR source into target, keep when the z outcomes agree.
pub fn recurrence_conditional(dist: &BellDiagonal) -> ConditionalResult<f64> {
    let table = product_table(dist, 2).expect("2 pairs is within capacity");
    let circuit = BxorCircuit::block(2);
    table.condition(
        |s| circuit.apply_index(s),
        |image| !measure_compare(BellLabel::from_code_unchecked(pair_code(image, 2, 1)), Axis::Z),
        &[0],
    )
}

/// One recurrence round by brute force over the 16 two-pair outcomes,
/// including the relabeling that swaps Phi- and Psi-.
pub fn recurrence_exact(dist: &BellDiagonal) -> Result<(BellDiagonal, f64)> {
    let cond = recurrence_conditional(dist);
    if !(cond.p_pass > 0.0) {
        return Err(Error::Degenerate("recurrence round never passes".into()));
    }
    let mut out = [0.0; 4];
    for (s, w) in &cond.weights {
        out[recurrence_relabel(s.labels()[0]).code() as usize] += w;
    }
    Ok((BellDiagonal::from_weights(out)?, cond.p_pass))
}

/// Post-selected source-block distribution for block size `m` by dense
/// enumeration over `4^m` strings.
pub fn ms_conditional(dist: &BellDiagonal, m: usize) -> Result<ConditionalResult<f64>> {
    if !(2..=MS_EXACT_MAX_BLOCK).contains(&m) {
        return Err(Error::Capacity {
            what: "block size",
            got: m,
            min: 2,
            max: MS_EXACT_MAX_BLOCK,
        });
    }
    let table = product_table(dist, m)?;
    let circuit = BxorCircuit::block(m);
    let sources: Vec<usize> = (0..m - 1).collect();
    Ok(table.condition(
        |s| circuit.apply_index(s),
        |image| !measure_compare(BellLabel::from_code_unchecked(pair_code(image, m, m - 1)), Axis::Z),
        &sources,
    ))
}

/// Block method by dense enumeration: `(p_pass, joint entropy of the
/// surviving m - 1 source labels)`.
pub fn ms_exact(dist: &BellDiagonal, m: usize) -> Result<(f64, f64)> {
    let cond = ms_conditional(dist, m)?;
    Ok((cond.p_pass, cond.posterior_entropy()))
}
