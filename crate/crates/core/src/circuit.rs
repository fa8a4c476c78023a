//! Circuits made only of bilateral XOR gates, acting on packed label strings.

use crate::label::{bxor, BellLabel};
use crate::string::{pair_code, BellString};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BxorCircuit {
    pairs: usize,
    /// `(source, target)` pair indices, applied in order.
    gates: Vec<(usize, usize)>,
}

impl BxorCircuit {
    pub fn new(pairs: usize, gates: Vec<(usize, usize)>) -> Self {
        for &(s, t) in &gates {
            assert!(s < pairs && t < pairs && s != t, "bad gate ({s}, {t}) on {pairs} pairs");
        }
        BxorCircuit { pairs, gates }
    }

    /// Gate sequence c->a, c->b, a->d, b->d, c->d, which realizes
    /// [`crate::string::apply_f`].
    pub fn four_pair() -> Self {
        let (a, b, c, d) = (0, 1, 2, 3);
        BxorCircuit::new(4, vec![(c, a), (c, b), (a, d), (b, d), (c, d)])
    }

    /// Block circuit: each of the first `m - 1` pairs XORed into the last.
    pub fn block(m: usize) -> Self {
        BxorCircuit::new(m, (0..m - 1).map(|s| (s, m - 1)).collect())
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn gates(&self) -> &[(usize, usize)] {
        &self.gates
    }

    pub fn apply_index(&self, index: u32) -> u32 {
        let n = self.pairs;
        let mut codes: Vec<u8> = (0..n).map(|i| pair_code(index, n, i)).collect();
        for &(s, t) in &self.gates {
            let (s2, t2) = bxor(
                BellLabel::from_code_unchecked(codes[s]),
                BellLabel::from_code_unchecked(codes[t]),
            );
            codes[s] = s2.code();
            codes[t] = t2.code();
        }
        codes.iter().fold(0u32, |acc, &c| (acc << 2) | c as u32)
    }

    pub fn apply(&self, s: &BellString) -> BellString {
        assert_eq!(s.len(), self.pairs);
        BellString::from_index(self.apply_index(s.index()), self.pairs)
    }
}
