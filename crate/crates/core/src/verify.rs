//! Exact self-checks behind the `verify` command: regenerate the four-pair
//! pass table, confirm the closed forms coefficient by coefficient, and
//! compare the closed-form and fast paths against brute-force enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dist::BellDiagonal;
use crate::enumerate::{generate_table, ls_exact, ms_exact, product_table, product_table_symbolic, recurrence_exact};
use crate::error::Error;
use crate::poly::{BellPolynomial, VarSet};
use crate::protocols::{
    ls_closed_form_general, ls_closed_form_werner, ls_statistics, ms_statistics, ms_yield, pipeline_yield,
    recurrence_step, ProtocolSchedule, Terminal,
};

/// Reference four-pair pass table: `monomial,input,f_image,marginal`.
pub const REFERENCE_TABLE_CSV: &str = include_str!("../data/pass_table.csv");

const SEED: u64 = 0x5eed_2024;
pub const RECURRENCE_SAMPLES: usize = 1000;
pub const RECURRENCE_TOL: f64 = 1e-12;
pub const MS_SAMPLES: usize = 100;
pub const MS_TOL: f64 = 1e-10;
pub const MS_RECURRENCE_TOL: f64 = 1e-12;
pub const CLOSED_FORM_SAMPLES: usize = 100;
pub const CLOSED_FORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerifyTarget {
    Table,
    WernerClosedForm,
    GeneralClosedForm,
    Recurrence,
    Ms,
}

impl VerifyTarget {
    pub const ALL: [VerifyTarget; 5] = [
        VerifyTarget::Table,
        VerifyTarget::WernerClosedForm,
        VerifyTarget::GeneralClosedForm,
        VerifyTarget::Recurrence,
        VerifyTarget::Ms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerifyTarget::Table => "table",
            VerifyTarget::WernerClosedForm => "werner-closed-form",
            VerifyTarget::GeneralClosedForm => "general-closed-form",
            VerifyTarget::Recurrence => "recurrence",
            VerifyTarget::Ms => "ms",
        }
    }
}

impl FromStr for VerifyTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        VerifyTarget::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown verification target {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub target: VerifyTarget,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "[{tag}] {} / {}: {}", self.target.name(), c.name, c.detail)?;
        }
        Ok(())
    }
}

pub fn verify(target: VerifyTarget) -> VerifyReport {
    let checks = match target {
        VerifyTarget::Table => vec![check_table()],
        VerifyTarget::WernerClosedForm => check_werner_closed_form(),
        VerifyTarget::GeneralClosedForm => check_general_closed_form(),
        VerifyTarget::Recurrence => vec![check_recurrence()],
        VerifyTarget::Ms => check_ms(),
    };
    VerifyReport { target, checks }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Deserialize)]
pub struct ReferenceRow {
    pub monomial: String,
    pub input: String,
    pub f_image: String,
    pub marginal: String,
}

pub fn reference_table() -> Vec<ReferenceRow> {
    csv::Reader::from_reader(REFERENCE_TABLE_CSV.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .expect("embedded reference table is well formed")
}

/// Rows are compared as sets within each marginal group; order inside a
/// group carries no meaning.
fn check_table() -> Check {
    let reference = reference_table();
    let generated: Vec<ReferenceRow> = generate_table()
        .into_iter()
        .map(|r| ReferenceRow {
            monomial: r.monomial.to_string(),
            input: r.input.to_string(),
            f_image: r.f_image.to_string(),
            marginal: r.marginal.to_string(),
        })
        .collect();
    let groups = |rows: &[ReferenceRow]| {
        let mut g: BTreeMap<String, BTreeSet<ReferenceRow>> = BTreeMap::new();
        for r in rows {
            g.entry(r.marginal.clone()).or_default().insert(r.clone());
        }
        g
    };
    let ref_groups = groups(&reference);
    let gen_groups = groups(&generated);
    let in_group = |g: &BTreeMap<String, BTreeSet<ReferenceRow>>, r: &ReferenceRow| {
        g.get(&r.marginal).is_some_and(|s| s.contains(r))
    };
    let matched = reference.iter().filter(|r| in_group(&gen_groups, r)).count();
    let first_missing = reference.iter().find(|r| !in_group(&gen_groups, r));
    let first_extra = generated.iter().find(|r| !in_group(&ref_groups, r));
    let passed = matched == reference.len()
        && generated.len() == reference.len()
        && first_extra.is_none()
        && gen_groups.values().all(|g| g.len() == 4);
    let mut detail = format!("{matched}/{} rows match", reference.len());
    if let Some(r) = first_missing {
        detail += &format!("; first missing reference row: {},{},{},{}", r.monomial, r.input, r.f_image, r.marginal);
    }
    if let Some(r) = first_extra {
        detail += &format!("; first unexpected row: {},{},{},{}", r.monomial, r.input, r.f_image, r.marginal);
    }
    if generated.len() != reference.len() {
        detail += &format!("; generated {} rows", generated.len());
    }
    Check::new("table", passed, detail)
}

fn class_multiset(weights: impl IntoIterator<Item = BellPolynomial>) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for w in weights {
        *m.entry(w.to_string()).or_insert(0) += 1;
    }
    m
}

fn describe_classes(classes: &BTreeMap<String, usize>) -> String {
    classes
        .iter()
        .map(|(w, n)| format!("{n} x ({w})"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn werner_poly(terms: &[([u32; 2], u32)]) -> BellPolynomial {
    BellPolynomial::from_terms(VarSet::Werner, terms.iter().map(|(e, c)| (e.to_vec(), *c)))
}

fn general_poly(terms: &[([u32; 4], u32)]) -> BellPolynomial {
    BellPolynomial::from_terms(VarSet::General, terms.iter().map(|(e, c)| (e.to_vec(), *c)))
}

fn check_werner_closed_form() -> Vec<Check> {
    let table = product_table_symbolic(VarSet::Werner, 4).expect("4 pairs");
    let cond = ls_exact(&table).expect("4 pairs");
    let mut checks = Vec::new();

    let monomials = [[4, 0], [2, 2], [1, 3], [0, 4]];
    let coeffs: Vec<BigUint> = monomials.iter().map(|e| cond.p_pass.coefficient(e)).collect();
    let expected: Vec<BigUint> = [1u32, 18, 24, 21].into_iter().map(BigUint::from).collect();
    let shown = coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
    let ok = coeffs == expected && cond.p_pass.num_terms() == 4;
    checks.push(Check::new(
        "p_pass coefficients",
        ok,
        if ok {
            format!("coefficient vector ({shown}) confirmed on (F^4, F^2G^2, FG^3, G^4)")
        } else {
            format!("p_pass = {} (expected F^4 + 18F^2G^2 + 24FG^3 + 21G^4)", cond.p_pass)
        },
    ));

    let got = class_multiset(cond.weights.values().cloned());
    let want = class_multiset(
        std::iter::repeat_n(werner_poly(&[([4, 0], 1), ([0, 4], 3)]), 1)
            .chain(std::iter::repeat_n(werner_poly(&[([2, 2], 2), ([0, 4], 2)]), 9))
            .chain(std::iter::repeat_n(werner_poly(&[([1, 3], 4)]), 6)),
    );
    checks.push(Check::new(
        "posterior classes",
        got == want,
        describe_classes(&got),
    ));

    let total = (&cond.p_pass + &cond.p_fail) == werner_poly(&[([1, 0], 1), ([0, 1], 3)]).pow(4);
    checks.push(Check::new(
        "conservation",
        total,
        "p_pass + p_fail = (F + 3G)^4",
    ));

    let worst = (0..CLOSED_FORM_SAMPLES)
        .map(|i| {
            let f = 0.25 + 0.75 * i as f64 / (CLOSED_FORM_SAMPLES - 1) as f64;
            let cf = ls_closed_form_werner(f).expect("f in range");
            let (pp, h) = ls_statistics(&BellDiagonal::werner(f).expect("f in range"));
            (cf.p_pass - pp).abs().max((cf.entropy - h).abs())
        })
        .fold(0.0, f64::max);
    checks.push(Check::new(
        "numeric agreement",
        worst <= CLOSED_FORM_TOL,
        format!("{CLOSED_FORM_SAMPLES} fidelities, max deviation {worst:.3e} (tolerance {CLOSED_FORM_TOL:e})"),
    ));
    checks
}

/// The printed four-variable pass probability: quartic terms, `24 p00 p01 p10 p11`,
/// and three copies of `2 p_i^2 p_j^2` over unordered pairs `i != j`.
pub fn general_p_pass_polynomial() -> BellPolynomial {
    let mut terms: Vec<([u32; 4], u32)> = (0..4)
        .map(|i| {
            let mut e = [0; 4];
            e[i] = 4;
            (e, 1)
        })
        .collect();
    terms.push(([1, 1, 1, 1], 24));
    for i in 0..4 {
        for j in i + 1..4 {
            let mut e = [0; 4];
            e[i] = 2;
            e[j] = 2;
            terms.push((e, 6));
        }
    }
    general_poly(&terms)
}

/// Posterior classes with multiplicities 1, 6, 3, 3, 3.
pub fn general_posterior_classes() -> Vec<(BellPolynomial, usize)> {
    vec![
        (general_poly(&[([4, 0, 0, 0], 1), ([0, 4, 0, 0], 1), ([0, 0, 4, 0], 1), ([0, 0, 0, 4], 1)]), 1),
        (general_poly(&[([1, 1, 1, 1], 4)]), 6),
        (general_poly(&[([2, 2, 0, 0], 2), ([0, 0, 2, 2], 2)]), 3),
        (general_poly(&[([2, 0, 2, 0], 2), ([0, 2, 0, 2], 2)]), 3),
        (general_poly(&[([2, 0, 0, 2], 2), ([0, 2, 2, 0], 2)]), 3),
    ]
}

fn check_general_closed_form() -> Vec<Check> {
    let table = product_table_symbolic(VarSet::General, 4).expect("4 pairs");
    let cond = ls_exact(&table).expect("4 pairs");
    let mut checks = Vec::new();

    let expected = general_p_pass_polynomial();
    checks.push(Check::new(
        "p_pass polynomial",
        cond.p_pass == expected,
        format!("p_pass = {}", cond.p_pass),
    ));

    let got = class_multiset(cond.weights.values().cloned());
    let want = class_multiset(
        general_posterior_classes()
            .into_iter()
            .flat_map(|(p, n)| std::iter::repeat_n(p, n)),
    );
    checks.push(Check::new(
        "posterior classes",
        got == want,
        describe_classes(&got),
    ));

    let sum = BellPolynomial::from_terms(
        VarSet::General,
        (0..4).map(|i| {
            let mut e = vec![0; 4];
            e[i] = 1;
            (e, 1u32)
        }),
    );
    checks.push(Check::new(
        "conservation",
        (&cond.p_pass + &cond.p_fail) == sum.pow(4),
        "p_pass + p_fail = (p00 + p01 + p10 + p11)^4",
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..CLOSED_FORM_SAMPLES {
        let d = BellDiagonal::random(&mut rng);
        let cf = ls_closed_form_general(&d);
        let numeric = ls_exact(&product_table(&d, 4).expect("4 pairs")).expect("4 pairs");
        let symbolic_pp = cond.p_pass.evaluate(&d.probs());
        worst = worst
            .max((cf.p_pass - numeric.p_pass).abs())
            .max((cf.entropy - numeric.posterior_entropy()).abs())
            .max((symbolic_pp - numeric.p_pass).abs());
    }
    checks.push(Check::new(
        "numeric agreement",
        worst <= CLOSED_FORM_TOL,
        format!("{CLOSED_FORM_SAMPLES} random inputs, max deviation {worst:.3e} (tolerance {CLOSED_FORM_TOL:e})"),
    ));
    checks
}

fn check_recurrence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut within = 0;
    let mut worst = 0.0f64;
    let mut first_bad = None;
    for _ in 0..RECURRENCE_SAMPLES {
        let d = BellDiagonal::random(&mut rng);
        let (a, pa) = recurrence_step(&d).expect("valid input");
        let (b, pb) = recurrence_exact(&d).expect("valid input");
        let dev = a
            .probs()
            .iter()
            .zip(b.probs())
            .map(|(x, y)| (x - y).abs())
            .fold((pa - pb).abs(), f64::max);
        worst = worst.max(dev);
        if dev <= RECURRENCE_TOL {
            within += 1;
        } else if first_bad.is_none() {
            first_bad = Some(format!("input ({d}): closed form ({a}) vs enumeration ({b})"));
        }
    }
    let mut detail = format!(
        "{within}/{RECURRENCE_SAMPLES} random inputs within {RECURRENCE_TOL:e} (max deviation {worst:.3e})"
    );
    if let Some(bad) = first_bad {
        detail += &format!("; first mismatch {bad}");
    }
    Check::new("closed form vs enumeration", within == RECURRENCE_SAMPLES, detail)
}

fn check_ms() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let inputs: Vec<BellDiagonal> = (0..MS_SAMPLES).map(|_| BellDiagonal::random(&mut rng)).collect();

    let mut worst = 0.0f64;
    let mut first_bad = None;
    for m in 2..=6 {
        for d in &inputs {
            let (pa, ha) = ms_statistics(d, m).expect("m in range");
            let (pb, hb) = ms_exact(d, m).expect("m in range");
            let ya = ms_yield(d, m).expect("m in range");
            let yb = (pb * (m as f64 - 1.0) / m as f64 * (1.0 - hb / (m as f64 - 1.0))).clamp(0.0, 1.0);
            let dev = (pa - pb).abs().max((ha - hb).abs()).max((ya - yb).abs());
            worst = worst.max(dev);
            if dev > MS_TOL && first_bad.is_none() {
                first_bad = Some(format!("m = {m}, input ({d}): multinomial ({pa}, {ha}) vs dense ({pb}, {hb})"));
            }
        }
    }
    let mut detail = format!(
        "m = 2..=6 on {MS_SAMPLES} random inputs, max deviation {worst:.3e} (tolerance {MS_TOL:e})"
    );
    if let Some(bad) = &first_bad {
        detail += &format!("; first mismatch {bad}");
    }
    let dense = Check::new("multinomial vs dense enumeration", first_bad.is_none(), detail);

    let one_round = ProtocolSchedule::new(1, Terminal::Hashing).expect("valid schedule");
    let worst2 = inputs
        .iter()
        .map(|d| {
            let a = ms_yield(d, 2).expect("m in range");
            let b = pipeline_yield(d, &one_round).expect("valid input");
            (a - b).abs()
        })
        .fold(0.0, f64::max);
    let pair = Check::new(
        "two-block vs one recurrence round then hashing",
        worst2 <= MS_RECURRENCE_TOL,
        format!("{MS_SAMPLES} random inputs, max deviation {worst2:.3e} (tolerance {MS_RECURRENCE_TOL:e})"),
    );
    vec![dense, pair]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_table_has_64_rows() {
        assert_eq!(reference_table().len(), 64);
    }

    #[test]
    fn every_target_passes() {
        for t in VerifyTarget::ALL {
            let r = verify(t);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn target_names_round_trip() {
        for t in VerifyTarget::ALL {
            assert_eq!(t.name().parse::<VerifyTarget>().unwrap(), t);
        }
        assert!("everything".parse::<VerifyTarget>().is_err());
    }
}
