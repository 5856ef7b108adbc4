//! Verification suites: displayed matrices, theorem values on seeded random
//! braids, Koszul identifications, two-strand tables and invariance checks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::braid::{self, BraidWord};
use crate::complex::{block_decompose, build_truncated, dualize, TRUNCATION_DEPTH};
use crate::error::{Error, Result};
use crate::grading_ring::{ExtMonomial, Poly};
use crate::homology::{extreme_hhh, hhh, negative_extreme_hhh, two_strand_hhh, TriGradedTable};
use crate::invariant::{mirror_check, positive_form_check, superpolynomial, superpolynomial_of, Term};
use crate::koszul::{block_sequence, build_koszul, koszul_cohomology, match_to_koszul};
use crate::scalar::Scalar;
use crate::{Rational, F10007};

pub const SUITES: [&str; 10] = [
    "fixtures",
    "theorems-positive",
    "theorems-negative",
    "koszul",
    "two-strand",
    "markov",
    "mirror",
    "superpoly",
    "fields",
    "structural",
];

/// Longest random braid word.
pub const MAX_RANDOM_LENGTH: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub count: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random braids per strand count.
    pub count: usize,
    pub qmax: Option<i32>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 1, count: 50, qmax: None }
    }
}

fn word_text(b: &BraidWord) -> String {
    b.tokens().iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}

/// Shortest positive word containing `σ_iσ_{i+1}σ_iσ_{i+1}` for every `i`:
/// `1 2 1 2 3 2 3 4 3 4 …`.
fn stst_core(n: usize) -> Vec<usize> {
    let mut w = vec![1, 2, 1, 2];
    for i in 3..n {
        w.extend([i, i - 1, i]);
    }
    w
}

/// Random positive braid on `n` strands with every generator, of length at most
/// [`MAX_RANDOM_LENGTH`]; with `stst` it also has the stst subexpression for
/// every adjacent pair. A core word is randomly reflected (`i ↦ n - i`) and
/// reversed, then random letters are inserted.
pub fn random_positive_braid(rng: &mut impl Rng, n: usize, stst: bool) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::InvalidInput("random braids need at least two strands".into()));
    }
    let mut core: Vec<usize> = if stst && n >= 3 {
        stst_core(n)
    } else {
        let mut w: Vec<usize> = (1..n).collect();
        w.shuffle(rng);
        w
    };
    if core.len() > MAX_RANDOM_LENGTH {
        return Err(Error::Unsupported(format!("no word of length ≤ {} for {} strands", MAX_RANDOM_LENGTH, n)));
    }
    if rng.gen_bool(0.5) {
        core.iter_mut().for_each(|i| *i = n - *i);
    }
    if rng.gen_bool(0.5) {
        core.reverse();
    }
    let target = rng.gen_range(core.len().max(3)..=MAX_RANDOM_LENGTH);
    while core.len() < target {
        let pos = rng.gen_range(0..=core.len());
        core.insert(pos, rng.gen_range(1..n));
    }
    BraidWord::positive(n, &core)
}

/// The positive suite: `count` braids for each `n` in 3..=5, alternating between
/// stst-core and all-generator-core words.
pub fn positive_suite(seed: u64, count: usize) -> Vec<BraidWord> {
    let mut out = Vec::new();
    for n in 3..=5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(n as u64));
        for k in 0..count {
            out.push(random_positive_braid(&mut rng, n, k % 2 == 0).expect("core fits the length bound"));
        }
    }
    out
}

/// A matrix displayed for the words of a braid, with generator labels
/// `word:class` and polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub braid: Vec<usize>,
    pub n: usize,
    #[serde(rename = "A")]
    pub a: usize,
    /// Length of the subwords indexing the columns.
    pub from_length: usize,
    pub columns: Vec<String>,
    pub rows: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    /// When present, only classes with exterior support inside this set are compared.
    #[serde(default)]
    pub ext_within: Option<Vec<usize>>,
    /// Every column of the differential (within `ext_within`) is listed.
    #[serde(default)]
    pub complete: bool,
}

pub fn fixtures() -> Vec<Fixture> {
    serde_json::from_str(include_str!("../fixtures/displayed_matrices.json")).expect("fixture file parses")
}

/// Compare one displayed matrix with the assembled differential, entry by entry.
/// Nonzero entries from a listed column to an unlisted row also count as mismatches.
pub fn check_fixture<S: Scalar>(f: &Fixture) -> Result<Check> {
    let b = BraidWord::positive(f.n, &f.braid)?;
    let c = build_truncated::<S>(&b)?;
    let depth = TRUNCATION_DEPTH.min(b.length());
    let p = depth
        .checked_sub(f.from_length)
        .filter(|p| p + 1 <= depth)
        .ok_or_else(|| Error::InvalidInput(format!("fixture {} has no differential from length {}", f.name, f.from_length)))?;
    let fc = c.complex(f.a);
    let find = |gens: &[crate::complex::Generator], label: &str| -> Result<usize> {
        gens.iter()
            .position(|g| g.label == label)
            .ok_or_else(|| Error::InvalidInput(format!("fixture {}: no generator {}", f.name, label)))
    };
    let cols: Vec<usize> = f.columns.iter().map(|l| find(&fc.gens[p], l)).collect::<Result<_>>()?;
    let rows: Vec<usize> = f.rows.iter().map(|l| find(&fc.gens[p + 1], l)).collect::<Result<_>>()?;
    let d = &fc.diffs[p];
    let mut mismatches = Vec::new();
    for (i, &r) in rows.iter().enumerate() {
        for (j, &col) in cols.iter().enumerate() {
            let want: Poly<S> = Poly::parse(&f.matrix[i][j])?;
            let got = d.get(r, col);
            if got != want {
                mismatches.push(format!("({}, {}): expected {}, got {}", f.rows[i], f.columns[j], want, got));
            }
        }
    }
    for (j, &col) in cols.iter().enumerate() {
        for (r, v) in d.column(col) {
            if !rows.contains(r) {
                mismatches.push(format!("({}, {}): unexpected entry {}", fc.gens[p + 1][*r].label, f.columns[j], v));
            }
        }
    }
    if f.complete {
        let allowed = f.ext_within.as_ref().map(|w| ExtMonomial::from_indices(w).0).unwrap_or(u32::MAX);
        let expected_cols = fc.gens[p].iter().filter(|g| g.support.0 & !allowed == 0).count();
        if expected_cols != cols.len() {
            mismatches.push(format!("{} columns in range, {} listed", expected_cols, cols.len()));
        }
    }
    let passed = mismatches.is_empty();
    let detail = if passed {
        format!("{}x{} entries match", rows.len(), cols.len())
    } else {
        mismatches.join("; ")
    };
    Ok(Check::new(f.name.clone(), passed, detail))
}

fn fixture_suite<S: Scalar>() -> Vec<Check> {
    fixtures()
        .iter()
        .map(|f| check_fixture::<S>(f).unwrap_or_else(|e| Check::new(f.name.clone(), false, e.to_string())))
        .collect()
}

fn verdict_check(label: &str, b: &BraidWord, table: &TriGradedTable) -> Check {
    let v = &table.hypotheses.theorem_verdicts;
    let failed: Vec<&str> = v.iter().filter(|x| !x.holds).map(|x| x.claim.as_str()).collect();
    let expected_claims = if table.hypotheses.stst_per_pair.iter().all(|f| *f) { 3 } else { 2 } * b.n();
    let passed = failed.is_empty() && v.len() == expected_claims;
    let detail = if passed {
        format!("{} claims hold", v.len())
    } else if failed.is_empty() {
        format!("{} claims checked, {} expected", v.len(), expected_claims)
    } else {
        format!("failed: {}", failed.join("; "))
    };
    Check::new(format!("{} [{}] n={}", label, word_text(b), b.n()), passed, detail)
}

fn positive_theorems<S: Scalar>(cfg: &SuiteConfig) -> Vec<Check> {
    positive_suite(cfg.seed, cfg.count)
        .iter()
        .map(|b| match extreme_hhh::<S>(b, cfg.qmax) {
            Ok(t) => verdict_check("positive", b, &t),
            Err(e) => Check::new(format!("positive [{}]", word_text(b)), false, e.to_string()),
        })
        .collect()
}

fn negative_theorems<S: Scalar>(cfg: &SuiteConfig) -> Vec<Check> {
    positive_suite(cfg.seed, cfg.count)
        .iter()
        .map(|b| {
            let a = braid::mirror(b);
            match negative_extreme_hhh::<S>(&a, cfg.qmax) {
                Ok(t) => verdict_check("negative", &a, &t),
                Err(e) => Check::new(format!("negative [{}]", word_text(&a)), false, e.to_string()),
            }
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn koszul_blocks<S: Scalar>(b: &BraidWord) -> Result<Check> {
    let c = build_truncated::<S>(b)?;
    let r = b.n() - 1;
    let mut problems = Vec::new();
    let mut matched = 0;
    for a in 0..b.n() {
        let blocks = block_decompose(&c, a)?;
        if blocks.len() != binomial(r, a) {
            problems.push(format!("A={}: {} blocks, expected {}", a, blocks.len(), binomial(r, a)));
        }
        for (j, block) in blocks {
            if j.len() != a {
                problems.push(format!("A={}: block support {:?}", a, j));
            }
            match match_to_koszul(&block, j) {
                Some(_) => matched += 1,
                None => problems.push(format!("A={}: block {:?} is not Koszul", a, j)),
            }
        }
    }
    let passed = problems.is_empty();
    let detail = if passed { format!("{} blocks matched", matched) } else { problems.join("; ") };
    Ok(Check::new(format!("blocks [{}] n={}", word_text(b), b.n()), passed, detail))
}

/// Every sequence of length `r ≤ 4` over `{1, α_i}` with at least one unit is
/// exact at every position and Q-degree up to `qmax`.
fn unit_exactness<S: Scalar>(qmax: i32) -> Vec<Check> {
    let mut out = Vec::new();
    for r in 1..=4usize {
        for mask in 1u32..(1 << r) {
            let j = ExtMonomial(mask);
            let seq: Vec<Poly<S>> = block_sequence(j, r);
            let name = format!("unit exactness K({})", seq.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "));
            let result = build_koszul(&seq, r).and_then(|k| {
                (0..=r).try_fold(true, |ok, p| Ok(ok && koszul_cohomology(&k, p, qmax)?.is_empty()))
            });
            out.push(match result {
                Ok(ok) => Check::new(name, ok, if ok { "exact" } else { "nonzero cohomology" }),
                Err(e) => Check::new(name, false, e.to_string()),
            });
        }
    }
    out
}

fn koszul_suite<S: Scalar>(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out: Vec<Check> = positive_suite(cfg.seed, cfg.count)
        .iter()
        .map(|b| koszul_blocks::<S>(b).unwrap_or_else(|e| Check::new(format!("blocks [{}]", word_text(b)), false, e.to_string())))
        .collect();
    out.extend(unit_exactness::<S>(cfg.qmax.unwrap_or(2 * MAX_RANDOM_LENGTH as i32 + 10)));
    out
}

/// Closed-form two-strand values at `T = ±m ∓ i`: finite classes `(A, T) ↦ Q`
/// and free tails `(A, T) ↦ start`. At `i = m`, `m` even, only the tail is listed.
pub fn two_strand_expected(m: usize, sign: i8) -> (BTreeMap<(usize, i64), i32>, BTreeMap<(usize, i64), i32>) {
    let mut finite = BTreeMap::new();
    let mut tails = BTreeMap::new();
    let mi = m as i32;
    for i in 0..=m {
        let ii = i as i32;
        let even_m = m % 2 == 0;
        if sign > 0 {
            let t = (m - i) as i64;
            if i == m && even_m {
                tails.insert((0, t), mi);
                tails.insert((1, t), mi - 4);
                continue;
            }
            if i == 0 {
                finite.insert((0, t), -mi);
            } else if i % 2 == 0 {
                finite.insert((0, t), 2 * ii - mi);
                finite.insert((1, t), 2 * ii - mi - 4);
            }
        } else {
            let t = -(m as i64) + i as i64;
            if i == m && even_m {
                tails.insert((0, t), 2 - mi);
                tails.insert((1, t), -mi - 2);
                continue;
            }
            if i % 2 == 1 {
                if i >= 3 {
                    finite.insert((0, t), mi - 2 * ii + 2);
                }
                finite.insert((1, t), mi - 2 * ii - 2);
            }
        }
    }
    (finite, tails)
}

/// Compare the full two-strand table of `σ_1^{±m}` with [`two_strand_expected`].
pub fn check_two_strand<S: Scalar>(m: usize, sign: i8) -> Result<Check> {
    let qmax = 2 * m as i32 + 10;
    let table = two_strand_hhh::<S>(m, sign, Some(qmax))?;
    let (finite, tails) = two_strand_expected(m, sign);
    let mut problems = Vec::new();
    for a in 0..2 {
        for &t in &table.t_degrees {
            let got = table.dims(a, t);
            let got_tail = table.tail_at(a, t).map(|x| x.qstart);
            match tails.get(&(a, t)) {
                Some(&start) => {
                    let run: BTreeMap<i32, usize> = (start..=qmax).step_by(2).map(|q| (q, 1)).collect();
                    if got_tail != Some(start) || got != run {
                        problems.push(format!("A={} T={}: tail from {} expected, got tail {:?} dims {:?}", a, t, start, got_tail, got));
                    }
                }
                None => {
                    let want: BTreeMap<i32, usize> = finite.get(&(a, t)).map(|&q| BTreeMap::from([(q, 1)])).unwrap_or_default();
                    if got != want || got_tail.is_some() {
                        problems.push(format!("A={} T={}: expected {:?}, got {:?}", a, t, want, got));
                    }
                }
            }
        }
    }
    let expected_ts = m + 1;
    if table.t_degrees.len() != expected_ts {
        problems.push(format!("{} T-degrees computed, expected {}", table.t_degrees.len(), expected_ts));
    }
    let passed = problems.is_empty();
    let detail = if passed { format!("{} cells match", 2 * expected_ts) } else { problems.join("; ") };
    let sign_text = if sign > 0 { "" } else { "-" };
    Ok(Check::new(format!("two-strand σ1^{}{}", sign_text, m), passed, detail))
}

fn two_strand_suite<S: Scalar>() -> Vec<Check> {
    let mut out = Vec::new();
    for m in 1..=8 {
        for sign in [1i8, -1] {
            out.push(check_two_strand::<S>(m, sign).unwrap_or_else(|e| Check::new(format!("two-strand {} {}", sign, m), false, e.to_string())));
        }
    }
    out
}

/// Ten words for the cyclic-orbit check: the first words of the positive suite
/// for each strand count plus a few negative ones.
fn markov_words(seed: u64) -> Vec<BraidWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d61726b6f76);
    let mut out = Vec::new();
    for k in 0..10usize {
        let n = 3 + k % 3;
        let b = random_positive_braid(&mut rng, n, k % 2 == 0).expect("core fits");
        out.push(if k % 4 == 3 { braid::mirror(&b) } else { b });
    }
    out
}

/// Same dimensions and tails; the root chosen to witness a tail may differ.
fn same_values(x: &TriGradedTable, y: &TriGradedTable) -> bool {
    let tails = |t: &TriGradedTable| -> Vec<(usize, i64, i32, i32)> { t.tails.iter().map(|x| (x.a, x.t, x.qstart, x.period)).collect() };
    x.entries == y.entries && tails(x) == tails(y) && x.t_degrees == y.t_degrees
}

fn markov_suite<S: Scalar>(cfg: &SuiteConfig) -> Vec<Check> {
    markov_words(cfg.seed)
        .iter()
        .map(|b| {
            let name = format!("cyclic orbit [{}] n={}", word_text(b), b.n());
            let run = || -> Result<Check> {
                let base = hhh::<S>(b, cfg.qmax)?;
                let base_p = superpolynomial(b, &base)?;
                let mut bad = Vec::new();
                for k in 1..b.length() as i64 {
                    let s = braid::cyclic_shift(b, k);
                    let t = hhh::<S>(&s, cfg.qmax)?;
                    let p = superpolynomial(&s, &t)?;
                    if !same_values(&base, &t) || p.terms != base_p.terms || p.tails != base_p.tails {
                        bad.push(format!("shift {} [{}]", k, word_text(&s)));
                    }
                }
                let ok = bad.is_empty();
                Ok(Check::new(name.clone(), ok, if ok { format!("{} shifts agree", b.length()) } else { bad.join("; ") }))
            };
            run().unwrap_or_else(|e| Check::new(name.clone(), false, e.to_string()))
        })
        .collect()
}

/// Positive 3-strand knots satisfying the primeness criterion.
pub fn prime_knots(seed: u64, count: usize) -> Vec<BraidWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b6e6f74);
    let mut out = Vec::new();
    while out.len() < count {
        let b = random_positive_braid(&mut rng, 3, true).expect("core fits");
        if braid::closure_components(&b) == 1 && braid::primeness_criterion(&b).unwrap_or(false) {
            out.push(b);
        }
    }
    out
}

fn mirror_suite<S: Scalar>(cfg: &SuiteConfig) -> Vec<Check> {
    let mut words = Vec::new();
    for m in [3usize, 5] {
        for sign in [1i8, -1] {
            words.push(BraidWord::from_indices(2, &vec![1; m], sign).expect("valid word"));
        }
    }
    words.extend(prime_knots(cfg.seed, 5));
    words
        .iter()
        .map(|b| {
            let name = format!("mirror [{}] n={}", word_text(b), b.n());
            match mirror_check::<S>(b, cfg.qmax) {
                Ok(r) => {
                    let ok = r.holds && !r.compared_t.is_empty();
                    Check::new(name, ok, format!("compared T-exponents {:?}", r.compared_t))
                }
                Err(e) => Check::new(name, false, e.to_string()),
            }
        })
        .collect()
}

fn superpoly_suite<S: Scalar>(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let trefoil = [(3, vec![1, 2, 1, 2]), (2, vec![1, 1, 1])];
    let want = vec![
        Term { coeff: 1, a: 1, t: 1, q: -4 },
        Term { coeff: 1, a: 1, t: -1, q: 0 },
        Term { coeff: 1, a: 2, t: -1, q: -4 },
    ];
    for (n, w) in trefoil {
        let b = BraidWord::positive(n, &w).expect("valid word");
        let name = format!("trefoil [{}] n={}", word_text(&b), n);
        out.push(match superpolynomial_of::<S>(&b, cfg.qmax) {
            Ok(p) => {
                let ok = p.terms == want && p.tails.is_empty();
                Check::new(name, ok, p.factored())
            }
            Err(e) => Check::new(name, false, e.to_string()),
        });
    }
    let unknot = BraidWord::positive(2, &[1]).expect("valid word");
    out.push(match superpolynomial_of::<S>(&unknot, cfg.qmax) {
        Ok(p) => Check::new("unknot", p.terms == vec![Term { coeff: 1, a: 0, t: 0, q: 0 }] && p.tails.is_empty(), p.to_string()),
        Err(e) => Check::new("unknot", false, e.to_string()),
    });
    for b in positive_suite(cfg.seed, cfg.count) {
        let prime = braid::primeness_criterion(&b).unwrap_or(false);
        if !prime {
            continue;
        }
        let name = format!("positive form [{}] n={}", word_text(&b), b.n());
        out.push(match superpolynomial_of::<S>(&b, cfg.qmax) {
            Ok(p) => {
                let r = positive_form_check(&p, true);
                Check::new(name, r.applicable && r.passed, if r.passed { p.factored() } else { r.details.join("; ") })
            }
            Err(e) => Check::new(name, false, e.to_string()),
        });
    }
    out
}

fn fields_suite(cfg: &SuiteConfig) -> Vec<Check> {
    positive_suite(cfg.seed, cfg.count)
        .iter()
        .map(|b| {
            let name = format!("rational vs 10007 [{}] n={}", word_text(b), b.n());
            match (extreme_hhh::<Rational>(b, cfg.qmax), extreme_hhh::<F10007>(b, cfg.qmax)) {
                (Ok(x), Ok(y)) => {
                    let ok = same_values(&x, &y);
                    Check::new(name, ok, if ok { format!("{} entries agree", x.entries.len()) } else { "tables differ".into() })
                }
                (Err(e), _) | (_, Err(e)) => Check::new(name, false, e.to_string()),
            }
        })
        .collect()
}

fn structural_suite<S: Scalar>(cfg: &SuiteConfig) -> Vec<Check> {
    let mut words = positive_suite(cfg.seed, cfg.count);
    words.extend(markov_words(cfg.seed).into_iter().filter(|b| b.is_positive()));
    let mut out: Vec<Check> = words
        .iter()
        .map(|b| {
            let name = format!("d∘d = 0 [{}] n={}", word_text(b), b.n());
            let run = || -> Result<()> {
                let c = build_truncated::<S>(b)?;
                c.verify()?;
                dualize(&c).verify()?;
                for fc in &c.per_a {
                    fc.minimized().check_d_squared()?;
                }
                Ok(())
            };
            match run() {
                Ok(()) => Check::new(name, true, "complex, dual and minimal model"),
                Err(e) => Check::new(name, false, e.to_string()),
            }
        })
        .collect();
    for m in 1..=8 {
        let name = format!("d∘d = 0 two-strand m={}", m);
        out.push(match crate::complex::build_two_strand_full::<S>(m, 1).and_then(|c| c.verify()) {
            Ok(()) => Check::new(name, true, "full complex"),
            Err(e) => Check::new(name, false, e.to_string()),
        });
    }
    out
}

/// Run one named suite over the scalar type `S` (the `fields` suite always
/// compares the rationals with `F_10007`).
pub fn run_suite<S: Scalar>(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let checks = match name {
        "fixtures" => fixture_suite::<S>(),
        "theorems-positive" => positive_theorems::<S>(cfg),
        "theorems-negative" => negative_theorems::<S>(cfg),
        "koszul" => koszul_suite::<S>(cfg),
        "two-strand" => two_strand_suite::<S>(),
        "markov" => markov_suite::<S>(cfg),
        "mirror" => mirror_suite::<S>(cfg),
        "superpoly" => superpoly_suite::<S>(cfg),
        "fields" => fields_suite(cfg),
        "structural" => structural_suite::<S>(cfg),
        _ => {
            return Err(Error::InvalidInput(format!(
                "unknown suite '{}'; expected one of {}",
                name,
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport { suite: name.to_string(), seed: cfg.seed, count: cfg.count, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_braids_meet_hypotheses() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..=5 {
            for _ in 0..20 {
                let b = random_positive_braid(&mut rng, n, true).unwrap();
                assert!(b.length() <= MAX_RANDOM_LENGTH);
                assert!(braid::uses_all_generators(&b));
                assert!(braid::stst_flags(&b).iter().all(|f| *f));
                let b = random_positive_braid(&mut rng, n, false).unwrap();
                assert!(braid::uses_all_generators(&b));
            }
        }
    }

    #[test]
    fn suite_is_deterministic() {
        assert_eq!(positive_suite(3, 4), positive_suite(3, 4));
        assert_ne!(positive_suite(3, 4), positive_suite(4, 4));
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(run_suite::<F10007>("nonsense", &SuiteConfig::default()).is_err());
    }

    #[test]
    fn two_strand_expectations() {
        let (finite, tails) = two_strand_expected(3, 1);
        assert_eq!(finite, BTreeMap::from([((0, 3), -3), ((0, 1), 1), ((1, 1), -3)]));
        assert!(tails.is_empty());
        let (_, tails) = two_strand_expected(2, -1);
        assert_eq!(tails, BTreeMap::from([((0, 0), 0), ((1, 0), -4)]));
    }
}
