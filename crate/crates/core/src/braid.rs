//! Braid words, Markov moves and the combinatorial predicates used by the
//! extreme-degree theorems.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A positive word in the generators, by 1-based index.
pub type Word = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub index: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("strand count must be at least 2, got {}", n)));
        }
        for l in &letters {
            if l.index == 0 || l.index >= n {
                return Err(Error::IndexOutOfRange { index: l.index, n });
            }
            if l.sign != 1 && l.sign != -1 {
                return Err(Error::InvalidInput(format!("sign must be ±1, got {}", l.sign)));
            }
        }
        Ok(BraidWord { n, letters })
    }

    /// Word with every letter of sign `sign`.
    pub fn from_indices(n: usize, indices: &[usize], sign: i8) -> Result<Self> {
        Self::new(n, indices.iter().map(|&index| Letter { index, sign }).collect())
    }

    pub fn positive(n: usize, indices: &[usize]) -> Result<Self> {
        Self::from_indices(n, indices, 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn length(&self) -> usize {
        self.letters.len()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.sign == 1)
    }

    pub fn is_negative(&self) -> bool {
        self.letters.iter().all(|l| l.sign == -1)
    }

    /// Generator indices, ignoring signs.
    pub fn indices(&self) -> Word {
        self.letters.iter().map(|l| l.index).collect()
    }

    /// Signed tokens as accepted by [`parse_braid`].
    pub fn tokens(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.index as i64 * l.sign as i64).collect()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.tokens().iter().map(|t| t.to_string()).collect();
        write!(f, "[{}] in B_{}", t.join(" "), self.n)
    }
}

/// Whitespace- or comma-separated nonzero integers; `i` is `σ_i`, `-i` is `σ_i^{-1}`.
pub fn parse_braid(text: &str, n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("strand count must be at least 2, got {}", n)));
    }
    let mut letters = Vec::new();
    for (pos, tok) in text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .enumerate()
    {
        let v: i64 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("token {} ('{}') is not an integer", pos + 1, tok)))?;
        if v == 0 {
            return Err(Error::Parse(format!("token {} is zero", pos + 1)));
        }
        let index = v.unsigned_abs() as usize;
        if index >= n {
            return Err(Error::Parse(format!(
                "token {} ('{}') needs at least {} strands, got {}",
                pos + 1,
                tok,
                index + 1,
                n
            )));
        }
        letters.push(Letter { index, sign: if v > 0 { 1 } else { -1 } });
    }
    BraidWord::new(n, letters)
}

/// `n_+ - n_-`.
pub fn writhe(b: &BraidWord) -> i64 {
    b.letters.iter().map(|l| l.sign as i64).sum()
}

/// Number of cycles of the underlying permutation.
pub fn closure_components(b: &BraidWord) -> usize {
    let mut perm: Vec<usize> = (0..b.n).collect();
    for l in &b.letters {
        perm.swap(l.index - 1, l.index);
    }
    let mut seen = vec![false; b.n];
    let mut cycles = 0;
    for start in 0..b.n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    cycles
}

pub fn mirror(b: &BraidWord) -> BraidWord {
    BraidWord {
        n: b.n,
        letters: b.letters.iter().map(|l| Letter { index: l.index, sign: -l.sign }).collect(),
    }
}

/// Rotate left by `k` (negative `k` rotates right).
pub fn cyclic_shift(b: &BraidWord, k: i64) -> BraidWord {
    let len = b.letters.len();
    if len == 0 {
        return b.clone();
    }
    let k = k.rem_euclid(len as i64) as usize;
    let mut letters = b.letters.clone();
    letters.rotate_left(k);
    BraidWord { n: b.n, letters }
}

/// Remove a single occurrence of `σ_{n-1}^{±1}` and drop the last strand.
pub fn destabilize(b: &BraidWord) -> Option<BraidWord> {
    // B_1 is not modeled, so two-strand words never destabilize
    if b.n < 3 {
        return None;
    }
    let top = b.n - 1;
    let hits: Vec<usize> = (0..b.letters.len()).filter(|&p| b.letters[p].index == top).collect();
    if hits.len() != 1 {
        return None;
    }
    let mut letters = b.letters.clone();
    letters.remove(hits[0]);
    Some(BraidWord { n: b.n - 1, letters })
}

/// Whether `pattern` embeds order-preservingly (not necessarily contiguously)
/// into the generator indices of `b`.
pub fn contains_subexpression(b: &BraidWord, pattern: &[usize]) -> bool {
    is_subsequence(&b.indices(), pattern)
}

pub fn is_subsequence(word: &[usize], pattern: &[usize]) -> bool {
    let mut it = word.iter();
    pattern.iter().all(|p| it.any(|w| w == p))
}

pub fn uses_all_generators(b: &BraidWord) -> bool {
    (1..b.n).all(|i| b.letters.iter().any(|l| l.index == i))
}

/// `σ_iσ_{i+1}σ_iσ_{i+1}` or `σ_{i+1}σ_iσ_{i+1}σ_i` occurs for the adjacent pair `(i, i+1)`.
pub fn has_stst(b: &BraidWord, i: usize) -> bool {
    contains_subexpression(b, &[i, i + 1, i, i + 1]) || contains_subexpression(b, &[i + 1, i, i + 1, i])
}

/// Per adjacent pair `(i, i+1)`, `i = 1..n-2`, whether [`has_stst`] holds.
pub fn stst_flags(b: &BraidWord) -> Vec<bool> {
    (1..b.n.saturating_sub(1)).map(|i| has_stst(b, i)).collect()
}

/// The subexpression condition of the primeness criterion for positive braids.
pub fn primeness_criterion(b: &BraidWord) -> Result<bool> {
    if !b.is_positive() {
        return Err(Error::InvalidInput("primeness criterion needs a positive braid".into()));
    }
    Ok(stst_flags(b).into_iter().all(|f| f))
}

/// Smallest `k` such that every letter with index `< k` precedes every letter
/// with index `≥ k`, with both kinds present.
pub fn connect_sum_window(b: &BraidWord) -> Option<usize> {
    let idx = b.indices();
    (2..b.n).find(|&k| {
        let last_low = idx.iter().rposition(|&i| i < k);
        let first_high = idx.iter().position(|&i| i >= k);
        match (last_low, first_high) {
            (Some(l), Some(h)) => l < h,
            _ => false,
        }
    })
}

/// Collapse runs of equal adjacent letters; returns `(w*, |w*| - |w|)`.
pub fn contract_word(w: &[usize]) -> (Word, i64) {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() != Some(&l) {
            out.push(l);
        }
    }
    let shift = out.len() as i64 - w.len() as i64;
    (out, shift)
}

/// A term `C_x` of the reduced complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubwordTerm {
    pub letters: Word,
    pub contracted: Word,
    /// `|x*| - |x|`
    pub shift: i64,
    /// `|β| - |x|`
    pub cohom_degree: i64,
}

impl SubwordTerm {
    pub fn new(letters: Word, beta_len: usize) -> Self {
        let (contracted, shift) = contract_word(&letters);
        let cohom_degree = beta_len as i64 - letters.len() as i64;
        SubwordTerm { letters, contracted, shift, cohom_degree }
    }

    pub fn name(&self) -> String {
        word_name(&self.letters)
    }
}

/// Compact display of a positive word: `121`, or `1.12.3` once an index exceeds 9.
pub fn word_name(w: &[usize]) -> String {
    if w.is_empty() {
        return "e".to_string();
    }
    if w.iter().all(|&i| i < 10) {
        w.iter().map(|i| i.to_string()).collect()
    } else {
        w.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }
}

/// The distinct words of length `≤ max_len` occurring as subexpressions of `b`,
/// ordered by length, then lexicographically.
pub fn subwords_up_to_length(b: &BraidWord, max_len: usize) -> Result<Vec<SubwordTerm>> {
    if !b.is_positive() {
        return Err(Error::InvalidInput("subword enumeration needs a positive braid".into()));
    }
    let mut found: BTreeSet<Word> = BTreeSet::new();
    found.insert(Vec::new());
    for &l in &b.indices() {
        let extended: Vec<Word> = found
            .iter()
            .filter(|w| w.len() < max_len)
            .map(|w| {
                let mut e = w.clone();
                e.push(l);
                e
            })
            .collect();
        found.extend(extended);
    }
    let mut words: Vec<Word> = found.into_iter().collect();
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(words.into_iter().map(|w| SubwordTerm::new(w, b.length())).collect())
}
