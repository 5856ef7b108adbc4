//! The reduced superpolynomial of a braid closure, its HOMFLY specialization
//! and the mirror relation.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::braid::{self, BraidWord};
use crate::error::{Error, Result};
use crate::homology::{hhh, TriGradedTable};
use crate::scalar::Scalar;
use crate::Rational;

/// `coeff · A^a T^t Q^q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: i64,
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "T")]
    pub t: i64,
    #[serde(rename = "Q")]
    pub q: i64,
}

fn collect(map: BTreeMap<(i64, i64, i64), i64>) -> Vec<Term> {
    // highest T first, then A ascending, then Q ascending
    let mut out: Vec<Term> = map
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|((a, t, q), coeff)| Term { coeff, a, t, q })
        .collect();
    out.sort_by_key(|x| (-x.t, x.a, x.q));
    out
}

/// Normalized generating function of HHH: a finite Laurent polynomial plus
/// terms carrying the factor `1/(1-Q^2)` from free tails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Superpolynomial {
    pub braid: Vec<i64>,
    pub n: usize,
    pub writhe: i64,
    pub components: usize,
    /// `A^p T^{p-e} Q^{e-4p}` with `p = (e+c-n)/2`.
    pub prefactor: Term,
    pub terms: Vec<Term>,
    /// Each entry stands for `coeff · A^a T^t Q^q / (1 - Q^2)`.
    pub tails: Vec<Term>,
    /// Range of normalized T-exponents that were computed; `None` when complete.
    pub t_window: Option<(i64, i64)>,
    /// Positive or negative with every generator present.
    pub hypotheses_hold: bool,
    pub normalization: String,
}

/// `A^p T^{p-e} Q^{e-4p}`, `p = (e+c-n)/2`; rejects odd `e+c-n`.
pub fn prefactor(e: i64, c: usize, n: usize) -> Result<Term> {
    let s = e + c as i64 - n as i64;
    if s % 2 != 0 {
        return Err(Error::Internal(format!("e + c - n = {} is odd", s)));
    }
    let p = s / 2;
    Ok(Term { coeff: 1, a: p, t: p - e, q: e - 4 * p })
}

/// Normalize `table` (computed for `b`) into the reduced superpolynomial.
pub fn superpolynomial(b: &BraidWord, table: &TriGradedTable) -> Result<Superpolynomial> {
    if table.braid != b.tokens() || table.n != b.n() {
        return Err(Error::InvalidInput("table was computed for a different braid".into()));
    }
    let e = braid::writhe(b);
    let c = braid::closure_components(b);
    let pre = prefactor(e, c, b.n())?;
    let mut finite: BTreeMap<(i64, i64, i64), i64> = BTreeMap::new();
    for entry in &table.entries {
        let mut dim = entry.dim as i64;
        if let Some(tail) = table.tail_at(entry.a, entry.t) {
            if entry.q >= tail.qstart && (entry.q - tail.qstart) % tail.period == 0 {
                dim -= 1;
            }
        }
        *finite.entry((entry.a as i64 + pre.a, entry.t + pre.t, entry.q as i64 + pre.q)).or_default() += dim;
    }
    let mut tails: BTreeMap<(i64, i64, i64), i64> = BTreeMap::new();
    for tail in &table.tails {
        *tails.entry((tail.a as i64 + pre.a, tail.t + pre.t, tail.qstart as i64 + pre.q)).or_default() += 1;
    }
    let complete = b.n() == 2;
    let t_window = if complete {
        None
    } else {
        let lo = table.t_degrees.iter().min().copied().unwrap_or(0);
        let hi = table.t_degrees.iter().max().copied().unwrap_or(0);
        Some((lo + pre.t, hi + pre.t))
    };
    let h = &table.hypotheses;
    Ok(Superpolynomial {
        braid: b.tokens(),
        n: b.n(),
        writhe: e,
        components: c,
        prefactor: pre,
        terms: collect(finite),
        tails: collect(tails),
        t_window,
        hypotheses_hold: (h.positive || h.negative) && h.all_generators,
        normalization: "unknot = 1".into(),
    })
}

/// Compute the table with [`hhh`] and normalize it.
pub fn superpolynomial_of<S: Scalar>(b: &BraidWord, qmax: Option<i32>) -> Result<Superpolynomial> {
    let table = hhh::<S>(b, qmax)?;
    superpolynomial(b, &table)
}

fn power(out: &mut String, var: char, e: i64) {
    match e {
        0 => {}
        1 => out.push(var),
        _ => out.push_str(&format!("{}^{}", var, e)),
    }
}

fn monomial_text(a: i64, t: i64, q: i64) -> String {
    let mut parts = Vec::new();
    for (v, e) in [('A', a), ('T', t), ('Q', q)] {
        let mut s = String::new();
        power(&mut s, v, e);
        if !s.is_empty() {
            parts.push(s);
        }
    }
    parts.join("*")
}

fn sum_text(items: impl Iterator<Item = (i64, String)>) -> String {
    let mut out = String::new();
    for (c, m) in items {
        let body = match (c.abs(), m.is_empty()) {
            (k, true) => k.to_string(),
            (1, false) => m,
            (k, false) => format!("{}*{}", k, m),
        };
        if out.is_empty() {
            out = if c < 0 { format!("-{}", body) } else { body };
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl Superpolynomial {
    /// Coefficient of `A^a T^t Q^q` in the finite part.
    pub fn coefficient(&self, a: i64, t: i64, q: i64) -> i64 {
        self.terms.iter().find(|x| (x.a, x.t, x.q) == (a, t, q)).map(|x| x.coeff).unwrap_or(0)
    }

    /// Finite terms and tails with T-exponent `t`.
    pub fn at_t(&self, t: i64) -> (Vec<Term>, Vec<Term>) {
        (
            self.terms.iter().filter(|x| x.t == t).copied().collect(),
            self.tails.iter().filter(|x| x.t == t).copied().collect(),
        )
    }

    pub fn max_t(&self) -> Option<i64> {
        self.terms.iter().chain(&self.tails).map(|x| x.t).max()
    }

    pub fn covers_t(&self, t: i64) -> bool {
        self.t_window.map_or(true, |(lo, hi)| lo <= t && t <= hi)
    }

    /// The finite part divided by its top-T term when that term is a single
    /// monomial, e.g. `A*T*Q^-4 (1 + T^-2*Q^4 + A*T^-2)`.
    pub fn factored(&self) -> String {
        let Some(top) = self.terms.first().copied() else {
            return self.to_string();
        };
        if self.terms.len() < 2 || self.terms.iter().filter(|x| x.t == top.t).count() != 1 || top.coeff != 1 {
            return self.to_string();
        }
        let inner = sum_text(self.terms.iter().map(|x| (x.coeff, monomial_text(x.a - top.a, x.t - top.t, x.q - top.q))));
        let mut out = format!("{} ({})", monomial_text(top.a, top.t, top.q), inner);
        if !self.tails.is_empty() {
            out.push_str(" + ");
            out.push_str(&self.tails_text());
        }
        out
    }

    fn tails_text(&self) -> String {
        format!("({})/(1 - Q^2)", sum_text(self.tails.iter().map(|x| (x.coeff, monomial_text(x.a, x.t, x.q)))))
    }

    /// Exact value at nonzero rational `A, T, Q` with `Q^2 ≠ 1`.
    pub fn evaluate(&self, a: &Rational, t: &Rational, q: &Rational) -> Result<Rational> {
        let q2 = q * q;
        if a.is_zero() || t.is_zero() || q.is_zero() || (!self.tails.is_empty() && q2.is_one()) {
            return Err(Error::InvalidInput("evaluation point is a pole".into()));
        }
        let mono = |x: &Term| -> Rational {
            Rational::from_integer(x.coeff.into()) * pow(a, x.a) * pow(t, x.t) * pow(q, x.q)
        };
        let finite: Rational = self.terms.iter().map(mono).fold(Rational::zero(), |s, v| s + v);
        let tails: Rational = self.tails.iter().map(mono).fold(Rational::zero(), |s, v| s + v);
        Ok(finite + tails / (Rational::one() - q2))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("superpolynomial serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn pow(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl fmt::Display for Superpolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let finite = sum_text(self.terms.iter().map(|x| (x.coeff, monomial_text(x.a, x.t, x.q))));
        match (self.terms.is_empty(), self.tails.is_empty()) {
            (true, false) => write!(f, "{}", self.tails_text()),
            (false, false) => write!(f, "{} + {}", finite, self.tails_text()),
            _ => write!(f, "{}", finite),
        }
    }
}

/// Outcome of the shape check for positive braids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormReport {
    /// False when the hypotheses fail and nothing was checked.
    pub applicable: bool,
    pub top_term: bool,
    pub gap: bool,
    /// `None` unless the prime factor was requested.
    pub prime_factor: Option<bool>,
    pub passed: bool,
    pub details: Vec<String>,
}

/// Check `T^M A^M Q^{-4M} + O(T^{M-2})` and, for `prime`, that the `T^{M-2}`
/// part is `A^M Q^{-4M} (Q^4 + A)`.
pub fn positive_form_check(p: &Superpolynomial, prime: bool) -> FormReport {
    let mut r = FormReport { applicable: false, top_term: false, gap: false, prime_factor: None, passed: false, details: Vec::new() };
    if !p.hypotheses_hold || p.writhe <= 0 {
        r.details.push("hypotheses fail: check suppressed".into());
        return r;
    }
    r.applicable = true;
    let m = p.prefactor.a;
    let (top, top_tails) = p.at_t(m);
    r.top_term = top_tails.is_empty() && top == vec![Term { coeff: 1, a: m, t: m, q: -4 * m }];
    r.top_term &= p.max_t() == Some(m);
    if !r.top_term {
        r.details.push(format!("T^{} part is {:?}", m, top));
    }
    let (gap, gap_tails) = p.at_t(m - 1);
    r.gap = gap.is_empty() && gap_tails.is_empty() && p.covers_t(m - 1);
    if !r.gap {
        r.details.push(format!("T^{} part is {:?}", m - 1, gap));
    }
    if prime {
        let (next, next_tails) = p.at_t(m - 2);
        let mut want = vec![Term { coeff: 1, a: m, t: m - 2, q: 4 - 4 * m }, Term { coeff: 1, a: m + 1, t: m - 2, q: -4 * m }];
        want.sort_by_key(|x| (x.a, x.q));
        let ok = next_tails.is_empty() && next == want && p.covers_t(m - 2);
        if !ok {
            r.details.push(format!("T^{} part is {:?}", m - 2, next));
        }
        r.prime_factor = Some(ok);
    }
    r.passed = r.top_term && r.gap && r.prime_factor.unwrap_or(true);
    r
}

/// `Σ coeff · a^i q^j`, with tail terms over `1 - q^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homfly {
    /// `(coeff, a-exponent, q-exponent)`.
    pub terms: Vec<(i64, i64, i64)>,
    pub tails: Vec<(i64, i64, i64)>,
    pub normalization: String,
}

fn specialize(terms: &[Term]) -> Vec<(i64, i64, i64)> {
    let mut map: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    for x in terms {
        // A = -a^2 q^2, T = -1, Q = q
        let sign = if (x.a + x.t) % 2 == 0 { 1 } else { -1 };
        *map.entry((2 * x.a, 2 * x.a + x.q)).or_default() += sign * x.coeff;
    }
    map.into_iter().filter(|(_, c)| *c != 0).map(|((a, q), c)| (c, a, q)).collect()
}

/// Substitute `T = -1, A = -a^2 q^2, Q = q`. For a closure with `c` components
/// the result is the skein-normalized polynomial times `(-a/q)^(c-1)`.
pub fn homfly_specialize(p: &Superpolynomial) -> Homfly {
    let mut normalization = p.normalization.clone();
    if p.components > 1 {
        normalization.push_str(&format!(", times (-a/q)^{} relative to the skein normalization", p.components - 1));
    }
    Homfly { terms: specialize(&p.terms), tails: specialize(&p.tails), normalization }
}

impl Homfly {
    pub fn evaluate(&self, a: &Rational, q: &Rational) -> Result<Rational> {
        let q2 = q * q;
        if a.is_zero() || q.is_zero() || (!self.tails.is_empty() && q2.is_one()) {
            return Err(Error::InvalidInput("evaluation point is a pole".into()));
        }
        let sum = |ts: &[(i64, i64, i64)]| {
            ts.iter().fold(Rational::zero(), |s, (c, i, j)| s + Rational::from_integer((*c).into()) * pow(a, *i) * pow(q, *j))
        };
        Ok(sum(&self.terms) + sum(&self.tails) / (Rational::one() - q2))
    }
}

impl fmt::Display for Homfly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = |ts: &[(i64, i64, i64)]| {
            sum_text(ts.iter().map(|(c, i, j)| {
                let mut parts = Vec::new();
                for (v, e) in [('a', *i), ('q', *j)] {
                    let mut s = String::new();
                    power(&mut s, v, e);
                    if !s.is_empty() {
                        parts.push(s);
                    }
                }
                (*c, parts.join("*"))
            }))
        };
        match (self.terms.is_empty(), self.tails.is_empty()) {
            (true, false) => write!(f, "({})/(1 - q^2)", text(&self.tails)),
            (false, false) => write!(f, "{} + ({})/(1 - q^2)", text(&self.terms), text(&self.tails)),
            _ => write!(f, "{}", text(&self.terms)),
        }
    }
}

/// Result of comparing `P(b)(A,T,Q)` with `P(mirror b)(A^-1,T^-1,Q^-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorReport {
    /// T-exponents of `P(b)` covered by both computations.
    pub compared_t: Vec<i64>,
    pub holds: bool,
}

fn invert(x: &Term) -> Term {
    Term { coeff: x.coeff, a: -x.a, t: -x.t, q: -x.q }
}

/// Compare the superpolynomials of `b` and its mirror on the T-exponents both
/// computations cover.
pub fn mirror_check<S: Scalar>(b: &BraidWord, qmax: Option<i32>) -> Result<MirrorReport> {
    if braid::closure_components(b) != 1 {
        return Err(Error::InvalidInput("mirror check needs a knot closure".into()));
    }
    let p = superpolynomial_of::<S>(b, qmax)?;
    let m = superpolynomial_of::<S>(&braid::mirror(b), qmax)?;
    if !p.tails.is_empty() || !m.tails.is_empty() {
        return Err(Error::Internal("a knot produced free tails".into()));
    }
    let mut inverted: Vec<Term> = m.terms.iter().map(invert).collect();
    inverted.sort_by_key(|x| (-x.t, x.a, x.q));
    let window = m.t_window.map(|(lo, hi)| (-hi, -lo));
    let covered = |t: i64, w: Option<(i64, i64)>| w.map_or(true, |(lo, hi)| lo <= t && t <= hi);
    let ts: Vec<i64> = match (p.t_window, window) {
        (None, None) => {
            let mut all: Vec<i64> = p.terms.iter().chain(&inverted).map(|x| x.t).collect();
            all.sort_unstable();
            all.dedup();
            all
        }
        (Some((lo, hi)), w) | (w @ None, Some((lo, hi))) => (lo..=hi).filter(|t| covered(*t, w)).collect(),
    };
    let holds = ts.iter().all(|t| {
        let lhs: Vec<&Term> = p.terms.iter().filter(|x| x.t == *t).collect();
        let rhs: Vec<&Term> = inverted.iter().filter(|x| x.t == *t).collect();
        lhs == rhs
    });
    Ok(MirrorReport { compared_t: ts, holds })
}
