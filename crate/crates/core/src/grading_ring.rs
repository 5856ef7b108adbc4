//! The polynomial ring `R = k[α_1, …, α_{n-1}]` with `deg α_i = 2`, the exterior
//! algebra on the dual roots `α_i^∨`, the reflection action and Demazure operators.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest number of polynomial variables supported, i.e. braids on at most 9 strands.
pub const MAX_VARS: usize = 8;

/// Exponent vector; variable `v` (0-based) stands for `α_{v+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(v: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[v] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial(e)
    }

    pub fn exp(&self, v: usize) -> u16 {
        self.0[v]
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    /// Sum of exponents (half the Q-degree).
    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Q-degree `2·Σ e_i`.
    pub fn q_degree(&self) -> i32 {
        2 * self.total() as i32
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a -= *b;
        }
        Some(Monomial(e))
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: lower total degree first, then larger exponent of
    /// the earlier variable first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "a{}", v + 1)?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// All monomials of the given Q-degree in `n - 1` variables, in graded lexicographic order.
pub fn graded_slice_basis(degree: i32, n: usize) -> Vec<Monomial> {
    if degree < 0 || degree % 2 != 0 || n < 2 {
        return if degree == 0 { vec![Monomial::one()] } else { Vec::new() };
    }
    monomials_of_total((degree / 2) as u32, n - 1)
}

/// All monomials with exponent sum `total` in `nvars` variables, graded-lex order.
pub fn monomials_of_total(total: u32, nvars: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = [0u16; MAX_VARS];
    fill_monomials(0, total, nvars, &mut cur, &mut out);
    out
}

fn fill_monomials(v: usize, left: u32, nvars: usize, cur: &mut [u16; MAX_VARS], out: &mut Vec<Monomial>) {
    if nvars == 0 {
        if left == 0 {
            out.push(Monomial(*cur));
        }
        return;
    }
    if v + 1 == nvars {
        cur[v] = left as u16;
        out.push(Monomial(*cur));
        cur[v] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[v] = e as u16;
        fill_monomials(v + 1, left - e, nvars, cur, out);
    }
    cur[v] = 0;
}

/// Number of monomials of exponent sum `total` in `nvars` variables.
pub fn slice_dimension(total: u32, nvars: usize) -> usize {
    if nvars == 0 {
        return usize::from(total == 0);
    }
    // C(total + nvars - 1, nvars - 1)
    let mut acc: u128 = 1;
    for i in 1..nvars as u128 {
        acc = acc * (total as u128 + i) / i;
    }
    acc as usize
}

/// Element of `R`, stored sparsely with exact coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<S> {
    terms: Vec<(Monomial, S)>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(S::from_i64(c))
    }

    pub fn monomial(m: Monomial, c: S) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// The simple root `α_i`, `i` 1-based.
    pub fn alpha(i: usize) -> Self {
        assert!(i >= 1 && i <= MAX_VARS, "root index out of range");
        Self::monomial(Monomial::var(i - 1), S::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut map: BTreeMap<Monomial, S> = BTreeMap::new();
        for (m, c) in terms {
            let e = map.entry(m).or_insert_with(S::zero);
            *e += c;
        }
        Poly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, S)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A nonzero constant.
    pub fn as_unit(&self) -> Option<&S> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(c),
            _ => None,
        }
    }

    /// Q-degree if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let d = self.terms.first()?.0.q_degree();
        self.terms.iter().all(|(m, _)| m.q_degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Largest variable index (0-based) occurring, plus one.
    pub fn support_vars(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, _)| m.0.iter().rposition(|&e| e > 0).map_or(0, |v| v + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, -a.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Less => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((*mb, cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.clone() + cb.clone();
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().cloned());
        Poly { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().flat_map(|(ma, ca)| {
            other
                .terms
                .iter()
                .map(move |(mb, cb)| (ma.mul(mb), ca.clone() * cb.clone()))
        }))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly {
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Coefficient of a monomial.
    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms
            .binary_search_by(|(a, _)| a.cmp(m))
            .map(|k| self.terms[k].1.clone())
            .unwrap_or_else(|_| S::zero())
    }

    /// Image of `α_j` (1-based) under the simple reflection `s_i` of the geometric
    /// realization of the symmetric group.
    pub fn reflected_root(i: usize, j: usize) -> Self {
        if i == j {
            Self::alpha(j).neg()
        } else if i.abs_diff(j) == 1 {
            Self::alpha(j).add(&Self::alpha(i))
        } else {
            Self::alpha(j)
        }
    }

    /// Apply `s_i` (1-based), extended multiplicatively.
    pub fn reflect(&self, i: usize) -> Result<Self> {
        if i == 0 || i > MAX_VARS {
            return Err(Error::IndexOutOfRange { index: i, n: MAX_VARS + 1 });
        }
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&Self::reflected_root(i, v + 1).pow(e as u32));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Exact quotient by `α_i`, if it divides.
    pub fn div_alpha(&self, i: usize) -> Option<Self> {
        let v = Monomial::var(i - 1);
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            out.push((m.div(&v)?, c.clone()));
        }
        Some(Poly { terms: out })
    }

    /// Demazure operator `∂_i(f) = (f - s_i f) / α_i`.
    pub fn demazure(&self, i: usize) -> Result<Self> {
        let diff = self.sub(&self.reflect(i)?);
        diff.div_alpha(i).ok_or(Error::Internal(format!(
            "alpha_{} does not divide f - s_{}(f) for f = {}",
            i, i, self
        )))
    }

    /// Parse a sum of terms such as `2*a1^2*a3 - a2 + 1`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse polynomial '{}'", text));
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for (idx, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(idx > 0 && cleaned[..idx].ends_with('^')) {
                if idx > 0 {
                    chunks.push((negative, std::mem::take(&mut cur)));
                }
                negative = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        chunks.push((negative, cur));
        for (neg, chunk) in chunks {
            if chunk.is_empty() {
                return Err(bad());
            }
            let mut coeff: i64 = 1;
            let mut mono = Monomial::one();
            for factor in chunk.split('*') {
                if let Some(rest) = factor.strip_prefix('a') {
                    let (var, exp) = match rest.split_once('^') {
                        Some((v, e)) => (v, e.parse::<u16>().map_err(|_| bad())?),
                        None => (rest, 1),
                    };
                    let var: usize = var.parse().map_err(|_| bad())?;
                    if var == 0 || var > MAX_VARS {
                        return Err(bad());
                    }
                    let mut e = [0u16; MAX_VARS];
                    e[var - 1] = exp;
                    mono = mono.mul(&Monomial(e));
                } else {
                    coeff *= factor.parse::<i64>().map_err(|_| bad())?;
                }
            }
            terms.push((mono, S::from_i64(if neg { -coeff } else { coeff })));
        }
        Ok(Self::from_terms(terms))
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut cs = c.to_string();
            let neg = cs.starts_with('-');
            if neg {
                cs.remove(0);
            }
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{}", cs)?;
            } else if cs == "1" {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", cs, m)?;
            }
        }
        Ok(())
    }
}

impl<S: fmt::Debug> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.terms.iter().map(|(m, c)| format!("{:?}*{}", c, m)))
            .finish()
    }
}

/// Product of distinct dual roots `α_i^∨`, `i ∈ S`, in increasing order.
/// Bit `i - 1` marks `α_i^∨`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct ExtMonomial(pub u32);

impl ExtMonomial {
    pub fn empty() -> Self {
        ExtMonomial(0)
    }

    pub fn single(i: usize) -> Self {
        ExtMonomial(1 << (i - 1))
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        ExtMonomial(indices.iter().fold(0, |acc, &i| acc | (1 << (i - 1))))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn indices(&self) -> Vec<usize> {
        (1..=32).filter(|&i| self.contains(i)).collect()
    }

    pub fn without(&self, i: usize) -> Self {
        ExtMonomial(self.0 & !(1 << (i - 1)))
    }

    pub fn with(&self, i: usize) -> Self {
        ExtMonomial(self.0 | (1 << (i - 1)))
    }

    /// Bidegree `(A, Q) = (|S|, -2|S|)`.
    pub fn bidegree(&self) -> (i32, i32) {
        let k = self.len() as i32;
        (k, -2 * k)
    }

    /// All subsets of `pool` of size `k`, lexicographic in the sorted index lists.
    pub fn subsets(pool: &[usize], k: usize) -> Vec<ExtMonomial> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        subsets_rec(pool, k, 0, &mut cur, &mut out);
        out
    }
}

fn subsets_rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<ExtMonomial>) {
    if cur.len() == k {
        out.push(ExtMonomial::from_indices(cur));
        return;
    }
    for p in start..pool.len() {
        cur.push(pool[p]);
        subsets_rec(pool, k, p + 1, cur, out);
        cur.pop();
    }
}

impl fmt::Display for ExtMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "{}", idx.join(","))
    }
}

impl fmt::Debug for ExtMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ[{}]", self)
    }
}

/// Graded product `a ∧ b`, returned with the sign of the sorting permutation;
/// `None` when an index repeats.
pub fn ext_product(a: ExtMonomial, b: ExtMonomial) -> Option<(i32, ExtMonomial)> {
    if a.0 & b.0 != 0 {
        return None;
    }
    // each pair (i in a, j in b) with i > j costs one transposition
    let mut swaps = 0;
    for j in b.indices() {
        swaps += a.indices().iter().filter(|&&i| i > j).count();
    }
    let sign = if swaps % 2 == 0 { 1 } else { -1 };
    Some((sign, ExtMonomial(a.0 | b.0)))
}

impl<S: Scalar> Zero for Poly<S> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Scalar> std::ops::Add for Poly<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Poly::add(&self, &rhs)
    }
}

impl<S: Scalar> std::ops::Mul for Poly<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Poly::mul(&self, &rhs)
    }
}

impl<S: Scalar> One for Poly<S> {
    fn one() -> Self {
        Poly::one()
    }
}
