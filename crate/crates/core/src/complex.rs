//! Free graded complexes over `R`, the truncated reduced complex of a positive
//! braid, block decompositions and duality.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::{json, Value};

use crate::braid::{subwords_up_to_length, BraidWord, SubwordTerm};
use crate::diff_rules::{components, hh_component_matrix};
use crate::error::{Error, Result};
use crate::grading_ring::{ExtMonomial, Poly, MAX_VARS};
use crate::hh_basis::{hh_basis, term_q_offset, HHClass};
use crate::scalar::Scalar;

/// Subwords of length up to this many letters are kept in the truncated complex.
pub const TRUNCATION_DEPTH: usize = 3;

/// Sparse matrix of polynomials, stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<S> {
    nrows: usize,
    cols: Vec<BTreeMap<usize, Poly<S>>>,
}

impl<S: Scalar> PolyMatrix<S> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        PolyMatrix { nrows, cols: vec![BTreeMap::new(); ncols] }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Poly<S> {
        self.cols[c].get(&r).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Poly<S>) {
        assert!(r < self.nrows);
        if v.is_zero() {
            self.cols[c].remove(&r);
        } else {
            self.cols[c].insert(r, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Poly<S>) {
        let cur = self.get(r, c);
        self.set(r, c, cur.add(v));
    }

    pub fn column(&self, c: usize) -> &BTreeMap<usize, Poly<S>> {
        &self.cols[c]
    }

    /// `(row, col, entry)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly<S>)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut t = PolyMatrix::zeros(self.ncols(), self.nrows);
        for (r, c, v) in self.entries() {
            t.cols[r].insert(c, v.clone());
        }
        t
    }

    /// `self · rhs`.
    pub fn compose(&self, rhs: &PolyMatrix<S>) -> Result<Self> {
        if self.ncols() != rhs.nrows {
            return Err(Error::Internal("dimension mismatch in matrix product".into()));
        }
        let mut out = PolyMatrix::zeros(self.nrows, rhs.ncols());
        for (k, c, b) in rhs.entries() {
            for (r, a) in &self.cols[k] {
                out.add_to(*r, c, &a.mul(b));
            }
        }
        Ok(out)
    }

    /// Keep the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let rmap: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut out = PolyMatrix::zeros(rows.len(), cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for (r, v) in &self.cols[c] {
                if let Some(&i) = rmap.get(r) {
                    out.cols[j].insert(i, v.clone());
                }
            }
        }
        out
    }

    pub fn map_entries(&self, f: impl Fn(&Poly<S>) -> Poly<S>) -> Self {
        let mut out = PolyMatrix::zeros(self.nrows, self.ncols());
        for (r, c, v) in self.entries() {
            out.set(r, c, f(v));
        }
        out
    }
}

/// A free generator `R·g` sitting in Q-degree `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub q: i32,
    /// Odd (Hochschild plus exterior) support of the underlying class.
    pub support: ExtMonomial,
}

/// A bounded complex of free graded `R`-modules with degree-0 differentials
/// raising the homological degree T by one.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex<S> {
    /// Number of polynomial variables, `n - 1`.
    pub nvars: usize,
    /// T-degree of the first position.
    pub start: i64,
    pub gens: Vec<Vec<Generator>>,
    /// `diffs[p]` maps position `p` to position `p + 1`.
    pub diffs: Vec<PolyMatrix<S>>,
    /// The first position is a genuine end of the complex rather than a truncation.
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl<S: Scalar> FreeComplex<S> {
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn t_degrees(&self) -> std::ops::Range<i64> {
        self.start..self.start + self.gens.len() as i64
    }

    pub fn position_of(&self, t: i64) -> Option<usize> {
        (t >= self.start && t < self.start + self.gens.len() as i64).then(|| (t - self.start) as usize)
    }

    /// Every entry homogeneous of the degree forced by its generators.
    pub fn check_homogeneity(&self) -> Result<()> {
        for (p, d) in self.diffs.iter().enumerate() {
            for (r, c, v) in d.entries() {
                let want = self.gens[p][c].q - self.gens[p + 1][r].q;
                if v.homogeneous_degree() != Some(want) {
                    return Err(Error::Internal(format!(
                        "entry {} from {} to {} should have degree {}",
                        v, self.gens[p][c].label, self.gens[p + 1][r].label, want
                    )));
                }
            }
        }
        Ok(())
    }

    /// `d_{p+1} ∘ d_p = 0` for all `p`.
    pub fn check_d_squared(&self) -> Result<()> {
        for p in 0..self.diffs.len().saturating_sub(1) {
            let dd = self.diffs[p + 1].compose(&self.diffs[p])?;
            let first = dd.entries().next().map(|(r, c, v)| (r, c, v.clone()));
            if let Some((r, c, v)) = first {
                return Err(Error::Internal(format!(
                    "d∘d ≠ 0 at T = {}: {} -> {} has entry {}",
                    self.start + p as i64,
                    self.gens[p][c].label,
                    self.gens[p + 2][r].label,
                    v
                )));
            }
        }
        Ok(())
    }

    /// Dual complex `Hom_R(-, R)` with Q-degrees `q ↦ -q - shift` and `T ↦ -T`.
    pub fn dual(&self, shift: i32) -> Self {
        let len = self.gens.len();
        let gens = (0..len)
            .map(|p| {
                self.gens[len - 1 - p]
                    .iter()
                    .map(|g| Generator { label: g.label.clone(), q: -g.q - shift, support: g.support })
                    .collect()
            })
            .collect();
        let diffs = (0..self.diffs.len()).map(|p| self.diffs[self.diffs.len() - 1 - p].transpose()).collect();
        FreeComplex {
            nvars: self.nvars,
            start: -(self.start + len as i64 - 1),
            gens,
            diffs,
            lower_closed: self.upper_closed,
            upper_closed: self.lower_closed,
        }
    }

    /// Restriction to the given generators per position.
    pub fn restrict(&self, keep: &[Vec<usize>]) -> Self {
        let gens = keep
            .iter()
            .enumerate()
            .map(|(p, ks)| ks.iter().map(|&g| self.gens[p][g].clone()).collect())
            .collect();
        let diffs = (0..self.diffs.len())
            .map(|p| self.diffs[p].submatrix(&keep[p + 1], &keep[p]))
            .collect();
        FreeComplex { gens, diffs, ..self.clone_shape() }
    }

    /// The last `count` positions.
    pub fn tail(&self, count: usize) -> Self {
        let count = count.min(self.len());
        let first = self.len() - count;
        let mut out = FreeComplex {
            gens: self.gens[first..].to_vec(),
            diffs: self.diffs[first..].to_vec(),
            ..self.clone_shape()
        };
        out.start = self.start + first as i64;
        out.lower_closed = first == 0 && self.lower_closed;
        out
    }

    fn clone_shape(&self) -> Self {
        FreeComplex {
            nvars: self.nvars,
            start: self.start,
            gens: Vec::new(),
            diffs: Vec::new(),
            lower_closed: self.lower_closed,
            upper_closed: self.upper_closed,
        }
    }

    /// Cancel every pair of generators joined by a nonzero constant entry.
    /// The result is homotopy equivalent over `R` and all its entries lie in
    /// the maximal ideal.
    pub fn minimized(&self) -> Self {
        let mut work = Elimination::new(self);
        work.run();
        work.finish()
    }

    /// JSON dump of generators and sparse entries.
    pub fn to_json(&self) -> Value {
        let positions: Vec<Value> = self
            .gens
            .iter()
            .enumerate()
            .map(|(p, gs)| {
                json!({
                    "T": self.start + p as i64,
                    "generators": gs.iter().map(|g| json!({"label": g.label, "Q": g.q})).collect::<Vec<_>>(),
                })
            })
            .collect();
        let diffs: Vec<Value> = self
            .diffs
            .iter()
            .enumerate()
            .map(|(p, d)| {
                json!({
                    "from_T": self.start + p as i64,
                    "entries": d.entries().map(|(r, c, v)| json!({"row": r, "col": c, "value": v.to_string()})).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "nvars": self.nvars,
            "lower_closed": self.lower_closed,
            "upper_closed": self.upper_closed,
            "positions": positions,
            "differentials": diffs,
        })
    }
}

/// Working state for unit cancellation: both column and row access.
struct Elimination<S> {
    source: FreeComplexShape,
    alive: Vec<Vec<bool>>,
    cols: Vec<Vec<BTreeMap<usize, Poly<S>>>>,
    rows: Vec<Vec<BTreeSet<usize>>>,
    gens: Vec<Vec<Generator>>,
}

struct FreeComplexShape {
    nvars: usize,
    start: i64,
    lower_closed: bool,
    upper_closed: bool,
}

impl<S: Scalar> Elimination<S> {
    fn new(c: &FreeComplex<S>) -> Self {
        let mut cols = Vec::new();
        let mut rows = Vec::new();
        for d in &c.diffs {
            let mut r = vec![BTreeSet::new(); d.nrows()];
            for (i, j, _) in d.entries() {
                r[i].insert(j);
            }
            cols.push(d.cols.clone());
            rows.push(r);
        }
        Elimination {
            source: FreeComplexShape {
                nvars: c.nvars,
                start: c.start,
                lower_closed: c.lower_closed,
                upper_closed: c.upper_closed,
            },
            alive: c.gens.iter().map(|g| vec![true; g.len()]).collect(),
            cols,
            rows,
            gens: c.gens.clone(),
        }
    }

    fn run(&mut self) {
        loop {
            let mut progress = false;
            for p in 0..self.cols.len() {
                for j in 0..self.cols[p].len() {
                    if !self.alive[p][j] {
                        continue;
                    }
                    // among unit entries of column j pick the sparsest row
                    let pivot = self.cols[p][j]
                        .iter()
                        .filter(|(_, v)| v.as_unit().is_some())
                        .map(|(i, _)| *i)
                        .min_by_key(|i| (self.rows[p][*i].len(), *i));
                    if let Some(i) = pivot {
                        self.eliminate(p, i, j);
                        progress = true;
                    }
                }
            }
            if !progress {
                break;
            }
        }
    }

    fn eliminate(&mut self, p: usize, i: usize, j: usize) {
        let u_inv = self.cols[p][j][&i].as_unit().and_then(|u| u.inv()).expect("unit pivot");
        let col_j: Vec<(usize, Poly<S>)> = self.cols[p][j]
            .iter()
            .filter(|(r, _)| **r != i)
            .map(|(r, v)| (*r, v.scale(&u_inv)))
            .collect();
        let row_i: Vec<(usize, Poly<S>)> = self.rows[p][i]
            .iter()
            .filter(|c| **c != j)
            .map(|c| (*c, self.cols[p][*c][&i].clone()))
            .collect();
        for (c, b) in &row_i {
            for (r, a) in &col_j {
                let cur = self.cols[p][*c].get(r).cloned().unwrap_or_else(Poly::zero);
                let next = cur.sub(&a.mul(b));
                if next.is_zero() {
                    self.cols[p][*c].remove(r);
                    self.rows[p][*r].remove(c);
                } else {
                    self.cols[p][*c].insert(*r, next);
                    self.rows[p][*r].insert(*c);
                }
            }
        }
        // drop column j and row i of d_p
        for r in std::mem::take(&mut self.cols[p][j]).into_keys() {
            self.rows[p][r].remove(&j);
        }
        for c in std::mem::take(&mut self.rows[p][i]) {
            self.cols[p][c].remove(&i);
        }
        // generator j of position p is no longer hit by d_{p-1}
        if p > 0 {
            for c in std::mem::take(&mut self.rows[p - 1][j]) {
                self.cols[p - 1][c].remove(&j);
            }
        }
        // generator i of position p+1 no longer maps anywhere
        if p + 1 < self.cols.len() {
            for r in std::mem::take(&mut self.cols[p + 1][i]).into_keys() {
                self.rows[p + 1][r].remove(&i);
            }
        }
        self.alive[p][j] = false;
        self.alive[p + 1][i] = false;
    }

    fn finish(self) -> FreeComplex<S> {
        let keep: Vec<Vec<usize>> = self
            .alive
            .iter()
            .map(|a| a.iter().enumerate().filter(|(_, x)| **x).map(|(k, _)| k).collect())
            .collect();
        let full = FreeComplex {
            nvars: self.source.nvars,
            start: self.source.start,
            gens: self.gens,
            diffs: self
                .cols
                .into_iter()
                .zip(self.alive.iter().skip(1))
                .map(|(cols, rows_alive)| PolyMatrix { nrows: rows_alive.len(), cols })
                .collect(),
            lower_closed: self.source.lower_closed,
            upper_closed: self.source.upper_closed,
        };
        full.restrict(&keep)
    }
}

/// The reduced complex of a positive braid with one free complex per
/// Hochschild degree, possibly truncated to its top positions.
#[derive(Clone, Debug)]
pub struct TruncatedComplex<S> {
    pub braid: BraidWord,
    pub n: usize,
    /// Terms per position, position 0 first.
    pub terms: Vec<Vec<SubwordTerm>>,
    /// Basis classes per position, one generator each, in generator order; per A-degree.
    pub classes: Vec<Vec<Vec<(usize, HHClass)>>>,
    /// Index = Hochschild degree A.
    pub per_a: Vec<FreeComplex<S>>,
    /// All subwords are present (no truncation).
    pub full: bool,
    /// Built by dualizing the complex of the mirror braid.
    pub dual: bool,
}

impl<S: Scalar> TruncatedComplex<S> {
    pub fn complex(&self, a: usize) -> &FreeComplex<S> {
        &self.per_a[a]
    }

    /// `d∘d = 0` and homogeneity for every A-degree.
    pub fn verify(&self) -> Result<()> {
        for c in &self.per_a {
            c.check_homogeneity()?;
            c.check_d_squared()?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "braid": self.braid.tokens(),
            "n": self.n,
            "full": self.full,
            "dual": self.dual,
            "terms": self.terms.iter().map(|ts| ts.iter().map(|t| t.name()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "complexes": self.per_a.iter().enumerate().map(|(a, c)| json!({"A": a, "complex": c.to_json()})).collect::<Vec<_>>(),
        })
    }
}

/// Reduced complex of a positive braid restricted to subwords of length `≤ depth`.
pub fn build_reduced<S: Scalar>(b: &BraidWord, depth: usize) -> Result<TruncatedComplex<S>> {
    if !b.is_positive() {
        return Err(Error::InvalidInput("the reduced complex is built for positive braids".into()));
    }
    let n = b.n();
    if n > MAX_VARS + 1 {
        return Err(Error::Unsupported(format!("at most {} strands, got {}", MAX_VARS + 1, n)));
    }
    let len = b.length();
    let depth = depth.min(len);
    let subwords = subwords_up_to_length(b, depth)?;
    // position p holds subwords of length len - (start + p); position 0 has the longest
    let mut terms: Vec<Vec<SubwordTerm>> = vec![Vec::new(); depth + 1];
    for t in subwords {
        terms[depth - t.letters.len()].push(t);
    }
    let start = (len - depth) as i64;
    let mut per_a = Vec::new();
    let mut classes = Vec::new();
    for a in 0..n {
        let mut gens = Vec::new();
        let mut cls = Vec::new();
        let mut offsets = Vec::new();
        for ts in &terms {
            let mut g = Vec::new();
            let mut c = Vec::new();
            let mut off = Vec::new();
            for (ti, t) in ts.iter().enumerate() {
                off.push(g.len());
                for class in hh_basis(&t.contracted, a, n)? {
                    g.push(Generator {
                        label: format!("{}:{}", t.name(), class.label()),
                        q: term_q_offset(&class, t),
                        support: class.odd_support(),
                    });
                    c.push((ti, class));
                }
            }
            gens.push(g);
            cls.push(c);
            offsets.push(off);
        }
        let mut diffs = Vec::new();
        for p in 0..depth {
            let mut d = PolyMatrix::zeros(gens[p + 1].len(), gens[p].len());
            for (xi, x) in terms[p].iter().enumerate() {
                for (zi, z) in terms[p + 1].iter().enumerate() {
                    if components(x, z).is_empty() {
                        continue;
                    }
                    let m = hh_component_matrix::<S>(x, z, a, n)?;
                    for (r, c, v) in m.entries {
                        d.set(offsets[p + 1][zi] + r, offsets[p][xi] + c, v);
                    }
                }
            }
            diffs.push(d);
        }
        per_a.push(FreeComplex {
            nvars: n - 1,
            start,
            gens,
            diffs,
            lower_closed: depth == len,
            upper_closed: true,
        });
        classes.push(cls);
    }
    let out = TruncatedComplex { braid: b.clone(), n, terms, classes, per_a, full: depth == len, dual: false };
    out.verify()?;
    Ok(out)
}

/// Top four positions (all subwords of length `≤ 3`); the full complex when `|β| ≤ 3`.
pub fn build_truncated<S: Scalar>(b: &BraidWord) -> Result<TruncatedComplex<S>> {
    build_reduced(b, TRUNCATION_DEPTH)
}

/// Full complex of `σ_1^{±m}` on two strands.
pub fn build_two_strand_full<S: Scalar>(m: usize, sign: i8) -> Result<TruncatedComplex<S>> {
    if m == 0 {
        return Err(Error::InvalidInput("two-strand power must be positive".into()));
    }
    let b = BraidWord::positive(2, &vec![1; m])?;
    let pos = build_reduced::<S>(&b, m)?;
    if sign >= 0 {
        Ok(pos)
    } else {
        Ok(dualize(&pos))
    }
}

/// Dual complex of a positive reduced complex: transposed differentials,
/// `A ↦ n-1-A`, `T ↦ -T`, `Q ↦ -Q - 2(n-1)`.
pub fn dualize<S: Scalar>(c: &TruncatedComplex<S>) -> TruncatedComplex<S> {
    let n = c.n;
    let shift = 2 * (n as i32 - 1);
    let per_a = (0..n).map(|a| c.per_a[n - 1 - a].dual(shift)).collect();
    let classes = (0..n)
        .map(|a| c.classes[n - 1 - a].iter().rev().cloned().collect())
        .collect();
    TruncatedComplex {
        braid: crate::braid::mirror(&c.braid),
        n,
        terms: c.terms.iter().rev().cloned().collect(),
        classes,
        per_a,
        full: c.full,
        dual: !c.dual,
    }
}

/// Split the top three positions of the A-degree `a` complex by odd support `J`,
/// checking that no entry crosses blocks.
pub fn block_decompose<S: Scalar>(c: &TruncatedComplex<S>, a: usize) -> Result<Vec<(ExtMonomial, FreeComplex<S>)>> {
    let tail = c.per_a[a].tail(3);
    let mut supports: BTreeSet<ExtMonomial> = BTreeSet::new();
    for gs in &tail.gens {
        for g in gs {
            supports.insert(g.support);
        }
    }
    for (p, d) in tail.diffs.iter().enumerate() {
        for (r, col, v) in d.entries() {
            let (s, t) = (&tail.gens[p][col], &tail.gens[p + 1][r]);
            if s.support != t.support {
                return Err(Error::Internal(format!(
                    "entry {} joins {} (support {:?}) and {} (support {:?})",
                    v, s.label, s.support, t.label, t.support
                )));
            }
        }
    }
    Ok(supports
        .into_iter()
        .map(|j| {
            let keep: Vec<Vec<usize>> = tail
                .gens
                .iter()
                .map(|gs| (0..gs.len()).filter(|&k| gs[k].support == j).collect())
                .collect();
            (j, tail.restrict(&keep))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational, F10007};

    #[test]
    fn sstt_tail_terms() {
        let b = BraidWord::positive(3, &[1, 1, 2, 2]).unwrap();
        let c = build_truncated::<Rational>(&b).unwrap();
        let names: Vec<Vec<String>> = c.terms.iter().map(|ts| ts.iter().map(|t| t.name()).collect()).collect();
        assert_eq!(names[1], vec!["11", "12", "22"]);
        assert_eq!(names[2], vec!["1", "2"]);
        // C_11 = B_s(-1) at position |β|-2 carries Dot_s at Q = 1 + 1 - 2 = 0
        let a0 = c.complex(0);
        let g = a0.gens[1].iter().find(|g| g.label == "11:D1").unwrap();
        assert_eq!(g.q, 0);
        assert_eq!(c.complex(0).start, 1);
    }

    #[test]
    fn d_squared_vanishes() {
        for (n, w) in [(3, vec![1, 2, 1, 2, 1, 2]), (4, vec![1, 2, 3, 1, 2, 3, 2, 1]), (4, vec![1, 3, 1, 3, 2, 2])] {
            let b = BraidWord::positive(n, &w).unwrap();
            build_truncated::<F10007>(&b).unwrap().verify().unwrap();
        }
    }

    #[test]
    fn top_terms_of_stst() {
        let b = BraidWord::positive(3, &[1, 2, 1, 2]).unwrap();
        let c = build_truncated::<Rational>(&b).unwrap();
        let a0 = c.complex(0);
        assert_eq!(a0.gens[3].len(), 1);
        assert_eq!(a0.gens[3][0].q, -4);
        let qs: Vec<i32> = a0.gens[2].iter().map(|g| g.q).collect();
        assert_eq!(qs, vec![-2, -2]);
    }

    #[test]
    fn sss_positions() {
        let b = BraidWord::positive(2, &[1, 1, 1]).unwrap();
        let c = build_truncated::<Rational>(&b).unwrap();
        assert!(c.full);
        let names: Vec<Vec<String>> = c.terms.iter().map(|ts| ts.iter().map(|t| t.name()).collect()).collect();
        assert_eq!(names, vec![vec!["111"], vec!["11"], vec!["1"], vec!["e"]]);
    }

    #[test]
    fn blocks_by_support() {
        let b = BraidWord::positive(3, &[1, 2, 1, 2]).unwrap();
        let c = build_truncated::<Rational>(&b).unwrap();
        let blocks = block_decompose(&c, 1).unwrap();
        let js: Vec<Vec<usize>> = blocks.iter().map(|(j, _)| j.indices()).collect();
        assert_eq!(js, vec![vec![1], vec![2]]);
        assert_eq!(block_decompose(&c, 0).unwrap().len(), 1);
    }

    #[test]
    fn dual_is_involutive_up_to_shift() {
        let b = BraidWord::positive(3, &[1, 2, 2, 1, 2]).unwrap();
        let c = build_truncated::<Rational>(&b).unwrap();
        let dd = dualize(&dualize(&c));
        for a in 0..3 {
            assert_eq!(dd.per_a[a], c.per_a[a]);
        }
    }

    #[test]
    fn minimization_preserves_d_squared() {
        let b = BraidWord::positive(3, &[1, 2, 1, 2, 1]).unwrap();
        let c = build_truncated::<Rational>(&b).unwrap();
        for a in 0..3 {
            let m = c.complex(a).minimized();
            m.check_d_squared().unwrap();
            m.check_homogeneity().unwrap();
            for d in &m.diffs {
                assert!(d.entries().all(|(_, _, v)| v.as_unit().is_none()));
            }
        }
    }
}
