//! Graded cohomology of free complexes, slice by slice in the Q-grading, and
//! the triply graded tables built from it.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::braid::{self, BraidWord};
use crate::complex::{build_reduced, build_truncated, dualize, FreeComplex, Generator, PolyMatrix, TruncatedComplex};
use crate::error::{Error, Result};
use crate::grading_ring::{monomials_of_total, Monomial};
use crate::linalg::{kernel_basis, rank_capped, Echelon, SparseVec};
use crate::scalar::Scalar;

/// Default Q cutoff `2|β| + 10`.
pub fn default_qmax(length: usize) -> i32 {
    2 * length as i32 + 10
}

/// Monomials of each exponent sum with their positions, built on demand.
#[derive(Debug, Default)]
pub struct MonomialCache {
    nvars: usize,
    tables: Vec<(Vec<Monomial>, HashMap<Monomial, usize>)>,
}

impl MonomialCache {
    pub fn new(nvars: usize) -> Self {
        MonomialCache { nvars, tables: Vec::new() }
    }

    fn ensure(&mut self, total: usize) {
        while self.tables.len() <= total {
            let t = self.tables.len() as u32;
            let list = monomials_of_total(t, self.nvars);
            let index = list.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            self.tables.push((list, index));
        }
    }

    pub fn monomials(&mut self, total: usize) -> &[Monomial] {
        self.ensure(total);
        &self.tables[total].0
    }

    pub fn index(&mut self, m: &Monomial) -> usize {
        let t = m.total() as usize;
        self.ensure(t);
        self.tables[t].1[m]
    }
}

/// Basis of the Q-slice of a free module: pairs (generator, monomial).
#[derive(Clone, Debug)]
pub struct SliceBasis {
    /// Per generator: `(offset, exponent sum)` when the generator contributes.
    pub blocks: Vec<Option<(usize, usize)>>,
    pub dim: usize,
}

impl SliceBasis {
    pub fn new(gens: &[Generator], q: i32, cache: &mut MonomialCache) -> Self {
        let mut blocks = Vec::with_capacity(gens.len());
        let mut dim = 0;
        for g in gens {
            let gap = q - g.q;
            if gap >= 0 && gap % 2 == 0 {
                let total = (gap / 2) as usize;
                blocks.push(Some((dim, total)));
                dim += cache.monomials(total).len();
            } else {
                blocks.push(None);
            }
        }
        SliceBasis { blocks, dim }
    }

    pub fn index(&self, g: usize, m: &Monomial, cache: &mut MonomialCache) -> Option<usize> {
        let (off, total) = self.blocks[g]?;
        (m.total() as usize == total).then(|| off + cache.index(m))
    }

    /// `(generator, monomial)` at a slice index.
    pub fn element(&self, idx: usize, cache: &mut MonomialCache) -> (usize, Monomial) {
        for (g, b) in self.blocks.iter().enumerate() {
            if let Some((off, total)) = *b {
                let len = cache.monomials(total).len();
                if idx >= off && idx < off + len {
                    return (g, cache.monomials(total)[idx - off]);
                }
            }
        }
        panic!("slice index {} out of range", idx)
    }
}

/// Columns of the linear map induced by `d` between Q-slices.
pub fn slice_matrix<S: Scalar>(
    d: &PolyMatrix<S>,
    source: &SliceBasis,
    target: &SliceBasis,
    cache: &mut MonomialCache,
) -> Vec<SparseVec<S>> {
    let mut cols = Vec::with_capacity(source.dim);
    for (c, block) in source.blocks.iter().enumerate() {
        let Some((_, total)) = *block else { continue };
        let monos: Vec<Monomial> = cache.monomials(total).to_vec();
        let entries: Vec<(usize, &crate::grading_ring::Poly<S>)> = d.column(c).iter().map(|(r, v)| (*r, v)).collect();
        for m in monos {
            let mut col: SparseVec<S> = Vec::new();
            for (r, f) in &entries {
                for (fm, coeff) in f.terms() {
                    let idx = target
                        .index(*r, &m.mul(fm), cache)
                        .expect("homogeneous entries land in the target slice");
                    col.push((idx, coeff.clone()));
                }
            }
            col.sort_by_key(|e| e.0);
            cols.push(col);
        }
    }
    cols
}

/// Dimensions of the cohomology of `c` at T-degree `t`, for Q from the lowest
/// generator degree up to `qmax`. Only nonzero dimensions are recorded.
pub fn cohomology_dims<S: Scalar>(c: &FreeComplex<S>, t: i64, qmax: i32) -> Result<BTreeMap<i32, usize>> {
    let p = check_position(c, t)?;
    let mut cache = MonomialCache::new(c.nvars);
    let mut out = BTreeMap::new();
    let Some(qmin) = c.gens[p].iter().map(|g| g.q).min() else {
        return Ok(out);
    };
    for q in qmin..=qmax {
        let h = slice_cohomology(c, p, q, &mut cache);
        if h > 0 {
            out.insert(q, h);
        }
    }
    Ok(out)
}

fn check_position<S: Scalar>(c: &FreeComplex<S>, t: i64) -> Result<usize> {
    let p = c
        .position_of(t)
        .ok_or_else(|| Error::InvalidInput(format!("T = {} is outside the computed range {:?}", t, c.t_degrees())))?;
    if p == 0 && !c.lower_closed {
        return Err(Error::InvalidInput(format!("T = {} is the truncated end of the complex", t)));
    }
    if p + 1 == c.len() && !c.upper_closed {
        return Err(Error::InvalidInput(format!("T = {} is the truncated end of the complex", t)));
    }
    Ok(p)
}

fn slice_cohomology<S: Scalar>(c: &FreeComplex<S>, p: usize, q: i32, cache: &mut MonomialCache) -> usize {
    let here = SliceBasis::new(&c.gens[p], q, cache);
    if here.dim == 0 {
        return 0;
    }
    let rank_out = if p + 1 < c.len() {
        let next = SliceBasis::new(&c.gens[p + 1], q, cache);
        let m = slice_matrix(&c.diffs[p], &here, &next, cache);
        rank_capped(m, here.dim.min(next.dim))
    } else {
        0
    };
    let kernel = here.dim - rank_out;
    let rank_in = if p > 0 && kernel > 0 {
        let prev = SliceBasis::new(&c.gens[p - 1], q, cache);
        let m = slice_matrix(&c.diffs[p - 1], &prev, &here, cache);
        rank_capped(m, kernel)
    } else {
        0
    };
    kernel - rank_in
}

/// Whether multiplication by `α_{var+1}` maps the (one-dimensional) cohomology
/// at `(p, q)` injectively into the cohomology at `(p, q + 2)`.
fn multiplication_injective<S: Scalar>(c: &FreeComplex<S>, p: usize, q: i32, var: usize, cache: &mut MonomialCache) -> bool {
    let here = SliceBasis::new(&c.gens[p], q, cache);
    let up = SliceBasis::new(&c.gens[p], q + 2, cache);
    let image_at = |basis: &SliceBasis, qq: i32, cache: &mut MonomialCache| -> Echelon<S> {
        let mut e = Echelon::new();
        if p > 0 {
            let prev = SliceBasis::new(&c.gens[p - 1], qq, cache);
            for col in slice_matrix(&c.diffs[p - 1], &prev, basis, cache) {
                e.insert(col);
            }
        }
        e
    };
    let cycles = if p + 1 < c.len() {
        let next = SliceBasis::new(&c.gens[p + 1], q, cache);
        kernel_basis(&slice_matrix(&c.diffs[p], &here, &next, cache))
    } else {
        (0..here.dim).map(|i| vec![(i, S::one())]).collect()
    };
    let image_here = image_at(&here, q, cache);
    let Some(z) = cycles.into_iter().find(|z| !image_here.contains(z.clone())) else {
        return false;
    };
    let x = Monomial::var(var);
    let mut shifted: SparseVec<S> = z
        .iter()
        .map(|(i, coeff)| {
            let (g, m) = here.element(*i, cache);
            (up.index(g, &m.mul(&x), cache).expect("shifted monomial"), coeff.clone())
        })
        .collect();
    shifted.sort_by_key(|e| e.0);
    !image_at(&up, q + 2, cache).contains(shifted)
}

/// A free rank-one summand `k[α_i]` detected from the slice dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tail {
    #[serde(rename = "A")]
    pub a: usize,
    #[serde(rename = "T")]
    pub t: i64,
    pub qstart: i32,
    pub period: i32,
    /// Index `i` of the root `α_i` acting bijectively along the tail.
    pub variable: usize,
}

/// Minimum number of slices for a tail to be reported.
pub const MIN_TAIL_SLICES: usize = 3;

/// Find a period-2 run of one-dimensional slices reaching `qmax` on which some
/// `mult_ok(q, var)` (multiplication by `α_{var+1}` from `q` to `q+2`) is
/// injective at every step.
pub fn detect_free_tail(
    dims: &BTreeMap<i32, usize>,
    qmax: i32,
    nvars: usize,
    mut mult_ok: impl FnMut(i32, usize) -> bool,
) -> Option<(i32, i32, usize)> {
    let (&top, _) = dims.iter().next_back()?;
    if top < qmax - 1 {
        return None;
    }
    let mut start = top;
    while dims.get(&(start - 2)) == Some(&1) {
        start -= 2;
    }
    if dims.get(&top) != Some(&1) || ((top - start) / 2 + 1) < MIN_TAIL_SLICES as i32 {
        return None;
    }
    (0..nvars)
        .find(|&v| (start..top).step_by(2).all(|q| mult_ok(q, v)))
        .map(|v| (start, 2, v + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    #[serde(rename = "A")]
    pub a: usize,
    #[serde(rename = "T")]
    pub t: i64,
    #[serde(rename = "Q")]
    pub q: i32,
    pub dim: usize,
}

/// One claim of the extreme-degree theorems and whether the table agrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Hypotheses {
    pub positive: bool,
    pub negative: bool,
    pub all_generators: bool,
    /// Per adjacent pair `(i, i+1)`: `σ_iσ_{i+1}σ_iσ_{i+1}` or `σ_{i+1}σ_iσ_{i+1}σ_i` occurs.
    pub stst_per_pair: Vec<bool>,
    pub knot: bool,
    pub theorem_verdicts: Vec<Verdict>,
}

/// Dimensions of HHH per `(A, T, Q)` on the computed cells, with free tails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriGradedTable {
    pub braid: Vec<i64>,
    pub n: usize,
    pub writhe: i64,
    pub components: usize,
    pub qmax: i32,
    pub field: String,
    /// Homological degrees that were computed (for all A); absent entries there are zero.
    pub t_degrees: Vec<i64>,
    pub entries: Vec<TableEntry>,
    pub tails: Vec<Tail>,
    pub hypotheses: Hypotheses,
    pub warnings: Vec<String>,
}

impl TriGradedTable {
    /// Q ↦ dim at `(A, T)`.
    pub fn dims(&self, a: usize, t: i64) -> BTreeMap<i32, usize> {
        self.entries
            .iter()
            .filter(|e| e.a == a && e.t == t)
            .map(|e| (e.q, e.dim))
            .collect()
    }

    pub fn tail_at(&self, a: usize, t: i64) -> Option<&Tail> {
        self.tails.iter().find(|x| x.a == a && x.t == t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Entries and tails with A, T, Q relabelled, e.g. for comparisons under duality.
    pub fn relabel(&self, f: impl Fn(usize, i64, i32) -> (usize, i64, i32)) -> Vec<TableEntry> {
        let mut out: Vec<TableEntry> = self
            .entries
            .iter()
            .map(|e| {
                let (a, t, q) = f(e.a, e.t, e.q);
                TableEntry { a, t, q, dim: e.dim }
            })
            .collect();
        out.sort_by_key(|e| (e.a, e.t, e.q));
        out
    }
}

fn base_table<S: Scalar>(b: &BraidWord, qmax: i32) -> TriGradedTable {
    TriGradedTable {
        braid: b.tokens(),
        n: b.n(),
        writhe: braid::writhe(b),
        components: braid::closure_components(b),
        qmax,
        field: S::field_name(),
        t_degrees: Vec::new(),
        entries: Vec::new(),
        tails: Vec::new(),
        hypotheses: Hypotheses {
            positive: b.is_positive(),
            negative: b.is_negative(),
            all_generators: braid::uses_all_generators(b),
            stst_per_pair: braid::stst_flags(b),
            knot: braid::closure_components(b) == 1,
            theorem_verdicts: Vec::new(),
        },
        warnings: Vec::new(),
    }
}

/// Fill `table` with the cohomology of every A-degree at the given T-degrees.
fn fill_table<S: Scalar>(table: &mut TriGradedTable, c: &TruncatedComplex<S>, ts: &[i64], qmax: i32) -> Result<()> {
    for (a, fc) in c.per_a.iter().enumerate() {
        let m = fc.minimized();
        let mut cache = MonomialCache::new(m.nvars);
        for &t in ts {
            let dims = cohomology_dims(&m, t, qmax)?;
            let p = m.position_of(t).expect("checked position");
            if let Some((qstart, period, variable)) =
                detect_free_tail(&dims, qmax, m.nvars, |q, v| multiplication_injective(&m, p, q, v, &mut cache))
            {
                table.tails.push(Tail { a, t, qstart, period, variable });
            }
            for (q, dim) in dims {
                table.entries.push(TableEntry { a, t, q, dim });
            }
        }
    }
    table.t_degrees = ts.to_vec();
    table.entries.sort_by_key(|e| (e.a, e.t, e.q));
    table.tails.sort_by_key(|x| (x.a, x.t));
    Ok(())
}

fn valid_degrees<S: Scalar>(c: &FreeComplex<S>, wanted: &[i64]) -> Vec<i64> {
    wanted
        .iter()
        .copied()
        .filter(|&t| match c.position_of(t) {
            None => false,
            Some(p) => (p > 0 || c.lower_closed) && (p + 1 < c.len() || c.upper_closed),
        })
        .collect()
}

/// HHH of a positive braid at `T = |β|, |β|-1, |β|-2`.
pub fn extreme_hhh<S: Scalar>(b: &BraidWord, qmax: Option<i32>) -> Result<TriGradedTable> {
    if !b.is_positive() {
        return Err(Error::InvalidInput("extreme_hhh needs a positive braid".into()));
    }
    let qmax = qmax.unwrap_or_else(|| default_qmax(b.length()));
    let c = build_truncated::<S>(b)?;
    let len = b.length() as i64;
    let ts = valid_degrees(&c.per_a[0], &[len - 2, len - 1, len]);
    let mut table = base_table::<S>(b, qmax);
    fill_table(&mut table, &c, &ts, qmax)?;
    if !table.hypotheses.all_generators {
        table.warnings.push("not every generator occurs: the extreme-degree theorems do not apply".into());
    } else if b.n() >= 3 && !table.hypotheses.stst_per_pair.iter().all(|f| *f) {
        table
            .warnings
            .push("some adjacent pair lacks an stst subexpression: no claim at T = |β|-2".into());
    }
    table.hypotheses.theorem_verdicts = theorem_verdicts(b, &table);
    Ok(table)
}

/// HHH of a negative braid at `T = -|α|, -|α|+1, -|α|+2`, via the dual of the
/// complex of its positive mirror.
pub fn negative_extreme_hhh<S: Scalar>(a: &BraidWord, qmax: Option<i32>) -> Result<TriGradedTable> {
    if !a.is_negative() {
        return Err(Error::InvalidInput("negative_extreme_hhh needs a negative braid".into()));
    }
    let qmax = qmax.unwrap_or_else(|| default_qmax(a.length()));
    let pos = braid::mirror(a);
    let c = dualize(&build_truncated::<S>(&pos)?);
    let len = a.length() as i64;
    let ts = valid_degrees(&c.per_a[0], &[-len, -len + 1, -len + 2]);
    let mut table = base_table::<S>(a, qmax);
    fill_table(&mut table, &c, &ts, qmax)?;
    if !table.hypotheses.all_generators {
        table.warnings.push("not every generator occurs: the extreme-degree theorems do not apply".into());
    }
    table.hypotheses.theorem_verdicts = theorem_verdicts(a, &table);
    Ok(table)
}

/// Full HHH of `σ_1^{±m}` over all homological degrees.
pub fn two_strand_hhh<S: Scalar>(m: usize, sign: i8, qmax: Option<i32>) -> Result<TriGradedTable> {
    let qmax = qmax.unwrap_or_else(|| default_qmax(m));
    let b = BraidWord::from_indices(2, &vec![1; m], if sign >= 0 { 1 } else { -1 })?;
    let pos = BraidWord::positive(2, &vec![1; m])?;
    let mut c = build_reduced::<S>(&pos, m)?;
    if sign < 0 {
        c = dualize(&c);
    }
    let ts: Vec<i64> = c.per_a[0].t_degrees().collect();
    let mut table = base_table::<S>(&b, qmax);
    fill_table(&mut table, &c, &ts, qmax)?;
    table.hypotheses.theorem_verdicts = theorem_verdicts(&b, &table);
    Ok(table)
}

/// Dispatch on the shape of the word: full tables on two strands, extreme
/// degrees otherwise.
pub fn hhh<S: Scalar>(b: &BraidWord, qmax: Option<i32>) -> Result<TriGradedTable> {
    if b.n() == 2 && b.length() > 0 && (b.is_positive() || b.is_negative()) {
        let sign = b.letters()[0].sign;
        two_strand_hhh::<S>(b.length(), sign, qmax)
    } else if b.is_positive() {
        extreme_hhh::<S>(b, qmax)
    } else if b.is_negative() {
        negative_extreme_hhh::<S>(b, qmax)
    } else {
        Err(Error::InvalidInput(
            "mixed-sign braid words are not supported; run `analyze` for structural data".into(),
        ))
    }
}

/// A theorem claim: exact Q ↦ dim at one `(A, T)` cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub a: usize,
    pub t: i64,
    pub dims: BTreeMap<i32, usize>,
    pub source: &'static str,
}

/// Values asserted by the extreme-degree theorems for `b`, when their
/// hypotheses hold.
pub fn theorem_predictions(b: &BraidWord) -> Vec<Prediction> {
    let n = b.n();
    let len = b.length() as i64;
    let mut out = Vec::new();
    if len == 0 || !braid::uses_all_generators(b) {
        return out;
    }
    let stst = braid::stst_flags(b).iter().all(|f| *f);
    let cell = |a: usize, t: i64, q: Option<i32>, source| Prediction {
        a,
        t,
        dims: q.map(|q| BTreeMap::from([(q, 1)])).unwrap_or_default(),
        source,
    };
    if b.is_positive() {
        for a in 0..n {
            out.push(cell(a, len, (a == 0).then_some(-(len as i32)), "top degree"));
            out.push(cell(a, len - 1, None, "top degree minus one"));
        }
        if n >= 3 && stst {
            for a in 0..n {
                let q = match a {
                    0 => Some(4 - len as i32),
                    1 => Some(-(len as i32)),
                    _ => None,
                };
                out.push(cell(a, len - 2, q, "top degree minus two"));
            }
        }
    } else if b.is_negative() && n >= 3 {
        for a in 0..n {
            out.push(cell(a, -len, None, "bottom degree"));
            out.push(cell(a, -len + 1, None, "bottom degree plus one"));
        }
        if stst {
            for a in 0..n {
                let q = (n == 3 && a == 2).then_some(len as i32 - 8);
                out.push(cell(a, -len + 2, q, "bottom degree plus two"));
            }
        }
    }
    out
}

fn theorem_verdicts(b: &BraidWord, table: &TriGradedTable) -> Vec<Verdict> {
    theorem_predictions(b)
        .into_iter()
        .filter(|p| table.t_degrees.contains(&p.t))
        .map(|p| {
            let got = table.dims(p.a, p.t);
            Verdict {
                claim: format!("{} (A={}, T={}): {:?}", p.source, p.a, p.t, p.dims),
                holds: got == p.dims && table.tail_at(p.a, p.t).is_none(),
            }
        })
        .collect()
}
