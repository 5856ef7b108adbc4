//! Sparse exact linear algebra over a field: incremental echelon forms with
//! deterministic smallest-row pivots.

use std::collections::HashMap;

use crate::scalar::Scalar;

/// Sparse vector, sorted by index, no explicit zeros.
pub type SparseVec<S> = Vec<(usize, S)>;

/// `a + c·b`.
pub fn axpy<S: Scalar>(a: &SparseVec<S>, c: &S, b: &SparseVec<S>) -> SparseVec<S> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c.clone() * b[j].1.clone()));
            j += 1;
        } else {
            let v = a[i].1.clone() + c.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row-echelon span of inserted vectors, keyed by leading (smallest) index.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    pivots: HashMap<usize, SparseVec<S>>,
}

impl<S: Scalar> Default for Echelon<S> {
    fn default() -> Self {
        Echelon { pivots: HashMap::new() }
    }
}

impl<S: Scalar> Echelon<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Remainder of `v` modulo the span.
    pub fn reduce(&self, mut v: SparseVec<S>) -> SparseVec<S> {
        let mut pos = 0;
        while pos < v.len() {
            let (lead, coeff) = (v[pos].0, v[pos].1.clone());
            match self.pivots.get(&lead) {
                // pivots have no entries before their lead, so the prefix is untouched
                Some(p) => v = axpy(&v, &(-coeff), p),
                None => pos += 1,
            }
        }
        v
    }

    /// Insert `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: SparseVec<S>) -> bool {
        let r = self.reduce(v);
        self.insert_reduced(r)
    }

    fn insert_reduced(&mut self, r: SparseVec<S>) -> bool {
        match r.first() {
            None => false,
            Some((lead, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                let lead = *lead;
                let normalized = r.into_iter().map(|(i, x)| (i, x * inv.clone())).collect();
                self.pivots.insert(lead, normalized);
                true
            }
        }
    }

    pub fn contains(&self, v: SparseVec<S>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of the matrix with the given columns, stopping once `cap` is reached.
pub fn rank_capped<S: Scalar>(cols: impl IntoIterator<Item = SparseVec<S>>, cap: usize) -> usize {
    let mut e = Echelon::new();
    if cap == 0 {
        return 0;
    }
    for c in cols {
        e.insert(c);
        if e.rank() >= cap {
            break;
        }
    }
    e.rank()
}

pub fn rank<S: Scalar>(cols: impl IntoIterator<Item = SparseVec<S>>) -> usize {
    rank_capped(cols, usize::MAX)
}

/// Basis of the kernel of the matrix with the given columns, as coefficient
/// vectors indexed by column.
pub fn kernel_basis<S: Scalar>(cols: &[SparseVec<S>]) -> Vec<SparseVec<S>> {
    // echelon over pairs (column image, combination) keyed by image lead
    let mut pivots: HashMap<usize, (SparseVec<S>, SparseVec<S>)> = HashMap::new();
    let mut kernel = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        let mut comb: SparseVec<S> = vec![(j, S::one())];
        loop {
            let Some(pos) = v.iter().position(|(i, _)| pivots.contains_key(i)) else {
                break;
            };
            let (lead, coeff) = (v[pos].0, v[pos].1.clone());
            let (pv, pc) = &pivots[&lead];
            v = axpy(&v, &(-coeff.clone()), pv);
            comb = axpy(&comb, &(-coeff), pc);
        }
        match v.first() {
            None => kernel.push(comb),
            Some((lead, c)) => {
                let inv = c.inv().expect("nonzero");
                let lead = *lead;
                let v = v.into_iter().map(|(i, x)| (i, x * inv.clone())).collect();
                let comb = comb.into_iter().map(|(i, x)| (i, x * inv.clone())).collect();
                pivots.insert(lead, (v, comb));
            }
        }
    }
    kernel
}

/// Apply a matrix given by columns to a coefficient vector.
pub fn apply<S: Scalar>(cols: &[SparseVec<S>], x: &SparseVec<S>) -> SparseVec<S> {
    let mut acc: SparseVec<S> = Vec::new();
    for (j, c) in x {
        acc = axpy(&acc, c, &cols[*j]);
    }
    acc
}
