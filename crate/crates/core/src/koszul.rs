//! Koszul complexes over `R` and their identification with the support blocks
//! of the reduced complex.

use std::collections::BTreeMap;

use crate::complex::{FreeComplex, Generator, PolyMatrix};
use crate::error::{Error, Result};
use crate::grading_ring::{ExtMonomial, Poly, MAX_VARS};
use crate::homology::cohomology_dims;
use crate::scalar::Scalar;

/// `K(s_1, …, s_r)`: position `p` holds `Λ^{r-p}`, so `Λ^0 = R` sits at the top
/// position `r`. The generator `e_S` has Q-degree `Σ_{i∈S} deg s_i`.
#[derive(Clone, Debug)]
pub struct KoszulComplex<S> {
    pub sequence: Vec<Poly<S>>,
    /// Subsets indexing the generators of each position.
    pub subsets: Vec<Vec<ExtMonomial>>,
    pub complex: FreeComplex<S>,
}

fn subset_label(s: ExtMonomial) -> String {
    if s.is_empty() {
        "1".into()
    } else {
        s.indices().iter().map(|i| format!("e{}", i)).collect::<Vec<_>>().join("^")
    }
}

/// Koszul complex of a homogeneous sequence in `k[α_1, …, α_nvars]`.
pub fn build_koszul<S: Scalar>(seq: &[Poly<S>], nvars: usize) -> Result<KoszulComplex<S>> {
    let r = seq.len();
    if nvars > MAX_VARS {
        return Err(Error::Unsupported(format!("at most {} variables, got {}", MAX_VARS, nvars)));
    }
    if r > 31 {
        return Err(Error::Unsupported("Koszul complexes of more than 31 elements".into()));
    }
    let mut degs = Vec::with_capacity(r);
    for (i, s) in seq.iter().enumerate() {
        match s.homogeneous_degree() {
            Some(d) => degs.push(d),
            None if s.is_zero() => degs.push(0),
            None => {
                return Err(Error::InvalidInput(format!("sequence entry {} ({}) is not homogeneous", i + 1, s)))
            }
        }
    }
    let pool: Vec<usize> = (1..=r).collect();
    let subsets: Vec<Vec<ExtMonomial>> = (0..=r).map(|p| ExtMonomial::subsets(&pool, r - p)).collect();
    let q_of = |s: &ExtMonomial| -> i32 { s.indices().iter().map(|&i| degs[i - 1]).sum() };
    let gens = subsets
        .iter()
        .map(|ss| {
            ss.iter()
                .map(|s| Generator { label: subset_label(*s), q: q_of(s), support: *s })
                .collect()
        })
        .collect();
    let mut diffs = Vec::with_capacity(r);
    for p in 0..r {
        let index: BTreeMap<ExtMonomial, usize> = subsets[p + 1].iter().enumerate().map(|(k, s)| (*s, k)).collect();
        let mut d = PolyMatrix::zeros(subsets[p + 1].len(), subsets[p].len());
        for (c, s) in subsets[p].iter().enumerate() {
            for (j, &i) in s.indices().iter().enumerate() {
                let entry = if j % 2 == 0 { seq[i - 1].clone() } else { seq[i - 1].neg() };
                d.set(index[&s.without(i)], c, entry);
            }
        }
        diffs.push(d);
    }
    let complex = FreeComplex { nvars, start: 0, gens, diffs, lower_closed: true, upper_closed: true };
    complex.check_d_squared()?;
    Ok(KoszulComplex { sequence: seq.to_vec(), subsets, complex })
}

/// Cohomology of `K` at position `position` (so `Λ^{r-position}`), Q up to `qmax`.
pub fn koszul_cohomology<S: Scalar>(k: &KoszulComplex<S>, position: usize, qmax: i32) -> Result<BTreeMap<i32, usize>> {
    cohomology_dims(&k.complex, position as i64, qmax)
}

/// `K(s_1..s_r)` is the cone of `s_r` on `K(s_1..s_{r-1})`: generators without
/// `e_r` form a subcomplex equal to the smaller Koszul complex, those with `e_r`
/// form a second copy of it, and the connecting map is `±s_r`.
pub fn cone_structure_holds<S: Scalar>(seq: &[Poly<S>], nvars: usize) -> Result<bool> {
    let r = seq.len();
    if r == 0 {
        return Ok(true);
    }
    let big = build_koszul(seq, nvars)?;
    let small = build_koszul(&seq[..r - 1], nvars)?;
    let position_in_small = |p: usize, with_r: bool| -> Option<usize> {
        // Λ^j at position r - j; without e_r it is Λ^j of the smaller complex at (r-1) - j
        let j = r - p;
        let j_small = if with_r { j.checked_sub(1)? } else { j };
        (j_small < r).then(|| r - 1 - j_small)
    };
    let locate = |p: usize, s: ExtMonomial| -> Option<(usize, usize)> {
        let with_r = s.contains(r);
        let sp = position_in_small(p, with_r)?;
        let key = if with_r { s.without(r) } else { s };
        small.subsets[sp].iter().position(|x| *x == key).map(|k| (sp, k))
    };
    for p in 0..r {
        let d = &big.complex.diffs[p];
        for (c, sc) in big.subsets[p].iter().enumerate() {
            for (row, sr) in big.subsets[p + 1].iter().enumerate() {
                let v = d.get(row, c);
                let expected = match (sc.contains(r), sr.contains(r)) {
                    (false, true) => Poly::zero(),
                    (true, false) => {
                        if *sr == sc.without(r) {
                            // e_r is the last factor of e_S, so contraction carries (-1)^{|S|-1}
                            if sc.len() % 2 == 1 { seq[r - 1].clone() } else { seq[r - 1].neg() }
                        } else {
                            Poly::zero()
                        }
                    }
                    _ => {
                        let (Some((sp, kc)), Some((_, kr))) = (locate(p, *sc), locate(p + 1, *sr)) else {
                            return Ok(false);
                        };
                        small.complex.diffs[sp].get(kr, kc)
                    }
                };
                if v != expected {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The odd-support-`J` Koszul sequence: `s_i = 1` for `i ∈ J`, `α_i` otherwise.
pub fn block_sequence<S: Scalar>(j: ExtMonomial, nvars: usize) -> Vec<Poly<S>> {
    (1..=nvars).map(|i| if j.contains(i) { Poly::one() } else { Poly::alpha(i) }).collect()
}

/// How a block generator outside the matched basis relates to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dropped {
    /// Its image under the differential vanishes.
    Zero,
    /// Its image equals `sign` times the image of the matched generator `of`.
    Copy { of: usize, sign: i8 },
}

/// A signed permutation identifying a three-position block with the last three
/// positions of a Koszul complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulMatch {
    pub j: ExtMonomial,
    /// Per block position: `(koszul generator, block generator, sign)`.
    pub assignment: Vec<Vec<(usize, usize, i8)>>,
    /// Block generators at the first position not used by the assignment.
    pub dropped: Vec<(usize, Dropped)>,
    /// Block Q-degree minus Koszul Q-degree, constant over matched generators.
    pub q_offset: i32,
}

fn word_of(label: &str) -> &str {
    label.split(':').next().unwrap_or("")
}

fn letters(word: &str) -> Option<Vec<usize>> {
    if word == "e" {
        return Some(Vec::new());
    }
    word.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
}

/// Identify the three-position block of support `j` (from
/// [`crate::complex::block_decompose`]) with the tail of
/// `K({α_i}_{i∉J}, {1}_{i∈J})`. Returns `None` when no signed permutation works.
pub fn match_to_koszul<S: Scalar>(block: &FreeComplex<S>, j: ExtMonomial) -> Option<KoszulMatch> {
    if block.len() != 3 {
        return None;
    }
    let r = block.nvars;
    let k = build_koszul(&block_sequence::<S>(j, r), r).ok()?;
    // Koszul positions r-2, r-1, r hold Λ^2, Λ^1, Λ^0
    let kpos = |p: usize| r + p - 2;
    if r < 2 {
        return None;
    }
    let mut assignment: Vec<Vec<(usize, usize)>> = vec![Vec::new(); 3];
    let mut dropped = Vec::new();
    for p in 0..3 {
        let subsets = &k.subsets[kpos(p)];
        let mut used = vec![None; subsets.len()];
        for (g, gen) in block.gens[p].iter().enumerate() {
            let ls = letters(word_of(&gen.label))?;
            if ls.len() != 2 - p {
                return None;
            }
            if p == 0 && ls[0] == ls[1] {
                dropped.push((g, ls));
                continue;
            }
            let s = ExtMonomial::from_indices(&ls);
            let idx = subsets.iter().position(|x| *x == s)?;
            let reversed_present = p == 0
                && ls[0] > ls[1]
                && block.gens[p].iter().any(|h| letters(word_of(&h.label)).is_some_and(|m| m == [ls[1], ls[0]]));
            if reversed_present {
                dropped.push((g, ls));
            } else if used[idx].replace(g).is_some() {
                return None;
            }
        }
        for (idx, u) in used.iter().enumerate() {
            assignment[p].push((idx, (*u)?));
        }
    }
    // signs by propagation from the top generator
    let mut sign: Vec<Vec<Option<i8>>> = (0..3).map(|p| vec![None; assignment[p].len()]).collect();
    sign[2][0] = Some(1);
    for p in (0..2).rev() {
        let kd = &k.complex.diffs[kpos(p)];
        for (kc, bc) in &assignment[p] {
            let mut s: Option<i8> = None;
            for (kr, br) in &assignment[p + 1] {
                let want = kd.get(*kr, *kc);
                let got = block.diffs[p].get(*br, *bc);
                let rs = sign[p + 1][*kr].expect("row signs fixed first");
                if want.is_zero() {
                    if !got.is_zero() {
                        return None;
                    }
                    continue;
                }
                let here = if got == want.scale(&S::from_i64(rs as i64)) {
                    1
                } else if got == want.scale(&S::from_i64(-(rs as i64))) {
                    -1
                } else {
                    return None;
                };
                match s {
                    None => s = Some(here),
                    Some(prev) if prev != here => return None,
                    _ => {}
                }
            }
            sign[p][*kc] = Some(s.unwrap_or(1));
        }
    }
    // matched generators must agree up to a constant Q offset
    let mut offset = None;
    for p in 0..3 {
        for (kc, bc) in &assignment[p] {
            let off = block.gens[p][*bc].q - k.complex.gens[kpos(p)][*kc].q;
            if *offset.get_or_insert(off) != off {
                return None;
            }
        }
    }
    // dropped generators: zero image or a signed copy of a matched column
    let mut dropped_out = Vec::new();
    for (g, ls) in dropped {
        let col = block.diffs[0].column(g);
        if col.is_empty() {
            dropped_out.push((g, Dropped::Zero));
            continue;
        }
        let s = ExtMonomial::from_indices(&ls);
        let kidx = k.subsets[kpos(0)].iter().position(|x| *x == s)?;
        let (_, of) = assignment[0].iter().find(|(kc, _)| *kc == kidx)?;
        let other = block.diffs[0].column(*of);
        let neg: BTreeMap<usize, Poly<S>> = other.iter().map(|(r, v)| (*r, v.neg())).collect();
        let copy = if col == other {
            1
        } else if *col == neg {
            -1
        } else {
            return None;
        };
        dropped_out.push((g, Dropped::Copy { of: *of, sign: copy }));
    }
    let assignment = assignment
        .iter()
        .enumerate()
        .map(|(p, a)| a.iter().map(|(kc, bc)| (*kc, *bc, sign[p][*kc].unwrap_or(1))).collect())
        .collect();
    Some(KoszulMatch { j, assignment, dropped: dropped_out, q_offset: offset.unwrap_or(0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::complex::{block_decompose, build_truncated};
    use crate::Rational;

    fn alphas(r: usize) -> Vec<Poly<Rational>> {
        (1..=r).map(Poly::alpha).collect()
    }

    #[test]
    fn ranks() {
        let k = build_koszul(&alphas(1), 1).unwrap();
        let sizes: Vec<usize> = k.complex.gens.iter().map(|g| g.len()).collect();
        assert_eq!(sizes, vec![1, 1]);
        let k = build_koszul(&alphas(2), 2).unwrap();
        let sizes: Vec<usize> = k.complex.gens.iter().map(|g| g.len()).collect();
        assert_eq!(sizes, vec![1, 2, 1]);
    }

    #[test]
    fn regular_sequence_cohomology() {
        for r in 1..=4 {
            let k = build_koszul(&alphas(r), r).unwrap();
            assert_eq!(koszul_cohomology(&k, r, 12).unwrap(), BTreeMap::from([(0, 1)]));
            for p in 0..r {
                assert!(koszul_cohomology(&k, p, 12).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn unit_sequences_are_exact() {
        let seq = vec![Poly::one(), Poly::one(), Poly::alpha(3)];
        let k = build_koszul::<Rational>(&seq, 3).unwrap();
        for p in 0..=3 {
            assert!(koszul_cohomology(&k, p, 12).unwrap().is_empty());
        }
    }

    #[test]
    fn non_homogeneous_rejected() {
        let s = Poly::<Rational>::alpha(1).add(&Poly::one());
        assert!(build_koszul(&[s], 1).is_err());
    }

    #[test]
    fn cone_recursion() {
        assert!(cone_structure_holds(&alphas(3), 3).unwrap());
        assert!(cone_structure_holds(&[Poly::<Rational>::one(), Poly::alpha(2)], 2).unwrap());
    }

    #[test]
    fn self_duality() {
        for seq in [alphas(3), vec![Poly::alpha(1), Poly::alpha(1)], vec![Poly::alpha(1), Poly::one()]] {
            let r = seq.len();
            let k = build_koszul::<Rational>(&seq, 3).unwrap();
            let total: i32 = k.complex.gens[0][0].q;
            let d = k.complex.dual(-total);
            for p in 0..=r as i64 {
                assert_eq!(cohomology_dims(&d, p - r as i64, 14).unwrap(), cohomology_dims(&k.complex, p, 14).unwrap());
            }
        }
    }

    #[test]
    fn blocks_of_stst_match() {
        let b = BraidWord::positive(3, &[1, 2, 1, 2]).unwrap();
        let c = build_truncated::<Rational>(&b).unwrap();
        for a in 0..3 {
            for (j, block) in block_decompose(&c, a).unwrap() {
                let m = match_to_koszul(&block, j).expect("block is Koszul");
                assert_eq!(m.assignment[0].len(), 1);
            }
        }
    }

    #[test]
    fn corrupted_block_fails() {
        let b = BraidWord::positive(4, &[1, 2, 1, 2, 3, 2, 3, 2]).unwrap();
        let c = build_truncated::<Rational>(&b).unwrap();
        let (j, mut block) = block_decompose(&c, 0).unwrap().remove(0);
        assert!(match_to_koszul(&block, j).is_some());
        let (r, col, v) = block.diffs[1].entries().next().map(|(r, c, v)| (r, c, v.clone())).unwrap();
        block.diffs[1].set(r, col, v.neg());
        assert!(match_to_koszul(&block, j).is_none());
    }
}
