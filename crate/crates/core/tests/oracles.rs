//! Independent oracles: a dense slice-by-slice rank computation mod p, Euler
//! characteristics, the HOMFLY skein relation and two-strand consistency.

use std::collections::BTreeMap;

use hhh_core::braid::BraidWord;
use hhh_core::complex::{build_truncated, build_two_strand_full, FreeComplex};
use hhh_core::homology::{cohomology_dims, extreme_hhh, hhh, two_strand_hhh};
use hhh_core::invariant::{homfly_specialize, superpolynomial_of};
use hhh_core::{Rational, F10007};

const P: u64 = 10007;

/// Exponent vectors in `nvars` variables with total degree `total`.
fn exponent_vectors(nvars: usize, total: usize) -> Vec<Vec<usize>> {
    if nvars == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in exponent_vectors(nvars - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn dense_rank(mut m: Vec<Vec<u64>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][c], P - 2);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % P;
                for k in c..cols {
                    m[r][k] = (m[r][k] + P * P - f * m[rank][k]) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of position `p` in Q-degree `q`: pairs (generator, exponent vector).
fn slice(c: &FreeComplex<F10007>, p: usize, q: i32) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for (g, gen) in c.gens[p].iter().enumerate() {
        let gap = q - gen.q;
        if gap >= 0 && gap % 2 == 0 {
            for e in exponent_vectors(c.nvars, (gap / 2) as usize) {
                out.push((g, e));
            }
        }
    }
    out
}

/// Matrix of `d_p` from the Q-slice of position `p` to that of `p + 1`.
fn dense_differential(c: &FreeComplex<F10007>, p: usize, q: i32) -> Vec<Vec<u64>> {
    let src = slice(c, p, q);
    let dst = slice(c, p + 1, q);
    let index: BTreeMap<&(usize, Vec<usize>), usize> = dst.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut m = vec![vec![0u64; src.len()]; dst.len()];
    for (j, (g, e)) in src.iter().enumerate() {
        for (r, f) in c.diffs[p].column(*g) {
            for (mono, coeff) in f.terms() {
                let prod: Vec<usize> = (0..c.nvars).map(|v| e[v] + mono.exp(v) as usize).collect();
                let i = index[&(*r, prod)];
                m[i][j] = (m[i][j] + coeff.value() as u64) % P;
            }
        }
    }
    m
}

fn dense_cohomology(c: &FreeComplex<F10007>, p: usize, q: i32) -> usize {
    let dim = slice(c, p, q).len();
    let out = if p + 1 < c.len() { dense_rank(dense_differential(c, p, q)) } else { 0 };
    let inc = if p > 0 { dense_rank(dense_differential(c, p - 1, q)) } else { 0 };
    dim - out - inc
}

fn words() -> Vec<BraidWord> {
    [(3, vec![1, 2, 1, 2]), (3, vec![1, 2, 1, 2, 1]), (3, vec![1, 1, 2, 1, 2, 2]), (4, vec![1, 2, 3, 1, 2, 3]), (4, vec![2, 1, 2, 1, 3, 2, 3, 2])]
        .into_iter()
        .map(|(n, w)| BraidWord::positive(n, &w).unwrap())
        .collect()
}

#[test]
fn sparse_cohomology_matches_dense_oracle() {
    for b in words() {
        let c = build_truncated::<F10007>(&b).unwrap();
        let qmax = 2 * b.length() as i32 + 4;
        for fc in &c.per_a {
            let first = if fc.lower_closed { 0 } else { 1 };
            for p in first..fc.len() {
                let t = fc.start + p as i64;
                let got = cohomology_dims(fc, t, qmax).unwrap();
                let qmin = fc.gens.iter().flatten().map(|g| g.q).min().unwrap_or(0);
                for q in qmin..=qmax {
                    let want = dense_cohomology(fc, p, q);
                    assert_eq!(got.get(&q).copied().unwrap_or(0), want, "{:?} T={} Q={}", b.tokens(), t, q);
                }
            }
        }
    }
}

#[test]
fn minimized_tables_match_dense_oracle() {
    for b in words() {
        let qmax = 2 * b.length() as i32 + 4;
        let table = extreme_hhh::<F10007>(&b, Some(qmax)).unwrap();
        let c = build_truncated::<F10007>(&b).unwrap();
        for (a, fc) in c.per_a.iter().enumerate() {
            for &t in &table.t_degrees {
                let p = fc.position_of(t).unwrap();
                let want: BTreeMap<i32, usize> = (-40..=qmax)
                    .map(|q| (q, dense_cohomology(fc, p, q)))
                    .filter(|(_, d)| *d > 0)
                    .collect();
                assert_eq!(table.dims(a, t), want, "{:?} A={} T={}", b.tokens(), a, t);
            }
        }
    }
}

/// On complete complexes the alternating sum of cohomology equals that of the chains.
#[test]
fn euler_characteristic_of_full_two_strand_complexes() {
    for m in 1..=7usize {
        for sign in [1i8, -1] {
            let qmax = 2 * m as i32 + 6;
            let c = build_two_strand_full::<F10007>(m, sign).unwrap();
            for fc in &c.per_a {
                let mut homology: BTreeMap<i32, i64> = BTreeMap::new();
                for t in fc.t_degrees() {
                    let s = if t.rem_euclid(2) == 0 { 1 } else { -1 };
                    for (q, d) in cohomology_dims(fc, t, qmax).unwrap() {
                        *homology.entry(q).or_default() += s * d as i64;
                    }
                }
                let qmin = fc.gens.iter().flatten().map(|g| g.q).min().unwrap();
                for q in qmin..=qmax {
                    let chains: i64 = (0..fc.len())
                        .map(|p| {
                            let s = if (fc.start + p as i64).rem_euclid(2) == 0 { 1 } else { -1 };
                            s * slice(fc, p, q).len() as i64
                        })
                        .sum();
                    assert_eq!(homology.get(&q).copied().unwrap_or(0), chains, "σ1^{} Q={}", sign as i32 * m as i32, q);
                }
            }
        }
    }
}

fn homfly_at(m: i64, a: &Rational, q: &Rational) -> Rational {
    // m = 0 is the empty two-strand word, the two-component unlink
    let sign = if m > 0 { 1 } else { -1 };
    let b = BraidWord::from_indices(2, &vec![1; m.unsigned_abs() as usize], sign).unwrap();
    let p = superpolynomial_of::<Rational>(&b, None).unwrap();
    assert!(p.t_window.is_none(), "two-strand tables are complete");
    assert_eq!(p.components as i64, if m % 2 == 0 { 2 } else { 1 });
    let value = homfly_specialize(&p).evaluate(a, q).unwrap();
    // two-component closures carry an extra factor -a/q relative to the skein normalization
    if m % 2 == 0 {
        value / -(a / q)
    } else {
        value
    }
}

/// `P(σ^{m+2}) = a^2 P(σ^m) + a (q - q^-1) P(σ^{m+1})` at several rational points.
#[test]
fn homfly_satisfies_the_skein_relation() {
    let r = |x: i64, y: i64| Rational::new(x.into(), y.into());
    for (a, q) in [(r(3, 2), r(2, 5)), (r(-7, 3), r(5, 4)), (r(2, 1), r(3, 1))] {
        let z = &q - q.recip();
        for m in -9i64..=5 {
            let lhs = homfly_at(m + 2, &a, &q);
            let rhs = &a * &a * homfly_at(m, &a, &q) + &a * &z * homfly_at(m + 1, &a, &q);
            assert_eq!(lhs, rhs, "m = {}", m);
        }
    }
}

/// The truncated complex and the full two-strand complex agree in the top degrees.
#[test]
fn truncated_and_full_two_strand_agree() {
    for m in 3..=8usize {
        let b = BraidWord::positive(2, &vec![1; m]).unwrap();
        let qmax = 2 * m as i32 + 10;
        let full = two_strand_hhh::<F10007>(m, 1, Some(qmax)).unwrap();
        let top = extreme_hhh::<F10007>(&b, Some(qmax)).unwrap();
        for &t in &top.t_degrees {
            for a in 0..2 {
                assert_eq!(top.dims(a, t), full.dims(a, t), "σ1^{} A={} T={}", m, a, t);
                assert_eq!(top.tail_at(a, t).is_some(), full.tail_at(a, t).is_some());
            }
        }
        assert_eq!(hhh::<F10007>(&b, Some(qmax)).unwrap(), full);
    }
}
