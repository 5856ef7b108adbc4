//! Hochschild cohomology of the differential components of the reduced complex.
//!
//! A component `C_x → C_z` deletes one letter from a run of `x`. On `HH` it acts by
//! a barbell (enddot), by zero or by `α_s` on a shrinking run, by a trivalent
//! enddot when the two neighbours of the deleted letter agree, or through the
//! cup table for the cup classes of `aba`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::braid::SubwordTerm;
use crate::error::{Error, Result};
use crate::grading_ring::{ExtMonomial, Poly};
use crate::hh_basis::{hh_basis, term_q_offset, CupFlavor, Decoration, HHClass, Strand};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentKind {
    Enddot,
    RunOdd,
    RunEven,
    TrivalentEnddot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffComponent {
    pub kind: ComponentKind,
    /// Index of the affected run, i.e. the position in the contracted source word.
    pub position: usize,
    /// Letter of the affected run.
    pub letter: usize,
    /// `(-1)^{|w_1|}`, with `w_1` the uncontracted prefix before the run.
    pub sign: i32,
}

/// Every way of obtaining `z` from `x` by deleting one letter, one per run.
pub fn components(x: &SubwordTerm, z: &SubwordTerm) -> Vec<DiffComponent> {
    let w = &x.letters;
    if z.letters.len() + 1 != w.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut start = 0;
    let mut run_index = 0;
    while start < w.len() {
        let letter = w[start];
        let mut end = start;
        while end < w.len() && w[end] == letter {
            end += 1;
        }
        let mut deleted = w.clone();
        deleted.remove(start);
        if deleted == z.letters {
            let k = end - start - 1;
            let kind = if k > 0 {
                if k % 2 == 1 {
                    ComponentKind::RunOdd
                } else {
                    ComponentKind::RunEven
                }
            } else {
                let c = &x.contracted;
                if run_index > 0 && run_index + 1 < c.len() && c[run_index - 1] == c[run_index + 1] {
                    ComponentKind::TrivalentEnddot
                } else {
                    ComponentKind::Enddot
                }
            };
            out.push(DiffComponent {
                kind,
                position: run_index,
                letter,
                sign: if start % 2 == 0 { 1 } else { -1 },
            });
        }
        start = end;
        run_index += 1;
    }
    out
}

/// The component `x → z`, if `z` is a one-letter deletion of `x`.
pub fn classify_component(x: &SubwordTerm, z: &SubwordTerm) -> Option<DiffComponent> {
    components(x, z).into_iter().next()
}

/// Linear combination of classes with polynomial coefficients.
pub type LinComb<S> = Vec<(HHClass, Poly<S>)>;

fn push_term<S: Scalar>(out: &mut LinComb<S>, class: HHClass, coeff: Poly<S>) {
    if coeff.is_zero() {
        return;
    }
    if let Some(slot) = out.iter_mut().find(|(c, _)| *c == class) {
        slot.1 = slot.1.add(&coeff);
    } else {
        out.push((class, coeff));
    }
    out.retain(|(_, c)| !c.is_zero());
}

fn strands_of(c: &HHClass) -> Result<&Vec<Strand>> {
    match &c.deco {
        Decoration::Strands(s) => Ok(s),
        Decoration::Cup(_) => Err(Error::Internal(format!("class {} is a cup class", c))),
    }
}

/// Attach `α_u^∨` to the exterior part of `class`, rewriting through the
/// one-color relation when `u` still carries a dot.
fn absorb_dual_root<S: Scalar>(mut class: HHClass, u: usize, coeff: Poly<S>) -> Option<(HHClass, Poly<S>)> {
    if class.ext.contains(u) {
        return None;
    }
    let Decoration::Strands(strands) = &mut class.deco else {
        return None;
    };
    match class.word.iter().position(|&l| l == u) {
        None => {
            class.ext = class.ext.with(u);
            class.a_degree += 1;
            class.q_degree -= 2;
            Some((class, coeff))
        }
        Some(p) => match strands[p] {
            Strand::Hoch => None,
            Strand::Dot => {
                strands[p] = Strand::Hoch;
                class.a_degree += 1;
                class.q_degree -= 4;
                Some((class, coeff.mul(&Poly::alpha(u))))
            }
        },
    }
}

/// Barbell or Hochschild barbell on the strand at `position` (no sign).
pub fn apply_enddot<S: Scalar>(c: &HHClass, position: usize) -> Result<LinComb<S>> {
    let strands = strands_of(c)?;
    if position >= c.word.len() {
        return Err(Error::Internal(format!("position {} out of range for {}", position, c)));
    }
    let u = c.word[position];
    let mut word = c.word.clone();
    word.remove(position);
    let mut rest = strands.clone();
    let removed = rest.remove(position);
    let base = HHClass::from_strands(word, rest, c.ext);
    let mut out = Vec::new();
    match removed {
        Strand::Dot => push_term(&mut out, base, Poly::alpha(u)),
        Strand::Hoch => {
            if let Some((cl, co)) = absorb_dual_root(base, u, Poly::one()) {
                push_term(&mut out, cl, co);
            }
        }
    }
    Ok(out)
}

/// A shrinking run: zero for odd remaining length, `α_s` for even (no sign).
pub fn apply_run_map<S: Scalar>(c: &HHClass, letter: usize, odd: bool) -> LinComb<S> {
    if odd {
        Vec::new()
    } else {
        vec![(c.clone(), Poly::alpha(letter))]
    }
}

/// `∂_a(α_b)`: -1 for adjacent colors, 0 for distant ones.
pub fn cartan_coupling<S: Scalar>(a: usize, b: usize) -> Result<S> {
    let d = Poly::<S>::alpha(b).demazure(a)?;
    Ok(d.as_unit().cloned().unwrap_or_else(S::zero))
}

/// Delete the middle letter of `aba` for a dot-only class (no sign).
fn apply_trivalent_strands<S: Scalar>(c: &HHClass) -> Result<LinComb<S>> {
    let strands = strands_of(c)?;
    let (a, b) = (c.word[0], c.word[1]);
    let merged = match (strands[0], strands[2]) {
        (Strand::Dot, Strand::Dot) => Strand::Dot,
        (Strand::Hoch, Strand::Dot) | (Strand::Dot, Strand::Hoch) => Strand::Hoch,
        (Strand::Hoch, Strand::Hoch) => return Ok(Vec::new()),
    };
    let base = HHClass::from_strands(vec![a], vec![merged], c.ext);
    let mut out = Vec::new();
    match strands[1] {
        Strand::Dot => push_term(&mut out, base, Poly::alpha(b)),
        Strand::Hoch => {
            if let Some((cl, co)) = absorb_dual_root(base, b, Poly::one()) {
                push_term(&mut out, cl, co);
            }
        }
    }
    Ok(out)
}

/// Images of the cup classes of `aba` (no sign). `position` is the deleted letter.
pub fn apply_cup_table<S: Scalar>(c: &HHClass, position: usize) -> Result<LinComb<S>> {
    let Decoration::Cup(flavor) = c.deco else {
        return Err(Error::Internal(format!("class {} is not a cup class", c)));
    };
    use Strand::{Dot as D, Hoch as H};
    let (a, b) = (c.word[0], c.word[1]);
    let ext = c.ext;
    let mut out = Vec::new();
    match position {
        0 | 2 => {
            // (strand on a, strand on b)
            let (sa, sb) = match flavor {
                CupFlavor::Plain => (D, D),
                CupFlavor::HochOut => (H, D),
                CupFlavor::HochIn => (D, H),
                CupFlavor::HochDouble => (H, H),
            };
            let class = if position == 0 {
                HHClass::from_strands(vec![b, a], vec![sb, sa], ext)
            } else {
                HHClass::from_strands(vec![a, b], vec![sa, sb], ext)
            };
            push_term(&mut out, class, Poly::one());
        }
        1 => {
            let coupling: S = cartan_coupling(a, b)?;
            let target = match flavor {
                CupFlavor::Plain => Some(D),
                CupFlavor::HochOut | CupFlavor::HochIn => Some(H),
                CupFlavor::HochDouble => None,
            };
            if let Some(s) = target {
                push_term(&mut out, HHClass::from_strands(vec![a], vec![s], ext), Poly::constant(coupling));
            }
        }
        _ => return Err(Error::Internal(format!("bad cup position {}", position))),
    }
    Ok(out)
}

/// Image of one class under one signed component.
pub fn apply_component<S: Scalar>(c: &HHClass, comp: &DiffComponent) -> Result<LinComb<S>> {
    let raw = match comp.kind {
        ComponentKind::RunOdd => apply_run_map(c, comp.letter, true),
        ComponentKind::RunEven => apply_run_map(c, comp.letter, false),
        ComponentKind::Enddot => match c.deco {
            Decoration::Cup(_) => apply_cup_table(c, comp.position)?,
            Decoration::Strands(_) => apply_enddot(c, comp.position)?,
        },
        ComponentKind::TrivalentEnddot => match c.deco {
            Decoration::Cup(_) => apply_cup_table(c, comp.position)?,
            Decoration::Strands(_) => apply_trivalent_strands(c)?,
        },
    };
    let sign = S::from_i64(comp.sign as i64);
    Ok(raw.into_iter().map(|(cl, co)| (cl, co.scale(&sign))).collect())
}

/// Matrix of `HH^k` of the (sum of the) components `x → z`, over the bases of
/// [`hh_basis`]. Rows are target classes, columns source classes.
#[derive(Clone, Debug, PartialEq)]
pub struct HHMatrix<S> {
    pub rows: Vec<HHClass>,
    pub cols: Vec<HHClass>,
    /// Q-degrees of the row and column generators within the complex.
    pub row_q: Vec<i32>,
    pub col_q: Vec<i32>,
    /// `(row, col, entry)`, nonzero entries only, sorted by column then row.
    pub entries: Vec<(usize, usize, Poly<S>)>,
}

impl<S: Scalar> HHMatrix<S> {
    pub fn entry(&self, r: usize, c: usize) -> Poly<S> {
        self.entries
            .iter()
            .find(|(a, b, _)| *a == r && *b == c)
            .map(|(_, _, p)| p.clone())
            .unwrap_or_else(Poly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn hh_component_matrix<S: Scalar>(x: &SubwordTerm, z: &SubwordTerm, k: usize, n: usize) -> Result<HHMatrix<S>> {
    let cols = hh_basis(&x.contracted, k, n)?;
    let rows = hh_basis(&z.contracted, k, n)?;
    let col_q: Vec<i32> = cols.iter().map(|c| term_q_offset(c, x)).collect();
    let row_q: Vec<i32> = rows.iter().map(|c| term_q_offset(c, z)).collect();
    let index: HashMap<&HHClass, usize> = rows.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let comps = components(x, z);
    let mut entries = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        let mut image: LinComb<S> = Vec::new();
        for comp in &comps {
            for (cl, co) in apply_component(col, comp)? {
                push_term(&mut image, cl, co);
            }
        }
        let mut column: Vec<(usize, usize, Poly<S>)> = Vec::new();
        for (cl, co) in image {
            let &i = index.get(&cl).ok_or_else(|| {
                Error::Internal(format!("image class {} of {} is not in the basis of {:?}", cl, col, z.contracted))
            })?;
            let want = col_q[j] - row_q[i];
            if co.homogeneous_degree() != Some(want) {
                return Err(Error::Internal(format!(
                    "entry {} from {}:{} to {}:{} should have degree {}",
                    co,
                    x.name(),
                    col,
                    z.name(),
                    cl,
                    want
                )));
            }
            column.push((i, j, co));
        }
        column.sort_by_key(|e| e.0);
        entries.extend(column);
    }
    Ok(HHMatrix { rows, cols, row_q, col_q, entries })
}

/// Exterior support of the classes, exposed for block decompositions.
pub fn odd_support(c: &HHClass) -> ExtMonomial {
    c.odd_support()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = Poly<Rational>;

    fn term(w: &[usize], len: usize) -> SubwordTerm {
        SubwordTerm::new(w.to_vec(), len)
    }

    fn p(s: &str) -> P {
        P::parse(s).unwrap()
    }

    #[test]
    fn classification_examples() {
        let c = classify_component(&term(&[1, 1, 2], 6), &term(&[1, 2], 6)).unwrap();
        assert_eq!((c.kind, c.position, c.sign), (ComponentKind::RunOdd, 0, 1));
        let c = classify_component(&term(&[1, 1, 2], 6), &term(&[1, 1], 6)).unwrap();
        assert_eq!((c.kind, c.position, c.sign), (ComponentKind::Enddot, 1, 1));
        let c = classify_component(&term(&[1, 2, 1], 6), &term(&[1, 1], 6)).unwrap();
        assert_eq!((c.kind, c.sign), (ComponentKind::TrivalentEnddot, -1));
        assert!(classify_component(&term(&[1, 2], 6), &term(&[2, 1], 6)).is_none());
        let c = classify_component(&term(&[1, 1, 1], 6), &term(&[1, 1], 6)).unwrap();
        assert_eq!(c.kind, ComponentKind::RunEven);
    }

    #[test]
    fn enddot_examples() {
        let dd = HHClass::from_strands(vec![1, 2], vec![Strand::Dot, Strand::Dot], ExtMonomial::empty());
        let img: LinComb<Rational> = apply_enddot(&dd, 1).unwrap();
        assert_eq!(img.len(), 1);
        assert_eq!(img[0].0.label(), "D1");
        assert_eq!(img[0].1, p("a2"));

        let h = HHClass::from_strands(vec![1], vec![Strand::Hoch], ExtMonomial::empty());
        let img: LinComb<Rational> = apply_enddot(&h, 0).unwrap();
        assert_eq!(img[0].0.label(), "1|1");
        assert_eq!(img[0].1, p("1"));

        // Hochschild barbell next to a dot of the same color
        let hd = HHClass::from_strands(vec![1, 2, 1], vec![Strand::Hoch, Strand::Dot, Strand::Dot], ExtMonomial::empty());
        let comp = classify_component(&term(&[1, 2, 1], 5), &term(&[2, 1], 5)).unwrap();
        let img: LinComb<Rational> = apply_component(&hd, &comp).unwrap();
        assert_eq!(img[0].0.label(), "D2H1");
        assert_eq!(img[0].1, p("a1"));
    }

    #[test]
    fn run_map_examples() {
        let d = HHClass::from_strands(vec![1], vec![Strand::Dot], ExtMonomial::empty());
        assert!(apply_run_map::<Rational>(&d, 1, true).is_empty());
        assert_eq!(apply_run_map::<Rational>(&d, 1, false)[0].1, p("a1"));
        let h = HHClass::from_strands(vec![1], vec![Strand::Hoch], ExtMonomial::empty());
        assert!(apply_run_map::<Rational>(&h, 1, true).is_empty());
    }

    #[test]
    fn cup_table_examples() {
        // d_{tst}(cup) with s = 1, t = 2: Dot_s·Dot_t + Dot_t·Dot_s + Dot_t
        let x = term(&[2, 1, 2], 6);
        let cup = HHClass::cup(vec![2, 1, 2], CupFlavor::Plain, ExtMonomial::empty());
        let mut got = Vec::new();
        for z in [&[1, 2][..], &[2, 1], &[2, 2]] {
            let zt = term(z, 6);
            for comp in components(&x, &zt) {
                for (cl, co) in apply_component::<Rational>(&cup, &comp).unwrap() {
                    got.push((zt.name(), cl.label(), co.to_string()));
                }
            }
        }
        got.sort();
        assert_eq!(
            got,
            vec![
                ("12".into(), "D1D2".into(), "1".into()),
                ("21".into(), "D2D1".into(), "1".into()),
                ("22".into(), "D2".into(), "1".into())
            ]
        );
        // distant colors lose the tail
        let cup = HHClass::cup(vec![1, 3, 1], CupFlavor::Plain, ExtMonomial::empty());
        let comp = classify_component(&term(&[1, 3, 1], 6), &term(&[1, 1], 6)).unwrap();
        assert!(apply_component::<Rational>(&cup, &comp).unwrap().is_empty());
        let dbl = HHClass::cup(vec![1, 2, 1], CupFlavor::HochDouble, ExtMonomial::empty());
        let img: LinComb<Rational> = apply_cup_table(&dbl, 0).unwrap();
        assert_eq!(img[0].0.label(), "H2H1");
    }

    #[test]
    fn component_matrix_examples() {
        let m: HHMatrix<Rational> = hh_component_matrix(&term(&[1, 2, 1], 6), &term(&[1, 1], 6), 0, 3).unwrap();
        assert_eq!(m.cols.len(), 2);
        assert_eq!(m.entry(0, 0), p("-a2"));
        assert_eq!(m.entry(0, 1), p("1"));
        let m: HHMatrix<Rational> = hh_component_matrix(&term(&[1, 1], 4), &term(&[1], 4), 1, 3).unwrap();
        assert!(m.is_zero());
        let m: HHMatrix<Rational> = hh_component_matrix(&term(&[1], 1), &term(&[], 1), 0, 2).unwrap();
        assert_eq!(m.entry(0, 0), p("a1"));
    }
}
