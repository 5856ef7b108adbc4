//! Free `R`-bases of the Hochschild cohomology `HH^k` of the Bott–Samelson
//! bimodules of length at most three, with their intrinsic degrees.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::{SubwordTerm, Word};
use crate::error::{Error, Result};
use crate::grading_ring::ExtMonomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Strand {
    Dot,
    Hoch,
}

impl Strand {
    pub fn q_degree(self) -> i32 {
        match self {
            Strand::Dot => 1,
            Strand::Hoch => -3,
        }
    }
}

/// The four cup classes of a word `aba`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CupFlavor {
    /// plain cup, plain middle dot
    Plain,
    /// Hochschild cup on the outer color, plain middle dot
    HochOut,
    /// plain cup, Hochschild middle dot
    HochIn,
    /// Hochschild cup and Hochschild middle dot
    HochDouble,
}

impl CupFlavor {
    pub fn q_degree(self) -> i32 {
        match self {
            CupFlavor::Plain => 1,
            CupFlavor::HochOut | CupFlavor::HochIn => -3,
            CupFlavor::HochDouble => -7,
        }
    }

    pub fn a_degree(self) -> usize {
        match self {
            CupFlavor::Plain => 0,
            CupFlavor::HochOut | CupFlavor::HochIn => 1,
            CupFlavor::HochDouble => 2,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            CupFlavor::Plain => "cup",
            CupFlavor::HochOut => "cupout",
            CupFlavor::HochIn => "cupin",
            CupFlavor::HochDouble => "cupdouble",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Decoration {
    /// One symbol per letter of the word.
    Strands(Vec<Strand>),
    /// Only for words `aba`.
    Cup(CupFlavor),
}

/// A free generator of `HH^k(BS(word))` over `R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HHClass {
    pub word: Word,
    pub deco: Decoration,
    pub ext: ExtMonomial,
    pub a_degree: usize,
    pub q_degree: i32,
}

impl HHClass {
    pub fn from_strands(word: Word, strands: Vec<Strand>, ext: ExtMonomial) -> Self {
        assert_eq!(word.len(), strands.len());
        let hoch = strands.iter().filter(|s| **s == Strand::Hoch).count();
        let q: i32 = strands.iter().map(|s| s.q_degree()).sum();
        HHClass {
            word,
            deco: Decoration::Strands(strands),
            ext,
            a_degree: hoch + ext.len(),
            q_degree: q - 2 * ext.len() as i32,
        }
    }

    pub fn cup(word: Word, flavor: CupFlavor, ext: ExtMonomial) -> Self {
        HHClass {
            word,
            deco: Decoration::Cup(flavor),
            ext,
            a_degree: flavor.a_degree() + ext.len(),
            q_degree: flavor.q_degree() - 2 * ext.len() as i32,
        }
    }

    /// Indices carrying an odd (Hochschild) decoration, including the exterior part.
    pub fn odd_support(&self) -> ExtMonomial {
        let mut s = self.ext;
        match &self.deco {
            Decoration::Strands(strands) => {
                for (l, st) in self.word.iter().zip(strands) {
                    if *st == Strand::Hoch {
                        s = s.with(*l);
                    }
                }
            }
            Decoration::Cup(f) => {
                let (a, b) = (self.word[0], self.word[1]);
                match f {
                    CupFlavor::Plain => {}
                    CupFlavor::HochOut => s = s.with(a),
                    CupFlavor::HochIn => s = s.with(b),
                    CupFlavor::HochDouble => s = s.with(a).with(b),
                }
            }
        }
        s
    }

    /// Canonical label: decorated strands (`D1H2`), a cup tag, or `1` for the
    /// empty word, then `|i,j` for the exterior part.
    pub fn label(&self) -> String {
        let mut out = match &self.deco {
            Decoration::Strands(strands) if strands.is_empty() => "1".to_string(),
            Decoration::Strands(strands) => self
                .word
                .iter()
                .zip(strands)
                .map(|(l, s)| format!("{}{}", if *s == Strand::Dot { 'D' } else { 'H' }, l))
                .collect(),
            Decoration::Cup(f) => f.tag().to_string(),
        };
        if !self.ext.is_empty() {
            out.push('|');
            out.push_str(&self.ext.to_string());
        }
        out
    }
}

impl fmt::Display for HHClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Shapes of contracted words with known bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordShape {
    Empty,
    One,
    Two,
    Aba,
    ThreeDistinct,
}

pub fn word_shape(word: &[usize]) -> Result<WordShape> {
    if word.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Unsupported(format!("word {:?} is not contracted", word)));
    }
    Ok(match word.len() {
        0 => WordShape::Empty,
        1 => WordShape::One,
        2 => WordShape::Two,
        3 if word[0] == word[2] => WordShape::Aba,
        3 => WordShape::ThreeDistinct,
        _ => return Err(Error::Unsupported(format!("no basis for words of length {}", word.len()))),
    })
}

/// Core classes (no exterior factor), grouped by number of Hochschild decorations.
fn core_classes(word: &[usize], shape: WordShape, hoch: usize) -> Vec<HHClass> {
    use Strand::{Dot as D, Hoch as H};
    let w = word.to_vec();
    let none = ExtMonomial::empty();
    let strands = |pats: &[&[Strand]]| -> Vec<HHClass> {
        pats.iter().map(|p| HHClass::from_strands(w.clone(), p.to_vec(), none)).collect()
    };
    match (shape, hoch) {
        (WordShape::Empty, 0) => strands(&[&[]]),
        (WordShape::One, 0) => strands(&[&[D]]),
        (WordShape::One, 1) => strands(&[&[H]]),
        (WordShape::Two, 0) => strands(&[&[D, D]]),
        (WordShape::Two, 1) => strands(&[&[H, D], &[D, H]]),
        (WordShape::Two, 2) => strands(&[&[H, H]]),
        (WordShape::Aba, 0) => vec![
            HHClass::from_strands(w.clone(), vec![D, D, D], none),
            HHClass::cup(w.clone(), CupFlavor::Plain, none),
        ],
        (WordShape::Aba, 1) => vec![
            HHClass::from_strands(w.clone(), vec![H, D, D], none),
            HHClass::cup(w.clone(), CupFlavor::HochOut, none),
            HHClass::cup(w.clone(), CupFlavor::HochIn, none),
            HHClass::from_strands(w.clone(), vec![D, H, D], none),
        ],
        (WordShape::Aba, 2) => vec![
            HHClass::cup(w.clone(), CupFlavor::HochDouble, none),
            HHClass::from_strands(w.clone(), vec![H, H, D], none),
        ],
        (WordShape::ThreeDistinct, 0) => strands(&[&[D, D, D]]),
        (WordShape::ThreeDistinct, 1) => strands(&[&[H, D, D], &[D, H, D], &[D, D, H]]),
        (WordShape::ThreeDistinct, 2) => strands(&[&[H, H, D], &[H, D, H], &[D, H, H]]),
        (WordShape::ThreeDistinct, 3) => strands(&[&[H, H, H]]),
        _ => Vec::new(),
    }
}

/// Ordered free basis of `HH^k(BS(word))` on `n` strands: cores with more
/// Hochschild decorations first, then core order, then exterior monomials over
/// the indices absent from the word in lexicographic order.
pub fn hh_basis(word: &[usize], k: usize, n: usize) -> Result<Vec<HHClass>> {
    let shape = word_shape(word)?;
    if let Some(&bad) = word.iter().find(|&&l| l == 0 || l >= n) {
        return Err(Error::IndexOutOfRange { index: bad, n });
    }
    if n < 2 || k > n - 1 {
        return Ok(Vec::new());
    }
    let complement: Vec<usize> = (1..n).filter(|i| !word.contains(i)).collect();
    let max_hoch = match shape {
        WordShape::Empty => 0,
        WordShape::One => 1,
        WordShape::Two | WordShape::Aba => 2,
        WordShape::ThreeDistinct => 3,
    };
    let mut out = Vec::new();
    for j in (0..=k.min(max_hoch)).rev() {
        let exts = ExtMonomial::subsets(&complement, k - j);
        for core in core_classes(word, shape, j) {
            for &e in &exts {
                let mut c = core.clone();
                c.ext = e;
                c.a_degree += e.len();
                c.q_degree -= 2 * e.len() as i32;
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Q-degree of the generator of `class` inside the term `C_x` of the complex.
pub fn term_q_offset(class: &HHClass, term: &SubwordTerm) -> i32 {
    class.q_degree - term.shift as i32 - term.cohom_degree as i32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels_and_degrees(word: &[usize], k: usize, n: usize) -> Vec<(String, i32)> {
        hh_basis(word, k, n).unwrap().iter().map(|c| (c.label(), c.q_degree)).collect()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(
            labels_and_degrees(&[1], 1, 3),
            vec![("H1".to_string(), -3), ("D1|2".to_string(), -1)]
        );
        assert_eq!(
            labels_and_degrees(&[1, 2, 1], 2, 3),
            vec![("cupdouble".to_string(), -7), ("H1H2D1".to_string(), -5)]
        );
        assert_eq!(labels_and_degrees(&[], 0, 4), vec![("1".to_string(), 0)]);
    }

    #[test]
    fn ranks_and_degrees_of_core_tables() {
        let degs = |w: &[usize], k| -> Vec<i32> { hh_basis(w, k, 3).unwrap().iter().map(|c| c.q_degree).collect() };
        assert_eq!(degs(&[1, 2, 1], 0), vec![3, 1]);
        assert_eq!(degs(&[1, 2, 1], 1), vec![-1, -3, -3, -1]);
        assert_eq!(degs(&[2, 1, 2], 2), vec![-7, -5]);
        assert_eq!(degs(&[1, 2], 1), vec![-2, -2]);
        assert_eq!(degs(&[], 1), vec![-2, -2]);
        let d4 = |w: &[usize], k| -> Vec<i32> { hh_basis(w, k, 4).unwrap().iter().map(|c| c.q_degree).collect() };
        assert_eq!(d4(&[1, 2, 3], 0), vec![3]);
        assert_eq!(d4(&[1, 2, 3], 1), vec![-1; 3]);
        assert_eq!(d4(&[1, 2, 3], 2), vec![-5; 3]);
        assert_eq!(d4(&[1, 3, 2], 3), vec![-9]);
    }

    #[test]
    fn a_degree_and_quotient_invariants() {
        for n in 2..6 {
            for word in [vec![], vec![1], vec![1, 2], vec![2, 1, 2], vec![1, 3, 1], vec![1, 2, 3], vec![3, 1, 2]] {
                if word.iter().any(|&l| l >= n) {
                    continue;
                }
                for k in 0..n {
                    for c in hh_basis(&word, k, n).unwrap() {
                        assert_eq!(c.a_degree, k);
                        assert!(word.iter().all(|&l| !c.ext.contains(l)));
                        assert_eq!(c.odd_support().len(), k, "{} in {:?}", c, word);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_unsupported_words() {
        assert!(hh_basis(&[1, 1], 0, 3).is_err());
        assert!(hh_basis(&[1, 2, 1, 2], 0, 3).is_err());
        assert!(hh_basis(&[3], 0, 3).is_err());
    }

    #[test]
    fn top_term_offset() {
        let beta = crate::braid::BraidWord::positive(3, &[1, 2, 1, 2]).unwrap();
        let top = SubwordTerm::new(vec![], beta.length());
        let unit = &hh_basis(&[], 0, 3).unwrap()[0];
        assert_eq!(term_q_offset(unit, &top), -4);
        let t = SubwordTerm::new(vec![], 0);
        assert_eq!(term_q_offset(unit, &t), 0);
    }
}
