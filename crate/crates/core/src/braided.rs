//! The free braided algebra on `x_1, …, x_n`: words, multidegrees, the
//! bicharacter `χ` and the braided bracket.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{GeneralizedDynkinDiagram, SupportSet};
use crate::scalars::{Cyclotomic, RootOfUnity};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operand is not homogeneous")]
    NonHomogeneousOperand,
    #[error("letter {letter} is outside 1..={rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("malformed word {0:?}")]
    MalformedWord(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
}

/// A word in the generators; letters are 0-based internally and printed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i as u8])
    }

    pub fn from_letters<I: IntoIterator<Item = usize>>(letters: I) -> Self {
        Word(letters.into_iter().map(|l| l as u8).collect())
    }

    /// Parses space-separated 1-based indices, e.g. `"1 2 1"`.
    pub fn parse(text: &str, rank: usize) -> Result<Self, AlgebraError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let l: usize = tok
                .parse()
                .map_err(|_| AlgebraError::MalformedWord(text.to_string()))?;
            if l == 0 || l > rank {
                return Err(AlgebraError::LetterOutOfRange { letter: l, rank });
            }
            letters.push((l - 1) as u8);
        }
        if letters.is_empty() {
            return Err(AlgebraError::MalformedWord(text.to_string()));
        }
        Ok(Word(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    pub fn degree(&self, rank: usize) -> MultiDegree {
        let mut d = MultiDegree::zero(rank);
        for l in self.letters() {
            d.0[l] += 1;
        }
        d
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn without(&self, pos: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(pos);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters().map(|l| format!("x{}", l + 1)).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// A vector in `ℕ^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(rank: usize) -> Self {
        MultiDegree(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut d = Self::zero(rank);
        d.0[i] = 1;
        d
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn support(&self) -> SupportSet {
        SupportSet::from_indices(self.0.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i))
    }

    /// `self - e_i`, if nonnegative.
    pub fn lower(&self, i: usize) -> Option<MultiDegree> {
        if self.0[i] == 0 {
            return None;
        }
        let mut d = self.clone();
        d.0[i] -= 1;
        Some(d)
    }

    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiDegree)
    }

    /// All `e ≤ self` componentwise, in lexicographic order (zero first).
    pub fn sub_degrees(&self) -> Vec<MultiDegree> {
        let mut out = vec![MultiDegree::zero(self.rank())];
        for (i, &c) in self.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
            for d in &out {
                for k in 0..=c {
                    let mut e = d.clone();
                    e.0[i] = k;
                    next.push(e);
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// All words with this letter content, in lexicographic order.
    pub fn words(&self) -> Vec<Word> {
        fn rec(counts: &mut [u32], prefix: &mut Vec<u8>, total: usize, out: &mut Vec<Word>) {
            if prefix.len() == total {
                out.push(Word(prefix.clone()));
                return;
            }
            for i in 0..counts.len() {
                if counts[i] > 0 {
                    counts[i] -= 1;
                    prefix.push(i as u8);
                    rec(counts, prefix, total, out);
                    prefix.pop();
                    counts[i] += 1;
                }
            }
        }
        let mut out = Vec::new();
        let mut counts = self.0.clone();
        rec(&mut counts, &mut Vec::new(), self.total() as usize, &mut out);
        out
    }
}

impl Add for &MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `χ(d1, d2) = ∏_{i,j} p_ij^{d1_i d2_j}`.
pub fn chi(diagram: &GeneralizedDynkinDiagram, d1: &MultiDegree, d2: &MultiDegree) -> RootOfUnity {
    let m = diagram.modulus() as u64;
    let mut e: u64 = 0;
    for (i, &a) in d1.0.iter().enumerate().filter(|(_, &a)| a > 0) {
        for (j, &b) in d2.0.iter().enumerate().filter(|(_, &b)| b > 0) {
            e = (e + diagram.exponent(i, j) as u64 * (a as u64 * b as u64 % m)) % m;
        }
    }
    RootOfUnity::new(e as i64, diagram.modulus()).expect("positive modulus")
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Grading {
    Zero,
    Homogeneous(MultiDegree),
    Mixed,
}

/// A finite linear combination of words with coefficients in `Q(ζ_M)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BraidedElement {
    rank: usize,
    modulus: u32,
    terms: BTreeMap<Word, Cyclotomic>,
    grading: Grading,
}

impl BraidedElement {
    pub fn zero(rank: usize, modulus: u32) -> Self {
        Self {
            rank,
            modulus,
            terms: BTreeMap::new(),
            grading: Grading::Zero,
        }
    }

    pub fn one(rank: usize, modulus: u32) -> Self {
        Self::from_word(rank, modulus, Word::empty())
    }

    pub fn from_word(rank: usize, modulus: u32, word: Word) -> Self {
        Self::from_terms(rank, modulus, [(word, Cyclotomic::one(modulus))])
    }

    /// The generator `x_i` (0-based).
    pub fn generator(rank: usize, modulus: u32, i: usize) -> Self {
        Self::from_word(rank, modulus, Word::letter(i))
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Cyclotomic)>>(rank: usize, modulus: u32, terms: I) -> Self {
        let mut map: BTreeMap<Word, Cyclotomic> = BTreeMap::new();
        for (w, c) in terms {
            assert_eq!(c.modulus(), modulus, "mixed root-of-unity moduli");
            debug_assert!(w.letters().all(|l| l < rank));
            match map.get_mut(&w) {
                Some(existing) => *existing += &c,
                None => {
                    map.insert(w, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        let mut e = Self {
            rank,
            modulus,
            terms: map,
            grading: Grading::Zero,
        };
        e.regrade();
        e
    }

    fn regrade(&mut self) {
        let mut degrees = self.terms.keys().map(|w| w.degree(self.rank));
        self.grading = match degrees.next() {
            None => Grading::Zero,
            Some(first) => {
                if degrees.all(|d| d == first) {
                    Grading::Homogeneous(first)
                } else {
                    Grading::Mixed
                }
            }
        };
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self.grading, Grading::Mixed)
    }

    /// The common multidegree of a nonzero homogeneous element.
    pub fn degree(&self) -> Option<&MultiDegree> {
        match &self.grading {
            Grading::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Cyclotomic> {
        self.terms.get(w)
    }

    /// Letters occurring in any word.
    pub fn support(&self) -> SupportSet {
        let mut s = SupportSet::EMPTY;
        for w in self.terms.keys() {
            for l in w.letters() {
                s.insert(l);
            }
        }
        s
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Self::from_terms(self.rank, self.modulus, self.terms.iter().map(|(w, a)| (w.clone(), a * c)))
    }

    pub fn scale_root(&self, r: RootOfUnity) -> Self {
        Self::from_terms(self.rank, self.modulus, self.terms.iter().map(|(w, a)| (w.clone(), a.mul_root(r))))
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed root-of-unity moduli");
        assert_eq!(self.rank, other.rank, "mixed ranks");
    }

    /// Concatenation product, extended bilinearly.
    pub fn multiply(&self, other: &Self) -> Self {
        self.check(other);
        let terms = self
            .terms
            .iter()
            .flat_map(|(a, ca)| other.terms.iter().map(move |(b, cb)| (a.concat(b), ca * cb)));
        Self::from_terms(self.rank, self.modulus, terms)
    }

    pub fn checked_bracket(&self, other: &Self, diagram: &GeneralizedDynkinDiagram) -> Result<Self, AlgebraError> {
        bracket(diagram, self, other)
    }
}

impl Add for &BraidedElement {
    type Output = BraidedElement;
    fn add(self, rhs: &BraidedElement) -> BraidedElement {
        self.check(rhs);
        let terms = self.terms.iter().chain(rhs.terms.iter()).map(|(w, c)| (w.clone(), c.clone()));
        BraidedElement::from_terms(self.rank, self.modulus, terms)
    }
}

impl Sub for &BraidedElement {
    type Output = BraidedElement;
    fn sub(self, rhs: &BraidedElement) -> BraidedElement {
        self.check(rhs);
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c.clone()))
            .chain(rhs.terms.iter().map(|(w, c)| (w.clone(), -c)));
        BraidedElement::from_terms(self.rank, self.modulus, terms)
    }
}

impl fmt::Display for BraidedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| if c.is_one() { w.to_string() } else { format!("({c})·{w}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for BraidedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidedElement({self})")
    }
}

/// `p_{uv} = χ(deg u, deg v)` for nonzero homogeneous `u, v`.
fn pair_scalar(diagram: &GeneralizedDynkinDiagram, u: &BraidedElement, v: &BraidedElement) -> Option<RootOfUnity> {
    Some(chi(diagram, u.degree()?, v.degree()?))
}

/// The braided bracket `[u, v] = v·u − p_{vu} u·v`.
pub fn bracket(
    diagram: &GeneralizedDynkinDiagram,
    u: &BraidedElement,
    v: &BraidedElement,
) -> Result<BraidedElement, AlgebraError> {
    if !u.is_homogeneous() || !v.is_homogeneous() {
        return Err(AlgebraError::NonHomogeneousOperand);
    }
    if u.rank() != diagram.rank() || v.rank() != diagram.rank() {
        return Err(AlgebraError::RankMismatch(u.rank(), diagram.rank()));
    }
    let Some(p_vu) = pair_scalar(diagram, v, u) else {
        return Ok(BraidedElement::zero(u.rank(), u.modulus()));
    };
    Ok(&v.multiply(u) - &u.multiply(v).scale_root(p_vu))
}

/// `[[u,v],w] − [u,[v,w]] − p_vw⁻¹[[u,w],v] − (p_wv − p_vw⁻¹)·v·[u,w]`, which
/// vanishes in the free algebra.
pub fn jacobi_residual(
    diagram: &GeneralizedDynkinDiagram,
    u: &BraidedElement,
    v: &BraidedElement,
    w: &BraidedElement,
) -> Result<BraidedElement, AlgebraError> {
    let zero = BraidedElement::zero(u.rank(), u.modulus());
    let (Some(p_vw), Some(p_wv)) = (pair_scalar(diagram, v, w), pair_scalar(diagram, w, v)) else {
        // a zero operand makes every term vanish
        return Ok(zero);
    };
    let uv_w = bracket(diagram, &bracket(diagram, u, v)?, w)?;
    let u_vw = bracket(diagram, u, &bracket(diagram, v, w)?)?;
    let uw = bracket(diagram, u, w)?;
    let uw_v = bracket(diagram, &uw, v)?.scale_root(p_vw.inv());
    let coeff = Cyclotomic::from_root(p_wv) - Cyclotomic::from_root(p_vw.inv());
    let tail = v.multiply(&uw).scale(&coeff);
    Ok(&(&(&uv_w - &u_vw) - &uw_v) - &tail)
}

/// `[u, v·w] − p_wu [u,v]·w − v·[u,w]`, which vanishes in the free algebra.
pub fn leibniz_residual(
    diagram: &GeneralizedDynkinDiagram,
    u: &BraidedElement,
    v: &BraidedElement,
    w: &BraidedElement,
) -> Result<BraidedElement, AlgebraError> {
    let zero = BraidedElement::zero(u.rank(), u.modulus());
    let Some(p_wu) = pair_scalar(diagram, w, u) else {
        return Ok(zero);
    };
    let lhs = bracket(diagram, u, &v.multiply(w))?;
    let first = bracket(diagram, u, v)?.multiply(w).scale_root(p_wu);
    let second = v.multiply(&bracket(diagram, u, w)?);
    Ok(&(&lhs - &first) - &second)
}

/// Rewrites each word by moving smaller letters left past larger ones
/// whenever the two letters commute up to scalar (`p_ij p_ji = 1`), using
/// `x_i x_j = p_ij x_j x_i`. Equal in the Nichols quotient, not in the free algebra.
pub fn generalized_commutation_normal_form(
    diagram: &GeneralizedDynkinDiagram,
    u: &BraidedElement,
) -> BraidedElement {
    let terms = u.terms().map(|(w, c)| {
        let mut letters = w.0.clone();
        let mut scalar = RootOfUnity::one(diagram.modulus());
        loop {
            let mut changed = false;
            for k in 0..letters.len().saturating_sub(1) {
                let (a, b) = (letters[k] as usize, letters[k + 1] as usize);
                if a > b && diagram.edge_label(a, b).is_one() {
                    // x_a x_b = p_ab x_b x_a
                    scalar = scalar * diagram.p(a, b);
                    letters.swap(k, k + 1);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (Word(letters), c.mul_root(scalar))
    });
    BraidedElement::from_terms(u.rank(), u.modulus(), terms)
}

impl FromStr for MultiDegree {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        inner
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map(MultiDegree)
            .map_err(|_| AlgebraError::MalformedWord(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::CartanPreset;

    fn diagram(p: &str, n: u32) -> GeneralizedDynkinDiagram {
        p.parse::<CartanPreset>().unwrap().at_order(n).unwrap()
    }

    fn x(d: &GeneralizedDynkinDiagram, i: usize) -> BraidedElement {
        BraidedElement::generator(d.rank(), d.modulus(), i)
    }

    fn word(d: &GeneralizedDynkinDiagram, letters: &[usize]) -> BraidedElement {
        BraidedElement::from_word(d.rank(), d.modulus(), Word::from_letters(letters.iter().copied()))
    }

    #[test]
    fn chi_examples() {
        let d = diagram("A2", 5);
        let e1 = MultiDegree::unit(2, 0);
        let e2 = MultiDegree::unit(2, 1);
        assert_eq!(chi(&d, &e1, &e2), d.p(0, 1));
        assert!(chi(&d, &MultiDegree::zero(2), &e2).is_one());
        let both = MultiDegree(vec![1, 1]);
        assert_eq!(chi(&d, &both, &both), RootOfUnity::new(1, 5).unwrap());
    }

    #[test]
    fn multiply_examples() {
        let d = diagram("A2", 3);
        assert_eq!(x(&d, 0).multiply(&x(&d, 1)), word(&d, &[0, 1]));
        let sum = &x(&d, 0) + &x(&d, 1);
        assert_eq!(sum.multiply(&x(&d, 0)), &word(&d, &[0, 0]) + &word(&d, &[1, 0]));
        assert!(BraidedElement::zero(2, 3).multiply(&sum).is_zero());
        assert!(!sum.is_homogeneous());
    }

    #[test]
    fn bracket_examples() {
        let d = diagram("A2", 4);
        let b = bracket(&d, &x(&d, 0), &x(&d, 1)).unwrap();
        assert_eq!(b, &word(&d, &[1, 0]) - &word(&d, &[0, 1]).scale_root(d.p(1, 0)));
        let b11 = bracket(&d, &x(&d, 0), &x(&d, 0)).unwrap();
        let coeff = Cyclotomic::one(4) - Cyclotomic::from_root(d.p(0, 0));
        assert_eq!(b11, word(&d, &[0, 0]).scale(&coeff));
        let mixed = &x(&d, 0) + &word(&d, &[0, 1]);
        assert_eq!(bracket(&d, &mixed, &x(&d, 0)), Err(AlgebraError::NonHomogeneousOperand));
    }

    #[test]
    fn bracket_degree_adds() {
        let d = diagram("A3", 3);
        let u = word(&d, &[0, 1]);
        let v = word(&d, &[2, 1, 2]);
        let b = bracket(&d, &u, &v).unwrap();
        assert_eq!(b.degree().unwrap(), &(u.degree().unwrap() + v.degree().unwrap()));
    }

    #[test]
    fn jacobi_and_leibniz_examples() {
        let a3 = diagram("A3", 5);
        assert!(jacobi_residual(&a3, &x(&a3, 0), &x(&a3, 1), &x(&a3, 2)).unwrap().is_zero());
        assert!(leibniz_residual(&a3, &x(&a3, 0), &x(&a3, 1), &x(&a3, 2)).unwrap().is_zero());
        let a2 = diagram("A2", 5);
        assert!(jacobi_residual(&a2, &x(&a2, 0), &x(&a2, 0), &x(&a2, 1)).unwrap().is_zero());
        assert!(leibniz_residual(&a2, &x(&a2, 1), &x(&a2, 0), &x(&a2, 0)).unwrap().is_zero());
    }

    #[test]
    fn word_enumeration() {
        let d = MultiDegree(vec![2, 1]);
        let ws: Vec<String> = d.words().iter().map(|w| w.to_string()).collect();
        assert_eq!(ws, vec!["x1x1x2", "x1x2x1", "x2x1x1"]);
        assert_eq!(MultiDegree(vec![3, 4, 3]).words().len(), 4200);
        assert_eq!(MultiDegree(vec![1, 1]).sub_degrees().len(), 4);
    }

    #[test]
    fn word_parsing() {
        assert_eq!(Word::parse("1 2 1", 2).unwrap(), Word(vec![0, 1, 0]));
        assert!(matches!(Word::parse("1 3", 2), Err(AlgebraError::LetterOutOfRange { letter: 3, rank: 2 })));
        assert!(matches!(Word::parse("1 a", 2), Err(AlgebraError::MalformedWord(_))));
        assert!(matches!(Word::parse("  ", 2), Err(AlgebraError::MalformedWord(_))));
    }

    #[test]
    fn normal_form_commutes_separated_letters() {
        let d = diagram("A3", 4);
        let u = word(&d, &[2, 0]);
        let nf = generalized_commutation_normal_form(&d, &u);
        assert_eq!(nf, word(&d, &[0, 2]).scale_root(d.p(2, 0)));
        let adjacent = word(&d, &[1, 0]);
        assert_eq!(generalized_commutation_normal_form(&d, &adjacent), adjacent);
    }
}
