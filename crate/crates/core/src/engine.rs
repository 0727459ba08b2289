//! The Nichols quotient `B(V)` and its braided Lie algebra `L(V)` in bounded
//! degree, computed through skew derivations.
//!
//! For each multidegree `d` the dual space `B(V)_d^*` is spanned by the
//! functionals `φ ∘ ∂_i` with `φ` ranging over a basis of `B(V)_{d-e_i}^*`.
//! A [`DegreeBasis`] keeps an independent subset of these functionals and
//! their values on every word of degree `d`; those values are the word's
//! coordinates in `B(V)_d`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, RwLock};

use once_cell::sync::OnceCell;
use rayon::prelude::*;
use thiserror::Error;

use crate::braided::{bracket, AlgebraError, BraidedElement, MultiDegree, Word};
use crate::diagram::{GeneralizedDynkinDiagram, SupportSet};
use crate::scalars::{quantum_factorial, Cyclotomic, RootOfUnity};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("multidegree {degree} exceeds the degree cutoff {cutoff}")]
    DegreeCutoffExceeded { degree: String, cutoff: u32 },
    #[error("a degree cutoff is required for diagrams without a Cartan preset")]
    CutoffRequired,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("{0} is not in the computed Lie algebra")]
    NotInLie(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Incremental row echelon form with unit pivots, first-nonzero-column pivoting.
#[derive(Debug, Clone, Default)]
struct Echelon {
    rows: Vec<(usize, Vec<Cyclotomic>)>,
}

impl Echelon {
    fn len(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Cyclotomic]) {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row).skip(*pivot) {
                if !r.is_zero() {
                    *x -= &(&factor * r);
                }
            }
        }
    }

    /// Adds `v` if independent of the current rows; returns whether it was.
    fn insert(&mut self, mut v: Vec<Cyclotomic>) -> bool {
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inv().expect("pivot is nonzero");
        for x in v.iter_mut().skip(pivot) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((pivot, v));
        true
    }

    fn contains(&self, v: &[Cyclotomic]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(Cyclotomic::is_zero)
    }

    fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }
}

/// Inverse of a square matrix over `Q(ζ_M)` by Gauss–Jordan elimination.
fn invert(matrix: &[Vec<Cyclotomic>], modulus: u32) -> Vec<Vec<Cyclotomic>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Cyclotomic>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Cyclotomic::one(modulus)
                } else {
                    Cyclotomic::zero(modulus)
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("matrix is invertible");
        a.swap(col, pivot);
        let inv = a[col][col].inv().expect("nonzero pivot");
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &(&factor * p);
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

fn zero_vector(modulus: u32, len: usize) -> Vec<Cyclotomic> {
    vec![Cyclotomic::zero(modulus); len]
}

/// A basis of `B(V)_d` together with coordinates of every word of degree `d`.
#[derive(Debug)]
pub struct DegreeBasis {
    degree: MultiDegree,
    modulus: u32,
    /// Selected functionals `(i, k)`: the `k`-th functional of degree `d - e_i` after `∂_i`.
    functionals: Vec<(usize, usize)>,
    words: Vec<Word>,
    coords: Vec<Vec<Cyclotomic>>,
    basis_words: Vec<usize>,
    inverse_gram: OnceCell<Vec<Vec<Cyclotomic>>>,
}

impl DegreeBasis {
    fn trivial(degree: MultiDegree, modulus: u32) -> Self {
        let (words, coords, functionals, basis_words) = if degree.is_zero() {
            (vec![Word::empty()], vec![vec![Cyclotomic::one(modulus)]], vec![], vec![0])
        } else {
            (vec![], vec![], vec![], vec![])
        };
        Self {
            degree,
            modulus,
            functionals,
            words,
            coords,
            basis_words,
            inverse_gram: OnceCell::new(),
        }
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    /// `dim B(V)_d`.
    pub fn rank(&self) -> usize {
        self.basis_words.len()
    }

    /// Dual words of the selected functionals, in application order.
    pub fn functionals(&self) -> &[(usize, usize)] {
        &self.functionals
    }

    /// Words of degree `d` whose images form a basis of `B(V)_d`.
    pub fn basis_words(&self) -> Vec<&Word> {
        self.basis_words.iter().map(|&i| &self.words[i]).collect()
    }

    /// Coordinates of a word of this degree (empty when the rank is zero).
    pub fn word_coordinates(&self, w: &Word) -> Option<&[Cyclotomic]> {
        if self.rank() == 0 {
            return Some(&[]);
        }
        self.words.binary_search(w).ok().map(|i| self.coords[i].as_slice())
    }

    pub fn coordinates(&self, u: &BraidedElement) -> Vec<Cyclotomic> {
        let mut out = zero_vector(self.modulus, self.rank());
        if self.rank() == 0 {
            return out;
        }
        for (w, c) in u.terms() {
            let wc = self.word_coordinates(w).expect("word of matching degree");
            for (o, x) in out.iter_mut().zip(wc) {
                if !x.is_zero() {
                    *o += &(c * x);
                }
            }
        }
        out
    }

    /// The element `Σ a_j b_j` over basis words whose coordinates are `v`.
    pub fn representative(&self, v: &[Cyclotomic], rank: usize) -> BraidedElement {
        let inv = self.inverse_gram.get_or_init(|| {
            let r = self.rank();
            let gram: Vec<Vec<Cyclotomic>> = (0..r)
                .map(|k| self.basis_words.iter().map(|&j| self.coords[j][k].clone()).collect())
                .collect();
            invert(&gram, self.modulus)
        });
        let terms = self.basis_words.iter().enumerate().map(|(j, &w)| {
            let mut a = Cyclotomic::zero(self.modulus);
            for (k, x) in v.iter().enumerate() {
                a += &(&inv[j][k] * x);
            }
            (self.words[w].clone(), a)
        });
        BraidedElement::from_terms(rank, self.modulus, terms)
    }
}

/// One homogeneous component `L(V)_d` inside `B(V)_d`.
#[derive(Debug, Clone)]
pub struct LieComponent {
    degree: MultiDegree,
    elements: Vec<BraidedElement>,
    echelon: Echelon,
}

impl LieComponent {
    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    pub fn dim(&self) -> usize {
        self.echelon.len()
    }

    /// Representatives of a basis of this component.
    pub fn elements(&self) -> &[BraidedElement] {
        &self.elements
    }
}

/// `L(V)` through a total-degree cutoff, stored by nonzero component.
#[derive(Debug, Clone)]
pub struct LieSubspace {
    cutoff: u32,
    components: BTreeMap<MultiDegree, LieComponent>,
}

impl LieSubspace {
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(LieComponent::dim).sum()
    }

    pub fn dim_at(&self, d: &MultiDegree) -> usize {
        self.components.get(d).map_or(0, LieComponent::dim)
    }

    pub fn components(&self) -> impl Iterator<Item = &LieComponent> {
        self.components.values()
    }
}

/// Result of the triple-product check.
#[derive(Debug, Clone)]
pub struct TripleReport {
    /// `a, b, c, d, e, f` of the triple-product lemma.
    pub scalars: [Cyclotomic; 6],
    /// Which of `uv, uw, vw` lie in `L(V)`.
    pub pair_membership: [bool; 3],
    /// `uvw, uwv, vwu, vuw, wuv, wvu` in that order.
    pub products: [bool; 6],
    pub r_count: usize,
    pub t_count: usize,
}

impl TripleReport {
    pub fn all_products_in_lie(&self) -> bool {
        self.products.iter().all(|&b| b)
    }

    pub fn implied(&self) -> bool {
        (self.r_count >= 2 && self.t_count != 0) || self.t_count >= 2
    }
}

/// Per-diagram memoized engine.
pub struct NicholsEngine {
    diagram: GeneralizedDynkinDiagram,
    cutoff: u32,
    bases: RwLock<HashMap<MultiDegree, Arc<DegreeBasis>>>,
    nonzero: Mutex<Vec<Vec<MultiDegree>>>,
    lie: Mutex<LieSubspace>,
}

impl fmt::Debug for NicholsEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NicholsEngine")
            .field("rank", &self.diagram.rank())
            .field("modulus", &self.diagram.modulus())
            .field("cutoff", &self.cutoff)
            .finish()
    }
}

impl NicholsEngine {
    pub fn new(diagram: GeneralizedDynkinDiagram, cutoff: Option<u32>) -> Result<Self, EngineError> {
        let cutoff = cutoff.ok_or(EngineError::CutoffRequired)?;
        Ok(Self {
            diagram,
            cutoff,
            bases: RwLock::new(HashMap::new()),
            nonzero: Mutex::new(Vec::new()),
            lie: Mutex::new(LieSubspace {
                cutoff: 0,
                components: BTreeMap::new(),
            }),
        })
    }

    pub fn diagram(&self) -> &GeneralizedDynkinDiagram {
        &self.diagram
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    fn rank(&self) -> usize {
        self.diagram.rank()
    }

    fn modulus(&self) -> u32 {
        self.diagram.modulus()
    }

    fn check_degree(&self, d: &MultiDegree) -> Result<(), EngineError> {
        if d.total() > self.cutoff {
            return Err(EngineError::DegreeCutoffExceeded {
                degree: d.to_string(),
                cutoff: self.cutoff,
            });
        }
        Ok(())
    }

    fn homogeneous_degree(&self, u: &BraidedElement) -> Result<Option<MultiDegree>, EngineError> {
        if !u.is_homogeneous() {
            return Err(EngineError::NotHomogeneous);
        }
        Ok(u.degree().cloned())
    }

    /// `∂_i(w)`: sum over occurrences of `x_i` of `χ(e_i, deg prefix)⁻¹ · (w without it)`.
    pub fn skew_derive(&self, i: usize, u: &BraidedElement) -> BraidedElement {
        skew_derive(&self.diagram, i, u)
    }

    /// The `l`-fold iterate of `∂_k`.
    pub fn power_derive(&self, k: usize, l: u32, u: &BraidedElement) -> BraidedElement {
        (0..l).fold(u.clone(), |acc, _| skew_derive(&self.diagram, k, &acc))
    }

    /// The memoized basis of `B(V)_d`.
    pub fn degree_basis(&self, d: &MultiDegree) -> Result<Arc<DegreeBasis>, EngineError> {
        self.check_degree(d)?;
        self.basis_unchecked(d)
    }

    fn basis_unchecked(&self, d: &MultiDegree) -> Result<Arc<DegreeBasis>, EngineError> {
        if let Some(b) = self.bases.read().expect("basis memo poisoned").get(d) {
            return Ok(b.clone());
        }
        let subs = (0..self.rank())
            .map(|i| d.lower(i).map(|e| self.basis_unchecked(&e)).transpose())
            .collect::<Result<Vec<_>, _>>()?;
        let basis = Arc::new(self.build_basis(d, &subs));
        let mut memo = self.bases.write().expect("basis memo poisoned");
        Ok(memo.entry(d.clone()).or_insert(basis).clone())
    }

    fn build_basis(&self, d: &MultiDegree, subs: &[Option<Arc<DegreeBasis>>]) -> DegreeBasis {
        let m = self.modulus();
        if d.is_zero() || subs.iter().flatten().all(|b| b.rank() == 0) {
            return DegreeBasis::trivial(d.clone(), m);
        }
        let offsets: Vec<usize> = subs
            .iter()
            .scan(0, |acc, b| {
                let o = *acc;
                *acc += b.as_ref().map_or(0, |b| b.rank());
                Some(o)
            })
            .collect();
        let candidates: Vec<(usize, usize)> = subs
            .iter()
            .enumerate()
            .flat_map(|(i, b)| (0..b.as_ref().map_or(0, |b| b.rank())).map(move |k| (i, k)))
            .collect();
        let words = d.words();
        // values[w][c]: candidate functional c evaluated on word w
        let values: Vec<Vec<Cyclotomic>> = words
            .iter()
            .map(|w| {
                let mut row = zero_vector(m, candidates.len());
                let mut prefix = MultiDegree::zero(self.rank());
                for (pos, letter) in w.letters().enumerate() {
                    if let Some(sub) = subs[letter].as_ref().filter(|b| b.rank() > 0) {
                        let scalar = crate::braided::chi(&self.diagram, &MultiDegree::unit(self.rank(), letter), &prefix).inv();
                        let rest = w.without(pos);
                        let c = sub.word_coordinates(&rest).expect("sub-basis covers all words");
                        for (k, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                            row[offsets[letter] + k] += &x.mul_root(scalar);
                        }
                    }
                    prefix.0[letter] += 1;
                }
                row
            })
            .collect();
        let mut echelon = Echelon::default();
        let mut selected = Vec::new();
        for (c, &functional) in candidates.iter().enumerate() {
            let row: Vec<Cyclotomic> = values.iter().map(|v| v[c].clone()).collect();
            if echelon.insert(row) {
                selected.push((c, functional));
            }
        }
        let coords = values
            .into_iter()
            .map(|v| selected.iter().map(|(c, _)| v[*c].clone()).collect())
            .collect();
        DegreeBasis {
            degree: d.clone(),
            modulus: m,
            functionals: selected.into_iter().map(|(_, f)| f).collect(),
            words,
            coords,
            basis_words: echelon.pivots(),
            inverse_gram: OnceCell::new(),
        }
    }

    /// Computes every basis with degree componentwise below `bound`, one
    /// total-degree layer at a time, in parallel within a layer.
    pub fn prepare_box(&self, bound: &MultiDegree) -> Result<(), EngineError> {
        self.check_degree(bound)?;
        let mut layers: BTreeMap<u32, Vec<MultiDegree>> = BTreeMap::new();
        for d in bound.sub_degrees() {
            layers.entry(d.total()).or_default().push(d);
        }
        for layer in layers.values() {
            layer
                .par_iter()
                .map(|d| self.basis_unchecked(d).map(|_| ()))
                .collect::<Result<Vec<()>, _>>()?;
        }
        Ok(())
    }

    /// Multidegrees of total degree `t` with `B(V)_d ≠ 0`. A nonzero `u` has a
    /// nonzero `∂_i u`, so each layer is found from the one below.
    pub fn nonzero_layer(&self, t: u32) -> Result<Vec<MultiDegree>, EngineError> {
        if t > self.cutoff {
            return Err(EngineError::DegreeCutoffExceeded {
                degree: format!("total {t}"),
                cutoff: self.cutoff,
            });
        }
        let mut layers = self.nonzero.lock().expect("layer memo poisoned");
        let n = self.rank();
        if layers.is_empty() {
            layers.push(vec![MultiDegree::zero(n)]);
        }
        while layers.len() <= t as usize {
            let below = layers.last().expect("degree 0 present");
            let next: BTreeSet<MultiDegree> = below
                .iter()
                .flat_map(|d| (0..n).map(move |i| d + &MultiDegree::unit(n, i)))
                .collect();
            let next: Vec<MultiDegree> = next.into_iter().collect();
            let ranks = next
                .par_iter()
                .map(|d| self.degree_basis(d).map(|b| b.rank()))
                .collect::<Result<Vec<_>, _>>()?;
            let layer = next.into_iter().zip(ranks).filter(|(_, r)| *r > 0).map(|(d, _)| d).collect();
            layers.push(layer);
        }
        Ok(layers[t as usize].clone())
    }

    /// Multidegrees with `B(V)_d ≠ 0` up to the cutoff, ascending by total degree.
    pub fn nonzero_degrees(&self) -> Result<Vec<MultiDegree>, EngineError> {
        let mut out = Vec::new();
        for t in 0..=self.cutoff {
            let layer = self.nonzero_layer(t)?;
            if layer.is_empty() {
                break;
            }
            out.extend(layer);
        }
        Ok(out)
    }

    /// `Σ_d dim B(V)_d` over all degrees within the cutoff.
    pub fn total_dimension(&self) -> Result<u64, EngineError> {
        self.nonzero_degrees()?
            .iter()
            .map(|d| self.basis_unchecked(d).map(|b| b.rank() as u64))
            .sum()
    }

    pub fn coordinates(&self, u: &BraidedElement) -> Result<Vec<Cyclotomic>, EngineError> {
        match self.homogeneous_degree(u)? {
            None => Ok(vec![]),
            Some(d) => Ok(self.degree_basis(&d)?.coordinates(u)),
        }
    }

    /// Whether `u = 0` in `B(V)`, via the memoized degree basis.
    pub fn zero_test(&self, u: &BraidedElement) -> Result<bool, EngineError> {
        Ok(self.coordinates(u)?.iter().all(Cyclotomic::is_zero))
    }

    /// Whether `u = 0` in `B(V)` by literal recursion on skew derivations,
    /// without the degree bases. Exponential; meant for small elements.
    pub fn zero_test_direct(&self, u: &BraidedElement) -> Result<bool, EngineError> {
        let Some(d) = self.homogeneous_degree(u)? else {
            return Ok(true);
        };
        self.check_degree(&d)?;
        Ok(zero_direct(&self.diagram, u))
    }

    /// The zero-test verdict with a derivation cascade. For a nonzero element
    /// the cascade follows the first nonzero derivative down to a scalar.
    pub fn zero_test_trace(&self, u: &BraidedElement) -> Result<(bool, Vec<String>), EngineError> {
        let zero = self.zero_test(u)?;
        let mut lines = Vec::new();
        let mut current = u.clone();
        let mut depth = 0;
        while !current.is_zero() && current.degree().is_some_and(|d| !d.is_zero()) {
            let indent = "  ".repeat(depth);
            let mut next = None;
            for i in 0..self.rank() {
                let der = self.skew_derive(i, &current);
                let z = self.zero_test(&der)?;
                lines.push(format!(
                    "{indent}∂_{}({current}) = {der}  [{}]",
                    i + 1,
                    if z { "zero" } else { "nonzero" }
                ));
                if !z && next.is_none() {
                    next = Some(der);
                }
            }
            match next {
                Some(n) => current = n,
                None => break,
            }
            depth += 1;
        }
        if !zero {
            lines.push(format!("{}scalar {current} ≠ 0", "  ".repeat(depth)));
        }
        Ok((zero, lines))
    }

    /// `L(V)` through total degree `cutoff`.
    pub fn lie_closure(&self, cutoff: u32) -> Result<LieSubspace, EngineError> {
        if cutoff > self.cutoff {
            return Err(EngineError::DegreeCutoffExceeded {
                degree: format!("total {cutoff}"),
                cutoff: self.cutoff,
            });
        }
        let mut lie = self.lie.lock().expect("lie closure poisoned");
        while lie.cutoff < cutoff {
            let t = lie.cutoff + 1;
            self.extend_lie(&mut lie, t)?;
            lie.cutoff = t;
        }
        Ok(LieSubspace {
            cutoff,
            components: lie
                .components
                .iter()
                .filter(|(d, _)| d.total() <= cutoff)
                .map(|(d, c)| (d.clone(), c.clone()))
                .collect(),
        })
    }

    fn extend_lie(&self, lie: &mut LieSubspace, t: u32) -> Result<(), EngineError> {
        let (n, m) = (self.rank(), self.modulus());
        if t == 1 {
            for i in 0..n {
                let d = MultiDegree::unit(n, i);
                let basis = self.degree_basis(&d)?;
                let x = BraidedElement::generator(n, m, i);
                let mut echelon = Echelon::default();
                echelon.insert(basis.coordinates(&x));
                lie.components.insert(
                    d.clone(),
                    LieComponent {
                        degree: d,
                        elements: vec![x],
                        echelon,
                    },
                );
            }
            return Ok(());
        }
        let nonzero: HashSet<MultiDegree> = self.nonzero_layer(t)?.into_iter().collect();
        let lower: Vec<&LieComponent> = lie.components.values().filter(|c| c.degree.total() < t).collect();
        let mut targets: BTreeMap<MultiDegree, Vec<(usize, usize)>> = BTreeMap::new();
        for (a, ca) in lower.iter().enumerate() {
            for (b, cb) in lower.iter().enumerate() {
                let d = &ca.degree + &cb.degree;
                if d.total() == t && nonzero.contains(&d) {
                    targets.entry(d).or_default().push((a, b));
                }
            }
        }
        let computed = targets
            .into_par_iter()
            .map(|(d, pairs)| {
                let basis = self.degree_basis(&d)?;
                let mut echelon = Echelon::default();
                let mut elements = Vec::new();
                'pairs: for (a, b) in pairs {
                    for u in &lower[a].elements {
                        for v in &lower[b].elements {
                            if echelon.len() == basis.rank() {
                                break 'pairs;
                            }
                            let br = bracket(&self.diagram, u, v)?;
                            let coords = basis.coordinates(&br);
                            if echelon.insert(coords.clone()) {
                                elements.push(basis.representative(&coords, n));
                            }
                        }
                    }
                }
                Ok((d, elements, echelon))
            })
            .collect::<Result<Vec<_>, EngineError>>()?;
        for (d, elements, echelon) in computed {
            if echelon.len() > 0 {
                lie.components.insert(
                    d.clone(),
                    LieComponent {
                        degree: d,
                        elements,
                        echelon,
                    },
                );
            }
        }
        Ok(())
    }

    /// Whether `u` lies in `L(V)`; the zero element always does.
    pub fn lie_membership(&self, u: &BraidedElement) -> Result<bool, EngineError> {
        let Some(d) = self.homogeneous_degree(u)? else {
            return Ok(true);
        };
        let coords = self.degree_basis(&d)?.coordinates(u);
        if coords.iter().all(Cyclotomic::is_zero) {
            return Ok(true);
        }
        let lie = self.lie_closure(d.total())?;
        Ok(lie.components.get(&d).is_some_and(|c| c.echelon.contains(&coords)))
    }

    /// Evaluates the triple-product lemma data for homogeneous `u, v, w ∈ L(V)`.
    pub fn triple_product_membership(
        &self,
        u: &BraidedElement,
        v: &BraidedElement,
        w: &BraidedElement,
    ) -> Result<TripleReport, EngineError> {
        for (name, x) in [("u", u), ("v", v), ("w", w)] {
            if !self.lie_membership(x)? {
                return Err(EngineError::NotInLie(name.to_string()));
            }
        }
        let (du, dv, dw) = match (u.degree(), v.degree(), w.degree()) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => return Err(EngineError::NotHomogeneous),
        };
        let chi = |a: &MultiDegree, b: &MultiDegree| crate::braided::chi(&self.diagram, a, b);
        let m = self.modulus();
        let uv = chi(du, dv) * chi(dv, du);
        let uw = chi(du, dw) * chi(dw, du);
        let vw = chi(dv, dw) * chi(dw, dv);
        let one_minus = |r: RootOfUnity| Cyclotomic::one(m) - Cyclotomic::from_root(r);
        let scalars = [
            one_minus(vw),
            one_minus(uw),
            one_minus(uv),
            one_minus(uv * uw),
            one_minus(uv * vw),
            one_minus(vw * uw),
        ];
        let t_count = scalars[..3].iter().filter(|s| !s.is_zero()).count();
        let pair_membership = [
            self.lie_membership(&u.multiply(v))?,
            self.lie_membership(&u.multiply(w))?,
            self.lie_membership(&v.multiply(w))?,
        ];
        let r_count = pair_membership.iter().filter(|&&b| b).count();
        let orders = [[u, v, w], [u, w, v], [v, w, u], [v, u, w], [w, u, v], [w, v, u]];
        let mut products = [false; 6];
        for (slot, [a, b, c]) in products.iter_mut().zip(orders) {
            *slot = self.lie_membership(&a.multiply(b).multiply(c))?;
        }
        Ok(TripleReport {
            scalars,
            pair_membership,
            products,
            r_count,
            t_count,
        })
    }
}

/// `∂_i` on the free algebra.
pub fn skew_derive(diagram: &GeneralizedDynkinDiagram, i: usize, u: &BraidedElement) -> BraidedElement {
    let n = diagram.rank();
    let e_i = MultiDegree::unit(n, i);
    let mut terms = Vec::new();
    for (w, c) in u.terms() {
        let mut prefix = MultiDegree::zero(n);
        for (pos, letter) in w.letters().enumerate() {
            if letter == i {
                let scalar = crate::braided::chi(diagram, &e_i, &prefix).inv();
                terms.push((w.without(pos), c.mul_root(scalar)));
            }
            prefix.0[letter] += 1;
        }
    }
    BraidedElement::from_terms(n, u.modulus(), terms)
}

/// The closed value of `∂_k^l` on a word with exactly `l` occurrences of `x_k`:
/// `[l]! · ∏_{s=1}^{l} χ(e_k, deg u_1⋯u_s)⁻¹ · u_1⋯u_{l+1}`. `None` if the
/// occurrence count differs from `l`.
pub fn power_derive_formula(
    diagram: &GeneralizedDynkinDiagram,
    k: usize,
    l: u32,
    w: &Word,
) -> Option<BraidedElement> {
    let n = diagram.rank();
    if w.letters().filter(|&x| x == k).count() != l as usize {
        return None;
    }
    let e_k = MultiDegree::unit(n, k);
    let mut scalar = RootOfUnity::one(diagram.modulus());
    let mut prefix = MultiDegree::zero(n);
    for letter in w.letters() {
        if letter == k {
            scalar = scalar * crate::braided::chi(diagram, &e_k, &prefix).inv();
        } else {
            prefix.0[letter] += 1;
        }
    }
    let rest = Word::from_letters(w.letters().filter(|&x| x != k));
    let coeff = quantum_factorial(diagram.p(k, k), l).mul_root(scalar);
    Some(BraidedElement::from_terms(n, diagram.modulus(), [(rest, coeff)]))
}

fn zero_direct(diagram: &GeneralizedDynkinDiagram, u: &BraidedElement) -> bool {
    if u.is_zero() {
        return true;
    }
    if u.degree().is_some_and(MultiDegree::is_zero) {
        return false;
    }
    (0..diagram.rank()).all(|i| zero_direct(diagram, &skew_derive(diagram, i, u)))
}

/// Support of a homogeneous element's degree.
pub fn degree_support(u: &BraidedElement) -> SupportSet {
    u.degree().map_or(SupportSet::EMPTY, MultiDegree::support)
}
