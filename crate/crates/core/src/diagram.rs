//! Generalized Dynkin diagrams of diagonal braidings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::{RootOfUnity, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    /// `p_ii = 1` for the (1-based) vertex.
    #[error("vertex {0} has label p_ii = 1")]
    VertexLabelOne(usize),
    #[error("support set is empty")]
    EmptySupport,
    #[error("support set {0} is not a subset of the {1} vertices")]
    SupportOutOfRange(SupportSet, usize),
    #[error("braiding matrix must be {0}x{0}")]
    BadShape(usize),
    #[error("rank {0} is outside the supported range 1..=32")]
    BadRank(usize),
    #[error("invalid rank {rank} for Cartan family {family}")]
    BadPresetRank { family: CartanFamily, rank: usize },
    #[error("cannot parse preset {0:?}")]
    BadPreset(String),
    #[error("diagram file: {0}")]
    File(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A set of vertices, bit `i` standing for vertex `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct SupportSet(pub u32);

impl SupportSet {
    pub const EMPTY: SupportSet = SupportSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            SupportSet(u32::MAX)
        } else {
            SupportSet((1u32 << n) - 1)
        }
    }

    /// From 0-based vertex indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        SupportSet(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: SupportSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SupportSet) -> SupportSet {
        SupportSet(self.0 | other.0)
    }

    pub fn intersection(self, other: SupportSet) -> SupportSet {
        SupportSet(self.0 & other.0)
    }

    /// 0-based indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The braiding matrix `(p_ij)` with `p_ij = ζ_M^{e_ij}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedDynkinDiagram {
    modulus: u32,
    exponents: Vec<Vec<u32>>,
    adjacency: Vec<SupportSet>,
}

/// On-disk form of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramFile {
    pub rank: usize,
    pub modulus: u32,
    pub exponents: Vec<Vec<i64>>,
}

impl GeneralizedDynkinDiagram {
    /// Builds the matrix without checking the vertex labels; see [`Self::validate`].
    pub fn from_exponents(modulus: u32, exponents: Vec<Vec<i64>>) -> Result<Self, DiagramError> {
        if modulus == 0 {
            return Err(ScalarError::ZeroModulus.into());
        }
        let n = exponents.len();
        if n == 0 || n > 32 {
            return Err(DiagramError::BadRank(n));
        }
        if exponents.iter().any(|row| row.len() != n) {
            return Err(DiagramError::BadShape(n));
        }
        let m = modulus as i64;
        let exponents: Vec<Vec<u32>> = exponents
            .iter()
            .map(|row| row.iter().map(|e| e.rem_euclid(m) as u32).collect())
            .collect();
        let mut adjacency = vec![SupportSet::EMPTY; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && (exponents[i][j] + exponents[j][i]) % modulus != 0 {
                    adjacency[i].insert(j);
                }
            }
        }
        Ok(Self {
            modulus,
            exponents,
            adjacency,
        })
    }

    /// [`Self::from_exponents`] followed by [`Self::validate`].
    pub fn new(modulus: u32, exponents: Vec<Vec<i64>>) -> Result<Self, DiagramError> {
        let d = Self::from_exponents(modulus, exponents)?;
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        match (0..self.rank()).find(|&i| self.exponents[i][i] == 0) {
            Some(i) => Err(DiagramError::VertexLabelOne(i + 1)),
            None => Ok(()),
        }
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn exponent(&self, i: usize, j: usize) -> u32 {
        self.exponents[i][j]
    }

    /// `p_ij`, 0-based.
    pub fn p(&self, i: usize, j: usize) -> RootOfUnity {
        RootOfUnity::new(self.exponents[i][j] as i64, self.modulus).expect("positive modulus")
    }

    /// The edge label `p_ij p_ji`.
    pub fn edge_label(&self, i: usize, j: usize) -> RootOfUnity {
        self.p(i, j) * self.p(j, i)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> SupportSet {
        self.adjacency[i]
    }

    pub fn vertices(&self) -> SupportSet {
        SupportSet::full(self.rank())
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacent(i, j))
            .collect()
    }

    pub fn is_connected(&self, s: SupportSet) -> Result<bool, DiagramError> {
        if s.is_empty() {
            return Err(DiagramError::EmptySupport);
        }
        if !s.is_subset(self.vertices()) {
            return Err(DiagramError::SupportOutOfRange(s, self.rank()));
        }
        Ok(self.component_of(s, s.iter().next().unwrap()) == s)
    }

    /// The connected component of `start` inside the induced subgraph on `s`.
    pub fn component_of(&self, s: SupportSet, start: usize) -> SupportSet {
        let mut seen = SupportSet::from_indices([start]);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = SupportSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.adjacency[v]);
            }
            frontier = SupportSet(next.intersection(s).0 & !seen.0);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Connected components of the induced subgraph on `s`, ordered by least vertex.
    pub fn components(&self, s: SupportSet) -> Vec<SupportSet> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(v) = rest.iter().next() {
            let c = self.component_of(rest, v);
            rest = SupportSet(rest.0 & !c.0);
            out.push(c);
        }
        out
    }

    fn nonempty_subsets(&self) -> impl Iterator<Item = SupportSet> + '_ {
        (1..=self.vertices().0).map(SupportSet)
    }

    /// Connected nonempty vertex sets in ascending bitmask order.
    pub fn connected_subsets(&self) -> Vec<SupportSet> {
        self.nonempty_subsets()
            .filter(|&s| self.is_connected(s).unwrap())
            .collect()
    }

    pub fn disconnected_subsets(&self) -> Vec<SupportSet> {
        self.nonempty_subsets()
            .filter(|&s| !self.is_connected(s).unwrap())
            .collect()
    }

    /// The diagram induced on `s`, vertices renumbered in ascending order.
    pub fn restrict(&self, s: SupportSet) -> GeneralizedDynkinDiagram {
        let idx: Vec<usize> = s.iter().filter(|&i| i < self.rank()).collect();
        let exps = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.exponents[i][j] as i64).collect())
            .collect();
        Self::from_exponents(self.modulus, exps).expect("restriction of a valid matrix")
    }

    pub fn to_file(&self) -> DiagramFile {
        DiagramFile {
            rank: self.rank(),
            modulus: self.modulus,
            exponents: self
                .exponents
                .iter()
                .map(|row| row.iter().map(|&e| e as i64).collect())
                .collect(),
        }
    }

    pub fn from_file(file: &DiagramFile) -> Result<Self, DiagramError> {
        if file.exponents.len() != file.rank {
            return Err(DiagramError::BadShape(file.rank));
        }
        Self::new(file.modulus, file.exponents.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("diagram serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let file: DiagramFile =
            serde_json::from_str(text).map_err(|e| DiagramError::File(e.to_string()))?;
        Self::from_file(&file)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanFamily {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A finite Cartan type with the vertex numbering of the standard pictures:
/// chains are numbered left to right, `D_n` has tips `n-1, n` on `n-2`, and
/// `E_n` hangs vertex `n` off vertex `n-3` of the chain `1..n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanPreset {
    family: CartanFamily,
    rank: usize,
}

impl CartanPreset {
    pub fn new(family: CartanFamily, rank: usize) -> Result<Self, DiagramError> {
        use CartanFamily::*;
        let ok = match family {
            A => (1..=32).contains(&rank),
            B | C => (2..=32).contains(&rank),
            D => (3..=32).contains(&rank),
            E => (6..=8).contains(&rank),
            F => rank == 4,
            G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(DiagramError::BadPresetRank { family, rank })
        }
    }

    pub fn family(&self) -> CartanFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Vertex label exponents: `p_ii = q^{v_i}`.
    pub fn vertex_exponents(&self) -> Vec<i64> {
        use CartanFamily::*;
        let n = self.rank;
        match self.family {
            A | D | E => vec![1; n],
            B => (0..n).map(|i| if i + 1 < n { 2 } else { 1 }).collect(),
            C => (0..n).map(|i| if i + 1 < n { 1 } else { 2 }).collect(),
            F => vec![2, 2, 1, 1],
            G => vec![1, 3],
        }
    }

    /// Edges `(i, j, e)` with `i < j` (0-based) and `p_ij p_ji = q^e`.
    pub fn edge_exponents(&self) -> Vec<(usize, usize, i64)> {
        use CartanFamily::*;
        let n = self.rank;
        let chain = |len: usize, e: i64| (0..len.saturating_sub(1)).map(move |i| (i, i + 1, e));
        match self.family {
            A => chain(n, -1).collect(),
            B => chain(n, -2).collect(),
            C => chain(n, -1)
                .map(|(i, j, e)| if j + 1 == n { (i, j, -2) } else { (i, j, e) })
                .collect(),
            D => {
                let mut edges: Vec<_> = chain(n - 1, -1).collect();
                edges.push((n - 3, n - 1, -1));
                edges
            }
            E => {
                let mut edges: Vec<_> = chain(n - 1, -1).collect();
                edges.push((n - 4, n - 1, -1));
                edges
            }
            F => vec![(0, 1, -2), (1, 2, -2), (2, 3, -1)],
            G => vec![(0, 1, -3)],
        }
    }

    /// The Cartan matrix `a_ij = 2(α_i, α_j)/(α_i, α_i)` in this numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let v = self.vertex_exponents();
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
        }
        for (i, j, e) in self.edge_exponents() {
            a[i][j] = e / v[i];
            a[j][i] = e / v[j];
        }
        a
    }

    /// The braiding with `q = ζ_M^{q_exponent}`: `p_ii = q^{v_i}`, and for
    /// each edge `p_ij = q^e`, `p_ji = 1` (`i < j`).
    pub fn diagram(&self, modulus: u32, q_exponent: i64) -> Result<GeneralizedDynkinDiagram, DiagramError> {
        let n = self.rank;
        let mut exps = vec![vec![0i64; n]; n];
        for (i, v) in self.vertex_exponents().into_iter().enumerate() {
            exps[i][i] = v * q_exponent;
        }
        for (i, j, e) in self.edge_exponents() {
            exps[i][j] = e * q_exponent;
        }
        GeneralizedDynkinDiagram::new(modulus, exps)
    }

    /// `q = ζ_N`, `M = N`.
    pub fn at_order(&self, n: u32) -> Result<GeneralizedDynkinDiagram, DiagramError> {
        self.diagram(n, 1)
    }
}

impl fmt::Display for CartanPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanPreset {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DiagramError::BadPreset(s.to_string());
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => CartanFamily::A,
            Some('B') => CartanFamily::B,
            Some('C') => CartanFamily::C,
            Some('D') => CartanFamily::D,
            Some('E') => CartanFamily::E,
            Some('F') => CartanFamily::F,
            Some('G') => CartanFamily::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanPreset::new(family, rank)
    }
}

/// A preset pinned to `ord(q) = N`, written `A3@N=2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PresetAt {
    pub preset: CartanPreset,
    pub order: u32,
}

impl PresetAt {
    pub fn diagram(&self) -> Result<GeneralizedDynkinDiagram, DiagramError> {
        self.preset.at_order(self.order)
    }
}

impl fmt::Display for PresetAt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@N={}", self.preset, self.order)
    }
}

impl FromStr for PresetAt {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DiagramError::BadPreset(s.to_string());
        let (p, n) = s.split_once('@').ok_or_else(bad)?;
        let n = n.trim().strip_prefix("N=").ok_or_else(bad)?;
        let order: u32 = n.parse().map_err(|_| bad())?;
        if order == 0 {
            return Err(bad());
        }
        Ok(PresetAt {
            preset: p.parse()?,
            order,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn preset(s: &str) -> CartanPreset {
        s.parse().unwrap()
    }

    fn set(one_based: &[usize]) -> SupportSet {
        SupportSet::from_indices(one_based.iter().map(|i| i - 1))
    }

    #[test]
    fn validate_examples() {
        assert!(preset("A2").at_order(3).is_ok());
        assert_eq!(preset("B2").at_order(2), Err(DiagramError::VertexLabelOne(1)));
        let d = GeneralizedDynkinDiagram::new(2, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(d.is_ok());
        assert_eq!(
            GeneralizedDynkinDiagram::new(2, vec![vec![1, 0], vec![0]]),
            Err(DiagramError::BadShape(2))
        );
    }

    #[test]
    fn connectivity_examples() {
        let a3 = preset("A3").at_order(2).unwrap();
        assert!(!a3.is_connected(set(&[1, 3])).unwrap());
        assert!(a3.is_connected(set(&[1, 2, 3])).unwrap());
        assert_eq!(a3.is_connected(SupportSet::EMPTY), Err(DiagramError::EmptySupport));
        let d4 = preset("D4").at_order(3).unwrap();
        assert_eq!(d4.edges(), vec![(0, 1), (1, 2), (1, 3)]);
        assert!(!d4.is_connected(set(&[3, 4])).unwrap());
    }

    #[test]
    fn disconnected_subset_listing() {
        let a3 = preset("A3").at_order(2).unwrap();
        assert_eq!(a3.disconnected_subsets(), vec![set(&[1, 3])]);
        let a4 = preset("A4").at_order(2).unwrap();
        let mut expected = vec![set(&[1, 3]), set(&[1, 4]), set(&[2, 4]), set(&[1, 2, 4]), set(&[1, 3, 4])];
        expected.sort();
        assert_eq!(a4.disconnected_subsets(), expected);
        let complete = GeneralizedDynkinDiagram::new(3, vec![vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]]).unwrap();
        assert!(complete.disconnected_subsets().is_empty());
    }

    #[test]
    fn rank_two_presets_match_drawn_labels() {
        let q = |e: i64, n: u32| RootOfUnity::new(e, n).unwrap();
        for n in [4u32, 5, 7, 8] {
            let a2 = preset("A2").at_order(n).unwrap();
            assert_eq!((a2.p(0, 0), a2.p(1, 1), a2.edge_label(0, 1)), (q(1, n), q(1, n), q(-1, n)));
            let b2 = preset("B2").at_order(n).unwrap();
            assert_eq!((b2.p(0, 0), b2.p(1, 1), b2.edge_label(0, 1)), (q(2, n), q(1, n), q(-2, n)));
            let c2 = preset("C2").at_order(n).unwrap();
            assert_eq!((c2.p(0, 0), c2.p(1, 1), c2.edge_label(0, 1)), (q(1, n), q(2, n), q(-2, n)));
            let g2 = preset("G2").at_order(n).unwrap();
            assert_eq!((g2.p(0, 0), g2.p(1, 1), g2.edge_label(0, 1)), (q(1, n), q(3, n), q(-3, n)));
        }
    }

    #[test]
    fn cartan_matrices() {
        assert_eq!(preset("B3").cartan_matrix(), vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]);
        assert_eq!(preset("C3").cartan_matrix(), vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]);
        assert_eq!(preset("G2").cartan_matrix(), vec![vec![2, -3], vec![-1, 2]]);
        let e6 = preset("E6").cartan_matrix();
        assert_eq!(e6[2][5], -1);
        assert_eq!(e6[5][2], -1);
    }

    #[test]
    fn preset_parsing() {
        let p: PresetAt = "A3@N=2".parse().unwrap();
        assert_eq!(p.preset, preset("A3"));
        assert_eq!(p.order, 2);
        assert_eq!(p.to_string(), "A3@N=2");
        assert!("E9".parse::<CartanPreset>().is_err());
        assert!("F3".parse::<CartanPreset>().is_err());
        assert!("X2@N=3".parse::<PresetAt>().is_err());
        assert!("A2@3".parse::<PresetAt>().is_err());
    }

    fn all_presets(max_rank: usize) -> Vec<CartanPreset> {
        let mut out = Vec::new();
        for n in 1..=max_rank {
            for f in ["A", "B", "C", "D", "E", "F", "G"] {
                if let Ok(p) = format!("{f}{n}").parse() {
                    out.push(p);
                }
            }
        }
        out
    }

    fn union_find_connected(d: &GeneralizedDynkinDiagram, s: SupportSet) -> bool {
        let mut parent: Vec<usize> = (0..d.rank()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (i, j) in d.edges() {
            if s.contains(i) && s.contains(j) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
        let roots: std::collections::BTreeSet<usize> = s.iter().map(|i| find(&mut parent, i)).collect();
        roots.len() == 1
    }

    #[test]
    fn connectivity_matches_union_find() {
        for p in all_presets(8) {
            let d = p.at_order(5).unwrap();
            let connected = d.connected_subsets();
            let disconnected = d.disconnected_subsets();
            assert_eq!(connected.len() + disconnected.len(), (1usize << d.rank()) - 1);
            for s in (1..=d.vertices().0).map(SupportSet) {
                assert_eq!(d.is_connected(s).unwrap(), union_find_connected(&d, s), "{p} {s}");
            }
        }
    }

    #[test]
    fn presets_round_trip_through_files() {
        for p in all_presets(8) {
            let d = p.at_order(7).unwrap();
            let text = d.to_json();
            let back = GeneralizedDynkinDiagram::from_json(&text).unwrap();
            assert_eq!(back, d);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn restriction_keeps_labels() {
        let d = preset("A4").at_order(5).unwrap();
        let sub = d.restrict(set(&[2, 3]));
        assert_eq!(sub.rank(), 2);
        assert_eq!(sub.edge_label(0, 1), d.edge_label(1, 2));
        assert_eq!(d.components(set(&[1, 2, 4])), vec![set(&[1, 2]), set(&[4])]);
    }
}
