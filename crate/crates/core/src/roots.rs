//! Positive roots of finite Cartan types, root-vector heights, and the
//! dimension counts of `B(V)` and `L(V)`: the inclusion–exclusion oracle,
//! the chain and `D`-type recursions, and the printed closed forms.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::braided::{chi, MultiDegree};
use crate::diagram::{CartanFamily, CartanPreset, DiagramError, GeneralizedDynkinDiagram, PresetAt, SupportSet};
use crate::engine::{EngineError, NicholsEngine};
use crate::formula;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("root {0} has trivial height; diagram rejected")]
    HeightOne(String),
    #[error("{0} is not a path")]
    NotAPath(String),
    #[error("{0} is not of type D")]
    NotDType(String),
    #[error("no closed form for {0}")]
    UnsupportedPreset(String),
    #[error("subset enumeration is limited to rank 8, got {0}")]
    RankTooLarge(usize),
    #[error("closed form for {preset} is not an integer at N={order}")]
    NonIntegerClosedForm { preset: String, order: u32 },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Positive roots of a preset as coefficient vectors in the simple roots,
/// sorted by height then lexicographically.
pub fn positive_roots(preset: &CartanPreset) -> Vec<Vec<u32>> {
    let a = preset.cartan_matrix();
    let n = preset.rank();
    let mut known: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut layer: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    known.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                // β − kα_i roots for k = 1..=q
                let mut q = 0i64;
                let mut down = beta.clone();
                while down[i] > 0 {
                    down[i] -= 1;
                    if !known.contains(&down) {
                        break;
                    }
                    q += 1;
                }
                let pairing: i64 = (0..n).map(|j| beta[j] as i64 * a[i][j]).sum();
                if q - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        known.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }
    let mut roots: Vec<Vec<u32>> = known.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<u32>(), r.clone()));
    roots
}

fn format_root(beta: &[u32]) -> String {
    let parts: Vec<String> = beta
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| if c == 1 { format!("α{}", i + 1) } else { format!("{c}α{}", i + 1) })
        .collect();
    parts.join("+")
}

/// Positive roots of a preset at a given order of `q`, with heights.
#[derive(Debug, Clone)]
pub struct RootSystemData {
    preset: CartanPreset,
    order: u32,
    diagram: GeneralizedDynkinDiagram,
    roots: Vec<Vec<u32>>,
    supports: Vec<SupportSet>,
    heights: Vec<u32>,
}

impl RootSystemData {
    pub fn new(preset: CartanPreset, order: u32) -> Result<Self, RootError> {
        let diagram = preset.at_order(order)?;
        let roots = positive_roots(&preset);
        let heights = roots
            .iter()
            .map(|beta| {
                let d = MultiDegree(beta.clone());
                match chi(&diagram, &d, &d).order() {
                    1 => Err(RootError::HeightOne(format_root(beta))),
                    h => Ok(h),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let supports = roots.iter().map(|b| MultiDegree(b.clone()).support()).collect();
        Ok(Self {
            preset,
            order,
            diagram,
            roots,
            supports,
            heights,
        })
    }

    pub fn from_preset_at(p: &PresetAt) -> Result<Self, RootError> {
        Self::new(p.preset, p.order)
    }

    pub fn preset(&self) -> CartanPreset {
        self.preset
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.preset.rank()
    }

    pub fn diagram(&self) -> &GeneralizedDynkinDiagram {
        &self.diagram
    }

    pub fn roots(&self) -> &[Vec<u32>] {
        &self.roots
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    /// `N_β` for a positive root.
    pub fn root_height(&self, beta: &[u32]) -> Option<u32> {
        self.roots.iter().position(|r| r == beta).map(|i| self.heights[i])
    }

    /// `dim B(V) = ∏_β N_β`.
    pub fn dim_nichols(&self) -> BigInt {
        self.g(SupportSet::full(self.rank()))
    }

    /// Top degree of `B(V)`: `Σ_β ht(β)(N_β − 1)`.
    pub fn top_degree(&self) -> u32 {
        self.roots
            .iter()
            .zip(&self.heights)
            .map(|(r, h)| r.iter().sum::<u32>() * (h - 1))
            .sum()
    }

    /// A Nichols engine with the top degree as cutoff.
    pub fn engine(&self) -> NicholsEngine {
        NicholsEngine::new(self.diagram.clone(), Some(self.top_degree())).expect("cutoff supplied")
    }

    /// `g(S)`: PBW monomials with support inside `S`.
    pub fn g(&self, s: SupportSet) -> BigInt {
        self.supports
            .iter()
            .zip(&self.heights)
            .filter(|(sup, _)| sup.is_subset(s))
            .fold(BigInt::one(), |acc, (_, &h)| acc * h)
    }

    fn b(&self, s: SupportSet) -> BigInt {
        if s.is_empty() {
            BigInt::zero()
        } else {
            self.g(s) - 1
        }
    }

    /// `g` and `f` for every subset, indexed by bitmask (including `∅`).
    pub fn subset_counts(&self) -> Result<Vec<SubsetCount>, RootError> {
        let n = self.rank();
        if n > 8 {
            return Err(RootError::RankTooLarge(n));
        }
        let g: Vec<BigInt> = (0..1u32 << n).map(|m| self.g(SupportSet(m))).collect();
        // Möbius inversion over the subset lattice, one coordinate at a time
        let mut f = g.clone();
        for i in 0..n {
            for m in 0..1usize << n {
                if m & (1 << i) != 0 {
                    let lower = f[m ^ (1 << i)].clone();
                    f[m] -= lower;
                }
            }
        }
        Ok(g.into_iter()
            .zip(f)
            .enumerate()
            .map(|(m, (g, f))| SubsetCount {
                set: SupportSet(m as u32),
                g,
                f,
            })
            .collect())
    }

    /// `dim L(V) = Σ_{S connected} f(S)`.
    pub fn moebius_oracle(&self) -> Result<BigInt, RootError> {
        let mut total = BigInt::zero();
        for c in self.subset_counts()? {
            if !c.set.is_empty() && self.diagram.is_connected(c.set)? {
                total += c.f;
            }
        }
        Ok(total)
    }

    fn interval(lo: usize, hi: usize) -> SupportSet {
        SupportSet::from_indices(lo..=hi)
    }

    fn is_index_path(&self) -> bool {
        let n = self.rank();
        let edges: Vec<(usize, usize)> = self.diagram.edges();
        edges == (1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()
    }

    /// `L_{1,n}` by the chain recursion in the left-expanded form.
    pub fn path_recursion(&self) -> Result<BigInt, RootError> {
        if !self.is_index_path() {
            return Err(RootError::NotAPath(self.preset.to_string()));
        }
        Ok(self.path_table(false)[&(0, self.rank() - 1)].clone())
    }

    /// `L_{1,n}` by the mirrored expansion `B_{i,j} − Σ B_{i,k} L_{k+2,j} + Σ B_{i,k} L_{k+3,j}`.
    pub fn path_recursion_mirrored(&self) -> Result<BigInt, RootError> {
        if !self.is_index_path() {
            return Err(RootError::NotAPath(self.preset.to_string()));
        }
        Ok(self.path_table(true)[&(0, self.rank() - 1)].clone())
    }

    /// `L_{i,j}` for all intervals `i ≤ j` of the index order, 0-based.
    fn path_table(&self, mirrored: bool) -> HashMap<(usize, usize), BigInt> {
        let n = self.rank() as i64;
        let mut l: HashMap<(usize, usize), BigInt> = HashMap::new();
        let b = |i: i64, j: i64| -> BigInt {
            if i > j {
                BigInt::zero()
            } else {
                self.b(Self::interval(i as usize, j as usize))
            }
        };
        for len in 0..n {
            for i in 0..n - len {
                let j = i + len;
                let get = |l: &HashMap<(usize, usize), BigInt>, a: i64, c: i64| -> BigInt {
                    if a > c {
                        BigInt::zero()
                    } else {
                        l[&(a as usize, c as usize)].clone()
                    }
                };
                let mut v = b(i, j);
                for k in i..=j - 2 {
                    v -= if mirrored {
                        b(i, k) * get(&l, k + 2, j)
                    } else {
                        get(&l, i, k) * b(k + 2, j)
                    };
                }
                for k in i..=j - 3 {
                    v += if mirrored {
                        b(i, k) * get(&l, k + 3, j)
                    } else {
                        get(&l, i, k) * b(k + 3, j)
                    };
                }
                l.insert((i as usize, j as usize), v);
            }
        }
        l
    }

    /// `L_{1,n}` for `D_n` by the branch recursion; `D_3` is the `A_3` chain.
    pub fn dtype_recursion(&self) -> Result<BigInt, RootError> {
        if self.preset.family() != CartanFamily::D {
            return Err(RootError::NotDType(self.preset.to_string()));
        }
        let n = self.rank();
        if n == 3 {
            let a3 = CartanPreset::new(CartanFamily::A, 3)?;
            return RootSystemData::new(a3, self.order)?.path_recursion();
        }
        // the chain 1..n-2 is a path in index order, so interval values apply
        let chain = self.path_table(false);
        let l1 = |i: usize| chain[&(0, i - 1)].clone();
        let b = |lo: usize, hi: usize| self.b(Self::interval(lo - 1, hi - 1));
        let tips = SupportSet::from_indices([n - 2, n - 1]);
        let mut v = b(1, n) - l1(n - 3) * self.b(tips);
        for i in 1..=n.saturating_sub(4) {
            v -= l1(i) * (b(i + 2, n) - b(i + 3, n));
        }
        v -= b(n - 1, n - 1) * b(n, n);
        Ok(v)
    }

    /// The printed closed form for this preset at this order.
    pub fn closed_form(&self) -> Result<BigInt, RootError> {
        let value = closed_form_value(self.preset, self.order)?;
        if !value.is_integer() {
            return Err(RootError::NonIntegerClosedForm {
                preset: self.preset.to_string(),
                order: self.order,
            });
        }
        Ok(value.to_integer())
    }
}

/// Inclusion–exclusion data for one vertex subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetCount {
    pub set: SupportSet,
    pub g: BigInt,
    pub f: BigInt,
}

fn binom2(m: i64) -> u32 {
    if m < 2 {
        0
    } else {
        (m * (m - 1) / 2) as u32
    }
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

fn rat(v: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The nested-sum `A_n` expression at `x`: sum over `j` and over chains
/// `n = n_0 > n_1 > ⋯ > n_j` with `2(j−k)+1 ≤ n_k ≤ n_{k−1}−2` of
/// `(−1)^j ∏_k (x^{C(n_{k−1}−n_k, 2)} − x^{C(n_{k−1}−n_k−1, 2)}) · (x^{C(n_j+1, 2)} − 1)`.
pub fn a_series(n: u32, x: &BigRational) -> BigRational {
    fn chains(j: i64, k: i64, prev: i64, x: &BigRational, acc: BigRational, total: &mut BigRational) {
        if k > j {
            *total += acc * (pow(x, binom2(prev + 1)) - BigRational::one());
            return;
        }
        for nk in 2 * (j - k) + 1..=prev - 2 {
            let factor = pow(x, binom2(prev - nk)) - pow(x, binom2(prev - nk - 1));
            chains(j, k + 1, nk, x, acc.clone() * factor, total);
        }
    }
    let mut result = BigRational::zero();
    for j in 0..=(n as i64 - 1) / 2 {
        let mut total = BigRational::zero();
        chains(j, 1, n as i64, x, BigRational::one(), &mut total);
        if j % 2 == 0 {
            result += total;
        } else {
            result -= total;
        }
    }
    result
}

const F4_ODD: &str = "N^24-1-(N-1)(N^3-1)-(N^3-N)(N-1)";
const F4_EVEN: &str = "N^24/2^12-1-(N/2-1)(N^3-1)-((N/2)^3-N/2)(N-1)";
const E6: &str = "N^36-1-(N-1)(N^10-1)-(N^3-1)(N^4-1)-(N-1)(N^3-1)-(N^10-1)(N-1)+(N-1)(N^4-1)\
+(N-1)N^3(N-1)+(N^4-1)(N-1)-(N-1)N(N-1)";
const E7: &str = "N^63-1-(N-1)(N^20-1)-(N^3-1)(N^10-1)-(N^6-1)(N^4-1)-(N-1)(N^3-1)-(N^15-1)(N-1)+(N-1)(N^10-1)\
+(N-1)N(N^4-1)+(N-1)N^6(N-1)+(N^3-1)(N^4-1)+(N^3-1)N^3(N-1)+(N^7-1)(N-1)-(N-1)(N^4-1)-\
(N-1)N^3(N-1)-(N-1)N^2(N-1)-(N^3-1)N(N-1)+(N-1)N(N-1)";
const E8: &str = "N^120-1-(N-1)(N^36-1)-(N^3-1)(N^20-1)-(N^6-1)(N^10-1)-(N^10-1)(N^4-1)-(N-1)(N^3-1)\
-(N^21-1)(N-1)+(N-1)(N^20-1)\
+(N-1)N(N^10-1)+(N-1)N^3(N^4-1)+(N-1)N^10(N-1)+(N^3-1)(N^10-1)+(N^3-1)N(N^4-1)+(N^3-1)N^6(N-1)\
+(N^6-1)(N^4-1)+(N^6-1)N^3(N-1)\
+(N^11-1)(N-1)-(N-1)(N^10-1)-(N-1)N(N^4-1)-(N-1)N^6(N-1)-(N-1)N(N^4-1)-(N-1)N^4(N-1)-(N-1)N^4(N-1)\
-(N^3-1)(N^4-1)-(N^3-1)N^3(N-1)-(N^3-1)N^2(N-1)-(N^6-1)N(N-1)\
+(N-1)(N^4-1)+(N-1)N^3(N-1)+(N-1)N^2(N-1)+(N-1)N^2(N-1)+(N^3-1)N(N-1)-(N-1)N(N-1)";

/// The printed expression used for a preset at a given order, if it is one of
/// the single-line formulas (rank 2, `F_4`, `E_6`–`E_8`).
pub fn printed_expression(preset: CartanPreset, order: u32) -> Option<&'static str> {
    use CartanFamily::*;
    let even = order % 2 == 0;
    Some(match (preset.family(), preset.rank()) {
        (A, 2) => "N^3-1",
        (B | C, 2) if even => "N^4/4-1",
        (B | C, 2) => "N^4-1",
        (G, 2) if order % 3 == 0 => "N^6/27-1",
        (G, 2) => "N^6-1",
        (F, 4) if even => F4_EVEN,
        (F, 4) => F4_ODD,
        (E, 6) => E6,
        (E, 7) => E7,
        (E, 8) => E8,
        _ => return None,
    })
}

/// Exact value of the closed form (possibly non-integer if the printed
/// expression were wrong in a way that broke integrality).
pub fn closed_form_value(preset: CartanPreset, order: u32) -> Result<BigRational, RootError> {
    use CartanFamily::*;
    if let Some(text) = printed_expression(preset, order) {
        return Ok(formula::evaluate(text, &rat(order)).expect("built-in expressions parse"));
    }
    let n = preset.rank() as u32;
    let big_n = rat(order);
    let half = &big_n / rat(2);
    let two = rat(2);
    let even = order % 2 == 0;
    let one = BigRational::one();
    let sum = |term: &dyn Fn(u32) -> BigRational, upto: u32| -> BigRational {
        (1..=upto).fold(BigRational::zero(), |acc, i| acc + term(i))
    };
    let value = match preset.family() {
        A if n > 2 => a_series(n, &big_n),
        B | C if n > 2 && !even => {
            let t = |i: u32| {
                a_series(i, &big_n) * (pow(&big_n, (n - i - 1).pow(2)) - pow(&big_n, (n - i - 2).pow(2)))
            };
            pow(&big_n, n * n) - &one - sum(&t, n - 2)
        }
        B if n > 2 => {
            let t = |i: u32| {
                let (a, b) = (n - i - 1, n - i - 2);
                let first = pow(&big_n, a * a) / pow(&two, a * b);
                let second = pow(&big_n, b * b) / pow(&two, b * b.saturating_sub(1));
                a_series(i, &half) * (first - second)
            };
            pow(&big_n, n * n) / pow(&two, n * (n - 1)) - &one - sum(&t, n - 2)
        }
        C if n > 2 => {
            let t = |i: u32| {
                let (a, b) = (n - i - 1, n - i - 2);
                a_series(i, &big_n) * (pow(&big_n, a * a) / pow(&two, a) - pow(&big_n, b * b) / pow(&two, b))
            };
            pow(&big_n, n * n) / pow(&two, n) - &one - sum(&t, n - 2)
        }
        D => {
            let t = |i: u32| {
                let (a, b) = (n - i - 1, n - i - 2);
                a_series(i, &big_n) * (pow(&big_n, a * b) - pow(&big_n, b * b.saturating_sub(1)))
            };
            let nm1 = &big_n - &one;
            pow(&big_n, n * n - n) - &one - sum(&t, n - 3) - &nm1 * &nm1
        }
        _ => return Err(RootError::UnsupportedPreset(preset.to_string())),
    };
    Ok(value)
}

fn serialize_big<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn serialize_big_opt<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// `dim L(V)` per method; absent methods do not apply or were not run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MethodValues {
    #[serde(serialize_with = "serialize_big")]
    pub oracle: BigInt,
    #[serde(serialize_with = "serialize_big_opt")]
    pub recursion: Option<BigInt>,
    #[serde(serialize_with = "serialize_big_opt")]
    pub closed_form: Option<BigInt>,
    #[serde(serialize_with = "serialize_big_opt")]
    pub engine: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub method: String,
    #[serde(serialize_with = "serialize_big")]
    pub expected: BigInt,
    #[serde(serialize_with = "serialize_big")]
    pub got: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub preset: String,
    #[serde(rename = "N")]
    pub order: u32,
    #[serde(serialize_with = "serialize_big")]
    pub dim_b: BigInt,
    pub methods: MethodValues,
    pub agree: bool,
    pub errata: Vec<Erratum>,
}

impl fmt::Display for DimensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<BigInt>| v.as_ref().map_or("-".to_string(), ToString::to_string);
        write!(
            f,
            "{}@N={}  dim B = {}  oracle = {}  recursion = {}  closed form = {}  engine = {}  {}",
            self.preset,
            self.order,
            self.dim_b,
            self.methods.oracle,
            show(&self.methods.recursion),
            show(&self.methods.closed_form),
            show(&self.methods.engine),
            if self.agree { "agree" } else { "DISAGREE" }
        )
    }
}

/// Engine runs are attempted only up to this `dim B(V)`.
pub const ENGINE_BUDGET: u64 = 64;

/// Runs every applicable method and compares each against the oracle.
pub fn verify(preset: CartanPreset, order: u32, with_engine: bool) -> Result<DimensionReport, RootError> {
    let data = RootSystemData::new(preset, order)?;
    let oracle = data.moebius_oracle()?;
    let recursion = match data.path_recursion() {
        Ok(v) => Some(v),
        Err(RootError::NotAPath(_)) => data.dtype_recursion().ok(),
        Err(e) => return Err(e),
    };
    let closed_form = match closed_form_value(preset, order) {
        Ok(v) if v.is_integer() => Some(v.to_integer()),
        // a non-integer value can never match; report its floor as the erratum
        Ok(v) => Some(v.floor().to_integer()),
        Err(RootError::UnsupportedPreset(_)) => None,
        Err(e) => return Err(e),
    };
    let dim_b = data.dim_nichols();
    let engine = if with_engine && dim_b <= BigInt::from(ENGINE_BUDGET) {
        let e = data.engine();
        Some(BigInt::from(e.lie_closure(e.cutoff())?.total_dim()))
    } else {
        None
    };
    let mut errata = Vec::new();
    for (name, v) in [("recursion", &recursion), ("closed_form", &closed_form), ("engine", &engine)] {
        if let Some(v) = v {
            if *v != oracle {
                errata.push(Erratum {
                    method: name.to_string(),
                    expected: oracle.clone(),
                    got: v.clone(),
                });
            }
        }
    }
    Ok(DimensionReport {
        preset: preset.to_string(),
        order,
        dim_b,
        methods: MethodValues {
            oracle,
            recursion,
            closed_form,
            engine,
        },
        agree: errata.is_empty(),
        errata,
    })
}

/// Residue classes of `N` on which a family's closed form is a single expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CongruenceClass {
    All,
    Odd,
    Even,
    NotDivisibleBy3,
    DivisibleBy3,
}

impl CongruenceClass {
    pub fn contains(self, order: u32) -> bool {
        match self {
            Self::All => true,
            Self::Odd => order % 2 == 1,
            Self::Even => order % 2 == 0,
            Self::NotDivisibleBy3 => order % 3 != 0,
            Self::DivisibleBy3 => order % 3 == 0,
        }
    }

    pub fn for_family(family: CartanFamily) -> &'static [CongruenceClass] {
        use CartanFamily::*;
        match family {
            A | D | E => &[Self::All],
            B | C | F => &[Self::Odd, Self::Even],
            G => &[Self::NotDivisibleBy3, Self::DivisibleBy3],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    #[serde(rename = "N")]
    pub order: u32,
    #[serde(serialize_with = "serialize_big")]
    pub oracle: BigInt,
    #[serde(serialize_with = "serialize_big")]
    pub closed_form: BigInt,
}

/// Evidence that a closed form equals the oracle on a congruence class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCertificate {
    pub preset: String,
    pub class: CongruenceClass,
    /// Both sides are polynomials in `N` of degree at most this on the class.
    pub degree_bound: usize,
    pub points: Vec<u32>,
    /// Whether the oracle and the recursion agreed wherever the recursion applies.
    pub recursion_consistent: bool,
    pub certified_equal: bool,
    pub discrepancies: Vec<Discrepancy>,
}

/// Checks a closed form against the oracle at `|Δ⁺|+1` valid orders in
/// each congruence class, plus every valid order in `{2,3,4,5}`.
pub fn certify_closed_form(preset: CartanPreset) -> Result<Vec<ClassCertificate>, RootError> {
    let degree_bound = positive_roots(&preset).len();
    let mut out = Vec::new();
    for &class in CongruenceClass::for_family(preset.family()) {
        let mut points = Vec::new();
        let mut candidate = 2;
        while points.len() < degree_bound + 1 {
            if class.contains(candidate) && RootSystemData::new(preset, candidate).is_ok() {
                points.push(candidate);
            }
            candidate += 1;
        }
        for small in 2..=5 {
            if class.contains(small) && !points.contains(&small) && RootSystemData::new(preset, small).is_ok() {
                points.push(small);
            }
        }
        points.sort_unstable();
        let mut discrepancies = Vec::new();
        let mut recursion_consistent = true;
        for &order in &points {
            let report = verify(preset, order, false)?;
            if report.errata.iter().any(|e| e.method == "recursion") {
                recursion_consistent = false;
            }
            if let Some(cf) = &report.methods.closed_form {
                if *cf != report.methods.oracle {
                    discrepancies.push(Discrepancy {
                        order,
                        oracle: report.methods.oracle.clone(),
                        closed_form: cf.clone(),
                    });
                }
            }
        }
        out.push(ClassCertificate {
            preset: preset.to_string(),
            class,
            degree_bound,
            certified_equal: discrepancies.is_empty(),
            points,
            recursion_consistent,
            discrepancies,
        });
    }
    Ok(out)
}

/// Presets with a closed form, up to rank 8.
pub fn closed_form_presets() -> Vec<CartanPreset> {
    use CartanFamily::*;
    let mut out = Vec::new();
    for (family, ranks) in [
        (A, 2..=8),
        (B, 2..=8),
        (C, 2..=8),
        (D, 3..=8),
        (E, 6..=8),
        (F, 4..=4),
        (G, 2..=2),
    ] {
        for r in ranks {
            out.push(CartanPreset::new(family, r).expect("valid rank"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(p: &str, n: u32) -> RootSystemData {
        RootSystemData::new(p.parse().unwrap(), n).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn root_counts() {
        for (p, count) in [
            ("A1", 1),
            ("A2", 3),
            ("A5", 15),
            ("B3", 9),
            ("C4", 16),
            ("D4", 12),
            ("D6", 30),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ] {
            assert_eq!(positive_roots(&p.parse().unwrap()).len(), count, "{p}");
        }
    }

    #[test]
    fn root_examples() {
        assert_eq!(positive_roots(&"A2".parse().unwrap()), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        let g2: BTreeSet<Vec<u32>> = positive_roots(&"G2".parse().unwrap()).into_iter().collect();
        let expected: BTreeSet<Vec<u32>> =
            [[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]].iter().map(|r| r.to_vec()).collect();
        assert_eq!(g2, expected);
    }

    #[test]
    fn height_examples() {
        assert_eq!(data("A2", 7).root_height(&[1, 1]), Some(7));
        assert_eq!(data("B2", 6).root_height(&[1, 2]), Some(3));
        assert_eq!(data("B2", 6).root_height(&[1, 1]), Some(6));
        let g2 = data("G2", 6);
        assert_eq!(g2.root_height(&[0, 1]), Some(2));
        assert_eq!(g2.root_height(&[3, 2]), Some(2));
        assert_eq!(g2.root_height(&[1, 1]), Some(6));
        assert!(matches!(
            RootSystemData::new("B2".parse().unwrap(), 2),
            Err(RootError::Diagram(DiagramError::VertexLabelOne(1)))
        ));
    }

    #[test]
    fn dim_nichols_examples() {
        assert_eq!(data("A2", 3).dim_nichols(), big(27));
        assert_eq!(data("F4", 3).dim_nichols(), num_traits::pow(big(3), 24));
        assert_eq!(data("C3", 4).dim_nichols(), num_traits::pow(big(4), 9) / 8);
        assert_eq!(data("A2", 2).top_degree(), 4);
        assert_eq!(data("A2", 3).top_degree(), 8);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(data("A3", 2).moebius_oracle().unwrap(), big(62));
        assert_eq!(data("A4", 2).moebius_oracle().unwrap(), big(1010));
        assert_eq!(data("D4", 2).moebius_oracle().unwrap(), big(4091));
        for n in 2..7 {
            assert_eq!(data("A2", n).moebius_oracle().unwrap(), big((n as i64).pow(3) - 1));
        }
        let counts = data("A3", 2).subset_counts().unwrap();
        let g: Vec<BigInt> = counts.iter().skip(1).map(|c| c.g.clone()).collect();
        assert_eq!(g, [2, 2, 8, 2, 4, 8, 64].map(big));
        assert_eq!(counts[0b101].f, big(1));
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(data("A3", 2).path_recursion().unwrap(), big(62));
        assert_eq!(data("A4", 2).path_recursion().unwrap(), big(1010));
        assert_eq!(data("A2", 3).path_recursion().unwrap(), big(26));
        assert_eq!(data("D4", 2).dtype_recursion().unwrap(), big(4091));
        assert_eq!(data("D3", 3).dtype_recursion().unwrap(), data("A3", 3).moebius_oracle().unwrap());
        assert!(matches!(data("D4", 2).path_recursion(), Err(RootError::NotAPath(_))));
        assert!(matches!(data("A3", 2).dtype_recursion(), Err(RootError::NotDType(_))));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(data("F4", 3).closed_form().unwrap(), big(282429536380));
        assert_eq!(data("A3", 2).closed_form().unwrap(), big(62));
        assert_eq!(data("A4", 2).closed_form().unwrap(), big(1010));
        assert_eq!(data("G2", 6).closed_form().unwrap(), big(1727));
        assert_eq!(data("D4", 2).closed_form().unwrap(), big(4091));
        assert!(matches!(data("A1", 3).closed_form(), Err(RootError::UnsupportedPreset(_))));
    }

    #[test]
    fn verify_examples() {
        let r = verify("A3".parse().unwrap(), 2, false).unwrap();
        assert!(r.agree);
        assert_eq!(r.methods.recursion, Some(big(62)));
        let r = verify("A2".parse().unwrap(), 2, true).unwrap();
        assert_eq!(r.methods.engine, Some(big(7)));
        assert!(r.agree);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"N\":2"));
        assert!(json.contains("\"oracle\":\"7\""));
    }
}
