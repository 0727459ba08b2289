//! Exact scalars for diagonal braidings.
//!
//! Every braiding entry is a power of one fixed primitive `M`-th root of
//! unity `ζ_M`, so the multiplicative part ([`RootOfUnity`]) is modular
//! integer arithmetic. Linear combinations live in the cyclotomic field
//! `Q(ζ_M)` ([`Cyclotomic`]), stored as rational coefficient vectors reduced
//! modulo the cyclotomic polynomial `Φ_M`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("root-of-unity modulus must be positive")]
    ZeroModulus,
    #[error("mixed root-of-unity moduli {0} and {1}")]
    ModulusMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
}

/// The scalar `ζ_M^e`, stored as the exponent `e` modulo `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    exponent: u32,
    modulus: u32,
}

impl RootOfUnity {
    pub fn new(exponent: i64, modulus: u32) -> Result<Self, ScalarError> {
        if modulus == 0 {
            return Err(ScalarError::ZeroModulus);
        }
        let exponent = exponent.rem_euclid(modulus as i64) as u32;
        Ok(Self { exponent, modulus })
    }

    /// # Panics
    /// If `modulus` is zero.
    pub fn one(modulus: u32) -> Self {
        Self::new(0, modulus).expect("positive modulus")
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_one(self) -> bool {
        self.exponent == 0
    }

    pub fn checked_mul(self, other: Self) -> Result<Self, ScalarError> {
        if self.modulus != other.modulus {
            return Err(ScalarError::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(Self {
            exponent: (self.exponent + other.exponent) % self.modulus,
            modulus: self.modulus,
        })
    }

    pub fn inv(self) -> Self {
        Self {
            exponent: (self.modulus - self.exponent) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn pow(self, k: i64) -> Self {
        let m = self.modulus as i64;
        let e = (self.exponent as i64 * k.rem_euclid(m)).rem_euclid(m);
        Self {
            exponent: e as u32,
            modulus: self.modulus,
        }
    }

    /// Multiplicative order: the least `k ≥ 1` with `ζ^{ek} = 1`.
    pub fn order(self) -> u32 {
        self.modulus / self.modulus.gcd(&self.exponent)
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs)
            .unwrap_or_else(|e| panic!("root-of-unity product: {e}"))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ_{}^{}", self.modulus, self.exponent)
    }
}

/// Precomputed data for `Q(ζ_M)`.
#[derive(Debug)]
pub struct CyclotomicField {
    modulus: u32,
    degree: usize,
    // x^k mod Φ_M for 0 ≤ k < M
    reductions: Vec<Vec<BigRational>>,
    units: Vec<u32>,
}

impl CyclotomicField {
    fn build(modulus: u32) -> Self {
        let phi = cyclotomic_polynomial(modulus);
        let degree = phi.len() - 1;
        let mut reductions = Vec::with_capacity(modulus as usize);
        let mut current = vec![BigInt::zero(); degree];
        current[0] = BigInt::one();
        for _ in 0..modulus {
            reductions.push(current.iter().cloned().map(BigRational::from_integer).collect());
            // multiply by x and reduce with the monic Φ_M
            let top = current[degree - 1].clone();
            let mut next = vec![BigInt::zero(); degree];
            for i in (1..degree).rev() {
                next[i] = current[i - 1].clone();
            }
            if !top.is_zero() {
                for (i, c) in phi.iter().take(degree).enumerate() {
                    next[i] -= &top * c;
                }
            }
            current = next;
        }
        let units = (1..=modulus).filter(|k| modulus.gcd(k) == 1).map(|k| k % modulus).collect();
        Self {
            modulus,
            degree,
            reductions,
            units,
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// `deg Φ_M = φ(M)`.
    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Integer coefficients (ascending) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m > 0, "cyclotomic polynomial of order 0");
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![BigInt::zero(); m as usize + 1];
    poly[0] = -BigInt::one();
    poly[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m % d == 0) {
        poly = divide_monic(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

static FIELDS: Lazy<Mutex<HashMap<u32, Arc<CyclotomicField>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Shared field data for `Q(ζ_M)`, built once per modulus.
pub fn cyclotomic_field(modulus: u32) -> Arc<CyclotomicField> {
    assert!(modulus > 0, "cyclotomic field of modulus 0");
    let mut fields = FIELDS.lock().expect("field cache poisoned");
    fields
        .entry(modulus)
        .or_insert_with(|| Arc::new(CyclotomicField::build(modulus)))
        .clone()
}

/// An element of `Q(ζ_M)` in the power basis `1, ζ, …, ζ^{φ(M)-1}`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(modulus: u32) -> Self {
        let field = cyclotomic_field(modulus);
        let coeffs = vec![BigRational::zero(); field.degree];
        Self { field, coeffs }
    }

    pub fn one(modulus: u32) -> Self {
        Self::from_integer(modulus, 1)
    }

    pub fn from_integer(modulus: u32, value: i64) -> Self {
        Self::from_rational(modulus, BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_rational(modulus: u32, value: BigRational) -> Self {
        let mut z = Self::zero(modulus);
        z.coeffs[0] = value;
        z
    }

    /// Embeds `ζ_M^e`.
    pub fn from_root(root: RootOfUnity) -> Self {
        let field = cyclotomic_field(root.modulus());
        let coeffs = field.reductions[root.exponent() as usize].clone();
        Self { field, coeffs }
    }

    pub fn modulus(&self) -> u32 {
        self.field.modulus
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        if self.field.modulus != other.field.modulus {
            return Err(ScalarError::ModulusMismatch(self.field.modulus, other.field.modulus));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        let deg = self.field.degree;
        if deg == 1 {
            return Ok(Self {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut prod = vec![BigRational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                prod[i + j] += a * b;
            }
        }
        Ok(self.reduce(prod))
    }

    fn reduce(&self, poly: Vec<BigRational>) -> Self {
        let m = self.field.modulus as usize;
        let deg = self.field.degree;
        let mut coeffs = vec![BigRational::zero(); deg];
        for (k, c) in poly.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < deg {
                coeffs[k] += c;
            } else {
                for (t, r) in self.field.reductions[k % m].iter().enumerate() {
                    if !r.is_zero() {
                        coeffs[t] += &c * r;
                    }
                }
            }
        }
        Self {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// The Galois conjugate `ζ ↦ ζ^k` (`k` coprime to `M`).
    pub fn conjugate(&self, k: u32) -> Self {
        let m = self.field.modulus as usize;
        let mut poly = vec![BigRational::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[(i * k as usize) % m] += c;
        }
        self.reduce(poly)
    }

    /// Field inverse via the norm: `a⁻¹ = (∏_{σ≠1} σ(a)) / N(a)`.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut others = Self::one(self.field.modulus);
        for &k in self.field.units.iter().filter(|&&k| k != 1 % self.field.modulus) {
            others = &others * &self.conjugate(k);
        }
        let norm = &others * self;
        debug_assert!(norm.coeffs[1..].iter().all(Zero::is_zero));
        let n = norm.coeffs[0].clone();
        Ok(Self {
            field: self.field.clone(),
            coeffs: others.coeffs.iter().map(|c| c / &n).collect(),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(self * &other.inv()?)
    }

    /// `self · ζ^e`, cheaper than a general product.
    pub fn mul_root(&self, root: RootOfUnity) -> Self {
        assert_eq!(root.modulus(), self.field.modulus, "mixed root-of-unity moduli");
        if root.is_one() {
            return self.clone();
        }
        let e = root.exponent() as usize;
        let mut poly = vec![BigRational::zero(); self.field.modulus as usize];
        let m = self.field.modulus as usize;
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[(i + e) % m] += c;
        }
        self.reduce(poly)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.modulus == other.field.modulus && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.field.modulus, self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (sign, abs) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{abs}")?,
                _ if abs.is_one() => write!(f, "ζ^{i}")?,
                _ => write!(f, "{abs}·ζ^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$checked(rhs).unwrap_or_else(|e| panic!("cyclotomic arithmetic: {e}"))
            }
        }
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        assert_eq!(self.field.modulus, rhs.field.modulus, "mixed root-of-unity moduli");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        assert_eq!(self.field.modulus, rhs.field.modulus, "mixed root-of-unity moduli");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

/// `(1+p⁻¹)(1+p⁻¹+p⁻²)⋯(1+p⁻¹+⋯+p^{-(l-1)})`; nonzero iff `l < ord(p)`.
pub fn quantum_factorial(p: RootOfUnity, l: u32) -> Cyclotomic {
    let m = p.modulus();
    let inv = Cyclotomic::from_root(p.inv());
    let mut result = Cyclotomic::one(m);
    let mut partial = Cyclotomic::one(m);
    let mut power = Cyclotomic::one(m);
    for _ in 1..l {
        power = &power * &inv;
        partial += &power;
        result = &result * &partial;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zeta(e: i64, m: u32) -> Cyclotomic {
        Cyclotomic::from_root(RootOfUnity::new(e, m).unwrap())
    }

    #[test]
    fn order_examples() {
        assert_eq!(RootOfUnity::new(0, 12).unwrap().order(), 1);
        assert_eq!(RootOfUnity::new(6, 12).unwrap().order(), 2);
        assert_eq!(RootOfUnity::new(8, 12).unwrap().order(), 3);
        // repeated multiplication agrees
        let s = RootOfUnity::new(8, 12).unwrap();
        let mut acc = s;
        let mut k = 1;
        while !acc.is_one() {
            acc = acc * s;
            k += 1;
        }
        assert_eq!(k, 3);
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |m| {
            cyclotomic_polynomial(m)
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn arithmetic_examples() {
        assert!((zeta(1, 2) * zeta(1, 2)).is_one());
        assert_eq!(
            Cyclotomic::one(5) + Cyclotomic::one(5),
            Cyclotomic::from_integer(5, 2)
        );
        let s = zeta(0, 3) + zeta(1, 3) + zeta(2, 3);
        assert!((s + Cyclotomic::zero(3)).is_zero());
    }

    #[test]
    fn inverse_and_errors() {
        assert_eq!(Cyclotomic::zero(7).inv(), Err(ScalarError::DivisionByZero));
        let a = Cyclotomic::one(7) + zeta(3, 7);
        assert!((&a * &a.inv().unwrap()).is_one());
        assert_eq!(
            Cyclotomic::one(3).checked_add(&Cyclotomic::one(4)),
            Err(ScalarError::ModulusMismatch(3, 4))
        );
        assert_eq!(
            RootOfUnity::one(3).checked_mul(RootOfUnity::one(6)),
            Err(ScalarError::ModulusMismatch(3, 6))
        );
    }

    #[test]
    fn embedding_is_multiplicative() {
        for m in [1u32, 2, 3, 4, 5, 6, 8, 9, 12] {
            for a in 0..m as i64 {
                for b in 0..m as i64 {
                    let ra = RootOfUnity::new(a, m).unwrap();
                    let rb = RootOfUnity::new(b, m).unwrap();
                    assert_eq!(
                        Cyclotomic::from_root(ra * rb),
                        Cyclotomic::from_root(ra) * Cyclotomic::from_root(rb)
                    );
                    assert_eq!(Cyclotomic::from_root(ra).mul_root(rb), Cyclotomic::from_root(ra * rb));
                }
            }
        }
    }

    #[test]
    fn quantum_factorial_vanishes_at_order() {
        for m in [2u32, 3, 4, 5, 6, 12] {
            for e in 1..m as i64 {
                let p = RootOfUnity::new(e, m).unwrap();
                for l in 1..=m + 1 {
                    assert_eq!(!quantum_factorial(p, l).is_zero(), l < p.order(), "p={p} l={l}");
                }
            }
        }
    }

    fn arb_element(m: u32) -> impl Strategy<Value = Cyclotomic> {
        let deg = cyclotomic_field(m).degree();
        proptest::collection::vec((-6i64..7, 1i64..4), deg).prop_map(move |cs| {
            let mut z = Cyclotomic::zero(m);
            for (i, (n, d)) in cs.into_iter().enumerate() {
                let term = Cyclotomic::from_rational(m, BigRational::new(n.into(), d.into()));
                z += &term.mul_root(RootOfUnity::new(i as i64, m).unwrap());
            }
            z
        })
    }

    fn arb_triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
        prop_oneof![Just(3u32), Just(4), Just(5), Just(8), Just(12)]
            .prop_flat_map(|m| (arb_element(m), arb_element(m), arb_element(m)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn mul_associative_commutative((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn double_inverse((a, _b, _c) in arb_triple()) {
            if !a.is_zero() {
                prop_assert_eq!(a.inv().unwrap().inv().unwrap(), a);
            }
        }

        #[test]
        fn order_divides_modulus(m in 1u32..60, e in 0i64..200) {
            let r = RootOfUnity::new(e, m).unwrap();
            prop_assert_eq!(m % r.order(), 0);
            prop_assert!(r.pow(r.order() as i64).is_one());
        }
    }
}
