//! Exact arithmetic in `Z[ω_p]`, additive characters, cyclotomic classes and
//! periods.
//!
//! A [`CycInt`] is stored in the basis `1, ω, ..., ω^{p-2}`: the relation
//! `1 + ω + ... + ω^{p-1} = 0` eliminates `ω^{p-1}`, so two values are equal
//! exactly when their coefficient vectors are.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, FiniteField};
use crate::util::{checked_pow, is_prime};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CycIntRepr", into = "CycIntRepr")]
pub struct CycInt {
    p: u32,
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct CycIntRepr {
    p: u32,
    coeffs: Vec<i64>,
}

impl TryFrom<CycIntRepr> for CycInt {
    type Error = Error;

    fn try_from(r: CycIntRepr) -> Result<Self> {
        CycInt::from_coeffs(r.p, r.coeffs)
    }
}

impl From<CycInt> for CycIntRepr {
    fn from(c: CycInt) -> Self {
        CycIntRepr { p: c.p, coeffs: c.coeffs }
    }
}

/// Number of stored coefficients for `Z[ω_p]`.
pub(crate) fn width(p: u32) -> usize {
    (p as usize - 1).max(1)
}

/// Folds a length-`p` vector over `1, ω, ..., ω^{p-1}` into canonical form.
pub(crate) fn canonicalize_into(p: u32, redundant: &[i64], out: &mut [i64]) {
    let p = p as usize;
    if p == 2 {
        out[0] = redundant[0] - redundant[1];
        return;
    }
    let top = redundant[p - 1];
    for j in 0..p - 1 {
        out[j] = redundant[j] - top;
    }
}

impl CycInt {
    pub fn from_coeffs(p: u32, coeffs: Vec<i64>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if coeffs.len() != width(p) {
            return Err(Error::Dimension { expected: width(p), got: coeffs.len() });
        }
        Ok(CycInt { p, coeffs })
    }

    /// Canonical value of `Σ_j v[j] ω^j` for a length-`p` vector `v`.
    pub fn from_redundant(p: u32, redundant: &[i64]) -> Self {
        assert_eq!(redundant.len(), p as usize);
        let mut coeffs = vec![0; width(p)];
        canonicalize_into(p, redundant, &mut coeffs);
        CycInt { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        CycInt { p, coeffs: vec![0; width(p)] }
    }

    pub fn one(p: u32) -> Self {
        Self::int_embed(p, 1)
    }

    pub fn int_embed(p: u32, n: i64) -> Self {
        let mut c = Self::zero(p);
        c.coeffs[0] = n;
        c
    }

    /// `ω_p^j`, with `j` taken mod `p`.
    pub fn monomial(p: u32, j: i64) -> Self {
        let j = j.rem_euclid(p as i64) as usize;
        let mut r = vec![0i64; p as usize];
        r[j] = 1;
        Self::from_redundant(p, &r)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The rational integer this value equals, if any.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::MixedRing(self.p, other.p));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let p = self.p as usize;
        let mut r = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                r[(i + j) % p] += a * b;
            }
        }
        Ok(Self::from_redundant(self.p, &r))
    }

    pub fn scalar_mul(&self, n: i64) -> Self {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|c| c * n).collect() }
    }

    /// Complex conjugate, i.e. the automorphism `ω ↦ ω^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// The automorphism `ω ↦ ω^c` for `c` prime to `p`.
    pub fn galois(&self, c: i64) -> Self {
        let p = self.p as i64;
        let mut r = vec![0i64; self.p as usize];
        for (j, &a) in self.coeffs.iter().enumerate() {
            r[(j as i64 * c).rem_euclid(p) as usize] += a;
        }
        Self::from_redundant(self.p, &r)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Divides every coefficient by `n`, if all are divisible.
    pub fn div_exact(&self, n: i64) -> Option<Self> {
        if n == 0 || self.coeffs.iter().any(|c| c % n != 0) {
            return None;
        }
        Some(CycInt { p: self.p, coeffs: self.coeffs.iter().map(|c| c / n).collect() })
    }

    /// Recognizes `±ω^j`, returning `(sign, j)` with `j` in `[0, p)`.
    pub fn as_signed_monomial(&self) -> Option<(i8, u32)> {
        for j in 0..self.p {
            let m = Self::monomial(self.p, j as i64);
            if *self == m {
                return Some((1, j));
            }
            if *self == -&m {
                return Some((-1, j));
            }
        }
        None
    }

    /// Complex value at `ω = e^{2πi/p}`, for diagnostics.
    pub fn to_complex(&self) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI / self.p as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, &c)| {
            let a = theta * j as f64;
            (re + c as f64 * a.cos(), im + c as f64 * a.sin())
        })
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt(p={}, {:?})", self.p, self.coeffs)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            match (j, mag) {
                (0, _) => write!(f, "{sign}{mag}")?,
                (_, 1) => write!(f, "{sign}w^{j}")?,
                _ => write!(f, "{sign}{mag}w^{j}")?,
            }
            first = false;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycInt> for &CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                self.$checked(rhs).expect("operands in different cyclotomic rings")
            }
        }

        impl $trait for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: CycInt) -> CycInt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.scalar_mul(-1)
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

/// `Σ_j counts[j] ω^j` for a histogram of exponents mod `p`.
pub fn from_exponent_counts(p: u32, counts: &[i64]) -> CycInt {
    CycInt::from_redundant(p, counts)
}

/// `ψ_α(x) = ω_p^{Tr(αx)}`.
pub fn additive_character(field: &FiniteField, alpha: Elem, x: Elem) -> CycInt {
    let t = field.trace(field.mul(alpha, x));
    CycInt::monomial(field.characteristic(), t as i64)
}

/// Multiplicative order of `p` modulo `e`.
fn order_mod(p: u64, e: u64) -> u64 {
    let mut acc = p % e;
    let mut ord = 1;
    while acc != 1 % e {
        acc = acc * p % e;
        ord += 1;
    }
    ord
}

/// Smallest `j ≥ 1` with `p^j ≡ -1 (mod e)`, or `None` when `-1 ∉ ⟨p⟩`.
pub fn minimal_j(p: u32, e: u32) -> Result<Option<u32>> {
    if e < 2 {
        return Err(Error::params("e must be at least 2"));
    }
    let (p64, e64) = (p as u64, e as u64);
    if num_integer::gcd(p64, e64) != 1 {
        return Err(Error::params(format!("gcd({p}, {e}) != 1")));
    }
    let ord = order_mod(p64, e64);
    let mut acc = 1u64;
    for j in 1..=ord {
        acc = acc * p64 % e64;
        if acc == e64 - 1 {
            return Ok(Some(j as u32));
        }
    }
    Ok(None)
}

/// The `e` cyclotomic classes `C_i = g^i ⟨g^e⟩` of a field.
#[derive(Clone, Debug)]
pub struct CyclotomicClasses {
    field: Arc<FiniteField>,
    e: u32,
    f: u32,
}

impl CyclotomicClasses {
    pub fn new(field: Arc<FiniteField>, e: u32) -> Result<Self> {
        let n = field.order() - 1;
        if e == 0 || n % e != 0 {
            return Err(Error::params(format!("e = {e} does not divide q - 1 = {n}")));
        }
        Ok(CyclotomicClasses { f: n / e, field, e })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    /// Class index of a nonzero element, `None` for zero.
    pub fn class_of(&self, a: Elem) -> Option<u32> {
        self.field.dlog(a).ok().map(|t| t % self.e)
    }

    pub fn class(&self, i: u32) -> Vec<Elem> {
        (0..self.f).map(|j| self.field.exp(i as i64 + (self.e * j) as i64)).collect()
    }
}

pub fn cyclotomic_classes(field: Arc<FiniteField>, e: u32) -> Result<CyclotomicClasses> {
    CyclotomicClasses::new(field, e)
}

/// `η_i = Σ_{z ∈ C_i} ψ_1(z)` by direct summation.
pub fn cyclotomic_periods_direct(classes: &CyclotomicClasses) -> Vec<CycInt> {
    let field = &classes.field;
    let p = field.characteristic();
    (0..classes.e)
        .map(|i| {
            let mut counts = vec![0i64; p as usize];
            for z in classes.class(i) {
                counts[field.trace(z) as usize] += 1;
            }
            from_exponent_counts(p, &counts)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UniformCase {
    A,
    B,
}

/// Closed-form uniform periods of order `e` over `F_q`, `q = p^{2jγ}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformPeriods {
    pub case: UniformCase,
    pub p: u32,
    pub e: u32,
    pub j: u32,
    pub gamma: u32,
    pub f: i64,
    pub q: i64,
    pub sqrt_q: i64,
    pub periods: Vec<i64>,
}

pub fn uniform_periods_closed_form(p: u32, e: u32, gamma: u32) -> Result<UniformPeriods> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if gamma == 0 {
        return Err(Error::params("gamma must be at least 1"));
    }
    let j = minimal_j(p, e)?
        .ok_or_else(|| Error::params(format!("no j with {p}^j ≡ -1 (mod {e})")))?;
    let overflow = || Error::params("q does not fit in 64 bits");
    let sqrt_q = checked_pow(p as u64, j * gamma).ok_or_else(overflow)?;
    let q = sqrt_q.checked_mul(sqrt_q).filter(|&q| q <= i64::MAX as u128).ok_or_else(overflow)?;
    let (sqrt_q, q) = (sqrt_q as i64, q as i64);
    let e64 = e as i64;
    if (q - 1) % e64 != 0 {
        return Err(Error::params(format!("e = {e} does not divide q - 1")));
    }
    let pj_plus_1 = (p as i64).pow(j) + 1;
    let quotient = pj_plus_1 / e64;
    let case_a = gamma % 2 == 1 && p % 2 == 1 && quotient % 2 == 1;
    let exact = |num: i64| -> Result<i64> {
        if num % e64 != 0 {
            return Err(Error::params(format!("{num} is not divisible by e = {e}")));
        }
        Ok(num / e64)
    };
    let periods = if case_a {
        // (p^j + 1)/e odd with p odd forces e even.
        if e % 2 != 0 {
            return Err(Error::Inconsistent(format!("case A with odd e = {e}")));
        }
        let rest = -exact(1 + sqrt_q)?;
        let special = sqrt_q - exact(sqrt_q + 1)?;
        (0..e).map(|i| if i == e / 2 { special } else { rest }).collect()
    } else {
        let s = if gamma % 2 == 0 { sqrt_q } else { -sqrt_q };
        let rest = exact(s - 1)?;
        let first = -s + rest;
        (0..e).map(|i| if i == 0 { first } else { rest }).collect()
    };
    Ok(UniformPeriods {
        case: if case_a { UniformCase::A } else { UniformCase::B },
        p,
        e,
        j,
        gamma,
        f: (q - 1) / e64,
        q,
        sqrt_q,
        periods,
    })
}

/// `(r_0, n_0)`: sums of `ω^a` over nonzero squares and nonsquares of `F_p`.
pub fn gauss_constants(p: u32) -> Result<(CycInt, CycInt)> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if p == 2 {
        return Err(Error::Unsupported("Gauss constants need an odd prime".into()));
    }
    let squares = quadratic_residues(p);
    let mut r = vec![0i64; p as usize];
    let mut n = vec![0i64; p as usize];
    for a in 1..p as usize {
        if squares[a] {
            r[a] = 1;
        } else {
            n[a] = 1;
        }
    }
    Ok((CycInt::from_redundant(p, &r), CycInt::from_redundant(p, &n)))
}

/// `p* = (-1)^{(p-1)/2} p`.
pub fn p_star(p: u32) -> i64 {
    if p % 4 == 1 {
        p as i64
    } else {
        -(p as i64)
    }
}

/// `squares[a]` is true iff `a` is a nonzero square mod `p`.
pub fn quadratic_residues(p: u32) -> Vec<bool> {
    let mut squares = vec![false; p as usize];
    for a in 1..p as u64 {
        squares[(a * a % p as u64) as usize] = true;
    }
    squares
}

/// Legendre symbol `(a/p)` for odd `p`.
pub fn legendre(a: i64, p: u32) -> i8 {
    let a = a.rem_euclid(p as i64) as usize;
    if a == 0 {
        0
    } else if quadratic_residues(p)[a] {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: u32, j: i64) -> CycInt {
        CycInt::monomial(p, j)
    }

    #[test]
    fn ring_identities() {
        let one = CycInt::one(3);
        let a = &one + &w(3, 1);
        let b = &one + &w(3, 2);
        assert_eq!(&a * &b, one);
        let total = (0..5).fold(CycInt::zero(5), |acc, j| &acc + &w(5, j));
        assert!(total.is_zero());
        for p in [2, 3, 7] {
            assert_eq!(
                CycInt::int_embed(p, 7) * CycInt::int_embed(p, -2),
                CycInt::int_embed(p, -14)
            );
        }
    }

    #[test]
    fn integrality() {
        let s = (1..5).fold(CycInt::zero(5), |acc, j| &acc + &w(5, j));
        assert_eq!(s.as_integer(), Some(-1));
        assert_eq!(w(3, 1).as_integer(), None);
        assert_eq!(CycInt::int_embed(11, 42).as_integer(), Some(42));
    }

    #[test]
    fn mixed_rings_rejected() {
        assert_eq!(CycInt::one(3).checked_add(&CycInt::one(5)), Err(Error::MixedRing(3, 5)));
        assert!(CycInt::from_coeffs(4, vec![0; 3]).is_err());
        assert!(CycInt::from_coeffs(5, vec![0; 5]).is_err());
    }

    #[test]
    fn signed_monomials() {
        for p in [3u32, 5, 7] {
            for j in 0..p {
                assert_eq!(w(p, j as i64).as_signed_monomial(), Some((1, j)));
                assert_eq!((-w(p, j as i64)).as_signed_monomial(), Some((-1, j)));
            }
            assert_eq!(CycInt::int_embed(p, 2).as_signed_monomial(), None);
        }
    }

    #[test]
    fn characters() {
        let f4 = FiniteField::new(2, 2).unwrap();
        for x in f4.elements() {
            assert_eq!(additive_character(&f4, Elem::ZERO, x), CycInt::one(2));
        }
        assert_eq!(additive_character(&f4, Elem::ONE, f4.generator()), CycInt::int_embed(2, -1));
        let f9 = FiniteField::new(3, 2).unwrap();
        let total = f9
            .elements()
            .fold(CycInt::zero(3), |acc, x| &acc + &additive_character(&f9, Elem::ONE, x));
        assert!(total.is_zero());
    }

    #[test]
    fn minimal_j_examples() {
        assert_eq!(minimal_j(2, 3), Ok(Some(1)));
        assert_eq!(minimal_j(2, 5), Ok(Some(2)));
        assert_eq!(minimal_j(7, 3), Ok(None));
        assert_eq!(minimal_j(3, 2), Ok(Some(1)));
        assert!(minimal_j(3, 6).is_err());
        // oracle: direct search over j up to e
        for p in [2u32, 3, 5, 7, 11] {
            for e in 2..40u32 {
                if num_integer::gcd(p, e) != 1 {
                    continue;
                }
                let brute = (1..=e).find(|&j| (crate::util::mod_pow(p as u64, j as u64, e as u64) + 1) % e as u64 == 0);
                assert_eq!(minimal_j(p, e).unwrap(), brute, "p={p} e={e}");
            }
        }
    }

    #[test]
    fn classes() {
        let f4 = Arc::new(FiniteField::new(2, 2).unwrap());
        let c = cyclotomic_classes(f4.clone(), 3).unwrap();
        let g = f4.generator();
        assert_eq!(c.class(0), vec![Elem::ONE]);
        assert_eq!(c.class(1), vec![g]);
        assert_eq!(c.class(2), vec![f4.mul(g, g)]);
        let f9 = Arc::new(FiniteField::new(3, 2).unwrap());
        let c4 = cyclotomic_classes(f9.clone(), 4).unwrap();
        assert!((0..4).all(|i| c4.class(i).len() == 2));
        let c2 = cyclotomic_classes(f9.clone(), 2).unwrap();
        let mut squares: Vec<Elem> = f9.elements().skip(1).filter(|&a| {
            f9.elements().any(|b| f9.mul(b, b) == a)
        }).collect();
        let mut c0 = c2.class(0);
        squares.sort();
        c0.sort();
        assert_eq!(c0, squares);
        assert!(cyclotomic_classes(f9, 5).is_err());
    }

    #[test]
    fn periods_small() {
        let f4 = Arc::new(FiniteField::new(2, 2).unwrap());
        let eta = cyclotomic_periods_direct(&cyclotomic_classes(f4, 3).unwrap());
        let ints: Vec<_> = eta.iter().map(|x| x.as_integer().unwrap()).collect();
        assert_eq!(ints, vec![1, -1, -1]);
        let f9 = Arc::new(FiniteField::new(3, 2).unwrap());
        let eta = cyclotomic_periods_direct(&cyclotomic_classes(f9, 4).unwrap());
        let ints: Vec<_> = eta.iter().map(|x| x.as_integer().unwrap()).collect();
        assert_eq!(ints, vec![-1, -1, 2, -1]);
    }

    #[test]
    fn periods_sum_to_minus_one() {
        for (p, k) in [(2, 4), (3, 2), (5, 2), (7, 1), (13, 1), (2, 6)] {
            let f = Arc::new(FiniteField::new(p, k).unwrap());
            let n = f.order() - 1;
            for e in (1..=n).filter(|e| n % e == 0) {
                let eta = cyclotomic_periods_direct(&cyclotomic_classes(f.clone(), e).unwrap());
                let s = eta.iter().fold(CycInt::zero(p), |acc, x| &acc + x);
                assert_eq!(s.as_integer(), Some(-1));
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let a = uniform_periods_closed_form(3, 4, 1).unwrap();
        assert_eq!(a.case, UniformCase::A);
        assert_eq!(a.periods, vec![-1, -1, 2, -1]);
        let b = uniform_periods_closed_form(2, 3, 1).unwrap();
        assert_eq!(b.case, UniformCase::B);
        assert_eq!(b.periods, vec![1, -1, -1]);
        let b5 = uniform_periods_closed_form(2, 5, 1).unwrap();
        assert_eq!((b5.j, b5.q, b5.sqrt_q), (2, 16, 4));
        assert_eq!(b5.periods, vec![3, -1, -1, -1, -1]);
        assert!(uniform_periods_closed_form(7, 3, 1).is_err());
        assert!(uniform_periods_closed_form(2, 4, 1).is_err());
    }

    #[test]
    fn closed_form_matches_direct_small_grid() {
        for p in [2u32, 3, 5] {
            for e in 2..=12u32 {
                let Ok(Some(j)) = minimal_j(p, e) else { continue };
                for gamma in 1.. {
                    let Some(q) = checked_pow(p as u64, 2 * j * gamma).filter(|&q| q <= 4096) else {
                        break;
                    };
                    let closed = uniform_periods_closed_form(p, e, gamma).unwrap();
                    assert_eq!(closed.q as u128, q);
                    let f = Arc::new(FiniteField::new(p, 2 * j * gamma).unwrap());
                    let direct = cyclotomic_periods_direct(&cyclotomic_classes(f, e).unwrap());
                    let direct: Vec<_> = direct.iter().map(|x| x.as_integer()).collect();
                    let closed: Vec<_> = closed.periods.iter().map(|&x| Some(x)).collect();
                    assert_eq!(direct, closed, "p={p} e={e} gamma={gamma}");
                }
            }
        }
    }

    #[test]
    fn gauss_constant_examples() {
        let (r5, _) = gauss_constants(5).unwrap();
        assert_eq!(r5, &w(5, 1) + &w(5, 4));
        let (r3, n3) = gauss_constants(3).unwrap();
        assert_eq!((r3, n3), (w(3, 1), w(3, 2)));
        let (r7, n7) = gauss_constants(7).unwrap();
        let d = &r7 - &n7;
        assert_eq!(&d * &d, CycInt::int_embed(7, -7));
        assert!(gauss_constants(2).is_err());
    }

    #[test]
    fn gauss_constant_identities() {
        for p in [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let (r, n) = gauss_constants(p).unwrap();
            assert_eq!((&r + &n).as_integer(), Some(-1));
            let d = &r - &n;
            assert_eq!(&d * &d, CycInt::int_embed(p, p_star(p)));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cyc(p: u32) -> impl Strategy<Value = CycInt> {
            proptest::collection::vec(-20i64..20, width(p))
                .prop_map(move |c| CycInt::from_coeffs(p, c).unwrap())
        }

        fn close(a: (f64, f64), b: (f64, f64)) -> bool {
            (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
        }

        proptest! {
            #[test]
            fn matches_complex_evaluation(a in cyc(7), b in cyc(7), c in cyc(7)) {
                let expr = &(&a * &b) - &(&c * &a.conj());
                let (ar, ai) = a.to_complex();
                let (br, bi) = b.to_complex();
                let (cr, ci) = c.to_complex();
                let ab = (ar * br - ai * bi, ar * bi + ai * br);
                let cac = (cr * ar + ci * ai, ci * ar - cr * ai);
                prop_assert!(close(expr.to_complex(), (ab.0 - cac.0, ab.1 - cac.1)));
            }

            #[test]
            fn ring_laws(a in cyc(5), b in cyc(5), c in cyc(5)) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            }
        }
    }
}
