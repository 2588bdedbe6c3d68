//! Finite fields `F_{p^k}` with log/antilog tables.
//!
//! Elements are stored in the power basis of a root `x` of a primitive
//! modulus. An element's index is its coefficient vector read as a base-`p`
//! number with the constant coefficient as the lowest digit, so `0..p` are the
//! prime subfield and `0..q` enumerates the field. Multiplication goes through
//! discrete logarithms to the base `g = x` (for `k = 1`, `g` is the smallest
//! primitive root).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::{is_prime, mod_pow, prime_divisors};

/// A field element, identified by its power-basis index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn from_index(index: u32) -> Self {
        Elem(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Serialized form of a field: `{p, k, modulus: [c0, ..., ck]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    log: Vec<u32>,
    antilog: Vec<u32>,
    trace: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    /// Builds `F_{p^k}` over the lexicographically smallest primitive modulus.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        let q = check_order(p, k)?;
        if k == 1 {
            let g = smallest_primitive_root(p);
            let modulus = vec![(p - g) % p, 1];
            return Self::from_parts(p, k, q, modulus);
        }
        for rank in 0..q {
            let mut low = digits(rank, p, k as usize);
            if low[0] == 0 {
                continue;
            }
            low.push(1);
            if let Some(antilog) = power_cycle(p, &low, q) {
                return Self::assemble(p, k, q, low, antilog);
            }
        }
        // Primitive polynomials exist for every (p, k).
        unreachable!("no primitive polynomial of degree {k} over F_{p}")
    }

    /// Builds `F_q` for a prime power `q`.
    pub fn from_order(q: u64) -> Result<Self> {
        let divisors = crate::util::prime_divisors(q);
        let [p] = divisors[..] else {
            return Err(Error::params(format!("{q} is not a prime power")));
        };
        let mut k = 0;
        let mut r = q;
        while r > 1 {
            r /= p;
            k += 1;
        }
        Self::new(p as u32, k)
    }

    /// Builds a field from an explicit monic modulus, which must be primitive.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::params("modulus must have degree at least 1"));
        }
        let k = (modulus.len() - 1) as u32;
        let q = check_order(p, k)?;
        if *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::params(format!(
                "modulus {modulus:?} is not a monic polynomial over F_{p}"
            )));
        }
        Self::from_parts(p, k, q, modulus.to_vec())
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self> {
        let field = Self::with_modulus(desc.p, &desc.modulus)?;
        if field.k != desc.k {
            return Err(Error::params(format!(
                "descriptor degree {} disagrees with modulus degree {}",
                desc.k, field.k
            )));
        }
        Ok(field)
    }

    fn from_parts(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Result<Self> {
        if modulus[0] == 0 {
            return Err(Error::params("modulus is divisible by x"));
        }
        let antilog = power_cycle(p, &modulus, q)
            .ok_or_else(|| Error::params(format!("modulus {modulus:?} is not primitive over F_{p}")))?;
        Self::assemble(p, k, q, modulus, antilog)
    }

    fn assemble(p: u32, k: u32, q: u32, modulus: Vec<u32>, antilog: Vec<u32>) -> Result<Self> {
        let mut log = vec![u32::MAX; q as usize];
        for (t, &a) in antilog.iter().enumerate() {
            log[a as usize] = t as u32;
        }
        let mut field = FiniteField { p, k, q, modulus, log, antilog, trace: Vec::new() };
        // Tr is F_p-linear, so it is enough to know it on the power basis.
        let mut basis_trace = Vec::with_capacity(k as usize);
        let mut basis = Elem::ONE;
        let x = if k == 1 { Elem::ONE } else { Elem(p) };
        for _ in 0..k {
            let mut conj = basis;
            let mut sum = Elem::ZERO;
            for _ in 0..k {
                sum = field.add(sum, conj);
                conj = field.pow(conj, p as u64);
            }
            if sum.0 >= p {
                return Err(Error::Inconsistent(format!("trace of basis element is {sum:?}")));
            }
            basis_trace.push(sum.0);
            basis = field.mul(basis, x);
        }
        field.trace = (0..q)
            .map(|a| {
                let s: u64 = digits(a, p, k as usize)
                    .iter()
                    .zip(&basis_trace)
                    .map(|(&c, &t)| c as u64 * t as u64)
                    .sum();
                (s % p as u64) as u32
            })
            .collect();
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, k: self.k, modulus: self.modulus.clone() }
    }

    /// The fixed primitive element `g`.
    pub fn generator(&self) -> Elem {
        Elem(self.antilog[1 % self.antilog.len()])
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.q
    }

    pub fn check(&self, a: Elem) -> Result<Elem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ForeignElement(a.0))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    /// Elements in the order `0, g^0, g^1, ..., g^{q-2}`.
    pub fn elements_dlog_order(&self) -> impl Iterator<Item = Elem> + '_ {
        std::iter::once(Elem::ZERO).chain(self.antilog.iter().map(|&a| Elem(a)))
    }

    /// The prime-subfield element `t mod p`.
    pub fn from_int(&self, t: i64) -> Elem {
        Elem(t.rem_euclid(self.p as i64) as u32)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        digits(a.0, self.p, self.k as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != self.k as usize {
            return Err(Error::Dimension { expected: self.k as usize, got: coeffs.len() });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::params(format!("coefficient {c} is not in [0, {})", self.p)));
        }
        Ok(Elem(undigits(coeffs, self.p)))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.k == 1 {
            return Elem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let n = self.q - 1;
        let t = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % n as u64;
        Elem(self.antilog[t as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        let t = (n - self.log[a.0 as usize]) % n;
        Ok(Elem(self.antilog[t as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for a nonnegative exponent; `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let n = (self.q - 1) as u64;
        let t = (self.log[a.0 as usize] as u64 % n) * (e % n) % n;
        Elem(self.antilog[t as usize])
    }

    /// `a^e` for a signed exponent; negative exponents need `a != 0`.
    pub fn pow_signed(&self, a: Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            return Ok(self.pow(a, e as u64));
        }
        Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
    }

    /// `g^t` for any integer `t`.
    pub fn exp(&self, t: i64) -> Elem {
        let n = (self.q - 1) as i64;
        Elem(self.antilog[t.rem_euclid(n) as usize])
    }

    /// Discrete logarithm to the base `g`, in `[0, q - 1)`.
    pub fn dlog(&self, a: Elem) -> Result<u32> {
        self.check(a)?;
        if a.0 == 0 {
            return Err(Error::params("discrete log of zero"));
        }
        Ok(self.log[a.0 as usize])
    }

    /// Absolute trace `a + a^p + ... + a^{p^{k-1}}` as an integer in `[0, p)`.
    pub fn trace(&self, a: Elem) -> u32 {
        self.trace[a.0 as usize]
    }

    pub fn is_square(&self, a: Elem) -> bool {
        a.0 == 0 || self.p == 2 || self.log[a.0 as usize] % 2 == 0
    }
}

fn check_order(p: u32, k: u32) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if k == 0 {
        return Err(Error::params("extension degree must be at least 1"));
    }
    let cap = crate::max_order();
    let order = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
    if order > cap as u128 || order > u32::MAX as u128 {
        return Err(Error::TooLarge { order, cap });
    }
    Ok(order as u32)
}

fn smallest_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let n = (p - 1) as u64;
    let divisors = prime_divisors(n);
    (2..p)
        .find(|&g| divisors.iter().all(|&l| mod_pow(g as u64, n / l, p as u64) != 1))
        .expect("every prime has a primitive root")
}

pub(crate) fn digits(mut a: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
    }
    out
}

pub(crate) fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Successive powers `x^0, x^1, ...` modulo `modulus`, provided `x` has
/// multiplicative order exactly `q - 1`. Such an `x` generates every nonzero
/// residue, so the quotient ring is a field and the modulus is irreducible.
fn power_cycle(p: u32, modulus: &[u32], q: u32) -> Option<Vec<u32>> {
    let k = modulus.len() - 1;
    let n = (q - 1) as usize;
    let mut cur = vec![0u32; k];
    cur[0] = 1;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let idx = undigits(&cur, p);
        if i > 0 && idx == 1 {
            return None;
        }
        out.push(idx);
        // multiply by x and reduce with x^k = -(c0 + ... + c_{k-1} x^{k-1})
        let top = cur[k - 1];
        for j in (1..k).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        for j in 0..k {
            let sub = (top as u64 * modulus[j] as u64 % p as u64) as u32;
            cur[j] = (cur[j] + p - sub) % p;
        }
    }
    (undigits(&cur, p) == 1).then_some(out)
}

/// A vector in `F_q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldVector(pub Vec<Elem>);

impl FieldVector {
    pub fn new(field: &FiniteField, entries: Vec<Elem>) -> Result<Self> {
        for &e in &entries {
            field.check(e)?;
        }
        Ok(FieldVector(entries))
    }

    pub fn zero(n: usize) -> Self {
        FieldVector(vec![Elem::ZERO; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.0
    }

    /// Coefficient arrays, one per entry.
    pub fn to_coeff_arrays(&self, field: &FiniteField) -> Vec<Vec<u32>> {
        self.0.iter().map(|&e| field.coeffs(e)).collect()
    }

    pub fn from_coeff_arrays(field: &FiniteField, arrays: &[Vec<u32>]) -> Result<Self> {
        arrays.iter().map(|c| field.from_coeffs(c)).collect::<Result<Vec<_>>>().map(FieldVector)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_has_root(p: u32, poly: &[u32]) -> bool {
        (0..p).any(|t| {
            let v = poly.iter().rev().fold(0u64, |acc, &c| (acc * t as u64 + c as u64) % p as u64);
            v == 0
        })
    }

    #[test]
    fn f4_modulus_and_generator() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // only irreducible quadratic over F_2: no roots in F_2
        assert!(!brute_has_root(2, f.modulus()));
        let g = f.generator();
        assert_eq!(f.coeffs(g), vec![0, 1]);
        let g2 = f.mul(g, g);
        assert_eq!(g2, f.add(g, Elem::ONE));
        assert_eq!(f.mul(g, g2), Elem::ONE);
        assert_eq!(f.add(g, g), Elem::ZERO);
        assert_eq!(f.dlog(f.add(g, Elem::ONE)).unwrap(), 2);
    }

    #[test]
    fn prime_fields() {
        let f3 = FiniteField::new(3, 1).unwrap();
        assert_eq!(f3.generator(), Elem(2));
        let f2 = FiniteField::new(2, 1).unwrap();
        assert_eq!(f2.generator(), Elem::ONE);
        assert_eq!(f2.order(), 2);
        let f7 = FiniteField::new(7, 1).unwrap();
        // smallest primitive root mod 7 by direct order computation
        let oracle = (2..7u64)
            .find(|&g| (1..6).all(|e| mod_pow(g, e, 7) != 1))
            .unwrap();
        assert_eq!(f7.generator().index() as u64, oracle);
        assert_eq!(f7.mul(Elem(3), Elem(5)), Elem(1));
    }

    #[test]
    fn f9_generator_fourth_power_is_minus_one() {
        let f = FiniteField::new(3, 2).unwrap();
        let g = f.generator();
        let mut acc = Elem::ONE;
        let mut orders = Vec::new();
        for e in 1..=8 {
            acc = f.mul(acc, g);
            if acc == Elem::ONE {
                orders.push(e);
            }
        }
        assert_eq!(orders, vec![8]);
        assert_eq!(f.pow(g, 4), f.neg(Elem::ONE));
    }

    #[test]
    fn f4_traces() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.trace(Elem::ONE), 0);
        assert_eq!(f.trace(f.generator()), 1);
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(f9.trace(Elem::ZERO), 0);
    }

    #[test]
    fn trace_matches_frobenius_sum() {
        for (p, k) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            for a in f.elements() {
                let mut conj = a;
                let mut sum = Elem::ZERO;
                for _ in 0..k {
                    sum = f.add(sum, conj);
                    conj = f.pow(conj, p as u64);
                }
                assert_eq!(sum.index(), f.trace(a));
            }
        }
    }

    #[test]
    fn trace_linear_and_frobenius_invariant_exhaustive() {
        for (p, k) in [(2, 6), (3, 4), (5, 3), (2, 12)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.order();
            let step = if q > 512 { 37 } else { 1 };
            for a in f.elements() {
                assert_eq!(f.trace(f.pow(a, p as u64)), f.trace(a));
                for b in (0..q).step_by(step).map(Elem) {
                    let lhs = f.trace(f.add(a, b));
                    assert_eq!(lhs, (f.trace(a) + f.trace(b)) % p);
                }
            }
        }
    }

    #[test]
    fn generator_has_full_order() {
        for (p, k) in [(2, 1), (2, 5), (3, 3), (5, 2), (7, 2), (13, 1), (2, 10)] {
            let f = FiniteField::new(p, k).unwrap();
            let n = (f.order() - 1) as u64;
            let g = f.generator();
            assert_eq!(f.pow(g, n), Elem::ONE);
            for l in prime_divisors(n) {
                assert_ne!(f.pow(g, n / l), Elem::ONE, "p={p} k={k} l={l}");
            }
            for a in f.elements().skip(1) {
                assert_eq!(f.exp(f.dlog(a).unwrap() as i64), a);
            }
        }
    }

    #[test]
    fn smallest_modulus_is_chosen() {
        // every smaller monic candidate must fail to be primitive
        for (p, k) in [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            let rank = undigits(&f.modulus()[..k as usize], p);
            for r in 0..rank {
                let mut m = digits(r, p, k as usize);
                m.push(1);
                assert!(FiniteField::with_modulus(p, &m).is_err(), "{m:?}");
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(FiniteField::new(4, 1), Err(Error::NotPrime(4)));
        assert!(matches!(FiniteField::new(2, 21), Err(Error::TooLarge { .. })));
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.inv(Elem::ZERO), Err(Error::DivisionByZero));
        assert!(f.dlog(Elem::ZERO).is_err());
        assert_eq!(f.check(Elem(9)), Err(Error::ForeignElement(9)));
        assert!(FiniteField::with_modulus(3, &[1, 0, 1]).is_err()); // x^2+1 has order-4 root
    }

    #[test]
    fn descriptor_roundtrip() {
        let f = FiniteField::new(5, 2).unwrap();
        let g = FiniteField::from_descriptor(&f.descriptor()).unwrap();
        assert_eq!(f, g);
        let v = FieldVector::new(&f, vec![f.generator(), Elem(7)]).unwrap();
        let arrays = v.to_coeff_arrays(&f);
        assert_eq!(FieldVector::from_coeff_arrays(&f, &arrays).unwrap(), v);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn field_axioms(a in 0u32..625, b in 0u32..625, c in 0u32..625) {
                let f = FiniteField::new(5, 4).unwrap();
                let (a, b, c) = (Elem(a), Elem(b), Elem(c));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                prop_assert_eq!(f.sub(f.add(a, b), b), a);
                if !a.is_zero() {
                    prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
            }

            #[test]
            fn char2_axioms(a in 0u32..256, b in 0u32..256, c in 0u32..256) {
                let f = FiniteField::new(2, 8).unwrap();
                let (a, b, c) = (Elem(a), Elem(b), Elem(c));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.add(a, a), Elem::ZERO);
                prop_assert_eq!(f.pow(a, 256), a);
            }
        }
    }
}
