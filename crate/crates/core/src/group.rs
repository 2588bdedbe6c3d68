//! The additive group of `F_q^n`, subsets of it, and its group ring over
//! `Z[ω_p]`.
//!
//! Group elements are indexed so that the index of `(x_1, ..., x_n)` is
//! `Σ idx(x_i) q^{i-1}`. Since field indices are themselves base-`p`
//! coefficient vectors, a group index is the base-`p` coordinate vector of the
//! element in `F_p^{kn}`, and addition is digit-wise mod `p`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclo::{canonicalize_into, width, CycInt};
use crate::error::{Error, Result};
use crate::gf::{digits, Elem, FieldDescriptor, FiniteField};

/// Serialized group: a field descriptor plus the dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub field: FieldDescriptor,
    pub n: usize,
}

#[derive(Clone, Debug)]
pub struct VectorGroup {
    field: Arc<FiniteField>,
    n: usize,
    p: u32,
    dim: usize,
    order: usize,
}

impl PartialEq for VectorGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.field == other.field
    }
}

impl Eq for VectorGroup {}

impl VectorGroup {
    pub fn new(field: Arc<FiniteField>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::params("dimension must be positive"));
        }
        let cap = crate::max_order();
        let order = (field.order() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if order > cap as u128 {
            return Err(Error::TooLarge { order, cap });
        }
        Ok(VectorGroup {
            p: field.characteristic(),
            dim: field.degree() as usize * n,
            order: order as usize,
            field,
            n,
        })
    }

    pub fn from_descriptor(desc: &GroupDescriptor) -> Result<Self> {
        Self::new(Arc::new(FiniteField::from_descriptor(&desc.field)?), desc.n)
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor { field: self.field.descriptor(), n: self.n }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Dimension over the prime field.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.order
    }

    pub fn vector(&self, x: usize) -> Vec<Elem> {
        let q = self.field.order() as usize;
        let mut x = x;
        (0..self.n)
            .map(|_| {
                let e = Elem::from_index((x % q) as u32);
                x /= q;
                e
            })
            .collect()
    }

    pub fn index(&self, v: &[Elem]) -> Result<usize> {
        if v.len() != self.n {
            return Err(Error::Dimension { expected: self.n, got: v.len() });
        }
        let q = self.field.order() as usize;
        let mut idx = 0usize;
        for &e in v.iter().rev() {
            self.field.check(e)?;
            idx = idx * q + e.index() as usize;
        }
        Ok(idx)
    }

    /// Coordinates over `F_p`.
    pub fn digits(&self, x: usize) -> Vec<u32> {
        digits(x as u32, self.p, self.dim)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p as usize;
        let (mut x, mut y, mut out, mut place) = (a, b, 0usize, 1usize);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        if self.p == 2 {
            return a;
        }
        let p = self.p as usize;
        let (mut x, mut out, mut place) = (a, 0usize, 1usize);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Table of negatives for every element.
    pub fn neg_table(&self) -> Vec<usize> {
        (0..self.order).map(|x| self.neg(x)).collect()
    }

    /// `F_p`-coordinate dot product; `χ_b(x) = ω_p^{dot(b, x)}` runs over all
    /// characters of the group.
    pub fn dot(&self, a: usize, b: usize) -> u32 {
        let p = self.p as usize;
        let (mut x, mut y, mut acc) = (a, b, 0usize);
        while x > 0 && y > 0 {
            acc += (x % p) * (y % p);
            x /= p;
            y /= p;
        }
        (acc % p) as u32
    }
}

/// A subset of a group, kept as sorted, distinct indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSubset {
    order: usize,
    members: Vec<usize>,
}

impl GroupSubset {
    pub fn new(order: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::params(format!("duplicate member {}", w[0])));
        }
        if let Some(&x) = members.last().filter(|&&x| x >= order) {
            return Err(Error::params(format!("member {x} outside a group of order {order}")));
        }
        Ok(GroupSubset { order, members })
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        let members = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        GroupSubset { order: mask.len(), members }
    }

    pub fn empty(order: usize) -> Self {
        GroupSubset { order, members: Vec::new() }
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.order];
        for &x in &self.members {
            m[x] = true;
        }
        m
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut m = self.mask();
        for &x in &other.members {
            m[x] = true;
        }
        Self::from_mask(&m)
    }

    pub fn without(&self, x: usize) -> Self {
        GroupSubset { order: self.order, members: self.members.iter().copied().filter(|&y| y != x).collect() }
    }

    pub fn is_symmetric(&self, group: &VectorGroup) -> bool {
        self.members.iter().all(|&x| self.contains(group.neg(x)))
    }
}

/// An element `Σ_x c_x x` of `Z[ω_p][G]`, with `p` the characteristic of `G`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElem {
    p: u32,
    order: usize,
    // canonical CycInt coefficients, `width(p)` per group element
    data: Vec<i64>,
}

impl std::fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = (0..self.order)
            .filter_map(|x| {
                let c = self.coeff(x);
                (!c.is_zero()).then(|| format!("({c})[{x}]"))
            })
            .collect();
        write!(f, "GroupRingElem[{}]", terms.join(" + "))
    }
}

impl GroupRingElem {
    pub fn zero(group: &VectorGroup) -> Self {
        let p = group.p();
        GroupRingElem { p, order: group.order(), data: vec![0; group.order() * width(p)] }
    }

    /// `c · 1_G`, the scalar `c` at the identity.
    pub fn scalar(group: &VectorGroup, c: i64) -> Self {
        let mut g = Self::zero(group);
        g.data[0] = c;
        g
    }

    /// The sum of all group elements.
    pub fn all_ones(group: &VectorGroup) -> Self {
        let mut g = Self::zero(group);
        let w = width(g.p);
        for x in 0..g.order {
            g.data[x * w] = 1;
        }
        g
    }

    pub fn from_subset(group: &VectorGroup, set: &GroupSubset) -> Self {
        Self::from_subset_with(group, set, &CycInt::one(group.p()))
    }

    /// `c · S` for a subset `S`.
    pub fn from_subset_with(group: &VectorGroup, set: &GroupSubset, c: &CycInt) -> Self {
        let mut g = Self::zero(group);
        let w = width(g.p);
        for &x in set.members() {
            g.data[x * w..(x + 1) * w].copy_from_slice(c.coeffs());
        }
        g
    }

    pub fn coeff(&self, x: usize) -> CycInt {
        let w = width(self.p);
        CycInt::from_coeffs(self.p, self.data[x * w..(x + 1) * w].to_vec()).expect("valid width")
    }

    pub fn set_coeff(&mut self, x: usize, c: &CycInt) -> Result<()> {
        if c.prime() != self.p {
            return Err(Error::MixedRing(self.p, c.prime()));
        }
        let w = width(self.p);
        self.data[x * w..(x + 1) * w].copy_from_slice(c.coeffs());
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    /// Coefficients as rational integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<i64>> {
        let w = width(self.p);
        (0..self.order)
            .map(|x| self.data[x * w + 1..(x + 1) * w].iter().all(|&c| c == 0).then_some(self.data[x * w]))
            .collect()
    }

    /// Sum of all coefficients, the image under the principal character.
    pub fn augmentation(&self) -> CycInt {
        let w = width(self.p);
        let mut acc = vec![0i64; w];
        for x in 0..self.order {
            for j in 0..w {
                acc[j] += self.data[x * w + j];
            }
        }
        CycInt::from_coeffs(self.p, acc).expect("valid width")
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!((self.p, self.order), (other.p, other.order), "group ring mismatch");
        GroupRingElem {
            p: self.p,
            order: self.order,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, n: i64) -> Self {
        GroupRingElem { p: self.p, order: self.order, data: self.data.iter().map(|c| c * n).collect() }
    }

    /// Multiplies every coefficient by a cyclotomic integer.
    pub fn scale_cyc(&self, c: &CycInt) -> Self {
        assert_eq!(c.prime(), self.p, "group ring mismatch");
        let w = width(self.p);
        let mut out = Self { p: self.p, order: self.order, data: vec![0; self.data.len()] };
        for x in 0..self.order {
            let block = &self.data[x * w..(x + 1) * w];
            if block.iter().all(|&a| a == 0) {
                continue;
            }
            let prod = CycInt::from_coeffs(self.p, block.to_vec()).expect("valid width") * c.clone();
            out.data[x * w..(x + 1) * w].copy_from_slice(prod.coeffs());
        }
        out
    }

    /// Convolution product in the group ring.
    pub fn mul(&self, other: &Self, group: &VectorGroup) -> Self {
        assert_eq!((self.p, self.order), (other.p, other.order), "group ring mismatch");
        assert_eq!(group.order(), self.order, "group ring mismatch");
        let p = self.p as usize;
        let w = width(self.p);
        let support = |g: &Self| -> Vec<usize> {
            (0..g.order).filter(|&x| g.data[x * w..(x + 1) * w].iter().any(|&c| c != 0)).collect()
        };
        let (sa, sb) = (support(self), support(other));
        // accumulate over exponents 0..p, then fold ω^{p-1} away once at the end
        let mut acc = vec![0i64; self.order * p];
        let wrap = |e: usize| if e >= p { e - p } else { e };
        for &x in &sa {
            let a = &self.data[x * w..(x + 1) * w];
            for &y in &sb {
                let b = &other.data[y * w..(y + 1) * w];
                let z = group.add(x, y) * p;
                for (i, &ai) in a.iter().enumerate() {
                    if ai == 0 {
                        continue;
                    }
                    for (j, &bj) in b.iter().enumerate() {
                        acc[z + wrap(i + j)] += ai * bj;
                    }
                }
            }
        }
        let mut data = vec![0i64; self.order * w];
        for z in 0..self.order {
            canonicalize_into(self.p, &acc[z * p..(z + 1) * p], &mut data[z * w..(z + 1) * w]);
        }
        GroupRingElem { p: self.p, order: self.order, data }
    }
}
