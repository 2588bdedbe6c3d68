//! Walsh analysis of `p`-ary functions `f: F_{p^n} → F_p` for odd `p`.
//!
//! Functions are value tables indexed by the canonical element index of the
//! field. The additive group of `F_{p^n}` is modelled as
//! `VectorGroup::new(field, 1)`, whose indices coincide with element indices.

use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::{from_exponent_counts, legendre, p_star, CycInt};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldDescriptor, FiniteField};
use crate::group::{GroupRingElem, GroupSubset, VectorGroup};
use crate::util::{mod_inv, mod_pow};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAryFunction {
    field: Arc<FiniteField>,
    values: Vec<u32>,
}

impl PAryFunction {
    pub fn from_values(field: Arc<FiniteField>, values: Vec<u32>) -> Result<Self> {
        let p = field.characteristic();
        if p == 2 {
            return Err(Error::Unsupported("p-ary functions need odd p".into()));
        }
        if values.len() != field.order() as usize {
            return Err(Error::Dimension { expected: field.order() as usize, got: values.len() });
        }
        if let Some(&v) = values.iter().find(|&&v| v >= p) {
            return Err(Error::params(format!("value {v} is not in F_{p}")));
        }
        Ok(PAryFunction { field, values })
    }

    pub fn from_fn(field: Arc<FiniteField>, f: impl Fn(Elem) -> u32) -> Result<Self> {
        let values = field.elements().map(f).collect();
        Self::from_values(field, values)
    }

    pub fn zero(field: Arc<FiniteField>) -> Result<Self> {
        Self::from_fn(field, |_| 0)
    }

    /// `f(x) = Tr(a x^2)`.
    pub fn trace_quadratic(field: Arc<FiniteField>, a: Elem) -> Result<Self> {
        field.check(a)?;
        let fl = field.clone();
        Self::from_fn(field, move |x| fl.trace(fl.mul(a, fl.mul(x, x))))
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }

    /// Extension degree `n`.
    pub fn n(&self) -> u32 {
        self.field.degree()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, x: Elem) -> u32 {
        self.values[x.index() as usize]
    }

    pub fn group(&self) -> Result<VectorGroup> {
        VectorGroup::new(self.field.clone(), 1)
    }

    pub fn to_file(&self) -> FunctionFile {
        FunctionFile {
            field: self.field.descriptor(),
            values: self.field.elements_dlog_order().map(|x| self.value(x)).collect(),
        }
    }

    pub fn from_file(file: &FunctionFile) -> Result<Self> {
        let field = Arc::new(FiniteField::from_descriptor(&file.field)?);
        if file.values.len() != field.order() as usize {
            return Err(Error::Dimension { expected: field.order() as usize, got: file.values.len() });
        }
        let mut values = vec![0; file.values.len()];
        for (x, &v) in field.elements_dlog_order().zip(&file.values) {
            values[x.index() as usize] = v;
        }
        Self::from_values(field, values)
    }
}

/// Function file; values are listed in the order `0, g^0, g^1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionFile {
    pub field: FieldDescriptor,
    pub values: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    NotBent,
    /// `W_f(b) = u (p*)^{n/2} ω^{f*(b)}` for all `b`; `regular` when the
    /// leading factor `u (p*)^{n/2}` is positive.
    BentWeaklyRegular { u: i8, regular: bool, dual: PAryFunction },
    BentNotWeaklyRegular,
    /// Bent with `n` odd; the normal form is not attempted.
    BentUnclassified,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::NotBent => "not_bent",
            // regularity is reported separately, see `SpectrumFile::regular`
            Classification::BentWeaklyRegular { .. } => "bent_weakly_regular",
            Classification::BentNotWeaklyRegular => "bent_not_weakly_regular",
            Classification::BentUnclassified => "bent_unclassified",
        }
    }

    pub fn is_bent(&self) -> bool {
        !matches!(self, Classification::NotBent)
    }

    pub fn is_weakly_regular(&self) -> bool {
        matches!(self, Classification::BentWeaklyRegular { .. })
    }
}

#[derive(Clone, Debug)]
pub struct WalshSpectrum {
    field: Arc<FiniteField>,
    coefficients: Vec<CycInt>,
    classification: Classification,
}

impl WalshSpectrum {
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    /// `W_f(b)` by element index of `b`.
    pub fn coefficients(&self) -> &[CycInt] {
        &self.coefficients
    }

    pub fn coefficient(&self, b: Elem) -> &CycInt {
        &self.coefficients[b.index() as usize]
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    pub fn to_file(&self) -> SpectrumFile {
        let (u, regular, dual) = match &self.classification {
            Classification::BentWeaklyRegular { u, regular, dual } => {
                (Some(*u), Some(*regular), Some(dual.to_file().values))
            }
            _ => (None, None, None),
        };
        SpectrumFile {
            field: self.field.descriptor(),
            classification: self.classification.name().to_string(),
            weakly_regular: self.classification.is_weakly_regular(),
            u,
            regular,
            dual,
            coefficients: self.field.elements_dlog_order().map(|b| self.coefficient(b).clone()).collect(),
        }
    }
}

/// Spectrum export; coefficients and the dual follow the function file order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumFile {
    pub field: FieldDescriptor,
    pub classification: String,
    pub weakly_regular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<Vec<u32>>,
    pub coefficients: Vec<CycInt>,
}

/// `W_f(b) = Σ_x ω^{f(x) + Tr(bx)}` for every `b`, exactly, with the
/// classification described on [`Classification`].
pub fn walsh_spectrum(f: &PAryFunction) -> Result<WalshSpectrum> {
    let field = f.field.clone();
    let p = f.p();
    let q = field.order();
    let coefficients: Vec<CycInt> = (0..q)
        .into_par_iter()
        .map(|b| {
            let b = Elem::from_index(b);
            let mut counts = vec![0i64; p as usize];
            for x in field.elements() {
                let e = (f.value(x) + field.trace(field.mul(b, x))) % p;
                counts[e as usize] += 1;
            }
            from_exponent_counts(p, &counts)
        })
        .collect();
    let classification = classify(f, &coefficients)?;
    Ok(WalshSpectrum { field, coefficients, classification })
}

fn classify(f: &PAryFunction, coefficients: &[CycInt]) -> Result<Classification> {
    let p = f.p();
    let n = f.n();
    let pn = (p as i64).pow(n);
    let target = CycInt::int_embed(p, pn);
    if !coefficients.iter().all(|w| w * &w.conj() == target) {
        return Ok(Classification::NotBent);
    }
    if n % 2 == 1 {
        return Ok(Classification::BentUnclassified);
    }
    let big_p = p_star(p).pow(n / 2);
    let mut u = None;
    let mut dual = Vec::with_capacity(coefficients.len());
    for (b, w) in coefficients.iter().enumerate() {
        let (sign, j) = w
            .div_exact(big_p)
            .and_then(|m| m.as_signed_monomial())
            .ok_or_else(|| Error::Inconsistent(format!("W_f at index {b} is not ±(p*)^(n/2) ω^j")))?;
        match u {
            None => u = Some(sign),
            Some(u0) if u0 != sign => return Ok(Classification::BentNotWeaklyRegular),
            _ => {}
        }
        dual.push(j);
    }
    let u = u.expect("field is nonempty");
    let dual = PAryFunction::from_values(f.field.clone(), dual)?;
    Ok(Classification::BentWeaklyRegular { u, regular: u as i64 * big_p.signum() > 0, dual })
}

/// Smallest `k ∈ [1, p-1]` with `gcd(k-1, p-1) = 1` and `f(tx) = t^k f(x)`
/// for all `t ∈ F_p` (including `t = 0`, so `f(0) = 0` is required).
pub fn homogeneity_degree(f: &PAryFunction) -> Option<u32> {
    let p = f.p();
    let field = &f.field;
    (1..p).filter(|&k| (k - 1).gcd(&(p - 1)) == 1).find(|&k| {
        (0..p).all(|t| {
            let tk = mod_pow(t as u64, k as u64, p as u64) as u32;
            let te = field.from_int(t as i64);
            field.elements().all(|x| f.value(field.mul(te, x)) == tk * f.value(x) % p)
        })
    })
}

/// Homogeneity degree `ℓ` of the dual of a weakly regular `f` of degree
/// `k`: `ℓ ≡ k (k-1)^{-1} (mod p-1)`, reported in `[1, p-1]`.
pub fn dual_degree(k: u32, p: u32) -> Result<u32> {
    let m = (p - 1) as i64;
    if p < 3 {
        return Err(Error::params("dual degree needs odd p"));
    }
    let inv = mod_inv(k as i64 - 1, m)
        .ok_or_else(|| Error::params(format!("gcd(k-1, p-1) != 1 for k = {k}, p = {p}")))?;
    let ell = (k as i64 * inv).rem_euclid(m);
    Ok(if ell == 0 { m as u32 } else { ell as u32 })
}

/// `D_i = {x : f(x) = i}` for `i = 0..p`.
pub fn level_sets(f: &PAryFunction) -> Vec<GroupSubset> {
    let p = f.p() as usize;
    let mut sets = vec![Vec::new(); p];
    for (x, &v) in f.values.iter().enumerate() {
        sets[v as usize].push(x);
    }
    sets.into_iter()
        .map(|m| GroupSubset::new(f.values.len(), m).expect("level sets are valid"))
        .collect()
}

/// `L_t = Σ_i D_i ω^{it}`.
pub fn build_l(f: &PAryFunction, t: u32, group: &VectorGroup) -> Result<GroupRingElem> {
    let p = f.p();
    if group.order() != f.values.len() || group.p() != p {
        return Err(Error::FieldMismatch("function and group disagree".into()));
    }
    let mut l = GroupRingElem::zero(group);
    for (x, &v) in f.values.iter().enumerate() {
        l.set_coeff(x, &CycInt::monomial(p, (v as i64 * t as i64) % p as i64))?;
    }
    Ok(l)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma33Check {
    pub t: u32,
    pub s: u32,
    pub v: Option<u32>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma33Report {
    pub u: i8,
    pub k: u32,
    pub ell: u32,
    /// `L_t L_s = u (tsv/p)^n (p*)^{n/2} L_v`; `v` is `None` (and the pair
    /// skipped) when `s^{1-ℓ} + t^{1-ℓ} = 0`.
    pub part1: Vec<Lemma33Check>,
    /// `L_t L_{-t} = p^n [0]`, indexed by `t`.
    pub part2: Vec<(u32, bool)>,
    /// `Σ_{t≠0} L_t L_0 ω^{-at} = (p|D_a| - p^n) F`, indexed by `a`.
    pub part3: Vec<(u32, bool)>,
}

impl Lemma33Report {
    pub fn all_pass(&self) -> bool {
        self.part1.iter().all(|c| c.pass || c.v.is_none())
            && self.part2.iter().all(|c| c.1)
            && self.part3.iter().all(|c| c.1)
    }
}

/// Checks the three product identities for the elements `L_t` exactly.
pub fn verify_lemma33(f: &PAryFunction) -> Result<Lemma33Report> {
    let p = f.p();
    let n = f.n();
    if n % 2 == 1 {
        return Err(Error::Precondition("the product identities are checked for even n only".into()));
    }
    let spectrum = walsh_spectrum(f)?;
    let Classification::BentWeaklyRegular { u, .. } = *spectrum.classification() else {
        return Err(Error::Precondition(format!(
            "f must be weakly regular bent, found {}",
            spectrum.classification().name()
        )));
    };
    let k = homogeneity_degree(f).ok_or_else(|| Error::Precondition("f is not homogeneous".into()))?;
    let ell = dual_degree(k, p)?;
    let m = (p - 1) as i64;
    // 1 - ℓ and its inverse, as exponents in the cyclic group F_p*
    let a = (1 - ell as i64).rem_euclid(m);
    let a_inv = mod_inv(a, m).ok_or_else(|| Error::Precondition("gcd(1-ℓ, p-1) != 1".into()))?;

    let group = f.group()?;
    let ls: Vec<GroupRingElem> = (0..p).map(|t| build_l(f, t, &group)).collect::<Result<_>>()?;
    let pn = (p as i64).pow(n);
    let big_p = p_star(p).pow(n / 2);
    let pp = p as u64;

    let mut part1 = Vec::new();
    for t in 1..p {
        for s in 1..p {
            if (t + s) % p == 0 {
                continue;
            }
            let base = (mod_pow(s as u64, a as u64, pp) + mod_pow(t as u64, a as u64, pp)) % pp;
            if base == 0 {
                part1.push(Lemma33Check { t, s, v: None, pass: false });
                continue;
            }
            let v = mod_pow(base, a_inv as u64, pp) as u32;
            let sym = (legendre((t * s * v) as i64, p) as i64).pow(n);
            let lhs = ls[t as usize].mul(&ls[s as usize], &group);
            let rhs = ls[v as usize].scale(u as i64 * sym * big_p);
            part1.push(Lemma33Check { t, s, v: Some(v), pass: lhs == rhs });
        }
    }

    let part2 = (1..p)
        .map(|t| {
            let lhs = ls[t as usize].mul(&ls[(p - t) as usize], &group);
            (t, lhs == GroupRingElem::scalar(&group, pn))
        })
        .collect();

    let sizes: Vec<i64> = level_sets(f).iter().map(|d| d.len() as i64).collect();
    let products: Vec<GroupRingElem> = (1..p).map(|t| ls[t as usize].mul(&ls[0], &group)).collect();
    let part3 = (0..p)
        .map(|a| {
            let mut lhs = GroupRingElem::zero(&group);
            for (t, prod) in (1..p).zip(&products) {
                let w = CycInt::monomial(p, -((a * t) as i64));
                lhs = lhs.add(&prod.scale_cyc(&w));
            }
            let rhs = GroupRingElem::all_ones(&group).scale(p as i64 * sizes[a as usize] - pn);
            (a, lhs == rhs)
        })
        .collect();

    Ok(Lemma33Report { u, k, ell, part1, part2, part3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qform::QuadraticForm;
    use proptest::prelude::*;

    fn field(p: u32, k: u32) -> Arc<FiniteField> {
        Arc::new(FiniteField::new(p, k).unwrap())
    }

    fn tr_x2(p: u32, n: u32) -> PAryFunction {
        PAryFunction::trace_quadratic(field(p, n), Elem::ONE).unwrap()
    }

    fn norm_sq(w: &CycInt) -> i64 {
        (w * &w.conj()).as_integer().unwrap()
    }

    /// `Σ_b |W_f(b)|^2`; individual terms need not be rational for `p > 3`.
    fn energy(spec: &WalshSpectrum) -> Option<i64> {
        let p = spec.field().characteristic();
        spec.coefficients().iter().fold(CycInt::zero(p), |acc, w| &acc + &(w * &w.conj())).as_integer()
    }

    #[test]
    fn trace_square_on_f9() {
        let f = tr_x2(3, 2);
        let spec = walsh_spectrum(&f).unwrap();
        assert!(spec.coefficients().iter().all(|w| norm_sq(w) == 9));
        assert!(spec.classification().is_weakly_regular());
    }

    #[test]
    fn zero_function_is_not_bent() {
        let f = PAryFunction::zero(field(3, 2)).unwrap();
        let spec = walsh_spectrum(&f).unwrap();
        assert_eq!(spec.coefficient(Elem::ZERO).as_integer(), Some(9));
        assert_eq!(*spec.classification(), Classification::NotBent);
    }

    #[test]
    fn scaled_trace_on_f25() {
        let fl = field(5, 2);
        let f = PAryFunction::trace_quadratic(fl.clone(), fl.generator()).unwrap();
        let spec = walsh_spectrum(&f).unwrap();
        assert!(spec.classification().is_weakly_regular());
    }

    #[test]
    fn odd_degree_is_unclassified() {
        let spec = walsh_spectrum(&tr_x2(3, 3)).unwrap();
        assert_eq!(*spec.classification(), Classification::BentUnclassified);
    }

    #[test]
    fn rejects_characteristic_two() {
        assert!(PAryFunction::zero(field(2, 2)).is_err());
        assert!(PAryFunction::from_values(field(3, 1), vec![0, 1, 3]).is_err());
        assert!(PAryFunction::from_values(field(3, 1), vec![0, 1]).is_err());
    }

    #[test]
    fn varying_sign_is_not_weakly_regular() {
        // quadratic tables never give mixed signs, so forge the spectrum
        let f = tr_x2(3, 2);
        let mut coeffs = walsh_spectrum(&f).unwrap().coefficients().to_vec();
        coeffs[1] = -&coeffs[1];
        assert_eq!(classify(&f, &coeffs).unwrap(), Classification::BentNotWeaklyRegular);
        coeffs[1] = CycInt::int_embed(3, 9);
        assert_eq!(classify(&f, &coeffs).unwrap(), Classification::NotBent);
    }

    #[test]
    fn homogeneity() {
        for (p, n) in [(3, 2), (5, 2), (7, 2), (3, 3)] {
            assert_eq!(homogeneity_degree(&tr_x2(p, n)), Some(2));
        }
        let f9 = field(3, 2);
        assert_eq!(homogeneity_degree(&PAryFunction::zero(f9.clone()).unwrap()), Some(2));
        let fl = f9.clone();
        let cube = PAryFunction::from_fn(f9.clone(), move |x| fl.trace(fl.pow(x, 3))).unwrap();
        // Tr(x^3) is odd, while k = 2 (the only candidate for p = 3) forces f(-x) = f(x)
        assert_eq!(homogeneity_degree(&cube), None);
        let fl = f9.clone();
        let shifted = PAryFunction::from_fn(f9, move |x| (fl.trace(fl.mul(x, x)) + 1) % 3).unwrap();
        assert_eq!(homogeneity_degree(&shifted), None);
    }

    #[test]
    fn dual_degrees() {
        assert_eq!(dual_degree(2, 3).unwrap(), 2);
        assert_eq!(dual_degree(2, 5).unwrap(), 2);
        assert_eq!(dual_degree(4, 5).unwrap(), 4);
        assert!(dual_degree(3, 5).is_err());
        assert!(dual_degree(1, 5).is_err());
        for p in [3u32, 5, 7, 11, 13] {
            for k in 1..p {
                if let Ok(ell) = dual_degree(k, p) {
                    assert_eq!((ell - 1).gcd(&(p - 1)), 1, "k={k} p={p}");
                }
            }
        }
    }

    #[test]
    fn dual_degree_matches_extracted_dual() {
        for f in [tr_x2(5, 2), tr_x2(7, 2)] {
            let k = homogeneity_degree(&f).unwrap();
            let Classification::BentWeaklyRegular { dual, .. } = walsh_spectrum(&f).unwrap().classification().clone()
            else {
                panic!("expected weakly regular");
            };
            assert_eq!(homogeneity_degree(&dual), Some(dual_degree(k, f.p()).unwrap()));
        }
    }

    #[test]
    fn level_set_sizes() {
        let f = tr_x2(3, 2);
        let d = level_sets(&f);
        // x = 0 and the four roots of x^4 = -1; hyperbolic count q^{2m-1} + ε q^{m-1}(q-1)
        assert_eq!(d[0].len(), 5);
        assert_eq!(d[1].len() + d[2].len(), 4);
        let eps = walsh_spectrum(&f).unwrap().coefficient(Elem::ZERO).as_integer().unwrap().signum();
        assert_eq!(d[0].len() as i64, 3 + eps * 2);
        let group = f.group().unwrap();
        assert!(d.iter().all(|s| s.is_symmetric(&group)));
        let z = level_sets(&PAryFunction::zero(field(3, 2)).unwrap());
        assert_eq!((z[0].len(), z[1].len(), z[2].len()), (9, 0, 0));
    }

    #[test]
    fn l_elements() {
        let f = tr_x2(3, 2);
        let group = f.group().unwrap();
        let p = 3;
        let l0 = build_l(&f, 0, &group).unwrap();
        assert_eq!(l0, GroupRingElem::all_ones(&group));
        let ls: Vec<_> = (0..p).map(|t| build_l(&f, t, &group).unwrap()).collect();
        let d = level_sets(&f);
        for a in 0..p {
            let mut sum = GroupRingElem::zero(&group);
            for t in 0..p {
                sum = sum.add(&ls[t as usize].scale_cyc(&CycInt::monomial(p, -((a * t) as i64))));
            }
            assert_eq!(sum, GroupRingElem::from_subset(&group, &d[a as usize]).scale(p as i64));
        }
        // L_R = ((p-1)/2) D_0 + r_0 D_R + n_0 D_N, with R = {1} and N = {2} for p = 3
        let (r0, n0) = crate::cyclo::gauss_constants(3).unwrap();
        let lr = ls[1].clone();
        let expect = GroupRingElem::from_subset(&group, &d[0])
            .add(&GroupRingElem::from_subset_with(&group, &d[1], &r0))
            .add(&GroupRingElem::from_subset_with(&group, &d[2], &n0));
        assert_eq!(lr, expect);
    }

    #[test]
    fn lemma33_on_small_fields() {
        let f = tr_x2(3, 2);
        let group = f.group().unwrap();
        let l1 = build_l(&f, 1, &group).unwrap();
        let l2 = build_l(&f, 2, &group).unwrap();
        assert_eq!(l1.mul(&l2, &group), GroupRingElem::scalar(&group, 9));
        for f in [tr_x2(3, 2), tr_x2(5, 2)] {
            let report = verify_lemma33(&f).unwrap();
            assert!(report.all_pass(), "{report:?}");
            assert!(report.part1.iter().all(|c| c.v.is_some()));
        }
        let r5 = verify_lemma33(&tr_x2(5, 2)).unwrap();
        assert_eq!(r5.part1.iter().find(|c| c.t == 1 && c.s == 1).unwrap().v, Some(3));
        assert!(verify_lemma33(&PAryFunction::zero(field(3, 2)).unwrap()).is_err());
        assert!(verify_lemma33(&tr_x2(3, 3)).is_err());
    }

    #[test]
    fn dual_is_weakly_regular() {
        for (p, n, scale) in [(3, 2, false), (3, 2, true), (5, 2, true), (3, 4, false)] {
            let fl = field(p, n);
            let a = if scale { fl.generator() } else { Elem::ONE };
            let f = PAryFunction::trace_quadratic(fl, a).unwrap();
            let Classification::BentWeaklyRegular { dual, .. } = walsh_spectrum(&f).unwrap().classification().clone()
            else {
                panic!("expected weakly regular");
            };
            assert!(walsh_spectrum(&dual).unwrap().classification().is_weakly_regular());
        }
    }

    /// `Tr(a (Σ y_i x^i)^2)` written as a quadratic form over `F_p`.
    fn prime_field_form(fl: &Arc<FiniteField>, a: Elem) -> QuadraticForm {
        let p = fl.characteristic();
        let n = fl.degree() as usize;
        let prime = Arc::new(FiniteField::new(p, 1).unwrap());
        // x^i has index p^i
        let basis: Vec<Elem> = (0..n).map(|i| Elem::from_index(p.pow(i as u32))).collect();
        let mut m = vec![vec![Elem::ZERO; n]; n];
        for i in 0..n {
            for j in i..n {
                let mut c = fl.trace(fl.mul(a, fl.mul(basis[i], basis[j])));
                if i != j {
                    c = 2 * c % p;
                }
                m[i][j] = prime.from_int(c as i64);
            }
        }
        QuadraticForm::new(prime, m).unwrap()
    }

    #[test]
    fn principal_coefficient_matches_form_type() {
        for (p, n) in [(3, 2), (5, 2), (3, 4), (7, 2)] {
            let fl = field(p, n);
            for a in [Elem::ONE, fl.generator()] {
                let f = PAryFunction::trace_quadratic(fl.clone(), a).unwrap();
                let spec = walsh_spectrum(&f).unwrap();
                let Classification::BentWeaklyRegular { u, .. } = spec.classification() else {
                    panic!("quadratic forms are weakly regular");
                };
                let w0 = spec.coefficient(Elem::ZERO).as_integer().unwrap();
                assert_eq!(w0, *u as i64 * p_star(p).pow(n / 2));
                assert_eq!(prime_field_form(&fl, a).form_type().unwrap().exp_sum, w0);
            }
        }
    }

    #[test]
    fn file_roundtrip() {
        let fl = field(3, 2);
        let f = PAryFunction::trace_quadratic(fl.clone(), fl.generator()).unwrap();
        let file = f.to_file();
        assert_eq!(file.values[0], 0);
        assert_eq!(PAryFunction::from_file(&file).unwrap(), f);
        let json = serde_json::to_string(&walsh_spectrum(&f).unwrap().to_file()).unwrap();
        let back: SpectrumFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.classification, "bent_weakly_regular");
        assert_eq!(back.coefficients.len(), 9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn parseval(values in proptest::collection::vec(0u32..3, 27)) {
            let f = PAryFunction::from_values(field(3, 3), values).unwrap();
            prop_assert_eq!(energy(&walsh_spectrum(&f).unwrap()), Some(3i64.pow(6)));
        }

        #[test]
        fn parseval_f25(values in proptest::collection::vec(0u32..5, 25)) {
            let f = PAryFunction::from_values(field(5, 2), values).unwrap();
            prop_assert_eq!(energy(&walsh_spectrum(&f).unwrap()), Some(5i64.pow(4)));
        }
    }
}
