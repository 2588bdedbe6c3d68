//! Partial difference sets: constructions and two independent certifiers.
//!
//! A subset `D` of an abelian group `G` with `0 ∉ D` and `-D = D` is a
//! `(v, k, λ, μ)` PDS when every nonzero element of `D` arises as a
//! difference `x - y` of elements of `D` exactly `λ` times and every nonzero
//! element outside `D` exactly `μ` times.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bent::{homogeneity_degree, level_sets, walsh_spectrum, Classification, PAryFunction};
use crate::cyclo::{from_exponent_counts, minimal_j, p_star, quadratic_residues, CycInt, CyclotomicClasses};
use crate::error::{Error, Result};
use crate::gf::{Elem, FiniteField};
use crate::group::{GroupDescriptor, GroupRingElem, GroupSubset, VectorGroup};
use crate::qform::{FormKind, QuadraticForm};
use crate::util::exact_sqrt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PdsParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

/// `(N², (N-ε)R, εN + R² - 3εR, R² - εR)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatinType {
    pub epsilon: i64,
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "R")]
    pub r: i64,
}

impl LatinType {
    pub fn params(&self) -> Result<PdsParams> {
        let (e, n, r) = (self.epsilon, self.n, self.r);
        let vals = [n * n, (n - e) * r, e * n + r * r - 3 * e * r, r * r - e * r];
        if vals.iter().any(|&x| x < 0) {
            return Err(Error::params(format!("{self:?} gives negative parameters")));
        }
        Ok(PdsParams::new(vals[0] as u64, vals[1] as u64, vals[2] as u64, vals[3] as u64))
    }
}

impl PdsParams {
    pub fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Self {
        PdsParams { v, k, lambda, mu }
    }

    fn signed(&self) -> (i128, i128, i128, i128) {
        (self.v as i128, self.k as i128, self.lambda as i128, self.mu as i128)
    }

    /// `k² = μv + (λ-μ)k + (k-μ)`.
    pub fn satisfies_counting_identity(&self) -> bool {
        let (v, k, l, m) = self.signed();
        k * k == m * v + (l - m) * k + (k - m)
    }

    /// `k(k-λ-1) = (v-k-1)μ`.
    pub fn is_feasible(&self) -> bool {
        let (v, k, l, m) = self.signed();
        k * (k - l - 1) == (v - k - 1) * m
    }

    /// The nonprincipal character values `((λ-μ) ± √Δ)/2`, larger first.
    pub fn eigenvalues(&self) -> Result<(i64, i64)> {
        let (_, k, l, m) = self.signed();
        let delta = (l - m) * (l - m) + 4 * (k - m);
        let root = i64::try_from(delta)
            .ok()
            .and_then(exact_sqrt)
            .ok_or_else(|| Error::Unsupported(format!("Δ = {delta} is not a perfect square")))?
            as i128;
        if (l - m + root) % 2 != 0 {
            return Err(Error::Unsupported(format!("eigenvalues for {self:?} are not integers")));
        }
        Ok((((l - m + root) / 2) as i64, ((l - m - root) / 2) as i64))
    }

    /// `(k, λ, μ)` recovered from eigenvalues `r, s`: `μ = k + rs`, `λ = μ + r + s`.
    /// An empty set is reported as the degenerate `(v, 0, 0, 0)`.
    pub fn from_eigenvalues(v: u64, k: u64, r: i64, s: i64) -> Result<Self> {
        if k == 0 {
            return Ok(PdsParams::new(v, 0, 0, 0));
        }
        let mu = k as i64 + r * s;
        let lambda = mu + r + s;
        if mu < 0 || lambda < 0 {
            return Err(Error::Inconsistent(format!("eigenvalues {r}, {s} give negative parameters")));
        }
        Ok(PdsParams::new(v, k, lambda as u64, mu as u64))
    }
}

impl std::fmt::Display for PdsParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Every `(ε, N, R)` that reproduces `params`. Both signs fit exactly when
/// `N` is odd and `R = (N ± 1)/2` (conference-graph parameters).
pub fn latin_types(params: &PdsParams) -> Vec<LatinType> {
    let Some(n) = i64::try_from(params.v).ok().and_then(exact_sqrt) else {
        return Vec::new();
    };
    let k = params.k as i64;
    [1i64, -1]
        .into_iter()
        .filter_map(|e| {
            let d = n - e;
            if d == 0 || k % d != 0 {
                return None;
            }
            let t = LatinType { epsilon: e, n, r: k / d };
            (t.params().ok()? == *params).then_some(t)
        })
        .collect()
}

/// The Latin-square description of `params`, preferring `ε = +1` when both fit.
pub fn classify_latin_type(params: &PdsParams) -> Option<LatinType> {
    latin_types(params).into_iter().next()
}

/// Why a set failed certification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    ContainsIdentity,
    /// `element ∈ D` but `-element ∉ D`.
    NotSymmetric { element: usize },
    /// Two nonzero elements on the same side of `D` with different
    /// difference counts.
    UnequalCounts { in_set: bool, first: usize, first_count: u64, second: usize, second_count: u64 },
    /// `|D|` differs from the expected `k`.
    WrongSize { size: u64, expected: u64 },
    /// A character value outside the two predicted eigenvalues.
    BadCharacter { b: usize, value: CycInt },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::ContainsIdentity => write!(f, "the identity lies in D"),
            Witness::NotSymmetric { element } => write!(f, "{element} is in D but its negative is not"),
            Witness::UnequalCounts { in_set, first, first_count, second, second_count } => write!(
                f,
                "elements {first} and {second} ({}) occur {first_count} and {second_count} times as differences",
                if *in_set { "in D" } else { "outside D" }
            ),
            Witness::WrongSize { size, expected } => write!(f, "|D| = {size}, expected {expected}"),
            Witness::BadCharacter { b, value } => write!(f, "character {b} takes the value {value}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum BruteForce {
    /// `degenerate` flags `k < 2` or `D ∪ {0} = G`, where `λ` or `μ` is
    /// vacuous and reported as 0.
    Pds { params: PdsParams, degenerate: bool },
    NotPds { witness: Witness },
}

impl BruteForce {
    pub fn params(&self) -> Option<PdsParams> {
        match self {
            BruteForce::Pds { params, .. } => Some(*params),
            BruteForce::NotPds { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            BruteForce::NotPds { witness } => Some(witness),
            BruteForce::Pds { .. } => None,
        }
    }
}

fn check_shape(group: &VectorGroup, set: &GroupSubset) -> Result<Option<Witness>> {
    if set.group_order() != group.order() {
        return Err(Error::Dimension { expected: group.order(), got: set.group_order() });
    }
    if set.contains(0) {
        return Ok(Some(Witness::ContainsIdentity));
    }
    Ok(set.members().iter().find(|&&x| !set.contains(group.neg(x))).map(|&element| Witness::NotSymmetric { element }))
}

/// Number of ordered pairs `(x, y) ∈ D²`, `x ≠ y`, with `x - y = z`, for every `z`.
pub fn difference_counts(group: &VectorGroup, set: &GroupSubset) -> Vec<u64> {
    let v = group.order();
    let members = set.members();
    members
        .par_iter()
        .fold(
            || vec![0u64; v],
            |mut acc, &x| {
                for &y in members {
                    if x != y {
                        acc[group.sub(x, y)] += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; v],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Counts differences directly; the ground truth for every other check.
pub fn verify_pds_bruteforce(group: &VectorGroup, set: &GroupSubset) -> Result<BruteForce> {
    if let Some(witness) = check_shape(group, set)? {
        return Ok(BruteForce::NotPds { witness });
    }
    let counts = difference_counts(group, set);
    let mut lambda: Option<(usize, u64)> = None;
    let mut mu: Option<(usize, u64)> = None;
    for z in 1..group.order() {
        let in_set = set.contains(z);
        let slot = if in_set { &mut lambda } else { &mut mu };
        match *slot {
            None => *slot = Some((z, counts[z])),
            Some((first, c)) if c != counts[z] => {
                let witness = Witness::UnequalCounts {
                    in_set,
                    first,
                    first_count: c,
                    second: z,
                    second_count: counts[z],
                };
                return Ok(BruteForce::NotPds { witness });
            }
            _ => {}
        }
    }
    let k = set.len() as u64;
    let params = PdsParams::new(group.order() as u64, k, lambda.map_or(0, |l| l.1), mu.map_or(0, |m| m.1));
    Ok(BruteForce::Pds { params, degenerate: k < 2 || mu.is_none() })
}

/// `χ_b(D) = Σ_{d ∈ D} ω^{⟨b, d⟩}` for every `b`, with `⟨·,·⟩` the dot
/// product of `F_p`-coordinates.
pub fn character_values(group: &VectorGroup, set: &GroupSubset) -> Vec<CycInt> {
    let p = group.p();
    (0..group.order())
        .into_par_iter()
        .map(|b| {
            let mut hist = vec![0i64; p as usize];
            for &d in set.members() {
                hist[group.dot(b, d) as usize] += 1;
            }
            from_exponent_counts(p, &hist)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterReport {
    pub pass: bool,
    pub eigenvalues: (i64, i64),
    /// How many nonprincipal characters take each eigenvalue.
    pub multiplicities: (u64, u64),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Checks the character criterion for `params`: `χ_0(D) = k` and every
/// nonprincipal `χ_b(D)` is one of the two eigenvalues.
pub fn verify_pds_characters(group: &VectorGroup, set: &GroupSubset, params: &PdsParams) -> Result<CharacterReport> {
    if !params.satisfies_counting_identity() {
        return Err(Error::Precondition(format!("{params} fails the counting identity")));
    }
    if params.v != group.order() as u64 {
        return Err(Error::Precondition(format!("v = {} but |G| = {}", params.v, group.order())));
    }
    let eigenvalues = params.eigenvalues()?;
    let fail = |witness| Ok(CharacterReport { pass: false, eigenvalues, multiplicities: (0, 0), witness: Some(witness) });
    if let Some(witness) = check_shape(group, set)? {
        return fail(witness);
    }
    let values = character_values(group, set);
    if values[0].as_integer() != Some(params.k as i64) {
        return fail(Witness::WrongSize { size: set.len() as u64, expected: params.k });
    }
    let mut mult = (0, 0);
    for (b, value) in values.iter().enumerate().skip(1) {
        match value.as_integer() {
            Some(x) if x == eigenvalues.0 => mult.0 += 1,
            Some(x) if x == eigenvalues.1 => mult.1 += 1,
            _ => return fail(Witness::BadCharacter { b, value: value.clone() }),
        }
    }
    Ok(CharacterReport { pass: true, eigenvalues, multiplicities: mult, witness: None })
}

/// A constructed set together with what theory predicts about it.
#[derive(Clone, Debug)]
pub struct PdsConstruction {
    pub group: VectorGroup,
    pub set: GroupSubset,
    pub params: PdsParams,
    pub latin: Option<LatinType>,
}

/// Everything shared by the sets `{x : Q(x) ∈ C_i}` for one `(p, e, γ, m, type)`.
#[derive(Clone, Debug)]
pub struct CyclotomicSetup {
    pub group: VectorGroup,
    pub form: QuadraticForm,
    pub classes: CyclotomicClasses,
    /// `Q(x)` by group index.
    pub values: Vec<Elem>,
    pub epsilon: i64,
    pub q: u64,
    pub m: u32,
}

impl CyclotomicSetup {
    pub fn new(p: u32, e: u32, gamma: u32, m: u32, kind: FormKind) -> Result<Self> {
        if gamma == 0 || m == 0 {
            return Err(Error::params("γ and m must be at least 1"));
        }
        let j = minimal_j(p, e)?
            .ok_or_else(|| Error::params(format!("no j with {p}^j ≡ -1 (mod {e})")))?;
        let field = Arc::new(FiniteField::new(p, 2 * j * gamma)?);
        Self::with_form(QuadraticForm::standard(field, m, kind)?, e)
    }

    /// Uses an arbitrary nonsingular form; `e` must divide `q - 1`.
    pub fn with_form(form: QuadraticForm, e: u32) -> Result<Self> {
        let field = form.field().clone();
        let group = VectorGroup::new(field.clone(), form.n())?;
        let epsilon = form.form_type()?.epsilon;
        let classes = CyclotomicClasses::new(field.clone(), e)?;
        let values = form.value_table(&group)?;
        Ok(CyclotomicSetup { group, m: form.m(), form, classes, values, epsilon, q: field.order() as u64 })
    }

    pub fn f(&self) -> u64 {
        self.classes.f() as u64
    }

    /// `D_{C_i} = {x : Q(x) ∈ C_i}`.
    pub fn class_set(&self, i: u32) -> Result<GroupSubset> {
        if i >= self.classes.e() {
            return Err(Error::params(format!("class index {i} not in [0, {})", self.classes.e())));
        }
        let members = (0..self.group.order()).filter(|&x| self.classes.class_of(self.values[x]) == Some(i));
        GroupSubset::new(self.group.order(), members)
    }

    /// `D_0 = {x : Q(x) = 0}`, including `0`.
    pub fn zero_set(&self) -> GroupSubset {
        let members = (0..self.group.order()).filter(|&x| self.values[x].is_zero());
        GroupSubset::new(self.group.order(), members).expect("indices are in range")
    }

    /// `(N, R) = (q^m, f q^{m-1})`.
    pub fn latin(&self) -> LatinType {
        let qm1 = (self.q as i64).pow(self.m - 1);
        LatinType { epsilon: self.epsilon, n: qm1 * self.q as i64, r: self.f() as i64 * qm1 }
    }

    /// `|D_0| = q^{2m-1} + ε q^{m-1} (q - 1)`.
    pub fn predicted_zero_count(&self) -> i64 {
        let q = self.q as i64;
        q.pow(2 * self.m - 1) + self.epsilon * q.pow(self.m - 1) * (q - 1)
    }

    /// The two nonprincipal character values of every `D_{C_i}`:
    /// `ε q^{m-1} (q - f)` and `-ε q^{m-1} f`.
    pub fn predicted_characters(&self) -> (i64, i64) {
        let (q, f) = (self.q as i64, self.f() as i64);
        let s = self.epsilon * q.pow(self.m - 1);
        (s * (q - f), -s * f)
    }
}

/// `D_{C_i} = {x ∈ F_q^{2m} : Q(x) ∈ C_i}` with `q = p^{2jγ}`, `j` minimal
/// with `e | p^j + 1`, and `Q` the standard form of the given type.
pub fn construct_cyclotomic_pds(p: u32, e: u32, gamma: u32, m: u32, kind: FormKind, i: u32) -> Result<PdsConstruction> {
    let setup = CyclotomicSetup::new(p, e, gamma, m, kind)?;
    let set = setup.class_set(i)?;
    let latin = setup.latin();
    Ok(PdsConstruction { group: setup.group, set, params: latin.params()?, latin: Some(latin) })
}

/// `{x : Q(x) is a nonzero square}` for odd `q`.
pub fn construct_affine_polar(field: Arc<FiniteField>, m: u32, kind: FormKind) -> Result<PdsConstruction> {
    if field.characteristic() == 2 {
        return Err(Error::params("affine polar graphs need odd q"));
    }
    let setup = CyclotomicSetup::with_form(QuadraticForm::standard(field, m, kind)?, 2)?;
    let set = setup.class_set(0)?;
    let latin = setup.latin();
    Ok(PdsConstruction { group: setup.group, set, params: latin.params()?, latin: Some(latin) })
}

/// `D_0 ∖ {0}` for a nonsingular form, with `r = q^{m-1} + ε`.
pub fn construct_rt2(form: &QuadraticForm) -> Result<PdsConstruction> {
    let ty = form.form_type()?;
    let group = VectorGroup::new(form.field().clone(), form.n())?;
    let values = form.value_table(&group)?;
    let set = GroupSubset::new(group.order(), (1..group.order()).filter(|&x| values[x].is_zero()))?;
    let q = form.field().order() as i64;
    let eps = ty.epsilon;
    let latin = LatinType { epsilon: eps, n: q.pow(ty.m), r: q.pow(ty.m - 1) + eps };
    let params = if latin.r == 0 { PdsParams::new(group.order() as u64, 0, 0, 0) } else { latin.params()? };
    Ok(PdsConstruction { group, set, params, latin: (latin.r != 0).then_some(latin) })
}

/// Named group-ring identity with its exact evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingIdentity {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct BentPds {
    pub group: VectorGroup,
    pub u: i8,
    pub k: u32,
    /// `D_0 ∖ {0}`, `D_R`, `D_N`.
    pub d0_minus: GroupSubset,
    pub d_r: GroupSubset,
    pub d_n: GroupSubset,
    /// Parameters implied by the eigenvalues of the squared identities.
    pub d0_params: PdsParams,
    pub dr_params: PdsParams,
    pub dn_params: PdsParams,
    pub certificates: Vec<RingIdentity>,
}

impl BentPds {
    pub fn sets(&self) -> [(&'static str, &GroupSubset, PdsParams); 3] {
        [("D0", &self.d0_minus, self.d0_params), ("DR", &self.d_r, self.dr_params), ("DN", &self.d_n, self.dn_params)]
    }

    pub fn certified(&self) -> bool {
        self.certificates.iter().all(|c| c.holds)
    }
}

/// The three sets built from the level sets of a homogeneous weakly regular
/// bent function with `n` even, with the squared group-ring identities
///
/// - `(pD_R - cF)² = ((p²-1)/4) p^n + uP (pD_R - cF)`, same for `D_N`,
/// - `p² D_0² = (-p^n + 2p|D_0| - uP(p-2)) F + up(p-2)P D_0 + (p-1) p^n`,
///
/// where `c = (p-1)/2`, `F` is the sum of all elements and `P = (p*)^{n/2}`,
/// evaluated exactly.
pub fn construct_bent_pds(f: &PAryFunction) -> Result<BentPds> {
    let p = f.p();
    let n = f.n();
    if n % 2 == 1 {
        return Err(Error::Precondition(format!("n = {n} must be even")));
    }
    let spectrum = walsh_spectrum(f)?;
    let Classification::BentWeaklyRegular { u, .. } = *spectrum.classification() else {
        return Err(Error::Precondition(format!(
            "f must be weakly regular bent, found {}",
            spectrum.classification().name()
        )));
    };
    let k = homogeneity_degree(f)
        .ok_or_else(|| Error::Precondition("no k with gcd(k-1, p-1) = 1 and f(tx) = t^k f(x)".into()))?;

    let group = f.group()?;
    let v = group.order();
    let levels = level_sets(f);
    let residues = quadratic_residues(p);
    let union = |want: bool| {
        let members = (1..p as usize).filter(|&i| residues[i] == want).flat_map(|i| levels[i].members().to_vec());
        GroupSubset::new(v, members)
    };
    let d_r = union(true)?;
    let d_n = union(false)?;
    let d0 = levels[0].clone();
    let d0_minus = d0.without(0);

    let pi = p as i64;
    let pn = pi.pow(n);
    let big_p = p_star(p).pow(n / 2);
    let up = u as i64 * big_p;
    let c = (pi - 1) / 2;
    let all = GroupRingElem::all_ones(&group);
    let ring = |s: &GroupSubset| GroupRingElem::from_subset(&group, s);

    let mut certificates = Vec::new();
    for (name, s) in [("DR", &d_r), ("DN", &d_n)] {
        let x = ring(s).scale(pi).sub(&all.scale(c));
        let lhs = x.mul(&x, &group);
        let rhs = GroupRingElem::scalar(&group, (pi * pi - 1) / 4 * pn).add(&x.scale(up));
        certificates.push(RingIdentity { name: format!("(p{name} - (p-1)/2 F)^2"), holds: lhs == rhs });
    }
    let d0r = ring(&d0);
    let lhs = d0r.mul(&d0r, &group).scale(pi * pi);
    let rhs = all
        .scale(-pn + 2 * pi * d0.len() as i64 - up * (pi - 2))
        .add(&d0r.scale(pi * (pi - 2) * up))
        .add(&GroupRingElem::scalar(&group, (pi - 1) * pn));
    certificates.push(RingIdentity { name: "p^2 D0^2".into(), holds: lhs == rhs });

    // nonprincipal eigenvalues read off the identities
    let root = pn * pi * pi;
    let sq = exact_sqrt(root).expect("p^{n+2} is a square for even n");
    let halves = |a: i64, d: i64| -> Result<(i64, i64)> {
        if (a + sq) % d != 0 || (a - sq) % d != 0 {
            return Err(Error::Inconsistent("non-integral eigenvalue".into()));
        }
        Ok(((a + sq) / d, (a - sq) / d))
    };
    let (r1, s1) = halves(up, 2 * pi)?;
    let (r0, s0) = halves((pi - 2) * up, 2 * pi)?;
    let vv = v as u64;
    let dr_params = PdsParams::from_eigenvalues(vv, d_r.len() as u64, r1, s1)?;
    let dn_params = PdsParams::from_eigenvalues(vv, d_n.len() as u64, r1, s1)?;
    // D_0 ∖ {0} shifts every nonprincipal value by -1
    let d0_params = PdsParams::from_eigenvalues(vv, d0_minus.len() as u64, r0 - 1, s0 - 1)?;

    Ok(BentPds { group, u, k, d0_minus, d_r, d_n, d0_params, dr_params, dn_params, certificates })
}

/// Replaces a `±` pair of `D` by a `±` pair from outside `D ∪ {0}` (single
/// elements when `p = 2`), preserving size and symmetry.
pub fn perturb(group: &VectorGroup, set: &GroupSubset, rng: &mut impl Rng) -> Result<GroupSubset> {
    let v = group.order();
    let inside: Vec<usize> = set.members().to_vec();
    let outside: Vec<usize> = (1..v).filter(|&x| !set.contains(x)).collect();
    let (Some(&x), Some(&y)) = (inside.choose(rng), outside.choose(rng)) else {
        return Err(Error::params("perturbation needs elements both inside and outside the set"));
    };
    let mask = {
        let mut mask = set.mask();
        mask[x] = false;
        mask[group.neg(x)] = false;
        mask[y] = true;
        mask[group.neg(y)] = true;
        mask
    };
    Ok(GroupSubset::from_mask(&mask))
}

/// Same as [`perturb`] but only exchanges one element, which breaks symmetry
/// for odd `p`.
pub fn swap_one(set: &GroupSubset, rng: &mut impl Rng) -> Result<GroupSubset> {
    let v = set.group_order();
    let outside: Vec<usize> = (1..v).filter(|&x| !set.contains(x)).collect();
    let (Some(&x), Some(&y)) = (set.members().choose(rng), outside.choose(rng)) else {
        return Err(Error::params("swap needs elements both inside and outside the set"));
    };
    let mut mask = set.mask();
    mask[x] = false;
    mask[y] = true;
    Ok(GroupSubset::from_mask(&mask))
}

/// Edges `u v` (`u < v`) of `Cay(G, D)`, one per line.
pub fn cayley_edge_list(group: &VectorGroup, set: &GroupSubset) -> String {
    let mut out = String::new();
    for a in 0..group.order() {
        for &d in set.members() {
            let b = group.add(a, d);
            if a < b {
                writeln!(out, "{a} {b}").expect("writing to a String");
            }
        }
    }
    out
}

/// Adjacency matrix of `Cay(G, D)` as CSV.
pub fn cayley_adjacency_csv(group: &VectorGroup, set: &GroupSubset) -> String {
    let v = group.order();
    let mut out = String::with_capacity(v * v * 2);
    let mut row = vec!['0'; v];
    for a in 0..v {
        row.iter_mut().for_each(|c| *c = '0');
        for b in 0..v {
            if set.contains(group.sub(a, b)) {
                row[b] = '1';
            }
        }
        let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Prediction block attached to a set file by the constructions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub construction: String,
    pub params: PdsParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub latin: Option<LatinType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<(i64, i64)>,
}

impl Prediction {
    pub fn new(construction: impl Into<String>, params: PdsParams, latin: Option<LatinType>) -> Self {
        Prediction { construction: construction.into(), params, latin, eigenvalues: params.eigenvalues().ok() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFile {
    pub group: GroupDescriptor,
    pub members: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prediction: Option<Prediction>,
}

impl SetFile {
    pub fn new(group: &VectorGroup, set: &GroupSubset, prediction: Option<Prediction>) -> Self {
        SetFile { group: group.descriptor(), members: set.members().to_vec(), prediction }
    }

    pub fn load(&self) -> Result<(VectorGroup, GroupSubset)> {
        let group = VectorGroup::from_descriptor(&self.group)?;
        let set = GroupSubset::new(group.order(), self.members.iter().copied())?;
        Ok((group, set))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bruteforce,
    Characters,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub method: Method,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<PdsParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub latin: Option<LatinType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<(i64, i64)>,
    pub degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Certificate {
    pub fn from_bruteforce(result: &BruteForce) -> Self {
        match result {
            BruteForce::Pds { params, degenerate } => Certificate {
                method: Method::Bruteforce,
                pass: true,
                params: Some(*params),
                latin: classify_latin_type(params),
                eigenvalues: params.eigenvalues().ok(),
                degenerate: *degenerate,
                witness: None,
            },
            BruteForce::NotPds { witness } => Certificate {
                method: Method::Bruteforce,
                pass: false,
                params: None,
                latin: None,
                eigenvalues: None,
                degenerate: false,
                witness: Some(witness.clone()),
            },
        }
    }

    pub fn from_characters(params: &PdsParams, report: &CharacterReport) -> Self {
        Certificate {
            method: Method::Characters,
            pass: report.pass,
            params: Some(*params),
            latin: classify_latin_type(params),
            eigenvalues: Some(report.eigenvalues),
            degenerate: params.k < 2,
            witness: report.witness.clone(),
        }
    }
}
