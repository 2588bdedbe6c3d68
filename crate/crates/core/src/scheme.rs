//! Translation association schemes on elementary abelian groups.
//!
//! A partition `S_1, ..., S_d` of `G ∖ {0}` into symmetric classes defines
//! relations `R_i = {(x, y) : x - y ∈ S_i}`. It is a scheme exactly when each
//! product `S_i S_j` in the group ring is constant on every class and on
//! `{0}`; those constants are the intersection numbers `p_ij^k`.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bent::PAryFunction;
use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupSubset, VectorGroup};
use crate::pds::{construct_bent_pds, latin_types, verify_pds_bruteforce, BruteForce, CyclotomicSetup, PdsParams};
use crate::qform::FormKind;

/// Fusion enumeration visits `Bell(d)` partitions; `Bell(8) = 4140`.
pub const MAX_FUSION_CLASSES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationPartition {
    group: VectorGroup,
    classes: Vec<GroupSubset>,
    dropped_empty: usize,
}

impl TranslationPartition {
    /// Validates symmetry, disjointness and cover; empty classes are dropped
    /// and counted.
    pub fn new(group: VectorGroup, classes: Vec<GroupSubset>) -> Result<Self> {
        let v = group.order();
        let mut owner = vec![usize::MAX; v];
        for (i, class) in classes.iter().enumerate() {
            if class.group_order() != v {
                return Err(Error::Dimension { expected: v, got: class.group_order() });
            }
            for &x in class.members() {
                if x == 0 {
                    return Err(Error::params(format!("class {i} contains the identity")));
                }
                if owner[x] != usize::MAX {
                    return Err(Error::params(format!("element {x} lies in classes {} and {i}", owner[x])));
                }
                owner[x] = i;
                if !class.contains(group.neg(x)) {
                    return Err(Error::params(format!("class {i} is not symmetric: {x} has no negative in it")));
                }
            }
        }
        if let Some(x) = (1..v).find(|&x| owner[x] == usize::MAX) {
            return Err(Error::params(format!("element {x} is in no class")));
        }
        let before = classes.len();
        let classes: Vec<GroupSubset> = classes.into_iter().filter(|c| !c.is_empty()).collect();
        Ok(TranslationPartition { group, dropped_empty: before - classes.len(), classes })
    }

    pub fn group(&self) -> &VectorGroup {
        &self.group
    }

    pub fn classes(&self) -> &[GroupSubset] {
        &self.classes
    }

    /// Number of classes `d`, after dropping empty ones.
    pub fn d(&self) -> usize {
        self.classes.len()
    }

    pub fn dropped_empty(&self) -> usize {
        self.dropped_empty
    }

    /// `0` for the identity, `i + 1` for elements of class `i`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.group.order()];
        for (i, class) in self.classes.iter().enumerate() {
            for &x in class.members() {
                labels[x] = i + 1;
            }
        }
        labels
    }

    /// Merges classes according to `blocks`, a partition of `0..d`.
    pub fn fuse(&self, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut classes = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut acc = GroupSubset::empty(self.group.order());
            for &i in block {
                let class = self.classes.get(i).ok_or_else(|| Error::params(format!("no class {i}")))?;
                acc = acc.union(class);
            }
            classes.push(acc);
        }
        TranslationPartition::new(self.group.clone(), classes)
    }

    pub fn to_file(&self) -> PartitionFile {
        PartitionFile {
            group: self.group.descriptor(),
            classes: self.classes.iter().map(|c| c.members().to_vec()).collect(),
        }
    }

    pub fn from_file(file: &PartitionFile) -> Result<Self> {
        let group = VectorGroup::from_descriptor(&file.group)?;
        let classes = file
            .classes
            .iter()
            .map(|c| GroupSubset::new(group.order(), c.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, classes)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFile {
    pub group: GroupDescriptor,
    pub classes: Vec<Vec<usize>>,
}

/// Two elements of class `k` seeing different counts in `S_i S_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub first: usize,
    pub first_count: u64,
    pub second: usize,
    pub second_count: u64,
}

impl std::fmt::Display for SchemeWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "S_{} S_{} takes values {} at {} and {} at {}, both in class {}",
            self.i, self.j, self.first_count, self.first, self.second_count, self.second, self.k
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionReport {
    pub blocks: Vec<Vec<usize>>,
    /// Brute-force parameters of each fused class, `None` if it is not a PDS.
    pub params: Vec<Option<PdsParams>>,
    pub is_scheme: bool,
}

impl FusionReport {
    pub fn pass(&self) -> bool {
        self.is_scheme && self.params.iter().all(Option::is_some)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeCertificate {
    pub d: usize,
    pub class_sizes: Vec<usize>,
    pub dropped_empty_classes: usize,
    /// `p_ij^k` for `i, j, k ∈ [0, d]`, class 0 being `{0}`.
    pub p_tensor: Vec<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amorphic: Option<bool>,
    /// Brute-force parameters of each class, when amorphic certification ran.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub class_params: Vec<Option<PdsParams>>,
    /// The shared `ε` of every class, if one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub common_epsilon: Option<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub fusion_reports: Vec<FusionReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SchemeCheck {
    Scheme(SchemeCertificate),
    NotScheme { witness: SchemeWitness },
}

impl SchemeCheck {
    pub fn certificate(&self) -> Option<&SchemeCertificate> {
        match self {
            SchemeCheck::Scheme(c) => Some(c),
            SchemeCheck::NotScheme { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&SchemeWitness> {
        match self {
            SchemeCheck::NotScheme { witness } => Some(witness),
            SchemeCheck::Scheme(_) => None,
        }
    }
}

/// Computes every `S_i S_j` and checks constancy on each class.
pub fn check_scheme(partition: &TranslationPartition) -> SchemeCheck {
    let group = &partition.group;
    let v = group.order();
    let d = partition.d();
    let labels = partition.labels();
    // index 0 stands for the class {0}
    let mut members: Vec<Vec<usize>> = vec![vec![0]];
    members.extend(partition.classes.iter().map(|c| c.members().to_vec()));

    // counts[i][j][z] = |{(a, b) ∈ S_i × S_j : a + b = z}|
    let counts: Vec<Vec<Vec<u64>>> = (0..=d)
        .into_par_iter()
        .map(|i| {
            let mut c = vec![vec![0u64; v]; d + 1];
            for &a in &members[i] {
                for b in 0..v {
                    c[labels[b]][group.add(a, b)] += 1;
                }
            }
            c
        })
        .collect();

    let mut tensor = vec![vec![vec![0u64; d + 1]; d + 1]; d + 1];
    for i in 0..=d {
        for j in 0..=d {
            for k in 0..=d {
                let first = members[k][0];
                let value = counts[i][j][first];
                if let Some(&second) = members[k].iter().find(|&&z| counts[i][j][z] != value) {
                    let witness = SchemeWitness {
                        i,
                        j,
                        k,
                        first,
                        first_count: value,
                        second,
                        second_count: counts[i][j][second],
                    };
                    return SchemeCheck::NotScheme { witness };
                }
                tensor[i][j][k] = value;
            }
        }
    }
    let mut notes = Vec::new();
    if partition.dropped_empty > 0 {
        notes.push(format!("{} empty class(es) dropped", partition.dropped_empty));
    }
    SchemeCheck::Scheme(SchemeCertificate {
        d,
        class_sizes: partition.classes.iter().map(GroupSubset::len).collect(),
        dropped_empty_classes: partition.dropped_empty,
        p_tensor: tensor,
        amorphic: None,
        class_params: Vec::new(),
        common_epsilon: None,
        fusion_reports: Vec::new(),
        notes,
    })
}

/// All set partitions of `0..d`, as lists of blocks, via restricted growth
/// strings.
pub fn set_partitions(d: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, d: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == d {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, d, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, d, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(0, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Certifies an amorphic scheme directly:
///
/// - the partition is a scheme;
/// - every class is a PDS (brute force) and all classes admit one common
///   Latin-square sign `ε`;
/// - every fusion (all `Bell(d)` of them) is a scheme whose fused classes are
///   PDS.
///
/// Returns the scheme witness if the partition is not a scheme at all.
pub fn certify_amorphic(partition: &TranslationPartition) -> Result<SchemeCheck> {
    let d = partition.d();
    if d > MAX_FUSION_CLASSES {
        return Err(Error::Unsupported(format!("{d} classes exceed the fusion cap of {MAX_FUSION_CLASSES}")));
    }
    let mut cert = match check_scheme(partition) {
        SchemeCheck::Scheme(c) => c,
        not => return Ok(not),
    };
    let group = &partition.group;
    let class_params: Vec<Option<PdsParams>> = partition
        .classes
        .iter()
        .map(|c| verify_pds_bruteforce(group, c).map(|r| r.params()))
        .collect::<Result<_>>()?;
    let common_epsilon = [1i64, -1].into_iter().find(|&e| {
        class_params
            .iter()
            .all(|p| p.is_some_and(|p| latin_types(&p).iter().any(|t| t.epsilon == e)))
    });
    let fusion_reports: Vec<FusionReport> = set_partitions(d)
        .into_par_iter()
        .map(|blocks| -> Result<FusionReport> {
            let fused = partition.fuse(&blocks)?;
            let params = fused
                .classes
                .iter()
                .map(|c| verify_pds_bruteforce(group, c).map(|r| r.params()))
                .collect::<Result<_>>()?;
            let is_scheme = matches!(check_scheme(&fused), SchemeCheck::Scheme(_));
            Ok(FusionReport { blocks, params, is_scheme })
        })
        .collect::<Result<_>>()?;
    let hypothesis = class_params.iter().all(Option::is_some) && (common_epsilon.is_some() || d < 3);
    if common_epsilon.is_none() {
        cert.notes.push("classes do not share a Latin-square sign".into());
    }
    cert.amorphic = Some(hypothesis && fusion_reports.iter().all(FusionReport::pass));
    cert.class_params = class_params;
    cert.common_epsilon = common_epsilon;
    cert.fusion_reports = fusion_reports;
    Ok(SchemeCheck::Scheme(cert))
}

/// Brute-force results for the union of every proper nonempty subfamily of
/// classes.
pub fn verify_unions(partition: &TranslationPartition) -> Result<Vec<(Vec<usize>, BruteForce)>> {
    let d = partition.d();
    if d > MAX_FUSION_CLASSES {
        return Err(Error::Unsupported(format!("{d} classes exceed the cap of {MAX_FUSION_CLASSES}")));
    }
    (1u32..(1 << d) - 1)
        .into_par_iter()
        .map(|mask| {
            let chosen: Vec<usize> = (0..d).filter(|&i| mask >> i & 1 == 1).collect();
            let set = chosen
                .iter()
                .fold(GroupSubset::empty(partition.group.order()), |acc, &i| acc.union(&partition.classes[i]));
            Ok((chosen, verify_pds_bruteforce(&partition.group, &set)?))
        })
        .collect()
}

/// `{D_0 ∖ {0}, D_{C_0}, ..., D_{C_{e-1}}}` on `F_q^{2m}`.
pub fn build_cyclotomic_scheme(p: u32, e: u32, gamma: u32, m: u32, kind: FormKind) -> Result<TranslationPartition> {
    let setup = CyclotomicSetup::new(p, e, gamma, m, kind)?;
    let mut classes = vec![setup.zero_set().without(0)];
    for i in 0..e {
        classes.push(setup.class_set(i)?);
    }
    TranslationPartition::new(setup.group, classes)
}

/// `{D_0 ∖ {0}, D_R, D_N}` from a homogeneous weakly regular bent function.
pub fn build_bent_scheme(f: &PAryFunction) -> Result<TranslationPartition> {
    let b = construct_bent_pds(f)?;
    TranslationPartition::new(b.group, vec![b.d0_minus, b.d_r, b.d_n])
}

/// A uniformly random partition of `G ∖ {0}` into `d` nonempty symmetric
/// classes, assigning whole `±` pairs.
pub fn random_symmetric_partition(group: &VectorGroup, d: usize, rng: &mut impl Rng) -> Result<TranslationPartition> {
    let v = group.order();
    let mut pairs: Vec<usize> = (1..v).filter(|&x| x <= group.neg(x)).collect();
    if d == 0 || d > pairs.len() {
        return Err(Error::params(format!("cannot split {} ± pairs into {d} classes", pairs.len())));
    }
    pairs.shuffle(rng);
    let mut mask = vec![vec![false; v]; d];
    for (slot, &x) in pairs.iter().enumerate() {
        // the first d pairs seed one class each
        let c = if slot < d { slot } else { rng.gen_range(0..d) };
        mask[c][x] = true;
        mask[c][group.neg(x)] = true;
    }
    TranslationPartition::new(group.clone(), mask.iter().map(|m| GroupSubset::from_mask(m)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Elem, FiniteField};
    use crate::pds::construct_cyclotomic_pds;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn f2_4() -> VectorGroup {
        VectorGroup::new(Arc::new(FiniteField::new(2, 1).unwrap()), 4).unwrap()
    }

    /// Oracle: `p_ij^k` by the defining count over `z` for a chosen pair `(x, y)`.
    fn direct_p(part: &TranslationPartition, i: usize, j: usize, x: usize, y: usize) -> u64 {
        let g = part.group();
        let labels = part.labels();
        (0..g.order()).filter(|&z| labels[g.sub(x, z)] == i && labels[g.sub(z, y)] == j).count() as u64
    }

    #[test]
    fn bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (d, &b) in bell.iter().enumerate().skip(1) {
            assert_eq!(set_partitions(d).len(), b);
        }
    }

    #[test]
    fn complete_graph() {
        let g = f2_4();
        let all = GroupSubset::new(16, 1..16).unwrap();
        let part = TranslationPartition::new(g, vec![all]).unwrap();
        let cert = check_scheme(&part).certificate().unwrap().clone();
        assert_eq!(cert.p_tensor[1][1][1], 14);
        assert_eq!(cert.p_tensor[1][1][0], 15);
    }

    #[test]
    fn clebsch_two_class() {
        let c = construct_cyclotomic_pds(2, 3, 1, 1, FormKind::Elliptic, 0).unwrap();
        let complement = GroupSubset::new(16, (1..16).filter(|&x| !c.set.contains(x))).unwrap();
        let part = TranslationPartition::new(c.group, vec![c.set, complement]).unwrap();
        let cert = check_scheme(&part).certificate().unwrap().clone();
        assert_eq!(cert.p_tensor[1][1][1], 0);
        assert_eq!(cert.p_tensor[1][1][2], 2);
        for i in 0..=2 {
            for j in 0..=2 {
                for k in 0..=2 {
                    assert_eq!(cert.p_tensor[i][j][k], cert.p_tensor[j][i][k]);
                }
            }
        }
        let amorphic = certify_amorphic(&part).unwrap().certificate().unwrap().clone();
        assert_eq!(amorphic.amorphic, Some(true));
        assert_eq!(amorphic.fusion_reports.len(), 2);
    }

    #[test]
    fn tensor_matches_definition() {
        let part = build_cyclotomic_scheme(2, 3, 1, 1, FormKind::Hyperbolic).unwrap();
        let cert = check_scheme(&part).certificate().unwrap().clone();
        let labels = part.labels();
        let d = part.d();
        for k in 0..=d {
            let y = 0;
            let x = (0..16).find(|&x| labels[x] == k).unwrap();
            for i in 0..=d {
                let row: u64 = (0..=d).map(|j| cert.p_tensor[i][j][k]).sum();
                let size = if i == 0 { 1 } else { part.classes()[i - 1].len() as u64 };
                assert_eq!(row, size);
                for j in 0..=d {
                    assert_eq!(cert.p_tensor[i][j][k], direct_p(&part, i, j, x, y));
                }
            }
        }
    }

    #[test]
    fn cyclotomic_scheme_sizes() {
        let ell = build_cyclotomic_scheme(2, 3, 1, 1, FormKind::Elliptic).unwrap();
        assert_eq!(ell.dropped_empty(), 1);
        assert_eq!(ell.classes().iter().map(GroupSubset::len).collect::<Vec<_>>(), vec![5, 5, 5]);
        let hyp = build_cyclotomic_scheme(2, 3, 1, 1, FormKind::Hyperbolic).unwrap();
        assert_eq!(hyp.classes().iter().map(GroupSubset::len).collect::<Vec<_>>(), vec![6, 3, 3, 3]);
        let big = build_cyclotomic_scheme(3, 4, 1, 1, FormKind::Elliptic).unwrap();
        assert_eq!(big.dropped_empty(), 1);
        assert_eq!(big.classes().iter().map(GroupSubset::len).collect::<Vec<_>>(), vec![20; 4]);
    }

    #[test]
    fn cyclotomic_schemes_are_amorphic() {
        for kind in [FormKind::Elliptic, FormKind::Hyperbolic] {
            let part = build_cyclotomic_scheme(2, 3, 1, 1, kind).unwrap();
            let cert = certify_amorphic(&part).unwrap().certificate().unwrap().clone();
            assert_eq!(cert.amorphic, Some(true));
            assert_eq!(cert.common_epsilon, Some(kind.epsilon()));
            assert_eq!(cert.dropped_empty_classes > 0, !cert.notes.is_empty());
        }
    }

    #[test]
    fn unions_are_pds() {
        let part = build_cyclotomic_scheme(3, 4, 1, 1, FormKind::Hyperbolic).unwrap();
        assert_eq!(part.d(), 5);
        let unions = verify_unions(&part).unwrap();
        assert_eq!(unions.len(), 30);
        assert!(unions.iter().all(|(_, r)| r.params().is_some()));
    }

    #[test]
    fn bent_scheme_on_f9() {
        let field = Arc::new(FiniteField::new(3, 2).unwrap());
        let f = PAryFunction::trace_quadratic(field, Elem::ONE).unwrap();
        let part = build_bent_scheme(&f).unwrap();
        assert_eq!(part.classes().iter().map(GroupSubset::len).sum::<usize>(), 8);
        let cert = certify_amorphic(&part).unwrap().certificate().unwrap().clone();
        assert_eq!(cert.amorphic, Some(true));
    }

    #[test]
    fn random_partitions_fail_with_witness() {
        let g = f2_4();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut failures = 0;
        for _ in 0..20 {
            let part = random_symmetric_partition(&g, 3, &mut rng).unwrap();
            assert_eq!(part.d(), 3);
            if let SchemeCheck::NotScheme { witness } = check_scheme(&part) {
                let labels = part.labels();
                // recount both elements independently
                let count = |z: usize| {
                    (0..16)
                        .filter(|&a| labels[a] == witness.i && labels[g.sub(z, a)] == witness.j)
                        .count() as u64
                };
                assert_eq!(count(witness.first), witness.first_count);
                assert_eq!(count(witness.second), witness.second_count);
                failures += 1;
            }
        }
        assert!(failures >= 15);
    }

    #[test]
    fn invalid_partitions() {
        let g = f2_4();
        let a = GroupSubset::new(16, 1..8).unwrap();
        let b = GroupSubset::new(16, 7..16).unwrap();
        assert!(TranslationPartition::new(g.clone(), vec![a.clone(), b]).is_err());
        assert!(TranslationPartition::new(g.clone(), vec![a]).is_err());
        let g3 = VectorGroup::new(Arc::new(FiniteField::new(3, 1).unwrap()), 1).unwrap();
        let asym = vec![GroupSubset::new(3, [1]).unwrap(), GroupSubset::new(3, [2]).unwrap()];
        assert!(TranslationPartition::new(g3, asym).is_err());
        let big: Vec<GroupSubset> = (1..16).map(|x| GroupSubset::new(16, [x]).unwrap()).collect();
        let part = TranslationPartition::new(g, big).unwrap();
        assert!(certify_amorphic(&part).is_err());
    }

    #[test]
    fn partition_file_roundtrip() {
        let part = build_cyclotomic_scheme(2, 3, 1, 1, FormKind::Hyperbolic).unwrap();
        let json = serde_json::to_string(&part.to_file()).unwrap();
        let back = TranslationPartition::from_file(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, part);
    }
}
