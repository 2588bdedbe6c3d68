//! Quadratic forms on `V = F_q^n` with `n` even.
//!
//! The type `ε` of a nonsingular form is read off the exponential sum
//! `Σ_{x ∈ V} ψ_1(Q(x)) = ε q^m`, which works the same way in every
//! characteristic.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclo::from_exponent_counts;
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldDescriptor, FiniteField};
use crate::group::VectorGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Hyperbolic,
    Elliptic,
}

impl FormKind {
    pub fn epsilon(self) -> i64 {
        match self {
            FormKind::Hyperbolic => 1,
            FormKind::Elliptic => -1,
        }
    }
}

impl std::str::FromStr for FormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hyperbolic" | "+" | "plus" => Ok(FormKind::Hyperbolic),
            "elliptic" | "-" | "minus" => Ok(FormKind::Elliptic),
            _ => Err(Error::params(format!("unknown form type {s:?}"))),
        }
    }
}

/// `Q(x) = Σ_{i ≤ j} M_ij x_i x_j` with `M` upper triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    field: Arc<FiniteField>,
    n: usize,
    matrix: Vec<Vec<Elem>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormType {
    pub epsilon: i64,
    pub exp_sum: i64,
    pub m: u32,
}

impl FormType {
    pub fn kind(&self) -> FormKind {
        if self.epsilon > 0 {
            FormKind::Hyperbolic
        } else {
            FormKind::Elliptic
        }
    }
}

impl QuadraticForm {
    pub fn new(field: Arc<FiniteField>, matrix: Vec<Vec<Elem>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || n % 2 != 0 {
            return Err(Error::params(format!("dimension n = {n} must be even and positive")));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension { expected: n, got: row.len() });
            }
            for (j, &e) in row.iter().enumerate() {
                field.check(e)?;
                if j < i && !e.is_zero() {
                    return Err(Error::params("matrix must be upper triangular"));
                }
            }
        }
        Ok(QuadraticForm { field, n, matrix })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u32 {
        (self.n / 2) as u32
    }

    pub fn matrix(&self) -> &[Vec<Elem>] {
        &self.matrix
    }

    pub fn evaluate(&self, x: &[Elem]) -> Result<Elem> {
        if x.len() != self.n {
            return Err(Error::Dimension { expected: self.n, got: x.len() });
        }
        for &e in x {
            self.field.check(e)?;
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[Elem]) -> Elem {
        let f = &*self.field;
        let mut acc = Elem::ZERO;
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in i..self.n {
                let c = self.matrix[i][j];
                if !c.is_zero() {
                    acc = f.add(acc, f.mul(c, f.mul(x[i], x[j])));
                }
            }
        }
        acc
    }

    /// `B(x, y) = Q(x + y) - Q(x) - Q(y)`.
    pub fn polar_form(&self, x: &[Elem], y: &[Elem]) -> Result<Elem> {
        if y.len() != self.n {
            return Err(Error::Dimension { expected: self.n, got: y.len() });
        }
        let f = &*self.field;
        let sum: Vec<Elem> = x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect();
        let qs = self.evaluate(&sum)?;
        Ok(f.sub(f.sub(qs, self.evaluate(x)?), self.evaluate(y)?))
    }

    /// `αQ`.
    pub fn scaled(&self, alpha: Elem) -> Self {
        let matrix = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|&c| self.field.mul(alpha, c)).collect())
            .collect();
        QuadraticForm { field: self.field.clone(), n: self.n, matrix }
    }

    /// Gram matrix of the polar form on the standard basis.
    pub fn gram(&self) -> Vec<Vec<Elem>> {
        let f = &*self.field;
        let mut g = vec![vec![Elem::ZERO; self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                g[i][j] = if i == j {
                    f.add(self.matrix[i][i], self.matrix[i][i])
                } else {
                    self.matrix[i.min(j)][i.max(j)]
                };
            }
        }
        g
    }

    /// For even `n`, nonsingular is equivalent to the polar form being
    /// nondegenerate.
    pub fn is_nonsingular(&self) -> bool {
        rank(&self.field, self.gram()) == self.n
    }

    /// `Q(x)` for every `x` in the group `F_q^n`, by group index.
    pub fn value_table(&self, group: &VectorGroup) -> Result<Vec<Elem>> {
        if group.n() != self.n || **group.field() != *self.field {
            return Err(Error::FieldMismatch("form and group disagree".into()));
        }
        Ok((0..group.order()).map(|x| self.eval_unchecked(&group.vector(x))).collect())
    }

    /// `|{x : Q(x) = u}|` for every `u ∈ F_q`.
    pub fn value_counts(&self) -> Result<Vec<u64>> {
        let group = VectorGroup::new(self.field.clone(), self.n)?;
        let mut counts = vec![0u64; self.field.order() as usize];
        for u in self.value_table(&group)? {
            counts[u.index() as usize] += 1;
        }
        Ok(counts)
    }

    /// Computes `Σ_x ψ_1(αQ(x))` exactly for every `α ≠ 0` and requires each
    /// to be the same rational integer `±q^m`.
    pub fn form_type(&self) -> Result<FormType> {
        if !self.is_nonsingular() {
            return Err(Error::SingularForm);
        }
        let f = &*self.field;
        let p = f.characteristic();
        let counts = self.value_counts()?;
        let qm = (f.order() as i64).pow(self.m());
        let mut value = None;
        for alpha in f.elements().skip(1) {
            let mut hist = vec![0i64; p as usize];
            for (u, &c) in counts.iter().enumerate() {
                hist[f.trace(f.mul(alpha, Elem::from_index(u as u32))) as usize] += c as i64;
            }
            let s = from_exponent_counts(p, &hist);
            let s = s
                .as_integer()
                .filter(|&s| s == qm || s == -qm)
                .ok_or_else(|| Error::Inconsistent(format!("exponential sum {s} is not ±{qm}")))?;
            match value {
                None => value = Some(s),
                Some(v) if v != s => {
                    return Err(Error::Inconsistent(format!("sum changed from {v} to {s} under scaling")))
                }
                _ => {}
            }
        }
        let exp_sum = value.expect("F_q* is nonempty");
        Ok(FormType { epsilon: exp_sum.signum(), exp_sum, m: self.m() })
    }

    pub fn standard_hyperbolic(field: Arc<FiniteField>, m: u32) -> Result<Self> {
        Self::standard(field, m, FormKind::Hyperbolic)
    }

    pub fn standard_elliptic(field: Arc<FiniteField>, m: u32) -> Result<Self> {
        Self::standard(field, m, FormKind::Elliptic)
    }

    /// `x1 x2 + ... + x_{2m-1} x_{2m}`, with the last plane replaced by the
    /// canonical anisotropic form `x^2 + bxy + cy^2` for the elliptic type.
    pub fn standard(field: Arc<FiniteField>, m: u32, kind: FormKind) -> Result<Self> {
        if m == 0 {
            return Err(Error::params("m must be at least 1"));
        }
        let n = 2 * m as usize;
        let mut matrix = vec![vec![Elem::ZERO; n]; n];
        for i in (0..n).step_by(2) {
            matrix[i][i + 1] = Elem::ONE;
        }
        if kind == FormKind::Elliptic {
            let (b, c) = anisotropic_plane(&field);
            matrix[n - 2][n - 2] = Elem::ONE;
            matrix[n - 2][n - 1] = b;
            matrix[n - 1][n - 1] = c;
        }
        QuadraticForm::new(field, matrix)
    }

    pub fn to_file(&self) -> FormFile {
        let matrix = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|&e| elem_to_dlog_string(&self.field, e)).collect())
            .collect();
        FormFile { field: self.field.descriptor(), n: self.n, matrix }
    }

    pub fn from_file(file: &FormFile) -> Result<Self> {
        let field = Arc::new(FiniteField::from_descriptor(&file.field)?);
        if file.matrix.len() != file.n {
            return Err(Error::Dimension { expected: file.n, got: file.matrix.len() });
        }
        let matrix = file
            .matrix
            .iter()
            .map(|row| row.iter().map(|s| elem_from_dlog_string(&field, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        QuadraticForm::new(field, matrix)
    }
}

/// First `(b, c)` in dlog order (`0, g^0, g^1, ...`) with `t^2 + bt + c`
/// having no root in `F_q`.
fn anisotropic_plane(field: &FiniteField) -> (Elem, Elem) {
    let order: Vec<Elem> = field.elements_dlog_order().collect();
    for &b in &order {
        for &c in &order {
            let has_root = field
                .elements()
                .any(|t| field.add(field.add(field.mul(t, t), field.mul(b, t)), c).is_zero());
            if !has_root {
                return (b, c);
            }
        }
    }
    unreachable!("every finite field has an irreducible quadratic")
}

/// Rank of a matrix over `F_q`.
fn rank(field: &FiniteField, mut a: Vec<Vec<Elem>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, piv);
        let inv = field.inv(a[r][c]).expect("pivot is nonzero");
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = field.mul(a[i][c], inv);
            for j in c..cols {
                let t = field.mul(factor, a[r][j]);
                a[i][j] = field.sub(a[i][j], t);
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Form file: matrix entries are `"0"` for zero and `"g^t"` for `g^t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormFile {
    pub field: FieldDescriptor,
    pub n: usize,
    pub matrix: Vec<Vec<String>>,
}

pub fn elem_to_dlog_string(field: &FiniteField, e: Elem) -> String {
    match field.dlog(e) {
        Ok(t) => format!("g^{t}"),
        Err(_) => "0".to_string(),
    }
}

pub fn elem_from_dlog_string(field: &FiniteField, s: &str) -> Result<Elem> {
    let s = s.trim();
    if s == "0" {
        return Ok(Elem::ZERO);
    }
    let t: u32 = s
        .strip_prefix("g^")
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::params(format!("bad matrix entry {s:?}")))?;
    if t >= field.order() - 1 {
        return Err(Error::params(format!("exponent {t} out of range")));
    }
    Ok(field.exp(t as i64))
}
