//! Finite-dimensional differential graded coalgebras as structure constants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::basis::{normalize, GradedBasis, Terms};
use crate::complex::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

/// Largest total dimension accepted by the constructors.
pub const DIM_CAP: usize = 64;

/// `Σ x · (left ⊗ right)`, sorted by `(left, right)`.
pub type Terms2 = Vec<(usize, usize, Scalar)>;

pub(crate) fn normalize2(field: Field, terms: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Terms2 {
    let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for (a, b, x) in terms {
        let e = acc.entry((a, b)).or_insert_with(|| field.zero());
        *e = &*e + &x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).map(|((a, b), x)| (a, b, x)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub identity: String,
    pub locus: String,
}

/// Outcome of a structural check: empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub failures: Vec<Failure>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub(crate) fn fail(&mut self, identity: &str, locus: impl Into<String>) {
        self.failures.push(Failure { identity: identity.to_string(), locus: locus.into() });
    }

    /// Convert into an error naming the first failure.
    pub fn into_result(self, what: &str) -> Result<()> {
        match self.failures.first() {
            None => Ok(()),
            Some(f) => Err(Error::InvalidStructure(format!("{what}: {} fails at `{}`", f.identity, f.locus))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisElement {
    pub label: String,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGCoalgebra {
    field: Field,
    basis: Vec<BasisElement>,
    comult: Vec<Terms2>,
    counit: Vec<Scalar>,
    diff: Vec<Terms>,
}

impl DGCoalgebra {
    /// Assemble from structure constants. Index ranges, label uniqueness and
    /// the dimension cap are checked here; the axioms by [`DGCoalgebra::validate`].
    pub fn new(
        field: Field,
        basis: Vec<BasisElement>,
        comult: Vec<Terms2>,
        counit: Vec<Scalar>,
        diff: Vec<Terms>,
    ) -> Result<Self> {
        let n = basis.len();
        if n > DIM_CAP {
            return Err(Error::TooLarge(format!("coalgebra of dimension {n} exceeds the cap {DIM_CAP}")));
        }
        if comult.len() != n || counit.len() != n || diff.len() != n {
            return Err(Error::DimensionMismatch("structure constants do not match the basis".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for b in &basis {
            if !seen.insert(b.label.as_str()) {
                return Err(Error::InvalidStructure(format!("duplicate basis label `{}`", b.label)));
            }
        }
        let in_range = comult.iter().flatten().all(|(a, b, _)| *a < n && *b < n)
            && diff.iter().flatten().all(|(a, _)| *a < n);
        if !in_range {
            return Err(Error::DimensionMismatch("structure constant index out of range".into()));
        }
        let all = comult.iter().flatten().map(|t| &t.2).chain(&counit).chain(diff.iter().flatten().map(|t| &t.1));
        if all.into_iter().any(|x| x.field() != field) {
            return Err(Error::FieldMismatch("structure constant from another field".into()));
        }
        let comult = comult.into_iter().map(|t| normalize2(field, t)).collect();
        let diff = diff.into_iter().map(|t| normalize(field, t)).collect();
        Ok(DGCoalgebra { field, basis, comult, counit, diff })
    }

    /// Build from dense matrices: `Δ` is `dim² × dim`, `d` is `dim × dim`.
    pub fn from_matrices(
        field: Field,
        basis: Vec<BasisElement>,
        comult: &Matrix,
        counit: &[Scalar],
        diff: &Matrix,
    ) -> Result<Self> {
        let n = basis.len();
        let comult_terms = (0..n)
            .map(|j| {
                (0..n * n)
                    .filter(|&r| !comult.get(r, j).is_zero())
                    .map(|r| (r / n, r % n, comult.get(r, j).clone()))
                    .collect()
            })
            .collect();
        let diff_terms = (0..n)
            .map(|j| (0..n).filter(|&r| !diff.get(r, j).is_zero()).map(|r| (r, diff.get(r, j).clone())).collect())
            .collect();
        Self::new(field, basis, comult_terms, counit.to_vec(), diff_terms)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }
    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }
    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }
    pub fn delta(&self, i: usize) -> &Terms2 {
        &self.comult[i]
    }
    pub fn eps(&self, i: usize) -> &Scalar {
        &self.counit[i]
    }
    pub fn d(&self, i: usize) -> &Terms {
        &self.diff[i]
    }

    pub fn is_positively_graded(&self) -> bool {
        self.basis.iter().all(|b| b.degree >= 0)
    }

    pub fn require_positively_graded(&self) -> Result<()> {
        match self.basis.iter().find(|b| b.degree < 0) {
            Some(b) => Err(Error::NotPositivelyGraded(b.label.clone())),
            None => Ok(()),
        }
    }

    /// Everything in degree 0 with zero differential.
    pub fn is_concentrated(&self) -> bool {
        self.basis.iter().all(|b| b.degree == 0) && self.diff.iter().all(Vec::is_empty)
    }

    pub fn max_degree(&self) -> i32 {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    pub fn graded_basis(&self) -> GradedBasis<String> {
        GradedBasis::new(self.basis.iter().map(|b| (b.label.clone(), b.degree)).collect()).expect("labels are distinct")
    }

    /// The underlying complex `(C, d)`.
    pub fn as_complex(&self) -> Result<ChainComplex> {
        self.graded_basis().complex(self.field, |i| self.diff[i].clone())
    }

    pub fn comult_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field, n * n, n);
        for (j, terms) in self.comult.iter().enumerate() {
            for (a, b, x) in terms {
                m.set(a * n + b, j, x.clone());
            }
        }
        m
    }

    pub fn counit_vector(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn diff_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field, n, n);
        for (j, terms) in self.diff.iter().enumerate() {
            for (a, x) in terms {
                m.set(*a, j, x.clone());
            }
        }
        m
    }

    /// `(f ⊗ 1 + sign 1 ⊗ g)` style helper: differential of `C⊗C` on a pair.
    fn d_pair(&self, a: usize, b: usize) -> Terms2 {
        let mut out = Vec::new();
        for (t, x) in &self.diff[a] {
            out.push((*t, b, x.clone()));
        }
        let s = self.field.sign(self.degree(a) as i64);
        for (t, x) in &self.diff[b] {
            out.push((a, *t, &s * x));
        }
        out
    }

    pub fn validate(&self) -> Validation {
        let f = self.field;
        let mut v = Validation::default();
        for i in 0..self.dim() {
            let lab = self.label(i).to_string();
            if self.comult[i].iter().any(|(a, b, _)| self.degree(*a) + self.degree(*b) != self.degree(i)) {
                v.fail("Δ preserves degree", &lab);
            }
            if self.diff[i].iter().any(|(a, _)| self.degree(*a) != self.degree(i) + 1) {
                v.fail("d raises degree by one", &lab);
            }
            if self.degree(i) != 0 && !self.counit[i].is_zero() {
                v.fail("ε has degree zero", &lab);
            }
            // coassociativity
            let mut left: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut right: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (a, b, x) in &self.comult[i] {
                for (a1, a2, y) in &self.comult[*a] {
                    add3(f, &mut left, (*a1, *a2, *b), &(x * y));
                }
                for (b1, b2, y) in &self.comult[*b] {
                    add3(f, &mut right, (*a, *b1, *b2), &(x * y));
                }
            }
            if clean(left) != clean(right) {
                v.fail("coassociativity", &lab);
            }
            // counit laws
            let mut l = vec![f.zero(); self.dim()];
            let mut r = vec![f.zero(); self.dim()];
            for (a, b, x) in &self.comult[i] {
                l[*b] = &l[*b] + &(&self.counit[*a] * x);
                r[*a] = &r[*a] + &(&self.counit[*b] * x);
            }
            let unit: Vec<Scalar> = (0..self.dim()).map(|j| if j == i { f.one() } else { f.zero() }).collect();
            if l != unit {
                v.fail("counit (ε⊗id)Δ = id", &lab);
            }
            if r != unit {
                v.fail("counit (id⊗ε)Δ = id", &lab);
            }
            // d∘d = 0
            let dd = normalize(f, self.diff[i].iter().flat_map(|(a, x)| self.diff[*a].iter().map(move |(b, y)| (*b, x * y))));
            if !dd.is_empty() {
                v.fail("d∘d = 0", &lab);
            }
            // co-Leibniz Δd = d_{C⊗C}Δ
            let lhs = normalize2(f, self.diff[i].iter().flat_map(|(a, x)| self.comult[*a].iter().map(move |(p, q, y)| (*p, *q, x * y))));
            let rhs = normalize2(
                f,
                self.comult[i].iter().flat_map(|(a, b, x)| self.d_pair(*a, *b).into_iter().map(move |(p, q, y)| (p, q, x * &y))),
            );
            if lhs != rhs {
                v.fail("co-Leibniz Δ∘d = d∘Δ", &lab);
            }
            // ε∘d = 0
            let ed = self.diff[i].iter().fold(f.zero(), |acc, (a, x)| acc + &(&self.counit[*a] * x));
            if !ed.is_zero() {
                v.fail("ε∘d = 0", &lab);
            }
        }
        v
    }

    /// `Δ^op(c) = Σ (−1)^{|c1||c2|} c2 ⊗ c1`.
    pub fn opposite(&self) -> DGCoalgebra {
        let comult = self
            .comult
            .iter()
            .map(|t| {
                normalize2(
                    self.field,
                    t.iter().map(|(a, b, x)| {
                        let s = self.field.sign((self.degree(*a) * self.degree(*b)) as i64);
                        (*b, *a, x * &s)
                    }),
                )
            })
            .collect();
        DGCoalgebra { comult, ..self.clone() }
    }

    /// `C ⊗ D` with basis pairs (left slowest), labels `c⊗d`, and
    /// `Δ(c⊗d) = Σ (−1)^{|c2||d1|} (c1⊗d1) ⊗ (c2⊗d2)`.
    pub fn tensor(&self, other: &DGCoalgebra) -> Result<DGCoalgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("tensor of coalgebras over different fields".into()));
        }
        let f = self.field;
        let m = other.dim();
        let idx = |a: usize, b: usize| a * m + b;
        let mut basis = Vec::new();
        let mut comult = Vec::new();
        let mut counit = Vec::new();
        let mut diff = Vec::new();
        for a in 0..self.dim() {
            for b in 0..m {
                basis.push(BasisElement {
                    label: format!("{}⊗{}", self.label(a), other.label(b)),
                    degree: self.degree(a) + other.degree(b),
                });
                let mut terms = Vec::new();
                for (a1, a2, x) in &self.comult[a] {
                    for (b1, b2, y) in &other.comult[b] {
                        let s = f.sign((self.degree(*a2) * other.degree(*b1)) as i64);
                        terms.push((idx(*a1, *b1), idx(*a2, *b2), &(x * y) * &s));
                    }
                }
                comult.push(terms);
                counit.push(&self.counit[a] * &other.counit[b]);
                let s = f.sign(self.degree(a) as i64);
                let mut d: Terms = self.diff[a].iter().map(|(t, x)| (idx(*t, b), x.clone())).collect();
                d.extend(other.diff[b].iter().map(|(t, x)| (idx(a, *t), &s * x)));
                diff.push(d);
            }
        }
        DGCoalgebra::new(f, basis, comult, counit, diff)
    }

    /// `C^e = C ⊗ C^op`.
    pub fn enveloping(&self) -> Result<DGCoalgebra> {
        self.tensor(&self.opposite())
    }

    /// Block sum; labels must stay distinct.
    pub fn direct_sum(&self, other: &DGCoalgebra) -> Result<DGCoalgebra> {
        let off = self.dim();
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        let mut comult = self.comult.clone();
        comult.extend(other.comult.iter().map(|t| t.iter().map(|(a, b, x)| (a + off, b + off, x.clone())).collect()));
        let mut counit = self.counit.clone();
        counit.extend(other.counit.iter().cloned());
        let mut diff = self.diff.clone();
        diff.extend(other.diff.iter().map(|t| t.iter().map(|(a, x)| (a + off, x.clone())).collect()));
        DGCoalgebra::new(self.field, basis, comult, counit, diff)
    }

    /// Rewrite in the basis `e'_j = Σ_i p[i][j] e_i`; `p` must be invertible
    /// and degree-preserving.
    pub fn change_basis(&self, p: &Matrix) -> Result<DGCoalgebra> {
        let n = self.dim();
        if (p.rows(), p.cols()) != (n, n) {
            return Err(Error::DimensionMismatch("change of basis must be square".into()));
        }
        for j in 0..n {
            for i in 0..n {
                if !p.get(i, j).is_zero() && self.degree(i) != self.degree(j) {
                    return Err(Error::InvalidArgument("change of basis mixes degrees".into()));
                }
            }
        }
        let pinv = inverse(p)?;
        let comult = pinv.tensor(&pinv).mul(&self.comult_matrix()).mul(p);
        let counit = Matrix::from_columns(self.field, n, &[self.counit.clone()]).transpose().mul(p);
        let diff = pinv.mul(&self.diff_matrix()).mul(p);
        DGCoalgebra::from_matrices(self.field, self.basis.clone(), &comult, counit.row(0), &diff)
    }

    /// Same structure with labels prefixed, for building sums.
    pub fn relabel(&self, prefix: &str) -> DGCoalgebra {
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement { label: format!("{prefix}{}", b.label), degree: b.degree })
            .collect();
        DGCoalgebra { basis, ..self.clone() }
    }
}

fn add3(f: Field, m: &mut BTreeMap<(usize, usize, usize), Scalar>, k: (usize, usize, usize), x: &Scalar) {
    let e = m.entry(k).or_insert_with(|| f.zero());
    *e = &*e + x;
}

fn clean<K: Ord>(m: BTreeMap<K, Scalar>) -> BTreeMap<K, Scalar> {
    m.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

pub fn inverse(p: &Matrix) -> Result<Matrix> {
    let n = p.rows();
    if p.cols() != n || p.rank() != n {
        return Err(Error::InvalidArgument("matrix is not invertible".into()));
    }
    let cols: Vec<Vec<Scalar>> =
        p.solve_columns(&Matrix::identity(p.field(), n)).into_iter().map(|c| c.expect("invertible")).collect();
    Ok(Matrix::from_columns(p.field(), n, &cols))
}

pub fn opposite(c: &DGCoalgebra) -> DGCoalgebra {
    c.opposite()
}

pub fn tensor_coalgebra(c: &DGCoalgebra, d: &DGCoalgebra) -> Result<DGCoalgebra> {
    c.tensor(d)
}

pub fn enveloping(c: &DGCoalgebra) -> Result<DGCoalgebra> {
    c.enveloping()
}

/// A linear map `C → D` given by a `dim D × dim C` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraMorphism {
    pub source: DGCoalgebra,
    pub target: DGCoalgebra,
    pub matrix: Matrix,
}

impl CoalgebraMorphism {
    pub fn new(source: DGCoalgebra, target: DGCoalgebra, matrix: Matrix) -> Result<Self> {
        if (matrix.rows(), matrix.cols()) != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if source.field != target.field || matrix.field() != source.field {
            return Err(Error::FieldMismatch("morphism over mixed fields".into()));
        }
        Ok(CoalgebraMorphism { source, target, matrix })
    }

    pub fn identity(c: &DGCoalgebra) -> Self {
        CoalgebraMorphism { source: c.clone(), target: c.clone(), matrix: Matrix::identity(c.field, c.dim()) }
    }

    /// Image of basis element `i` as sparse terms.
    pub fn apply(&self, i: usize) -> Terms {
        (0..self.target.dim())
            .filter(|&r| !self.matrix.get(r, i).is_zero())
            .map(|r| (r, self.matrix.get(r, i).clone()))
            .collect()
    }

    pub fn validate(&self) -> Validation {
        let (c, d, f) = (&self.source, &self.target, &self.matrix);
        let field = c.field;
        let mut v = Validation::default();
        let fd = f.mul(&c.diff_matrix());
        let df = d.diff_matrix().mul(f);
        let delta_f = d.comult_matrix().mul(f);
        let ff_delta = f.tensor(f).mul(&c.comult_matrix());
        for j in 0..c.dim() {
            let lab = c.label(j).to_string();
            if (0..d.dim()).any(|i| !f.get(i, j).is_zero() && d.degree(i) != c.degree(j)) {
                v.fail("f preserves degree", &lab);
            }
            if delta_f.column(j) != ff_delta.column(j) {
                v.fail("Δ∘f = (f⊗f)∘Δ", &lab);
            }
            let ef = (0..d.dim()).fold(field.zero(), |acc, i| acc + &(&d.counit[i] * f.get(i, j)));
            if ef != c.counit[j] {
                v.fail("ε∘f = ε", &lab);
            }
            if fd.column(j) != df.column(j) {
                v.fail("f∘d = d∘f", &lab);
            }
        }
        v
    }

    pub fn as_chain_map(&self) -> Result<ChainMap> {
        let (src, tgt) = (self.source.graded_basis(), self.target.graded_basis());
        let blocks = src.map_blocks(self.source.field, &tgt, 0, |i| self.apply(i))?;
        ChainMap::new(self.source.as_complex()?, self.target.as_complex()?, blocks)
    }
}

pub fn validate_morphism(f: &CoalgebraMorphism) -> Validation {
    f.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(label: &str, degree: i32) -> BasisElement {
        BasisElement { label: label.into(), degree }
    }

    fn grouplike(f: Field, eps: i64) -> DGCoalgebra {
        DGCoalgebra::new(f, vec![el("g", 0)], vec![vec![(0, 0, f.one())]], vec![f.int(eps)], vec![vec![]]).unwrap()
    }

    fn divided(f: Field) -> DGCoalgebra {
        DGCoalgebra::new(
            f,
            vec![el("c0", 0), el("c1", 0)],
            vec![vec![(0, 0, f.one())], vec![(0, 1, f.one()), (1, 0, f.one())]],
            vec![f.one(), f.zero()],
            vec![vec![], vec![]],
        )
        .unwrap()
    }

    #[test]
    fn grouplike_counit() {
        let f = Field::Rational;
        assert!(grouplike(f, 1).validate().is_valid());
        let bad = grouplike(f, 0).validate();
        assert!(bad.failures.iter().any(|x| x.identity.starts_with("counit") && x.locus == "g"));
    }

    #[test]
    fn divided_powers_valid() {
        let c = divided(Field::Rational);
        assert!(c.validate().is_valid());
        assert!(c.enveloping().unwrap().validate().is_valid());
        assert_eq!(c.opposite().opposite(), c);
    }

    #[test]
    fn enveloping_of_k() {
        let f = Field::Rational;
        let k = grouplike(f, 1);
        let e = k.enveloping().unwrap();
        assert_eq!(e.dim(), 1);
        assert_eq!(e.delta(0), k.delta(0));
    }

    #[test]
    fn zero_morphism_breaks_counit() {
        let f = Field::Rational;
        let c = divided(f);
        assert!(CoalgebraMorphism::identity(&c).validate().is_valid());
        let zero = CoalgebraMorphism::new(c.clone(), c, Matrix::zeros(f, 2, 2)).unwrap();
        assert!(zero.validate().failures.iter().any(|x| x.identity == "ε∘f = ε"));
    }

    #[test]
    fn change_basis_round_trip() {
        let f = Field::Rational;
        let c = divided(f);
        let p = Matrix::from_ints(f, &[&[1, 2], &[0, 1]]);
        let c2 = c.change_basis(&p).unwrap();
        assert!(c2.validate().is_valid());
        assert_eq!(c2.change_basis(&inverse(&p).unwrap()).unwrap(), c);
    }
}
