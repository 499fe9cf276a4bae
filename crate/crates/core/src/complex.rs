//! Cohomologically graded chain complexes of finite-dimensional vector spaces.
//!
//! Differentials raise degree: `d_n : X_n -> X_{n+1}`. Shifts follow
//! `X[k]_n = X_{n-k}` with differential `(-1)^k d`, and the mapping cone of
//! `f : M -> N` is `M_{n+1} ⊕ N_n` with `d(m, x) = (-d m, f m + d x)`.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

/// Dimensions (and optional basis labels) by degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedSpace {
    dims: BTreeMap<i32, usize>,
    labels: BTreeMap<i32, Vec<String>>,
}

impl GradedSpace {
    pub fn new(dims: impl IntoIterator<Item = (i32, usize)>) -> Self {
        let dims = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        GradedSpace { dims, labels: BTreeMap::new() }
    }

    pub fn labelled(labels: BTreeMap<i32, Vec<String>>) -> Result<Self> {
        for (n, ls) in &labels {
            let mut seen = std::collections::BTreeSet::new();
            if let Some(dup) = ls.iter().find(|l| !seen.insert(l.as_str())) {
                return Err(Error::InvalidStructure(format!("duplicate label `{dup}` in degree {n}")));
            }
        }
        let labels: BTreeMap<_, _> = labels.into_iter().filter(|(_, l)| !l.is_empty()).collect();
        let dims = labels.iter().map(|(&n, l)| (n, l.len())).collect();
        Ok(GradedSpace { dims, labels })
    }

    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn labels(&self, n: i32) -> Option<&[String]> {
        self.labels.get(&n).map(Vec::as_slice)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Smallest and largest degree carrying a nonzero space.
    pub fn support(&self) -> Option<(i32, i32)> {
        Some((*self.dims.keys().next()?, *self.dims.keys().next_back()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    field: Field,
    space: GradedSpace,
    diff: BTreeMap<i32, Matrix>,
}

impl ChainComplex {
    /// Build a complex, checking matrix shapes and `d∘d = 0`.
    pub fn new(field: Field, space: GradedSpace, diff: BTreeMap<i32, Matrix>) -> Result<Self> {
        let x = Self::from_parts(field, space, diff)?;
        x.check_square_zero()?;
        Ok(x)
    }

    /// Like [`ChainComplex::new`] but only checks shapes.
    pub fn from_parts(field: Field, space: GradedSpace, diff: BTreeMap<i32, Matrix>) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (n, d) in diff {
            if d.field() != field {
                return Err(Error::FieldMismatch(format!("differential in degree {n}")));
            }
            if (d.rows(), d.cols()) != (space.dim(n + 1), space.dim(n)) {
                return Err(Error::DimensionMismatch(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    space.dim(n + 1),
                    space.dim(n)
                )));
            }
            if !d.is_zero() {
                kept.insert(n, d);
            }
        }
        Ok(ChainComplex { field, space, diff: kept })
    }

    pub fn zero(field: Field) -> Self {
        ChainComplex { field, space: GradedSpace::default(), diff: BTreeMap::new() }
    }

    /// A single copy of the field in degree `n`.
    pub fn point(field: Field, n: i32) -> Self {
        ChainComplex { field, space: GradedSpace::new([(n, 1)]), diff: BTreeMap::new() }
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for (&n, d) in &self.diff {
            if let Some(next) = self.diff.get(&(n + 1)) {
                if !next.mul(d).is_zero() {
                    return Err(Error::InvalidStructure(format!("d∘d ≠ 0 starting in degree {n}")));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn space(&self) -> &GradedSpace {
        &self.space
    }
    pub fn dim(&self, n: i32) -> usize {
        self.space.dim(n)
    }
    pub fn support(&self) -> Option<(i32, i32)> {
        self.space.support()
    }

    /// The differential `d_n : X_n -> X_{n+1}` (a zero matrix when absent).
    pub fn d(&self, n: i32) -> Matrix {
        self.diff
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(n + 1), self.dim(n)))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.space.dims().iter().map(|(&n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    pub fn shift(&self, k: i32) -> ChainComplex {
        let sign = self.field.sign(k as i64);
        let space = GradedSpace {
            dims: self.space.dims.iter().map(|(&n, &d)| (n + k, d)).collect(),
            labels: self.space.labels.iter().map(|(&n, l)| (n + k, l.clone())).collect(),
        };
        let diff = self.diff.iter().map(|(&n, d)| (n + k, d.scale(&sign))).collect();
        ChainComplex { field: self.field, space, diff }
    }

    /// Restrict to the subcomplex spanned degreewise by the columns of `basis`.
    /// Fails if the span is not closed under `d`.
    pub fn subcomplex(&self, basis: &BTreeMap<i32, Matrix>) -> Result<ChainComplex> {
        let dims = basis.iter().map(|(&n, b)| (n, b.cols()));
        let space = GradedSpace::new(dims);
        let mut diff = BTreeMap::new();
        for (&n, b) in basis {
            if b.cols() == 0 {
                continue;
            }
            let img = self.d(n).mul(b);
            if img.is_zero() {
                continue;
            }
            let Some(target) = basis.get(&(n + 1)) else {
                return Err(Error::InvalidStructure(format!("subspace not closed under d in degree {n}")));
            };
            let mut m = Matrix::zeros(self.field, target.cols(), b.cols());
            for (j, sol) in target.solve_columns(&img).into_iter().enumerate() {
                let x = sol.ok_or_else(|| {
                    Error::InvalidStructure(format!("subspace not closed under d in degree {n}"))
                })?;
                for (i, v) in x.into_iter().enumerate() {
                    m.set(i, j, v);
                }
            }
            diff.insert(n, m);
        }
        ChainComplex::from_parts(self.field, space, diff)
    }

    /// Degreewise direct sum; the left summand's basis comes first.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let degrees = union_keys(self.space.dims(), other.space.dims());
        let space = GradedSpace::new(degrees.iter().map(|&n| (n, self.dim(n) + other.dim(n))));
        let diff = degrees
            .iter()
            .map(|&n| (n, self.d(n).direct_sum(&other.d(n))))
            .filter(|(_, d)| !d.is_zero())
            .collect();
        ChainComplex { field: self.field, space, diff }
    }
}

fn union_keys<V, W>(a: &BTreeMap<i32, V>, b: &BTreeMap<i32, W>) -> Vec<i32> {
    let mut ks: Vec<i32> = a.keys().chain(b.keys()).copied().collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

/// A homogeneous linear map of some degree: component `n` sends `X_n` to
/// `Y_{n + degree}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub degree: i32,
    pub components: BTreeMap<i32, Matrix>,
}

impl GradedMap {
    pub fn component(&self, source: &ChainComplex, target: &ChainComplex, n: i32) -> Matrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(source.field, target.dim(n + self.degree), source.dim(n)))
    }
}

/// A degree-zero map of complexes commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: BTreeMap<i32, Matrix>,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, components: BTreeMap<i32, Matrix>) -> Result<Self> {
        let f = Self::unchecked(source, target, components)?;
        f.check_commutes()?;
        Ok(f)
    }

    /// Shape-checked but not verified to commute with `d`.
    pub fn unchecked(source: ChainComplex, target: ChainComplex, components: BTreeMap<i32, Matrix>) -> Result<Self> {
        for (&n, m) in &components {
            if (m.rows(), m.cols()) != (target.dim(n), source.dim(n)) {
                return Err(Error::DimensionMismatch(format!(
                    "chain map component {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(n),
                    source.dim(n)
                )));
            }
        }
        let components = components.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(ChainMap { source, target, components })
    }

    pub fn identity(x: &ChainComplex) -> Self {
        let components = x.space.dims().iter().map(|(&n, &d)| (n, Matrix::identity(x.field, d))).collect();
        ChainMap { source: x.clone(), target: x.clone(), components }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), components: BTreeMap::new() }
    }

    pub fn check_commutes(&self) -> Result<()> {
        let degrees = union_keys(self.source.space.dims(), self.target.space.dims());
        for n in degrees {
            let lhs = self.target.d(n).mul(&self.f(n));
            let rhs = self.f(n + 1).mul(&self.source.d(n));
            if lhs != rhs {
                return Err(Error::NotChainMap(format!("d∘f ≠ f∘d in degree {n}")));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }
    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn f(&self, n: i32) -> Matrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.source.field, self.target.dim(n), self.source.dim(n)))
    }

    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch("composition of non-composable chain maps".into()));
        }
        let components = first.source.space.dims().keys().map(|&n| (n, self.f(n).mul(&first.f(n)))).collect();
        ChainMap::unchecked(first.source.clone(), self.target.clone(), components)
    }
}

pub fn shift(x: &ChainComplex, k: i32) -> ChainComplex {
    x.shift(k)
}

/// Mapping cone `Co(f)_n = M_{n+1} ⊕ N_n`.
pub fn cone(f: &ChainMap) -> Result<ChainComplex> {
    f.check_commutes()?;
    let (m, n) = (&f.source, &f.target);
    let m1 = m.shift(-1);
    let degrees = union_keys(m1.space.dims(), n.space.dims());
    let space = GradedSpace::new(degrees.iter().map(|&k| (k, m1.dim(k) + n.dim(k))));
    let mut diff = BTreeMap::new();
    for &k in &degrees {
        let mut d = Matrix::zeros(f.source.field, space.dim(k + 1), space.dim(k));
        d.paste(0, 0, &m1.d(k));
        d.paste(m1.dim(k + 1), 0, &f.f(k + 1));
        d.paste(m1.dim(k + 1), m1.dim(k), &n.d(k));
        diff.insert(k, d);
    }
    ChainComplex::new(f.source.field, space, diff)
}

/// Tensor product with the Koszul rule `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`.
/// Degree `r` is the sum over `p + q = r` (in increasing `p`) of `X_p ⊗ Y_q`.
pub fn tensor_complex(x: &ChainComplex, y: &ChainComplex) -> Result<ChainComplex> {
    if x.field != y.field {
        return Err(Error::FieldMismatch("tensor of complexes over different fields".into()));
    }
    let field = x.field;
    // block offsets: degree r -> list of (p, offset)
    let mut blocks: BTreeMap<i32, Vec<(i32, usize)>> = BTreeMap::new();
    let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
    for (&p, &dp) in x.space.dims() {
        for (&q, &dq) in y.space.dims() {
            let e = dims.entry(p + q).or_insert(0);
            blocks.entry(p + q).or_default().push((p, *e));
            *e += dp * dq;
        }
    }
    let offset = |r: i32, p: i32| -> Option<usize> {
        blocks.get(&r)?.iter().find(|(pp, _)| *pp == p).map(|&(_, o)| o)
    };
    let space = GradedSpace::new(dims.clone());
    let mut diff = BTreeMap::new();
    for (&r, bl) in &blocks {
        let mut d = Matrix::zeros(field, space.dim(r + 1), space.dim(r));
        for &(p, off) in bl {
            let q = r - p;
            if let Some(o) = offset(r + 1, p + 1) {
                d.paste(o, off, &x.d(p).tensor(&Matrix::identity(field, y.dim(q))));
            }
            if let Some(o) = offset(r + 1, p) {
                let block = Matrix::identity(field, x.dim(p)).tensor(&y.d(q)).scale(&field.sign(p as i64));
                d.paste(o, off, &block);
            }
        }
        diff.insert(r, d);
    }
    ChainComplex::new(field, space, diff)
}

/// Layout of a Hom-complex: in degree `n`, blocks `Hom(Y_m, Z_{m+n})` for
/// increasing `m`, each stored row-major (target index slowest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLayout {
    blocks: BTreeMap<i32, Vec<(i32, usize)>>,
}

impl HomLayout {
    fn new(y: &ChainComplex, z: &ChainComplex) -> (Self, BTreeMap<i32, usize>) {
        let mut blocks: BTreeMap<i32, Vec<(i32, usize)>> = BTreeMap::new();
        let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
        for (&m, &dm) in y.space.dims() {
            for (&k, &dk) in z.space.dims() {
                let n = k - m;
                let e = dims.entry(n).or_insert(0);
                blocks.entry(n).or_default().push((m, *e));
                *e += dm * dk;
            }
        }
        for bl in blocks.values_mut() {
            bl.sort_unstable();
        }
        // offsets must follow increasing m; recompute after sorting
        let mut layout = HomLayout { blocks: BTreeMap::new() };
        for (n, bl) in blocks {
            let mut off = 0;
            let mut fixed = Vec::new();
            for (m, _) in bl {
                fixed.push((m, off));
                off += y.dim(m) * z.dim(m + n);
            }
            layout.blocks.insert(n, fixed);
        }
        (layout, dims)
    }

    pub fn offset(&self, n: i32, m: i32) -> Option<usize> {
        self.blocks.get(&n)?.iter().find(|(mm, _)| *mm == m).map(|&(_, o)| o)
    }

    /// Read the degree-`n` vector `v` as a graded map `Y -> Z` of degree `n`.
    pub fn to_graded_map(&self, y: &ChainComplex, z: &ChainComplex, n: i32, v: &[Scalar]) -> GradedMap {
        let mut components = BTreeMap::new();
        for &(m, off) in self.blocks.get(&n).into_iter().flatten() {
            let (r, c) = (z.dim(m + n), y.dim(m));
            let f = Matrix::from_fn(y.field, r, c, |i, j| v[off + i * c + j].clone());
            components.insert(m, f);
        }
        GradedMap { degree: n, components }
    }

    /// Flatten a graded map of degree `n` into the Hom-complex basis.
    pub fn from_graded_map(&self, y: &ChainComplex, z: &ChainComplex, f: &GradedMap) -> Vec<Scalar> {
        let n = f.degree;
        let len: usize = self.blocks.get(&n).into_iter().flatten().map(|&(m, _)| y.dim(m) * z.dim(m + n)).sum();
        let mut v = vec![y.field.zero(); len];
        for &(m, off) in self.blocks.get(&n).into_iter().flatten() {
            let c = y.dim(m);
            if let Some(mat) = f.components.get(&m) {
                for i in 0..mat.rows() {
                    for j in 0..c {
                        v[off + i * c + j] = mat.get(i, j).clone();
                    }
                }
            }
        }
        v
    }
}

/// The Hom-complex with `D(f) = d_Z∘f − (−1)^n f∘d_Y` in degree `n`.
pub fn hom_complex(y: &ChainComplex, z: &ChainComplex) -> Result<(ChainComplex, HomLayout)> {
    if y.field != z.field {
        return Err(Error::FieldMismatch("Hom between complexes over different fields".into()));
    }
    let field = y.field;
    let (layout, dims) = HomLayout::new(y, z);
    let space = GradedSpace::new(dims);
    let mut diff = BTreeMap::new();
    for (&n, bl) in &layout.blocks {
        let mut d = Matrix::zeros(field, space.dim(n + 1), space.dim(n));
        for &(m, off) in bl {
            let (src, tgt) = (y.dim(m), z.dim(m + n));
            // d_Z∘f_m lands in block m of degree n+1
            if let Some(o) = layout.offset(n + 1, m) {
                d.paste(o, off, &z.d(m + n).tensor(&Matrix::identity(field, src)));
            }
            // f_m∘d_Y^{(m-1)} lands in block m-1 of degree n+1
            if let Some(o) = layout.offset(n + 1, m - 1) {
                let block = Matrix::identity(field, tgt).tensor(&y.d(m - 1).transpose());
                d.paste(o, off, &block.scale(&-field.sign(n as i64)));
            }
        }
        diff.insert(n, d);
    }
    Ok((ChainComplex::new(field, space, diff)?, layout))
}

/// Columns `0..` with horizontal maps `h_j : column j -> column j+1` of
/// vertical degree zero. With `anticommute` unset, the squares commute and the
/// total differential on column `j` is `h + (−1)^j d_v`; otherwise it is `h + d_v`.
#[derive(Clone, Debug)]
pub struct Bicomplex {
    pub columns: Vec<ChainComplex>,
    pub horizontal: Vec<BTreeMap<i32, Matrix>>,
    pub anticommute: bool,
}

impl Bicomplex {
    pub fn h(&self, j: usize, q: i32) -> Matrix {
        self.horizontal[j].get(&q).cloned().unwrap_or_else(|| {
            let (a, b) = (&self.columns[j], &self.columns[j + 1]);
            Matrix::zeros(a.field, b.dim(q), a.dim(q))
        })
    }

    /// Check `h∘h = 0` and the (anti)commuting squares in every degree.
    pub fn validate(&self) -> Result<()> {
        if self.horizontal.len() + 1 != self.columns.len() {
            return Err(Error::InvalidStructure("bicomplex needs one horizontal map per adjacent pair".into()));
        }
        for j in 0..self.horizontal.len() {
            let (a, b) = (&self.columns[j], &self.columns[j + 1]);
            let degrees = union_keys(a.space.dims(), b.space.dims());
            for &q in &degrees {
                let h = self.h(j, q);
                if (h.rows(), h.cols()) != (b.dim(q), a.dim(q)) {
                    return Err(Error::DimensionMismatch(format!("horizontal map {j} in degree {q}")));
                }
                let lhs = b.d(q).mul(&h);
                let rhs = self.h(j, q + 1).mul(&a.d(q));
                let ok = if self.anticommute { lhs == rhs.neg() } else { lhs == rhs };
                if !ok {
                    return Err(Error::InvalidStructure(format!("square {j} fails in vertical degree {q}")));
                }
                if j + 1 < self.horizontal.len() && !self.h(j + 1, q).mul(&h).is_zero() {
                    return Err(Error::InvalidStructure(format!("h∘h ≠ 0 at column {j}, degree {q}")));
                }
            }
        }
        Ok(())
    }
}

/// Totalization of columns `0..=last_column`; column `j` in vertical degree `q`
/// sits in total degree `q + j`. Blocks within a total degree are ordered by `j`.
pub fn total_complex(b: &Bicomplex, last_column: usize) -> Result<ChainComplex> {
    let cols = &b.columns[..=last_column.min(b.columns.len() - 1)];
    let field = cols[0].field;
    let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
    let mut blocks: BTreeMap<(i32, usize), usize> = BTreeMap::new();
    for (j, c) in cols.iter().enumerate() {
        for (&q, &d) in c.space.dims() {
            let t = q + j as i32;
            let e = dims.entry(t).or_insert(0);
            blocks.insert((t, j), *e);
            *e += d;
        }
    }
    let space = GradedSpace::new(dims.clone());
    let mut diff = BTreeMap::new();
    for &t in dims.keys() {
        let mut d = Matrix::zeros(field, space.dim(t + 1), space.dim(t));
        for (j, c) in cols.iter().enumerate() {
            let q = t - j as i32;
            let Some(&off) = blocks.get(&(t, j)) else { continue };
            if let Some(&o) = blocks.get(&(t + 1, j)) {
                let sign = if b.anticommute { field.one() } else { field.sign(j as i64) };
                d.paste(o, off, &c.d(q).scale(&sign));
            }
            if j + 1 < cols.len() {
                if let Some(&o) = blocks.get(&(t + 1, j + 1)) {
                    d.paste(o, off, &b.h(j, q));
                }
            }
        }
        diff.insert(t, d);
    }
    ChainComplex::new(field, space, diff)
}

/// `H^n` with explicit representatives: `reps` columns are cocycles whose
/// classes form a basis.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    pub degree: i32,
    pub dim: usize,
    pub reps: Matrix,
    cocycle_test: Matrix,
    reps_and_boundaries: Matrix,
}

impl CohomologyBasis {
    /// Coordinates of the class of `v` in the representative basis, or `None`
    /// when `v` is not a cocycle.
    pub fn class_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.cocycle_test.mul_vec(v).iter().any(|x| !x.is_zero()) {
            return None;
        }
        let x = self.reps_and_boundaries.solve(v).ok()??;
        Some(x[..self.dim].to_vec())
    }

    /// Coordinates of each column of `m` (all assumed cocycles).
    pub fn classes_of(&self, m: &Matrix) -> Option<Matrix> {
        if !self.cocycle_test.mul(m).is_zero() {
            return None;
        }
        let sols = self.reps_and_boundaries.solve_columns(m);
        let mut out = Matrix::zeros(m.field(), self.dim, m.cols());
        for (j, s) in sols.into_iter().enumerate() {
            let s = s?;
            for i in 0..self.dim {
                out.set(i, j, s[i].clone());
            }
        }
        Some(out)
    }
}

pub fn cohomology_at(x: &ChainComplex, n: i32) -> CohomologyBasis {
    let dn = x.d(n);
    let boundaries = x.d(n - 1);
    let z = dn.kernel_basis();
    let (_, pivots) = boundaries.hstack(&z).rref();
    let rep_cols: Vec<usize> =
        pivots.iter().filter(|&&p| p >= boundaries.cols()).map(|&p| p - boundaries.cols()).collect();
    let reps = z.select_columns(&rep_cols);
    CohomologyBasis {
        degree: n,
        dim: reps.cols(),
        reps_and_boundaries: reps.hstack(&boundaries),
        reps,
        cocycle_test: dn,
    }
}

pub fn cohomology(x: &ChainComplex, range: RangeInclusive<i32>) -> BTreeMap<i32, CohomologyBasis> {
    range.map(|n| (n, cohomology_at(x, n))).collect()
}

/// Only the dimensions: `dim ker d_n − rank d_{n−1}`.
pub fn cohomology_dims(x: &ChainComplex, range: RangeInclusive<i32>) -> BTreeMap<i32, usize> {
    range.map(|n| (n, x.dim(n) - x.d(n).rank() - x.d(n - 1).rank())).collect()
}

/// The matrix of `H^n(f)` in the representative bases.
pub fn induced_map(f: &ChainMap, n: i32) -> Matrix {
    let hs = cohomology_at(&f.source, n);
    let ht = cohomology_at(&f.target, n);
    ht.classes_of(&f.f(n).mul(&hs.reps)).expect("chain maps send cocycles to cocycles")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiIsoReport {
    pub is_quasi_iso: bool,
    pub degrees: BTreeMap<i32, DegreeReport>,
}

pub fn is_quasi_iso(f: &ChainMap, range: RangeInclusive<i32>) -> QuasiIsoReport {
    let mut degrees = BTreeMap::new();
    let mut ok = true;
    for n in range {
        let m = induced_map(f, n);
        let r = DegreeReport { source_dim: m.cols(), target_dim: m.rows(), rank: m.rank() };
        ok &= r.rank == r.source_dim && r.rank == r.target_dim;
        degrees.insert(n, r);
    }
    QuasiIsoReport { is_quasi_iso: ok, degrees }
}

/// Solve `f − g = h∘d + d∘h` for a degree −1 map `h`, as one linear system.
pub fn homotopy_witness(f: &ChainMap, g: &ChainMap) -> Result<Option<GradedMap>> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::DimensionMismatch("homotopy between maps with different ends".into()));
    }
    let (x, y) = (&f.source, &f.target);
    let (hom, layout) = hom_complex(x, y)?;
    // f − g is a degree-0 cocycle of Hom(X, Y); a witness is a preimage under D.
    // With D(h) = d∘h + h∘d in degree −1, this is exactly the required equation.
    let diff = GradedMap {
        degree: 0,
        components: x.space.dims().keys().map(|&n| (n, f.f(n).sub(&g.f(n)))).collect(),
    };
    let v = layout.from_graded_map(x, y, &diff);
    Ok(hom.d(-1).solve(&v)?.map(|h| layout.to_graded_map(x, y, -1, &h)))
}
