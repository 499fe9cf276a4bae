//! Standard (cobar) resolutions, cotensor products, colinear Hom-complexes,
//! the cohom functor and coendomorphism coalgebras.
//!
//! A level-`r` word `(c_1, …, c_r, m)` of `C(M)` is stored as the index vector
//! `[c_1, …, c_r, m]` and sits in degree `Σ|c_i| + |m| + r − 1`. The boundary is
//! `∂ = d + b′` with
//!
//! ```text
//! d  = (−1)^r Σ_k (−1)^{|c_1|+…+|c_{k−1}|} (…, d c_k, …)
//! b′ = Σ_{k=1}^{r+1} (−1)^{k+1} (…, Δ c_k, …)        (Δ(m) := ρ(m))
//! ```
//!
//! With these signs the comodule structure on `C(M)` is twisted: the left
//! coaction is `(c_1, …) ↦ (−1)^{r|c_1′|} c_1′ ⊗ (c_1″, …)` and, when `M` is a
//! bicomodule, the right coaction is `(…, m) ↦ (−1)^{|m″|} (…, m′) ⊗ m″`.
//! The augmentation is `m ↦ (−1)^{|m|} ρ(m)`.

use std::collections::BTreeMap;

use crate::basis::{normalize, GradedBasis, Terms};
use crate::coalgebra::{BasisElement, DGCoalgebra, Terms2};
use crate::comodule::{Bicomodule, DGComodule, Side};
use crate::complex::{cohomology_dims, hom_complex, tensor_complex, ChainComplex, ChainMap, GradedMap, HomLayout};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

pub type Word = Vec<usize>;

/// Coefficient data for resolutions: a left coaction, optionally a right one.
#[derive(Clone, Debug)]
pub(crate) struct Coeffs {
    pub labels: Vec<String>,
    pub degrees: Vec<i32>,
    pub left: Vec<Terms2>,
    pub right: Option<Vec<Terms2>>,
    pub diff: Vec<Terms>,
}

impl Coeffs {
    pub fn from_left(m: &DGComodule) -> Coeffs {
        Coeffs {
            labels: m.basis().iter().map(|b| b.label.clone()).collect(),
            degrees: m.basis().iter().map(|b| b.degree).collect(),
            left: (0..m.dim()).map(|i| m.rho(i).clone()).collect(),
            right: None,
            diff: (0..m.dim()).map(|i| m.d(i).clone()).collect(),
        }
    }

    pub fn from_bicomodule(b: &Bicomodule) -> Coeffs {
        Coeffs {
            labels: b.basis().iter().map(|e| e.label.clone()).collect(),
            degrees: b.basis().iter().map(|e| e.degree).collect(),
            left: (0..b.dim()).map(|i| b.rho_left(i).clone()).collect(),
            right: Some((0..b.dim()).map(|i| b.rho_right(i).clone()).collect()),
            diff: (0..b.dim()).map(|i| b.d(i).clone()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn bottom(&self) -> i32 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }
}

/// Word-level formulas for `C(M)`.
#[derive(Clone, Copy)]
pub(crate) struct WordOps<'a> {
    pub c: &'a DGCoalgebra,
    pub m: &'a Coeffs,
}

impl<'a> WordOps<'a> {
    pub fn field(&self) -> Field {
        self.c.field()
    }

    pub fn degree(&self, w: &[usize]) -> i32 {
        let r = w.len() - 1;
        w[..r].iter().map(|&a| self.c.degree(a)).sum::<i32>() + self.m.degrees[w[r]] + r as i32 - 1
    }

    pub fn d_part(&self, w: &[usize]) -> Vec<(Word, Scalar)> {
        let f = self.field();
        let r = w.len() - 1;
        let mut out = Vec::new();
        let mut prefix = 0i64;
        for k in 0..=r {
            let s = f.sign(r as i64 + prefix);
            let (terms, deg) = if k < r { (self.c.d(w[k]), self.c.degree(w[k])) } else { (&self.m.diff[w[r]], self.m.degrees[w[r]]) };
            for (t, x) in terms {
                let mut nw = w.to_vec();
                nw[k] = *t;
                out.push((nw, &s * x));
            }
            prefix += deg as i64;
        }
        out
    }

    pub fn bprime_part(&self, w: &[usize]) -> Vec<(Word, Scalar)> {
        let f = self.field();
        let r = w.len() - 1;
        let mut out = Vec::new();
        for k in 0..r {
            let s = f.sign(k as i64);
            for (a1, a2, x) in self.c.delta(w[k]) {
                let mut nw = Vec::with_capacity(w.len() + 1);
                nw.extend_from_slice(&w[..k]);
                nw.push(*a1);
                nw.push(*a2);
                nw.extend_from_slice(&w[k + 1..]);
                out.push((nw, &s * x));
            }
        }
        let s = f.sign(r as i64);
        for (c, m, x) in &self.m.left[w[r]] {
            let mut nw = w[..r].to_vec();
            nw.push(*c);
            nw.push(*m);
            out.push((nw, &s * x));
        }
        out
    }

    pub fn boundary(&self, w: &[usize]) -> Vec<(Word, Scalar)> {
        let mut out = self.d_part(w);
        out.extend(self.bprime_part(w));
        out
    }

    /// `h(c_1, …, c_r, m) = ε(c_1)(c_2, …, c_r, m)`, zero on level 0.
    pub fn homotopy(&self, w: &[usize]) -> Vec<(Word, Scalar)> {
        if w.len() < 2 || self.c.eps(w[0]).is_zero() {
            return vec![];
        }
        vec![(w[1..].to_vec(), self.c.eps(w[0]).clone())]
    }

    /// Twisted left coaction on a word of level `r ≥ 1`.
    pub fn left_coaction(&self, w: &[usize]) -> Vec<(usize, Word, Scalar)> {
        let f = self.field();
        let r = (w.len() - 1) as i64;
        self.c
            .delta(w[0])
            .iter()
            .map(|(a1, a2, x)| {
                let mut nw = w.to_vec();
                nw[0] = *a2;
                (*a1, nw, x * &f.sign(r * self.c.degree(*a1) as i64))
            })
            .collect()
    }

    /// Twisted right coaction `(…, m) ↦ (−1)^{|m″|} (…, m′) ⊗ m″`.
    pub fn right_coaction(&self, w: &[usize]) -> Vec<(Word, usize, Scalar)> {
        let f = self.field();
        let r = w.len() - 1;
        let right = self.m.right.as_ref().expect("right coaction present");
        right[w[r]]
            .iter()
            .map(|(c, m, x)| {
                let mut nw = w.to_vec();
                nw[r] = *m;
                (nw, *c, x * &f.sign(self.c.degree(*c) as i64))
            })
            .collect()
    }

    /// All words of the given level, lexicographically.
    pub fn words(&self, level: usize) -> Vec<Word> {
        let n = self.c.dim();
        let mut out = vec![vec![]];
        for _ in 0..level {
            out = out.into_iter().flat_map(|w: Word| (0..n).map(move |a| [w.clone(), vec![a]].concat())).collect();
        }
        out.into_iter().flat_map(|w| (0..self.m.dim()).map(move |m| [w.clone(), vec![m]].concat())).collect()
    }
}

/// The truncated resolution `C_p(M) = ⊕_{r=1..p} C^{⊗r} ⊗ M` or, when
/// augmented, `Ĉ_p(M) = ⊕_{r=0..p}`.
#[derive(Clone, Debug)]
pub struct StandardResolution {
    coalgebra: DGCoalgebra,
    coeffs: Coeffs,
    levels: usize,
    augmented: bool,
    basis: GradedBasis<Word>,
    complex: ChainComplex,
}

impl StandardResolution {
    /// `C_p(M)` for a left comodule `M`.
    pub fn new(m: &DGComodule, levels: usize) -> Result<Self> {
        if m.side() != Side::Left {
            return Err(Error::InvalidArgument("standard resolution of a right comodule; use the opposite side".into()));
        }
        Self::build(m.over(), Coeffs::from_left(m), levels, false)
    }

    /// `Ĉ_p(M)`, which carries the contracting homotopy.
    pub fn augmented(m: &DGComodule, levels: usize) -> Result<Self> {
        if m.side() != Side::Left {
            return Err(Error::InvalidArgument("standard resolution of a right comodule".into()));
        }
        Self::build(m.over(), Coeffs::from_left(m), levels, true)
    }

    /// `C_p(M)` for a `C`-bicomodule, keeping the right coaction.
    pub fn for_bicomodule(m: &Bicomodule, levels: usize) -> Result<Self> {
        if m.left_over() != m.right_over() {
            return Err(Error::CoalgebraMismatch("resolution of a bicomodule over two coalgebras".into()));
        }
        Self::build(m.left_over(), Coeffs::from_bicomodule(m), levels, false)
    }

    fn build(c: &DGCoalgebra, coeffs: Coeffs, levels: usize, augmented: bool) -> Result<Self> {
        c.require_positively_graded()?;
        if levels == 0 {
            return Err(Error::InvalidArgument("a resolution needs at least one level".into()));
        }
        let ops = WordOps { c, m: &coeffs };
        let first = if augmented { 0 } else { 1 };
        let items: Vec<(Word, i32)> =
            (first..=levels).flat_map(|r| ops.words(r)).map(|w| (ops.degree(&w), w)).map(|(d, w)| (w, d)).collect();
        let basis = GradedBasis::new(items)?;
        let complex = basis.complex(c.field(), |i| word_terms(&basis, ops.boundary(basis.key(i))))?;
        Ok(StandardResolution { coalgebra: c.clone(), coeffs, levels, augmented, basis, complex })
    }

    pub(crate) fn ops(&self) -> WordOps<'_> {
        WordOps { c: &self.coalgebra, m: &self.coeffs }
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }
    pub fn levels(&self) -> usize {
        self.levels
    }
    pub fn is_augmented(&self) -> bool {
        self.augmented
    }
    pub fn basis(&self) -> &GradedBasis<Word> {
        &self.basis
    }
    pub fn coalgebra(&self) -> &DGCoalgebra {
        &self.coalgebra
    }

    pub fn level(&self, i: usize) -> usize {
        self.basis.key(i).len() - 1
    }

    /// Highest degree in which the truncation computes the untruncated
    /// cohomology: words of level `> p` start in degree `p + min|m|`.
    pub fn sound_up_to(&self) -> i32 {
        self.levels as i32 + self.coeffs.bottom() - 2
    }

    pub fn bprime(&self) -> Result<GradedMap> {
        let ops = self.ops();
        let components = self.basis.map_blocks(self.coalgebra.field(), &self.basis, 1, |i| {
            word_terms(&self.basis, ops.bprime_part(self.basis.key(i)))
        })?;
        Ok(GradedMap { degree: 1, components })
    }

    pub fn internal_d(&self) -> Result<GradedMap> {
        let ops = self.ops();
        let components = self.basis.map_blocks(self.coalgebra.field(), &self.basis, 1, |i| {
            word_terms(&self.basis, ops.d_part(self.basis.key(i)))
        })?;
        Ok(GradedMap { degree: 1, components })
    }

    /// The contracting homotopy `h`, of degree −1.
    pub fn contracting_homotopy(&self) -> Result<GradedMap> {
        let ops = self.ops();
        let components = self.basis.map_blocks(self.coalgebra.field(), &self.basis, -1, |i| {
            word_terms(&self.basis, ops.homotopy(self.basis.key(i)))
        })?;
        Ok(GradedMap { degree: -1, components })
    }

    /// Verify `b′h + hb′ = id` and `dh + hd = 0` on every word whose level is
    /// below the truncation (at level `p` the dropped terms break the identity).
    pub fn check_contraction(&self) -> Result<()> {
        let f = self.coalgebra.field();
        let (bp, d, h) = (self.bprime()?, self.internal_d()?, self.contracting_homotopy()?);
        let x = &self.complex;
        for n in self.basis.degrees() {
            let src = self.basis.in_degree(n);
            let comp = |g: &GradedMap, k: i32| g.component(x, x, k);
            let bh = comp(&bp, n - 1).mul(&comp(&h, n)).add(&comp(&h, n + 1).mul(&comp(&bp, n)));
            let dh = comp(&d, n - 1).mul(&comp(&h, n)).add(&comp(&h, n + 1).mul(&comp(&d, n)));
            for (j, &i) in src.iter().enumerate() {
                if self.level(i) >= self.levels {
                    continue;
                }
                for (row, &t) in src.iter().enumerate() {
                    let expect = if t == i { f.one() } else { f.zero() };
                    if bh.get(row, j) != &expect {
                        return Err(Error::InvalidStructure(format!("b′h + hb′ ≠ id in degree {n}")));
                    }
                    if !dh.get(row, j).is_zero() {
                        return Err(Error::InvalidStructure(format!("dh + hd ≠ 0 in degree {n}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `M → C_p(M)`, `m ↦ (−1)^{|m|} ρ(m)`.
    pub fn augmentation(&self) -> Result<ChainMap> {
        if self.augmented {
            return Err(Error::InvalidArgument("the augmentation targets the non-augmented resolution".into()));
        }
        let f = self.coalgebra.field();
        let mb = GradedBasis::new((0..self.coeffs.dim()).map(|i| (i, self.coeffs.degrees[i])).collect())?;
        let source = mb.complex(f, |i| self.coeffs.diff[i].clone())?;
        let blocks = mb.map_blocks(f, &self.basis, 0, |i| {
            let s = f.sign(self.coeffs.degrees[i] as i64);
            word_terms(&self.basis, self.coeffs.left[i].iter().map(|(c, m, x)| (vec![*c, *m], x * &s)).collect())
        })?;
        ChainMap::new(source, self.complex.clone(), blocks)
    }

    fn element_basis(&self) -> Vec<BasisElement> {
        (0..self.basis.len())
            .map(|i| {
                let w = self.basis.key(i);
                let r = w.len() - 1;
                let mut parts: Vec<&str> = w[..r].iter().map(|&a| self.coalgebra.label(a)).collect();
                parts.push(&self.coeffs.labels[w[r]]);
                BasisElement { label: format!("({})", parts.join(",")), degree: self.basis.degree(i) }
            })
            .collect()
    }

    fn boundary_terms(&self) -> Vec<Terms> {
        let ops = self.ops();
        (0..self.basis.len()).map(|i| word_terms(&self.basis, ops.boundary(self.basis.key(i)))).collect()
    }

    /// `C_p(M)` as a left dg comodule (twisted coaction).
    pub fn as_comodule(&self) -> Result<DGComodule> {
        if self.augmented {
            return Err(Error::InvalidArgument("the augmented resolution is not a comodule".into()));
        }
        let ops = self.ops();
        let coaction = (0..self.basis.len())
            .map(|i| {
                ops.left_coaction(self.basis.key(i))
                    .into_iter()
                    .map(|(c, w, x)| (c, self.basis.index(&w).expect("same level"), x))
                    .collect()
            })
            .collect();
        DGComodule::new(Side::Left, self.coalgebra.clone(), self.element_basis(), coaction, self.boundary_terms())
    }

    /// `C_p(M)` as a bicomodule when `M` is one.
    pub fn as_bicomodule(&self) -> Result<Bicomodule> {
        if self.coeffs.right.is_none() {
            return Err(Error::InvalidArgument("resolution of a one-sided comodule".into()));
        }
        let ops = self.ops();
        let left = self.as_comodule()?;
        let right: Vec<Terms2> = (0..self.basis.len())
            .map(|i| {
                ops.right_coaction(self.basis.key(i))
                    .into_iter()
                    .map(|(w, c, x)| (c, self.basis.index(&w).expect("same level"), x))
                    .collect()
            })
            .collect();
        let l: Vec<Terms2> = (0..left.dim()).map(|i| left.rho(i).clone()).collect();
        Bicomodule::new(
            self.coalgebra.clone(),
            self.coalgebra.clone(),
            self.element_basis(),
            l,
            right,
            self.boundary_terms(),
        )
    }
}

/// Translate word combinations into basis indices, dropping words outside the
/// truncation.
pub(crate) fn word_terms(basis: &GradedBasis<Word>, terms: Vec<(Word, Scalar)>) -> Terms {
    let field = terms.first().map(|t| t.1.field());
    match field {
        None => vec![],
        Some(f) => normalize(f, terms.into_iter().filter_map(|(w, x)| basis.index(&w).map(|i| (i, x)))),
    }
}

pub fn standard_resolution(m: &DGComodule, levels: usize) -> Result<StandardResolution> {
    StandardResolution::new(m, levels)
}

/// `X □_C Y` for a right comodule `X` and a left comodule `Y`: the kernel of
/// `ρ_X ⊗ 1 − 1 ⊗ ρ_Y` inside the tensor complex `X ⊗ Y`.
pub fn cotensor(x: &DGComodule, y: &DGComodule) -> Result<ChainComplex> {
    if x.side() != Side::Right || y.side() != Side::Left {
        return Err(Error::InvalidArgument("cotensor needs a right and a left comodule".into()));
    }
    if x.over() != y.over() {
        return Err(Error::CoalgebraMismatch("cotensor over different coalgebras".into()));
    }
    let c = x.over();
    let f = c.field();
    let (xb, yb) = (x.graded_basis(), y.graded_basis());
    let tensor = tensor_complex(&x.as_complex()?, &y.as_complex()?)?;
    let (nx, nc, ny) = (x.dim(), c.dim(), y.dim());
    let mut kernels = BTreeMap::new();
    for (&n, &dim) in tensor.space().dims() {
        // enumerate the tensor basis of degree n in tensor_complex order
        let mut pairs = Vec::with_capacity(dim);
        for p in xb.degrees() {
            for &i in xb.in_degree(p) {
                for &j in yb.in_degree(n - p) {
                    pairs.push((i, j));
                }
            }
        }
        let mut cond = Matrix::zeros(f, nx * nc * ny, pairs.len());
        for (col, &(i, j)) in pairs.iter().enumerate() {
            for (a, i2, v) in x.rho(i) {
                cond.add_to((i2 * nc + a) * ny + j, col, v);
            }
            for (a, j2, v) in y.rho(j) {
                cond.add_to((i * nc + a) * ny + j2, col, &-v);
            }
        }
        kernels.insert(n, cond.kernel_basis());
    }
    tensor.subcomplex(&kernels)
}

/// `Y □_{C^e} M` for `C`-bicomodules, inside `Y ⊗ M`: the equalizer of
/// `(ρ_R^Y ⊗ 1, 1 ⊗ ρ_L^M)` and of `(ρ_L^Y ⊗ 1, σ∘(1 ⊗ ρ_R^M))` where
/// `σ(y ⊗ m ⊗ c) = (−1)^{|c|(|y|+|m|)} c ⊗ y ⊗ m`.
pub fn cotensor_bicomodule(y: &Bicomodule, m: &Bicomodule) -> Result<ChainComplex> {
    let c = y.left_over();
    if y.right_over() != c || m.left_over() != c || m.right_over() != c {
        return Err(Error::CoalgebraMismatch("cotensor over C^e needs C-bicomodules".into()));
    }
    let f = c.field();
    let (yc, mc) = (y.as_complex()?, m.as_complex()?);
    let yb = GradedBasis::new((0..y.dim()).map(|i| (i, y.degree(i))).collect())?;
    let mb = GradedBasis::new((0..m.dim()).map(|i| (i, m.degree(i))).collect())?;
    let tensor = tensor_complex(&yc, &mc)?;
    let (ny, nc, nm) = (y.dim(), c.dim(), m.dim());
    let mut kernels = BTreeMap::new();
    for (&n, _) in tensor.space().dims() {
        let mut pairs = Vec::new();
        for p in yb.degrees() {
            for &i in yb.in_degree(p) {
                for &j in mb.in_degree(n - p) {
                    pairs.push((i, j));
                }
            }
        }
        let block = ny * nc * nm;
        let mut cond = Matrix::zeros(f, 2 * block, pairs.len());
        for (col, &(i, j)) in pairs.iter().enumerate() {
            let yd = y.degree(i) as i64;
            // cond1 in Y ⊗ C ⊗ M
            for (a, i2, v) in y.rho_right(i) {
                cond.add_to((i2 * nc + a) * nm + j, col, v);
            }
            for (a, j2, v) in m.rho_left(j) {
                cond.add_to((i * nc + a) * nm + j2, col, &-v);
            }
            // cond2 in C ⊗ Y ⊗ M
            for (a, i2, v) in y.rho_left(i) {
                cond.add_to(block + (a * ny + i2) * nm + j, col, v);
            }
            for (a, j2, v) in m.rho_right(j) {
                let s = f.sign(c.degree(*a) as i64 * (yd + m.degree(*j2) as i64));
                cond.add_to(block + (a * ny + i) * nm + j2, col, &-(v * &s));
            }
        }
        kernels.insert(n, cond.kernel_basis());
    }
    tensor.subcomplex(&kernels)
}

/// A colinear Hom-complex: the subcomplex of `Hom(Y, Z)` cut out by the
/// colinearity equations, with its ambient layout.
#[derive(Clone, Debug)]
pub struct ColinearHom {
    pub complex: ChainComplex,
    pub ambient: ChainComplex,
    pub layout: HomLayout,
    /// Per degree, columns expressing the subcomplex basis in ambient coordinates.
    pub inclusion: BTreeMap<i32, Matrix>,
}

/// Rows of the colinearity equations for degree-`n` maps `Y → Z`, in the
/// ambient Hom-complex coordinates. Left: `ρ_Z F = (1 ⊗ F)ρ_Y` with
/// `(1 ⊗ F)(c ⊗ y) = (−1)^{n|c|} c ⊗ F(y)`; right: `ρ_Z F = (F ⊗ 1)ρ_Y`.
fn colinearity_rows(
    side: Side,
    c: &DGCoalgebra,
    y: (&[i32], &[Terms2]),
    z: (&[i32], &[Terms2]),
    yc: &ChainComplex,
    layout: &HomLayout,
    n: i32,
    len: usize,
) -> Matrix {
    let f = c.field();
    let (ydeg, yrho) = y;
    let (zdeg, zrho) = z;
    let (ny, nc, nz) = (ydeg.len(), c.dim(), zdeg.len());
    let yb = GradedBasis::new((0..ny).map(|i| (i, ydeg[i])).collect()).expect("indices");
    let zb = GradedBasis::new((0..nz).map(|i| (i, zdeg[i])).collect()).expect("indices");
    // coordinate of the unknown F[z, y] in the ambient degree-n vector
    let coord = |zi: usize, yi: usize| -> Option<usize> {
        let m = ydeg[yi];
        if zdeg[zi] != m + n {
            return None;
        }
        let off = layout.offset(n, m)?;
        Some(off + zb.position(zi) * yc.dim(m) + yb.position(yi))
    };
    let mut rows = Matrix::zeros(f, ny * nc * nz, len);
    for yi in 0..ny {
        for zi in 0..nz {
            let Some(col) = coord(zi, yi) else { continue };
            // ρ_Z F: F[z, y] ρ_Z(z)
            for (a, z2, v) in &zrho[zi] {
                rows.add_to((yi * nc + a) * nz + z2, col, v);
            }
        }
        for (a, y2, v) in &yrho[yi] {
            let s = match side {
                Side::Left => f.sign(n as i64 * c.degree(*a) as i64),
                Side::Right => f.one(),
            };
            for zi in 0..nz {
                if let Some(col) = coord(zi, *y2) {
                    rows.add_to((yi * nc + a) * nz + zi, col, &-(v * &s));
                }
            }
        }
    }
    rows
}

fn colinear_hom_impl(
    yc: ChainComplex,
    zc: ChainComplex,
    conditions: &dyn Fn(&HomLayout, i32, usize) -> Matrix,
) -> Result<ColinearHom> {
    let (ambient, layout) = hom_complex(&yc, &zc)?;
    let mut inclusion = BTreeMap::new();
    for (&n, &len) in ambient.space().dims() {
        inclusion.insert(n, conditions(&layout, n, len).kernel_basis());
    }
    let complex = ambient.subcomplex(&inclusion)?;
    Ok(ColinearHom { complex, ambient, layout, inclusion })
}

/// `𝓗om_C(Y, Z)` for two comodules on the same side.
pub fn colinear_hom(y: &DGComodule, z: &DGComodule) -> Result<ColinearHom> {
    if y.over() != z.over() || y.side() != z.side() {
        return Err(Error::CoalgebraMismatch("colinear maps between different coalgebras or sides".into()));
    }
    let c = y.over();
    let (yc, zc) = (y.as_complex()?, z.as_complex()?);
    let ydeg: Vec<i32> = y.basis().iter().map(|b| b.degree).collect();
    let zdeg: Vec<i32> = z.basis().iter().map(|b| b.degree).collect();
    let yrho: Vec<Terms2> = (0..y.dim()).map(|i| y.rho(i).clone()).collect();
    let zrho: Vec<Terms2> = (0..z.dim()).map(|i| z.rho(i).clone()).collect();
    let side = y.side();
    let yc2 = yc.clone();
    colinear_hom_impl(yc, zc, &|layout, n, len| {
        colinearity_rows(side, c, (&ydeg, &yrho), (&zdeg, &zrho), &yc2, layout, n, len)
    })
}

/// `𝓗om_{C^e}(Y, Z)` for bicomodules: colinear on both sides.
pub fn bicolinear_hom(y: &Bicomodule, z: &Bicomodule) -> Result<ColinearHom> {
    if y.left_over() != z.left_over() || y.right_over() != z.right_over() {
        return Err(Error::CoalgebraMismatch("bicolinear maps between different coalgebras".into()));
    }
    let (yc, zc) = (y.as_complex()?, z.as_complex()?);
    let ydeg: Vec<i32> = y.basis().iter().map(|b| b.degree).collect();
    let zdeg: Vec<i32> = z.basis().iter().map(|b| b.degree).collect();
    let yl: Vec<Terms2> = (0..y.dim()).map(|i| y.rho_left(i).clone()).collect();
    let zl: Vec<Terms2> = (0..z.dim()).map(|i| z.rho_left(i).clone()).collect();
    let yr: Vec<Terms2> = (0..y.dim()).map(|i| y.rho_right(i).clone()).collect();
    let zr: Vec<Terms2> = (0..z.dim()).map(|i| z.rho_right(i).clone()).collect();
    let (dl, dr) = (y.left_over(), y.right_over());
    let yc2 = yc.clone();
    colinear_hom_impl(yc, zc, &|layout, n, len| {
        let l = colinearity_rows(Side::Left, dl, (&ydeg, &yl), (&zdeg, &zl), &yc2, layout, n, len);
        let r = colinearity_rows(Side::Right, dr, (&ydeg, &yr), (&zdeg, &zr), &yc2, layout, n, len);
        l.vstack(&r)
    })
}

/// Basis of degree-zero colinear maps `Y → Z` (any sides, matching), each as a
/// `dim Z × dim Y` matrix in the global bases.
pub fn colinear_maps(y: &DGComodule, z: &DGComodule) -> Result<Vec<Matrix>> {
    if !y.is_concentrated() || !z.is_concentrated() {
        return Err(Error::NotConcentrated("colinear map spaces are computed for concentrated comodules".into()));
    }
    if y.over() != z.over() || y.side() != z.side() {
        return Err(Error::CoalgebraMismatch("colinear maps between different coalgebras or sides".into()));
    }
    let f = y.field();
    let (ny, nz, nc) = (y.dim(), z.dim(), y.over().dim());
    // unknown F[zi][yi] at zi * ny + yi
    let mut rows = Matrix::zeros(f, ny * nc * nz, ny * nz);
    for yi in 0..ny {
        for zi in 0..nz {
            for (a, z2, v) in z.rho(zi) {
                rows.add_to((yi * nc + a) * nz + z2, zi * ny + yi, v);
            }
        }
        for (a, y2, v) in y.rho(yi) {
            for zi in 0..nz {
                rows.add_to((yi * nc + a) * nz + zi, zi * ny + y2, &-v);
            }
        }
    }
    let k = rows.kernel_basis();
    Ok((0..k.cols()).map(|j| Matrix::from_fn(f, nz, ny, |r, s| k.get(r * ny + s, j).clone())).collect())
}

/// Coordinates of `g` in the span of `basis` (all same shape).
pub(crate) fn coordinates(basis: &[Matrix], g: &Matrix) -> Option<Vec<Scalar>> {
    let f = g.field();
    let len = g.rows() * g.cols();
    let cols: Vec<Vec<Scalar>> =
        basis.iter().map(|b| (0..len).map(|k| b.get(k / g.cols(), k % g.cols()).clone()).collect()).collect();
    let a = Matrix::from_columns(f, len, &cols);
    let v: Vec<Scalar> = (0..len).map(|k| g.get(k / g.cols(), k % g.cols()).clone()).collect();
    a.solve(&v).ok()?
}

/// `h_D(T, Y) = Com_D(Y, T)^*` as a left `C`-comodule, for a concentrated
/// bicomodule `_D T_C` and a concentrated left `D`-comodule `Y`.
pub fn cohom(t: &Bicomodule, y: &DGComodule) -> Result<DGComodule> {
    if y.side() != Side::Left {
        return Err(Error::InvalidArgument("cohom takes a left comodule".into()));
    }
    if y.over() != t.left_over() {
        return Err(Error::CoalgebraMismatch("cohom: Y and T live over different coalgebras".into()));
    }
    if !t.is_concentrated() {
        return Err(Error::NotConcentrated("cohom bicomodule".into()));
    }
    let c = t.right_over();
    let f = c.field();
    let com = colinear_maps(y, &t.left_comodule())?;
    let k = com.len();
    // ρ(f_i) = Σ_j f_j ⊗ c_{ji}: for each basis c, the c-component of ρ_R ∘ f_i.
    let mut coaction: Vec<Terms2> = vec![Vec::new(); k];
    for (i, fi) in com.iter().enumerate() {
        for a in 0..c.dim() {
            let mut g = Matrix::zeros(f, t.dim(), y.dim());
            for yi in 0..y.dim() {
                for ti in 0..t.dim() {
                    let coef = fi.get(ti, yi);
                    if coef.is_zero() {
                        continue;
                    }
                    for (a2, t2, v) in t.rho_right(ti) {
                        if *a2 == a {
                            g.add_to(*t2, yi, &(coef * v));
                        }
                    }
                }
            }
            if g.is_zero() {
                continue;
            }
            let coords = coordinates(&com, &g)
                .ok_or_else(|| Error::InvalidStructure("right coaction does not preserve colinear maps".into()))?;
            for (j, x) in coords.into_iter().enumerate() {
                if !x.is_zero() {
                    // dual: ρ(φ_j) gains c_{ji} ⊗ φ_i
                    coaction[j].push((a, i, x));
                }
            }
        }
    }
    let basis = (0..k).map(|i| BasisElement { label: format!("φ{i}"), degree: 0 }).collect();
    DGComodule::new(Side::Left, c.clone(), basis, coaction, vec![vec![]; k])
}

/// The coendomorphism coalgebra `Com(T, T)^*` of a concentrated comodule, with
/// `Δ(Φ)(f ⊗ g) = Φ(f∘g)` for left comodules and `Φ(g∘f)` for right ones.
/// Also returns the basis of `Com(T, T)` dual to the coalgebra basis.
pub fn coend(t: &DGComodule) -> Result<(DGCoalgebra, Vec<Matrix>)> {
    let com = colinear_maps(t, t)?;
    let f = t.field();
    let k = com.len();
    let mut comult: Vec<Terms2> = vec![Vec::new(); k];
    for (a, fa) in com.iter().enumerate() {
        for (b, fb) in com.iter().enumerate() {
            let prod = match t.side() {
                Side::Left => fa.mul(fb),
                Side::Right => fb.mul(fa),
            };
            let coords = coordinates(&com, &prod).ok_or_else(|| Error::InvalidStructure("Com(T,T) not closed".into()))?;
            for (kk, x) in coords.into_iter().enumerate() {
                if !x.is_zero() {
                    comult[kk].push((a, b, x));
                }
            }
        }
    }
    let counit = coordinates(&com, &Matrix::identity(f, t.dim())).expect("identity is colinear");
    let basis = (0..k).map(|i| BasisElement { label: format!("φ{i}"), degree: 0 }).collect();
    let e = DGCoalgebra::new(f, basis, comult, counit, vec![vec![]; k])?;
    Ok((e, com))
}

/// `Ext^n_D(T, T′)` for `n ≤ max_n` through the generic colinear Hom-complex
/// into `D_p(T′)`; suited to small inputs (see `slices` for the scalable route).
pub fn ext_comodule_generic(t: &DGComodule, t2: &DGComodule, max_n: i32, levels: usize) -> Result<BTreeMap<i32, usize>> {
    let bound = max_n + 2 + (top(t) - bottom(t2)).max(0);
    if (levels as i32) < bound {
        return Err(Error::Window(format!("Ext up to degree {max_n} needs at least {bound} levels, got {levels}")));
    }
    let res = StandardResolution::new(t2, levels)?;
    let hom = colinear_hom(t, &res.as_comodule()?)?;
    Ok(cohomology_dims(&hom.complex, 0..=max_n))
}

fn top(m: &DGComodule) -> i32 {
    m.basis().iter().map(|b| b.degree).max().unwrap_or(0)
}

fn bottom(m: &DGComodule) -> i32 {
    m.basis().iter().map(|b| b.degree).min().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(label: &str, degree: i32) -> BasisElement {
        BasisElement { label: label.into(), degree }
    }

    fn trivial(f: Field) -> DGCoalgebra {
        DGCoalgebra::new(f, vec![el("1", 0)], vec![vec![(0, 0, f.one())]], vec![f.one()], vec![vec![]]).unwrap()
    }

    fn exterior(f: Field) -> DGCoalgebra {
        DGCoalgebra::new(
            f,
            vec![el("g", 0), el("x", 1)],
            vec![vec![(0, 0, f.one())], vec![(0, 1, f.one()), (1, 0, f.one())]],
            vec![f.one(), f.zero()],
            vec![vec![], vec![]],
        )
        .unwrap()
    }

    /// g in degree 0, u in 1, v in 2, du = v, u and v primitive.
    fn acyclic(f: Field) -> DGCoalgebra {
        DGCoalgebra::new(
            f,
            vec![el("g", 0), el("u", 1), el("v", 2)],
            vec![
                vec![(0, 0, f.one())],
                vec![(0, 1, f.one()), (1, 0, f.one())],
                vec![(0, 2, f.one()), (2, 0, f.one())],
            ],
            vec![f.one(), f.zero(), f.zero()],
            vec![vec![], vec![(2, f.one())], vec![]],
        )
        .unwrap()
    }

    #[test]
    fn trivial_resolution_cohomology() {
        let f = Field::Rational;
        let k = trivial(f);
        let res = StandardResolution::new(&DGComodule::regular(&k, Side::Left), 4).unwrap();
        let dims = cohomology_dims(res.complex(), 0..=2);
        assert_eq!(dims.into_values().collect::<Vec<_>>(), vec![1, 0, 0]);
    }

    #[test]
    fn contraction_identities() {
        let f = Field::Rational;
        for c in [exterior(f), acyclic(f)] {
            let res = StandardResolution::augmented(&DGComodule::regular(&c, Side::Left), 3).unwrap();
            res.check_contraction().unwrap();
        }
    }

    #[test]
    fn resolution_is_a_comodule() {
        let f = Field::Rational;
        for c in [exterior(f), acyclic(f)] {
            let res = StandardResolution::for_bicomodule(&Bicomodule::regular(&c), 2).unwrap();
            let b = res.as_bicomodule().unwrap();
            assert!(b.validate().is_valid(), "{:?}", b.validate());
            let aug = res.augmentation().unwrap();
            assert!(aug.f(0).rank() == aug.f(0).cols());
        }
    }

    #[test]
    fn cotensor_with_regular_is_identity() {
        let f = Field::Rational;
        let c = exterior(f);
        let x = cotensor(&DGComodule::regular(&c, Side::Right), &DGComodule::regular(&c, Side::Left)).unwrap();
        assert_eq!(x.dim(0), 1);
        assert_eq!(x.dim(1), 1);
    }

    #[test]
    fn coend_of_regular() {
        let f = Field::Rational;
        let c = exterior(f);
        let (e, _) = coend(&DGComodule::regular(&trivial(f), Side::Left)).unwrap();
        assert_eq!(e.dim(), 1);
        assert!(e.validate().is_valid());
        assert!(colinear_maps(&DGComodule::regular(&c, Side::Left), &DGComodule::regular(&c, Side::Left)).is_err());
    }
}
