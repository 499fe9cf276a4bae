//! Cotensor products and colinear Hom-complexes against standard resolutions,
//! computed one cofree summand at a time.
//!
//! Level `r` of `C(M)` is cofree: `C ⊗ W` on the left (with `W` the words
//! `(c_2, …, c_r, m)`), and `C ⊗ V ⊗ C` on both sides when `M = C`. So
//!
//! ```text
//! X □_C (C ⊗ W)            ≅ X ⊗ W         Hom_C(T, C ⊗ W)          ≅ Hom(T, W)
//! (C ⊗ V ⊗ C) □_{C^e} M    ≅ V ⊗ M         Hom_{C^e}(M, C ⊗ V ⊗ C)  ≅ Hom(M, V)
//! ```
//!
//! For each middle word the small kernel is solved numerically and normalized
//! against `ψ⁺` (counit on the cofree legs); the differential is transported
//! as `ψ⁺ ∘ D ∘ ψ`. The kernels only depend on a few parities, so they are cached.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::basis::{normalize, GradedBasis, Terms};
use crate::coalgebra::{inverse, DGCoalgebra};
use crate::comodule::{Bicomodule, DGComodule, Side};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::resolution::{Coeffs, Word, WordOps};

/// `ψ = K (P K)^{-1}`: the kernel of `cond`, normalized so that `P ψ = id`.
fn normalized_kernel(cond: &Matrix, p: &Matrix) -> Result<Matrix> {
    let k = cond.kernel_basis();
    let pk = p.mul(&k);
    if pk.rows() != pk.cols() || pk.rank() != pk.rows() {
        return Err(Error::InvalidStructure(format!(
            "cofree slice has a {}-dimensional kernel where {} was expected",
            k.cols(),
            p.rows()
        )));
    }
    Ok(k.mul(&inverse(&pk)?))
}

/// Words of `len` letters from `0..n` with `Σ deg ≤ budget`, lexicographic.
pub(crate) fn bounded_words(n: usize, deg: &dyn Fn(usize) -> i32, len: usize, budget: i32) -> Vec<(Word, i32)> {
    let mut out = vec![(vec![], 0)];
    for _ in 0..len {
        let mut next = Vec::new();
        for (w, d) in out {
            for a in 0..n {
                let nd = d + deg(a);
                if nd <= budget {
                    let mut nw = w.clone();
                    nw.push(a);
                    next.push((nw, nd));
                }
            }
        }
        out = next;
    }
    out
}

fn eps_ok(c: &DGCoalgebra, a: usize) -> bool {
    !c.eps(a).is_zero()
}

/// `(C_p(C) □_{C^e} M)` with cohomology-relevant degrees `≤ max_degree + 1`.
pub fn cotensor_enveloping_resolution(m: &Bicomodule, max_degree: i32, levels: usize) -> Result<ChainComplex> {
    let c = m.left_over();
    if m.right_over() != c {
        return Err(Error::CoalgebraMismatch("coefficients must be a C-bicomodule".into()));
    }
    c.require_positively_graded()?;
    let f = c.field();
    let reg = Coeffs::from_bicomodule(&Bicomodule::regular(c));
    let ops = WordOps { c, m: &reg };
    let (nc, nm) = (c.dim(), m.dim());
    let top = max_degree + 1;
    let bottom_m = (0..nm).map(|i| m.degree(i)).min().unwrap_or(0);
    let need = required(max_degree + 2 - bottom_m);
    if levels < need {
        return Err(Error::Window(format!("C_p(C) □ M through degree {max_degree} needs p ≥ {need}")));
    }

    // basis: (v, x) with v of r−1 letters
    let mut items = Vec::new();
    for r in 1..=levels {
        let budget = top - (r as i32 - 1) - bottom_m;
        for (v, dv) in bounded_words(nc, &|a| c.degree(a), r - 1, budget) {
            for x in 0..nm {
                let deg = dv + r as i32 - 1 + m.degree(x);
                if deg <= top {
                    items.push(((v.clone(), x), deg));
                }
            }
        }
    }
    let basis = GradedBasis::new(items)?;

    let unknown = |a: usize, b: usize, x: usize| (a * nc + b) * nm + x;
    let mut cache: HashMap<(usize, i32), Rc<Matrix>> = HashMap::new();
    let mut slice = |r: usize, dv: i32| -> Result<Rc<Matrix>> {
        let key = (r % 2, (dv + r as i32 - 1).rem_euclid(2));
        if let Some(k) = cache.get(&key) {
            return Ok(k.clone());
        }
        let shift = (dv + r as i32 - 1) as i64;
        let block = nc * nc * nc * nm;
        let mut cond = Matrix::zeros(f, 2 * block, nc * nc * nm);
        for a in 0..nc {
            for b in 0..nc {
                for x in 0..nm {
                    let col = unknown(a, b, x);
                    let yd = c.degree(a) as i64 + c.degree(b) as i64 + shift;
                    // cond1 rows (a, b', c, x) in Y ⊗ C ⊗ M
                    for (b1, b2, e) in c.delta(b) {
                        let s = f.sign(c.degree(*b2) as i64);
                        cond.add_to(((a * nc + b1) * nc + b2) * nm + x, col, &(e * &s));
                    }
                    for (cc, x2, e) in m.rho_left(x) {
                        cond.add_to(((a * nc + b) * nc + cc) * nm + x2, col, &-e);
                    }
                    // cond2 rows (c, a, b, x) in C ⊗ Y ⊗ M
                    for (a1, a2, e) in c.delta(a) {
                        let s = f.sign(r as i64 * c.degree(*a1) as i64);
                        cond.add_to(block + ((a1 * nc + a2) * nc + b) * nm + x, col, &(e * &s));
                    }
                    for (cc, x2, e) in m.rho_right(x) {
                        let s = f.sign(c.degree(*cc) as i64 * (yd + m.degree(*x2) as i64));
                        cond.add_to(block + ((cc * nc + a) * nc + b) * nm + x2, col, &-(e * &s));
                    }
                }
            }
        }
        let p = Matrix::from_fn(f, nm, nc * nc * nm, |x, u| {
            let (ab, x2) = (u / nm, u % nm);
            if x2 == x {
                c.eps(ab / nc) * c.eps(ab % nc)
            } else {
                f.zero()
            }
        });
        let k = Rc::new(normalized_kernel(&cond, &p)?);
        cache.insert(key, k.clone());
        Ok(k)
    };

    let mut diffs: Vec<Terms> = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let (v, x) = basis.key(i);
        let r = v.len() + 1;
        let dv: i32 = v.iter().map(|&a| c.degree(a)).sum();
        if basis.degree(i) >= top {
            diffs.push(vec![]);
            continue;
        }
        let psi = slice(r, dv)?;
        let mut out: Vec<(usize, Scalar)> = Vec::new();
        for u in 0..psi.rows() {
            let coef = psi.get(u, *x);
            if coef.is_zero() {
                continue;
            }
            let (a, b, x1) = (u / (nc * nm), (u / nm) % nc, u % nm);
            let mut w = Vec::with_capacity(r + 1);
            w.push(a);
            w.extend_from_slice(v);
            w.push(b);
            // ∂y ⊗ x1
            for (w2, e) in ops.boundary(&w) {
                let (a2, b2) = (w2[0], *w2.last().unwrap());
                if w2.len() - 1 > levels || !eps_ok(c, a2) || !eps_ok(c, b2) {
                    continue;
                }
                let key = (w2[1..w2.len() - 1].to_vec(), x1);
                if let Some(t) = basis.index(&key) {
                    out.push((t, &(coef * &e) * &(c.eps(a2) * c.eps(b2))));
                }
            }
            // (−1)^{|y|} y ⊗ d x1
            if eps_ok(c, a) && eps_ok(c, b) {
                let yd = ops.degree(&w) as i64;
                for (x2, e) in m.d(x1) {
                    if let Some(t) = basis.index(&(v.clone(), *x2)) {
                        let s = f.sign(yd);
                        out.push((t, &(&(coef * e) * &s) * &(c.eps(a) * c.eps(b))));
                    }
                }
            }
        }
        diffs.push(normalize(f, out));
    }
    basis.complex(f, |i| diffs[i].clone())
}

type SliceKey = (usize, i64, i32);

/// `𝓗om_{C^e}(M, C_p(C))` in degrees `≤ max_degree + 1`, in the coordinates
/// `(v, x) ↦ x* ⊗ v` of `Hom(M, V)`.
#[derive(Clone, Debug)]
pub struct EnvelopingHom {
    pub complex: ChainComplex,
    m: Bicomodule,
    levels: usize,
    basis: GradedBasis<(Word, usize)>,
    sources: BTreeMap<i32, Vec<usize>>,
    slices: RefCell<HashMap<SliceKey, Rc<Matrix>>>,
}

impl EnvelopingHom {
    pub fn new(m: &Bicomodule, max_degree: i32, levels: usize) -> Result<Self> {
        let c = m.left_over();
        if m.right_over() != c {
            return Err(Error::CoalgebraMismatch("coefficients must be a C-bicomodule".into()));
        }
        c.require_positively_graded()?;
        let nm = m.dim();
        let top_m = (0..nm).map(|i| m.degree(i)).max().unwrap_or(0);
        let need = required(max_degree + 2 + top_m);
        if levels < need {
            return Err(Error::Window(format!("Hom into C_p(C) through degree {max_degree} needs p ≥ {need}")));
        }
        Self::build(m, None, max_degree, levels)
    }

    /// Degrees `min_degree..=max_degree + 1` only, without the window check.
    pub(crate) fn build(m: &Bicomodule, min_degree: Option<i32>, max_degree: i32, levels: usize) -> Result<Self> {
        let c = m.left_over();
        let nm = m.dim();
        let top_m = (0..nm).map(|i| m.degree(i)).max().unwrap_or(0);
        let low = min_degree.unwrap_or(i32::MIN);
        let top = max_degree + 1;
        let mut items = Vec::new();
        for r in 1..=levels {
            let budget = top - (r as i32 - 1) + top_m;
            for (v, dv) in bounded_words(c.dim(), &|a| c.degree(a), r - 1, budget) {
                for x in 0..nm {
                    let deg = dv + r as i32 - 1 - m.degree(x);
                    if deg <= top && deg >= low {
                        items.push(((v.clone(), x), deg));
                    }
                }
            }
        }
        let basis = GradedBasis::new(items)?;
        let sources = (0..nm).fold(BTreeMap::new(), |mut acc: BTreeMap<i32, Vec<usize>>, x| {
            acc.entry(m.degree(x)).or_default().push(x);
            acc
        });
        let mut out = EnvelopingHom {
            complex: ChainComplex::zero(c.field()),
            m: m.clone(),
            levels,
            basis,
            sources,
            slices: RefCell::new(HashMap::new()),
        };
        let diffs = (0..out.basis.len())
            .map(|i| if out.basis.degree(i) >= top { Ok(vec![]) } else { out.differential(i) })
            .collect::<Result<Vec<_>>>()?;
        out.complex = out.basis.complex(c.field(), |i| diffs[i].clone())?;
        Ok(out)
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn coefficients(&self) -> &Bicomodule {
        &self.m
    }

    pub fn basis(&self) -> &GradedBasis<(Word, usize)> {
        &self.basis
    }

    /// Normalized kernel for maps of degree `n` whose `ψ⁺` lands on middle
    /// words of level `r`, sourced at elements of degree `s`.
    fn slice(&self, r: usize, n: i32, s: i32) -> Result<Rc<Matrix>> {
        let key = (r % 2, (n as i64).rem_euclid(2), s);
        if let Some(k) = self.slices.borrow().get(&key) {
            return Ok(k.clone());
        }
        let (m, c) = (&self.m, self.m.left_over());
        let f = c.field();
        let (nc, nm) = (c.dim(), m.dim());
        let unknown = |a: usize, b: usize, x: usize| (a * nc + b) * nm + x;
        let active = |a: usize, b: usize, x: usize| c.degree(a) + c.degree(b) == m.degree(x) - s;
        let block = nm * nc * nc * nc;
        let mut cond = Matrix::zeros(f, 2 * block, nc * nc * nm);
        let lrow = |x: usize, cc: usize, a: usize, b: usize| ((x * nc + cc) * nc + a) * nc + b;
        let rrow = |x: usize, a: usize, b: usize, cc: usize| block + ((x * nc + a) * nc + b) * nc + cc;
        for a in 0..nc {
            for b in 0..nc {
                for x in 0..nm {
                    if !active(a, b, x) {
                        continue;
                    }
                    let col = unknown(a, b, x);
                    for (a1, a2, e) in c.delta(a) {
                        let sg = f.sign(r as i64 * c.degree(*a1) as i64);
                        cond.add_to(lrow(x, *a1, *a2, b), col, &(e * &sg));
                    }
                    for (b1, b2, e) in c.delta(b) {
                        let sg = f.sign(c.degree(*b2) as i64);
                        cond.add_to(rrow(x, a, *b1, *b2), col, &(e * &sg));
                    }
                }
            }
        }
        // −(1⊗F)ρ_L and −(F⊗1)ρ_R, by source element
        for x in 0..nm {
            for (cc, x2, e) in m.rho_left(x) {
                let sg = f.sign(n as i64 * c.degree(*cc) as i64);
                for a in 0..nc {
                    for b in 0..nc {
                        if active(a, b, *x2) {
                            cond.add_to(lrow(x, *cc, a, b), unknown(a, b, *x2), &-(e * &sg));
                        }
                    }
                }
            }
            for (cc, x2, e) in m.rho_right(x) {
                for a in 0..nc {
                    for b in 0..nc {
                        if active(a, b, *x2) {
                            cond.add_to(rrow(x, a, b, *cc), unknown(a, b, *x2), &-e);
                        }
                    }
                }
            }
        }
        let targets = self.sources.get(&s).cloned().unwrap_or_default();
        let mut p = Matrix::zeros(f, targets.len(), nc * nc * nm);
        for (row, &x) in targets.iter().enumerate() {
            for a in 0..nc {
                for b in 0..nc {
                    let e = c.eps(a) * c.eps(b);
                    if !e.is_zero() && active(a, b, x) {
                        p.set(row, unknown(a, b, x), e);
                    }
                }
            }
        }
        // restrict to active unknowns so inactive coordinates stay zero
        let act: Vec<usize> = (0..nc * nc * nm).filter(|&u| active(u / (nc * nm), (u / nm) % nc, u % nm)).collect();
        let k = normalized_kernel(&cond.select_columns(&act), &p.select_columns(&act))?;
        let mut full = Matrix::zeros(f, nc * nc * nm, k.cols());
        for (i, &u) in act.iter().enumerate() {
            for j in 0..k.cols() {
                full.set(u, j, k.get(i, j).clone());
            }
        }
        let full = Rc::new(full);
        self.slices.borrow_mut().insert(key, full.clone());
        Ok(full)
    }

    /// The bicolinear map with coordinate vector `e_i`, as `(source, word, coefficient)`
    /// with words `(a, v…, b)` of `C_p(C)`.
    pub fn element(&self, i: usize) -> Result<Vec<(usize, Word, Scalar)>> {
        let (v, x) = self.basis.key(i);
        let nc = self.m.left_over().dim();
        let nm = self.m.dim();
        let s = self.m.degree(*x);
        let psi = self.slice(v.len() + 1, self.basis.degree(i), s)?;
        let col = self.sources[&s].iter().position(|y| y == x).expect("x has degree s");
        let mut out = Vec::new();
        for u in 0..psi.rows() {
            let coef = psi.get(u, col);
            if coef.is_zero() {
                continue;
            }
            let (a, b, x1) = (u / (nc * nm), (u / nm) % nc, u % nm);
            let mut w = Vec::with_capacity(v.len() + 2);
            w.push(a);
            w.extend_from_slice(v);
            w.push(b);
            out.push((x1, w, coef.clone()));
        }
        Ok(out)
    }

    /// The map with coordinates `vec` in degree `n`, one word combination per
    /// source basis element.
    pub fn reconstruct(&self, n: i32, vec: &[Scalar]) -> Result<Vec<Vec<(Word, Scalar)>>> {
        let mut out = vec![Vec::new(); self.m.dim()];
        for (&i, x) in self.basis.in_degree(n).iter().zip(vec) {
            if x.is_zero() {
                continue;
            }
            for (src, w, e) in self.element(i)? {
                out[src].push((w, &e * x));
            }
        }
        Ok(out)
    }

    /// `D(F) = ∂∘F − (−1)^n F∘d_M`, pushed through `ψ⁺`.
    fn differential(&self, i: usize) -> Result<Terms> {
        let c = self.m.left_over();
        let f = c.field();
        let reg = Coeffs::from_bicomodule(&Bicomodule::regular(c));
        let ops = WordOps { c, m: &reg };
        let (v, x) = self.basis.key(i);
        let n = self.basis.degree(i);
        let mut out: Vec<(usize, Scalar)> = Vec::new();
        for (x1, w, coef) in self.element(i)? {
            for (w2, e) in ops.boundary(&w) {
                let (a2, b2) = (w2[0], *w2.last().unwrap());
                if w2.len() - 1 > self.levels || !eps_ok(c, a2) || !eps_ok(c, b2) {
                    continue;
                }
                if let Some(t) = self.basis.index(&(w2[1..w2.len() - 1].to_vec(), x1)) {
                    out.push((t, &(&coef * &e) * &(c.eps(a2) * c.eps(b2))));
                }
            }
        }
        let sg = -f.sign(n as i64);
        for x2 in 0..self.m.dim() {
            for (t, e) in self.m.d(x2) {
                if t == x {
                    if let Some(idx) = self.basis.index(&(v.clone(), x2)) {
                        out.push((idx, e * &sg));
                    }
                }
            }
        }
        Ok(normalize(f, out))
    }

    /// Precomposition `F ↦ F∘g` in degree `n`, for a degree-zero bicomodule map
    /// `g : M′ → M` given as a `dim M × dim M′` matrix; `other` is built on `M′`.
    pub fn restriction(&self, other: &EnvelopingHom, g: &Matrix, n: i32) -> Matrix {
        let f = self.m.field();
        let src = self.basis.in_degree(n);
        let tgt = other.basis.in_degree(n);
        let mut r = Matrix::zeros(f, tgt.len(), src.len());
        for (j, &i) in src.iter().enumerate() {
            let (v, x) = self.basis.key(i);
            for x2 in 0..g.cols() {
                let e = g.get(*x, x2);
                if e.is_zero() {
                    continue;
                }
                if let Some(t) = other.basis.index(&(v.clone(), x2)) {
                    r.add_to(other.basis.position(t), j, e);
                }
            }
        }
        r
    }
}

/// Levels are at least one.
fn required(n: i32) -> usize {
    n.max(1) as usize
}

/// Complex form of [`EnvelopingHom`].
pub fn hom_enveloping_resolution(m: &Bicomodule, max_degree: i32, levels: usize) -> Result<ChainComplex> {
    Ok(EnvelopingHom::new(m, max_degree, levels)?.complex)
}

/// `X □_C C_p(M)` in degrees `≤ max_degree + 1`, for a right comodule `X`
/// and a left comodule `M`.
pub fn cotensor_resolution(x: &DGComodule, m: &DGComodule, max_degree: i32, levels: usize) -> Result<ChainComplex> {
    Ok(cotensor_resolution_with_basis(x, m, max_degree, levels)?.0)
}

/// As [`cotensor_resolution`], also returning the basis `(x, (c_2, …, c_r, m))`
/// of the transported complex; `x ⊗ (c_1, …) ↦ ε(c_1)(x, (…))` identifies it
/// with the cotensor.
pub(crate) fn cotensor_resolution_with_basis(
    x: &DGComodule,
    m: &DGComodule,
    max_degree: i32,
    levels: usize,
) -> Result<(ChainComplex, GradedBasis<(usize, Word)>)> {
    if x.side() != Side::Right || m.side() != Side::Left {
        return Err(Error::InvalidArgument("derived cotensor needs a right and a left comodule".into()));
    }
    if x.over() != m.over() {
        return Err(Error::CoalgebraMismatch("derived cotensor over different coalgebras".into()));
    }
    let c = m.over();
    c.require_positively_graded()?;
    let f = c.field();
    let coeffs = Coeffs::from_left(m);
    let ops = WordOps { c, m: &coeffs };
    let (nc, nx, nm) = (c.dim(), x.dim(), m.dim());
    let top = max_degree + 1;
    let bottom_x = (0..nx).map(|i| x.degree(i)).min().unwrap_or(0);
    let bottom_m = coeffs.bottom();
    let need = required(max_degree + 2 - bottom_x - bottom_m);
    if levels < need {
        return Err(Error::Window(format!("X □ C_p(M) through degree {max_degree} needs p ≥ {need}")));
    }

    // basis (x, w), w = (c_2, …, c_r, m)
    let mut items = Vec::new();
    for r in 1..=levels {
        let budget = top - (r as i32 - 1) - bottom_x - bottom_m;
        for (v, dv) in bounded_words(nc, &|a| c.degree(a), r - 1, budget) {
            for mi in 0..nm {
                let mut w = v.clone();
                w.push(mi);
                for xi in 0..nx {
                    let deg = x.degree(xi) + dv + m.degree(mi) + r as i32 - 1;
                    if deg <= top {
                        items.push(((xi, w.clone()), deg));
                    }
                }
            }
        }
    }
    let basis = GradedBasis::new(items)?;

    let mut cache: HashMap<usize, Rc<Matrix>> = HashMap::new();
    let mut slice = |r: usize| -> Result<Rc<Matrix>> {
        if let Some(k) = cache.get(&(r % 2)) {
            return Ok(k.clone());
        }
        let mut cond = Matrix::zeros(f, nx * nc * nc, nx * nc);
        for xi in 0..nx {
            for a in 0..nc {
                let col = xi * nc + a;
                for (cc, x2, e) in x.rho(xi) {
                    cond.add_to((x2 * nc + cc) * nc + a, col, e);
                }
                for (a1, a2, e) in c.delta(a) {
                    let s = f.sign(r as i64 * c.degree(*a1) as i64);
                    cond.add_to((xi * nc + a1) * nc + a2, col, &-(e * &s));
                }
            }
        }
        let p = Matrix::from_fn(f, nx, nx * nc, |xi, u| if u / nc == xi { c.eps(u % nc).clone() } else { f.zero() });
        let k = Rc::new(normalized_kernel(&cond, &p)?);
        cache.insert(r % 2, k.clone());
        Ok(k)
    };

    let mut diffs: Vec<Terms> = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let (xi, w) = basis.key(i);
        if basis.degree(i) >= top {
            diffs.push(vec![]);
            continue;
        }
        let r = w.len();
        let psi = slice(r)?;
        let mut out = Vec::new();
        for u in 0..psi.rows() {
            let coef = psi.get(u, *xi);
            if coef.is_zero() {
                continue;
            }
            let (x1, a) = (u / nc, u % nc);
            let mut word = vec![a];
            word.extend_from_slice(w);
            // d x1 ⊗ y
            if eps_ok(c, a) {
                for (x2, e) in x.d(x1) {
                    if let Some(t) = basis.index(&(*x2, w.clone())) {
                        out.push((t, &(coef * e) * c.eps(a)));
                    }
                }
            }
            // (−1)^{|x1|} x1 ⊗ ∂y
            let s = f.sign(x.degree(x1) as i64);
            for (w2, e) in ops.boundary(&word) {
                if w2.len() - 1 > levels || !eps_ok(c, w2[0]) {
                    continue;
                }
                if let Some(t) = basis.index(&(x1, w2[1..].to_vec())) {
                    out.push((t, &(&(coef * &e) * &s) * c.eps(w2[0])));
                }
            }
        }
        diffs.push(normalize(f, out));
    }
    let complex = basis.complex(f, |i| diffs[i].clone())?;
    Ok((complex, basis))
}

/// `𝓗om_D(T, D_p(T′))` in degrees `≤ max_degree + 1`, for left comodules.
pub fn hom_resolution(t: &DGComodule, t2: &DGComodule, max_degree: i32, levels: usize) -> Result<ChainComplex> {
    if t.side() != Side::Left || t2.side() != Side::Left {
        return Err(Error::InvalidArgument("Ext is computed between left comodules".into()));
    }
    if t.over() != t2.over() {
        return Err(Error::CoalgebraMismatch("Ext between comodules over different coalgebras".into()));
    }
    let c = t.over();
    c.require_positively_graded()?;
    let f: Field = c.field();
    let coeffs = Coeffs::from_left(t2);
    let ops = WordOps { c, m: &coeffs };
    let (nc, nt, nm) = (c.dim(), t.dim(), t2.dim());
    let top = max_degree + 1;
    let top_t = (0..nt).map(|i| t.degree(i)).max().unwrap_or(0);
    let need = required(max_degree + 2 + top_t - coeffs.bottom());
    if levels < need {
        return Err(Error::Window(format!("Hom(T, D_p(T′)) through degree {max_degree} needs p ≥ {need}")));
    }

    // basis (w, x): functional x* landing on (·, w); degree |w| + r − 1 − |x|
    let mut items = Vec::new();
    for r in 1..=levels {
        let budget = top - (r as i32 - 1) + top_t - coeffs.bottom();
        for (v, dv) in bounded_words(nc, &|a| c.degree(a), r - 1, budget) {
            for mi in 0..nm {
                let mut w = v.clone();
                w.push(mi);
                for xi in 0..nt {
                    let deg = dv + t2.degree(mi) + r as i32 - 1 - t.degree(xi);
                    if deg <= top {
                        items.push(((w.clone(), xi), deg));
                    }
                }
            }
        }
    }
    let basis = GradedBasis::new(items)?;
    let sources: BTreeMap<i32, Vec<usize>> = (0..nt).fold(BTreeMap::new(), |mut acc, x| {
        acc.entry(t.degree(x)).or_insert_with(Vec::new).push(x);
        acc
    });

    let mut cache: HashMap<(usize, i64, i32), Rc<Matrix>> = HashMap::new();
    let mut slice = |r: usize, n: i32, s: i32| -> Result<Rc<Matrix>> {
        let key = (r % 2, (n as i64).rem_euclid(2), s);
        if let Some(k) = cache.get(&key) {
            return Ok(k.clone());
        }
        let active = |a: usize, x: usize| c.degree(a) == t.degree(x) - s;
        let unknown = |a: usize, x: usize| a * nt + x;
        let row = |x: usize, cc: usize, a: usize| (x * nc + cc) * nc + a;
        let mut cond = Matrix::zeros(f, nt * nc * nc, nc * nt);
        for a in 0..nc {
            for x in 0..nt {
                if !active(a, x) {
                    continue;
                }
                for (a1, a2, e) in c.delta(a) {
                    let sg = f.sign(r as i64 * c.degree(*a1) as i64);
                    cond.add_to(row(x, *a1, *a2), unknown(a, x), &(e * &sg));
                }
            }
        }
        for x in 0..nt {
            for (cc, x2, e) in t.rho(x) {
                let sg = f.sign(n as i64 * c.degree(*cc) as i64);
                for a in 0..nc {
                    if active(a, *x2) {
                        cond.add_to(row(x, *cc, a), unknown(a, *x2), &-(e * &sg));
                    }
                }
            }
        }
        let targets = sources.get(&s).cloned().unwrap_or_default();
        let mut p = Matrix::zeros(f, targets.len(), nc * nt);
        for (rw, &x) in targets.iter().enumerate() {
            for a in 0..nc {
                if active(a, x) && eps_ok(c, a) {
                    p.set(rw, unknown(a, x), c.eps(a).clone());
                }
            }
        }
        let act: Vec<usize> = (0..nc * nt).filter(|&u| active(u / nt, u % nt)).collect();
        let k = normalized_kernel(&cond.select_columns(&act), &p.select_columns(&act))?;
        let mut full = Matrix::zeros(f, nc * nt, k.cols());
        for (i, &u) in act.iter().enumerate() {
            for j in 0..k.cols() {
                full.set(u, j, k.get(i, j).clone());
            }
        }
        let full = Rc::new(full);
        cache.insert(key, full.clone());
        Ok(full)
    };

    let mut diffs: Vec<Terms> = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let (w, x) = basis.key(i);
        let n = basis.degree(i);
        if n >= top {
            diffs.push(vec![]);
            continue;
        }
        let r = w.len();
        let s = t.degree(*x);
        let psi = slice(r, n, s)?;
        let col = sources[&s].iter().position(|y| y == x).expect("x has degree s");
        let mut out = Vec::new();
        for u in 0..psi.rows() {
            let coef = psi.get(u, col);
            if coef.is_zero() {
                continue;
            }
            let (a, x1) = (u / nt, u % nt);
            let mut word = vec![a];
            word.extend_from_slice(w);
            for (w2, e) in ops.boundary(&word) {
                if w2.len() - 1 > levels || !eps_ok(c, w2[0]) {
                    continue;
                }
                if let Some(idx) = basis.index(&(w2[1..].to_vec(), x1)) {
                    out.push((idx, &(coef * &e) * c.eps(w2[0])));
                }
            }
        }
        let sg = -f.sign(n as i64);
        for x2 in 0..nt {
            for (tt, e) in t.d(x2) {
                if tt == x {
                    if let Some(idx) = basis.index(&(w.clone(), x2)) {
                        out.push((idx, e * &sg));
                    }
                }
            }
        }
        diffs.push(normalize(f, out));
    }
    basis.complex(f, |i| diffs[i].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::BasisElement;
    use crate::complex::cohomology_dims;
    use crate::resolution::{bicolinear_hom, colinear_hom, cotensor, cotensor_bicomodule, StandardResolution};

    fn el(label: &str, degree: i32) -> BasisElement {
        BasisElement { label: label.into(), degree }
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

    fn dims(x: &ChainComplex, n: i32) -> Vec<usize> {
        cohomology_dims(x, 0..=n).into_values().collect()
    }

    #[test]
    fn enveloping_cotensor_matches_generic() {
        let f = Field::Rational;
        for c in [divided(f), exterior(f), acyclic(f)] {
            let m = Bicomodule::regular(&c);
            let p = 3;
            let generic = cotensor_bicomodule(&StandardResolution::for_bicomodule(&m, p).unwrap().as_bicomodule().unwrap(), &m).unwrap();
            let fast = cotensor_enveloping_resolution(&m, 1, p).unwrap();
            assert_eq!(dims(&generic, 1), dims(&fast, 1));
        }
    }

    #[test]
    fn enveloping_hom_matches_generic() {
        let f = Field::Rational;
        for c in [divided(f), exterior(f)] {
            let m = Bicomodule::regular(&c);
            let p = 4;
            let res = StandardResolution::for_bicomodule(&m, p).unwrap().as_bicomodule().unwrap();
            let generic = bicolinear_hom(&m, &res).unwrap();
            let fast = hom_enveloping_resolution(&m, 1, p).unwrap();
            assert_eq!(dims(&generic.complex, 1), dims(&fast, 1));
        }
    }

    #[test]
    fn one_sided_routes_match_generic() {
        let f = Field::Rational;
        for c in [divided(f), exterior(f), acyclic(f)] {
            let l = DGComodule::regular(&c, Side::Left);
            let r = DGComodule::regular(&c, Side::Right);
            let p = 4;
            let res = StandardResolution::new(&l, p).unwrap().as_comodule().unwrap();
            assert_eq!(dims(&cotensor(&r, &res).unwrap(), 1), dims(&cotensor_resolution(&r, &l, 1, p).unwrap(), 1));
            let generic = colinear_hom(&l, &res).unwrap();
            assert_eq!(dims(&generic.complex, 0), dims(&hom_resolution(&l, &l, 0, p).unwrap(), 0));
            assert!(matches!(hom_resolution(&l, &l, 5, 2), Err(Error::Window(_))));
        }
    }

    #[test]
    fn hochschild_of_dual_numbers() {
        let f = Field::Rational;
        let d = divided(f);
        let x = cotensor_enveloping_resolution(&Bicomodule::regular(&d), 3, 6).unwrap();
        assert_eq!(dims(&x, 3), vec![2, 1, 1, 1]);
        let e = exterior(f);
        let x = cotensor_enveloping_resolution(&Bicomodule::regular(&e), 3, 6).unwrap();
        assert_eq!(dims(&x, 3), vec![1, 1, 1, 1]);
        let a = acyclic(f);
        let x = cotensor_enveloping_resolution(&Bicomodule::regular(&a), 3, 6).unwrap();
        assert_eq!(dims(&x, 3), vec![1, 0, 0, 0]);
    }
}
