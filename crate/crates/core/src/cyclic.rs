//! The cyclic operators on tensor powers of a dg coalgebra, the Hochschild and
//! cyclic complexes built from them, and the cohomology theories of a
//! coalgebra with coefficients.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::basis::{normalize, GradedBasis, Terms};
use crate::coalgebra::{DGCoalgebra, DIM_CAP};
use crate::comodule::Bicomodule;
use crate::complex::{
    cohomology, cohomology_dims, total_complex, Bicomplex, ChainComplex, CohomologyBasis,
};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, SparseMatrix};
use crate::slices::{cotensor_enveloping_resolution, EnvelopingHom};

/// `C^{⊗n+1}` with the lexicographic basis of `(n+1)`-tuples (first factor
/// slowest).
#[derive(Clone, Debug)]
pub struct TensorPowerSpace {
    dims: Vec<i32>,
    arity: usize,
}

impl TensorPowerSpace {
    pub fn new(c: &DGCoalgebra, arity: usize) -> Self {
        TensorPowerSpace { dims: (0..c.dim()).map(|i| c.degree(i)).collect(), arity }
    }

    /// `n`, the space being `C^{⊗n+1}`.
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.dims.len().pow(self.arity as u32 + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let b = self.dims.len();
        let mut w = vec![0; self.arity + 1];
        for k in (0..=self.arity).rev() {
            w[k] = i % b;
            i /= b;
        }
        w
    }

    pub fn index(&self, w: &[usize]) -> usize {
        w.iter().fold(0, |acc, &c| acc * self.dims.len() + c)
    }

    /// Tensor degree `Σ |c_i|` (without the arity shift).
    pub fn degree(&self, i: usize) -> i32 {
        self.word(i).iter().map(|&c| self.dims[c]).sum()
    }
}

/// The operators acting on tensor powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Operator {
    T,
    Delta(usize),
    B,
    BPrime,
    N,
    D,
}

/// Sparse combination of words.
type WordTerms = Vec<(Vec<usize>, Scalar)>;

fn cyclic_word(c: &DGCoalgebra, w: &[usize]) -> (Vec<usize>, Scalar) {
    let f = c.field();
    let n = w.len() - 1;
    let rest: i64 = w[1..].iter().map(|&x| c.degree(x) as i64).sum();
    let s = f.sign(n as i64 + c.degree(w[0]) as i64 * rest);
    let mut out = w[1..].to_vec();
    out.push(w[0]);
    (out, s)
}

fn delta_at(c: &DGCoalgebra, w: &[usize], i: usize) -> WordTerms {
    c.delta(w[i])
        .iter()
        .map(|(a, b, x)| {
            let mut out = Vec::with_capacity(w.len() + 1);
            out.extend_from_slice(&w[..i]);
            out.push(*a);
            out.push(*b);
            out.extend_from_slice(&w[i + 1..]);
            (out, x.clone())
        })
        .collect()
}

/// Apply an operator to a single word.
fn apply_word(c: &DGCoalgebra, op: Operator, w: &[usize]) -> WordTerms {
    let f = c.field();
    let n = w.len() - 1;
    match op {
        Operator::T => vec![cyclic_word(c, w)],
        Operator::Delta(i) if i <= n => delta_at(c, w, i),
        Operator::Delta(_) => {
            let s = f.sign(n as i64 + 1);
            delta_at(c, w, 0)
                .into_iter()
                .map(|(v, x)| {
                    let (v2, t) = cyclic_word(c, &v);
                    (v2, &(&x * &t) * &s)
                })
                .collect()
        }
        Operator::B | Operator::BPrime => {
            let last = if op == Operator::B { n + 1 } else { n };
            (0..=last)
                .flat_map(|i| {
                    let s = f.sign(i as i64);
                    apply_word(c, Operator::Delta(i), w).into_iter().map(move |(v, x)| (v, &x * &s))
                })
                .collect()
        }
        Operator::N => {
            let mut out = Vec::with_capacity(n + 1);
            let mut cur = (w.to_vec(), f.one());
            for _ in 0..=n {
                out.push(cur.clone());
                let (v, s) = cyclic_word(c, &cur.0);
                cur = (v, &cur.1 * &s);
            }
            out
        }
        Operator::D => {
            let mut out = Vec::new();
            let mut prefix = 0i64;
            for k in 0..=n {
                let s = f.sign(n as i64 + prefix);
                for (t, x) in c.d(w[k]) {
                    let mut v = w.to_vec();
                    v[k] = *t;
                    out.push((v, x * &s));
                }
                prefix += c.degree(w[k]) as i64;
            }
            out
        }
    }
}

/// The matrix of an operator on `C^{⊗n+1}` (into `C^{⊗n+2}` for `Δ_i`, `b`,
/// `b′`), in the lexicographic bases.
pub fn operator(kind: Operator, c: &DGCoalgebra, n: usize) -> Result<SparseMatrix> {
    if let Operator::Delta(i) = kind {
        if i > n + 1 {
            return Err(Error::InvalidArgument(format!("Δ_{i} is undefined on arity {n}")));
        }
    }
    let src = TensorPowerSpace::new(c, n);
    if src.len() > 1 << 16 {
        return Err(Error::TooLarge(format!("C^⊗{} has dimension {}", n + 1, src.len())));
    }
    let raises = matches!(kind, Operator::Delta(_) | Operator::B | Operator::BPrime);
    let tgt = TensorPowerSpace::new(c, if raises { n + 1 } else { n });
    let f = c.field();
    let columns = (0..src.len())
        .map(|j| {
            let mut col: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (v, x) in apply_word(c, kind, &src.word(j)) {
                let e = col.entry(tgt.index(&v)).or_insert_with(|| f.zero());
                *e = &*e + &x;
            }
            col
        })
        .collect();
    Ok(SparseMatrix::from_columns(f, tgt.len(), columns))
}

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub arity: usize,
    pub holds: bool,
}

/// Verify the operator relations on `C^{⊗n+1}` as exact matrix identities.
pub fn check_operator_identities(c: &DGCoalgebra, n: usize) -> Result<Vec<IdentityCheck>> {
    let f = c.field();
    let op = |k, a| operator(k, c, a);
    let id = |a: usize| SparseMatrix::identity(f, TensorPowerSpace::new(c, a).len());
    let (t0, t1) = (op(Operator::T, n)?, op(Operator::T, n + 1)?);
    let (n0, n1) = (op(Operator::N, n)?, op(Operator::N, n + 1)?);
    let (d0, d1) = (op(Operator::D, n)?, op(Operator::D, n + 1)?);
    let (b, bp) = (op(Operator::B, n)?, op(Operator::BPrime, n)?);
    let (u0, u1) = (id(n).sub(&t0), id(n + 1).sub(&t1));

    let mut tp = id(n);
    for _ in 0..=n {
        tp = t0.mul(&tp);
    }
    let mut out = vec![
        ("T^{n+1} = id", tp == id(n)),
        ("N b′ = b N", n1.mul(&bp) == b.mul(&n0)),
        ("(1−T) N = 0", u0.mul(&n0).is_zero()),
        ("N (1−T) = 0", n0.mul(&u0).is_zero()),
        ("(1−T) b = b′ (1−T)", u1.mul(&b) == bp.mul(&u0)),
        ("d T = T d", d0.mul(&t0) == t0.mul(&d0)),
        ("d d = 0", d0.mul(&d0).is_zero()),
        ("b d + d b = 0", b.mul(&d0).add(&d1.mul(&b)).is_zero()),
        ("b′ d + d b′ = 0", bp.mul(&d0).add(&d1.mul(&bp)).is_zero()),
    ]
    .into_iter()
    .map(|(s, holds)| IdentityCheck { identity: s.to_string(), arity: n, holds })
    .collect::<Vec<_>>();
    for i in 1..=n {
        let lhs = t1.mul(&op(Operator::Delta(i), n)?);
        let rhs = op(Operator::Delta(i - 1), n)?.mul(&t0).scale(&f.int(-1));
        out.push(IdentityCheck { identity: format!("T Δ_{i} = −Δ_{} T", i - 1), arity: n, holds: lhs == rhs });
    }
    let lhs = t1.mul(&op(Operator::Delta(0), n)?);
    let rhs = op(Operator::Delta(n + 1), n)?.scale(&f.sign(n as i64 + 1));
    out.push(IdentityCheck { identity: format!("T Δ_0 = (−1)^{} Δ_{}", n + 1, n + 1), arity: n, holds: lhs == rhs });
    Ok(out)
}

const WORD_CAP: usize = 200_000;

/// Words `(c_0, …, c_n)` with `n ≤ max_arity`, graded by `Σ|c_i| + n`; with a
/// degree bound, only words of degree `≤ max_total` are kept.
fn tensor_words(c: &DGCoalgebra, max_arity: usize, max_total: Option<i32>) -> Result<GradedBasis<Vec<usize>>> {
    let mut items = Vec::new();
    for n in 0..=max_arity {
        let words: Vec<(Vec<usize>, i32)> = match max_total {
            Some(t) => crate::slices::bounded_words(c.dim(), &|a| c.degree(a), n + 1, t - n as i32),
            None => {
                let sp = TensorPowerSpace::new(c, n);
                if sp.len() > WORD_CAP {
                    return Err(Error::TooLarge(format!("C^⊗{} has dimension {}", n + 1, sp.len())));
                }
                (0..sp.len()).map(|i| (sp.word(i), sp.degree(i))).collect()
            }
        };
        items.extend(words.into_iter().map(|(w, d)| (w, d + n as i32)));
        if items.len() > WORD_CAP {
            return Err(Error::TooLarge("tensor word basis".into()));
        }
    }
    GradedBasis::new(items)
}

fn word_combination(basis: &GradedBasis<Vec<usize>>, f: Field, terms: WordTerms) -> Terms {
    normalize(f, terms.into_iter().filter_map(|(w, x)| basis.index(&w).map(|i| (i, x))))
}

/// Column complex on the given words with differential `b + d` or `b′ + d`.
fn column(c: &DGCoalgebra, basis: &GradedBasis<Vec<usize>>, b: Operator) -> Result<ChainComplex> {
    let f = c.field();
    basis.complex(f, |i| {
        let w = basis.key(i);
        let mut t = apply_word(c, b, w);
        t.extend(apply_word(c, Operator::D, w));
        word_combination(basis, f, t)
    })
}

/// `𝒞_Hoch(C)` truncated to arities `0..=arity_bound`.
pub fn hochschild_complex(c: &DGCoalgebra, arity_bound: usize) -> Result<ChainComplex> {
    if arity_bound < 1 {
        return Err(Error::InvalidArgument("arity bound must be at least 1".into()));
    }
    column(c, &tensor_words(c, arity_bound, None)?, Operator::B)
}

/// `Ĉ(C)` truncated to arities `0..=arity_bound`.
pub fn acyclic_complex(c: &DGCoalgebra, arity_bound: usize) -> Result<ChainComplex> {
    if arity_bound < 1 {
        return Err(Error::InvalidArgument("arity bound must be at least 1".into()));
    }
    column(c, &tensor_words(c, arity_bound, None)?, Operator::BPrime)
}

fn window_basis(c: &DGCoalgebra, window: i32) -> Result<GradedBasis<Vec<usize>>> {
    c.require_positively_graded()?;
    tensor_words(c, window.max(0) as usize, Some(window))
}

/// `𝒞_Hoch(C)` in total degrees `≤ max_degree + 1`, a quotient complex whose
/// cohomology is exact through `max_degree`.
pub fn hochschild_window(c: &DGCoalgebra, max_degree: i32) -> Result<ChainComplex> {
    column(c, &window_basis(c, max_degree + 1)?, Operator::B)
}

/// [`hochschild_window`] with its word basis.
pub(crate) fn hochschild_window_with_basis(
    c: &DGCoalgebra,
    max_degree: i32,
) -> Result<(ChainComplex, GradedBasis<Vec<usize>>)> {
    let basis = window_basis(c, max_degree + 1)?;
    Ok((column(c, &basis, Operator::B)?, basis))
}

fn check_degree(n: i32) -> Result<()> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("maximal degree {n} is negative")));
    }
    Ok(())
}

/// `dim Hoch^n(C)` for `0 ≤ n ≤ max_degree`.
pub fn hoch(c: &DGCoalgebra, max_degree: i32) -> Result<BTreeMap<i32, usize>> {
    check_degree(max_degree)?;
    Ok(cohomology_dims(&hochschild_window(c, max_degree)?, 0..=max_degree))
}

fn bicomodule_bounds(m: &Bicomodule) -> (i32, i32) {
    let degs = (0..m.dim()).map(|i| m.degree(i));
    (degs.clone().min().unwrap_or(0), degs.max().unwrap_or(0))
}

/// Levels that make `C_p(C) □_{C^e} M` exact through `max_degree`.
pub fn cotensor_levels(m: &Bicomodule, max_degree: i32) -> usize {
    (max_degree + 2 - bicomodule_bounds(m).0).max(1) as usize
}

/// Levels that make `𝓗om_{C^e}(M, C_p(C))` exact through `max_degree`.
pub fn hom_levels(m: &Bicomodule, max_degree: i32) -> usize {
    (max_degree + 2 + bicomodule_bounds(m).1).max(1) as usize
}

/// `dim Hoch^n(M, C) = dim H^n(C_p(C) □_{C^e} M)`.
pub fn hoch_bicomodule(m: &Bicomodule, max_degree: i32, levels: Option<usize>) -> Result<BTreeMap<i32, usize>> {
    check_degree(max_degree)?;
    let p = levels.unwrap_or_else(|| cotensor_levels(m, max_degree));
    let x = cotensor_enveloping_resolution(m, max_degree, p)?;
    Ok(cohomology_dims(&x, 0..=max_degree))
}

/// `dim H^n(M, C) = dim H^n 𝓗om_{C^e}(M, C_p(C))`.
pub fn h_cohomology(m: &Bicomodule, max_degree: i32, levels: Option<usize>) -> Result<BTreeMap<i32, usize>> {
    check_degree(max_degree)?;
    let p = levels.unwrap_or_else(|| hom_levels(m, max_degree));
    let x = EnvelopingHom::new(m, max_degree, p)?;
    Ok(cohomology_dims(&x.complex, 0..=max_degree))
}

/// The bicomplex `𝒞**(C)` on columns `0..columns`, every column cut to vertical
/// degrees `≤ window`: even columns `(⊕ C^{⊗n+1}, b + d)`, odd columns
/// `(⊕ C^{⊗n+1}, b′ + d)`, joined by `1 − T` and `N`.
pub fn cyclic_bicomplex(c: &DGCoalgebra, columns: usize, window: i32) -> Result<Bicomplex> {
    if columns == 0 {
        return Err(Error::InvalidArgument("the cyclic bicomplex needs a column".into()));
    }
    let f = c.field();
    let basis = window_basis(c, window)?;
    let hoch = column(c, &basis, Operator::B)?;
    let acyc = column(c, &basis, Operator::BPrime)?;
    let one_minus_t = basis.map_blocks(f, &basis, 0, |i| {
        let w = basis.key(i);
        let (v, s) = cyclic_word(c, w);
        word_combination(&basis, f, vec![(w.clone(), f.one()), (v, -s)])
    })?;
    let norm = basis.map_blocks(f, &basis, 0, |i| word_combination(&basis, f, apply_word(c, Operator::N, basis.key(i))))?;
    let b = Bicomplex {
        columns: (0..columns).map(|j| if j % 2 == 0 { hoch.clone() } else { acyc.clone() }).collect(),
        horizontal: (0..columns - 1).map(|j| if j % 2 == 0 { one_minus_t.clone() } else { norm.clone() }).collect(),
        anticommute: false,
    };
    b.validate()?;
    Ok(b)
}

/// `dim HC^n(C)` for `0 ≤ n ≤ max_degree`. Columns `j ≥ max_degree + 2` and
/// vertical degrees `> max_degree + 1` span subcomplexes in total degrees
/// `≥ max_degree + 2`, so `max_degree + 2` columns are exact.
pub fn hc(c: &DGCoalgebra, max_degree: i32, columns: Option<usize>) -> Result<BTreeMap<i32, usize>> {
    check_degree(max_degree)?;
    let need = max_degree as usize + 2;
    let j = columns.unwrap_or(need);
    if j < need {
        return Err(Error::Window(format!("HC through degree {max_degree} needs {need} columns, got {j}")));
    }
    let b = cyclic_bicomplex(c, j, max_degree + 1)?;
    let tot = total_complex(&b, j - 1)?;
    Ok(cohomology_dims(&tot, 0..=max_degree))
}

/// One node of the long exact sequence with the ranks of its two maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SbiNode {
    pub group: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SbiReport {
    pub max_degree: i32,
    pub nodes: Vec<SbiNode>,
    /// `H(Co(1−T)[1])` agrees with `Hoch` through `max_degree`.
    pub quotient_matches_hoch: bool,
    pub exact: bool,
}

/// The maps `S : HC^{n−2} → HC^n`, `I : HC^n → Hoch^n`, `B : Hoch^n → HC^{n−1}`
/// on cohomology bases, keyed by `n`.
#[derive(Clone, Debug)]
pub struct SbiSequence {
    pub s: BTreeMap<i32, Matrix>,
    pub i: BTreeMap<i32, Matrix>,
    pub b: BTreeMap<i32, Matrix>,
    pub report: SbiReport,
}

fn induced(
    field: Field,
    source: &CohomologyBasis,
    target: &CohomologyBasis,
    map: impl Fn(Vec<Scalar>) -> Vec<Scalar>,
) -> Result<Matrix> {
    let cols: Vec<Vec<Scalar>> = (0..source.dim)
        .map(|k| {
            let v = map(source.reps.column(k));
            target.class_of(&v).ok_or_else(|| Error::InvalidStructure("image of a cocycle is not a cocycle".into()))
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(field, target.dim, &cols))
}

/// The SBI sequence through degree `max_degree`, from the short exact sequence
/// `0 → 𝒞**[−2] → 𝒞** → Co(1−T)[1] → 0` of truncated bicomplexes.
pub fn sbi(c: &DGCoalgebra, max_degree: i32) -> Result<SbiSequence> {
    check_degree(max_degree)?;
    let f = c.field();
    let top = max_degree + 1;
    let cols = (top + 2) as usize;
    let b = cyclic_bicomplex(c, cols, top + 1)?;
    let x = total_complex(&b, cols - 1)?;
    let sub_b = Bicomplex { columns: b.columns[2..].to_vec(), horizontal: b.horizontal[2..].to_vec(), anticommute: false };
    let quot_b = Bicomplex { columns: b.columns[..2].to_vec(), horizontal: b.horizontal[..1].to_vec(), anticommute: false };
    let sub = total_complex(&sub_b, sub_b.columns.len() - 1)?;
    let quot = total_complex(&quot_b, 1)?;

    let hx = cohomology(&x, 0..=top);
    let hq = cohomology(&quot, 0..=top);
    let hs = cohomology(&sub, -2..=top - 2);
    let head = |t: i32| quot.dim(t);

    let (mut s_maps, mut i_maps, mut b_maps) = (BTreeMap::new(), BTreeMap::new(), BTreeMap::new());
    for t in 0..=top {
        let s = induced(f, &hs[&(t - 2)], &hx[&t], |v| {
            let mut out = vec![f.zero(); head(t)];
            out.extend(v);
            out
        })?;
        s_maps.insert(t, s);
        let i = induced(f, &hx[&t], &hq[&t], |mut v| {
            v.truncate(head(t));
            v
        })?;
        i_maps.insert(t, i);
        if t < top {
            let dt = x.d(t);
            let bmap = induced(f, &hq[&t], &hs[&(t - 1)], |mut v| {
                v.resize(x.dim(t), f.zero());
                let w = dt.mul_vec(&v);
                w[head(t + 1)..].to_vec()
            })?;
            b_maps.insert(t, bmap);
        }
    }

    let rank = |m: Option<&Matrix>| m.map_or(0, Matrix::rank);
    let node = |group: String, dim: usize, inc: Option<&Matrix>, out: Option<&Matrix>| {
        let (ri, ro) = (rank(inc), rank(out));
        let composes = match (inc, out) {
            (Some(a), Some(b)) => b.mul(a).is_zero(),
            _ => true,
        };
        SbiNode { group, dim, rank_in: ri, rank_out: ro, exact: composes && ri + ro == dim }
    };
    let mut nodes = Vec::new();
    for t in 0..=max_degree {
        nodes.push(node(format!("HC^{t}"), hx[&t].dim, s_maps.get(&t), i_maps.get(&t)));
        nodes.push(node(format!("Hoch^{t}"), hq[&t].dim, i_maps.get(&t), b_maps.get(&t)));
        nodes.push(node(format!("HC^{}", t - 1), hs[&(t - 1)].dim, b_maps.get(&t), s_maps.get(&(t + 1))));
    }
    let hoch_dims = hoch(c, max_degree)?;
    let quotient_matches_hoch = (0..=max_degree).all(|t| hq[&t].dim == hoch_dims[&t]);
    let exact = nodes.iter().all(|n| n.exact);
    Ok(SbiSequence {
        s: s_maps,
        i: i_maps,
        b: b_maps,
        report: SbiReport { max_degree, nodes, quotient_matches_hoch, exact },
    })
}

/// A class in `H^n(C)`, in coordinates of the chosen cohomology basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HClass {
    pub degree: i32,
    pub coords: Vec<Scalar>,
}

/// `H^*(M, C)` through `max_degree`, keeping representatives so that classes
/// can be multiplied.
#[derive(Clone, Debug)]
pub struct HochschildCohomology {
    hom: EnvelopingHom,
    classes: BTreeMap<i32, CohomologyBasis>,
    max_degree: i32,
}

impl HochschildCohomology {
    /// `H^*(C) = H^*(C, C)`.
    pub fn new(c: &DGCoalgebra, max_degree: i32) -> Result<Self> {
        Self::with_coefficients(&Bicomodule::regular(c), max_degree, None)
    }

    pub fn with_coefficients(m: &Bicomodule, max_degree: i32, levels: Option<usize>) -> Result<Self> {
        check_degree(max_degree)?;
        let p = levels.unwrap_or_else(|| hom_levels(m, max_degree));
        let hom = EnvelopingHom::new(m, max_degree, p)?;
        let classes = cohomology(&hom.complex, 0..=max_degree);
        Ok(HochschildCohomology { hom, classes, max_degree })
    }

    pub fn max_degree(&self) -> i32 {
        self.max_degree
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.classes.iter().map(|(&n, b)| (n, b.dim)).collect()
    }

    pub fn dim(&self, n: i32) -> usize {
        self.classes.get(&n).map_or(0, |b| b.dim)
    }

    fn field(&self) -> Field {
        self.hom.coefficients().field()
    }

    /// The `k`-th basis class of `H^n`.
    pub fn basis_class(&self, n: i32, k: usize) -> HClass {
        let f = self.field();
        let coords = (0..self.dim(n)).map(|i| if i == k { f.one() } else { f.zero() }).collect();
        HClass { degree: n, coords }
    }

    pub fn zero(&self, n: i32) -> HClass {
        HClass { degree: n, coords: vec![self.field().zero(); self.dim(n)] }
    }

    /// A cocycle representing `a`.
    pub fn representative(&self, a: &HClass) -> Vec<Scalar> {
        self.classes[&a.degree].reps.mul_vec(&a.coords)
    }

    pub fn class_of(&self, n: i32, v: &[Scalar]) -> Option<HClass> {
        self.classes.get(&n)?.class_of(v).map(|coords| HClass { degree: n, coords })
    }

    /// The class of the augmentation `C → C_p(C)`; the unit of the product.
    pub fn unit(&self) -> Result<HClass> {
        let m = self.hom.coefficients();
        let c = m.left_over();
        if *m != Bicomodule::regular(c) {
            return Err(Error::InvalidArgument("the unit exists for coefficients in C".into()));
        }
        let f = c.field();
        let basis = self.hom.basis();
        let mut v = vec![f.zero(); basis.dim(0)];
        for x in 0..c.dim() {
            if let Some(i) = basis.index(&(vec![], x)) {
                if basis.degree(i) == 0 {
                    v[basis.position(i)] = c.eps(x) * &f.sign(c.degree(x) as i64);
                }
            }
        }
        self.class_of(0, &v).ok_or_else(|| Error::InvalidStructure("augmentation is not a cocycle".into()))
    }
}

/// The Yoneda product `α · β`: `α` is lifted to a bicolinear cocycle
/// `F : C_p(C) → C_p(C)[|α|]` with `F ∘ aug ≃ α`, and the result is the class
/// of `F ∘ β`.
pub fn yoneda_product(h: &HochschildCohomology, alpha: &HClass, beta: &HClass) -> Result<HClass> {
    let m = h.hom.coefficients();
    let c = m.left_over();
    if *m != Bicomodule::regular(c) {
        return Err(Error::InvalidArgument("the product is defined on H^*(C, C)".into()));
    }
    let (p, q) = (alpha.degree, beta.degree);
    if p < 0 || q < 0 || p + q > h.max_degree {
        return Err(Error::Window(format!("product lands in degree {} beyond {}", p + q, h.max_degree)));
    }
    let f = c.field();
    let levels = h.hom.levels();
    let res = crate::resolution::StandardResolution::for_bicomodule(m, levels)?;
    let big = res.as_bicomodule()?;
    if big.dim() > DIM_CAP * DIM_CAP {
        return Err(Error::TooLarge("resolution used for the product".into()));
    }
    let em = EnvelopingHom::build(&big, Some(p), p, levels)?;

    // aug : C → C_p(C), c ↦ (−1)^{|c|} Δ(c)
    let mut aug = Matrix::zeros(f, big.dim(), c.dim());
    for x in 0..c.dim() {
        let s = f.sign(c.degree(x) as i64);
        for (a, b, e) in c.delta(x) {
            let i = res.basis().index(&vec![*a, *b]).expect("level one word");
            aug.add_to(i, x, &(e * &s));
        }
    }
    let r = em.restriction(&h.hom, &aug, p);
    let d_em = em.complex.d(p);
    let d_h = h.hom.complex.d(p - 1);
    let (ne, nh) = (d_em.cols(), d_h.cols());
    let mut sys = Matrix::zeros(f, d_em.rows() + r.rows(), ne + nh);
    sys.paste(0, 0, &d_em);
    sys.paste(d_em.rows(), 0, &r);
    sys.paste(d_em.rows(), ne, &d_h.neg());
    let mut rhs = vec![f.zero(); d_em.rows()];
    rhs.extend(h.representative(alpha));
    let sol = sys
        .solve(&rhs)?
        .ok_or_else(|| Error::Window(format!("no lift of a degree-{p} class to C_{levels}(C)")))?;

    // β as an actual map C → C_p(C)
    let bmap = h.hom.reconstruct(q, &h.representative(beta))?;
    let hb = h.hom.basis();
    let mut out = vec![f.zero(); hb.dim(p + q)];
    for (&i, fi) in em.basis().in_degree(p).iter().zip(&sol[..ne]) {
        if fi.is_zero() {
            continue;
        }
        let (v, xw) = em.basis().key(i);
        for (src, terms) in bmap.iter().enumerate() {
            for (w, e) in terms {
                if res.basis().index(w) != Some(*xw) {
                    continue;
                }
                if let Some(t) = hb.index(&(v.clone(), src)) {
                    let k = hb.position(t);
                    out[k] = &out[k] + &(e * fi);
                }
            }
        }
    }
    h.class_of(p + q, &out).ok_or_else(|| Error::InvalidStructure("product is not a cocycle".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn vec_of(m: &BTreeMap<i32, usize>) -> Vec<usize> {
        m.values().copied().collect()
    }

    #[test]
    fn cyclic_operator_on_two_factors() {
        let f = Field::Rational;
        let c = group_likes(f, 2);
        let t = operator(Operator::T, &c, 1).unwrap().to_dense();
        let sp = TensorPowerSpace::new(&c, 1);
        let src = sp.index(&[0, 1]);
        assert_eq!(t.get(sp.index(&[1, 0]), src), &f.int(-1));
        assert!(matches!(operator(Operator::Delta(3), &c, 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn operator_relations_hold() {
        for f in [Field::Rational, Field::Prime(5)] {
            for c in [divided_powers(f, 2), exterior(f), acyclic_extension(f), matrix_coalgebra(f, 2)] {
                for n in 0..3 {
                    for chk in check_operator_identities(&c, n).unwrap() {
                        assert!(chk.holds, "{} fails at arity {n} on {:?}", chk.identity, c.basis());
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_coalgebra_complexes() {
        let f = Field::Rational;
        let k = trivial(f);
        let x = hochschild_complex(&k, 4).unwrap();
        assert!((0..=4).all(|n| x.dim(n) == 1));
        // b alternates between 0 and an isomorphism
        assert!(x.d(0).is_zero() && x.d(1).rank() == 1 && x.d(2).is_zero());
        assert_eq!(vec_of(&hoch(&k, 4).unwrap()), vec![1, 0, 0, 0, 0]);
        assert_eq!(vec_of(&hc(&k, 4, None).unwrap()), vec![1, 0, 1, 0, 1]);
        assert!(matches!(hc(&k, 4, Some(3)), Err(Error::Window(_))));
    }

    #[test]
    fn acyclic_column_is_acyclic() {
        let f = Field::Rational;
        for c in [exterior(f), divided_powers(f, 2)] {
            let x = acyclic_complex(&c, 4).unwrap();
            assert!(cohomology_dims(&x, 0..=3).values().all(|&d| d == 0));
        }
    }

    #[test]
    fn coseparable_and_two_routes() {
        let f = Field::Rational;
        for n in 1..=3 {
            assert_eq!(vec_of(&hoch(&group_likes(f, n), 3).unwrap()), vec![n, 0, 0, 0]);
        }
        for c in [divided_powers(f, 2), exterior(f), acyclic_extension(f), group_likes(f, 2)] {
            let a = hoch(&c, 3).unwrap();
            let b = hoch_bicomodule(&Bicomodule::regular(&c), 3, None).unwrap();
            assert_eq!(a, b, "{:?}", c.basis());
        }
    }

    #[test]
    fn h_of_trivial_and_cofree() {
        let f = Field::Rational;
        let k = trivial(f);
        assert_eq!(vec_of(&h_cohomology(&Bicomodule::regular(&k), 2, None).unwrap()), vec![1, 0, 0]);
        let c = divided_powers(f, 2);
        let ce = Bicomodule::cofree_enveloping(&c).unwrap();
        let dims = hoch_bicomodule(&ce, 2, None).unwrap();
        assert_eq!(vec_of(&dims), vec![c.dim(), 0, 0]);
    }

    #[test]
    fn sbi_is_exact() {
        let f = Field::Rational;
        for c in [trivial(f), divided_powers(f, 2), group_likes(f, 2)] {
            let s = sbi(&c, 3).unwrap();
            assert!(s.report.exact, "{:?}", s.report);
            assert!(s.report.quotient_matches_hoch);
        }
    }

    #[test]
    fn yoneda_unit_and_commutativity() {
        let f = Field::Rational;
        for c in [divided_powers(f, 2), exterior(f)] {
            let h = HochschildCohomology::new(&c, 2).unwrap();
            let one = h.unit().unwrap();
            for n in 0..=1 {
                for k in 0..h.dim(n) {
                    let a = h.basis_class(n, k);
                    assert_eq!(yoneda_product(&h, &one, &a).unwrap(), a);
                    assert_eq!(yoneda_product(&h, &a, &one).unwrap(), a);
                }
            }
            for k in 0..h.dim(1) {
                for l in 0..h.dim(1) {
                    let (a, b) = (h.basis_class(1, k), h.basis_class(1, l));
                    let ab = yoneda_product(&h, &a, &b).unwrap();
                    let ba = yoneda_product(&h, &b, &a).unwrap();
                    let neg: Vec<Scalar> = ba.coords.iter().map(|x| -x).collect();
                    assert_eq!(ab.coords, neg);
                }
            }
        }
    }

    /// Write `a·a = α + β a` in `H^0`; the algebra is `k[x]/x²` iff `β² + 4α = 0`.
    fn discriminant(c: &DGCoalgebra) -> Scalar {
        let f = c.field();
        let h = HochschildCohomology::new(c, 1).unwrap();
        assert_eq!(h.dim(0), 2);
        let one = h.unit().unwrap();
        let a = (0..2).map(|k| h.basis_class(0, k)).find(|b| {
            let m = Matrix::from_columns(f, 2, &[one.coords.clone(), b.coords.clone()]);
            m.rank() == 2
        });
        let a = a.unwrap();
        let aa = yoneda_product(&h, &a, &a).unwrap();
        let m = Matrix::from_columns(f, 2, &[one.coords.clone(), a.coords.clone()]);
        let x = m.solve(&aa.coords).unwrap().unwrap();
        &(&x[1] * &x[1]) + &(&f.int(4) * &x[0])
    }

    #[test]
    fn degree_zero_products() {
        let f = Field::Rational;
        assert!(discriminant(&divided_powers(f, 2)).is_zero());
        assert!(!discriminant(&group_likes(f, 2)).is_zero());
    }
}
