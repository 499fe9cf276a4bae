//! Differential graded comodules, bicomodules and colinear maps.
//!
//! Coaction terms are stored uniformly as `(coalgebra index, module index,
//! coefficient)`; for a right comodule the term `(c, m, x)` means `x · m ⊗ c`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::basis::{normalize, GradedBasis, Terms};
use crate::coalgebra::{normalize2, BasisElement, CoalgebraMorphism, DGCoalgebra, Terms2, Validation};
use crate::complex::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

fn check_module_basis(over: &DGCoalgebra, basis: &[BasisElement], coaction: &[Terms2], diff: &[Terms]) -> Result<()> {
    let n = basis.len();
    if coaction.len() != n || diff.len() != n {
        return Err(Error::DimensionMismatch("comodule structure constants do not match the basis".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for b in basis {
        if !seen.insert(b.label.as_str()) {
            return Err(Error::InvalidStructure(format!("duplicate basis label `{}`", b.label)));
        }
    }
    if coaction.iter().flatten().any(|(c, m, _)| *c >= over.dim() || *m >= n) || diff.iter().flatten().any(|(m, _)| *m >= n)
    {
        return Err(Error::DimensionMismatch("comodule structure index out of range".into()));
    }
    let f = over.field();
    if coaction.iter().flatten().any(|t| t.2.field() != f) || diff.iter().flatten().any(|t| t.1.field() != f) {
        return Err(Error::FieldMismatch("comodule constant from another field".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGComodule {
    side: Side,
    over: DGCoalgebra,
    basis: Vec<BasisElement>,
    coaction: Vec<Terms2>,
    diff: Vec<Terms>,
}

impl DGComodule {
    pub fn new(
        side: Side,
        over: DGCoalgebra,
        basis: Vec<BasisElement>,
        coaction: Vec<Terms2>,
        diff: Vec<Terms>,
    ) -> Result<Self> {
        check_module_basis(&over, &basis, &coaction, &diff)?;
        let f = over.field();
        let coaction = coaction.into_iter().map(|t| normalize2(f, t)).collect();
        let diff = diff.into_iter().map(|t| normalize(f, t)).collect();
        Ok(DGComodule { side, over, basis, coaction, diff })
    }

    /// `C` over itself via `Δ`.
    pub fn regular(c: &DGCoalgebra, side: Side) -> DGComodule {
        let coaction = (0..c.dim())
            .map(|i| match side {
                Side::Left => c.delta(i).clone(),
                Side::Right => normalize2(c.field(), c.delta(i).iter().map(|(a, b, x)| (*b, *a, x.clone()))),
            })
            .collect();
        let diff = (0..c.dim()).map(|i| c.d(i).clone()).collect();
        DGComodule { side, over: c.clone(), basis: c.basis().to_vec(), coaction, diff }
    }

    /// The zero comodule.
    pub fn zero(c: &DGCoalgebra, side: Side) -> DGComodule {
        DGComodule { side, over: c.clone(), basis: vec![], coaction: vec![], diff: vec![] }
    }

    pub fn side(&self) -> Side {
        self.side
    }
    pub fn over(&self) -> &DGCoalgebra {
        &self.over
    }
    pub fn field(&self) -> Field {
        self.over.field()
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
    pub fn rho(&self, i: usize) -> &Terms2 {
        &self.coaction[i]
    }
    pub fn d(&self, i: usize) -> &Terms {
        &self.diff[i]
    }

    pub fn is_concentrated(&self) -> bool {
        self.basis.iter().all(|b| b.degree == 0) && self.diff.iter().all(Vec::is_empty)
    }

    pub fn graded_basis(&self) -> GradedBasis<String> {
        GradedBasis::new(self.basis.iter().map(|b| (b.label.clone(), b.degree)).collect()).expect("labels are distinct")
    }

    pub fn as_complex(&self) -> Result<ChainComplex> {
        self.graded_basis().complex(self.field(), |i| self.diff[i].clone())
    }

    pub fn validate(&self) -> Validation {
        let (c, f) = (&self.over, self.field());
        let mut v = Validation::default();
        for i in 0..self.dim() {
            let lab = self.label(i).to_string();
            if self.coaction[i].iter().any(|(a, m, _)| c.degree(*a) + self.degree(*m) != self.degree(i)) {
                v.fail("ρ preserves degree", &lab);
            }
            if self.diff[i].iter().any(|(m, _)| self.degree(*m) != self.degree(i) + 1) {
                v.fail("d raises degree by one", &lab);
            }
            // Triples are (outer-left, middle, outer-right) in the written order.
            let (lhs, rhs) = match self.side {
                Side::Left => (
                    // (Δ⊗1)ρ vs (1⊗ρ)ρ, keys (c1, c2, m)
                    normalize3(f, self.coaction[i].iter().flat_map(|(a, m, x)| {
                        c.delta(*a).iter().map(move |(a1, a2, y)| ((*a1, *a2, *m), x * y))
                    })),
                    normalize3(f, self.coaction[i].iter().flat_map(|(a, m, x)| {
                        self.coaction[*m].iter().map(move |(b, m2, y)| ((*a, *b, *m2), x * y))
                    })),
                ),
                Side::Right => (
                    // (ρ⊗1)ρ vs (1⊗Δ)ρ, keys (m, c1, c2)
                    normalize3(f, self.coaction[i].iter().flat_map(|(a, m, x)| {
                        self.coaction[*m].iter().map(move |(b, m2, y)| ((*m2, *b, *a), x * y))
                    })),
                    normalize3(f, self.coaction[i].iter().flat_map(|(a, m, x)| {
                        c.delta(*a).iter().map(move |(a1, a2, y)| ((*m, *a1, *a2), x * y))
                    })),
                ),
            };
            if lhs != rhs {
                v.fail("coaction coassociativity", &lab);
            }
            let counit = normalize(f, self.coaction[i].iter().map(|(a, m, x)| (*m, c.eps(*a) * x)));
            if counit != vec![(i, f.one())] {
                v.fail("coaction counit law", &lab);
            }
            let dd = normalize(f, self.diff[i].iter().flat_map(|(a, x)| self.diff[*a].iter().map(move |(b, y)| (*b, x * y))));
            if !dd.is_empty() {
                v.fail("d∘d = 0", &lab);
            }
            // ρ∘d = d_{C⊗M}∘ρ as pairs (c, m)
            let lhs = normalize2(f, self.diff[i].iter().flat_map(|(m, x)| self.coaction[*m].iter().map(move |(a, m2, y)| (*a, *m2, x * y))));
            let rhs = normalize2(
                f,
                self.coaction[i].iter().flat_map(|(a, m, x)| {
                    let sc = match self.side {
                        Side::Left => f.sign(c.degree(*a) as i64),
                        Side::Right => f.one(),
                    };
                    let sm = match self.side {
                        Side::Left => f.one(),
                        Side::Right => f.sign(self.degree(*m) as i64),
                    };
                    let from_c = c.d(*a).iter().map({
                        let (x, sm) = (x.clone(), sm.clone());
                        move |(a2, y)| (*a2, *m, &(&x * y) * &sm)
                    });
                    let from_m = self.diff[*m].iter().map({
                        let x = x.clone();
                        move |(m2, y)| (*a, *m2, &(&x * y) * &sc)
                    });
                    from_c.chain(from_m).collect::<Vec<_>>()
                }),
            );
            if lhs != rhs {
                v.fail("ρ∘d = d∘ρ", &lab);
            }
        }
        v
    }

    /// Corestriction along `f : C → D` (the coaction followed by `f` on the
    /// coalgebra leg).
    pub fn corestrict(&self, f: &CoalgebraMorphism) -> Result<DGComodule> {
        if f.source != self.over {
            return Err(Error::CoalgebraMismatch("corestriction along a map from another coalgebra".into()));
        }
        let field = self.field();
        let coaction = self
            .coaction
            .iter()
            .map(|t| {
                normalize2(field, t.iter().flat_map(|(a, m, x)| f.apply(*a).into_iter().map(move |(b, y)| (b, *m, x * &y))))
            })
            .collect();
        Ok(DGComodule { over: f.target.clone(), coaction, ..self.clone() })
    }
}

fn normalize3(f: Field, it: impl IntoIterator<Item = ((usize, usize, usize), Scalar)>) -> BTreeMap<(usize, usize, usize), Scalar> {
    let mut acc: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    for (k, x) in it {
        let e = acc.entry(k).or_insert_with(|| f.zero());
        *e = &*e + &x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Basis labels for a complex without its own labels.
fn complex_labels(v: &ChainComplex) -> Vec<(String, i32)> {
    let mut out = Vec::new();
    for (&n, &d) in v.space().dims() {
        match v.space().labels(n) {
            Some(ls) => out.extend(ls.iter().map(|l| (l.clone(), n))),
            None => out.extend((0..d).map(|i| (format!("v{n}_{i}"), n))),
        }
    }
    out
}

/// The cofree left comodule `C ⊗ V` with coaction `Δ ⊗ id` and the Koszul
/// differential. The basis of `V` runs over degrees in increasing order.
pub fn cofree(c: &DGCoalgebra, v: &ChainComplex) -> Result<DGComodule> {
    if c.field() != v.field() {
        return Err(Error::FieldMismatch("cofree comodule over mixed fields".into()));
    }
    let f = c.field();
    let vb = complex_labels(v);
    let m = vb.len();
    // global index of V's basis element inside its degree block
    let mut offsets = BTreeMap::new();
    let mut off = 0;
    for (&n, &d) in v.space().dims() {
        offsets.insert(n, off);
        off += d;
    }
    let vd: Vec<Terms> = (0..m)
        .map(|j| {
            let n = vb[j].1;
            let p = j - offsets[&n];
            let d = v.d(n);
            (0..d.rows()).filter(|&r| !d.get(r, p).is_zero()).map(|r| (offsets[&(n + 1)] + r, d.get(r, p).clone())).collect()
        })
        .collect();
    let mut basis = Vec::new();
    let mut coaction = Vec::new();
    let mut diff = Vec::new();
    for a in 0..c.dim() {
        for (j, (lab, n)) in vb.iter().enumerate() {
            basis.push(BasisElement { label: format!("{}⊗{}", c.label(a), lab), degree: c.degree(a) + n });
            coaction.push(c.delta(a).iter().map(|(a1, a2, x)| (*a1, a2 * m + j, x.clone())).collect());
            let s = f.sign(c.degree(a) as i64);
            let mut d: Terms = c.d(a).iter().map(|(t, x)| (t * m + j, x.clone())).collect();
            d.extend(vd[j].iter().map(|(t, x)| (a * m + t, &s * x)));
            diff.push(d);
        }
    }
    DGComodule::new(Side::Left, c.clone(), basis, coaction, diff)
}

/// A comodule over `D` on the left and `C` on the right with commuting
/// coactions. Left terms `(d, m, x)` mean `x · d ⊗ m`; right terms `(c, m, x)`
/// mean `x · m ⊗ c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicomodule {
    left_over: DGCoalgebra,
    right_over: DGCoalgebra,
    basis: Vec<BasisElement>,
    left: Vec<Terms2>,
    right: Vec<Terms2>,
    diff: Vec<Terms>,
}

impl Bicomodule {
    pub fn new(
        left_over: DGCoalgebra,
        right_over: DGCoalgebra,
        basis: Vec<BasisElement>,
        left: Vec<Terms2>,
        right: Vec<Terms2>,
        diff: Vec<Terms>,
    ) -> Result<Self> {
        if left_over.field() != right_over.field() {
            return Err(Error::FieldMismatch("bicomodule over mixed fields".into()));
        }
        check_module_basis(&left_over, &basis, &left, &diff)?;
        check_module_basis(&right_over, &basis, &right, &diff)?;
        let f = left_over.field();
        let left = left.into_iter().map(|t| normalize2(f, t)).collect();
        let right = right.into_iter().map(|t| normalize2(f, t)).collect();
        let diff = diff.into_iter().map(|t| normalize(f, t)).collect();
        Ok(Bicomodule { left_over, right_over, basis, left, right, diff })
    }

    /// `C` as a bicomodule over itself.
    pub fn regular(c: &DGCoalgebra) -> Bicomodule {
        Self::from_sides(&DGComodule::regular(c, Side::Left), &DGComodule::regular(c, Side::Right))
    }

    /// The cofree bicomodule `C ⊗ C` (left coaction on the first factor, right
    /// on the second); as a comodule over `C^e` it is cofree on one generator.
    pub fn cofree_enveloping(c: &DGCoalgebra) -> Result<Bicomodule> {
        let n = c.dim();
        let mut basis = Vec::new();
        let (mut left, mut right, mut diff) = (Vec::new(), Vec::new(), Vec::new());
        let f = c.field();
        for a in 0..n {
            for b in 0..n {
                basis.push(BasisElement {
                    label: format!("{}⊗{}", c.label(a), c.label(b)),
                    degree: c.degree(a) + c.degree(b),
                });
                left.push(c.delta(a).iter().map(|(a1, a2, x)| (*a1, a2 * n + b, x.clone())).collect());
                right.push(c.delta(b).iter().map(|(b1, b2, x)| (*b2, a * n + b1, x.clone())).collect());
                let s = f.sign(c.degree(a) as i64);
                let mut d: Terms = c.d(a).iter().map(|(t, x)| (t * n + b, x.clone())).collect();
                d.extend(c.d(b).iter().map(|(t, x)| (a * n + t, &s * x)));
                diff.push(d);
            }
        }
        Bicomodule::new(c.clone(), c.clone(), basis, left, right, diff)
    }

    /// Zero bicomodule.
    pub fn zero(d: &DGCoalgebra, c: &DGCoalgebra) -> Bicomodule {
        Bicomodule {
            left_over: d.clone(),
            right_over: c.clone(),
            basis: vec![],
            left: vec![],
            right: vec![],
            diff: vec![],
        }
    }

    /// Combine a left and a right comodule with the same underlying complex.
    pub fn from_sides(l: &DGComodule, r: &DGComodule) -> Bicomodule {
        assert_eq!(l.basis, r.basis);
        Bicomodule {
            left_over: l.over.clone(),
            right_over: r.over.clone(),
            basis: l.basis.clone(),
            left: l.coaction.clone(),
            right: r.coaction.clone(),
            diff: l.diff.clone(),
        }
    }

    pub fn left_over(&self) -> &DGCoalgebra {
        &self.left_over
    }
    pub fn right_over(&self) -> &DGCoalgebra {
        &self.right_over
    }
    pub fn field(&self) -> Field {
        self.left_over.field()
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }
    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }
    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }
    pub fn rho_left(&self, i: usize) -> &Terms2 {
        &self.left[i]
    }
    pub fn rho_right(&self, i: usize) -> &Terms2 {
        &self.right[i]
    }
    pub fn d(&self, i: usize) -> &Terms {
        &self.diff[i]
    }

    pub fn is_concentrated(&self) -> bool {
        self.basis.iter().all(|b| b.degree == 0) && self.diff.iter().all(Vec::is_empty)
    }

    pub fn left_comodule(&self) -> DGComodule {
        DGComodule {
            side: Side::Left,
            over: self.left_over.clone(),
            basis: self.basis.clone(),
            coaction: self.left.clone(),
            diff: self.diff.clone(),
        }
    }

    pub fn right_comodule(&self) -> DGComodule {
        DGComodule {
            side: Side::Right,
            over: self.right_over.clone(),
            basis: self.basis.clone(),
            coaction: self.right.clone(),
            diff: self.diff.clone(),
        }
    }

    pub fn as_complex(&self) -> Result<ChainComplex> {
        self.left_comodule().as_complex()
    }

    pub fn validate(&self) -> Validation {
        let mut v = self.left_comodule().validate();
        v.failures.extend(self.right_comodule().validate().failures);
        let f = self.field();
        for i in 0..self.dim() {
            // (1⊗ρ_R)ρ_L vs (ρ_L⊗1)ρ_R as (d, m, c)
            let lr = normalize3(f, self.left[i].iter().flat_map(|(d, m, x)| {
                self.right[*m].iter().map(move |(c, m2, y)| ((*d, *m2, *c), x * y))
            }));
            let rl = normalize3(f, self.right[i].iter().flat_map(|(c, m, x)| {
                self.left[*m].iter().map(move |(d, m2, y)| ((*d, *m2, *c), x * y))
            }));
            if lr != rl {
                v.fail("left and right coactions commute", self.label(i));
            }
        }
        v
    }

    /// Left comodule over `D ⊗ C^op`: `m ↦ Σ (−1)^{|c||m'|} (d ⊗ c) ⊗ m'`
    /// where `Σ d ⊗ m' ⊗ c` is the two-sided coaction.
    pub fn as_enveloping_comodule(&self) -> Result<DGComodule> {
        let env = self.left_over.tensor(&self.right_over.opposite())?;
        let f = self.field();
        let nc = self.right_over.dim();
        let coaction = (0..self.dim())
            .map(|i| {
                self.left[i]
                    .iter()
                    .flat_map(|(d, m, x)| {
                        self.right[*m].iter().map(move |(c, m2, y)| {
                            let s = f.sign((self.right_over.degree(*c) * self.degree(*m2)) as i64);
                            (d * nc + c, *m2, &(x * y) * &s)
                        })
                    })
                    .collect()
            })
            .collect();
        DGComodule::new(Side::Left, env, self.basis.clone(), coaction, self.diff.clone())
    }

    /// Corestrict the left coaction along `fl` and the right one along `fr`.
    pub fn corestrict(&self, fl: &CoalgebraMorphism, fr: &CoalgebraMorphism) -> Result<Bicomodule> {
        let l = self.left_comodule().corestrict(fl)?;
        let r = self.right_comodule().corestrict(fr)?;
        Ok(Bicomodule::from_sides(&l, &r))
    }
}

/// A homogeneous linear map between comodules over the same coalgebra,
/// `dim target × dim source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleMap {
    pub source: DGComodule,
    pub target: DGComodule,
    pub matrix: Matrix,
}

impl ComoduleMap {
    pub fn new(source: DGComodule, target: DGComodule, matrix: Matrix) -> Result<Self> {
        if source.over != target.over || source.side != target.side {
            return Err(Error::CoalgebraMismatch("comodule map between different coalgebras or sides".into()));
        }
        if (matrix.rows(), matrix.cols()) != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "comodule map is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        Ok(ComoduleMap { source, target, matrix })
    }

    fn apply(&self, i: usize) -> Terms {
        (0..self.target.dim())
            .filter(|&r| !self.matrix.get(r, i).is_zero())
            .map(|r| (r, self.matrix.get(r, i).clone()))
            .collect()
    }

    /// Check degree preservation, colinearity and compatibility with `d`.
    pub fn validate(&self) -> Validation {
        let f = self.source.field();
        let mut v = Validation::default();
        for i in 0..self.source.dim() {
            let lab = self.source.label(i).to_string();
            if self.apply(i).iter().any(|(t, _)| self.target.degree(*t) != self.source.degree(i)) {
                v.fail("map preserves degree", &lab);
            }
            let lhs = normalize2(f, self.apply(i).into_iter().flat_map(|(t, x)| {
                self.target.coaction[t].iter().map(move |(c, m, y)| (*c, *m, &x * y)).collect::<Vec<_>>()
            }));
            let rhs = normalize2(f, self.source.coaction[i].iter().flat_map(|(c, m, x)| {
                self.apply(*m).into_iter().map(move |(t, y)| (*c, t, x * &y))
            }));
            if lhs != rhs {
                v.fail("colinearity", &lab);
            }
            let lhs = normalize(f, self.apply(i).into_iter().flat_map(|(t, x)| {
                self.target.diff[t].iter().map(move |(u, y)| (*u, &x * y)).collect::<Vec<_>>()
            }));
            let rhs = normalize(f, self.source.diff[i].iter().flat_map(|(m, x)| self.apply(*m).into_iter().map(move |(t, y)| (t, x * &y))));
            if lhs != rhs {
                v.fail("d∘f = f∘d", &lab);
            }
        }
        v
    }

    pub fn as_chain_map(&self) -> Result<ChainMap> {
        let (s, t) = (self.source.graded_basis(), self.target.graded_basis());
        let blocks = s.map_blocks(self.source.field(), &t, 0, |i| self.apply(i))?;
        ChainMap::new(self.source.as_complex()?, self.target.as_complex()?, blocks)
    }

    pub fn compose(&self, first: &ComoduleMap) -> Result<ComoduleMap> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch("composition of non-composable comodule maps".into()));
        }
        ComoduleMap::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }
}

/// Direct sum of comodules over the same coalgebra; labels get `i:` prefixes.
pub fn direct_sum(parts: &[DGComodule]) -> Result<DGComodule> {
    let first = parts.first().ok_or_else(|| Error::InvalidArgument("empty direct sum".into()))?;
    let (mut basis, mut coaction, mut diff) = (Vec::new(), Vec::new(), Vec::new());
    let mut off = 0;
    for (k, p) in parts.iter().enumerate() {
        if p.over != first.over || p.side != first.side {
            return Err(Error::CoalgebraMismatch("direct sum of comodules over different coalgebras".into()));
        }
        basis.extend(p.basis.iter().map(|b| BasisElement { label: format!("{k}:{}", b.label), degree: b.degree }));
        coaction.extend(p.coaction.iter().map(|t| t.iter().map(|(c, m, x)| (*c, m + off, x.clone())).collect()));
        diff.extend(p.diff.iter().map(|t| t.iter().map(|(m, x)| (m + off, x.clone())).collect()));
        off += p.dim();
    }
    DGComodule::new(first.side, first.over.clone(), basis, coaction, diff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::BasisElement;

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

    #[test]
    fn regular_comodules_validate() {
        let c = exterior(Field::Rational);
        assert!(DGComodule::regular(&c, Side::Left).validate().is_valid());
        assert!(DGComodule::regular(&c, Side::Right).validate().is_valid());
        assert!(Bicomodule::regular(&c).validate().is_valid());
        assert!(Bicomodule::cofree_enveloping(&c).unwrap().validate().is_valid());
    }

    #[test]
    fn enveloping_comodule_validates() {
        let c = exterior(Field::Rational);
        let m = Bicomodule::regular(&c).as_enveloping_comodule().unwrap();
        assert!(m.validate().is_valid(), "{:?}", m.validate());
    }

    #[test]
    fn cofree_over_point_is_regular() {
        let c = exterior(Field::Rational);
        let m = cofree(&c, &ChainComplex::point(c.field(), 0)).unwrap();
        assert!(m.validate().is_valid());
        assert_eq!(m.dim(), c.dim());
        assert_eq!(m.rho(1), DGComodule::regular(&c, Side::Left).rho(1));
    }

    #[test]
    fn broken_counit_reported() {
        let c = exterior(Field::Rational);
        let f = c.field();
        let m = DGComodule::new(Side::Left, c, vec![el("m", 0)], vec![vec![(1, 0, f.one())]], vec![vec![]]).unwrap();
        let v = m.validate();
        assert!(v.failures.iter().any(|x| x.identity == "coaction counit law"));
    }

    #[test]
    fn corestrict_along_identity() {
        let c = exterior(Field::Rational);
        let m = DGComodule::regular(&c, Side::Left);
        assert_eq!(m.corestrict(&CoalgebraMorphism::identity(&c)).unwrap(), m);
    }
}
