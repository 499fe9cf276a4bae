//! Verification pipelines for derived invariance: quasi-isomorphisms of dg
//! coalgebras, derived Morita contexts and cotilting certificates.
//!
//! Every pipeline runs its stages in order and stops at the first failing one;
//! the report names that stage and lists the checks that broke.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::basis::{normalize, GradedBasis, Terms};
use crate::coalgebra::{CoalgebraMorphism, DGCoalgebra, Validation};
use crate::comodule::{Bicomodule, DGComodule, Side};
use crate::complex::{is_quasi_iso, ChainComplex, ChainMap};
use crate::cyclic::{h_cohomology, hc, hoch, hochschild_window_with_basis};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Where a failing check broke: a basis label, a degree or a node.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locus: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, locus: impl Into<String>) -> Check {
        Check { name: name.into(), passed, locus: if passed { None } else { Some(locus.into()) } }
    }

    fn from_validation(what: &str, v: &Validation) -> Vec<Check> {
        if v.is_valid() {
            return vec![Check::new(what, true, "")];
        }
        v.failures.iter().map(|f| Check::new(format!("{what}: {}", f.identity), false, f.locus.clone())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Dimension vectors of one theory on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimComparison {
    pub theory: String,
    pub left: BTreeMap<i32, usize>,
    pub right: BTreeMap<i32, usize>,
    pub equal: bool,
}

impl DimComparison {
    fn new(theory: &str, left: BTreeMap<i32, usize>, right: BTreeMap<i32, usize>) -> DimComparison {
        let equal = left == right;
        DimComparison { theory: theory.into(), left, right, equal }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_stage: Option<String>,
    pub stages: Vec<Stage>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<DimComparison>,
}

impl PipelineReport {
    fn new() -> PipelineReport {
        PipelineReport { passed: true, ..Default::default() }
    }

    /// Record a stage; returns whether the pipeline may continue.
    fn stage(&mut self, name: &str, checks: Vec<Check>) -> bool {
        let passed = checks.iter().all(|c| c.passed);
        self.stages.push(Stage { name: name.into(), passed, checks });
        if !passed && self.passed {
            self.passed = false;
            self.failed_stage = Some(name.into());
        }
        passed
    }

    /// The first failing check, if any.
    pub fn first_failure(&self) -> Option<(&Stage, &Check)> {
        self.stages.iter().find(|s| !s.passed).and_then(|s| s.checks.iter().find(|c| !c.passed).map(|c| (s, c)))
    }
}

fn quasi_iso_checks(what: &str, f: &ChainMap, range: std::ops::RangeInclusive<i32>) -> Vec<Check> {
    let r = is_quasi_iso(f, range);
    r.degrees
        .iter()
        .map(|(n, d)| {
            let ok = d.rank == d.source_dim && d.rank == d.target_dim;
            Check::new(format!("{what} is bijective on H^{n}"), ok, format!("degree {n}"))
        })
        .collect()
}

fn support(x: &ChainComplex) -> std::ops::RangeInclusive<i32> {
    match x.support() {
        Some((a, b)) => a - 1..=b + 1,
        None => 0..=0,
    }
}

/// `f_*: 𝒞_Hoch(C) → 𝒞_Hoch(D)` on the windows through `max_degree`.
fn induced_hochschild_map(f: &CoalgebraMorphism, max_degree: i32) -> Result<ChainMap> {
    let field = f.source.field();
    let (xc, xb) = hochschild_window_with_basis(&f.source, max_degree)?;
    let (yc, yb) = hochschild_window_with_basis(&f.target, max_degree)?;
    let images: Vec<Terms> = (0..f.source.dim()).map(|i| f.apply(i)).collect();
    let blocks = xb.map_blocks(field, &yb, 0, |i| {
        // ⊗ f(c_k), expanded factor by factor
        let mut acc: Vec<(Vec<usize>, Scalar)> = vec![(vec![], field.one())];
        for &a in xb.key(i) {
            acc = acc
                .iter()
                .flat_map(|(w, x)| {
                    images[a].iter().map(move |(b, y)| {
                        let mut w2 = w.clone();
                        w2.push(*b);
                        (w2, x * y)
                    })
                })
                .collect();
        }
        normalize(field, acc.into_iter().map(|(w, x)| (yb.index(&w).expect("degree is preserved"), x)))
    })?;
    ChainMap::new(xc, yc, blocks)
}

/// Hoch, H and (optionally) HC dimension vectors of two coalgebras.
fn dimension_tables(c: &DGCoalgebra, d: &DGCoalgebra, max_degree: i32, with_hc: bool) -> Result<Vec<DimComparison>> {
    let mut t = vec![
        DimComparison::new("Hoch", hoch(c, max_degree)?, hoch(d, max_degree)?),
        DimComparison::new(
            "H",
            h_cohomology(&Bicomodule::regular(c), max_degree, None)?,
            h_cohomology(&Bicomodule::regular(d), max_degree, None)?,
        ),
    ];
    if with_hc {
        t.push(DimComparison::new("HC", hc(c, max_degree, None)?, hc(d, max_degree, None)?));
    }
    Ok(t)
}

fn table_checks(tables: &[DimComparison]) -> Vec<Check> {
    tables
        .iter()
        .map(|t| {
            let locus = t.left.iter().find(|(n, v)| t.right.get(n) != Some(v)).map(|(n, _)| format!("degree {n}"));
            Check::new(format!("{} dimensions agree", t.theory), t.equal, locus.unwrap_or_default())
        })
        .collect()
}

/// Run the quasi-isomorphism pipeline for `f: C → D` through `max_degree`:
/// (i) `f` is a quasi-isomorphism, (ii) so is `f_*` on Hochschild complexes,
/// (iii) Hoch, H and HC dimensions agree.
pub fn check_quasi_iso_invariance(f: &CoalgebraMorphism, max_degree: i32) -> Result<PipelineReport> {
    f.source.require_positively_graded()?;
    f.target.require_positively_graded()?;
    let mut report = PipelineReport::new();
    if !report.stage("morphism", Check::from_validation("coalgebra morphism", &f.validate())) {
        return Ok(report);
    }
    let map = f.as_chain_map()?;
    let (a, b) = (support(map.source()), support(map.target()));
    let range = (*a.start()).min(*b.start())..=(*a.end()).max(*b.end());
    if !report.stage("quasi-isomorphism", quasi_iso_checks("f", &map, range)) {
        return Ok(report);
    }
    let fh = induced_hochschild_map(f, max_degree)?;
    if !report.stage("Hochschild quasi-isomorphism", quasi_iso_checks("f_*", &fh, 0..=max_degree)) {
        return Ok(report);
    }
    let tables = dimension_tables(&f.source, &f.target, max_degree, true)?;
    report.stage("dimension agreement", table_checks(&tables));
    report.tables = tables;
    Ok(report)
}

/// `X □ Y ⊆ X ⊗ Y` on the pair basis `(x, y)`, with the inclusion matrices
/// (columns in pair coordinates of each degree).
struct PairCotensor {
    pairs: GradedBasis<(usize, usize)>,
    complex: ChainComplex,
    inclusion: BTreeMap<i32, Matrix>,
}

fn pair_cotensor(x: &DGComodule, y: &DGComodule) -> Result<PairCotensor> {
    let c = x.over();
    let f = c.field();
    let mut items = Vec::new();
    for i in 0..x.dim() {
        for j in 0..y.dim() {
            items.push(((i, j), x.degree(i) + y.degree(j)));
        }
    }
    let pairs = GradedBasis::new(items)?;
    let ambient = pairs.complex(f, |k| {
        let (i, j) = *pairs.key(k);
        let s = f.sign(x.degree(i) as i64);
        let mut t: Vec<(usize, Scalar)> = x.d(i).iter().map(|(i2, v)| (pairs.index(&(*i2, j)).unwrap(), v.clone())).collect();
        t.extend(y.d(j).iter().map(|(j2, v)| (pairs.index(&(i, *j2)).unwrap(), v * &s)));
        normalize(f, t)
    })?;
    let (nx, nc, ny) = (x.dim(), c.dim(), y.dim());
    let mut inclusion = BTreeMap::new();
    for n in pairs.degrees() {
        let cols = pairs.in_degree(n);
        let mut cond = Matrix::zeros(f, nx * nc * ny, cols.len());
        for (col, &k) in cols.iter().enumerate() {
            let (i, j) = *pairs.key(k);
            for (a, i2, v) in x.rho(i) {
                cond.add_to((i2 * nc + a) * ny + j, col, v);
            }
            for (a, j2, v) in y.rho(j) {
                cond.add_to((i * nc + a) * ny + j2, col, &-v);
            }
        }
        inclusion.insert(n, cond.kernel_basis());
    }
    let complex = ambient.subcomplex(&inclusion)?;
    Ok(PairCotensor { pairs, complex, inclusion })
}

/// A derived Morita context between `C` and `D`: bicomodules `_C P_D` and
/// `_D Q_C` with comparison maps out of the cotensor products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoritaContext {
    pub c: DGCoalgebra,
    pub d: DGCoalgebra,
    pub p: Bicomodule,
    pub q: Bicomodule,
    /// `P ⊗ Q → C`, a `dim C × (dim P · dim Q)` matrix; `p_i ⊗ q_j` is column
    /// `i · dim Q + j`. Only its restriction to `P □_D Q` matters.
    pub to_c: Matrix,
    /// `Q ⊗ P → D`, laid out the same way.
    pub to_d: Matrix,
    pub max_degree: i32,
    /// Levels of the resolutions used for the derived cotensors; by default
    /// the smallest exact choice.
    pub levels: Option<usize>,
}

fn range_of(xs: &[&ChainComplex], top: i32) -> std::ops::RangeInclusive<i32> {
    let lo = xs.iter().filter_map(|x| x.support()).map(|s| s.0).min().unwrap_or(0).min(0);
    lo..=top
}

/// Checks for one comparison `ζ: X □ Y → Z` of `A`-bicomodules, where `X` is
/// an `A`-`B` and `Y` a `B`-`A` bicomodule and `Z = A`.
fn comparison_checks(
    x: &Bicomodule,
    y: &Bicomodule,
    zeta: &Matrix,
    max_degree: i32,
    levels: Option<usize>,
) -> Result<Vec<Check>> {
    let a = x.left_over();
    let f = a.field();
    let target = Bicomodule::regular(a);
    if (zeta.rows(), zeta.cols()) != (a.dim(), x.dim() * y.dim()) {
        return Err(Error::DimensionMismatch(format!(
            "comparison map is {}x{}, expected {}x{}",
            zeta.rows(),
            zeta.cols(),
            a.dim(),
            x.dim() * y.dim()
        )));
    }
    let cot = pair_cotensor(&x.right_comodule(), &y.left_comodule())?;
    let mut checks = Vec::new();

    // bicolinearity on every basis vector of the cotensor
    let col = |i: usize, j: usize| i * y.dim() + j;
    let (mut left_ok, mut right_ok) = (None, None);
    for (&n, k) in &cot.inclusion {
        for v in 0..k.cols() {
            let vec = k.column(v);
            let mut z = vec![f.zero(); a.dim()];
            for (pos, &key) in cot.pairs.in_degree(n).iter().enumerate() {
                let (i, j) = *cot.pairs.key(key);
                if vec[pos].is_zero() {
                    continue;
                }
                for (t, zt) in z.iter_mut().enumerate() {
                    *zt = &*zt + &(zeta.get(t, col(i, j)) * &vec[pos]);
                }
            }
            let (mut l1, mut l2, mut r1, mut r2) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
            for (t, zt) in z.iter().enumerate() {
                for (c1, c2, e) in a.delta(t) {
                    l1.push(((*c1, *c2), zt * e));
                    r1.push(((*c1, *c2), zt * e));
                }
            }
            for (pos, &key) in cot.pairs.in_degree(n).iter().enumerate() {
                let (i, j) = *cot.pairs.key(key);
                let w = &vec[pos];
                if w.is_zero() {
                    continue;
                }
                for (c1, i2, e) in x.rho_left(i) {
                    for t in 0..a.dim() {
                        l2.push(((*c1, t), &(w * e) * zeta.get(t, col(*i2, j))));
                    }
                }
                for (c2, j2, e) in y.rho_right(j) {
                    for t in 0..a.dim() {
                        r2.push(((t, *c2), &(w * e) * zeta.get(t, col(i, *j2))));
                    }
                }
            }
            let label = format!("degree {n}, cotensor vector {v}");
            if left_ok.is_none() && sum_pairs(f, l1) != sum_pairs(f, l2) {
                left_ok = Some(label.clone());
            }
            if right_ok.is_none() && sum_pairs(f, r1) != sum_pairs(f, r2) {
                right_ok = Some(label);
            }
        }
    }
    checks.push(Check::new("comparison is left colinear", left_ok.is_none(), left_ok.unwrap_or_default()));
    checks.push(Check::new("comparison is right colinear", right_ok.is_none(), right_ok.unwrap_or_default()));

    // ζ as a map of complexes
    let tb = target.left_comodule().graded_basis();
    let tc = target.as_complex()?;
    let mut comps = BTreeMap::new();
    for (&n, k) in &cot.inclusion {
        let mut m = Matrix::zeros(f, tc.dim(n), k.cols());
        for v in 0..k.cols() {
            for (pos, &key) in cot.pairs.in_degree(n).iter().enumerate() {
                let (i, j) = *cot.pairs.key(key);
                let w = k.get(pos, v);
                if w.is_zero() {
                    continue;
                }
                for t in 0..a.dim() {
                    let e = zeta.get(t, col(i, j));
                    if e.is_zero() {
                        continue;
                    }
                    if tb.degree(t) != n {
                        return Ok(fail_with(checks, "comparison preserves degree", a.label(t)));
                    }
                    m.add_to(tb.position(t), v, &(w * e));
                }
            }
        }
        comps.insert(n, m);
    }
    let map = ChainMap::unchecked(cot.complex.clone(), tc.clone(), comps)?;
    let commutes = map.check_commutes();
    let failed = commutes.is_err();
    checks.push(Check::new(
        "comparison commutes with d",
        !failed,
        commutes.err().map(|e| e.to_string()).unwrap_or_default(),
    ));
    if failed {
        return Ok(checks);
    }
    let range = range_of(&[&cot.complex, &tc], max_degree);
    checks.extend(quasi_iso_checks("comparison", &map, range.clone()));

    // the underived cotensor already computes the derived one
    let bottom = |b: &Bicomodule| (0..b.dim()).map(|i| b.degree(i)).min().unwrap_or(0);
    let p = levels.unwrap_or(((max_degree + 2 - bottom(x) - bottom(y)).max(1)) as usize);
    let (rc, rb) = crate::slices::cotensor_resolution_with_basis(&x.right_comodule(), &y.left_comodule(), max_degree, p)?;
    let mut comps = BTreeMap::new();
    for (&n, k) in &cot.inclusion {
        if rc.dim(n) == 0 {
            continue;
        }
        let mut m = Matrix::zeros(f, rc.dim(n), k.cols());
        for v in 0..k.cols() {
            for (pos, &key) in cot.pairs.in_degree(n).iter().enumerate() {
                let (i, j) = *cot.pairs.key(key);
                let w = k.get(pos, v);
                if w.is_zero() {
                    continue;
                }
                // p ⊗ q ↦ p ⊗ aug(q), which the slice basis reads as (−1)^{|q|} (p, (q))
                let t = rb.index(&(i, vec![j])).expect("level one is inside the window");
                m.add_to(rb.position(t), v, &(w * &f.sign(y.degree(j) as i64)));
            }
        }
        comps.insert(n, m);
    }
    let nat = ChainMap::new(cot.complex.clone(), rc.clone(), comps)?;
    checks.extend(quasi_iso_checks("cotensor → derived cotensor", &nat, range_of(&[&cot.complex, &rc], max_degree)));
    Ok(checks)
}

fn sum_pairs(f: Field, t: Vec<((usize, usize), Scalar)>) -> BTreeMap<(usize, usize), Scalar> {
    let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for (k, x) in t {
        let e = acc.entry(k).or_insert_with(|| f.zero());
        *e = &*e + &x;
    }
    acc.retain(|_, x| !x.is_zero());
    acc
}

fn fail_with(mut checks: Vec<Check>, name: &str, locus: &str) -> Vec<Check> {
    checks.push(Check::new(name, false, locus));
    checks
}

/// Verify both comparison maps of a Morita context, then compare Hoch and H
/// of the two coalgebras through `ctx.max_degree`.
pub fn check_morita_context(ctx: &MoritaContext) -> Result<PipelineReport> {
    let (c, d) = (&ctx.c, &ctx.d);
    if ctx.p.left_over() != c || ctx.p.right_over() != d || ctx.q.left_over() != d || ctx.q.right_over() != c {
        return Err(Error::CoalgebraMismatch("Morita context bicomodules live over the wrong coalgebras".into()));
    }
    c.require_positively_graded()?;
    d.require_positively_graded()?;
    let mut report = PipelineReport::new();
    let mut checks = Check::from_validation("C", &c.validate());
    checks.extend(Check::from_validation("D", &d.validate()));
    checks.extend(Check::from_validation("P", &ctx.p.validate()));
    checks.extend(Check::from_validation("Q", &ctx.q.validate()));
    if !report.stage("validity", checks) {
        return Ok(report);
    }
    if !report.stage("P □ Q → C", comparison_checks(&ctx.p, &ctx.q, &ctx.to_c, ctx.max_degree, ctx.levels)?) {
        return Ok(report);
    }
    if !report.stage("Q □ P → D", comparison_checks(&ctx.q, &ctx.p, &ctx.to_d, ctx.max_degree, ctx.levels)?) {
        return Ok(report);
    }
    let tables = dimension_tables(c, d, ctx.max_degree, false)?;
    report.stage("dimension agreement", table_checks(&tables));
    report.tables = tables;
    Ok(report)
}

/// A finite summand witness: `section: X → T^copies` and
/// `projection: T^copies → X` with `projection ∘ section = id`. For injective
/// terms `T` is replaced by the coalgebra itself, giving an embedding into a
/// cofree comodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub copies: usize,
    pub section: Matrix,
    pub projection: Matrix,
}

/// `0 → T_n → … → T_0 → D → 0` with `T_i ∈ Add(T)`. `maps[0]: T_0 → D` and
/// `maps[i]: T_i → T_{i−1}`; a missing map is the zero map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddCoresolution {
    pub terms: Vec<DGComodule>,
    pub maps: Vec<Option<Matrix>>,
    pub splittings: Vec<Splitting>,
}

/// `0 → T → I_0 → … → I_r → 0` of bicomodules. `maps[0]: T → I_0` and
/// `maps[i]: I_{i−1} → I_i`; a missing map is the zero map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectiveResolution {
    pub terms: Vec<Bicomodule>,
    pub maps: Vec<Option<Matrix>>,
    pub embeddings: Vec<Splitting>,
}

/// Finite witnesses that `_D T_C` is a cotilting bicomodule.
///
/// The coendomorphism witnesses assign to every basis element `c` of `C` a
/// matrix `W_c` (`dim T × dim T`); `c` corresponds to the functional
/// `f ↦ Σ W_c[i][j] f[i][j]` on `D`-colinear endomorphisms of `T`, that is to an
/// element of `e_D(T)`. The same applies to `D` with `C`-colinear maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotiltingCertificate {
    pub c: DGCoalgebra,
    pub d: DGCoalgebra,
    pub t: Bicomodule,
    pub coend_c: Vec<Matrix>,
    pub coend_d: Vec<Matrix>,
    pub ext_bound: i32,
    pub add: AddCoresolution,
    pub injective: InjectiveResolution,
}

pub const DEFAULT_EXT_BOUND: i32 = 4;

pub const COND_COEND: &str = "coendomorphism recovery";
pub const COND_EXT: &str = "Ext vanishing";
pub const COND_ADD: &str = "Add(T) coresolution";
pub const COND_INJ: &str = "injective resolution";

/// Witnesses as a morphism `X → e(T)`.
fn coend_checks(what: &str, x: &DGCoalgebra, t: &DGComodule, witnesses: &[Matrix]) -> Result<Vec<Check>> {
    let f = x.field();
    if witnesses.len() != x.dim() {
        return Err(Error::DimensionMismatch(format!("{what}: {} witnesses for {} basis elements", witnesses.len(), x.dim())));
    }
    if let Some(w) = witnesses.iter().find(|w| (w.rows(), w.cols()) != (t.dim(), t.dim())) {
        return Err(Error::DimensionMismatch(format!("{what}: witness is {}x{}", w.rows(), w.cols())));
    }
    let (e, com) = crate::resolution::coend(t)?;
    let m = Matrix::from_fn(f, e.dim(), x.dim(), |k, c| {
        let (w, g) = (&witnesses[c], &com[k]);
        let mut s = f.zero();
        for i in 0..t.dim() {
            for j in 0..t.dim() {
                s = s + &(w.get(i, j) * g.get(i, j));
            }
        }
        s
    });
    let bijective = m.rows() == m.cols() && m.rank() == m.cols();
    let phi = CoalgebraMorphism::new(x.clone(), e, m)?;
    let mut checks = Check::from_validation(&format!("{what} is a coalgebra map"), &phi.validate());
    checks.push(Check::new(format!("{what} is bijective"), bijective, "witness matrix"));
    Ok(checks)
}

fn map_or_zero(f: Field, m: &Option<Matrix>, rows: usize, cols: usize) -> Result<Matrix> {
    match m {
        None => Ok(Matrix::zeros(f, rows, cols)),
        Some(m) if (m.rows(), m.cols()) == (rows, cols) => Ok(m.clone()),
        Some(m) => Err(Error::DimensionMismatch(format!("sequence map is {}x{}, expected {rows}x{cols}", m.rows(), m.cols()))),
    }
}

/// Exactness of `0 → X_0 → X_1 → … → X_k → 0` given the maps between
/// consecutive terms; `names[i]` labels `X_i`.
fn exactness_checks(names: &[String], dims: &[usize], maps: &[Matrix]) -> Vec<Check> {
    let mut checks = Vec::new();
    for (i, name) in names.iter().enumerate() {
        let rank_in = if i == 0 { 0 } else { maps[i - 1].rank() };
        let rank_out = if i == maps.len() { 0 } else { maps[i].rank() };
        let composite = i > 0 && i < maps.len() && !maps[i].mul(&maps[i - 1]).is_zero();
        let ok = !composite && rank_in + rank_out == dims[i];
        checks.push(Check::new("sequence is exact", ok, format!("node {name}")));
    }
    checks
}

fn colinear_check(name: &str, s: &DGComodule, t: &DGComodule, m: &Matrix) -> Result<Vec<Check>> {
    let v = crate::comodule::ComoduleMap::new(s.clone(), t.clone(), m.clone())?.validate();
    Ok(Check::from_validation(name, &v))
}

fn splitting_checks(name: &str, x: &DGComodule, unit: &DGComodule, s: &Splitting) -> Result<Vec<Check>> {
    let power = crate::comodule::direct_sum(&vec![unit.clone(); s.copies])?;
    let mut checks = colinear_check(&format!("{name} section"), x, &power, &s.section)?;
    checks.extend(colinear_check(&format!("{name} projection"), &power, x, &s.projection)?);
    let id = s.projection.mul(&s.section) == Matrix::identity(x.field(), x.dim());
    checks.push(Check::new(format!("{name} projection ∘ section = id"), id, name));
    Ok(checks)
}

/// Check the four cotilting conditions in order; the report stops at the first
/// condition that fails.
pub fn verify_cotilting(cert: &CotiltingCertificate) -> Result<PipelineReport> {
    let (c, d, t) = (&cert.c, &cert.d, &cert.t);
    if t.left_over() != d || t.right_over() != c {
        return Err(Error::CoalgebraMismatch("T must be a D-C bicomodule".into()));
    }
    if !c.is_concentrated() || !d.is_concentrated() || !t.is_concentrated() {
        return Err(Error::NotConcentrated("cotilting certificates are checked for concentrated data".into()));
    }
    if cert.ext_bound < 1 {
        return Err(Error::InvalidArgument("the Ext bound must be at least 1".into()));
    }
    let f = c.field();
    let mut report = PipelineReport::new();
    let tl = t.left_comodule();

    let mut checks = Check::from_validation("C", &c.validate());
    checks.extend(Check::from_validation("D", &d.validate()));
    checks.extend(Check::from_validation("T", &t.validate()));
    if checks.iter().all(|x| x.passed) {
        checks.extend(coend_checks("C → e_D(T)", c, &tl, &cert.coend_c)?);
        checks.extend(coend_checks("D → e_C(T)", d, &t.right_comodule(), &cert.coend_d)?);
    }
    checks.push(Check::new("T is quasi-finite (finite dimension)", true, ""));
    if !report.stage(COND_COEND, checks) {
        return Ok(report);
    }

    let ext = crate::slices::hom_resolution(&tl, &tl, cert.ext_bound, cert.ext_bound as usize + 2)?;
    let dims = crate::complex::cohomology_dims(&ext, 1..=cert.ext_bound);
    let checks = dims.iter().map(|(n, &k)| Check::new(format!("Ext^{n}(T, T) = 0"), k == 0, format!("degree {n}"))).collect();
    if !report.stage(COND_EXT, checks) {
        return Ok(report);
    }

    let add = &cert.add;
    let k = add.terms.len();
    if k == 0 || add.maps.len() > k || add.splittings.len() != k {
        return Err(Error::InvalidArgument("Add(T) witness needs terms, at most one map per term and one splitting per term".into()));
    }
    let dreg = DGComodule::regular(d, Side::Left);
    let mut checks = Vec::new();
    // sequence T_n → … → T_0 → D, listed from the left
    let mut names: Vec<String> = (0..k).rev().map(|i| format!("T_{i}")).collect();
    names.push("D".into());
    let mut dims: Vec<usize> = add.terms.iter().rev().map(|x| x.dim()).collect();
    dims.push(d.dim());
    let mut maps = Vec::new();
    for i in (0..k).rev() {
        let src = &add.terms[i];
        let tgt = if i == 0 { &dreg } else { &add.terms[i - 1] };
        checks.extend(Check::from_validation(&format!("T_{i}"), &src.validate()));
        let m = map_or_zero(f, add.maps.get(i).unwrap_or(&None), tgt.dim(), src.dim())?;
        let tname = if i == 0 { "D".to_string() } else { format!("T_{}", i - 1) };
        checks.extend(colinear_check(&format!("map T_{i} → {tname}"), src, tgt, &m)?);
        maps.push(m);
        checks.extend(splitting_checks(&format!("T_{i} splitting"), src, &tl, &add.splittings[i])?);
    }
    checks.extend(exactness_checks(&names, &dims, &maps));
    if !report.stage(COND_ADD, checks) {
        return Ok(report);
    }

    let inj = &cert.injective;
    let r = inj.terms.len();
    if r == 0 || inj.maps.len() > r || inj.embeddings.len() != r {
        return Err(Error::InvalidArgument("injective witness needs terms, at most one map per term and one embedding per term".into()));
    }
    let mut checks = Vec::new();
    let mut names = vec!["T".to_string()];
    names.extend((0..r).map(|i| format!("I_{i}")));
    let mut dims = vec![t.dim()];
    dims.extend(inj.terms.iter().map(|x| x.dim()));
    let mut maps = Vec::new();
    for i in 0..r {
        let tgt = &inj.terms[i];
        if tgt.left_over() != d || tgt.right_over() != c {
            return Err(Error::CoalgebraMismatch(format!("I_{i} must be a D-C bicomodule")));
        }
        let src = if i == 0 { t } else { &inj.terms[i - 1] };
        checks.extend(Check::from_validation(&format!("I_{i}"), &tgt.validate()));
        let m = map_or_zero(f, inj.maps.get(i).unwrap_or(&None), tgt.dim(), src.dim())?;
        let name = format!("map {} → I_{i}", names[i]);
        checks.extend(colinear_check(&format!("{name} (left)"), &src.left_comodule(), &tgt.left_comodule(), &m)?);
        checks.extend(colinear_check(&format!("{name} (right)"), &src.right_comodule(), &tgt.right_comodule(), &m)?);
        maps.push(m);
        checks.extend(splitting_checks(&format!("I_{i} embedding"), &tgt.left_comodule(), &dreg, &inj.embeddings[i])?);
    }
    checks.extend(exactness_checks(&names, &dims, &maps));
    report.stage(COND_INJ, checks);
    Ok(report)
}

/// What a transfer conclusion is drawn from.
#[derive(Clone, Copy, Debug)]
pub enum TransferSource<'a> {
    QuasiIso(&'a CoalgebraMorphism),
    Morita(&'a MoritaContext),
    Cotilting(&'a CotiltingCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferTable {
    pub max_degree: i32,
    pub rows: Vec<DimComparison>,
    /// HC is only compared for quasi-isomorphisms.
    pub cyclic_compared: bool,
}

/// Hoch and H dimensions of both coalgebras through `max_degree`, plus HC for
/// quasi-isomorphisms. A mismatch contradicts the invariance theorems for a
/// passing input, so it is returned as [`Error::Falsified`].
pub fn conclude_cohomology_transfer(source: TransferSource<'_>, max_degree: i32) -> Result<TransferTable> {
    let (c, d, with_hc) = match source {
        TransferSource::QuasiIso(f) => (&f.source, &f.target, true),
        TransferSource::Morita(ctx) => (&ctx.c, &ctx.d, false),
        TransferSource::Cotilting(cert) => (&cert.c, &cert.d, false),
    };
    let rows = dimension_tables(c, d, max_degree, with_hc)?;
    if let Some(bad) = rows.iter().find(|r| !r.equal) {
        return Err(Error::Falsified(format!("{} dimensions differ: {:?} vs {:?}", bad.theory, bad.left, bad.right)));
    }
    Ok(TransferTable { max_degree, rows, cyclic_compared: with_hc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn identity_morphism_passes() {
        let c = divided_powers(q(), 2);
        let r = check_quasi_iso_invariance(&CoalgebraMorphism::identity(&c), 2).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn acyclic_extension_pipeline() {
        let f = q();
        let good = extension_inclusion(f, &acyclic_extension(f)).unwrap();
        let r = check_quasi_iso_invariance(&good, 3).unwrap();
        assert!(r.passed, "{r:#?}");
        assert_eq!(r.stages.len(), 4);
        let bad = extension_inclusion(f, &sabotaged_extension(f)).unwrap();
        let r = check_quasi_iso_invariance(&bad, 3).unwrap();
        assert_eq!(r.failed_stage.as_deref(), Some("quasi-isomorphism"));
        assert_eq!(r.stages.len(), 2);
    }

    #[test]
    fn morita_contexts() {
        let f = q();
        for c in [trivial(f), group_likes(f, 2), exterior(f)] {
            let r = check_morita_context(&identity_context(&c, 2)).unwrap();
            assert!(r.passed, "{r:#?}");
        }
        let inc = extension_inclusion(f, &acyclic_extension(f)).unwrap();
        let r = check_morita_context(&morphism_context(&inc, 3).unwrap()).unwrap();
        assert!(r.passed, "{r:#?}");

        let mut ctx = identity_context(&divided_powers(f, 2), 2);
        // ε ⊗ 1 sends c0 ⊗ c1 to c1; flip it
        ctx.to_c.set(1, 1, -f.one());
        let r = check_morita_context(&ctx).unwrap();
        assert_eq!(r.failed_stage.as_deref(), Some("P □ Q → C"));
        assert!(r.first_failure().unwrap().1.name.contains("colinear"));
    }

    #[test]
    fn certificates_pass() {
        for f in [q(), Field::Prime(5)] {
            for c in [trivial(f), group_likes(f, 2), divided_powers(f, 2)] {
                let r = verify_cotilting(&identity_certificate(&c).unwrap()).unwrap();
                assert!(r.passed, "{r:#?}");
            }
            let r = verify_cotilting(&morita_takeuchi_certificate(f).unwrap()).unwrap();
            assert!(r.passed, "{r:#?}");
        }
    }

    #[test]
    fn certificate_mutations_fail_at_their_condition() {
        let f = q();
        let base = morita_takeuchi_certificate(f).unwrap();

        let mut cert = base.clone();
        cert.coend_c[0] = cert.coend_c[0].scale(&f.int(2));
        let r = verify_cotilting(&cert).unwrap();
        assert_eq!(r.failed_stage.as_deref(), Some(COND_COEND));

        let mut cert = base.clone();
        cert.add.maps[0] = None;
        let r = verify_cotilting(&cert).unwrap();
        assert_eq!(r.failed_stage.as_deref(), Some(COND_ADD));
        let (_, check) = r.first_failure().unwrap();
        assert_eq!(check.name, "sequence is exact");
        assert_eq!(check.locus.as_deref(), Some("node T_0"));

        let mut cert = base.clone();
        let m = cert.add.maps[0].as_mut().unwrap();
        m.set(0, 0, -f.one());
        let r = verify_cotilting(&cert).unwrap();
        assert_eq!(r.failed_stage.as_deref(), Some(COND_ADD));

        let mut cert = base;
        cert.injective.maps[0].as_mut().unwrap().set(0, 0, -f.one());
        let r = verify_cotilting(&cert).unwrap();
        assert_eq!(r.failed_stage.as_deref(), Some(COND_INJ));
    }

    #[test]
    fn ext_bound_is_monotone() {
        let mut cert = identity_certificate(&divided_powers(q(), 2)).unwrap();
        for n in 1..=3 {
            cert.ext_bound = n;
            assert!(verify_cotilting(&cert).unwrap().passed);
        }
    }

    #[test]
    fn transfer_tables() {
        let f = q();
        let inc = extension_inclusion(f, &acyclic_extension(f)).unwrap();
        let t = conclude_cohomology_transfer(TransferSource::QuasiIso(&inc), 3).unwrap();
        assert!(t.cyclic_compared);
        assert_eq!(t.rows[2].left.values().copied().collect::<Vec<_>>(), vec![1, 0, 1, 0]);
        let cert = morita_takeuchi_certificate(f).unwrap();
        let t = conclude_cohomology_transfer(TransferSource::Cotilting(&cert), 3).unwrap();
        assert!(!t.cyclic_compared);
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.rows[0].right.values().copied().collect::<Vec<_>>(), vec![1, 0, 0, 0]);
    }
}
