//! JSON fixture documents: named coalgebras, comodules, bicomodules,
//! morphisms, Morita contexts and cotilting certificates, with string
//! coefficients and references by name.
//!
//! A [`FixtureDocument`] is the raw, serializable form; [`Fixture`] holds the
//! resolved objects. Maps are lists of nonzero entries keyed by basis labels.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::basis::Terms;
use crate::coalgebra::{BasisElement, CoalgebraMorphism, DGCoalgebra, Terms2};
use crate::comodule::{Bicomodule, DGComodule, Side};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::invariance::{
    AddCoresolution, CotiltingCertificate, InjectiveResolution, MoritaContext, Splitting, DEFAULT_EXT_BOUND,
};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComultTerm {
    pub on: String,
    pub left: String,
    pub right: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffTerm {
    pub on: String,
    pub to: String,
    pub coeff: String,
}

/// `on ↦ coeff · c ⊗ m` (left) or `coeff · m ⊗ c` (right).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoactionTerm {
    pub on: String,
    pub c: String,
    pub m: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub from: String,
    pub to: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub from: [String; 2],
    pub to: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellEntry {
    pub row: String,
    pub col: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraSpec {
    pub basis: Vec<BasisElement>,
    pub comultiplication: Vec<ComultTerm>,
    pub counit: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<DiffTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleSpec {
    pub side: Side,
    pub over: String,
    pub basis: Vec<BasisElement>,
    pub coaction: Vec<CoactionTerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<DiffTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BicomoduleSpec {
    pub left_over: String,
    pub right_over: String,
    pub basis: Vec<BasisElement>,
    pub left: Vec<CoactionTerm>,
    pub right: Vec<CoactionTerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<DiffTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub source: String,
    pub target: String,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextSpec {
    pub c: String,
    pub d: String,
    pub p: String,
    pub q: String,
    pub to_c: Vec<PairEntry>,
    pub to_d: Vec<PairEntry>,
    pub max_degree: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplittingSpec {
    pub copies: usize,
    pub section: Vec<Entry>,
    pub projection: Vec<Entry>,
}

/// Sequence maps may be `null` (the zero map).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AddSpec {
    pub terms: Vec<String>,
    pub maps: Vec<Option<Vec<Entry>>>,
    pub splittings: Vec<SplittingSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InjectiveSpec {
    pub terms: Vec<String>,
    pub maps: Vec<Option<Vec<Entry>>>,
    pub embeddings: Vec<SplittingSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateSpec {
    pub c: String,
    pub d: String,
    pub t: String,
    pub coend_c: BTreeMap<String, Vec<CellEntry>>,
    pub coend_d: BTreeMap<String, Vec<CellEntry>>,
    #[serde(default = "default_ext_bound")]
    pub ext_bound: i32,
    pub add: AddSpec,
    pub injective: InjectiveSpec,
}

fn default_ext_bound() -> i32 {
    DEFAULT_EXT_BOUND
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureDocument {
    pub field: Field,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coalgebras: BTreeMap<String, CoalgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub comodules: BTreeMap<String, ComoduleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bicomodules: BTreeMap<String, BicomoduleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub contexts: BTreeMap<String, ContextSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub certificates: BTreeMap<String, CertificateSpec>,
}

impl FixtureDocument {
    pub fn new(field: Field) -> Self {
        FixtureDocument {
            field,
            coalgebras: BTreeMap::new(),
            comodules: BTreeMap::new(),
            bicomodules: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            contexts: BTreeMap::new(),
            certificates: BTreeMap::new(),
        }
    }

    /// Parse JSON text; syntax errors carry line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Pretty JSON with keys in a fixed order and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("fixture documents serialize");
        s.push('\n');
        s
    }

    pub fn add_coalgebra(&mut self, name: &str, c: &DGCoalgebra) {
        self.coalgebras.insert(name.into(), coalgebra_spec(c));
    }

    pub fn add_comodule(&mut self, name: &str, over: &str, m: &DGComodule) {
        self.comodules.insert(name.into(), comodule_spec(over, m));
    }

    pub fn add_bicomodule(&mut self, name: &str, left_over: &str, right_over: &str, m: &Bicomodule) {
        self.bicomodules.insert(name.into(), bicomodule_spec(left_over, right_over, m));
    }

    pub fn add_morphism(&mut self, name: &str, source: &str, target: &str, f: &CoalgebraMorphism) {
        let entries = entries(&f.matrix, &labels(f.source.basis()), &labels(f.target.basis()));
        self.morphisms.insert(name.into(), MorphismSpec { source: source.into(), target: target.into(), entries });
    }

    /// Add a context whose coalgebras and bicomodules are already registered
    /// under the given names (`[c, d, p, q]`).
    pub fn add_context(&mut self, name: &str, refs: [&str; 4], ctx: &MoritaContext) {
        let [c, d, p, q] = refs;
        let spec = ContextSpec {
            c: c.into(),
            d: d.into(),
            p: p.into(),
            q: q.into(),
            to_c: pair_entries(&ctx.to_c, &ctx.p, &ctx.q, &labels(ctx.c.basis())),
            to_d: pair_entries(&ctx.to_d, &ctx.q, &ctx.p, &labels(ctx.d.basis())),
            max_degree: ctx.max_degree,
            levels: ctx.levels,
        };
        self.contexts.insert(name.into(), spec);
    }

    /// Add a certificate together with its comodules and bicomodules, which
    /// are registered as `<name>.T`, `<name>.add<i>` and `<name>.inj<i>`;
    /// `c` and `d` name registered coalgebras.
    pub fn add_certificate(&mut self, name: &str, c: &str, d: &str, cert: &CotiltingCertificate) {
        let t = format!("{name}.T");
        self.add_bicomodule(&t, d, c, &cert.t);
        let tl = labels(cert.t.basis());
        let coend = |x: &DGCoalgebra, ws: &[Matrix]| -> BTreeMap<String, Vec<CellEntry>> {
            (0..x.dim()).map(|k| (x.label(k).to_string(), cells(&ws[k], &tl, &tl))).collect()
        };
        let d_labels = labels(cert.d.basis());
        let power = |copies: usize, base: &[String]| -> Vec<String> {
            (0..copies).flat_map(|k| base.iter().map(move |l| format!("{k}:{l}"))).collect()
        };
        let split = |x: &[String], s: &Splitting, base: &[String]| {
            let pw = power(s.copies, base);
            SplittingSpec {
                copies: s.copies,
                section: entries(&s.section, x, &pw),
                projection: entries(&s.projection, &pw, x),
            }
        };

        let mut add = AddSpec { terms: vec![], maps: vec![], splittings: vec![] };
        for (i, term) in cert.add.terms.iter().enumerate() {
            let n = format!("{name}.add{i}");
            self.add_comodule(&n, d, term);
            add.terms.push(n);
            let src = labels(term.basis());
            add.splittings.push(split(&src, &cert.add.splittings[i], &tl));
            if let Some(m) = cert.add.maps.get(i) {
                let tgt = if i == 0 { d_labels.clone() } else { labels(cert.add.terms[i - 1].basis()) };
                add.maps.push(m.as_ref().map(|m| entries(m, &src, &tgt)));
            }
        }
        let mut inj = InjectiveSpec { terms: vec![], maps: vec![], embeddings: vec![] };
        for (i, term) in cert.injective.terms.iter().enumerate() {
            let n = format!("{name}.inj{i}");
            self.add_bicomodule(&n, d, c, term);
            inj.terms.push(n);
            let tgt = labels(term.basis());
            inj.embeddings.push(split(&tgt, &cert.injective.embeddings[i], &d_labels));
            if let Some(m) = cert.injective.maps.get(i) {
                let src = if i == 0 { tl.clone() } else { labels(cert.injective.terms[i - 1].basis()) };
                inj.maps.push(m.as_ref().map(|m| entries(m, &src, &tgt)));
            }
        }
        let spec = CertificateSpec {
            c: c.into(),
            d: d.into(),
            t,
            coend_c: coend(&cert.c, &cert.coend_c),
            coend_d: coend(&cert.d, &cert.coend_d),
            ext_bound: cert.ext_bound,
            add,
            injective: inj,
        };
        self.certificates.insert(name.into(), spec);
    }
}

fn labels(b: &[BasisElement]) -> Vec<String> {
    b.iter().map(|e| e.label.clone()).collect()
}

fn entries(m: &Matrix, from: &[String], to: &[String]) -> Vec<Entry> {
    let mut out = Vec::new();
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let x = m.get(i, j);
            if !x.is_zero() {
                out.push(Entry { from: from[j].clone(), to: to[i].clone(), coeff: x.to_string() });
            }
        }
    }
    out
}

fn cells(m: &Matrix, rows: &[String], cols: &[String]) -> Vec<CellEntry> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = m.get(i, j);
            if !x.is_zero() {
                out.push(CellEntry { row: rows[i].clone(), col: cols[j].clone(), coeff: x.to_string() });
            }
        }
    }
    out
}

fn pair_entries(m: &Matrix, x: &Bicomodule, y: &Bicomodule, to: &[String]) -> Vec<PairEntry> {
    let mut out = Vec::new();
    for i in 0..x.dim() {
        for j in 0..y.dim() {
            for r in 0..m.rows() {
                let v = m.get(r, i * y.dim() + j);
                if !v.is_zero() {
                    out.push(PairEntry {
                        from: [x.label(i).to_string(), y.label(j).to_string()],
                        to: to[r].clone(),
                        coeff: v.to_string(),
                    });
                }
            }
        }
    }
    out
}

fn diff_terms(b: &[BasisElement], d: impl Fn(usize) -> Terms) -> Vec<DiffTerm> {
    let mut out = Vec::new();
    for (i, e) in b.iter().enumerate() {
        for (t, x) in d(i) {
            out.push(DiffTerm { on: e.label.clone(), to: b[t].label.clone(), coeff: x.to_string() });
        }
    }
    out
}

fn coaction_terms(over: &DGCoalgebra, b: &[BasisElement], rho: impl Fn(usize) -> Terms2) -> Vec<CoactionTerm> {
    let mut out = Vec::new();
    for (i, e) in b.iter().enumerate() {
        for (c, m, x) in rho(i) {
            out.push(CoactionTerm { on: e.label.clone(), c: over.label(c).into(), m: b[m].label.clone(), coeff: x.to_string() });
        }
    }
    out
}

pub fn coalgebra_spec(c: &DGCoalgebra) -> CoalgebraSpec {
    let b = c.basis();
    let mut comultiplication = Vec::new();
    for (i, e) in b.iter().enumerate() {
        for (l, r, x) in c.delta(i) {
            comultiplication.push(ComultTerm {
                on: e.label.clone(),
                left: b[*l].label.clone(),
                right: b[*r].label.clone(),
                coeff: x.to_string(),
            });
        }
    }
    let counit = (0..c.dim()).filter(|&i| !c.eps(i).is_zero()).map(|i| (b[i].label.clone(), c.eps(i).to_string())).collect();
    CoalgebraSpec { basis: b.to_vec(), comultiplication, counit, differential: diff_terms(b, |i| c.d(i).clone()) }
}

pub fn comodule_spec(over: &str, m: &DGComodule) -> ComoduleSpec {
    let b = m.basis();
    ComoduleSpec {
        side: m.side(),
        over: over.into(),
        basis: b.to_vec(),
        coaction: coaction_terms(m.over(), b, |i| m.rho(i).clone()),
        differential: diff_terms(b, |i| m.d(i).clone()),
    }
}

pub fn bicomodule_spec(left_over: &str, right_over: &str, m: &Bicomodule) -> BicomoduleSpec {
    let b = m.basis();
    BicomoduleSpec {
        left_over: left_over.into(),
        right_over: right_over.into(),
        basis: b.to_vec(),
        left: coaction_terms(m.left_over(), b, |i| m.rho_left(i).clone()),
        right: coaction_terms(m.right_over(), b, |i| m.rho_right(i).clone()),
        differential: diff_terms(b, |i| m.d(i).clone()),
    }
}

/// The resolved objects of a document.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub field: Field,
    pub coalgebras: BTreeMap<String, DGCoalgebra>,
    pub comodules: BTreeMap<String, DGComodule>,
    pub bicomodules: BTreeMap<String, Bicomodule>,
    pub morphisms: BTreeMap<String, CoalgebraMorphism>,
    pub contexts: BTreeMap<String, MoritaContext>,
    pub certificates: BTreeMap<String, CotiltingCertificate>,
}

struct Labels<'a> {
    what: String,
    basis: &'a [BasisElement],
}

impl Labels<'_> {
    fn index(&self, l: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b.label == l)
            .ok_or_else(|| Error::Unresolved(format!("basis label `{l}` in {}", self.what)))
    }
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str, user: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| Error::Unresolved(format!("{kind} `{name}` referenced by {user}")))
}

fn matrix_from(f: Field, e: &[Entry], from: &Labels, to: &Labels) -> Result<Matrix> {
    let mut m = Matrix::zeros(f, to.basis.len(), from.basis.len());
    for x in e {
        m.add_to(to.index(&x.to)?, from.index(&x.from)?, &f.parse(&x.coeff)?);
    }
    Ok(m)
}

fn parse_diff(f: Field, l: &Labels, d: &[DiffTerm]) -> Result<Vec<Terms>> {
    let mut out = vec![Vec::new(); l.basis.len()];
    for t in d {
        out[l.index(&t.on)?].push((l.index(&t.to)?, f.parse(&t.coeff)?));
    }
    Ok(out)
}

fn parse_coaction(f: Field, over: &Labels, l: &Labels, terms: &[CoactionTerm]) -> Result<Vec<Terms2>> {
    let mut out = vec![Vec::new(); l.basis.len()];
    for t in terms {
        out[l.index(&t.on)?].push((over.index(&t.c)?, l.index(&t.m)?, f.parse(&t.coeff)?));
    }
    Ok(out)
}

fn parse_coalgebra(f: Field, name: &str, s: &CoalgebraSpec) -> Result<DGCoalgebra> {
    let l = Labels { what: format!("coalgebra `{name}`"), basis: &s.basis };
    let mut comult = vec![Vec::new(); s.basis.len()];
    for t in &s.comultiplication {
        comult[l.index(&t.on)?].push((l.index(&t.left)?, l.index(&t.right)?, f.parse(&t.coeff)?));
    }
    let mut counit = vec![f.zero(); s.basis.len()];
    for (k, v) in &s.counit {
        counit[l.index(k)?] = f.parse(v)?;
    }
    DGCoalgebra::new(f, s.basis.clone(), comult, counit, parse_diff(f, &l, &s.differential)?)
}

fn power_labels(copies: usize, base: &[BasisElement]) -> Vec<BasisElement> {
    (0..copies)
        .flat_map(|k| base.iter().map(move |b| BasisElement { label: format!("{k}:{}", b.label), degree: b.degree }))
        .collect()
}

fn parse_splitting(f: Field, what: &str, x: &[BasisElement], base: &[BasisElement], s: &SplittingSpec) -> Result<Splitting> {
    let pw = power_labels(s.copies, base);
    let xl = Labels { what: what.to_string(), basis: x };
    let pl = Labels { what: format!("{what} (power)"), basis: &pw };
    Ok(Splitting {
        copies: s.copies,
        section: matrix_from(f, &s.section, &xl, &pl)?,
        projection: matrix_from(f, &s.projection, &pl, &xl)?,
    })
}

impl Fixture {
    /// Resolve every named object; `field` overrides the document's field.
    pub fn resolve(doc: &FixtureDocument, field: Option<Field>) -> Result<Fixture> {
        let f = field.unwrap_or(doc.field);
        if let Field::Prime(p) = f {
            Field::prime(p)?;
        }
        let mut coalgebras = BTreeMap::new();
        for (name, s) in &doc.coalgebras {
            coalgebras.insert(name.clone(), parse_coalgebra(f, name, s)?);
        }
        let mut comodules = BTreeMap::new();
        for (name, s) in &doc.comodules {
            let over = lookup(&coalgebras, "coalgebra", &s.over, &format!("comodule `{name}`"))?;
            let l = Labels { what: format!("comodule `{name}`"), basis: &s.basis };
            let ol = Labels { what: format!("coalgebra `{}`", s.over), basis: over.basis() };
            let m = DGComodule::new(
                s.side,
                over.clone(),
                s.basis.clone(),
                parse_coaction(f, &ol, &l, &s.coaction)?,
                parse_diff(f, &l, &s.differential)?,
            )?;
            comodules.insert(name.clone(), m);
        }
        let mut bicomodules = BTreeMap::new();
        for (name, s) in &doc.bicomodules {
            let user = format!("bicomodule `{name}`");
            let lo = lookup(&coalgebras, "coalgebra", &s.left_over, &user)?;
            let ro = lookup(&coalgebras, "coalgebra", &s.right_over, &user)?;
            let l = Labels { what: user.clone(), basis: &s.basis };
            let ll = Labels { what: format!("coalgebra `{}`", s.left_over), basis: lo.basis() };
            let rl = Labels { what: format!("coalgebra `{}`", s.right_over), basis: ro.basis() };
            let m = Bicomodule::new(
                lo.clone(),
                ro.clone(),
                s.basis.clone(),
                parse_coaction(f, &ll, &l, &s.left)?,
                parse_coaction(f, &rl, &l, &s.right)?,
                parse_diff(f, &l, &s.differential)?,
            )?;
            bicomodules.insert(name.clone(), m);
        }
        let mut morphisms = BTreeMap::new();
        for (name, s) in &doc.morphisms {
            let user = format!("morphism `{name}`");
            let src = lookup(&coalgebras, "coalgebra", &s.source, &user)?;
            let tgt = lookup(&coalgebras, "coalgebra", &s.target, &user)?;
            let m = matrix_from(
                f,
                &s.entries,
                &Labels { what: format!("coalgebra `{}`", s.source), basis: src.basis() },
                &Labels { what: format!("coalgebra `{}`", s.target), basis: tgt.basis() },
            )?;
            morphisms.insert(name.clone(), CoalgebraMorphism::new(src.clone(), tgt.clone(), m)?);
        }
        let mut contexts = BTreeMap::new();
        for (name, s) in &doc.contexts {
            let user = format!("context `{name}`");
            let c = lookup(&coalgebras, "coalgebra", &s.c, &user)?;
            let d = lookup(&coalgebras, "coalgebra", &s.d, &user)?;
            let p = lookup(&bicomodules, "bicomodule", &s.p, &user)?;
            let q = lookup(&bicomodules, "bicomodule", &s.q, &user)?;
            let pair = |e: &[PairEntry], x: &Bicomodule, y: &Bicomodule, z: &DGCoalgebra, zn: &str| -> Result<Matrix> {
                let (xl, yl) = (Labels { what: user.clone(), basis: x.basis() }, Labels { what: user.clone(), basis: y.basis() });
                let zl = Labels { what: format!("coalgebra `{zn}`"), basis: z.basis() };
                let mut m = Matrix::zeros(f, z.dim(), x.dim() * y.dim());
                for t in e {
                    let col = xl.index(&t.from[0])? * y.dim() + yl.index(&t.from[1])?;
                    m.add_to(zl.index(&t.to)?, col, &f.parse(&t.coeff)?);
                }
                Ok(m)
            };
            let ctx = MoritaContext {
                c: c.clone(),
                d: d.clone(),
                p: p.clone(),
                q: q.clone(),
                to_c: pair(&s.to_c, p, q, c, &s.c)?,
                to_d: pair(&s.to_d, q, p, d, &s.d)?,
                max_degree: s.max_degree,
                levels: s.levels,
            };
            contexts.insert(name.clone(), ctx);
        }
        let mut certificates = BTreeMap::new();
        for (name, s) in &doc.certificates {
            let user = format!("certificate `{name}`");
            let c = lookup(&coalgebras, "coalgebra", &s.c, &user)?;
            let d = lookup(&coalgebras, "coalgebra", &s.d, &user)?;
            let t = lookup(&bicomodules, "bicomodule", &s.t, &user)?;
            let tl = Labels { what: format!("bicomodule `{}`", s.t), basis: t.basis() };
            let coend = |x: &DGCoalgebra, w: &BTreeMap<String, Vec<CellEntry>>, xn: &str| -> Result<Vec<Matrix>> {
                let xl = Labels { what: format!("coalgebra `{xn}`"), basis: x.basis() };
                let mut out = vec![Matrix::zeros(f, t.dim(), t.dim()); x.dim()];
                for (k, cells) in w {
                    let m = &mut out[xl.index(k)?];
                    for e in cells {
                        m.add_to(tl.index(&e.row)?, tl.index(&e.col)?, &f.parse(&e.coeff)?);
                    }
                }
                Ok(out)
            };
            let add_terms = s
                .add
                .terms
                .iter()
                .map(|n| lookup(&comodules, "comodule", n, &user).cloned())
                .collect::<Result<Vec<_>>>()?;
            let mut add_maps = Vec::new();
            for (i, m) in s.add.maps.iter().enumerate() {
                let src = add_terms.get(i).ok_or_else(|| Error::InvalidArgument(format!("{user}: more Add(T) maps than terms")))?;
                let tgt = if i == 0 { d.basis() } else { add_terms[i - 1].basis() };
                add_maps.push(match m {
                    None => None,
                    Some(e) => Some(matrix_from(
                        f,
                        e,
                        &Labels { what: format!("{user}, Add(T) term {i}"), basis: src.basis() },
                        &Labels { what: format!("{user}, Add(T) target of map {i}"), basis: tgt },
                    )?),
                });
            }
            let splittings = s
                .add
                .splittings
                .iter()
                .zip(&add_terms)
                .enumerate()
                .map(|(i, (sp, x))| parse_splitting(f, &format!("{user}, Add(T) term {i}"), x.basis(), t.basis(), sp))
                .collect::<Result<Vec<_>>>()?;
            let inj_terms = s
                .injective
                .terms
                .iter()
                .map(|n| lookup(&bicomodules, "bicomodule", n, &user).cloned())
                .collect::<Result<Vec<_>>>()?;
            let mut inj_maps = Vec::new();
            for (i, m) in s.injective.maps.iter().enumerate() {
                let tgt = inj_terms.get(i).ok_or_else(|| Error::InvalidArgument(format!("{user}: more injective maps than terms")))?;
                let src = if i == 0 { t.basis() } else { inj_terms[i - 1].basis() };
                inj_maps.push(match m {
                    None => None,
                    Some(e) => Some(matrix_from(
                        f,
                        e,
                        &Labels { what: format!("{user}, source of injective map {i}"), basis: src },
                        &Labels { what: format!("{user}, injective term {i}"), basis: tgt.basis() },
                    )?),
                });
            }
            let embeddings = s
                .injective
                .embeddings
                .iter()
                .zip(&inj_terms)
                .enumerate()
                .map(|(i, (sp, x))| parse_splitting(f, &format!("{user}, injective term {i}"), x.basis(), d.basis(), sp))
                .collect::<Result<Vec<_>>>()?;
            let cert = CotiltingCertificate {
                c: c.clone(),
                d: d.clone(),
                t: t.clone(),
                coend_c: coend(c, &s.coend_c, &s.c)?,
                coend_d: coend(d, &s.coend_d, &s.d)?,
                ext_bound: s.ext_bound,
                add: AddCoresolution { terms: add_terms, maps: add_maps, splittings },
                injective: InjectiveResolution { terms: inj_terms, maps: inj_maps, embeddings },
            };
            certificates.insert(name.clone(), cert);
        }
        Ok(Fixture { field: f, coalgebras, comodules, bicomodules, morphisms, contexts, certificates })
    }

    pub fn load(path: &Path, field: Option<Field>) -> Result<Fixture> {
        Self::resolve(&FixtureDocument::read(path)?, field)
    }

    /// The only coalgebra of the document, or the one named `name`.
    pub fn coalgebra(&self, name: Option<&str>) -> Result<&DGCoalgebra> {
        pick(&self.coalgebras, "coalgebra", name)
    }
}

pub(crate) fn pick<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: Option<&str>) -> Result<&'a T> {
    match name {
        Some(n) => lookup(map, kind, n, "the command line"),
        None if map.len() == 1 => Ok(map.values().next().expect("one entry")),
        None if map.is_empty() => Err(Error::Unresolved(format!("the document has no {kind}"))),
        None => Err(Error::InvalidArgument(format!(
            "the document has several {kind}s ({}); pick one by name",
            map.keys().cloned().collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// The bundled fixture library, keyed by file stem.
pub fn bundled_documents(f: Field) -> Result<BTreeMap<&'static str, FixtureDocument>> {
    use crate::fixtures::*;
    let mut out = BTreeMap::new();
    let single = |name: &str, c: &DGCoalgebra| {
        let mut doc = FixtureDocument::new(f);
        doc.add_coalgebra(name, c);
        doc
    };
    out.insert("trivial", single("k", &trivial(f)));
    out.insert("group_likes", single("k3", &group_likes(f, 3)));
    out.insert("divided_powers", single("divided", &divided_powers(f, 2)));
    out.insert("matrix_coalgebra", single("M2", &matrix_coalgebra(f, 2)));
    out.insert("exterior", single("exterior", &exterior(f)));
    out.insert("broken_counit", single("broken", &broken_counit(f)));

    for (stem, target) in [("acyclic_extension", acyclic_extension(f)), ("sabotaged_extension", sabotaged_extension(f))] {
        let mut doc = FixtureDocument::new(f);
        let inc = extension_inclusion(f, &target)?;
        doc.add_coalgebra("k", &inc.source);
        doc.add_coalgebra("D", &target);
        doc.add_morphism("inclusion", "k", "D", &inc);
        if stem == "acyclic_extension" {
            let ctx = morphism_context(&inc, 3)?;
            doc.add_bicomodule("C_f", "k", "D", &ctx.p);
            doc.add_bicomodule("fC", "D", "k", &ctx.q);
            doc.add_context("restriction", ["k", "D", "C_f", "fC"], &ctx);
        }
        out.insert(stem, doc);
    }

    let c = divided_powers(f, 2);
    let mut doc = FixtureDocument::new(f);
    doc.add_coalgebra("C", &c);
    let ctx = identity_context(&c, 3);
    doc.add_bicomodule("C_reg", "C", "C", &ctx.p);
    doc.add_context("identity", ["C", "C", "C_reg", "C_reg"], &ctx);
    out.insert("identity_context", doc);

    let mut doc = FixtureDocument::new(f);
    doc.add_coalgebra("C", &c);
    doc.add_certificate("identity", "C", "C", &identity_certificate(&c)?);
    out.insert("identity_certificate", doc);

    let cert = morita_takeuchi_certificate(f)?;
    let mut doc = FixtureDocument::new(f);
    doc.add_coalgebra("k", &cert.c);
    doc.add_coalgebra("M2", &cert.d);
    doc.add_certificate("morita_takeuchi", "k", "M2", &cert);
    out.insert("morita_takeuchi", doc);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_document_parses_and_validates() {
        let text = r#"{
            "field": "Q",
            "coalgebras": {
                "k": {
                    "basis": [{"label": "g", "degree": 0}],
                    "comultiplication": [{"on": "g", "left": "g", "right": "g", "coeff": "1"}],
                    "counit": {"g": "1"}
                }
            }
        }"#;
        let fx = Fixture::resolve(&FixtureDocument::from_json(text).unwrap(), None).unwrap();
        let k = fx.coalgebra(None).unwrap();
        assert!(k.validate().is_valid());
        assert_eq!(k, &fixtures::trivial(Field::Rational));
    }

    #[test]
    fn dangling_reference_is_named() {
        let text = r#"{
            "field": {"Fp": 5},
            "coalgebras": {"k": {"basis": [{"label": "g", "degree": 0}],
                "comultiplication": [{"on": "g", "left": "g", "right": "g", "coeff": "1"}],
                "counit": {"g": "1"}}},
            "comodules": {"M": {"side": "left", "over": "kk", "basis": [], "coaction": []}}
        }"#;
        let err = Fixture::resolve(&FixtureDocument::from_json(text).unwrap(), None).unwrap_err();
        assert!(matches!(&err, Error::Unresolved(m) if m.contains("`kk`") && m.contains("`M`")), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = FixtureDocument::from_json("{\n  \"field\": \"Q\",\n  oops\n}").unwrap_err();
        assert!(matches!(&err, Error::Parse(m) if m.starts_with("line 3")), "{err}");
        let err = FixtureDocument::from_json(r#"{"field": "Q", "colagebras": {}}"#).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn bad_coefficient_is_rejected() {
        let mut doc = FixtureDocument::new(Field::Rational);
        doc.add_coalgebra("k", &fixtures::trivial(Field::Rational));
        doc.coalgebras.get_mut("k").unwrap().counit.insert("g".into(), "1/0".into());
        assert!(matches!(Fixture::resolve(&doc, None), Err(Error::BadCoefficient(_))));
    }

    #[test]
    fn bundled_documents_round_trip() {
        for f in [Field::Rational, Field::Prime(5)] {
            for (stem, doc) in bundled_documents(f).unwrap() {
                let text = doc.to_json();
                let again = FixtureDocument::from_json(&text).unwrap();
                assert_eq!(again, doc, "{stem}");
                assert_eq!(again.to_json(), text, "{stem}");
                Fixture::resolve(&again, None).unwrap_or_else(|e| panic!("{stem}: {e}"));
            }
        }
    }

    #[test]
    fn certificates_survive_serialization() {
        let f = Field::Rational;
        let docs = bundled_documents(f).unwrap();
        let fx = Fixture::resolve(&docs["morita_takeuchi"], None).unwrap();
        assert_eq!(fx.certificates["morita_takeuchi"], fixtures::morita_takeuchi_certificate(f).unwrap());
        let fx = Fixture::resolve(&docs["identity_certificate"], None).unwrap();
        assert_eq!(fx.certificates["identity"], fixtures::identity_certificate(&fixtures::divided_powers(f, 2)).unwrap());
        let fx = Fixture::resolve(&docs["acyclic_extension"], None).unwrap();
        let inc = fixtures::extension_inclusion(f, &fixtures::acyclic_extension(f)).unwrap();
        assert_eq!(fx.contexts["restriction"], fixtures::morphism_context(&inc, 3).unwrap());
    }

    #[test]
    fn field_override() {
        let docs = bundled_documents(Field::Rational).unwrap();
        let fx = Fixture::resolve(&docs["divided_powers"], Some(Field::Prime(3))).unwrap();
        assert_eq!(fx.coalgebra(None).unwrap(), &fixtures::divided_powers(Field::Prime(3), 2));
        assert!(matches!(Fixture::resolve(&docs["trivial"], Some(Field::Prime(4))), Err(Error::InvalidField(_))));
    }
}
