//! Small coalgebras used throughout the examples, tests and bundled fixture
//! files.

use crate::coalgebra::{BasisElement, CoalgebraMorphism, DGCoalgebra};
use crate::comodule::{direct_sum, Bicomodule, DGComodule, Side};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::invariance::{
    AddCoresolution, CotiltingCertificate, InjectiveResolution, MoritaContext, Splitting, DEFAULT_EXT_BOUND,
};
use crate::linalg::Matrix;

fn el(label: impl Into<String>, degree: i32) -> BasisElement {
    BasisElement { label: label.into(), degree }
}

/// The ground field as a coalgebra: one group-like element `g`.
pub fn trivial(f: Field) -> DGCoalgebra {
    group_likes(f, 1)
}

/// `k^n`: group-like elements `g1, …, gn`.
pub fn group_likes(f: Field, n: usize) -> DGCoalgebra {
    let basis = if n == 1 { vec![el("g", 0)] } else { (1..=n).map(|i| el(format!("g{i}"), 0)).collect() };
    DGCoalgebra::new(
        f,
        basis,
        (0..n).map(|i| vec![(i, i, f.one())]).collect(),
        vec![f.one(); n],
        vec![vec![]; n],
    )
    .expect("well-formed")
}

/// Divided powers `c0, …, c(n−1)` in degree zero, `Δ(c_k) = Σ_{i+j=k} c_i ⊗ c_j`.
pub fn divided_powers(f: Field, n: usize) -> DGCoalgebra {
    DGCoalgebra::new(
        f,
        (0..n).map(|i| el(format!("c{i}"), 0)).collect(),
        (0..n).map(|k| (0..=k).map(|i| (i, k - i, f.one())).collect()).collect(),
        (0..n).map(|i| if i == 0 { f.one() } else { f.zero() }).collect(),
        vec![vec![]; n],
    )
    .expect("well-formed")
}

/// The matrix coalgebra `M_n(k)^c`: `Δ(e_ij) = Σ_k e_ik ⊗ e_kj`, `ε(e_ij) = δ_ij`.
pub fn matrix_coalgebra(f: Field, n: usize) -> DGCoalgebra {
    let idx = |i: usize, j: usize| i * n + j;
    DGCoalgebra::new(
        f,
        (0..n * n).map(|r| el(format!("e{}{}", r / n + 1, r % n + 1), 0)).collect(),
        (0..n * n).map(|r| (0..n).map(|k| (idx(r / n, k), idx(k, r % n), f.one())).collect()).collect(),
        (0..n * n).map(|r| if r / n == r % n { f.one() } else { f.zero() }).collect(),
        vec![vec![]; n * n],
    )
    .expect("well-formed")
}

/// The exterior coalgebra: `g` in degree 0 and a primitive `x` in degree 1.
pub fn exterior(f: Field) -> DGCoalgebra {
    DGCoalgebra::new(
        f,
        vec![el("g", 0), el("x", 1)],
        vec![vec![(0, 0, f.one())], vec![(0, 1, f.one()), (1, 0, f.one())]],
        vec![f.one(), f.zero()],
        vec![vec![], vec![]],
    )
    .expect("well-formed")
}

fn extension(f: Field, du: bool) -> DGCoalgebra {
    DGCoalgebra::new(
        f,
        vec![el("g", 0), el("u", 1), el("v", 2)],
        vec![
            vec![(0, 0, f.one())],
            vec![(0, 1, f.one()), (1, 0, f.one())],
            vec![(0, 2, f.one()), (2, 0, f.one())],
        ],
        vec![f.one(), f.zero(), f.zero()],
        vec![vec![], if du { vec![(2, f.one())] } else { vec![] }, vec![]],
    )
    .expect("well-formed")
}

/// `g` in degree 0 with primitives `u`, `v` in degrees 1, 2 and `du = v`;
/// quasi-isomorphic to the ground field.
pub fn acyclic_extension(f: Field) -> DGCoalgebra {
    extension(f, true)
}

/// The same coalgebra with `du = 0`, which is not acyclic.
pub fn sabotaged_extension(f: Field) -> DGCoalgebra {
    extension(f, false)
}

/// The inclusion `k → target`, `g ↦ g`, into either extension.
pub fn extension_inclusion(f: Field, target: &DGCoalgebra) -> Result<CoalgebraMorphism> {
    let mut m = Matrix::zeros(f, target.dim(), 1);
    m.set(0, 0, f.one());
    CoalgebraMorphism::new(trivial(f), target.clone(), m)
}

/// `k²` with the counit of the second group-like set to zero.
pub fn broken_counit(f: Field) -> DGCoalgebra {
    DGCoalgebra::new(
        f,
        vec![el("g1", 0), el("g2", 0)],
        vec![vec![(0, 0, f.one())], vec![(1, 1, f.one())]],
        vec![f.one(), f.zero()],
        vec![vec![], vec![]],
    )
    .expect("well-formed")
}

/// `ε ⊗ 1` as a map `C ⊗ C → C`.
fn counit_left(c: &DGCoalgebra) -> Matrix {
    let n = c.dim();
    Matrix::from_fn(c.field(), n, n * n, |r, col| if col % n == r { c.eps(col / n).clone() } else { c.field().zero() })
}

/// `C = D`, `P = Q = C`, both comparisons `ε ⊗ 1`.
pub fn identity_context(c: &DGCoalgebra, max_degree: i32) -> MoritaContext {
    let r = Bicomodule::regular(c);
    MoritaContext {
        c: c.clone(),
        d: c.clone(),
        p: r.clone(),
        q: r,
        to_c: counit_left(c),
        to_d: counit_left(c),
        max_degree,
        levels: None,
    }
}

/// The context `P = C_f`, `Q = _f C` of a morphism `f: C → D`, with
/// comparisons `ε ⊗ 1` and `f ∘ (ε ⊗ 1)`.
pub fn morphism_context(f: &CoalgebraMorphism, max_degree: i32) -> Result<MoritaContext> {
    let c = &f.source;
    let (l, r) = (DGComodule::regular(c, Side::Left), DGComodule::regular(c, Side::Right));
    let p = Bicomodule::from_sides(&l, &r.corestrict(f)?);
    let q = Bicomodule::from_sides(&l.corestrict(f)?, &r);
    let to_c = counit_left(c);
    Ok(MoritaContext {
        c: c.clone(),
        d: f.target.clone(),
        p,
        q,
        to_d: f.matrix.mul(&to_c),
        to_c,
        max_degree,
        levels: None,
    })
}

fn one_copy(f: Field, n: usize) -> Splitting {
    Splitting { copies: 1, section: Matrix::identity(f, n), projection: Matrix::identity(f, n) }
}

/// `T = C` over `C = D` with identity maps everywhere.
pub fn identity_certificate(c: &DGCoalgebra) -> Result<CotiltingCertificate> {
    if !c.is_concentrated() {
        return Err(Error::NotConcentrated("identity certificate".into()));
    }
    let (f, n) = (c.field(), c.dim());
    // c ↔ (g ↦ ε(g(c)))
    let witnesses: Vec<Matrix> = (0..n)
        .map(|k| Matrix::from_fn(f, n, n, |i, j| if j == k { c.eps(i).clone() } else { f.zero() }))
        .collect();
    let t = Bicomodule::regular(c);
    Ok(CotiltingCertificate {
        c: c.clone(),
        d: c.clone(),
        coend_c: witnesses.clone(),
        coend_d: witnesses,
        ext_bound: DEFAULT_EXT_BOUND,
        add: AddCoresolution {
            terms: vec![t.left_comodule()],
            maps: vec![Some(Matrix::identity(f, n))],
            splittings: vec![one_copy(f, n)],
        },
        injective: InjectiveResolution {
            terms: vec![t.clone()],
            maps: vec![Some(Matrix::identity(f, n))],
            embeddings: vec![one_copy(f, n)],
        },
        t,
    })
}

/// `C = k`, `D = M_2(k)^c` and `T = k²`, the simple `D`-comodule, with
/// `ρ(t_j) = Σ_i e_ji ⊗ t_i`.
pub fn morita_takeuchi_certificate(f: Field) -> Result<CotiltingCertificate> {
    let (c, d) = (trivial(f), matrix_coalgebra(f, 2));
    let idx = |i: usize, j: usize| i * 2 + j;
    let t = Bicomodule::new(
        d.clone(),
        c.clone(),
        vec![el("t1", 0), el("t2", 0)],
        (0..2).map(|j| (0..2).map(|i| (idx(j, i), i, f.one())).collect()).collect(),
        (0..2).map(|j| vec![(0, j, f.one())]).collect(),
        vec![vec![], vec![]],
    )?;
    let unit = |i: usize, j: usize| Matrix::from_fn(f, 2, 2, |r, s| if (r, s) == (i, j) { f.one() } else { f.zero() });
    let tl = t.left_comodule();
    // copy l of T: t_j ↦ e_jl
    let onto_d = Matrix::from_fn(f, 4, 4, |row, col| if row == idx(col % 2, col / 2) { f.one() } else { f.zero() });
    let embed = Matrix::from_fn(f, 4, 2, |row, j| if row == idx(j, 0) { f.one() } else { f.zero() });
    Ok(CotiltingCertificate {
        coend_c: vec![unit(0, 0)],
        coend_d: (0..4).map(|k| unit(k % 2, k / 2)).collect(),
        ext_bound: DEFAULT_EXT_BOUND,
        add: AddCoresolution {
            terms: vec![direct_sum(&[tl.clone(), tl])?],
            maps: vec![Some(onto_d)],
            splittings: vec![Splitting { copies: 2, section: Matrix::identity(f, 4), projection: Matrix::identity(f, 4) }],
        },
        injective: InjectiveResolution {
            terms: vec![t.clone()],
            maps: vec![Some(Matrix::identity(f, 2))],
            embeddings: vec![Splitting { copies: 1, projection: embed.transpose(), section: embed }],
        },
        c,
        d,
        t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_coalgebras_validate() {
        for f in [Field::Rational, Field::Prime(5)] {
            for c in [
                trivial(f),
                group_likes(f, 3),
                divided_powers(f, 3),
                matrix_coalgebra(f, 2),
                exterior(f),
                acyclic_extension(f),
                sabotaged_extension(f),
            ] {
                assert!(c.validate().is_valid(), "{:?}", c.validate());
            }
            let v = broken_counit(f).validate();
            assert!(v.failures.iter().any(|x| x.identity.starts_with("counit")));
        }
    }

    #[test]
    fn inclusion_is_a_morphism() {
        let f = Field::Rational;
        let i = extension_inclusion(f, &acyclic_extension(f)).unwrap();
        assert!(i.validate().is_valid());
    }
}
