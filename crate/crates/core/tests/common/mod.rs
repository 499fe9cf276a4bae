#![allow(dead_code)]

pub mod oracle;

use std::collections::BTreeMap;
use std::path::PathBuf;

use dgcoh::coalgebra::{BasisElement, DGCoalgebra};
use dgcoh::complex::GradedSpace;
use dgcoh::fixture::Fixture;
use dgcoh::fixtures::*;
use dgcoh::{ChainComplex, ChainMap, Field, Matrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `g` plus a primitive `x` in the given degree.
pub fn primitive(f: Field, degree: i32) -> DGCoalgebra {
    DGCoalgebra::new(
        f,
        vec![BasisElement { label: "g".into(), degree: 0 }, BasisElement { label: "x".into(), degree }],
        vec![vec![(0, 0, f.one())], vec![(0, 1, f.one()), (1, 0, f.one())]],
        vec![f.one(), f.zero()],
        vec![vec![], vec![]],
    )
    .unwrap()
}

/// Divided powers on a generator of degree 1: `Δy = g⊗y + x⊗x + y⊗g`.
pub fn graded_divided(f: Field) -> DGCoalgebra {
    let b = |l: &str, d| BasisElement { label: l.into(), degree: d };
    DGCoalgebra::new(
        f,
        vec![b("g", 0), b("x", 1), b("y", 2)],
        vec![
            vec![(0, 0, f.one())],
            vec![(0, 1, f.one()), (1, 0, f.one())],
            vec![(0, 2, f.one()), (1, 1, f.one()), (2, 0, f.one())],
        ],
        vec![f.one(), f.zero(), f.zero()],
        vec![vec![]; 3],
    )
    .unwrap()
}

fn blocks(f: Field) -> Vec<DGCoalgebra> {
    vec![
        trivial(f),
        primitive(f, 0),
        primitive(f, 1),
        primitive(f, 2),
        divided_powers(f, 3),
        graded_divided(f),
        acyclic_extension(f),
        sabotaged_extension(f),
        matrix_coalgebra(f, 2),
    ]
}

/// Random degree-preserving invertible matrix with small entries.
pub fn random_change(rng: &mut ChaCha8Rng, c: &DGCoalgebra) -> Matrix {
    let f = c.field();
    let n = c.dim();
    loop {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if c.degree(i) == c.degree(j) { f.int(rng.gen_range(-2..=2)) } else { f.zero() }).collect())
            .collect();
        let p = Matrix::from_rows(f, rows, n).unwrap();
        if p.rank() == n {
            return p;
        }
    }
}

/// A random valid dg coalgebra of total dimension at most `max_dim`: a block
/// sum of small pieces, rewritten in a random basis.
pub fn random_coalgebra(rng: &mut ChaCha8Rng, f: Field, max_dim: usize) -> DGCoalgebra {
    random_from(rng, blocks(f), max_dim)
}

/// As [`random_coalgebra`], with every block in degree zero.
pub fn random_concentrated(rng: &mut ChaCha8Rng, f: Field, max_dim: usize) -> DGCoalgebra {
    random_from(rng, blocks(f).into_iter().filter(|b| b.is_concentrated()).collect(), max_dim)
}

fn random_from(rng: &mut ChaCha8Rng, pool: Vec<DGCoalgebra>, max_dim: usize) -> DGCoalgebra {
    let mut parts: Vec<DGCoalgebra> = Vec::new();
    let mut dim = 0;
    loop {
        let fits: Vec<&DGCoalgebra> = pool.iter().filter(|b| dim + b.dim() <= max_dim).collect();
        if fits.is_empty() || (!parts.is_empty() && rng.gen_bool(0.4)) {
            break;
        }
        let b = fits.choose(rng).unwrap().relabel(&format!("b{}_", parts.len()));
        dim += b.dim();
        parts.push(b);
    }
    let sum = parts.iter().skip(1).fold(parts[0].clone(), |acc, b| acc.direct_sum(b).unwrap());
    let p = random_unimodular(rng, &sum);
    sum.change_basis(&p).unwrap()
}

/// A degree-preserving integer matrix of determinant ±1: a few random column
/// operations and sign changes applied to the identity.
pub fn random_unimodular(rng: &mut ChaCha8Rng, c: &DGCoalgebra) -> Matrix {
    let f = c.field();
    let n = c.dim();
    let mut p = Matrix::identity(f, n);
    for _ in 0..n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j && c.degree(i) == c.degree(j) {
            let k = f.int(*[-2, -1, 1, 2].choose(rng).unwrap());
            for r in 0..n {
                let x = p.get(r, j) + &(p.get(r, i) * &k);
                p.set(r, j, x);
            }
        }
        if rng.gen_bool(0.3) {
            for r in 0..n {
                let x = -p.get(r, i);
                p.set(r, i, x);
            }
        }
    }
    p
}

pub fn random_matrix(rng: &mut ChaCha8Rng, f: Field, rows: usize, cols: usize) -> Matrix {
    let entries = (0..rows).map(|_| (0..cols).map(|_| f.int(rng.gen_range(-2..=2))).collect()).collect();
    Matrix::from_rows(f, entries, cols).unwrap()
}

/// A random bounded complex in degrees `0..dims.len()`, each differential a
/// random combination of the rows annihilating the previous one.
pub fn random_complex(rng: &mut ChaCha8Rng, f: Field, dims: &[usize]) -> ChainComplex {
    let space = GradedSpace::new(dims.iter().enumerate().map(|(n, &d)| (n as i32, d)));
    let mut diff = BTreeMap::new();
    let mut prev: Option<Matrix> = None;
    for n in 0..dims.len().saturating_sub(1) {
        let d = match &prev {
            None => random_matrix(rng, f, dims[n + 1], dims[n]),
            Some(p) => {
                let k = p.transpose().kernel_basis();
                if k.cols() == 0 {
                    Matrix::zeros(f, dims[n + 1], dims[n])
                } else {
                    random_matrix(rng, f, dims[n + 1], k.cols()).mul(&k.transpose())
                }
            }
        };
        diff.insert(n as i32, d.clone());
        prev = Some(d);
    }
    ChainComplex::new(f, space, diff).unwrap()
}

/// `λ·id + (d s + s d)` for a random degree −1 map `s`.
pub fn homotopic_to_scalar(rng: &mut ChaCha8Rng, x: &ChainComplex, lambda: i64) -> (ChainMap, ChainMap) {
    let f = x.field();
    let (lo, hi) = x.support().unwrap_or((0, 0));
    let s: BTreeMap<i32, Matrix> = (lo..=hi + 1).map(|n| (n, random_matrix(rng, f, x.dim(n - 1), x.dim(n)))).collect();
    let comps = (lo..=hi)
        .map(|n| {
            let ds = x.d(n - 1).mul(&s[&n]);
            let sd = s[&(n + 1)].mul(&x.d(n));
            (n, Matrix::identity(f, x.dim(n)).scale(&f.int(lambda)).add(&ds).add(&sd))
        })
        .collect();
    let scalar = (lo..=hi).map(|n| (n, Matrix::identity(f, x.dim(n)).scale(&f.int(lambda)))).collect();
    (ChainMap::new(x.clone(), x.clone(), comps).unwrap(), ChainMap::new(x.clone(), x.clone(), scalar).unwrap())
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(stem: &str) -> String {
    fixture_dir().join(format!("{stem}.json")).display().to_string()
}

/// Every bundled fixture file, sorted.
pub fn fixture_files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    v
}

/// Every subcommand against one fixture file, in JSON mode, with each
/// coalgebra and morphism of the file named in turn.
pub fn invocations(path: &std::path::Path) -> Vec<Vec<String>> {
    let file = path.display().to_string();
    let fx = Fixture::load(path, None).ok();
    let coalgebras: Vec<String> = fx.as_ref().map(|f| f.coalgebras.keys().cloned().collect()).unwrap_or_default();
    let morphisms: Vec<String> = fx.as_ref().map(|f| f.morphisms.keys().cloned().collect()).unwrap_or_default();
    let cmd = |rest: &[&str]| {
        let mut v = vec!["dgcoh".to_string(), "--format".into(), "json".into()];
        v.extend(rest.iter().map(|s| s.to_string()));
        v.push(file.clone());
        v
    };
    let mut out = vec![cmd(&["validate"]), cmd(&["check-morita"]), cmd(&["check-cotilting", "--max-degree", "2"])];
    for c in &coalgebras {
        for theory in ["hoch", "h", "hc"] {
            out.push(cmd(&["cohomology", "--theory", theory, "--max-degree", "2", "--coalgebra", c]));
        }
        out.push(cmd(&["operators", "--arity", "2", "--check", "--coalgebra", c]));
    }
    for m in &morphisms {
        out.push(cmd(&["check-qiso", "--map", m, "--max-degree", "2"]));
    }
    out
}
