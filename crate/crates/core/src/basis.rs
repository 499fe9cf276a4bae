//! Graded bases indexed by arbitrary keys, and assembly of complexes and maps
//! from formulas given on basis elements.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Display;
use std::hash::Hash;

use crate::complex::{ChainComplex, GradedSpace};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

/// A sparse linear combination of basis indices.
pub type Terms = Vec<(usize, Scalar)>;

/// Merge duplicate indices and drop zero coefficients; output is sorted.
pub fn normalize(field: Field, terms: impl IntoIterator<Item = (usize, Scalar)>) -> Terms {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, x) in terms {
        if x.is_zero() {
            continue;
        }
        let e = acc.entry(i).or_insert_with(|| field.zero());
        *e = &*e + &x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Basis elements in a fixed global order, each with a degree. Within a
/// degree, elements keep their global relative order.
#[derive(Clone, Debug)]
pub struct GradedBasis<K> {
    items: Vec<(K, i32)>,
    by_degree: BTreeMap<i32, Vec<usize>>,
    pos: Vec<usize>,
    index: HashMap<K, usize>,
}

impl<K: Clone + Eq + Hash> GradedBasis<K> {
    pub fn new(items: Vec<(K, i32)>) -> Result<Self> {
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        let mut pos = Vec::with_capacity(items.len());
        let mut index = HashMap::with_capacity(items.len());
        for (i, (k, deg)) in items.iter().enumerate() {
            if index.insert(k.clone(), i).is_some() {
                return Err(Error::InvalidStructure("duplicate basis element".into()));
            }
            let list = by_degree.entry(*deg).or_default();
            pos.push(list.len());
            list.push(i);
        }
        Ok(GradedBasis { items, by_degree, pos, index })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn key(&self, i: usize) -> &K {
        &self.items[i].0
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.items[i].1
    }

    pub fn index(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    /// Position of element `i` inside its degree block.
    pub fn position(&self, i: usize) -> usize {
        self.pos[i]
    }

    pub fn in_degree(&self, n: i32) -> &[usize] {
        self.by_degree.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.by_degree.keys().copied()
    }

    pub fn dim(&self, n: i32) -> usize {
        self.in_degree(n).len()
    }

    pub fn space(&self) -> GradedSpace {
        GradedSpace::new(self.by_degree.iter().map(|(&n, v)| (n, v.len())))
    }

    /// Matrix blocks of a homogeneous map of the given degree into `target`,
    /// specified on basis elements.
    pub fn map_blocks<K2: Clone + Eq + Hash>(
        &self,
        field: Field,
        target: &GradedBasis<K2>,
        degree: i32,
        f: impl Fn(usize) -> Terms,
    ) -> Result<BTreeMap<i32, Matrix>> {
        let mut blocks = BTreeMap::new();
        for (&n, src) in &self.by_degree {
            let mut m = Matrix::zeros(field, target.dim(n + degree), src.len());
            for (j, &i) in src.iter().enumerate() {
                for (t, x) in f(i) {
                    if target.degree(t) != n + degree {
                        return Err(Error::InvalidStructure(format!(
                            "map of degree {degree} sends a degree-{n} element to degree {}",
                            target.degree(t)
                        )));
                    }
                    m.add_to(target.position(t), j, &x);
                }
            }
            if !m.is_zero() {
                blocks.insert(n, m);
            }
        }
        Ok(blocks)
    }

    /// The complex with this basis and differential `d` given on basis
    /// elements; `d∘d = 0` is verified.
    pub fn complex(&self, field: Field, d: impl Fn(usize) -> Terms) -> Result<ChainComplex> {
        let diff = self.map_blocks(field, self, 1, d)?;
        ChainComplex::new(field, self.space(), diff)
    }

    /// Coordinates of a combination of degree-`n` basis elements.
    pub fn vector(&self, field: Field, n: i32, terms: &Terms) -> Vec<Scalar> {
        let mut v = vec![field.zero(); self.dim(n)];
        for (i, x) in terms {
            debug_assert_eq!(self.degree(*i), n);
            let p = self.position(*i);
            v[p] = &v[p] + x;
        }
        v
    }

    /// Inverse of [`GradedBasis::vector`].
    pub fn terms(&self, n: i32, v: &[Scalar]) -> Terms {
        self.in_degree(n)
            .iter()
            .zip(v)
            .filter(|(_, x)| !x.is_zero())
            .map(|(&i, x)| (i, x.clone()))
            .collect()
    }
}

impl<K: Clone + Eq + Hash + Display> GradedBasis<K> {
    pub fn labelled_space(&self) -> GradedSpace {
        let labels = self
            .by_degree
            .iter()
            .map(|(&n, v)| (n, v.iter().map(|&i| self.items[i].0.to_string()).collect()))
            .collect();
        GradedSpace::labelled(labels).expect("keys are distinct")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_follow_global_order() {
        let b = GradedBasis::new(vec![("a", 1), ("b", 0), ("c", 1)]).unwrap();
        assert_eq!(b.in_degree(1), &[0, 2]);
        assert_eq!(b.position(2), 1);
        assert_eq!(b.dim(0), 1);
        assert!(GradedBasis::new(vec![("a", 0), ("a", 1)]).is_err());
    }

    #[test]
    fn complex_from_formula() {
        let f = Field::Rational;
        let b = GradedBasis::new(vec![("x", 0), ("y", 1)]).unwrap();
        let x = b.complex(f, |i| if i == 0 { vec![(1, f.one())] } else { vec![] }).unwrap();
        assert_eq!(x.d(0).rank(), 1);
        assert!(b.complex(f, |i| if i == 0 { vec![(0, f.one())] } else { vec![] }).is_err());
    }

    #[test]
    fn normalize_merges() {
        let f = Field::Rational;
        let t = normalize(f, vec![(2, f.one()), (1, f.one()), (2, f.int(-1))]);
        assert_eq!(t, vec![(1, f.one())]);
    }
}
