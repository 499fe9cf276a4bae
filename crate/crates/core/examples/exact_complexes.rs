//! Exact linear algebra and cohomology of a small cochain complex over ℚ and F₂.

use std::collections::BTreeMap;

use dgcoh::complex::{cohomology_dims, GradedSpace};
use dgcoh::{ChainComplex, Field, Matrix};

fn main() -> dgcoh::Result<()> {
    for f in [Field::Rational, Field::Prime(2)] {
        // 0 → k → k² → k → 0 with d⁰ = (1, 1)ᵀ and d¹ = (1, −1)
        let d0 = Matrix::from_ints(f, &[&[1], &[1]]);
        let d1 = Matrix::from_ints(f, &[&[1, -1]]);
        let x = ChainComplex::new(f, GradedSpace::new([(0, 1), (1, 2), (2, 1)]), BTreeMap::from([(0, d0), (1, d1)]))?;
        println!("over {f}: rank d¹ = {}, H* = {:?}", x.d(1).rank(), cohomology_dims(&x, 0..=2));
    }
    Ok(())
}
