//! The graded algebra structure on H*(C) by Yoneda composition.

use dgcoh::cyclic::{yoneda_product, HochschildCohomology};
use dgcoh::fixtures::{divided_powers, exterior};
use dgcoh::Field;

fn main() -> dgcoh::Result<()> {
    let f = Field::Rational;
    for (name, c) in [("divided powers", divided_powers(f, 2)), ("exterior", exterior(f))] {
        let h = HochschildCohomology::new(&c, 2)?;
        println!("{name}: dims {:?}", h.dims());
        let unit = h.unit()?;
        for n in 0..=2 {
            for k in 0..h.dim(n) {
                let a = h.basis_class(n, k);
                assert_eq!(yoneda_product(&h, &unit, &a)?, a);
                if n == 1 {
                    let sq = yoneda_product(&h, &a, &a)?;
                    println!("  square of class {k} in degree 1: {:?}", sq.coords.iter().map(|x| x.to_string()).collect::<Vec<_>>());
                }
            }
        }
    }
    Ok(())
}
