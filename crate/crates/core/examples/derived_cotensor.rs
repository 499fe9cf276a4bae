//! One-sided derived functors through the slice engine: Cotor and Ext of
//! comodules over the divided power coalgebra.

use dgcoh::comodule::{DGComodule, Side};
use dgcoh::complex::cohomology_dims;
use dgcoh::fixtures::divided_powers;
use dgcoh::slices::{cotensor_resolution, hom_resolution};
use dgcoh::Field;

fn main() -> dgcoh::Result<()> {
    let c = divided_powers(Field::Rational, 2);
    let (l, r) = (DGComodule::regular(&c, Side::Left), DGComodule::regular(&c, Side::Right));
    let cotor = cotensor_resolution(&r, &l, 3, 5)?;
    let ext = hom_resolution(&l, &l, 3, 5)?;
    println!("Cotor(C, C) = {:?}", cohomology_dims(&cotor, 0..=3));
    println!("Ext(C, C)   = {:?}", cohomology_dims(&ext, 0..=3));
    Ok(())
}
