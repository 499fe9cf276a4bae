//! The truncated standard resolution of the regular comodule of the acyclic
//! extension: ∂² = 0, the contracting homotopy on the augmented version, and
//! the augmentation as a quasi-isomorphism in the sound range.

use dgcoh::comodule::{DGComodule, Side};
use dgcoh::complex::is_quasi_iso;
use dgcoh::fixtures::acyclic_extension;
use dgcoh::resolution::StandardResolution;
use dgcoh::Field;

fn main() -> dgcoh::Result<()> {
    let c = acyclic_extension(Field::Rational);
    let m = DGComodule::regular(&c, Side::Left);
    for p in 2..=4 {
        let res = StandardResolution::new(&m, p)?;
        res.complex().check_square_zero()?;
        StandardResolution::augmented(&m, p)?.check_contraction()?;
        let aug = res.augmentation()?;
        let top = res.sound_up_to();
        let q = is_quasi_iso(&aug, 0..=top);
        println!(
            "p = {p}: {} basis words, sound through degree {top}, augmentation quasi-iso there: {}",
            res.basis().len(),
            q.is_quasi_iso
        );
    }
    Ok(())
}
