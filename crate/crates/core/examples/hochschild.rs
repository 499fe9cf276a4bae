//! Hochschild cohomology of bundled coalgebras, and the Morita–Takeuchi
//! comparison between k and the matrix coalgebra.

use dgcoh::cyclic::{h_cohomology, hoch};
use dgcoh::comodule::Bicomodule;
use dgcoh::fixtures::*;
use dgcoh::Field;

fn main() -> dgcoh::Result<()> {
    let f = Field::Rational;
    let cases = [
        ("k", trivial(f)),
        ("k³", group_likes(f, 3)),
        ("divided powers", divided_powers(f, 2)),
        ("exterior", exterior(f)),
        ("M₂(k)^c", matrix_coalgebra(f, 2)),
    ];
    for (name, c) in cases {
        let h = h_cohomology(&Bicomodule::regular(&c), 3, None)?;
        println!("{name:>15}: Hoch {:?}  H {:?}", hoch(&c, 3)?.values().collect::<Vec<_>>(), h.values().collect::<Vec<_>>());
    }
    Ok(())
}
