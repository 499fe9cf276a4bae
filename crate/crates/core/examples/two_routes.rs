//! Hoch computed from the Hochschild complex and as the derived cotensor
//! C □ C over the enveloping coalgebra.

use dgcoh::comodule::Bicomodule;
use dgcoh::cyclic::{hoch, hoch_bicomodule};
use dgcoh::fixtures::*;
use dgcoh::Field;

fn main() -> dgcoh::Result<()> {
    let f = Field::Prime(5);
    for c in [trivial(f), group_likes(f, 2), divided_powers(f, 2), exterior(f), acyclic_extension(f)] {
        let a = hoch(&c, 3)?;
        let b = hoch_bicomodule(&Bicomodule::regular(&c), 3, None)?;
        println!("{:?} vs {:?} -> {}", a.values().collect::<Vec<_>>(), b.values().collect::<Vec<_>>(), a == b);
    }
    Ok(())
}
