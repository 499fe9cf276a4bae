//! HC from the cyclic bicomplex.

use dgcoh::cyclic::hc;
use dgcoh::fixtures::*;
use dgcoh::Field;

fn main() -> dgcoh::Result<()> {
    let f = Field::Rational;
    for (name, c) in [("k", trivial(f)), ("k²", group_likes(f, 2)), ("divided powers", divided_powers(f, 2))] {
        println!("HC*({name}) = {:?}", hc(&c, 4, None)?.values().collect::<Vec<_>>());
    }
    Ok(())
}
