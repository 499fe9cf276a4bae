//! Derived Morita contexts: the identity context, the context of a
//! quasi-isomorphism, and a corrupted comparison map.

use dgcoh::fixtures::*;
use dgcoh::invariance::check_morita_context;
use dgcoh::Field;

fn main() -> dgcoh::Result<()> {
    let f = Field::Rational;
    let id = identity_context(&divided_powers(f, 2), 3);
    println!("identity: {}", check_morita_context(&id)?.passed);

    let inc = extension_inclusion(f, &acyclic_extension(f))?;
    println!("restriction along k → D: {}", check_morita_context(&morphism_context(&inc, 3)?)?.passed);

    let mut bad = id;
    bad.to_c.set(1, 1, -f.one());
    let r = check_morita_context(&bad)?;
    let (stage, check) = r.first_failure().expect("the corrupted map fails");
    println!("corrupted: fails at `{}`: {} ({})", stage.name, check.name, check.locus.as_deref().unwrap_or(""));
    Ok(())
}
