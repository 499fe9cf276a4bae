//! The quasi-isomorphism pipeline on k → D (acyclic extension) and on the
//! sabotaged variant, which fails at the first stage.

use dgcoh::fixtures::*;
use dgcoh::invariance::check_quasi_iso_invariance;
use dgcoh::Field;

fn main() -> dgcoh::Result<()> {
    let f = Field::Rational;
    for (name, d) in [("acyclic", acyclic_extension(f)), ("sabotaged", sabotaged_extension(f))] {
        let r = check_quasi_iso_invariance(&extension_inclusion(f, &d)?, 3)?;
        println!("{name}: passed = {}, failed stage = {:?}", r.passed, r.failed_stage);
        for t in &r.tables {
            println!("  {:<4} {:?} | {:?}", t.theory, t.left.values().collect::<Vec<_>>(), t.right.values().collect::<Vec<_>>());
        }
    }
    Ok(())
}
