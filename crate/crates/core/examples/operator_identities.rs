//! The cyclic operators on tensor powers of the exterior coalgebra, checked as
//! exact sparse matrix identities.

use dgcoh::cyclic::{check_operator_identities, operator, Operator};
use dgcoh::fixtures::exterior;
use dgcoh::Field;

fn main() -> dgcoh::Result<()> {
    let c = exterior(Field::Rational);
    for n in 0..=3 {
        let t = operator(Operator::T, &c, n)?;
        let checks = check_operator_identities(&c, n)?;
        let ok = checks.iter().filter(|x| x.holds).count();
        println!("n = {n}: T is {}x{}, {ok}/{} relations hold", t.rows(), t.cols(), checks.len());
    }
    Ok(())
}
