//! Cotilting certificates: the Morita–Takeuchi certificate between k and
//! M₂(k)^c, three single defects, and the resulting transfer table.

use dgcoh::fixtures::morita_takeuchi_certificate;
use dgcoh::invariance::{conclude_cohomology_transfer, verify_cotilting, TransferSource};
use dgcoh::Field;

fn main() -> dgcoh::Result<()> {
    let f = Field::Rational;
    let mut cert = morita_takeuchi_certificate(f)?;
    cert.ext_bound = 3;
    println!("certificate passes: {}", verify_cotilting(&cert)?.passed);

    let mut broken_counit = cert.clone();
    broken_counit.coend_c[0] = broken_counit.coend_c[0].scale(&f.int(2));
    let mut removed = cert.clone();
    removed.add.maps[0] = None;
    let mut flipped = cert.clone();
    flipped.add.maps[0].as_mut().expect("map present").set(0, 0, -f.one());
    for (name, c) in [("broken counit witness", broken_counit), ("removed map", removed), ("flipped sign", flipped)] {
        let r = verify_cotilting(&c)?;
        println!("{name}: fails at {:?}", r.failed_stage);
    }

    let t = conclude_cohomology_transfer(TransferSource::Cotilting(&cert), 3)?;
    for row in &t.rows {
        println!("{:<4} k {:?}  M₂ {:?}", row.theory, row.left.values().collect::<Vec<_>>(), row.right.values().collect::<Vec<_>>());
    }
    Ok(())
}
