//! The long exact sequence relating HC and Hoch, with rank bookkeeping at every
//! node.

use dgcoh::cyclic::sbi;
use dgcoh::fixtures::divided_powers;
use dgcoh::Field;

fn main() -> dgcoh::Result<()> {
    let seq = sbi(&divided_powers(Field::Rational, 2), 4)?;
    for node in &seq.report.nodes {
        println!(
            "{:>10}  dim {}  rank in {}  rank out {}  {}",
            node.group,
            node.dim,
            node.rank_in,
            node.rank_out,
            if node.exact { "exact" } else { "NOT EXACT" }
        );
    }
    println!("exact everywhere: {}", seq.report.exact);
    Ok(())
}
