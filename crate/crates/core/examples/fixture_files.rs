//! Load a JSON fixture, resolve its names and validate every object.

use std::path::PathBuf;

use dgcoh::fixture::Fixture;

fn main() -> dgcoh::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/morita_takeuchi.json"));
    let fx = Fixture::load(&path, None)?;
    println!("{} over {}", path.display(), fx.field);
    for (name, c) in &fx.coalgebras {
        println!("  coalgebra {name}: dim {}, valid {}", c.dim(), c.validate().is_valid());
    }
    for (name, b) in &fx.bicomodules {
        println!("  bicomodule {name}: dim {}, valid {}", b.dim(), b.validate().is_valid());
    }
    println!("  {} certificate(s), {} context(s)", fx.certificates.len(), fx.contexts.len());
    Ok(())
}
