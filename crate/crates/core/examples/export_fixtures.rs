//! Write the bundled fixture library as JSON files.
//!
//! ```text
//! cargo run --example export_fixtures -- [output directory]
//! ```

use std::path::PathBuf;

use dgcoh::fixture::bundled_documents;
use dgcoh::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    std::fs::create_dir_all(&dir)?;
    for (stem, doc) in bundled_documents(Field::Rational)? {
        let path = dir.join(format!("{stem}.json"));
        std::fs::write(&path, doc.to_json())?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
