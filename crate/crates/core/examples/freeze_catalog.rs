//! Recomputes the frozen `expected` profiles of a catalog file and prints
//! the result, one entry per line.
//!
//! ```text
//! cargo run --release --example freeze_catalog -- crates/core/data/catalog.json > new.json
//! ```

use pgauto::catalog::CatalogEntry;
use pgauto::group::DEFAULT_MAX_ORDER;
use pgauto::structure::structure_profile;

fn main() -> pgauto::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "crates/core/data/catalog.json".into());
    let mut entries: Vec<CatalogEntry> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    for e in &mut entries {
        let profile = structure_profile(&e.build(DEFAULT_MAX_ORDER)?)?;
        let value = serde_json::to_value(&profile)?;
        // Unknown fields (purely non-abelian beyond the lattice cap) are not frozen.
        e.expected = value
            .as_object()
            .expect("profile is an object")
            .iter()
            .filter(|(_, v)| !v.is_null())
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
    }
    let lines: Vec<String> = entries.iter().map(|e| format!("  {}", serde_json::to_string(e).unwrap())).collect();
    println!("[\n{}\n]", lines.join(",\n"));
    Ok(())
}
