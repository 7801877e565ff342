//! Structure profiles of every bundled catalog group.
//!
//! ```text
//! cargo run --release --example structure
//! ```

use pgauto::catalog::bundled_catalog;
use pgauto::group::DEFAULT_MAX_ORDER;
use pgauto::structure::{abelian_invariants, center, frattini, structure_profile, upper_central_series};

fn main() -> pgauto::Result<()> {
    println!(
        "{:<16} {:>5} {:>5} {:>7} {:>3} {:>8}  center    upper series",
        "id", "order", "class", "coclass", "d", "powerful"
    );
    for entry in bundled_catalog() {
        let g = entry.build(DEFAULT_MAX_ORDER)?;
        let p = structure_profile(&g)?;
        let upper: Vec<usize> = upper_central_series(&g)?.iter().map(|s| s.order()).collect();
        println!(
            "{:<16} {:>5} {:>5} {:>7} {:>3} {:>8}  {:<9} {:?}",
            entry.id,
            g.order(),
            p.class,
            p.coclass,
            p.d,
            p.is_powerful,
            format!("{:?}", abelian_invariants(&g, &center(&g))),
            upper
        );
        debug_assert!(frattini(&g)?.order() * p.p.pow(p.d as u32) == g.order());
    }
    Ok(())
}
