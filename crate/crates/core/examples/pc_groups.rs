//! Building groups from power-commutator presentations and Cayley tables.
//!
//! ```text
//! cargo run --example pc_groups
//! ```

use pgauto::io::GroupFile;
use pgauto::{from_pc_presentation, FiniteGroup, PcPresentation};

fn main() -> pgauto::Result<()> {
    // Heisenberg group mod 3: [g2, g1] = g3, everything else trivial.
    let heis = from_pc_presentation(&PcPresentation::new(3, 3).commutator(1, 0, &[0, 0, 1]))?;
    println!("Heisenberg: order {}, abelian {}", heis.order(), heis.is_abelian());

    // Inconsistent: g2 is a power of g1, so [g2, g1] = g2 cannot hold.
    let bad = PcPresentation::new(3, 2).power(0, &[0, 1]).commutator(1, 0, &[0, 1]);
    match from_pc_presentation(&bad) {
        Ok(g) => println!("unexpectedly consistent, order {}", g.order()),
        Err(e) => println!("rejected: {e}"),
    }

    // The same file format the CLI reads.
    let json = r#"{"format":"pc","p":5,"rank":3,"powers":{"1":[0,0,1]},"commutators":{"2,1":[0,0,1]}}"#;
    let m125 = GroupFile::parse(json)?.build(729)?;
    let orders: std::collections::BTreeSet<usize> = m125.elements().map(|x| m125.element_order(x)).collect();
    println!("M(125): element orders {orders:?}");

    // Round trip through a Cayley table.
    let table = GroupFile::from_group(&FiniteGroup::cyclic(9));
    let back = GroupFile::parse(&table.to_json())?.build(729)?;
    println!("C9 from its table: order {}", back.order());
    Ok(())
}
