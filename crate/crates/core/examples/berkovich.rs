//! Non-inner automorphisms of order p for coclass-2 groups.
//!
//! ```text
//! cargo run --release --example berkovich
//! ```

use pgauto::berkovich::{verify_theorem51, Theorem51Outcome};
use pgauto::catalog::bundled_catalog;
use pgauto::group::DEFAULT_MAX_ORDER;
use pgauto::structure::structure_profile;

fn main() -> pgauto::Result<()> {
    for entry in bundled_catalog() {
        let g = entry.build(DEFAULT_MAX_ORDER)?;
        let profile = structure_profile(&g)?;
        if profile.coclass != 2 || profile.p == 2 || profile.class < 2 {
            continue;
        }
        match verify_theorem51(&g)? {
            Theorem51Outcome::Witness { witness, notes, findings, .. } => {
                let moved = g.elements().filter(|&x| witness.sigma.apply(x) != x).count();
                println!(
                    "{:<14} {:?}: order {} automorphism moving {moved} elements, not among {} inner ones",
                    entry.id, witness.branch, witness.order, witness.certificate_size
                );
                for n in notes {
                    println!("    note: {n}");
                }
                for f in findings {
                    println!("    FINDING: {f}");
                }
            }
            Theorem51Outcome::Inconclusive { reason, .. } => println!("{:<14} inconclusive: {reason}", entry.id),
            Theorem51Outcome::Refused(r) => println!("{:<14} refused: {r}", entry.id),
        }
    }
    Ok(())
}
