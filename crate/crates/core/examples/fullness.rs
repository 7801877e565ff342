//! Fullness, lifting homomorphisms to derivations, and exactness.
//!
//! ```text
//! cargo run --release --example fullness
//! ```

use pgauto::catalog::find;
use pgauto::fullness::{admissible_modules, check_theorem43, fullness_table, HomLifter, LiftBranch};
use pgauto::group::DEFAULT_MAX_ORDER;

fn main() -> pgauto::Result<()> {
    for id in ["heis27", "m27", "c9xc3_c3", "cc2_243_pow"] {
        let g = find(id)?.build(DEFAULT_MAX_ORDER)?;
        let full: Vec<bool> = fullness_table(&g)?.iter().map(|f| f.is_full()).collect();
        println!("{id}: full with respect to maximal subgroups {full:?}");
        for a in admissible_modules(&g)? {
            let v = check_theorem43(&g, &a)?;
            println!(
                "  A = {:?}: exact {}, full wrt C_G(A) {}, |Der(G,A)| = {}",
                a.to_vec(),
                v.exact,
                v.full,
                v.counts.der
            );
        }
    }

    // Lift every homomorphism G/Z1 -> A/Z1 of the Heisenberg group by hand.
    let g = find("heis27")?.build(DEFAULT_MAX_ORDER)?;
    let a = admissible_modules(&g)?.remove(0);
    let lifter = HomLifter::new(&g, &a)?;
    let mut tally = [0usize; 3];
    for f in lifter.homs() {
        let lift = lifter.lift(&f)?;
        tally[match lift.branch {
            LiftBranch::Zero => 0,
            LiftBranch::MNeC => 1,
            LiftBranch::MEqC => 2,
        }] += 1;
    }
    println!("heis27 lifts: {} zero, {} with M != C, {} with M = C", tally[0], tally[1], tally[2]);
    Ok(())
}
