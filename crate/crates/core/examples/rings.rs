//! Finite rings: nilpotency degree, adjoint group class and Omega sets.
//!
//! ```text
//! cargo run --release --example rings
//! ```

use pgauto::berkovich::compute_h_tower;
use pgauto::catalog::find;
use pgauto::derivation::enumerate_derivations;
use pgauto::group::DEFAULT_MAX_ORDER;
use pgauto::ring::FiniteRing;
use pgauto::structure::{center, nilpotency_class};

fn describe(name: &str, r: &FiniteRing) -> pgauto::Result<()> {
    let degree = r.nilpotency_degree();
    print!("{name:<22} order {:>4}", r.order());
    match degree {
        Some(n) => {
            let adjoint = r.adjoint_group();
            print!("  degree {n}  adjoint class {}", nilpotency_class(&adjoint.group)?);
        }
        None => print!("  not nilpotent"),
    }
    if let Ok(nil) = r.is_right_p_nil() {
        print!("  right p-nil {nil}");
    }
    if degree.is_some() && r.prime().is_some_and(|p| p != 2) {
        let same = (1..=3).all(|n| match (r.omega_set_adjoint(n), r.omega_additive(n)) {
            (Ok(a), Ok(b)) => a == *b.mask(),
            _ => true,
        });
        print!("  Omega sets agree {same}");
    }
    println!();
    Ok(())
}

fn main() -> pgauto::Result<()> {
    describe("null ring of order 27", &FiniteRing::null(27))?;
    describe("3Z/27Z", &FiniteRing::multiples(3, 27))?;
    describe("5Z/125Z", &FiniteRing::multiples(5, 125))?;
    describe("Z/9Z", &FiniteRing::integers_mod(9))?;
    for id in ["heis27", "m27", "c9_c9", "cc2_243_pow"] {
        let g = find(id)?.build(DEFAULT_MAX_ORDER)?;
        let der = enumerate_derivations(&g, &center(&g))?;
        describe(&format!("Der({id}, Z)"), &der.ring)?;
    }
    // Der(G, H) for H the preimage of Omega_1(Z(G/Z(G))): larger and non-commutative.
    for id in ["cgphi_243_a", "maxclass_243_a"] {
        let g = find(id)?.build(DEFAULT_MAX_ORDER)?;
        if let Some(d) = compute_h_tower(&g)?.d {
            describe(&format!("Der({id}, H)"), &d.ring)?;
        }
    }
    Ok(())
}
