//! Der(G, A), its adjoint group, and the isomorphism with Aut_A(G).
//!
//! ```text
//! cargo run --release --example derivations [catalog-id]
//! ```

use pgauto::catalog::find;
use pgauto::derivation::{aut_from_derivation, enumerate_derivations, verify_aut_correspondence};
use pgauto::group::DEFAULT_MAX_ORDER;
use pgauto::structure::{center, nilpotency_class, omega};

fn main() -> pgauto::Result<()> {
    let id = std::env::args().nth(1).unwrap_or_else(|| "m27".into());
    let g = find(&id)?.build(DEFAULT_MAX_ORDER)?;
    let z = center(&g);
    for (name, a) in [("Z(G)", z.clone()), ("Omega_1(Z(G))", omega(&g, &z, 1))] {
        let der = enumerate_derivations(&g, &a)?;
        let adjoint = der.ring.adjoint_group();
        println!("{id}, A = {name} (order {})", a.order());
        println!("  |Der(G,A)| = {}, homomorphisms among them: {}", der.len(), der.homomorphism_indices(&g).len());
        match der.ring.nilpotency_degree() {
            Some(n) => println!(
                "  ring nilpotent of degree {n}; adjoint group of order {} and class {}",
                adjoint.members.len(),
                nilpotency_class(&adjoint.group)?
            ),
            None => println!("  ring not nilpotent; unit group of order {}", adjoint.members.len()),
        }
        let bijective = der.elements.iter().filter(|d| aut_from_derivation(&g, d).is_some()).count();
        let v = verify_aut_correspondence(&g, &a)?;
        println!(
            "  {bijective} derivations give automorphisms x -> x*d(x); Aut_A(G) has order {}; isomorphic: {}",
            v.aut_order,
            v.holds()
        );
    }
    Ok(())
}
