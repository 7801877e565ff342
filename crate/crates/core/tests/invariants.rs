//! Invariants checked over the whole bundled catalog.

use pgauto::berkovich::{inner_automorphisms, verify_theorem51, Theorem51Outcome};
use pgauto::catalog::bundled_catalog;
use pgauto::derivation::{aut_n_direct, enumerate_derivations, restriction_sequence};
use pgauto::fullness::{admissible_modules, check_theorem43, is_full_wrt, HomLifter, LiftBranch};
use pgauto::group::DEFAULT_MAX_ORDER;
use pgauto::lattice::is_purely_nonabelian;
use pgauto::report::{run_entry, RunOptions, CHECKS};
use pgauto::structure::{center, frattini, maximal_subgroups, omega, structure_profile, upper_central_series};
use pgauto::{FiniteGroup, GroupHom};

fn catalog() -> Vec<(String, FiniteGroup)> {
    bundled_catalog().iter().map(|e| (e.id.clone(), e.build(DEFAULT_MAX_ORDER).unwrap())).collect()
}

fn odd(g: &FiniteGroup) -> bool {
    g.order() % 2 == 1
}

#[test]
fn catalog_profiles_match_frozen_values() {
    for e in bundled_catalog() {
        let g = e.build(DEFAULT_MAX_ORDER).unwrap();
        let p = structure_profile(&g).unwrap();
        assert!(e.profile_mismatches(&p).is_empty(), "{}: {:?}", e.id, e.profile_mismatches(&p));
        assert_eq!(p.coclass + p.class, p.n as usize, "{}", e.id);
    }
}

#[test]
fn purely_nonabelian_groups_have_small_socle() {
    for (id, g) in catalog() {
        if is_purely_nonabelian(&g) == Some(true) {
            let z = center(&g);
            assert!(omega(&g, &z, 1).is_subset(&frattini(&g).unwrap()), "{id}");
        }
    }
}

#[test]
fn maximal_class_second_center() {
    for (id, g) in catalog() {
        let p = structure_profile(&g).unwrap();
        if p.coclass == 1 && p.class >= 3 {
            let upper = upper_central_series(&g).unwrap();
            assert_eq!(upper[2].order() / upper[1].order(), p.p, "{id}");
        }
    }
}

#[test]
fn derivation_rings_satisfy_ring_laws() {
    for (id, g) in catalog() {
        if g.order() > 81 {
            continue;
        }
        // End(C3^3) has 3^9 elements; the exhaustive axiom scan is cubic.
        let der = match enumerate_derivations(&g, &center(&g)) {
            Ok(d) if d.len() <= 243 => d,
            _ => continue,
        };
        der.ring.check_axioms_exhaustive().unwrap_or_else(|e| panic!("{id}: {e}"));
        for d in &der.elements {
            assert!(d.is_derivation(&g, &der.module), "{id}");
        }
        let r = &der.ring;
        if r.nilpotency_degree().is_some() {
            assert!(r.is_radical(), "{id}");
            let exp = r.additive_exponent() as u64;
            for x in r.elements() {
                let inv = r.nilpotent_circle_inverse(x).unwrap();
                assert_eq!(r.circle(x, inv), r.zero(), "{id}");
                for a in 0..=exp {
                    for b in 0..=exp {
                        assert_eq!(r.adjoint_power(x, a + b), r.circle(r.adjoint_power(x, a), r.adjoint_power(x, b)));
                    }
                }
            }
        }
    }
}

#[test]
fn restriction_sequences_are_exact_on_the_left() {
    for (id, g) in catalog() {
        if !odd(&g) || g.order() > 243 {
            continue;
        }
        for a in admissible_modules(&g).unwrap_or_default() {
            let z1 = a.intersection(&center(&g));
            let seq = restriction_sequence(&g, &a, &z1).unwrap();
            assert!(seq.is_exact_at_first_two(), "{id}");
        }
    }
}

#[test]
fn fullness_is_stable_under_automorphisms() {
    for id in ["heis27", "m27", "c9xc3_c3", "c3wrc3", "c9_c9"] {
        let g = pgauto::catalog::find(id).unwrap().build(DEFAULT_MAX_ORDER).unwrap();
        let auts = aut_n_direct(&g, &g.full());
        let maximals = maximal_subgroups(&g);
        for c in &maximals {
            let full = is_full_wrt(&g, c).unwrap().is_full();
            for sigma in auts.members.iter().step_by(7) {
                let image = g.closure(c.elements().map(|x| sigma.apply(x)));
                assert_eq!(is_full_wrt(&g, &image).unwrap().is_full(), full, "{id}");
            }
        }
    }
}

#[test]
fn lifts_induce_the_given_homomorphism() {
    for (id, g) in catalog() {
        if !odd(&g) {
            continue;
        }
        for a in admissible_modules(&g).unwrap_or_default() {
            let Ok(lifter) = HomLifter::new(&g, &a) else { continue };
            if !lifter.fullness.is_full() {
                continue;
            }
            for f in lifter.homs() {
                let lift = lifter.lift(&f).unwrap();
                assert!(lift.derivation.is_derivation(&g, &a), "{id}");
                for x in g.elements() {
                    let lhs = lifter.projection.apply(lift.derivation.apply(x));
                    assert_eq!(lhs, f.apply(lifter.projection.apply(x)), "{id}");
                }
                if lift.branch == LiftBranch::MNeC {
                    let q = &lifter.quotient;
                    let m = g.preimage(&lifter.projection, &f.kernel(q, q));
                    assert!(m.elements().all(|e| lifter.z1.contains(lift.derivation.apply(e))), "{id}");
                }
            }
        }
    }
}

#[test]
fn exactness_agrees_with_fullness() {
    for (id, g) in catalog() {
        if !odd(&g) || is_purely_nonabelian(&g) != Some(true) {
            continue;
        }
        for a in admissible_modules(&g).unwrap() {
            let v = check_theorem43(&g, &a).unwrap();
            assert!(v.agree, "{id}: exact {} full {}", v.exact, v.full);
            assert_eq!(v.exact_by_count, v.exact_by_image, "{id}");
            assert!(v.findings.is_empty(), "{id}: {:?}", v.findings);
        }
    }
}

fn power(sigma: &GroupHom, k: usize) -> GroupHom {
    let mut acc = sigma.clone();
    for _ in 1..k {
        acc = acc.then(sigma);
    }
    acc
}

#[test]
fn berkovich_witnesses_are_certified() {
    for (id, g) in catalog() {
        let p = structure_profile(&g).unwrap();
        let Theorem51Outcome::Witness { witness, .. } = verify_theorem51(&g).unwrap() else {
            assert!(p.coclass != 2 || p.p == 2 || p.class < 2, "{id} got no witness");
            continue;
        };
        let sigma = &witness.sigma;
        assert!(sigma.is_bijective() && sigma.is_homomorphism(&g, &g), "{id}");
        assert!(power(sigma, p.p).is_identity(), "{id}");
        assert!(!sigma.is_identity(), "{id}");
        for x in g.elements() {
            assert_ne!(&GroupHom::inner(&g, x), sigma, "{id}");
        }
        assert_eq!(witness.certificate_size, inner_automorphisms(&g).len(), "{id}");
        assert_eq!(witness.certificate_size, g.order() / center(&g).order(), "{id}");
    }
}

#[test]
fn reports_list_every_check_once() {
    for e in bundled_catalog().iter().filter(|e| e.id.starts_with('c') && e.id.len() < 6) {
        let r = run_entry(e, DEFAULT_MAX_ORDER, &CHECKS, RunOptions::default()).unwrap();
        assert_eq!(r.checks.len(), CHECKS.len(), "{}", e.id);
        for s in r.checks.values() {
            assert!(["pass", "fail", "skipped", "inconclusive"].contains(&s.verdict.as_str()));
        }
    }
}
