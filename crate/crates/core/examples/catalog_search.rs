//! Random search over consistent triangular pc-presentations of 3-groups.
//!
//! ```text
//! cargo run --release --example catalog_search -- class2 4 20000 1
//! cargo run --release --example catalog_search -- coclass2 5 200000 7
//! cargo run --release --example catalog_search -- cgphi 5 200000 7
//! ```
//!
//! `class2` keeps groups of class 2, `coclass2` keeps coclass-2 groups with
//! two generators and cyclic center, `cgphi` keeps groups with
//! `C_G(Φ(G)) <= Φ(G)`. Presentations are drawn from the family
//! `g3 = [g2, g1]`, later commutators and powers random, last generator
//! central. Hits are bucketed by a tuple of isomorphism invariants and one
//! presentation per bucket is printed as a pc file.

use std::collections::BTreeMap;

use pgauto::berkovich::{verify_theorem51, Theorem51Outcome};
use pgauto::io::GroupFile;
use pgauto::structure::{
    abelian_invariants, center, centralizer, frattini, lower_central_series, minimal_generators, nilpotency_class,
    structure_profile, upper_central_series,
};
use pgauto::{from_pc_presentation, FiniteGroup, PcPresentation};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_word(rng: &mut StdRng, rank: usize, after: usize, density: f64) -> Vec<u32> {
    let mut w = vec![0; rank];
    for e in w.iter_mut().skip(after + 1) {
        if rng.gen_bool(density) {
            *e = rng.gen_range(1..3);
        }
    }
    w
}

fn random_presentation(rng: &mut StdRng, rank: usize) -> PcPresentation {
    let mut pcp = PcPresentation::new(3, rank);
    let density = rng.gen_range(0.2..0.8);
    for i in 0..rank {
        let w = random_word(rng, rank, i, density);
        if w.iter().any(|&e| e != 0) {
            pcp.powers.insert(i, w);
        }
        for j in i + 1..rank - 1 {
            let mut w = random_word(rng, rank, j, density);
            if (j, i) == (1, 0) && rank > 2 {
                w = vec![0; rank];
                w[2] = 1;
            }
            if w.iter().any(|&e| e != 0) {
                pcp.commutators.insert((j, i), w);
            }
        }
    }
    pcp
}

fn signature(g: &FiniteGroup) -> String {
    let mut orders = BTreeMap::new();
    for x in g.elements() {
        *orders.entry(g.element_order(x)).or_insert(0usize) += 1;
    }
    let commuting = g
        .elements()
        .flat_map(|x| g.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| g.mul(x, y) == g.mul(y, x))
        .count();
    let lower = lower_central_series(g).unwrap();
    let upper = upper_central_series(g).unwrap();
    let (ab, _) = g.quotient(&lower[1]).unwrap();
    let profile = serde_json::to_string(&structure_profile(g).unwrap()).unwrap();
    format!(
        "{profile} orders={orders:?} classes={} ab={:?} z={:?} upper={:?} lower={:?}",
        commuting / g.order(),
        abelian_invariants(&ab, &ab.full()),
        abelian_invariants(g, &center(g)),
        upper.iter().map(|s| s.order()).collect::<Vec<_>>(),
        lower.iter().map(|s| s.order()).collect::<Vec<_>>(),
    )
}

fn wanted(mode: &str, g: &FiniteGroup, rank: usize) -> bool {
    let class = nilpotency_class(g).unwrap();
    match mode {
        "class2" => class == 2,
        "coclass2" => {
            class + 2 == rank && minimal_generators(g).len() == 2 && abelian_invariants(g, &center(g)).len() == 1
        }
        "cgphi" => {
            let phi = frattini(g).unwrap();
            class > 1 && centralizer(g, &phi).is_subset(&phi)
        }
        other => panic!("unknown mode {other}"),
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mode = args.get(1).map(String::as_str).unwrap_or("class2");
    let rank: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(4);
    let samples: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(20000);
    let seed: u64 = args.get(4).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut found: BTreeMap<String, PcPresentation> = BTreeMap::new();
    let mut consistent = 0;
    for _ in 0..samples {
        let pcp = random_presentation(&mut rng, rank);
        let Ok(g) = from_pc_presentation(&pcp) else { continue };
        consistent += 1;
        if wanted(mode, &g, rank) {
            found.entry(signature(&g)).or_insert(pcp);
        }
    }
    eprintln!("{consistent} consistent of {samples}; {} invariant classes", found.len());
    for (sig, pcp) in &found {
        let g = from_pc_presentation(pcp).unwrap();
        let branch = match verify_theorem51(&g) {
            Ok(Theorem51Outcome::Witness { witness, findings, .. }) => format!("{:?} {findings:?}", witness.branch),
            Ok(other) => format!("{other:?}"),
            Err(e) => format!("error: {e}"),
        };
        println!("{sig}\n  witness: {branch}\n  {}", GroupFile::from_pc(pcp).to_json());
    }
}
