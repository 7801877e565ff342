//! Automorphisms moving elements inside `H`, the preimage of
//! `Ω1(ζ2(G)/ζ1(G))`, and the search for non-inner automorphisms of order `p`
//! in groups of coclass 2.

use std::collections::HashSet;

use serde::Serialize;

use crate::derivation::{aut_n, aut_n_direct, aut_n_from_derivations, enumerate_derivations, DerivationRing};
use crate::error::{Error, Result};
use crate::fullness::fullness_table;
use crate::group::{homs_into, FiniteGroup, GroupHom, Subgroup};
use crate::structure::{
    abelian_rank, center, centralizer, frattini, is_abelian_subgroup, is_elementary_abelian, is_strongly_frattinian,
    log_p, nilpotency_class, omega, prime_of, structure_profile, upper_central_series, StructureProfile,
};

#[derive(Clone, Debug)]
pub struct HTower {
    pub zeta1: Subgroup,
    pub zeta2: Subgroup,
    pub h: Subgroup,
    /// `Ω_1(H) <= Ω_2(H) <= ...`, ending at `H`.
    pub layers: Vec<Subgroup>,
    /// `Der(G, H)`, present when `H` is abelian.
    pub d: Option<DerivationRing>,
    /// `Der(G, H_1)`, present when `H_1` is abelian.
    pub d1: Option<DerivationRing>,
}

impl HTower {
    pub fn h1(&self) -> &Subgroup {
        &self.layers[0]
    }
}

fn zeta(upper: &[Subgroup], i: usize) -> Subgroup {
    upper[i.min(upper.len() - 1)].clone()
}

/// The tower without the derivation rings.
pub fn h_subgroups(g: &FiniteGroup) -> Result<(Subgroup, Subgroup, Subgroup, Vec<Subgroup>)> {
    let p = prime_of(g)?;
    let upper = upper_central_series(g)?;
    let z1 = zeta(&upper, 1);
    let z2 = zeta(&upper, 2);
    let h = g.closure(z2.elements().filter(|&x| z1.contains(g.pow(x, p as u64))));
    let mut layers = Vec::new();
    let mut i = 1;
    loop {
        let layer = omega(g, &h, i);
        let done = layer == h;
        layers.push(layer);
        if done {
            break;
        }
        i += 1;
    }
    Ok((z1, z2, h, layers))
}

pub fn compute_h_tower(g: &FiniteGroup) -> Result<HTower> {
    let (zeta1, zeta2, h, layers) = h_subgroups(g)?;
    let ring_for = |s: &Subgroup| -> Result<Option<DerivationRing>> {
        if is_abelian_subgroup(g, s) {
            enumerate_derivations(g, s).map(Some)
        } else {
            Ok(None)
        }
    };
    let d = ring_for(&h)?;
    let d1 = ring_for(&layers[0])?;
    Ok(HTower { zeta1, zeta2, h, layers, d, d1 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma32Verdict {
    pub h_in_cgphi: bool,
    pub cgphi_in_phi: bool,
    /// Checked only when `C_G(Φ(G)) <= Φ(G)`.
    pub h_abelian: Option<bool>,
}

impl Lemma32Verdict {
    pub fn holds(&self) -> bool {
        self.h_in_cgphi && self.h_abelian != Some(false)
    }
}

pub fn check_lemma32(g: &FiniteGroup) -> Result<Lemma32Verdict> {
    let (_, _, h, _) = h_subgroups(g)?;
    let phi = frattini(g)?;
    let cgphi = centralizer(g, &phi);
    let cgphi_in_phi = cgphi.is_subset(&phi);
    Ok(Lemma32Verdict {
        h_in_cgphi: h.is_subset(&cgphi),
        cgphi_in_phi,
        h_abelian: cgphi_in_phi.then(|| is_abelian_subgroup(g, &h)),
    })
}

fn require_cgphi_in_phi(g: &FiniteGroup) -> Result<()> {
    let phi = frattini(g)?;
    if centralizer(g, &phi).is_subset(&phi) {
        Ok(())
    } else {
        Err(Error::HypothesisFailed("C_G(Phi(G)) is not contained in Phi(G)".into()))
    }
}

fn rings(tower: &HTower) -> Result<(&DerivationRing, &DerivationRing)> {
    match (&tower.d, &tower.d1) {
        (Some(d), Some(d1)) => Ok((d, d1)),
        _ => Err(Error::CrossCheckFailed("H is not abelian although C_G(Phi(G)) <= Phi(G)".into())),
    }
}

/// Indices of `Der(G, B)` inside `Der(G, A)` as an additive subgroup.
fn sub_ring(d: &DerivationRing, b: &Subgroup) -> Subgroup {
    Subgroup::from_elements(d.len(), d.indices_into(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma33Verdict {
    pub d_order: usize,
    pub d1_order: usize,
    pub d_squared_in_hom_center: bool,
    pub d1_cubed_zero: bool,
    pub quotient_right_p_nil: bool,
    pub quotient_exponent: usize,
    pub exponent_bound: usize,
}

impl Lemma33Verdict {
    pub fn holds(&self) -> bool {
        self.d_squared_in_hom_center
            && self.d1_cubed_zero
            && self.quotient_right_p_nil
            && self.quotient_exponent <= self.exponent_bound
    }
}

pub fn check_lemma33(g: &FiniteGroup) -> Result<Lemma33Verdict> {
    require_cgphi_in_phi(g)?;
    let profile = structure_profile(g)?;
    let tower = compute_h_tower(g)?;
    lemma33_with(g, &profile, &tower)
}

fn lemma33_with(g: &FiniteGroup, profile: &StructureProfile, tower: &HTower) -> Result<Lemma33Verdict> {
    let (d, d1) = rings(tower)?;
    let z = center(g);
    let d2 = d.ring.power_ideal(2);
    let d_squared_in_hom_center = d2.elements().all(|i| {
        let delta = &d.elements[i];
        delta.values.iter().all(|&v| z.contains(v)) && GroupHom { images: delta.values.clone() }.is_homomorphism(g, g)
    });
    let d1_cubed_zero = d1.ring.power_ideal(3).is_trivial();
    let ideal = sub_ring(d, tower.h1());
    let (quot, _) = d.ring.quotient(&ideal)?;
    Ok(Lemma33Verdict {
        d_order: d.len(),
        d1_order: d1.len(),
        d_squared_in_hom_center,
        d1_cubed_zero,
        quotient_right_p_nil: quot.is_right_p_nil()?,
        quotient_exponent: quot.additive_exponent(),
        exponent_bound: profile.p.pow(profile.r.min(profile.s)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaLayer {
    pub i: u32,
    pub omega_group: usize,
    pub omega_set: usize,
    pub aut_hi: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem31Verdict {
    pub class_aut_h: usize,
    pub class_bound: usize,
    pub class_aut_h1: usize,
    pub ring_degree: Option<usize>,
    /// Empty for `p = 2`.
    pub omega_layers: Vec<OmegaLayer>,
}

impl Theorem31Verdict {
    pub fn holds(&self) -> bool {
        self.class_aut_h <= self.class_bound && self.class_aut_h1 <= 2 && self.omega_layers.iter().all(|l| l.equal)
    }
}

pub fn check_theorem31(g: &FiniteGroup) -> Result<Theorem31Verdict> {
    require_cgphi_in_phi(g)?;
    let profile = structure_profile(g)?;
    let tower = compute_h_tower(g)?;
    theorem31_with(&profile, &tower)
}

fn theorem31_with(profile: &StructureProfile, tower: &HTower) -> Result<Theorem31Verdict> {
    let (d, d1) = rings(tower)?;
    let adj = d.ring.adjoint_group();
    let adj1 = d1.ring.adjoint_group();
    if adj.members.len() != d.len() || adj1.members.len() != d1.len() {
        return Err(Error::CrossCheckFailed("derivation ring is not radical".into()));
    }
    let mut omega_layers = Vec::new();
    if profile.p > 2 {
        for (k, layer) in tower.layers.iter().enumerate() {
            let i = k as u32 + 1;
            let group = d.ring.omega_adjoint(i)?;
            let set = d.ring.omega_set_adjoint(i)?;
            let aut_hi = sub_ring(d, layer);
            let equal = group == set && group == *aut_hi.mask();
            omega_layers.push(OmegaLayer {
                i,
                omega_group: group.count_ones(..),
                omega_set: set.count_ones(..),
                aut_hi: aut_hi.order(),
                equal,
            });
        }
    }
    Ok(Theorem31Verdict {
        class_aut_h: nilpotency_class(&adj.group)?,
        class_bound: profile.r.min(profile.s) as usize + 1,
        class_aut_h1: nilpotency_class(&adj1.group)?,
        ring_degree: d.ring.nilpotency_degree(),
        omega_layers,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    UnequalDCondition,
    Coclass2Main,
    StronglyFrattinianReductionInapplicable,
}

/// The rank quantities entering the branch decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankData {
    #[serde(rename = "dG")]
    pub d_g: usize,
    pub d_center: usize,
    pub d_h_over_zeta1: usize,
    pub d_zeta2_over_zeta1: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainBranchCounts {
    #[serde(rename = "derG_H1")]
    pub der_g_h1: usize,
    #[serde(rename = "hom_GZ1")]
    pub hom_g_z1: usize,
    pub hom_quot: usize,
    /// `|H_1 / Z_1|`; the proof's `|Hom(G/Z1,H1/Z1)| = p^2` needs this to be `p`.
    pub h1_quot_order: usize,
    pub inner_part: usize,
    pub aut_h1_direct: usize,
    pub zeta3_order: usize,
    /// `{g : [G, g] <= H_1} = ζ3(G)`
    pub inner_preimage_is_zeta3: bool,
    pub exact: bool,
    pub all_orders_p: bool,
    /// `G` full with respect to every maximal subgroup and `|ζ3(G)| = p^4`.
    pub proof_conditions: bool,
}

#[derive(Clone, Debug)]
pub struct BerkovichWitness {
    pub sigma: GroupHom,
    pub order: usize,
    /// Number of inner automorphisms `σ` was compared against.
    pub certificate_size: usize,
    pub branch: Branch,
}

#[derive(Clone, Debug)]
pub enum Theorem51Outcome {
    Witness {
        witness: BerkovichWitness,
        ranks: RankData,
        counts: Option<MainBranchCounts>,
        /// Violated claims on instances meeting every precondition.
        findings: Vec<String>,
        /// Count discrepancies where a precondition of the counting argument
        /// (fullness, `|ζ3(G)| = p^4`) fails.
        notes: Vec<String>,
    },
    Inconclusive {
        ranks: RankData,
        reason: String,
    },
    Refused(String),
}

/// One inner automorphism per coset of the center.
pub fn inner_automorphisms(g: &FiniteGroup) -> Vec<GroupHom> {
    let z = center(g);
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        for c in z.elements() {
            seen[g.mul(x, c)] = true;
        }
        out.push(GroupHom::inner(g, x));
    }
    out
}

/// `σ^p = id` by repeated composition and `σ` differs from every inner
/// automorphism. Returns the number of inner automorphisms compared.
pub fn certify_noninner_order_p(g: &FiniteGroup, sigma: &GroupHom) -> Result<usize> {
    let p = prime_of(g)?;
    if !sigma.is_bijective() || !sigma.is_homomorphism(g, g) {
        return Err(Error::CrossCheckFailed("witness is not an automorphism".into()));
    }
    let mut power = sigma.clone();
    for _ in 1..p {
        power = power.then(sigma);
    }
    if !power.is_identity() || sigma.is_identity() {
        return Err(Error::CrossCheckFailed("witness does not have order p".into()));
    }
    let inner = inner_automorphisms(g);
    if inner.iter().any(|t| t == sigma) {
        return Err(Error::CrossCheckFailed("witness is inner".into()));
    }
    Ok(inner.len())
}

fn first_noninner_order_p(p: usize, autos: &[GroupHom], inner: &HashSet<GroupHom>) -> Option<GroupHom> {
    autos.iter().find(|s| s.permutation_order() == p && !inner.contains(*s)).cloned()
}

fn witness(g: &FiniteGroup, sigma: GroupHom, branch: Branch) -> Result<BerkovichWitness> {
    let certificate_size = certify_noninner_order_p(g, &sigma)?;
    Ok(BerkovichWitness { order: sigma.permutation_order(), sigma, certificate_size, branch })
}

pub fn rank_data(g: &FiniteGroup) -> Result<RankData> {
    let (z1, z2, h, _) = h_subgroups(g)?;
    let (q, proj) = g.quotient(&z1)?;
    let d_g = structure_profile_d(g)?;
    Ok(RankData {
        d_g,
        d_center: abelian_rank(g, &z1),
        d_h_over_zeta1: abelian_rank(&q, &g.image_of(&proj, &q, &h)),
        d_zeta2_over_zeta1: abelian_rank(&q, &g.image_of(&proj, &q, &z2)),
    })
}

fn structure_profile_d(g: &FiniteGroup) -> Result<usize> {
    let p = prime_of(g)?;
    Ok(log_p(g.order() / frattini(g)?.order(), p) as usize)
}

/// Produces a non-inner automorphism of order `p` for a coclass-2 group
/// with `p` odd, following the case split of the existence proof.
pub fn verify_theorem51(g: &FiniteGroup) -> Result<Theorem51Outcome> {
    let p = prime_of(g)?;
    if p == 2 {
        return Ok(Theorem51Outcome::Refused("p = 2".into()));
    }
    let class = nilpotency_class(g)?;
    let n = log_p(g.order(), p) as usize;
    if n - class != 2 {
        return Ok(Theorem51Outcome::Refused(format!("coclass {}", n - class)));
    }
    let ranks = rank_data(g)?;
    let inner: HashSet<GroupHom> = inner_automorphisms(g).into_iter().collect();
    let z = center(g);
    let z1 = omega(g, &z, 1);

    if ranks.d_g * ranks.d_center != ranks.d_h_over_zeta1 {
        let mut findings = Vec::new();
        let mut found = first_noninner_order_p(p, &aut_n(g, &z1).members, &inner);
        if found.is_none() {
            findings.push("no non-inner order-p element in Aut_{Omega_1(Z(G))}(G); used Aut_{Z(G)}(G)".into());
            found = first_noninner_order_p(p, &aut_n(g, &z).members, &inner);
        }
        return match found {
            Some(sigma) => Ok(Theorem51Outcome::Witness {
                witness: witness(g, sigma, Branch::UnequalDCondition)?,
                ranks,
                counts: None,
                findings,
                notes: Vec::new(),
            }),
            None => Err(Error::CrossCheckFailed("no non-inner central automorphism of order p".into())),
        };
    }

    if !is_strongly_frattinian(g)? {
        let (_, _, h, layers) = h_subgroups(g)?;
        for n in [z1, layers[0].clone(), h] {
            let autos = aut_n(g, &n);
            if let Some(sigma) = first_noninner_order_p(p, &autos.members, &inner) {
                return Ok(Theorem51Outcome::Witness {
                    witness: witness(g, sigma, Branch::StronglyFrattinianReductionInapplicable)?,
                    ranks,
                    counts: None,
                    findings: Vec::new(),
                    notes: Vec::new(),
                });
            }
        }
        return Ok(Theorem51Outcome::Inconclusive {
            ranks,
            reason: "no non-inner order-p automorphism in Aut_N(G) for N in {Omega_1(Z), H_1, H}".into(),
        });
    }

    main_branch(g, p, ranks, &inner)
}

fn main_branch(g: &FiniteGroup, p: usize, ranks: RankData, inner: &HashSet<GroupHom>) -> Result<Theorem51Outcome> {
    let mut findings = Vec::new();
    let mut notes = Vec::new();
    if ranks.d_g != 2 || ranks.d_center != 1 {
        findings.push(format!("rank equality holds but d(G) = {}, d(Z(G)) = {}", ranks.d_g, ranks.d_center));
    }
    let upper = upper_central_series(g)?;
    let zeta3 = zeta(&upper, 3);
    let (_, _, _, layers) = h_subgroups(g)?;
    let h1 = &layers[0];
    let z1 = omega(g, &center(g), 1);
    if !is_elementary_abelian(g, h1) || !g.is_normal(h1) {
        return Err(Error::CrossCheckFailed("H_1 is not an elementary abelian normal subgroup".into()));
    }

    let hom_g_z1 = homs_into(g, g, &z1).len();
    let (q, proj) = g.quotient(&z1)?;
    let h1_quot = g.image_of(&proj, &q, h1);
    let hom_quot = homs_into(&q, &q, &h1_quot).len();
    let seq = crate::derivation::restriction_sequence(g, h1, &z1)?;
    let exact = seq.is_exact_at_first_two() && seq.is_surjective();
    let full_everywhere = fullness_table(g)?.iter().all(|f| f.is_full());
    if full_everywhere {
        let m = crate::fullness::corollary47_for_module(g, h1)?;
        if !m.exact_by_lifting {
            findings.push("lifting along the module decomposition missed some f".into());
        }
        findings.extend(m.findings);
    } else {
        notes.push("G is not full with respect to every maximal subgroup".into());
    }
    let der = &seq.middle;
    let aut_h1 = aut_n_from_derivations(g, der);
    let direct = aut_n_direct(g, h1);
    if direct.members != aut_h1.members {
        findings.push("Aut_{H_1}(G) differs between derivation and direct enumeration".into());
    }
    let inner_part = aut_h1.members.iter().filter(|s| inner.contains(*s)).count();
    let inner_pre = Subgroup::from_elements(
        g.order(),
        g.elements().filter(|&x| g.elements().all(|y| h1.contains(g.commutator(y, x)))),
    );
    let p2 = p * p;
    let counts = MainBranchCounts {
        der_g_h1: der.len(),
        hom_g_z1,
        hom_quot,
        h1_quot_order: h1_quot.order(),
        inner_part,
        aut_h1_direct: direct.order(),
        zeta3_order: zeta3.order(),
        inner_preimage_is_zeta3: inner_pre == zeta3,
        exact,
        all_orders_p: aut_h1.members.iter().all(|s| s.is_identity() || s.permutation_order() == p),
        proof_conditions: full_everywhere && zeta3.order() == p2 * p2,
    };
    let sink = if counts.proof_conditions { &mut findings } else { &mut notes };
    for (name, got, want) in [
        ("|Hom(G,Z1)|", counts.hom_g_z1, p2),
        ("|Hom(G/Z1,H1/Z1)|", counts.hom_quot, p2),
        ("|Der(G,H1)|", counts.der_g_h1, p2 * p2),
        ("|zeta_3(G)|", counts.zeta3_order, p2 * p2),
        ("inner part", counts.inner_part, p2 * p),
    ] {
        if got != want {
            sink.push(format!("{name} = {got}, expected {want}"));
        }
    }
    if !counts.inner_preimage_is_zeta3 {
        sink.push("elements inducing automorphisms in Aut_{H_1}(G) do not form zeta_3(G)".into());
    }
    if !counts.exact {
        sink.push("Der(G,H_1) -> Hom(G/Z1,H_1/Z1) is not surjective".into());
    }
    if !counts.all_orders_p {
        findings.push("Aut_{H_1}(G) has an element of order above p".into());
    }
    let sigma = first_noninner_order_p(p, &aut_h1.members, inner)
        .ok_or_else(|| Error::CrossCheckFailed("Aut_{H_1}(G) has no non-inner element of order p".into()))?;
    Ok(Theorem51Outcome::Witness {
        witness: witness(g, sigma, Branch::Coclass2Main)?,
        ranks,
        counts: Some(counts),
        findings,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::{from_pc_presentation, PcPresentation};

    fn build(p: &PcPresentation) -> FiniteGroup {
        from_pc_presentation(p).unwrap()
    }

    #[test]
    fn tower_on_abelian_and_heisenberg() {
        let e = build(&PcPresentation::new(3, 2));
        let t = compute_h_tower(&e).unwrap();
        assert_eq!(t.h, e.full());
        let heis = build(&PcPresentation::new(3, 3).commutator(1, 0, &[0, 0, 1]));
        let t = compute_h_tower(&heis).unwrap();
        assert_eq!(t.h.order() / t.zeta1.order(), 9);
        assert!(t.d.is_none());
        assert_eq!(t.layers.len(), 1);
    }

    #[test]
    fn h_tower_centralizes_frattini() {
        let heis = build(&PcPresentation::new(3, 3).commutator(1, 0, &[0, 0, 1]));
        let v = check_lemma32(&heis).unwrap();
        assert!(v.holds());
        assert!(!v.cgphi_in_phi);
        let e = build(&PcPresentation::new(3, 3));
        assert!(check_lemma32(&e).unwrap().holds());
    }

    #[test]
    fn gating() {
        let heis = build(&PcPresentation::new(3, 3).commutator(1, 0, &[0, 0, 1]));
        assert!(matches!(check_lemma33(&heis), Err(Error::HypothesisFailed(_))));
        assert!(matches!(check_theorem31(&heis), Err(Error::HypothesisFailed(_))));
        match verify_theorem51(&heis).unwrap() {
            Theorem51Outcome::Refused(r) => assert_eq!(r, "coclass 1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unequal_d_branch() {
        let g = build(&PcPresentation::new(3, 4).commutator(1, 0, &[0, 0, 1, 0]));
        match verify_theorem51(&g).unwrap() {
            Theorem51Outcome::Witness { witness, findings, ranks, .. } => {
                assert_eq!(witness.branch, Branch::UnequalDCondition);
                assert_eq!(witness.order, 3);
                assert_eq!(witness.certificate_size, 9);
                assert!(findings.is_empty());
                assert_eq!(ranks.d_g, 3);
            }
            other => panic!("{other:?}"),
        }
        let e = build(&PcPresentation::new(3, 3));
        assert!(matches!(verify_theorem51(&e).unwrap(), Theorem51Outcome::Witness { .. }));
    }

    #[test]
    fn inner_automorphism_count() {
        let heis = build(&PcPresentation::new(3, 3).commutator(1, 0, &[0, 0, 1]));
        let inner = inner_automorphisms(&heis);
        assert_eq!(inner.len(), 9);
        let distinct: HashSet<_> = inner.iter().cloned().collect();
        assert_eq!(distinct.len(), 9);
    }
}
