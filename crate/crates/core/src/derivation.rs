//! Derivations `G -> A` into an abelian normal subgroup and the ring
//! `Der(G, A)` they form.
//!
//! `A` is a `G`-module under conjugation and the cocycle law reads
//! `δ(xy) = δ(x)^y δ(y)`. Addition is pointwise, multiplication is
//! composition `(δ1 δ2)(x) = δ2(δ1(x))`. A derivation corresponds to the
//! endomorphism `x -> x δ(x)`, and the invertible derivations are exactly the
//! automorphisms in `Aut_A(G)`.

use crate::error::{Error, Result};
use crate::group::{extend_to_hom, for_each_tuple, Elem, FiniteGroup, GroupHom, Subgroup};
use crate::ring::{FiniteRing, RING_MAX_ORDER};
use crate::structure::{is_abelian_subgroup, minimal_generators};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Derivation {
    pub values: Vec<Elem>,
}

impl Derivation {
    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.values[x]
    }

    pub fn zero(g: &FiniteGroup) -> Self {
        Derivation { values: vec![g.identity(); g.order()] }
    }

    /// First pair violating `δ(xy) = δ(x)^y δ(y)`.
    pub fn cocycle_violation(&self, g: &FiniteGroup) -> Option<(Elem, Elem)> {
        for x in g.elements() {
            for y in g.elements() {
                if self.apply(g.mul(x, y)) != g.mul(g.conjugate(self.apply(x), y), self.apply(y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_derivation(&self, g: &FiniteGroup, module: &Subgroup) -> bool {
        self.values.iter().all(|&v| module.contains(v)) && self.cocycle_violation(g).is_none()
    }

    /// Pointwise product.
    pub fn sum(&self, other: &Derivation, g: &FiniteGroup) -> Derivation {
        Derivation { values: self.values.iter().zip(&other.values).map(|(&a, &b)| g.mul(a, b)).collect() }
    }

    /// `x -> other(self(x))`
    pub fn product(&self, other: &Derivation) -> Derivation {
        Derivation { values: self.values.iter().map(|&a| other.apply(a)).collect() }
    }

    pub fn is_zero(&self, g: &FiniteGroup) -> bool {
        self.values.iter().all(|&v| v == g.identity())
    }
}

/// `Der(G, A)` materialized: every derivation listed, with ring tables over
/// their indices.
#[derive(Clone, Debug)]
pub struct DerivationRing {
    pub module: Subgroup,
    /// Minimal generators of `G`; a derivation is determined by its values here.
    pub generators: Vec<Elem>,
    module_elems: Vec<Elem>,
    module_pos: Vec<usize>,
    lookup: Vec<u32>,
    pub elements: Vec<Derivation>,
    pub ring: FiniteRing,
}

const ABSENT: u32 = u32::MAX;

impl DerivationRing {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn code_of_values(&self, values_on_gens: impl Iterator<Item = Elem>) -> Option<usize> {
        let k = self.module_elems.len();
        let mut code = 0usize;
        for v in values_on_gens {
            let pos = self.module_pos[v];
            if pos == usize::MAX {
                return None;
            }
            code = code * k + pos;
        }
        Some(code)
    }

    /// Index of a derivation, read off its generator values.
    pub fn index_of(&self, d: &Derivation) -> Option<usize> {
        let code = self.code_of_values(self.generators.iter().map(|&g| d.apply(g)))?;
        let idx = self.lookup[code];
        (idx != ABSENT && self.elements[idx as usize] == *d).then_some(idx as usize)
    }

    pub fn zero_index(&self) -> usize {
        self.ring.zero()
    }

    /// Derivations whose values lie in `sub`.
    pub fn indices_into(&self, sub: &Subgroup) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.elements[i].values.iter().all(|&v| sub.contains(v))).collect()
    }

    /// Indices of derivations that are group homomorphisms `G -> A`.
    pub fn homomorphism_indices(&self, g: &FiniteGroup) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| GroupHom { images: self.elements[i].values.clone() }.is_homomorphism(g, g))
            .collect()
    }
}

fn enumerate_maps(g: &FiniteGroup, module: &Subgroup) -> Result<DerivationRing> {
    if !is_abelian_subgroup(g, module) {
        return Err(Error::NotAbelian);
    }
    if !g.is_normal(module) {
        let v = module
            .elements()
            .flat_map(|a| g.elements().map(move |x| (a, x)))
            .find(|&(a, x)| !module.contains(g.conjugate(a, x)))
            .unwrap();
        return Err(Error::NotNormal { element: v.0, by: v.1 });
    }
    let generators = if g.order() > 1 { minimal_generators(g) } else { Vec::new() };
    let mut module_elems: Vec<Elem> = vec![g.identity()];
    module_elems.extend(module.elements().filter(|&a| a != g.identity()));
    let mut module_pos = vec![usize::MAX; g.order()];
    for (i, &a) in module_elems.iter().enumerate() {
        module_pos[a] = i;
    }
    let k = module_elems.len();
    let space = k.checked_pow(generators.len() as u32).expect("assignment space overflow");

    let mut elements = Vec::new();
    let mut lookup = vec![ABSENT; space];
    let mut images = vec![0; generators.len()];
    let mut code = 0usize;
    for_each_tuple(k, generators.len(), |t| {
        for (slot, (&gen, &c)) in images.iter_mut().zip(generators.iter().zip(t)) {
            *slot = g.mul(gen, module_elems[c]);
        }
        if let Some(endo) = extend_to_hom(g, &generators, &images, g) {
            let values = g.elements().map(|x| g.mul(g.inv(x), endo.apply(x))).collect();
            lookup[code] = elements.len() as u32;
            elements.push(Derivation { values });
        }
        code += 1;
    });

    Ok(DerivationRing {
        module: module.clone(),
        generators,
        module_elems,
        module_pos,
        lookup,
        elements,
        ring: FiniteRing::null(1),
    })
}

/// The derivations `G -> A` without the ring tables; usable well beyond
/// [`RING_MAX_ORDER`].
pub fn derivation_maps(g: &FiniteGroup, module: &Subgroup) -> Result<Vec<Derivation>> {
    Ok(enumerate_maps(g, module)?.elements)
}

/// Enumerates `Der(G, A)` through the endomorphisms `g_i -> g_i a_i`.
pub fn enumerate_derivations(g: &FiniteGroup, module: &Subgroup) -> Result<DerivationRing> {
    let mut der = enumerate_maps(g, module)?;
    let n = der.len();
    if n > RING_MAX_ORDER {
        return Err(Error::TooLarge { order: n, limit: RING_MAX_ORDER });
    }
    let locate = |values: Vec<Elem>, der: &DerivationRing| -> usize {
        let code = der.code_of_values(values.into_iter()).expect("value in module");
        let idx = der.lookup[code];
        assert_ne!(idx, ABSENT, "derivations closed under ring operations");
        idx as usize
    };
    let mut add = vec![vec![0; n]; n];
    let mut mul = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (&der.elements[i], &der.elements[j]);
            let sum: Vec<Elem> = der.generators.iter().map(|&x| g.mul(a.apply(x), b.apply(x))).collect();
            let prod: Vec<Elem> = der.generators.iter().map(|&x| b.apply(a.apply(x))).collect();
            add[i][j] = locate(sum, &der);
            mul[i][j] = locate(prod, &der);
        }
    }
    der.ring = FiniteRing::new(&add, &mul)?;
    Ok(der)
}

/// `x -> x δ(x)` when bijective.
pub fn aut_from_derivation(g: &FiniteGroup, d: &Derivation) -> Option<GroupHom> {
    let hom = GroupHom { images: g.elements().map(|x| g.mul(x, d.apply(x))).collect() };
    hom.is_bijective().then_some(hom)
}

/// `δ_σ(x) = x^-1 σ(x)`.
pub fn derivation_from_aut(g: &FiniteGroup, module: &Subgroup, sigma: &GroupHom) -> Result<Derivation> {
    let mut values = Vec::with_capacity(g.order());
    for x in g.elements() {
        let v = g.mul(g.inv(x), sigma.apply(x));
        if !module.contains(v) {
            return Err(Error::NotInAutA(x));
        }
        values.push(v);
    }
    Ok(Derivation { values })
}

/// `Aut_N(G)`: automorphisms with `x^-1 σ(x) in N` for every `x`.
#[derive(Clone, Debug)]
pub struct AutNView {
    pub normal: Subgroup,
    /// Sorted by image table.
    pub members: Vec<GroupHom>,
}

impl AutNView {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, sigma: &GroupHom) -> bool {
        self.members.binary_search(sigma).is_ok()
    }

    pub fn is_closed_under_composition(&self) -> bool {
        self.members.iter().all(|a| self.members.iter().all(|b| self.contains(&a.then(b))))
    }
}

/// The correspondence `σ -> δ_σ` between `Aut_A(G)` (found by direct
/// search) and the adjoint group of `Der(G, A)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AutCorrespondence {
    pub aut_order: usize,
    pub adjoint_order: usize,
    pub bijective: bool,
    /// `δ_{στ} = δ_σ ∘ δ_τ`, checked for all `σ` against generators `τ`.
    pub homomorphism: bool,
}

impl AutCorrespondence {
    pub fn holds(&self) -> bool {
        self.aut_order == self.adjoint_order && self.bijective && self.homomorphism
    }
}

pub fn verify_aut_correspondence(g: &FiniteGroup, a: &Subgroup) -> Result<AutCorrespondence> {
    let der = enumerate_derivations(g, a)?;
    let adj = der.ring.adjoint_group();
    let autos = aut_n_direct(g, a);
    let index = |s: &GroupHom| derivation_from_aut(g, a, s).ok().and_then(|d| der.index_of(&d));
    let idx: Vec<Option<usize>> = autos.members.iter().map(index).collect();
    let mut hit = vec![false; der.len()];
    let mut bijective = autos.order() == adj.members.len();
    for i in &idx {
        match i {
            Some(i) if adj.contains(*i) && !hit[*i] => hit[*i] = true,
            _ => bijective = false,
        }
    }
    let mut homomorphism = bijective;
    if bijective {
        let gens: Vec<(GroupHom, usize)> = adj
            .group
            .greedy_generators(&adj.group.full())
            .into_iter()
            .map(|k| {
                let d = adj.to_ring(k);
                (aut_from_derivation(g, &der.elements[d]).expect("unit gives automorphism"), d)
            })
            .collect();
        homomorphism = autos.members.iter().zip(&idx).all(|(sigma, &si)| {
            gens.iter().all(|(tau, ti)| index(&sigma.then(tau)) == Some(der.ring.circle(si.unwrap(), *ti)))
        });
    }
    Ok(AutCorrespondence { aut_order: autos.order(), adjoint_order: adj.members.len(), bijective, homomorphism })
}

/// Through the bijective maps `x -> x δ(x)`, `δ ∈ Der(G, N)`, when `N` is abelian and normal,
/// by direct search otherwise.
pub fn aut_n(g: &FiniteGroup, n: &Subgroup) -> AutNView {
    if is_abelian_subgroup(g, n) && g.is_normal(n) {
        let maps = derivation_maps(g, n).expect("abelian normal module");
        let mut members: Vec<GroupHom> = maps.iter().filter_map(|d| aut_from_derivation(g, d)).collect();
        members.sort();
        AutNView { normal: n.clone(), members }
    } else {
        aut_n_direct(g, n)
    }
}

pub fn aut_n_from_derivations(g: &FiniteGroup, der: &DerivationRing) -> AutNView {
    let view = der.ring.adjoint_group();
    let mut members: Vec<GroupHom> = view
        .members
        .iter()
        .map(|&i| aut_from_derivation(g, &der.elements[i]).expect("circle-invertible derivation is bijective"))
        .collect();
    members.sort();
    AutNView { normal: der.module.clone(), members }
}

/// Assigns `g_i -> g_i n_i` on a minimal generating set and keeps the
/// bijective homomorphisms moving every element within its coset.
pub fn aut_n_direct(g: &FiniteGroup, n: &Subgroup) -> AutNView {
    let gens = if g.order() > 1 { minimal_generators(g) } else { Vec::new() };
    let pool = n.to_vec();
    let mut members = Vec::new();
    let mut images = vec![0; gens.len()];
    for_each_tuple(pool.len(), gens.len(), |t| {
        for (slot, (&x, &c)) in images.iter_mut().zip(gens.iter().zip(t)) {
            *slot = g.mul(x, pool[c]);
        }
        if let Some(h) = extend_to_hom(g, &gens, &images, g) {
            if h.is_bijective() && g.elements().all(|x| n.contains(g.mul(g.inv(x), h.apply(x)))) {
                members.push(h);
            }
        }
    });
    members.sort();
    AutNView { normal: n.clone(), members }
}

/// `0 -> Der(G,B) -> Der(G,A) -> Der(G/B, A/B)` with both maps verified as
/// ring homomorphisms.
#[derive(Clone, Debug)]
pub struct RestrictionSequence {
    pub inner: DerivationRing,
    pub middle: DerivationRing,
    pub outer: DerivationRing,
    pub quotient: FiniteGroup,
    pub projection: GroupHom,
    /// `Der(G,B) -> Der(G,A)`
    pub embedding: Vec<usize>,
    /// `δ -> δ~` with `δ~(xB) = δ(x)B`
    pub tilde: Vec<usize>,
}

impl RestrictionSequence {
    pub fn embedding_injective(&self) -> bool {
        let mut seen = self.embedding.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.embedding.len()
    }

    pub fn kernel_of_tilde(&self) -> Vec<usize> {
        (0..self.middle.len()).filter(|&i| self.tilde[i] == self.outer.zero_index()).collect()
    }

    pub fn image_of_tilde(&self) -> Vec<usize> {
        let mut img = self.tilde.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Exact at `Der(G,B)` and `Der(G,A)`.
    pub fn is_exact_at_first_two(&self) -> bool {
        let mut emb = self.embedding.clone();
        emb.sort_unstable();
        self.embedding_injective() && self.kernel_of_tilde() == emb
    }

    pub fn is_surjective(&self) -> bool {
        self.image_of_tilde().len() == self.outer.len()
    }
}

fn check_ring_hom(src: &FiniteRing, dst: &FiniteRing, map: &[usize]) -> Result<()> {
    for a in src.elements() {
        for b in src.elements() {
            if map[src.add(a, b)] != dst.add(map[a], map[b]) || map[src.mul(a, b)] != dst.mul(map[a], map[b]) {
                return Err(Error::CrossCheckFailed(format!("not a ring homomorphism at ({a}, {b})")));
            }
        }
    }
    Ok(())
}

pub fn restriction_sequence(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Result<RestrictionSequence> {
    if !b.is_subset(a) {
        return Err(Error::HypothesisFailed("B is not contained in A".into()));
    }
    let middle = enumerate_derivations(g, a)?;
    let inner = enumerate_derivations(g, b)?;
    for (i, d) in middle.elements.iter().enumerate() {
        if let Some(x) = b.elements().find(|&x| !b.contains(d.apply(x))) {
            return Err(Error::NotInvariant { derivation: i, element: x });
        }
    }
    let (quotient, projection) = g.quotient(b)?;
    let a_bar = g.image_of(&projection, &quotient, a);
    let outer = enumerate_derivations(&quotient, &a_bar)?;

    let embedding: Vec<usize> = inner
        .elements
        .iter()
        .map(|d| middle.index_of(d).ok_or_else(|| Error::CrossCheckFailed("Der(G,B) not inside Der(G,A)".into())))
        .collect::<Result<_>>()?;

    let mut rep = vec![usize::MAX; quotient.order()];
    for x in g.elements() {
        let c = projection.apply(x);
        if rep[c] == usize::MAX {
            rep[c] = x;
        }
    }
    let mut tilde = Vec::with_capacity(middle.len());
    for d in &middle.elements {
        let values: Vec<Elem> = (0..quotient.order()).map(|c| projection.apply(d.apply(rep[c]))).collect();
        // well defined on cosets
        if let Some(x) = g.elements().find(|&x| projection.apply(d.apply(x)) != values[projection.apply(x)]) {
            return Err(Error::NotWellDefined(x));
        }
        let induced = Derivation { values };
        tilde.push(
            outer
                .index_of(&induced)
                .ok_or_else(|| Error::CrossCheckFailed("induced map is not a derivation".into()))?,
        );
    }
    check_ring_hom(&inner.ring, &middle.ring, &embedding)?;
    check_ring_hom(&middle.ring, &outer.ring, &tilde)?;
    Ok(RestrictionSequence { inner, middle, outer, quotient, projection, embedding, tilde })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::all_homs;
    use crate::pc::{from_pc_presentation, PcPresentation};
    use crate::structure::center;

    fn heis() -> (PcPresentation, FiniteGroup) {
        let pcp = PcPresentation::new(3, 3).commutator(1, 0, &[0, 0, 1]);
        let g = from_pc_presentation(&pcp).unwrap();
        (pcp, g)
    }

    #[test]
    fn central_module_counts() {
        let e = from_pc_presentation(&PcPresentation::new(3, 2)).unwrap();
        let factor = e.closure([1]);
        assert_eq!(enumerate_derivations(&e, &factor).unwrap().len(), 9);

        let (_, g) = heis();
        let z = center(&g);
        let der = enumerate_derivations(&g, &z).unwrap();
        assert_eq!(der.len(), 9);
        let c3 = FiniteGroup::cyclic(3);
        assert_eq!(der.len(), all_homs(&g, &c3).len());
        assert_eq!(der.elements[der.zero_index()], Derivation::zero(&g));
    }

    #[test]
    fn rank_two_noncentral_module() {
        let (pcp, g) = heis();
        let a = g.closure([pcp.generator(1), pcp.generator(2)]);
        let der = enumerate_derivations(&g, &a).unwrap();
        assert_eq!(der.len(), 81);
        assert!(der.elements.iter().all(|d| d.is_derivation(&g, &a)));
        der.ring.check_axioms_exhaustive().unwrap();
    }

    #[test]
    fn refuses_bad_modules() {
        let (pcp, g) = heis();
        assert_eq!(enumerate_derivations(&g, &g.full()).unwrap_err(), Error::NotAbelian);
        let not_normal = g.closure([pcp.generator(0)]);
        assert!(matches!(enumerate_derivations(&g, &not_normal), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn aut_derivation_round_trip() {
        let (_, g) = heis();
        let z = center(&g);
        let der = enumerate_derivations(&g, &z).unwrap();
        let id = aut_from_derivation(&g, &Derivation::zero(&g)).unwrap();
        assert!(id.is_identity());
        let mut invertible = 0;
        for d in &der.elements {
            if let Some(s) = aut_from_derivation(&g, d) {
                invertible += 1;
                assert_eq!(&derivation_from_aut(&g, &z, &s).unwrap(), d);
            }
        }
        assert_eq!(invertible, 9);
    }

    #[test]
    fn derivation_from_aut_rejects_outside() {
        let (pcp, g) = heis();
        let sigma = GroupHom::inner(&g, pcp.generator(0));
        let trivial = g.trivial();
        assert!(matches!(derivation_from_aut(&g, &trivial, &sigma), Err(Error::NotInAutA(_))));
    }

    #[test]
    fn aut_n_examples() {
        let (_, g) = heis();
        assert_eq!(aut_n(&g, &g.trivial()).order(), 1);
        let e = from_pc_presentation(&PcPresentation::new(3, 2)).unwrap();
        assert_eq!(aut_n(&e, &e.full()).order(), 48);
        let z = center(&g);
        let via_der = aut_n(&g, &z);
        let direct = aut_n_direct(&g, &z);
        assert_eq!(via_der.order(), 9);
        assert_eq!(via_der.members, direct.members);
        assert!(via_der.is_closed_under_composition());
    }

    #[test]
    fn restriction_sequence_edges() {
        let (pcp, g) = heis();
        let a = g.closure([pcp.generator(1), pcp.generator(2)]);
        let z = center(&g);

        let whole = restriction_sequence(&g, &a, &a).unwrap();
        assert_eq!(whole.outer.len(), 1);
        assert!(whole.is_exact_at_first_two());

        let none = restriction_sequence(&g, &a, &g.trivial()).unwrap();
        assert_eq!(none.embedding, vec![none.middle.zero_index()]);
        // G/1 = G: the induced map is a bijection onto Der(G, A)
        assert_eq!(none.image_of_tilde().len(), none.middle.len());
        assert_eq!(none.outer.len(), none.middle.len());

        let seq = restriction_sequence(&g, &a, &z).unwrap();
        assert!(seq.is_exact_at_first_two());
        assert_eq!(seq.kernel_of_tilde().len(), 9);
        assert!(seq.is_surjective());
    }

    #[test]
    fn automorphisms_match_invertible_derivations() {
        let (pcp, g) = heis();
        for a in [center(&g), g.closure([pcp.generator(1), pcp.generator(2)])] {
            let v = verify_aut_correspondence(&g, &a).unwrap();
            assert!(v.holds(), "{v:?}");
        }
        let e = from_pc_presentation(&PcPresentation::new(3, 2)).unwrap();
        let v = verify_aut_correspondence(&e, &e.full()).unwrap();
        assert_eq!((v.aut_order, v.adjoint_order), (48, 48));
        assert!(v.holds());
    }
}
