//! Fullness of a p-group with respect to a maximal subgroup, the explicit
//! lifting of homomorphisms `G/Z1 -> A/Z1` to derivations `G -> A`, and the
//! equivalence between fullness and surjectivity of
//! `Der(G, A) -> Hom(G/Z1, A/Z1)`.
//!
//! Throughout, `A` is an elementary abelian normal subgroup of rank 2 that is
//! not central, `Z1 = A ∩ Z(G)` has order `p`, and `C = C_G(A)`.

use crate::derivation::{enumerate_derivations, restriction_sequence, Derivation};
use crate::error::{Error, Result};
use crate::group::{homs_into, Elem, FiniteGroup, GroupHom, Subgroup};
use crate::lattice::{is_purely_nonabelian, subgroups_within};
use crate::structure::{
    abelian_rank, center, centralizer, frattini, is_elementary_abelian, lower_central_series, maximal_subgroups,
    maximal_subgroups_of, omega_set, power_subgroup, prime_of, upper_central_series,
};

/// The four conditions on a candidate `K <= M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct KChecks {
    pub index_p2: bool,
    pub non_normal: bool,
    #[serde(rename = "KcapC_normal")]
    pub k_cap_c_normal: bool,
    pub contains_gp: bool,
}

impl KChecks {
    pub fn all(&self) -> bool {
        self.index_p2 && self.non_normal && self.k_cap_c_normal && self.contains_gp
    }
}

#[derive(Clone, Debug)]
pub struct MaximalRecord {
    pub m: Subgroup,
    pub k: Subgroup,
    pub checks: KChecks,
}

#[derive(Clone, Debug)]
pub struct FullnessWitness {
    pub c: Subgroup,
    pub records: Vec<MaximalRecord>,
}

impl FullnessWitness {
    pub fn record_for(&self, m: &Subgroup) -> Option<&MaximalRecord> {
        self.records.iter().find(|r| &r.m == m)
    }
}

#[derive(Clone, Debug)]
pub enum Fullness {
    Full(FullnessWitness),
    NotFull {
        c: Subgroup,
        /// First maximal `M != C` without a suitable `K`; `None` when `C` is
        /// the only maximal subgroup.
        failing: Option<Subgroup>,
    },
}

impl Fullness {
    pub fn is_full(&self) -> bool {
        matches!(self, Fullness::Full(_))
    }

    pub fn witness(&self) -> Option<&FullnessWitness> {
        match self {
            Fullness::Full(w) => Some(w),
            Fullness::NotFull { .. } => None,
        }
    }
}

pub fn k_checks(g: &FiniteGroup, c: &Subgroup, k: &Subgroup, gp: &Subgroup, p: usize) -> KChecks {
    let kc = k.intersection(c);
    KChecks {
        index_p2: k.order() * p * p == g.order(),
        non_normal: !g.is_normal(k),
        k_cap_c_normal: g.is_normal(&kc),
        contains_gp: gp.is_subset(&kc),
    }
}

/// Searches, for every maximal `M != C`, the maximal subgroups `K` of `M` in
/// ascending order and records the first one passing all checks.
///
/// A group whose only maximal subgroup is `C` (a cyclic group) is reported
/// as not full.
pub fn is_full_wrt(g: &FiniteGroup, c: &Subgroup) -> Result<Fullness> {
    let p = prime_of(g)?;
    let maximals = maximal_subgroups(g);
    if c.order() * p != g.order() || !maximals.contains(c) {
        return Err(Error::NotMaximal);
    }
    let others: Vec<&Subgroup> = maximals.iter().filter(|m| *m != c).collect();
    if others.is_empty() {
        return Ok(Fullness::NotFull { c: c.clone(), failing: None });
    }
    let gp = power_subgroup(g, &g.full(), p as u64);
    let mut records = Vec::new();
    for m in others {
        let found = maximal_subgroups_of(g, m).into_iter().find_map(|k| {
            let checks = k_checks(g, c, &k, &gp, p);
            checks.all().then(|| MaximalRecord { m: m.clone(), k, checks })
        });
        match found {
            Some(r) => records.push(r),
            None => return Ok(Fullness::NotFull { c: c.clone(), failing: Some(m.clone()) }),
        }
    }
    Ok(Fullness::Full(FullnessWitness { c: c.clone(), records }))
}

/// Fullness with respect to every maximal subgroup, in ascending order.
pub fn fullness_table(g: &FiniteGroup) -> Result<Vec<Fullness>> {
    maximal_subgroups(g).iter().map(|c| is_full_wrt(g, c)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop42Verdict {
    pub d: usize,
    pub powerful: bool,
    /// p odd, 2-generated and not powerful. For p = 2 the argument breaks
    /// down (D8 is a counterexample), so even primes are never in scope.
    pub in_hypothesis: bool,
    pub full_wrt: Vec<bool>,
    /// Fullness of `G/γ3(G)G^p` with respect to the image of each maximal.
    pub quotient_full_wrt: Vec<bool>,
    /// `None` outside the hypothesis.
    pub holds: Option<bool>,
    pub quotient_criterion_holds: bool,
}

/// Checks that 2-generated non-powerful groups are full with respect to all
/// maximal subgroups, and that fullness passes to and from `G/γ3(G)G^p`.
pub fn check_prop42(g: &FiniteGroup) -> Result<Prop42Verdict> {
    let p = prime_of(g)?;
    let profile_d = crate::structure::FrattiniBasis::new(g, &g.full()).rank();
    let powerful = crate::structure::is_powerful(g)?;
    let maximals = maximal_subgroups(g);
    let full_wrt: Vec<bool> = maximals.iter().map(|c| is_full_wrt(g, c).map(|f| f.is_full())).collect::<Result<_>>()?;

    let lower = lower_central_series(g)?;
    let gamma3 = lower.get(2).cloned().unwrap_or_else(|| g.trivial());
    let gp = power_subgroup(g, &g.full(), p as u64);
    let n = g.closure(gamma3.elements().chain(gp.elements()));
    let (q, proj) = g.quotient(&n)?;
    let quotient_full_wrt: Vec<bool> = maximals
        .iter()
        .map(|c| is_full_wrt(&q, &g.image_of(&proj, &q, c)).map(|f| f.is_full()))
        .collect::<Result<_>>()?;

    let in_hypothesis = p != 2 && profile_d == 2 && !powerful;
    Ok(Prop42Verdict {
        d: profile_d,
        powerful,
        in_hypothesis,
        holds: in_hypothesis.then(|| full_wrt.iter().all(|&f| f)),
        quotient_criterion_holds: full_wrt == quotient_full_wrt,
        full_wrt,
        quotient_full_wrt,
    })
}

/// `α: K -> Z_p` with `[k, y] ∈ x^α(k) K`.
#[derive(Clone, Debug)]
pub struct AlphaHom {
    pub p: usize,
    values: Vec<Option<u32>>,
    pub is_homomorphism: bool,
    /// `ker α = K ∩ C`
    pub kernel_matches: bool,
    pub surjective: bool,
}

impl AlphaHom {
    pub fn value(&self, k: Elem) -> Option<u32> {
        self.values[k]
    }

    /// `(element, α(element))` over `K`, ascending.
    pub fn table(&self) -> Vec<(Elem, u32)> {
        self.values.iter().enumerate().filter_map(|(i, v)| v.map(|v| (i, v))).collect()
    }
}

pub fn alpha_hom(g: &FiniteGroup, k: &Subgroup, c: &Subgroup, y: Elem, x: Elem) -> Result<AlphaHom> {
    let p = prime_of(g)?;
    let x_inv = g.inv(x);
    let mut values = vec![None; g.order()];
    for kk in k.elements() {
        let comm = g.commutator(kk, y);
        let mut probe = comm;
        let mut found = None;
        for a in 0..p as u32 {
            if k.contains(probe) {
                found = Some(a);
                break;
            }
            probe = g.mul(x_inv, probe);
        }
        values[kk] = Some(found.ok_or(Error::DecompositionFailed { k: kk, y })?);
    }
    let at = |e: Elem| values[e].unwrap();
    let is_homomorphism = k.elements().all(|a| k.elements().all(|b| at(g.mul(a, b)) == (at(a) + at(b)) % p as u32));
    let kc = k.intersection(c);
    let kernel_matches = k.elements().all(|e| (at(e) == 0) == kc.contains(e));
    let surjective = k.elements().any(|e| at(e) != 0);
    Ok(AlphaHom { p, values, is_homomorphism, kernel_matches, surjective })
}

fn inverse_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| a * b % p == 1).expect("p prime")
}

/// The central `z` with `[k, u] = z^α(k)` for every `k ∈ K`.
pub fn scale_z(g: &FiniteGroup, k: &Subgroup, u: Elem, alpha: &AlphaHom) -> Result<Elem> {
    let p = alpha.p as u32;
    let z = match k.elements().find(|&e| alpha.value(e).unwrap_or(0) != 0) {
        Some(k0) => {
            let a0 = alpha.value(k0).unwrap();
            g.pow(g.commutator(k0, u), inverse_mod(a0, p) as u64)
        }
        None => g.identity(),
    };
    for e in k.elements() {
        if g.commutator(e, u) != g.pow(z, alpha.value(e).unwrap() as u64) {
            return Err(Error::NoSolution(e));
        }
    }
    if let Some(w) = g.elements().find(|&w| g.mul(w, z) != g.mul(z, w)) {
        return Err(Error::NoSolution(w));
    }
    Ok(z)
}

/// `δ(k x^j y^i) = z^j u^i` for `k ∈ K`, `0 <= i, j < p`, with
/// well-definedness and the cocycle law both verified exhaustively.
pub fn lemma46_derivation(g: &FiniteGroup, k: &Subgroup, x: Elem, y: Elem, u: Elem, z: Elem) -> Result<Derivation> {
    let p = prime_of(g)?;
    let mut values = vec![usize::MAX; g.order()];
    for i in 0..p as u64 {
        for j in 0..p as u64 {
            let w = g.mul(g.pow(x, j), g.pow(y, i));
            let val = g.mul(g.pow(z, j), g.pow(u, i));
            for kk in k.elements() {
                let e = g.mul(kk, w);
                if values[e] == usize::MAX {
                    values[e] = val;
                } else if values[e] != val {
                    return Err(Error::NotWellDefined(e));
                }
            }
        }
    }
    if let Some(e) = values.iter().position(|&v| v == usize::MAX) {
        return Err(Error::NotWellDefined(e));
    }
    let d = Derivation { values };
    if let Some((a, b)) = d.cocycle_violation(g) {
        return Err(Error::NotCocycle(a, b));
    }
    Ok(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftBranch {
    Zero,
    #[serde(rename = "M_ne_C")]
    MNeC,
    #[serde(rename = "M_eq_C")]
    MEqC,
}

#[derive(Clone, Debug)]
pub struct LiftResult {
    /// `G/Z1 -> G/Z1`, image inside `A/Z1`.
    pub f: GroupHom,
    pub derivation: Derivation,
    pub branch: LiftBranch,
}

/// Context for lifting `f ∈ Hom(G/Z1, A/Z1)` along `Der(G, A)`.
#[derive(Clone, Debug)]
pub struct HomLifter<'a> {
    g: &'a FiniteGroup,
    p: usize,
    pub a: Subgroup,
    pub z1: Subgroup,
    pub c: Subgroup,
    pub quotient: FiniteGroup,
    pub projection: GroupHom,
    pub a_bar: Subgroup,
    pub fullness: Fullness,
    phi: Subgroup,
}

/// Checks the standing hypotheses on `(G, A)`; returns `(p, Z1, C)`.
pub fn check_module_hypotheses(g: &FiniteGroup, a: &Subgroup) -> Result<(usize, Subgroup, Subgroup)> {
    let fail = |m: &str| Err(Error::HypothesisFailed(m.into()));
    let p = prime_of(g)?;
    if p == 2 {
        return fail("p must be odd");
    }
    if a.order() != p * p || !is_elementary_abelian(g, a) {
        return fail("A is not elementary abelian of rank 2");
    }
    if !g.is_normal(a) {
        return fail("A is not normal");
    }
    let z = center(g);
    if a.is_subset(&z) {
        return fail("A is central");
    }
    let z1 = a.intersection(&z);
    if z1.order() != p {
        return fail("|A ∩ Z(G)| != p");
    }
    let c = centralizer(g, a);
    if c.order() * p != g.order() {
        return fail("C_G(A) is not maximal");
    }
    Ok((p, z1, c))
}

impl<'a> HomLifter<'a> {
    pub fn new(g: &'a FiniteGroup, a: &Subgroup) -> Result<Self> {
        let (p, z1, c) = check_module_hypotheses(g, a)?;
        let (quotient, projection) = g.quotient(&z1)?;
        let a_bar = g.image_of(&projection, &quotient, a);
        let fullness = is_full_wrt(g, &c)?;
        let phi = frattini(g)?;
        Ok(HomLifter { g, p, a: a.clone(), z1, c, quotient, projection, a_bar, fullness, phi })
    }

    /// `Hom(G/Z1, A/Z1)`.
    pub fn homs(&self) -> Vec<GroupHom> {
        homs_into(&self.quotient, &self.quotient, &self.a_bar)
    }

    fn pick_u(&self, f: &GroupHom, at: Elem) -> Result<Elem> {
        let target = f.apply(self.projection.apply(at));
        self.a
            .elements()
            .find(|&u| !self.z1.contains(u) && self.projection.apply(u) == target)
            .ok_or_else(|| Error::HypothesisFailed("f(yZ1) has no preimage in A \\ Z1".into()))
    }

    pub fn lift(&self, f: &GroupHom) -> Result<LiftResult> {
        let g = self.g;
        let q = &self.quotient;
        if f.images.iter().all(|&v| v == q.identity()) {
            return Ok(LiftResult { f: f.clone(), derivation: Derivation::zero(g), branch: LiftBranch::Zero });
        }
        let m = g.preimage(&self.projection, &f.kernel(q, q));
        let (derivation, branch) = if m != self.c {
            let y = self.c.elements().find(|&e| !m.contains(e)).expect("C != M");
            let u = self.pick_u(f, y)?;
            let witness = self
                .fullness
                .witness()
                .ok_or_else(|| Error::HypothesisFailed("G is not full with respect to C_G(A)".into()))?;
            let record = witness
                .record_for(&m)
                .ok_or_else(|| Error::HypothesisFailed("kernel of f is not a maximal subgroup".into()))?;
            let k = &record.k;
            let x = self
                .phi
                .elements()
                .find(|&e| !k.contains(e))
                .ok_or_else(|| Error::HypothesisFailed("Phi(G) is contained in K".into()))?;
            let alpha = alpha_hom(g, k, &self.c, y, x)?;
            if !alpha.is_homomorphism || !alpha.kernel_matches {
                return Err(Error::CrossCheckFailed("alpha is not a homomorphism with kernel K ∩ C".into()));
            }
            let z = scale_z(g, k, u, &alpha)?;
            let d = lemma46_derivation(g, k, x, y, u, z)?;
            if let Some(e) = m.elements().find(|&e| !self.z1.contains(d.apply(e))) {
                return Err(Error::CrossCheckFailed(format!("lift maps {e} in M outside Z1")));
            }
            (d, LiftBranch::MNeC)
        } else {
            let t = g.elements().find(|&e| !self.c.contains(e)).expect("C is proper");
            let u = self.pick_u(f, t)?;
            let d = self.norm_derivation(t, u)?;
            (d, LiftBranch::MEqC)
        };
        if let Some(e) =
            g.elements().find(|&e| self.projection.apply(derivation.apply(e)) != f.apply(self.projection.apply(e)))
        {
            return Err(Error::CrossCheckFailed(format!("lift does not induce f at {e}")));
        }
        Ok(LiftResult { f: f.clone(), derivation, branch })
    }

    /// `u^{1 + t + ... + t^{p-1}}`, the product of the conjugates `u^{t^r}`.
    pub fn norm(&self, t: Elem, u: Elem) -> Elem {
        let g = self.g;
        let mut acc = g.identity();
        let mut conj = u;
        for _ in 0..self.p {
            acc = g.mul(acc, conj);
            conj = g.conjugate(conj, t);
        }
        acc
    }

    /// `δ(t^i m) = u^{1 + t + ... + t^{i-1}}` for `m ∈ C`.
    fn norm_derivation(&self, t: Elem, u: Elem) -> Result<Derivation> {
        let g = self.g;
        if self.norm(t, u) != g.identity() {
            return Err(Error::HypothesisFailed("u^{1+t+...+t^{p-1}} != 1".into()));
        }
        let mut values = vec![usize::MAX; g.order()];
        let mut partial = g.identity();
        let mut conj = u;
        let mut ti = g.identity();
        for _ in 0..self.p {
            for m in self.c.elements() {
                let e = g.mul(ti, m);
                if values[e] != usize::MAX && values[e] != partial {
                    return Err(Error::NotWellDefined(e));
                }
                values[e] = partial;
            }
            partial = g.mul(partial, conj);
            conj = g.conjugate(conj, t);
            ti = g.mul(ti, t);
        }
        let d = Derivation { values };
        if let Some((a, b)) = d.cocycle_violation(g) {
            return Err(Error::NotCocycle(a, b));
        }
        Ok(d)
    }
}

pub fn lift_homomorphism(g: &FiniteGroup, a: &Subgroup, f: &GroupHom) -> Result<LiftResult> {
    HomLifter::new(g, a)?.lift(f)
}

/// Rank-2 elementary abelian normal non-central subgroups `A` with
/// `|A ∩ Z(G)| = p`, ascending.
pub fn admissible_modules(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let p = prime_of(g)?;
    let z = center(g);
    let gens = g.greedy_generators(&g.full());
    let mut out: Vec<Subgroup> = Vec::new();
    let z_elems: Vec<Elem> = omega_set(g, &z, 1).ones().filter(|&e| e != g.identity()).collect();
    for &zz in &z_elems {
        let z1 = g.closure([zz]);
        for u in g.elements() {
            if z.contains(u) || g.pow(u, p as u64) != g.identity() {
                continue;
            }
            if gens.iter().all(|&x| z1.contains(g.commutator(u, x))) {
                let a = g.closure([zz, u]);
                if !out.contains(&a) {
                    out.push(a);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct LiftTally {
    pub zero: usize,
    #[serde(rename = "M_ne_C")]
    pub m_ne_c: usize,
    #[serde(rename = "M_eq_C")]
    pub m_eq_c: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Theorem43Counts {
    pub der: usize,
    pub hom_g_z1: usize,
    pub hom_quot: usize,
    pub tilde_image: usize,
}

#[derive(Clone, Debug)]
pub struct Theorem43Verdict {
    pub module: Subgroup,
    pub c: Subgroup,
    pub exact: bool,
    pub exact_by_count: bool,
    pub exact_by_image: bool,
    pub full: bool,
    pub agree: bool,
    pub counts: Theorem43Counts,
    pub lifts: LiftTally,
    /// An `f ∈ Hom(G/Z1, A/Z1)` outside the image, when not exact.
    pub non_liftable: Option<GroupHom>,
    /// Lemma failures on a hypothesis-satisfying instance.
    pub findings: Vec<String>,
}

/// Decides exactness by counting and by the image of the induced map, and
/// fullness with respect to `C_G(A)` by search; on full instances every `f`
/// is lifted explicitly.
pub fn check_theorem43(g: &FiniteGroup, a: &Subgroup) -> Result<Theorem43Verdict> {
    let (_, z1, c) = check_module_hypotheses(g, a)?;
    match is_purely_nonabelian(g) {
        Some(true) => {}
        Some(false) => return Err(Error::HypothesisFailed("G has an abelian direct factor".into())),
        None => return Err(Error::HypothesisFailed("purely non-abelian test beyond lattice cap".into())),
    }
    let mut findings = Vec::new();
    let seq = restriction_sequence(g, a, &z1)?;
    if !seq.is_exact_at_first_two() {
        findings.push("restriction sequence not exact at Der(G,Z1) or Der(G,A)".into());
    }
    let hom_g_z1 = homs_into(g, g, &z1).len();
    if hom_g_z1 != seq.inner.len() {
        findings.push(format!("|Hom(G,Z1)| = {hom_g_z1} but |Der(G,Z1)| = {}", seq.inner.len()));
    }
    let lifter = HomLifter::new(g, a)?;
    let homs = lifter.homs();
    let hom_quot = homs.len();
    if hom_quot != seq.outer.len() {
        findings.push(format!("|Hom(G/Z1,A/Z1)| = {hom_quot} but |Der(G/Z1,A/Z1)| = {}", seq.outer.len()));
    }
    let tilde_image = seq.image_of_tilde().len();
    let exact_by_count = seq.middle.len() == hom_g_z1 * hom_quot;
    let exact_by_image = tilde_image == hom_quot;
    if exact_by_count != exact_by_image {
        findings.push("count and image criteria for exactness disagree".into());
    }
    let exact = exact_by_count && exact_by_image;
    let full = lifter.fullness.is_full();

    let mut lifts = LiftTally::default();
    if full {
        for f in &homs {
            match lifter.lift(f) {
                Ok(r) => match r.branch {
                    LiftBranch::Zero => lifts.zero += 1,
                    LiftBranch::MNeC => lifts.m_ne_c += 1,
                    LiftBranch::MEqC => lifts.m_eq_c += 1,
                },
                Err(e) => findings.push(format!("lift of {:?} failed: {e}", f.images)),
            }
        }
    }
    let non_liftable = if exact {
        None
    } else {
        let image = seq.image_of_tilde();
        (0..seq.outer.len())
            .find(|i| image.binary_search(i).is_err())
            .map(|i| GroupHom { images: seq.outer.elements[i].values.clone() })
    };
    if exact != full {
        findings.push(format!("exact = {exact} but full = {full}"));
    }
    Ok(Theorem43Verdict {
        module: a.clone(),
        c,
        exact,
        exact_by_count,
        exact_by_image,
        full,
        agree: exact == full,
        counts: Theorem43Counts { der: seq.middle.len(), hom_g_z1, hom_quot, tilde_image },
        lifts,
        non_liftable,
        findings,
    })
}

#[derive(Clone, Debug)]
pub struct Corollary47Module {
    pub module: Subgroup,
    /// `log_p |A/Z1|`
    pub rank_over_z1: usize,
    pub homs: usize,
    pub exact_by_lifting: bool,
    pub exact_by_sequence: bool,
    pub findings: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Corollary47Verdict {
    pub modules: Vec<Corollary47Module>,
}

impl Corollary47Verdict {
    pub fn holds(&self) -> bool {
        self.modules.iter().all(|m| m.exact_by_lifting && m.exact_by_sequence && m.findings.is_empty())
    }
}

/// For `G` full with respect to every maximal subgroup and with cyclic
/// center: every elementary abelian normal `A <= ζ2(G)` gives an exact
/// sequence. Each `f` is split along a basis of `A/Z1`, the pieces are lifted
/// through the rank-2 machinery and the lifts multiplied pointwise.
pub fn check_corollary47(g: &FiniteGroup) -> Result<Corollary47Verdict> {
    let p = prime_of(g)?;
    if p == 2 {
        return Err(Error::HypothesisFailed("p must be odd".into()));
    }
    let z = center(g);
    if abelian_rank(g, &z) > 1 {
        return Err(Error::HypothesisFailed("center is not cyclic".into()));
    }
    if !fullness_table(g)?.iter().all(|f| f.is_full()) {
        return Err(Error::HypothesisFailed("G is not full with respect to every maximal subgroup".into()));
    }
    let upper = upper_central_series(g)?;
    let zeta2 = upper.get(2).cloned().unwrap_or_else(|| g.full());
    let lattice = subgroups_within(g, &zeta2, usize::MAX)
        .ok_or_else(|| Error::HypothesisFailed("ζ2(G) is not a p-group".into()))?;
    let mut modules = Vec::new();
    for entry in lattice {
        let a = entry.subgroup;
        if a.is_trivial() || !is_elementary_abelian(g, &a) || !g.is_normal(&a) {
            continue;
        }
        modules.push(check_corollary47_module(g, &a, &z, p)?);
    }
    Ok(Corollary47Verdict { modules })
}

/// The lifting check of [`check_corollary47`] for a single module `A`.
pub fn corollary47_for_module(g: &FiniteGroup, a: &Subgroup) -> Result<Corollary47Module> {
    let p = prime_of(g)?;
    check_corollary47_module(g, a, &center(g), p)
}

fn check_corollary47_module(g: &FiniteGroup, a: &Subgroup, z: &Subgroup, p: usize) -> Result<Corollary47Module> {
    let z1 = a.intersection(z);
    let mut findings = Vec::new();
    let rank = crate::structure::log_p(a.order() / z1.order(), p) as usize;
    let seq = restriction_sequence(g, a, &z1)?;
    let exact_by_sequence = seq.is_exact_at_first_two() && seq.is_surjective();
    let (q, proj) = g.quotient(&z1)?;
    let a_bar = g.image_of(&proj, &q, a);
    let homs = homs_into(&q, &q, &a_bar);
    if rank == 0 {
        return Ok(Corollary47Module {
            module: a.clone(),
            rank_over_z1: 0,
            homs: homs.len(),
            exact_by_lifting: homs.len() == 1,
            exact_by_sequence,
            findings,
        });
    }

    let mut basis: Vec<Elem> = Vec::new();
    let mut span = z1.clone();
    for v in a.elements() {
        if !span.contains(v) {
            basis.push(v);
            span = g.join(&span, &[v]);
        }
    }
    let pieces: Vec<Subgroup> = basis.iter().map(|&v| g.join(&z1, &[v])).collect();
    let lifters: Vec<HomLifter> = pieces.iter().map(|ai| HomLifter::new(g, ai)).collect::<Result<_>>()?;

    // coordinates of A/Z1 along the basis
    let mut coords: Vec<Option<Vec<u32>>> = vec![None; q.order()];
    crate::group::for_each_tuple(p, rank, |t| {
        let e = t.iter().zip(&basis).fold(g.identity(), |acc, (&c, &v)| g.mul(acc, g.pow(v, c as u64)));
        coords[proj.apply(e)] = Some(t.iter().map(|&c| c as u32).collect());
    });
    let basis_bar: Vec<Elem> = basis.iter().map(|&v| proj.apply(v)).collect();

    let mut lifted = 0;
    for f in &homs {
        let mut total = Derivation::zero(g);
        let mut ok = true;
        for (i, lifter) in lifters.iter().enumerate() {
            let fi = GroupHom {
                images: f
                    .images
                    .iter()
                    .map(|&img| q.pow(basis_bar[i], coords[img].as_ref().expect("image in A/Z1")[i] as u64))
                    .collect(),
            };
            match lifter.lift(&fi) {
                Ok(r) => total = total.sum(&r.derivation, g),
                Err(e) => {
                    findings.push(format!("lift of component {i} of {:?} failed: {e}", f.images));
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let induces = g.elements().all(|e| proj.apply(total.apply(e)) == f.apply(proj.apply(e)));
        if total.is_derivation(g, a) && induces {
            lifted += 1;
        } else {
            findings.push(format!("sum of lifts does not induce {:?}", f.images));
        }
    }
    let der = enumerate_derivations(g, a)?;
    debug_assert_eq!(der.len(), seq.middle.len());
    Ok(Corollary47Module {
        module: a.clone(),
        rank_over_z1: rank,
        homs: homs.len(),
        exact_by_lifting: lifted == homs.len(),
        exact_by_sequence,
        findings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::{from_pc_presentation, PcPresentation};

    fn heis() -> (PcPresentation, FiniteGroup) {
        let pcp = PcPresentation::new(3, 3).commutator(1, 0, &[0, 0, 1]);
        (pcp.clone(), from_pc_presentation(&pcp).unwrap())
    }

    #[test]
    fn abelian_groups_are_never_full() {
        for g in
            [from_pc_presentation(&PcPresentation::new(3, 2)).unwrap(), FiniteGroup::cyclic(9), FiniteGroup::cyclic(3)]
        {
            for f in fullness_table(&g).unwrap() {
                assert!(!f.is_full());
            }
        }
    }

    #[test]
    fn heisenberg_is_full_everywhere() {
        let (_, g) = heis();
        let table = fullness_table(&g).unwrap();
        assert_eq!(table.len(), 4);
        for f in &table {
            let w = f.witness().expect("full");
            assert_eq!(w.records.len(), 3);
            for r in &w.records {
                assert!(r.checks.all());
                assert_eq!(r.k.order(), 3);
            }
        }
    }

    #[test]
    fn not_maximal_is_an_error() {
        let (_, g) = heis();
        assert!(matches!(is_full_wrt(&g, &g.trivial()), Err(Error::NotMaximal)));
    }

    #[test]
    fn two_generated_fullness_on_heisenberg_and_modular() {
        let (_, g) = heis();
        let v = check_prop42(&g).unwrap();
        assert!(v.in_hypothesis);
        assert_eq!(v.holds, Some(true));
        assert!(v.quotient_criterion_holds);

        let m27 =
            from_pc_presentation(&PcPresentation::new(3, 3).power(0, &[0, 0, 1]).commutator(1, 0, &[0, 0, 1])).unwrap();
        let v = check_prop42(&m27).unwrap();
        assert!(v.powerful);
        assert!(!v.in_hypothesis);
        assert!(v.full_wrt.iter().all(|&f| !f));
    }

    #[test]
    fn heisenberg_lemmas_and_lifts() {
        let (pcp, g) = heis();
        let a = g.closure([pcp.generator(1), pcp.generator(2)]);
        let lifter = HomLifter::new(&g, &a).unwrap();
        let homs = lifter.homs();
        assert_eq!(homs.len(), 9);
        let mut seen = LiftTally::default();
        for f in &homs {
            let r = lifter.lift(f).unwrap();
            assert!(r.derivation.is_derivation(&g, &a));
            match r.branch {
                LiftBranch::Zero => seen.zero += 1,
                LiftBranch::MNeC => seen.m_ne_c += 1,
                LiftBranch::MEqC => seen.m_eq_c += 1,
            }
        }
        // f = 0, two nonzero maps with kernel C/Z1, six with other kernels
        assert_eq!(seen, LiftTally { zero: 1, m_ne_c: 6, m_eq_c: 2 });

        let w = lifter.fullness.witness().unwrap();
        let r = &w.records[0];
        let y = lifter.c.elements().find(|&e| !r.m.contains(e)).unwrap();
        let phi = frattini(&g).unwrap();
        let x = phi.elements().find(|&e| !r.k.contains(e)).unwrap();
        let alpha = alpha_hom(&g, &r.k, &lifter.c, y, x).unwrap();
        assert!(alpha.is_homomorphism && alpha.kernel_matches && alpha.surjective);
        for kk in r.k.intersection(&lifter.c).elements() {
            assert_eq!(alpha.value(kk), Some(0));
        }
        let u = a.elements().find(|&e| !lifter.z1.contains(e)).unwrap();
        let z = scale_z(&g, &r.k, u, &alpha).unwrap();
        assert!(lifter.z1.contains(z));
        // replacing u by u z0 leaves z unchanged
        let z0 = lifter.z1.elements().find(|&e| e != g.identity()).unwrap();
        assert_eq!(scale_z(&g, &r.k, g.mul(u, z0), &alpha).unwrap(), z);

        let d = lemma46_derivation(&g, &r.k, x, y, u, z).unwrap();
        assert_eq!(d.apply(y), u);
        assert_eq!(d.apply(x), z);
        for kk in r.k.elements() {
            assert_eq!(d.apply(kk), g.identity());
        }
        let der = enumerate_derivations(&g, &a).unwrap();
        assert!(der.index_of(&d).is_some());
    }

    #[test]
    fn scale_z_with_centralizing_k() {
        let (pcp, g) = heis();
        // K = <g3> centralizes everything; α on it is identically zero
        let k = g.closure([pcp.generator(2)]);
        let c = g.full();
        let alpha = alpha_hom(&g, &k, &c, pcp.generator(0), pcp.generator(1)).unwrap();
        assert!(!alpha.surjective);
        assert_eq!(scale_z(&g, &k, pcp.generator(1), &alpha).unwrap(), g.identity());
    }

    #[test]
    fn exactness_on_heisenberg() {
        let (_, g) = heis();
        let mods = admissible_modules(&g).unwrap();
        assert_eq!(mods.len(), 4);
        for a in &mods {
            let v = check_theorem43(&g, a).unwrap();
            assert!(v.exact && v.full && v.agree, "{v:?}");
            assert_eq!(v.counts.der, 81);
            assert_eq!(v.counts.hom_g_z1 * v.counts.hom_quot, 81);
            assert!(v.findings.is_empty());
        }
    }

    #[test]
    fn exactness_refuses_direct_products() {
        let g = from_pc_presentation(&PcPresentation::new(3, 4).commutator(1, 0, &[0, 0, 1, 0])).unwrap();
        for a in admissible_modules(&g).unwrap() {
            assert!(matches!(check_theorem43(&g, &a), Err(Error::HypothesisFailed(_))));
        }
        let e = from_pc_presentation(&PcPresentation::new(3, 3)).unwrap();
        assert!(admissible_modules(&e).unwrap().is_empty());
    }

    #[test]
    fn cyclic_center_lifting_on_heisenberg() {
        let (_, g) = heis();
        let v = check_corollary47(&g).unwrap();
        assert!(v.holds(), "{v:?}");
        // center (rank 0 over Z1) and the four rank-2 subgroups
        assert_eq!(v.modules.len(), 5);
        assert!(v.modules.iter().any(|m| m.rank_over_z1 == 0));
    }
}
