//! Named subgroups and numeric invariants of p-groups: centers and
//! centralizers, central series, Frattini subgroups, maximal subgroups, Ω and
//! power subgroups, and the aggregate [`StructureProfile`].
//!
//! Most functions take a subgroup `h` of the parent `g` and treat `h` as the
//! group in question, so that the same code serves `G`, its maximal
//! subgroups and the sections built from them.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{all_homs, for_each_tuple, Elem, FiniteGroup, Subgroup};
use crate::lattice;

/// `n = p^k` with `k >= 1`.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub fn prime_of(g: &FiniteGroup) -> Result<usize> {
    prime_power(g.order()).map(|(p, _)| p).ok_or(Error::NotPPower(g.order()))
}

/// Prime of a subgroup's order, or `None` for the trivial subgroup.
fn subgroup_prime(h: &Subgroup) -> Option<usize> {
    prime_power(h.order()).map(|(p, _)| p)
}

pub(crate) fn log_p(n: usize, p: usize) -> u32 {
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        debug_assert_eq!(m % p, 0);
        m /= p;
        k += 1;
    }
    k
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    centralizer(g, &g.full())
}

pub fn centralizer(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    let gens = g.greedy_generators(s);
    Subgroup::from_elements(g.order(), g.elements().filter(|&x| gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x))))
}

pub fn centralizer_of(g: &FiniteGroup, y: Elem) -> Subgroup {
    Subgroup::from_elements(g.order(), g.elements().filter(|&x| g.mul(x, y) == g.mul(y, x)))
}

pub fn normalizer(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    let gens = g.greedy_generators(s);
    Subgroup::from_elements(g.order(), g.elements().filter(|&x| gens.iter().all(|&y| s.contains(g.conjugate(y, x)))))
}

/// Whether `s` is normalized by every element of `h`.
pub fn is_normal_in(g: &FiniteGroup, s: &Subgroup, h: &Subgroup) -> bool {
    let sg = g.greedy_generators(s);
    let hg = g.greedy_generators(h);
    hg.iter().all(|&x| sg.iter().all(|&y| s.contains(g.conjugate(y, x))))
}

/// `[A, B]`, generated by all `[a, b]`.
pub fn commutator_subgroup(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut gens = Vec::new();
    for x in a.elements() {
        for y in b.elements() {
            gens.push(g.commutator(x, y));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    g.closure(gens)
}

/// `zeta_0 = 1 < zeta_1 < ... < zeta_c = G`.
pub fn upper_central_series(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let gens = g.greedy_generators(&g.full());
    let mut series = vec![g.trivial()];
    loop {
        let last = series.last().unwrap();
        if last.order() == g.order() {
            return Ok(series);
        }
        let next = Subgroup::from_elements(
            g.order(),
            g.elements().filter(|&x| gens.iter().all(|&y| last.contains(g.commutator(x, y)))),
        );
        if next.order() == last.order() {
            return Err(Error::NotNilpotent);
        }
        series.push(next);
    }
}

/// `gamma_1 = G > gamma_2 > ... > gamma_{c+1} = 1`.
pub fn lower_central_series(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let full = g.full();
    let mut series = vec![full.clone()];
    loop {
        let last = series.last().unwrap();
        if last.is_trivial() {
            return Ok(series);
        }
        let next = commutator_subgroup(g, last, &full);
        if next.order() == last.order() {
            return Err(Error::NotNilpotent);
        }
        series.push(next);
    }
}

pub fn nilpotency_class(g: &FiniteGroup) -> Result<usize> {
    Ok(upper_central_series(g)?.len() - 1)
}

/// `<x^k : x in H>`
pub fn power_subgroup(g: &FiniteGroup, h: &Subgroup, k: u64) -> Subgroup {
    let mut powers: Vec<Elem> = h.elements().map(|x| g.pow(x, k)).collect();
    powers.sort_unstable();
    powers.dedup();
    g.closure(powers)
}

/// `<H^p, [H, H]>` for a p-subgroup `h`.
pub fn frattini_of(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let Some(p) = subgroup_prime(h) else {
        return g.trivial();
    };
    let pw = power_subgroup(g, h, p as u64);
    let der = commutator_subgroup(g, h, h);
    g.closure(pw.elements().chain(der.elements()))
}

/// Frattini subgroup of `G`, computed as `<G^p, gamma_2(G)>` and checked
/// against the intersection of the kernels of all maps `G -> C_p`.
pub fn frattini(g: &FiniteGroup) -> Result<Subgroup> {
    let p = prime_of(g)?;
    let phi = frattini_of(g, &g.full());
    let cp = FiniteGroup::cyclic(p);
    let mut meet = g.full();
    for hom in all_homs(g, &cp) {
        let ker = hom.kernel(g, &cp);
        if ker.order() < g.order() {
            meet = meet.intersection(&ker);
        }
    }
    if meet != phi {
        return Err(Error::CrossCheckFailed(format!(
            "Frattini subgroup: generated route has order {}, kernel intersection has order {}",
            phi.order(),
            meet.order()
        )));
    }
    Ok(phi)
}

/// A Burnside basis of a p-subgroup `H` together with the coordinates of
/// every element of `H` in `H/Phi(H) = F_p^d`.
#[derive(Clone, Debug)]
pub struct FrattiniBasis {
    pub p: usize,
    pub frattini: Subgroup,
    /// Lowest-index preimages of a basis of `H/Phi(H)`.
    pub generators: Vec<Elem>,
    coords: Vec<Option<Vec<u32>>>,
}

impl FrattiniBasis {
    pub fn new(g: &FiniteGroup, h: &Subgroup) -> Self {
        let p = subgroup_prime(h).unwrap_or(2);
        let frattini = frattini_of(g, h);
        let mut generators = Vec::new();
        let mut span = frattini.clone();
        for x in h.elements() {
            if !span.contains(x) {
                generators.push(x);
                span = g.join(&span, &[x]);
            }
        }
        let d = generators.len();
        let mut coords: Vec<Option<Vec<u32>>> = vec![None; g.order()];
        coords[g.identity()] = Some(vec![0; d]);
        let mut queue = std::collections::VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            let cx = coords[x].clone().unwrap();
            for (i, &b) in generators.iter().enumerate() {
                let y = g.mul(x, b);
                if coords[y].is_none() {
                    let mut cy = cx.clone();
                    cy[i] = (cy[i] + 1) % p as u32;
                    coords[y] = Some(cy);
                    queue.push_back(y);
                }
            }
        }
        FrattiniBasis { p, frattini, generators, coords }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn coords(&self, x: Elem) -> Option<&[u32]> {
        self.coords[x].as_deref()
    }

    /// Maximal subgroups as kernels of the normalized nonzero functionals,
    /// sorted by element list.
    pub fn maximal_subgroups(&self, g: &FiniteGroup, h: &Subgroup) -> Vec<Subgroup> {
        let d = self.rank();
        let p = self.p as u32;
        let mut out = Vec::new();
        for_each_tuple(self.p, d, |f| {
            match f.iter().find(|&&c| c != 0) {
                Some(&1) => {}
                _ => return,
            }
            let m = Subgroup::from_elements(
                g.order(),
                h.elements().filter(|&x| {
                    let c = self.coords(x).unwrap();
                    f.iter().zip(c).map(|(&a, &b)| a as u32 * b).sum::<u32>() % p == 0
                }),
            );
            out.push(m);
        });
        out.sort();
        out
    }
}

pub fn minimal_generators(g: &FiniteGroup) -> Vec<Elem> {
    FrattiniBasis::new(g, &g.full()).generators
}

/// Frattini basis for p-groups, greedy generators otherwise.
pub(crate) fn generators_for_homs(g: &FiniteGroup) -> Vec<Elem> {
    if prime_power(g.order()).is_some() {
        minimal_generators(g)
    } else {
        g.greedy_generators(&g.full())
    }
}

pub fn maximal_subgroups_of(g: &FiniteGroup, h: &Subgroup) -> Vec<Subgroup> {
    FrattiniBasis::new(g, h).maximal_subgroups(g, h)
}

pub fn maximal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    maximal_subgroups_of(g, &g.full())
}

/// `{x in H : x^{p^n} = 1}`
pub fn omega_set(g: &FiniteGroup, h: &Subgroup, n: u32) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(g.order());
    let Some(p) = subgroup_prime(h) else {
        set.insert(g.identity());
        return set;
    };
    let e = (p as u64).pow(n);
    for x in h.elements().filter(|&x| g.pow(x, e) == g.identity()) {
        set.insert(x);
    }
    set
}

/// Subgroup generated by [`omega_set`].
pub fn omega(g: &FiniteGroup, h: &Subgroup, n: u32) -> Subgroup {
    g.closure(omega_set(g, h, n).ones())
}

pub fn exponent(g: &FiniteGroup, h: &Subgroup) -> usize {
    h.elements().map(|x| g.element_order(x)).max().unwrap_or(1)
}

/// Invariant factors (descending prime powers) of an abelian p-subgroup,
/// read off from the sizes of its Ω-layers.
pub fn abelian_invariants(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let Some(p) = subgroup_prime(h) else {
        return Vec::new();
    };
    let mut layer_logs = vec![0u32];
    let mut k = 1;
    loop {
        let size = omega_set(g, h, k).count_ones(..);
        layer_logs.push(log_p(size, p));
        if size == h.order() {
            break;
        }
        k += 1;
    }
    // at_least[k] = number of cyclic factors of order >= p^k
    let at_least: Vec<u32> = (1..layer_logs.len()).map(|k| layer_logs[k] - layer_logs[k - 1]).collect();
    let mut out = Vec::new();
    for (k, &m) in at_least.iter().enumerate().rev() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        for _ in 0..(m - next) {
            out.push(p.pow(k as u32 + 1));
        }
    }
    out
}

/// Minimal number of generators of an abelian p-subgroup.
pub fn abelian_rank(g: &FiniteGroup, h: &Subgroup) -> usize {
    abelian_invariants(g, h).len()
}

pub fn is_abelian_subgroup(g: &FiniteGroup, h: &Subgroup) -> bool {
    let gens = g.greedy_generators(h);
    gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

pub fn is_elementary_abelian(g: &FiniteGroup, h: &Subgroup) -> bool {
    match subgroup_prime(h) {
        None => true,
        Some(p) => is_abelian_subgroup(g, h) && h.elements().all(|x| g.pow(x, p as u64) == g.identity()),
    }
}

/// Smallest `k` such that `x^{p^k} in n` for every `x in G`.
fn log_exponent_mod(g: &FiniteGroup, p: usize, n: &Subgroup) -> u32 {
    g.elements()
        .map(|x| {
            let mut k = 0;
            let mut y = x;
            while !n.contains(y) {
                y = g.pow(y, p as u64);
                k += 1;
            }
            k
        })
        .max()
        .unwrap_or(0)
}

/// `gamma_2(G) <= G^p` (`G^4` when `p = 2`).
pub fn is_powerful(g: &FiniteGroup) -> Result<bool> {
    let p = prime_of(g)?;
    let k = if p == 2 { 4 } else { p as u64 };
    let full = g.full();
    Ok(commutator_subgroup(g, &full, &full).is_subset(&power_subgroup(g, &full, k)))
}

/// `C_G(Z(Phi(G))) = Phi(G)`
pub fn is_strongly_frattinian(g: &FiniteGroup) -> Result<bool> {
    let phi = frattini(g)?;
    let z_phi = Subgroup::from_elements(
        g.order(),
        phi.elements().filter(|&x| phi.elements().all(|y| g.mul(x, y) == g.mul(y, x))),
    );
    Ok(centralizer(g, &z_phi) == phi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureProfile {
    pub p: usize,
    /// `|G| = p^n`
    pub n: u32,
    pub class: usize,
    pub coclass: usize,
    #[serde(rename = "dG")]
    pub d: usize,
    pub exponent: usize,
    /// `p^r = exp(G / gamma_2(G))`
    pub r: u32,
    /// `p^s = exp(zeta(G))`
    pub s: u32,
    pub is_powerful: bool,
    /// `None` when the subgroup lattice is beyond the enumeration cap.
    pub is_purely_nonabelian: Option<bool>,
    pub is_strongly_frattinian: bool,
    pub cgphi_in_phi: bool,
}

pub fn structure_profile(g: &FiniteGroup) -> Result<StructureProfile> {
    let (p, n) = prime_power(g.order()).ok_or(Error::NotPPower(g.order()))?;
    let class = nilpotency_class(g)?;
    let lower = lower_central_series(g)?;
    if lower.len() - 1 != class {
        return Err(Error::CrossCheckFailed("upper and lower central series lengths differ".into()));
    }
    let phi = frattini(g)?;
    let d = log_p(g.order() / phi.order(), p) as usize;
    let z = center(g);
    let r = log_exponent_mod(g, p, &lower[1]);
    let s = log_p(exponent(g, &z), p);
    Ok(StructureProfile {
        p,
        n,
        class,
        coclass: n as usize - class,
        d,
        exponent: exponent(g, &g.full()),
        r,
        s,
        is_powerful: is_powerful(g)?,
        is_purely_nonabelian: lattice::is_purely_nonabelian(g),
        is_strongly_frattinian: is_strongly_frattinian(g)?,
        cgphi_in_phi: centralizer(g, &phi).is_subset(&phi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::{from_pc_presentation, PcPresentation};

    fn heis27() -> FiniteGroup {
        from_pc_presentation(&PcPresentation::new(3, 3).commutator(1, 0, &[0, 0, 1])).unwrap()
    }

    fn c3xc3() -> FiniteGroup {
        from_pc_presentation(&PcPresentation::new(3, 2)).unwrap()
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(243), Some((3, 5)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(2), Some((2, 1)));
    }

    #[test]
    fn centers() {
        let a = c3xc3();
        assert_eq!(center(&a), a.full());
        let h = heis27();
        let z = center(&h);
        assert_eq!(z.order(), 3);
        let full = h.full();
        assert_eq!(commutator_subgroup(&h, &full, &full), z);
        assert_eq!(centralizer(&h, &z), h.full());
        assert_eq!(normalizer(&h, &z), h.full());
    }

    #[test]
    fn series_of_heisenberg() {
        let h = heis27();
        assert_eq!(nilpotency_class(&h).unwrap(), 2);
        let up = upper_central_series(&h).unwrap();
        let low = lower_central_series(&h).unwrap();
        assert_eq!(up[1], low[1]);
        assert_eq!(up[1].order(), 3);
        assert_eq!(nilpotency_class(&c3xc3()).unwrap(), 1);
    }

    #[test]
    fn frattini_examples() {
        assert_eq!(frattini(&c3xc3()).unwrap().order(), 1);
        assert_eq!(frattini(&FiniteGroup::cyclic(9)).unwrap().order(), 3);
        let h = heis27();
        assert_eq!(frattini(&h).unwrap(), center(&h));
    }

    #[test]
    fn maximal_subgroup_counts() {
        assert_eq!(maximal_subgroups(&FiniteGroup::cyclic(3)).len(), 1);
        assert!(maximal_subgroups(&FiniteGroup::cyclic(3))[0].is_trivial());
        assert_eq!(maximal_subgroups(&c3xc3()).len(), 4);
        let h = heis27();
        let z = center(&h);
        let ms = maximal_subgroups(&h);
        assert_eq!(ms.len(), 4);
        for m in &ms {
            assert_eq!(m.order(), 9);
            assert!(z.is_subset(m));
        }
    }

    #[test]
    fn omega_and_powers() {
        let c9 = FiniteGroup::cyclic(9);
        assert_eq!(omega(&c9, &c9.full(), 1).order(), 3);
        let h = heis27();
        assert!(power_subgroup(&h, &h.full(), 3).is_trivial());
        assert_eq!(omega(&h, &h.full(), 1), h.full());
        assert_eq!(omega_set(&h, &h.full(), 1).count_ones(..), 27);
    }

    #[test]
    fn modular_group_omega_layer() {
        // M_27: x^9 = 1, y^3 = 1, x^y = x^4
        let m27 =
            from_pc_presentation(&PcPresentation::new(3, 3).power(0, &[0, 0, 1]).commutator(1, 0, &[0, 0, 1])).unwrap();
        let set = omega_set(&m27, &m27.full(), 1).count_ones(..);
        assert_eq!(set, 9);
        assert_eq!(omega(&m27, &m27.full(), 1).order(), 9);
    }

    #[test]
    fn invariants_by_census() {
        let g = from_pc_presentation(&PcPresentation::new(3, 3).power(0, &[0, 1, 0])).unwrap();
        assert_eq!(abelian_invariants(&g, &g.full()), vec![9, 3]);
        assert_eq!(abelian_invariants(&c3xc3(), &c3xc3().full()), vec![3, 3]);
        assert_eq!(abelian_rank(&g, &g.trivial()), 0);
    }

    #[test]
    fn profiles() {
        let a = structure_profile(&c3xc3()).unwrap();
        assert!(a.is_powerful);
        assert_eq!(a.is_purely_nonabelian, Some(false));
        let h = structure_profile(&heis27()).unwrap();
        assert_eq!((h.d, h.class, h.coclass), (2, 2, 1));
        assert!(!h.is_powerful);
        assert_eq!(h.is_purely_nonabelian, Some(true));
        assert_eq!((h.r, h.s), (1, 1));
        assert_eq!(h.exponent, 3);
    }

    #[test]
    fn non_prime_power_is_refused() {
        let c6 = FiniteGroup::cyclic(6);
        assert_eq!(structure_profile(&c6).unwrap_err(), Error::NotPPower(6));
    }
}
