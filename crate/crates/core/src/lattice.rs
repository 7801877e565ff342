//! Subgroup lattice of small p-groups by the cyclic extension method.
//!
//! Every nontrivial subgroup `S` of a p-group has a normal subgroup `T` of
//! index `p`, and `S = <T, x>` for any `x in S \ T`. Layer `k+1` of the
//! lattice is therefore obtained from layer `k` by adjoining elements that
//! normalize `T` and have `p`-th power in `T`.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::structure::{center, prime_power};

/// Lattice enumeration is refused above this order (`3^5`).
pub const LATTICE_CAP: usize = 243;

#[derive(Clone, Debug)]
pub struct LatticeEntry {
    pub subgroup: Subgroup,
    pub generators: Vec<Elem>,
}

/// All subgroups of the p-subgroup `within`, smallest first. Returns `None`
/// when `within` is larger than `cap` or not of prime-power order.
pub fn subgroups_within(g: &FiniteGroup, within: &Subgroup, cap: usize) -> Option<Vec<LatticeEntry>> {
    if within.order() > cap {
        return None;
    }
    let trivial = LatticeEntry { subgroup: g.trivial(), generators: Vec::new() };
    if within.order() == 1 {
        return Some(vec![trivial]);
    }
    let (p, _) = prime_power(within.order())?;
    let mut all = vec![trivial.clone()];
    let mut layer = vec![trivial];
    while !layer.is_empty() {
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut next = Vec::new();
        for t in &layer {
            let mut covered = t.subgroup.mask().clone();
            for x in within.elements() {
                if covered.contains(x) || !t.subgroup.contains(g.pow(x, p as u64)) {
                    continue;
                }
                if !t.generators.iter().all(|&y| t.subgroup.contains(g.conjugate(y, x))) {
                    continue;
                }
                let mut mask = FixedBitSet::with_capacity(g.order());
                let mut xk = g.identity();
                for _ in 0..p {
                    for s in t.subgroup.elements() {
                        mask.insert(g.mul(s, xk));
                    }
                    xk = g.mul(xk, x);
                }
                covered.union_with(&mask);
                if seen.insert(mask.clone()) {
                    let mut generators = t.generators.clone();
                    generators.push(x);
                    next.push(LatticeEntry { subgroup: Subgroup::from_mask(mask), generators });
                }
            }
        }
        next.sort_by(|a, b| a.subgroup.cmp(&b.subgroup));
        all.extend(next.iter().cloned());
        layer = next;
    }
    Some(all)
}

pub fn all_subgroups(g: &FiniteGroup) -> Option<Vec<LatticeEntry>> {
    subgroups_within(g, &g.full(), LATTICE_CAP)
}

/// `Some(true)` when `G` has no nontrivial abelian direct factor.
///
/// Such a factor exists iff some cyclic central subgroup `C` has a normal
/// complement, searched among lattice members of order `|G|/|C|`.
/// `None` above [`LATTICE_CAP`].
pub fn is_purely_nonabelian(g: &FiniteGroup) -> Option<bool> {
    find_abelian_direct_factor(g).map(|f| f.is_none())
}

/// A pair `(C, N)` with `G = C x N`, `C` cyclic central and nontrivial.
pub fn find_abelian_direct_factor(g: &FiniteGroup) -> Option<Option<(Subgroup, Subgroup)>> {
    let lattice = all_subgroups(g)?;
    let z = center(g);
    let mut cyclic: Vec<Subgroup> = z.elements().filter(|&x| x != g.identity()).map(|x| g.closure([x])).collect();
    cyclic.sort();
    cyclic.dedup();
    for c in cyclic {
        let want = g.order() / c.order();
        for n in lattice.iter().filter(|e| e.subgroup.order() == want) {
            if n.subgroup.intersection(&c).is_trivial() && g.is_normal(&n.subgroup) {
                return Some(Some((c, n.subgroup.clone())));
            }
        }
    }
    Some(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::{from_pc_presentation, PcPresentation};

    fn count(g: &FiniteGroup) -> usize {
        all_subgroups(g).unwrap().len()
    }

    #[test]
    fn elementary_abelian_counts() {
        // Gaussian binomials: 1 + 4 + 1 and 1 + 13 + 13 + 1
        assert_eq!(count(&from_pc_presentation(&PcPresentation::new(3, 2)).unwrap()), 6);
        assert_eq!(count(&from_pc_presentation(&PcPresentation::new(3, 3)).unwrap()), 28);
    }

    #[test]
    fn cyclic_and_heisenberg() {
        assert_eq!(count(&FiniteGroup::cyclic(27)), 4);
        // Heisenberg 27: 1 + 13 (order 3) + 4 (order 9) + 1
        let h = from_pc_presentation(&PcPresentation::new(3, 3).commutator(1, 0, &[0, 0, 1])).unwrap();
        assert_eq!(count(&h), 19);
    }

    #[test]
    fn every_entry_is_a_subgroup() {
        let h =
            from_pc_presentation(&PcPresentation::new(3, 3).power(0, &[0, 0, 1]).commutator(1, 0, &[0, 0, 1])).unwrap();
        for e in all_subgroups(&h).unwrap() {
            assert!(h.is_subgroup_set(e.subgroup.mask()));
            assert_eq!(h.closure(e.generators.iter().copied()), e.subgroup);
        }
    }

    #[test]
    fn direct_factor_detection() {
        let c3xheis = from_pc_presentation(&PcPresentation::new(3, 4).commutator(1, 0, &[0, 0, 1, 0])).unwrap();
        assert_eq!(is_purely_nonabelian(&c3xheis), Some(false));
        let heis = from_pc_presentation(&PcPresentation::new(3, 3).commutator(1, 0, &[0, 0, 1])).unwrap();
        assert_eq!(is_purely_nonabelian(&heis), Some(true));
        assert_eq!(is_purely_nonabelian(&FiniteGroup::cyclic(9)), Some(false));
    }

    #[test]
    fn above_cap_is_unknown() {
        let big = from_pc_presentation(&PcPresentation::new(3, 6)).unwrap();
        assert!(all_subgroups(&big).is_none());
        assert_eq!(is_purely_nonabelian(&big), None);
    }
}
