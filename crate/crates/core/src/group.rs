//! Finite groups stored as dense Cayley tables.
//!
//! Every group in this crate, whether read from a table, compiled from a
//! polycyclic presentation, built as a quotient or as the adjoint group of a
//! ring, ends up as a [`FiniteGroup`]: an `n x n` table over the element
//! indices `0..n`. All algorithms work on indices; labels are cosmetic.

use std::cmp::Ordering;
use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Index of a group element.
pub type Elem = usize;

/// Default refusal threshold, `3^6`.
pub const DEFAULT_MAX_ORDER: usize = 729;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Elem>,
    identity: Elem,
    inv: Vec<Elem>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a Cayley table and builds the group, refusing orders above
    /// [`DEFAULT_MAX_ORDER`].
    pub fn from_cayley_table(table: &[Vec<Elem>]) -> Result<Self> {
        Self::from_cayley_table_with_limit(table, DEFAULT_MAX_ORDER)
    }

    pub fn from_cayley_table_with_limit(table: &[Vec<Elem>], max_order: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable { row: 0 });
        }
        if n > max_order {
            return Err(Error::TooLarge { order: n, limit: max_order });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (r, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::MalformedTable { row: r });
            }
            mul.extend_from_slice(row);
        }
        Self::from_flat(n, mul)
    }

    pub(crate) fn from_flat(n: usize, mul: Vec<Elem>) -> Result<Self> {
        debug_assert_eq!(mul.len(), n * n);
        let at = |a: usize, b: usize| mul[a * n + b];

        let identity = (0..n).find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x)).ok_or(Error::NoIdentity)?;

        let inv = (0..n)
            .map(|x| (0..n).find(|&y| at(x, y) == identity && at(y, x) == identity).ok_or(Error::NoInverse(x)))
            .collect::<Result<Vec<_>>>()?;

        let group = FiniteGroup { order: n, mul, identity, inv, labels: None };
        group.check_associative_light()?;
        Ok(group)
    }

    /// Light's associativity test: the elements `g` with `(xg)y = x(gy)` for
    /// all `x, y` form a submagma, so it suffices to test a set whose
    /// left-normed products reach every element.
    fn check_associative_light(&self) -> Result<()> {
        let n = self.order;
        let mut reached = FixedBitSet::with_capacity(n);
        let mut gens: Vec<Elem> = Vec::new();
        reached.insert(self.identity);
        for candidate in 0..n {
            if reached.contains(candidate) {
                continue;
            }
            gens.push(candidate);
            let mut queue: VecDeque<Elem> = reached.ones().collect();
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !reached.contains(y) {
                        reached.insert(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        for x in 0..n {
            for &g in &gens {
                let xg = self.mul(x, g);
                for y in 0..n {
                    if self.mul(xg, y) != self.mul(x, self.mul(g, y)) {
                        return Err(Error::NotAssociative(x, g, y));
                    }
                }
            }
        }
        Ok(())
    }

    /// Brute-force associativity over all triples.
    pub fn check_associative_exhaustive(&self) -> Result<()> {
        for x in self.elements() {
            for y in self.elements() {
                let xy = self.mul(x, y);
                for z in self.elements() {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(Error::NotAssociative(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn label(&self, x: Elem) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn table(&self) -> Vec<Vec<Elem>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn pow(&self, x: Elem, k: u64) -> Elem {
        let mut acc = self.identity;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Signed power, `x^k` for `k < 0` is `(x^-1)^|k|`.
    pub fn zpow(&self, x: Elem, k: i64) -> Elem {
        if k >= 0 {
            self.pow(x, k as u64)
        } else {
            self.pow(self.inv(x), k.unsigned_abs())
        }
    }

    /// `y^-1 x y`
    #[inline]
    pub fn conjugate(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.inv(y), self.mul(x, y))
    }

    /// `x^-1 y^-1 x y`
    #[inline]
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn element_order(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn full(&self) -> Subgroup {
        Subgroup::from_elements(self.order, self.elements())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_elements(self.order, [self.identity])
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure<I: IntoIterator<Item = Elem>>(&self, gens: I) -> Subgroup {
        let gens: Vec<Elem> = gens.into_iter().filter(|&g| g != self.identity).collect();
        let mut members = FixedBitSet::with_capacity(self.order);
        members.insert(self.identity);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !members.contains(y) {
                    members.insert(y);
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_mask(members)
    }

    /// Closure of `base` together with `extra`.
    pub fn join(&self, base: &Subgroup, extra: &[Elem]) -> Subgroup {
        self.closure(base.elements().chain(extra.iter().copied()))
    }

    /// Checks closure under products and inverses of an arbitrary element set.
    pub fn is_subgroup_set(&self, set: &FixedBitSet) -> bool {
        set.contains(self.identity)
            && set.ones().all(|a| set.contains(self.inv(a)) && set.ones().all(|b| set.contains(self.mul(a, b))))
    }

    /// Greedy generating set: scan by index, keep an element when it is not
    /// yet in the closure of the chosen ones.
    pub fn greedy_generators(&self, within: &Subgroup) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = self.trivial();
        for x in within.elements() {
            if !span.contains(x) {
                gens.push(x);
                span = self.join(&span, &[x]);
            }
        }
        gens
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.normality_violation(s).is_none()
    }

    fn normality_violation(&self, s: &Subgroup) -> Option<(Elem, Elem)> {
        let gens = self.greedy_generators(&self.full());
        let sgens = self.greedy_generators(s);
        for &g in &gens {
            for &x in &sgens {
                if !s.contains(self.conjugate(x, g)) {
                    return Some((x, g));
                }
            }
        }
        None
    }

    /// Coset group `G/N` together with the canonical projection.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
        if let Some((element, by)) = self.normality_violation(n) {
            return Err(Error::NotNormal { element, by });
        }
        let mut coset = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for m in n.elements() {
                coset[self.mul(x, m)] = idx;
            }
        }
        let q = reps.len();
        let mut mul = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                mul.push(coset[self.mul(a, b)]);
            }
        }
        let quotient = FiniteGroup::from_flat(q, mul)?;
        let labels = reps.iter().map(|&r| format!("{}N", self.label(r))).collect();
        let quotient = quotient.with_labels(labels);
        let proj = GroupHom { images: coset };
        if !proj.is_homomorphism(self, &quotient) {
            return Err(Error::CrossCheckFailed("projection is not a homomorphism".into()));
        }
        Ok((quotient, proj))
    }

    /// Image of a subgroup under a homomorphism, as a subgroup of the target.
    pub fn image_of(&self, hom: &GroupHom, target: &FiniteGroup, s: &Subgroup) -> Subgroup {
        Subgroup::from_elements(target.order(), s.elements().map(|x| hom.apply(x)))
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, hom: &GroupHom, s: &Subgroup) -> Subgroup {
        Subgroup::from_elements(self.order, self.elements().filter(|&x| s.contains(hom.apply(x))))
    }

    /// Cyclic group of order `n` (additive residues).
    pub fn cyclic(n: usize) -> FiniteGroup {
        let mul = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        FiniteGroup::from_flat(n, mul).expect("cyclic table is a group")
    }
}

/// Subgroup given by a membership bitmask over its parent's element indices.
///
/// The parent is not stored; every operation that needs the multiplication
/// takes the parent [`FiniteGroup`] explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: FixedBitSet,
    order: usize,
}

impl Subgroup {
    pub fn from_mask(members: FixedBitSet) -> Self {
        let order = members.count_ones(..);
        Subgroup { members, order }
    }

    pub fn from_elements<I: IntoIterator<Item = Elem>>(parent_order: usize, elems: I) -> Self {
        let mut members = FixedBitSet::with_capacity(parent_order);
        for e in elems {
            members.insert(e);
        }
        Self::from_mask(members)
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.ones()
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.members.ones().collect()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut m = self.members.clone();
        m.intersect_with(&other.members);
        Self::from_mask(m)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the sorted element lists.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.ones().cmp(other.members.ones())
    }
}

/// A map between finite groups given by its table of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupHom {
    pub images: Vec<Elem>,
}

impl GroupHom {
    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { images: g.elements().collect() }
    }

    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        self.images.len() == source.order()
            && source.elements().all(|x| {
                source.elements().all(|y| self.apply(source.mul(x, y)) == target.mul(self.apply(x), self.apply(y)))
            })
    }

    pub fn kernel(&self, source: &FiniteGroup, target: &FiniteGroup) -> Subgroup {
        Subgroup::from_elements(source.order(), source.elements().filter(|&x| self.apply(x) == target.identity()))
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.images.len());
        for &y in &self.images {
            if y >= self.images.len() || seen.contains(y) {
                return false;
            }
            seen.insert(y);
        }
        true
    }

    /// `x -> other(self(x))`: apply `self` first.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        GroupHom { images: self.images.iter().map(|&y| other.apply(y)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// Order of a permutation of the element set.
    pub fn permutation_order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.then(self);
            k += 1;
        }
        k
    }

    /// Inner automorphism `x -> g^-1 x g`.
    pub fn inner(g: &FiniteGroup, by: Elem) -> GroupHom {
        GroupHom { images: g.elements().map(|x| g.conjugate(x, by)).collect() }
    }
}

/// Extends `gens[i] -> images[i]` to a homomorphism by breadth-first closure.
///
/// Returns `None` when the assignment is inconsistent. When every edge
/// `x -> x*g` is consistent the map satisfies `f(xy) = f(x) f(y)`, since any
/// `y` is a product of generators.
pub fn extend_to_hom(source: &FiniteGroup, gens: &[Elem], images: &[Elem], target: &FiniteGroup) -> Option<GroupHom> {
    debug_assert_eq!(gens.len(), images.len());
    let mut map = vec![usize::MAX; source.order()];
    map[source.identity()] = target.identity();
    let mut queue = VecDeque::from([source.identity()]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x];
        for (&g, &img) in gens.iter().zip(images) {
            let y = source.mul(x, g);
            let fy = target.mul(fx, img);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    Some(GroupHom { images: map })
}

/// Calls `visit` on every tuple in `choices^len`, first position most
/// significant.
pub(crate) fn for_each_tuple<F: FnMut(&[usize])>(choices: usize, len: usize, mut visit: F) {
    let mut idx = vec![0usize; len];
    if choices == 0 && len > 0 {
        return;
    }
    loop {
        visit(&idx);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Every homomorphism from `source` into `target` whose image lies in `into`.
///
/// Images are assigned to a minimal generating set of `source` (a Frattini
/// basis for p-groups) and extended by closure.
pub fn homs_into(source: &FiniteGroup, target: &FiniteGroup, into: &Subgroup) -> Vec<GroupHom> {
    let gens = crate::structure::generators_for_homs(source);
    let pool: Vec<Elem> = into.to_vec();
    let mut out = Vec::new();
    let mut images = vec![0; gens.len()];
    for_each_tuple(pool.len(), gens.len(), |t| {
        for (slot, &c) in images.iter_mut().zip(t) {
            *slot = pool[c];
        }
        if let Some(h) = extend_to_hom(source, &gens, &images, target) {
            out.push(h);
        }
    });
    out
}

/// Complete list of homomorphisms `source -> target`, zero map included.
pub fn all_homs(source: &FiniteGroup, target: &FiniteGroup) -> Vec<GroupHom> {
    homs_into(source, target, &target.full())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> Vec<Vec<usize>> {
        vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]
    }

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_cayley_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn cyclic_three() {
        let g = FiniteGroup::from_cayley_table(&z3()).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_abelian());
        assert_eq!(g.element_order(1), 3);
        assert_eq!(g.inv(1), 2);
    }

    #[test]
    fn idempotent_is_not_invertible() {
        let err = FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::NoInverse(1));
    }

    #[test]
    fn missing_identity() {
        let err = FiniteGroup::from_cayley_table(&[vec![1, 0], vec![0, 0]]).unwrap_err();
        assert_eq!(err, Error::NoIdentity);
    }

    #[test]
    fn non_associative_loop_is_rejected() {
        // A Latin square with identity 0 that is not a group (order-5 loop).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_cayley_table(&t), Err(Error::NotAssociative(..))));
    }

    #[test]
    fn malformed_and_too_large() {
        assert!(matches!(
            FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1]]),
            Err(Error::MalformedTable { row: 1 })
        ));
        let t: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
        assert!(matches!(
            FiniteGroup::from_cayley_table_with_limit(&t, 3),
            Err(Error::TooLarge { order: 4, limit: 3 })
        ));
    }

    #[test]
    fn basic_identities() {
        let g = FiniteGroup::cyclic(9);
        for x in g.elements() {
            assert_eq!(g.commutator(x, x), g.identity());
            assert_eq!(g.conjugate(x, g.identity()), x);
            assert_eq!(9 % g.element_order(x), 0);
        }
        assert_eq!(g.zpow(1, -1), 8);
    }

    #[test]
    fn closure_edge_cases() {
        let g = FiniteGroup::cyclic(9);
        assert_eq!(g.closure([]).order(), 1);
        assert_eq!(g.closure([g.identity()]).order(), 1);
        assert_eq!(g.closure([3]).order(), 3);
        assert_eq!(g.closure([2]).order(), 9);
    }

    #[test]
    fn quotient_by_trivial_and_whole() {
        let g = FiniteGroup::cyclic(9);
        let (q, proj) = g.quotient(&g.trivial()).unwrap();
        assert_eq!(q.order(), 9);
        assert!(proj.is_bijective());
        let (q, _) = g.quotient(&g.full()).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn hom_counts_for_cyclic() {
        let c9 = FiniteGroup::cyclic(9);
        let c3 = FiniteGroup::cyclic(3);
        assert_eq!(all_homs(&c9, &c3).len(), 3);
        assert_eq!(all_homs(&c3, &c9).len(), 3);
        assert_eq!(all_homs(&c9, &c9).len(), 9);
    }

    #[test]
    fn tuple_enumeration() {
        let mut seen = Vec::new();
        for_each_tuple(2, 2, |t| seen.push(t.to_vec()));
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let mut count = 0;
        for_each_tuple(3, 0, |_| count += 1);
        assert_eq!(count, 1);
    }
}
