//! Finite associative rings, not necessarily unital, with their circle
//! composition `x o y = x + y + xy` and adjoint group.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::structure::{exponent, prime_power};

/// Largest ring accepted by [`FiniteRing::new`], `3^7`.
pub const RING_MAX_ORDER: usize = 2187;

#[derive(Clone, Debug)]
pub struct FiniteRing {
    additive: FiniteGroup,
    mul: Vec<usize>,
    additive_gens: Vec<usize>,
}

impl FiniteRing {
    /// Validates both tables. Distributivity is checked against an additive
    /// generating set on the right-hand argument, which forces additivity of
    /// every left and right multiplication map; associativity then only has
    /// to hold on triples of additive generators.
    pub fn new(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<Self> {
        let additive = FiniteGroup::from_cayley_table_with_limit(add, RING_MAX_ORDER)?;
        let n = additive.order();
        for a in 0..n {
            for b in 0..a {
                if additive.mul(a, b) != additive.mul(b, a) {
                    return Err(Error::NotAbelianAdd(a, b));
                }
            }
        }
        if mul.len() != n {
            return Err(Error::MalformedTable { row: mul.len() });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (r, row) in mul.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::MalformedTable { row: r });
            }
            flat.extend_from_slice(row);
        }
        Self::from_parts(additive, flat)
    }

    fn from_parts(additive: FiniteGroup, mul: Vec<usize>) -> Result<Self> {
        let additive_gens = additive.greedy_generators(&additive.full());
        let ring = FiniteRing { additive, mul, additive_gens };
        ring.check_distributive()?;
        ring.check_associative()?;
        Ok(ring)
    }

    fn check_distributive(&self) -> Result<()> {
        for x in self.elements() {
            for y in self.elements() {
                for &g in &self.additive_gens {
                    let yg = self.add(y, g);
                    if self.mul(x, yg) != self.add(self.mul(x, y), self.mul(x, g)) {
                        return Err(Error::NotDistributive(x, y, g));
                    }
                    if self.mul(yg, x) != self.add(self.mul(y, x), self.mul(g, x)) {
                        return Err(Error::NotDistributive(y, g, x));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        for &a in &self.additive_gens {
            for &b in &self.additive_gens {
                let ab = self.mul(a, b);
                for &c in &self.additive_gens {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAssociativeMul(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every ring axiom over all pairs and triples.
    pub fn check_axioms_exhaustive(&self) -> Result<()> {
        for a in self.elements() {
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::NotAbelianAdd(a, b));
                }
                for c in self.elements() {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAssociativeMul(a, b, c));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                        || self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c))
                    {
                        return Err(Error::NotDistributive(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Ring with `mul = 0` on the cyclic group of order `n`.
    pub fn null(n: usize) -> Self {
        let additive = FiniteGroup::cyclic(n);
        Self::from_parts(additive, vec![0; n * n]).expect("null ring")
    }

    /// `Z/nZ`.
    pub fn integers_mod(n: usize) -> Self {
        let additive = FiniteGroup::cyclic(n);
        let mul = (0..n).flat_map(|a| (0..n).map(move |b| a * b % n)).collect();
        Self::from_parts(additive, mul).expect("Z/nZ")
    }

    /// `kZ/mZ`, element `i` standing for `i*k mod m` (requires `k | m`).
    pub fn multiples(k: usize, m: usize) -> Self {
        assert_eq!(m % k, 0);
        let n = m / k;
        let additive = FiniteGroup::cyclic(n);
        let mul = (0..n).flat_map(|a| (0..n).map(move |b| (a * k * b * k % m) / k)).collect();
        Self::from_parts(additive, mul).expect("kZ/mZ")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.additive.order()
    }

    #[inline]
    pub fn zero(&self) -> usize {
        self.additive.identity()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.additive.mul(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.additive.inv(a)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn additive_group(&self) -> &FiniteGroup {
        &self.additive
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.additive.table()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    /// `k * x`
    pub fn times(&self, k: u64, x: usize) -> usize {
        self.additive.pow(x, k)
    }

    /// `x + y + xy`
    #[inline]
    pub fn circle(&self, x: usize, y: usize) -> usize {
        self.add(self.add(x, y), self.mul(x, y))
    }

    /// `x^(m)`: `x^(0) = 0`, `x^(m) = x^(m-1) o x`.
    pub fn adjoint_power(&self, x: usize, m: u64) -> usize {
        let mut acc = self.zero();
        for _ in 0..m {
            acc = self.circle(acc, x);
        }
        acc
    }

    /// `Σ_{i>=1} (-1)^i x^i`, the circle inverse of `x` when `x` is nilpotent.
    pub fn nilpotent_circle_inverse(&self, x: usize) -> Option<usize> {
        let mut acc = self.zero();
        let mut power = x;
        let mut sign_neg = true;
        for _ in 0..self.order() + 1 {
            if power == self.zero() {
                return Some(acc);
            }
            let term = if sign_neg { self.neg(power) } else { power };
            acc = self.add(acc, term);
            power = self.mul(power, x);
            sign_neg = !sign_neg;
        }
        None
    }

    pub fn prime(&self) -> Option<usize> {
        prime_power(self.order()).map(|(p, _)| p)
    }

    fn require_prime(&self) -> Result<Option<usize>> {
        if self.order() == 1 {
            return Ok(None);
        }
        self.prime().map(Some).ok_or(Error::NotPRing(self.order()))
    }

    pub fn additive_exponent(&self) -> usize {
        exponent(&self.additive, &self.additive.full())
    }

    pub fn adjoint_group(&self) -> AdjointGroupView {
        let n = self.order();
        let mut members = Vec::new();
        for x in self.elements() {
            if self.elements().any(|y| self.circle(x, y) == self.zero() && self.circle(y, x) == self.zero()) {
                members.push(x);
            }
        }
        let mut position = vec![None; n];
        for (i, &x) in members.iter().enumerate() {
            position[x] = Some(i);
        }
        let table: Vec<Vec<usize>> = members
            .iter()
            .map(|&a| members.iter().map(|&b| position[self.circle(a, b)].expect("units closed")).collect())
            .collect();
        let group = FiniteGroup::from_cayley_table_with_limit(&table, usize::MAX).expect("adjoint group is a group");
        AdjointGroupView { members, position, group }
    }

    pub fn is_radical(&self) -> bool {
        self.adjoint_group().members.len() == self.order()
    }

    pub fn additive_closure<I: IntoIterator<Item = usize>>(&self, gens: I) -> Subgroup {
        self.additive.closure(gens)
    }

    /// `R^n`, the additive subgroup spanned by `n`-fold products.
    pub fn power_ideal(&self, n: usize) -> Subgroup {
        assert!(n >= 1);
        let mut current = self.additive.full();
        for _ in 1..n {
            current = self.product_span(&current);
        }
        current
    }

    /// Additive span of `a * r` for `a` in `left`, `r` in `R`.
    fn product_span(&self, left: &Subgroup) -> Subgroup {
        let lg = self.additive.greedy_generators(left);
        let mut prods: Vec<usize> = lg
            .iter()
            .flat_map(|&a| self.additive_gens.iter().map(move |&r| (a, r)))
            .map(|(a, r)| self.mul(a, r))
            .collect();
        prods.sort_unstable();
        prods.dedup();
        self.additive.closure(prods)
    }

    /// Least `n` with `R^{n+1} = 0`, `None` if the ring is not nilpotent.
    pub fn nilpotency_degree(&self) -> Option<usize> {
        let mut current = self.additive.full();
        let mut n = 0;
        loop {
            if current.is_trivial() {
                return Some(n);
            }
            let next = self.product_span(&current);
            if next == current {
                return None;
            }
            current = next;
            n += 1;
        }
    }

    /// Every `x` with `p x = 0` satisfies `y x = 0` for all `y`.
    pub fn is_right_p_nil(&self) -> Result<bool> {
        let Some(p) = self.require_prime()? else {
            return Ok(true);
        };
        Ok(self
            .elements()
            .filter(|&x| self.times(p as u64, x) == self.zero())
            .all(|x| self.elements().all(|y| self.mul(y, x) == self.zero())))
    }

    /// Every `x` with `p x = 0` satisfies `x y = 0` for all `y`.
    pub fn is_left_p_nil(&self) -> Result<bool> {
        let Some(p) = self.require_prime()? else {
            return Ok(true);
        };
        Ok(self
            .elements()
            .filter(|&x| self.times(p as u64, x) == self.zero())
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.zero())))
    }

    /// `{x : p^n x = 0}`
    pub fn omega_additive(&self, n: u32) -> Result<Subgroup> {
        let Some(p) = self.require_prime()? else {
            return Ok(self.additive.full());
        };
        let k = (p as u64).pow(n);
        Ok(Subgroup::from_elements(self.order(), self.elements().filter(|&x| self.times(k, x) == self.zero())))
    }

    /// `{x : x^(p^n) = 0}` for a radical ring.
    pub fn omega_set_adjoint(&self, n: u32) -> Result<FixedBitSet> {
        if !self.is_radical() {
            return Err(Error::NotRadical);
        }
        let mut set = FixedBitSet::with_capacity(self.order());
        let Some(p) = self.require_prime()? else {
            set.insert(self.zero());
            return Ok(set);
        };
        let k = (p as u64).pow(n);
        for x in self.elements().filter(|&x| self.adjoint_power(x, k) == self.zero()) {
            set.insert(x);
        }
        Ok(set)
    }

    /// Subgroup of `R°` generated by [`FiniteRing::omega_set_adjoint`], as ring elements.
    pub fn omega_adjoint(&self, n: u32) -> Result<FixedBitSet> {
        let set = self.omega_set_adjoint(n)?;
        let view = self.adjoint_group();
        let sub = view.group.closure(set.ones().map(|x| view.position[x].unwrap()));
        let mut out = FixedBitSet::with_capacity(self.order());
        for i in sub.elements() {
            out.insert(view.members[i]);
        }
        Ok(out)
    }

    /// Two-sided ideal test for an additive subgroup.
    pub fn is_ideal(&self, ideal: &Subgroup) -> bool {
        let ig = self.additive.greedy_generators(ideal);
        ig.iter().all(|&a| {
            self.additive_gens.iter().all(|&r| ideal.contains(self.mul(a, r)) && ideal.contains(self.mul(r, a)))
        })
    }

    /// `R/I` with the projection as an index map.
    pub fn quotient(&self, ideal: &Subgroup) -> Result<(FiniteRing, Vec<usize>)> {
        if !self.is_ideal(ideal) {
            return Err(Error::HypothesisFailed("additive subgroup is not a two-sided ideal".into()));
        }
        let (additive, proj) = self.additive.quotient(ideal)?;
        let q = additive.order();
        let mut reps = vec![usize::MAX; q];
        for x in self.elements() {
            let c = proj.apply(x);
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        let mul = (0..q)
            .flat_map(|a| (0..q).map(move |b| (a, b)))
            .map(|(a, b)| proj.apply(self.mul(reps[a], reps[b])))
            .collect();
        let ring = Self::from_parts(additive, mul)?;
        Ok((ring, proj.images))
    }
}

/// The adjoint group `R°`: circle-invertible elements under `o`.
#[derive(Clone, Debug)]
pub struct AdjointGroupView {
    /// Ring elements in the group, ascending; group element `i` is `members[i]`.
    pub members: Vec<usize>,
    position: Vec<Option<usize>>,
    pub group: FiniteGroup,
}

impl AdjointGroupView {
    pub fn to_group(&self, x: usize) -> Option<Elem> {
        self.position[x]
    }

    pub fn to_ring(&self, g: Elem) -> usize {
        self.members[g]
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position[x].is_some()
    }
}
