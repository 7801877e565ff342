//! Polycyclic presentations of p-groups and their compilation to tables.
//!
//! A presentation on generators `g_1..g_n` (0-based internally) fixes
//! `g_i^p` and `[g_j, g_i]` for `j > i` as normal words in the later
//! generators. Elements are exponent vectors `e` with `0 <= e_k < p`, indexed
//! by `sum e_k p^k`. Products are formed by collection from the left, after
//! which the table is validated in full: a presentation that does not
//! describe a group of order `p^n` is rejected.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, DEFAULT_MAX_ORDER};

/// Exponent vector, little-endian in generator index.
pub type Word = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    pub p: u32,
    pub rank: usize,
    /// `i -> g_i^p`
    pub powers: BTreeMap<usize, Word>,
    /// `(j, i) -> [g_j, g_i]` with `j > i`
    pub commutators: BTreeMap<(usize, usize), Word>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl PcPresentation {
    pub fn new(p: u32, rank: usize) -> Self {
        PcPresentation { p, rank, powers: BTreeMap::new(), commutators: BTreeMap::new() }
    }

    /// Sets `g_i^p = word` (0-based generator indices).
    pub fn power(mut self, i: usize, word: &[u32]) -> Self {
        self.powers.insert(i, self.pad(word));
        self
    }

    /// Sets `[g_j, g_i] = word` for `j > i` (0-based generator indices).
    pub fn commutator(mut self, j: usize, i: usize, word: &[u32]) -> Self {
        self.commutators.insert((j, i), self.pad(word));
        self
    }

    fn pad(&self, word: &[u32]) -> Word {
        let mut w = word.to_vec();
        w.resize(self.rank, 0);
        w
    }

    pub fn order(&self) -> Option<usize> {
        (self.p as usize).checked_pow(self.rank as u32)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedPresentation(m));
        if !is_prime(self.p as u64) {
            return bad(format!("{} is not prime", self.p));
        }
        let check_word = |w: &Word, after: usize, what: String| -> Result<()> {
            if w.len() != self.rank {
                return bad(format!("{what}: word length {} != rank {}", w.len(), self.rank));
            }
            if let Some(k) = w.iter().position(|&e| e >= self.p) {
                return bad(format!("{what}: exponent of g{} out of range", k + 1));
            }
            if w[..=after].iter().any(|&e| e != 0) {
                return bad(format!("{what}: word must involve only generators after g{}", after + 1));
            }
            Ok(())
        };
        for (&i, w) in &self.powers {
            if i >= self.rank {
                return bad(format!("power relation for missing generator g{}", i + 1));
            }
            check_word(w, i, format!("g{}^p", i + 1))?;
        }
        for (&(j, i), w) in &self.commutators {
            if j >= self.rank || i >= j {
                return bad(format!("commutator relation [g{}, g{}] needs j > i", j + 1, i + 1));
            }
            check_word(w, i, format!("[g{}, g{}]", j + 1, i + 1))?;
        }
        Ok(())
    }

    fn letters(word: &Word) -> impl Iterator<Item = usize> + '_ {
        word.iter().enumerate().flat_map(|(k, &e)| std::iter::repeat_n(k, e as usize))
    }

    /// Multiplies the collected word `exps` by `g_gen` on the right.
    fn collect_times(&self, exps: &mut [u32], gen: usize, empty: &Word) {
        let n = self.rank;
        let mut stack = vec![gen];
        while let Some(i) = stack.pop() {
            let tail: Vec<u32> = exps[i + 1..].to_vec();
            for e in &mut exps[i + 1..] {
                *e = 0;
            }
            let mut pending: Vec<usize> = Vec::new();
            exps[i] += 1;
            if exps[i] == self.p {
                exps[i] = 0;
                pending.extend(Self::letters(self.powers.get(&i).unwrap_or(empty)));
            }
            // tail * g_i = g_i * tail^{g_i}, and g_j^{g_i} = g_j [g_j, g_i]
            for j in i + 1..n {
                for _ in 0..tail[j - i - 1] {
                    pending.push(j);
                    pending.extend(Self::letters(self.commutators.get(&(j, i)).unwrap_or(empty)));
                }
            }
            stack.extend(pending.into_iter().rev());
        }
    }

    pub fn index_of(&self, exps: &[u32]) -> Elem {
        exps.iter().rev().fold(0usize, |acc, &e| acc * self.p as usize + e as usize)
    }

    pub fn exponents_of(&self, mut idx: Elem) -> Word {
        let p = self.p as usize;
        (0..self.rank)
            .map(|_| {
                let e = (idx % p) as u32;
                idx /= p;
                e
            })
            .collect()
    }

    pub fn label(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| if e == 1 { format!("g{}", k + 1) } else { format!("g{}^{}", k + 1, e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Index of the generator `g_i`.
    pub fn generator(&self, i: usize) -> Elem {
        (self.p as usize).pow(i as u32)
    }

    fn evaluate(&self, g: &FiniteGroup, word: &Word) -> Elem {
        Self::letters(word).fold(g.identity(), |acc, k| g.mul(acc, self.generator(k)))
    }
}

/// Compiles a presentation to a validated Cayley table (order `p^n`).
pub fn from_pc_presentation(pcp: &PcPresentation) -> Result<FiniteGroup> {
    from_pc_presentation_with_limit(pcp, DEFAULT_MAX_ORDER)
}

pub fn from_pc_presentation_with_limit(pcp: &PcPresentation, max_order: usize) -> Result<FiniteGroup> {
    pcp.validate()?;
    let order = pcp
        .order()
        .filter(|&o| o <= max_order)
        .ok_or(Error::TooLarge { order: pcp.order().unwrap_or(usize::MAX), limit: max_order })?;
    let n = pcp.rank;
    let p = pcp.p as usize;
    let empty: Word = vec![0; n];

    // rmul[x * n + i] = x * g_i
    let mut rmul = vec![0usize; order * n];
    for x in 0..order {
        let base = pcp.exponents_of(x);
        for i in 0..n {
            let mut e = base.clone();
            pcp.collect_times(&mut e, i, &empty);
            rmul[x * n + i] = pcp.index_of(&e);
        }
    }

    // x * y = (x * y') * g_k where y' drops one g_k from the top generator of y
    let mut mul = vec![0usize; order * order];
    for x in 0..order {
        mul[x * order] = x;
    }
    for y in 1..order {
        let mut k = 0;
        let mut pk = 1;
        let mut rest = y;
        while rest >= p {
            rest /= p;
            k += 1;
            pk *= p;
        }
        let prev = y - pk;
        for x in 0..order {
            mul[x * order + y] = rmul[mul[x * order + prev] * n + k];
        }
    }

    let group = FiniteGroup::from_flat(order, mul).map_err(|e| match e {
        Error::NotAssociative(a, b, c) => Error::InconsistentPresentation(format!(
            "collected table is not associative at ({}, {}, {})",
            pcp.label(&pcp.exponents_of(a)),
            pcp.label(&pcp.exponents_of(b)),
            pcp.label(&pcp.exponents_of(c))
        )),
        other => Error::InconsistentPresentation(other.to_string()),
    })?;

    // The table is a group; the defining relations must hold in it.
    for i in 0..n {
        let lhs = group.pow(pcp.generator(i), p as u64);
        if lhs != pcp.evaluate(&group, pcp.powers.get(&i).unwrap_or(&empty)) {
            return Err(Error::InconsistentPresentation(format!("power relation of g{} fails", i + 1)));
        }
        for j in i + 1..n {
            let lhs = group.commutator(pcp.generator(j), pcp.generator(i));
            if lhs != pcp.evaluate(&group, pcp.commutators.get(&(j, i)).unwrap_or(&empty)) {
                return Err(Error::InconsistentPresentation(format!(
                    "commutator relation [g{}, g{}] fails",
                    j + 1,
                    i + 1
                )));
            }
        }
    }

    let labels = (0..order).map(|x| pcp.label(&pcp.exponents_of(x))).collect();
    Ok(group.with_labels(labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn heis27() -> PcPresentation {
        PcPresentation::new(3, 3).commutator(1, 0, &[0, 0, 1])
    }

    #[test]
    fn cyclic_three() {
        let g = from_pc_presentation(&PcPresentation::new(3, 1)).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_abelian());
    }

    #[test]
    fn heisenberg_scan() {
        let pcp = heis27();
        let g = from_pc_presentation(&pcp).unwrap();
        assert_eq!(g.order(), 27);
        assert!(g.elements().all(|x| g.pow(x, 3) == g.identity()));
        assert!(!g.is_abelian());
        let z = g.commutator(pcp.generator(1), pcp.generator(0));
        assert_eq!(z, pcp.generator(2));
        // g3 is central
        assert!(g.elements().all(|x| g.mul(x, z) == g.mul(z, x)));
        g.check_associative_exhaustive().unwrap();
    }

    #[test]
    fn cyclic_nine_from_power_relation() {
        let g = from_pc_presentation(&PcPresentation::new(3, 2).power(0, &[0, 1])).unwrap();
        assert_eq!(g.element_order(1), 9);
    }

    #[test]
    fn inversion_by_order_three_element_is_inconsistent() {
        // g2^g1 = g2^2 would make conjugation by g1 of order 2.
        let pcp = PcPresentation::new(3, 2).commutator(1, 0, &[0, 1]);
        assert!(matches!(from_pc_presentation(&pcp), Err(Error::InconsistentPresentation(_))));
    }

    #[test]
    fn malformed_relations() {
        let bad = PcPresentation::new(3, 2).power(1, &[1, 0]);
        assert!(matches!(bad.validate(), Err(Error::MalformedPresentation(_))));
        let bad = PcPresentation::new(4, 1);
        assert!(matches!(bad.validate(), Err(Error::MalformedPresentation(_))));
        let bad = PcPresentation::new(3, 2).commutator(0, 1, &[0, 0]);
        assert!(matches!(bad.validate(), Err(Error::MalformedPresentation(_))));
    }

    #[test]
    fn index_roundtrip_and_labels() {
        let pcp = heis27();
        for x in 0..27 {
            assert_eq!(pcp.index_of(&pcp.exponents_of(x)), x);
        }
        assert_eq!(pcp.label(&[1, 0, 2]), "g1 g3^2");
        assert_eq!(pcp.label(&[0, 0, 0]), "1");
    }
}
