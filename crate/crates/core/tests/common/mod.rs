#![allow(dead_code)]

use pgauto::{from_pc_presentation, FiniteGroup, PcPresentation};
use proptest::prelude::*;

/// Triangular presentations: `g_i^p` involves only generators after `g_i`,
/// `[g_j, g_i]` only generators after `g_j`. Many are inconsistent and get
/// filtered out by the builder.
pub fn presentation(p: u32, max_rank: usize) -> impl Strategy<Value = PcPresentation> {
    (max_rank.saturating_sub(1).max(1)..=max_rank)
        .prop_flat_map(move |rank| {
            let words = proptest::collection::vec(proptest::collection::vec(0..p, rank), rank * rank);
            (Just(rank), words, proptest::collection::vec(any::<bool>(), rank * rank))
        })
        .prop_map(move |(rank, words, keep)| {
            let mut pcp = PcPresentation::new(p, rank);
            let mut k = 0;
            for i in 0..rank {
                for j in i..rank {
                    let mut w = words[k].clone();
                    let after = if j == i { i } else { j };
                    w.iter_mut().take(after + 1).for_each(|e| *e = 0);
                    if keep[k] && w.iter().any(|&e| e != 0) {
                        if j == i {
                            pcp.powers.insert(i, w);
                        } else if j < rank - 1 {
                            pcp.commutators.insert((j, i), w);
                        }
                    }
                    k += 1;
                }
            }
            pcp
        })
}

pub fn group(p: u32, max_rank: usize) -> impl Strategy<Value = FiniteGroup> {
    presentation(p, max_rank).prop_filter_map("inconsistent presentation", |pcp| from_pc_presentation(&pcp).ok())
}

/// Small odd p-groups, mostly 3-groups.
pub fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![4 => group(3, 4), 1 => group(5, 3)]
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, max_global_rejects: 50_000, ..ProptestConfig::default() }
}
