//! JSON group and ring files.
//!
//! ```json
//! {"format": "cayley", "order": 3, "mul": [[0,1,2],[1,2,0],[2,0,1]]}
//! {"format": "pc", "p": 3, "rank": 3, "commutators": {"2,1": [0,0,1]}}
//! {"format": "ring", "order": 3, "add": [[...]], "mul": [[...]]}
//! ```
//!
//! Generators in pc files are numbered from 1; `"j,i"` with `j > i` holds
//! `[g_j, g_i]` and `"i"` holds `g_i^p`, each as a full exponent vector.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::pc::{from_pc_presentation_with_limit, PcPresentation};
use crate::ring::FiniteRing;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "format", rename_all = "lowercase")]
pub enum GroupFile {
    Cayley {
        order: usize,
        mul: Vec<Vec<Elem>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Pc {
        p: u32,
        rank: usize,
        #[serde(default)]
        powers: BTreeMap<String, Vec<u32>>,
        #[serde(default)]
        commutators: BTreeMap<String, Vec<u32>>,
    },
}

fn parse_index(s: &str, rank: usize) -> Result<usize> {
    match s.trim().parse::<usize>() {
        Ok(i) if i >= 1 && i <= rank => Ok(i - 1),
        _ => Err(Error::MalformedPresentation(format!("bad generator number {s:?}"))),
    }
}

impl GroupFile {
    pub fn from_pc(pcp: &PcPresentation) -> Self {
        GroupFile::Pc {
            p: pcp.p,
            rank: pcp.rank,
            powers: pcp.powers.iter().map(|(i, w)| ((i + 1).to_string(), w.clone())).collect(),
            commutators: pcp
                .commutators
                .iter()
                .map(|((j, i), w)| (format!("{},{}", j + 1, i + 1), w.clone()))
                .collect(),
        }
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile::Cayley { order: g.order(), mul: g.table(), labels: None }
    }

    pub fn to_pc(&self) -> Result<Option<PcPresentation>> {
        let GroupFile::Pc { p, rank, powers, commutators } = self else {
            return Ok(None);
        };
        let mut pcp = PcPresentation::new(*p, *rank);
        for (k, w) in powers {
            pcp.powers.insert(parse_index(k, *rank)?, w.clone());
        }
        for (k, w) in commutators {
            let (j, i) = k
                .split_once(',')
                .ok_or_else(|| Error::MalformedPresentation(format!("commutator key {k:?} is not \"j,i\"")))?;
            pcp.commutators.insert((parse_index(j, *rank)?, parse_index(i, *rank)?), w.clone());
        }
        pcp.validate()?;
        Ok(Some(pcp))
    }

    pub fn build(&self, max_order: usize) -> Result<FiniteGroup> {
        match self {
            GroupFile::Cayley { order, mul, labels } => {
                if mul.len() != *order {
                    return Err(Error::MalformedTable { row: mul.len().min(*order) });
                }
                let g = FiniteGroup::from_cayley_table_with_limit(mul, max_order)?;
                Ok(match labels {
                    Some(l) if l.len() == *order => g.with_labels(l.clone()),
                    _ => g,
                })
            }
            GroupFile::Pc { .. } => from_pc_presentation_with_limit(&self.to_pc()?.unwrap(), max_order),
        }
    }

    pub fn parse(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group file serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFile {
    pub format: String,
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl RingFile {
    pub fn from_ring(r: &FiniteRing) -> Self {
        RingFile { format: "ring".into(), order: r.order(), add: r.add_table(), mul: r.mul_table() }
    }

    pub fn build(&self) -> Result<FiniteRing> {
        if self.format != "ring" {
            return Err(Error::Json(format!("expected format \"ring\", found {:?}", self.format)));
        }
        if self.add.len() != self.order || self.mul.len() != self.order {
            return Err(Error::MalformedTable { row: self.add.len().min(self.mul.len()) });
        }
        FiniteRing::new(&self.add, &self.mul)
    }

    pub fn parse(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pc_round_trip() {
        let pcp = PcPresentation::new(3, 3).power(0, &[0, 0, 1]).commutator(1, 0, &[0, 0, 1]);
        let f = GroupFile::from_pc(&pcp);
        let json = f.to_json();
        assert_eq!(json, r#"{"format":"pc","p":3,"rank":3,"powers":{"1":[0,0,1]},"commutators":{"2,1":[0,0,1]}}"#);
        let back = GroupFile::parse(&json).unwrap();
        assert_eq!(back.to_pc().unwrap().unwrap(), pcp);
        assert_eq!(back.build(729).unwrap().order(), 27);
    }

    #[test]
    fn cayley_round_trip() {
        let g = FiniteGroup::cyclic(4);
        let f = GroupFile::from_group(&g);
        let h = GroupFile::parse(&f.to_json()).unwrap().build(729).unwrap();
        assert_eq!(h.table(), g.table());
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(GroupFile::parse("{\"format\":\"wat\"}"), Err(Error::Json(_))));
        let bad_key = r#"{"format":"pc","p":3,"rank":2,"commutators":{"2":[0,0]}}"#;
        assert!(matches!(GroupFile::parse(bad_key).unwrap().build(729), Err(Error::MalformedPresentation(_))));
        let short = r#"{"format":"cayley","order":2,"mul":[[0,1]]}"#;
        assert!(matches!(GroupFile::parse(short).unwrap().build(729), Err(Error::MalformedTable { .. })));
        let big = GroupFile::from_pc(&PcPresentation::new(3, 7));
        assert!(matches!(big.build(729), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn ring_round_trip() {
        let r = FiniteRing::multiples(3, 27);
        let f = RingFile::from_ring(&r);
        let back = RingFile::parse(&serde_json::to_string(&f).unwrap()).unwrap().build().unwrap();
        assert_eq!(back.mul_table(), r.mul_table());
    }
}
