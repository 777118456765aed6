// ------------------------------------------------------------------------------------------------
// Copyright © 2026, ccs-workbench authors.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License.  You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the
// License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either
// express or implied.  See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------------------------------

//! Strong bisimilarity of explored transition graphs by signature refinement.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::ccs::Lts;
use crate::error::{Error, Result};

/// Outgoing `(label, block)` pairs of a state.
type Signature = BTreeSet<(usize, usize)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum BisimResult {
    Bisimilar,
    /// The roots are told apart; `label` is an action on which they first differ.
    Distinguished {
        left: String,
        right: String,
        label: String,
    },
}

impl BisimResult {
    pub fn is_bisimilar(&self) -> bool {
        matches!(self, BisimResult::Bisimilar)
    }
}

/// Decides strong bisimilarity of the two roots over edge labels; rule names are ignored.
pub fn bisim(l1: &Lts, l2: &Lts) -> Result<BisimResult> {
    if l1.truncated || l2.truncated {
        return Err(Error::Truncated);
    }
    let n1 = l1.states.len();
    let n = n1 + l2.states.len();
    let mut labels: HashMap<&str, usize> = HashMap::new();
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (offset, lts) in [(0, l1), (n1, l2)] {
        for e in &lts.edges {
            let next = labels.len();
            let l = *labels.entry(e.label.as_str()).or_insert(next);
            succ[offset + e.src].push((l, offset + e.dst));
        }
    }
    let (r1, r2) = (l1.root, n1 + l2.root);

    let mut block = vec![0usize; n];
    let mut count = 1;
    loop {
        let sigs: Vec<Signature> = (0..n)
            .map(|s| succ[s].iter().map(|&(l, t)| (l, block[t])).collect())
            .collect();
        if block[r1] == block[r2] && sigs[r1] != sigs[r2] {
            let diff = sigs[r1]
                .symmetric_difference(&sigs[r2])
                .next()
                .expect("signatures differ");
            let label = labels
                .iter()
                .find(|(_, &id)| id == diff.0)
                .map(|(l, _)| l.to_string())
                .expect("interned label");
            return Ok(BisimResult::Distinguished {
                left: l1.states[l1.root].clone(),
                right: l2.states[l2.root].clone(),
                label,
            });
        }
        let mut ids: HashMap<(usize, &Signature), usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|s| {
                let k = ids.len();
                *ids.entry((block[s], &sigs[s])).or_insert(k)
            })
            .collect();
        let stable = ids.len() == count;
        block = next;
        count = ids.len();
        if stable {
            break;
        }
    }
    debug_assert_eq!(block[r1], block[r2]);
    Ok(BisimResult::Bisimilar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccs::{explore, Semantics};
    use crate::term::{Defs, Process};

    fn lts(s: &str) -> Lts {
        explore(&s.parse::<Process>().unwrap(), &Defs::new(), Semantics::Sys, 0, 1000).unwrap()
    }

    #[test]
    fn examples() {
        assert!(bisim(&lts("a.0"), &lts("a.0 + a.0")).unwrap().is_bisimilar());
        assert!(bisim(&lts("0"), &lts("0")).unwrap().is_bisimilar());
        match bisim(&lts("a.b.0"), &lts("a.0")).unwrap() {
            BisimResult::Distinguished { label, .. } => assert_eq!(label, "a"),
            other => panic!("{other:?}"),
        }
        assert!(!bisim(&lts("a.(b.0 + c.0)"), &lts("a.b.0 + a.c.0"))
            .unwrap()
            .is_bisimilar());
        assert!(bisim(&lts("a.0 | b.0"), &lts("a.b.0 + b.a.0")).unwrap().is_bisimilar());
    }

    #[test]
    fn truncated_graphs_are_rejected() {
        let t = explore(&"a.b.0".parse().unwrap(), &Defs::new(), Semantics::Sys, 0, 1).unwrap();
        assert_eq!(bisim(&t, &t), Err(Error::Truncated));
    }
}
