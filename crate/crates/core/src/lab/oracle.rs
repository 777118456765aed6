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

//! Agreement between the canonical-form decision procedure and the brute-force closure on all
//! pairs of enumerated terms.
//!
//! Pairs are not searched one by one.  For a term `q` of weight `w`, the closure of `q` under
//! the axioms, restricted to weight `w`, is exactly the set of terms `p` (of weight at most `w`)
//! for which the pairwise search answers "congruent"; when it completes, every other `p` gets
//! "not congruent".  One closure therefore settles every pair `(p, q')` with `q'` of weight `w`
//! in the same closure.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::congruence::{canonicalize, closure, BruteOptions, BruteVerdict};
use crate::error::Result;
use crate::lab::enumerate::{enumerate_terms, Features};
use crate::term::{alpha_canon, Defs, Name, Process};

#[derive(Debug, Clone)]
pub struct AgreementConfig {
    pub max_size: usize,
    pub names: Vec<Name>,
    pub features: Features,
    /// Closure states expanded before the search gives up.
    pub step_budget: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Disagreement {
    pub p: Process,
    pub q: Process,
    pub equiv: bool,
    pub brute: BruteVerdict,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AgreementReport {
    pub terms: usize,
    pub closures: usize,
    pub exhausted_closures: usize,
    /// Ordered pairs `(p, q)` with `weight(p) <= weight(q)` settled by a complete closure.
    pub pairs_decided: u64,
    /// Pairs whose `q` only met exhausted closures.
    pub pairs_exhausted: u64,
    pub disagreements: Vec<Disagreement>,
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

pub fn oracle_agreement(config: &AgreementConfig, defs: &Defs) -> Result<AgreementReport> {
    let terms = enumerate_terms(config.max_size, &config.names, &config.features);
    oracle_agreement_on(&terms, config.step_budget, defs)
}

pub fn oracle_agreement_on(terms: &[Process], step_budget: usize, defs: &Defs) -> Result<AgreementReport> {
    let n = terms.len();
    let weight: Vec<usize> = terms.iter().map(Process::weight).collect();
    let canon: Vec<Process> = terms
        .iter()
        .map(|t| canonicalize(t, defs, 0).map(|c| c.process))
        .collect::<Result<_>>()?;
    let mut by_alpha: HashMap<Process, Vec<usize>> = HashMap::new();
    for (i, t) in terms.iter().enumerate() {
        by_alpha.entry(alpha_canon(t)).or_default().push(i);
    }
    let mut by_class: HashMap<&Process, Vec<usize>> = HashMap::new();
    for (i, c) in canon.iter().enumerate() {
        by_class.entry(c).or_default().push(i);
    }
    let mut at_most = vec![0u64; weight.iter().max().map_or(0, |w| w + 1)];
    for &w in &weight {
        at_most[w] += 1;
    }
    for w in 1..at_most.len() {
        at_most[w] += at_most[w - 1];
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| weight[i]);
    let mut covered = vec![false; n];
    let opts = BruteOptions {
        unfold: false,
        ..BruteOptions::new(step_budget)
    };
    let mut report = AgreementReport {
        terms: n,
        ..AgreementReport::default()
    };
    for &i in &order {
        if covered[i] {
            continue;
        }
        let w = weight[i];
        let c = closure(&terms[i], defs, &opts, w);
        report.closures += 1;
        let members: HashSet<usize> = c
            .states
            .iter()
            .filter_map(|s| by_alpha.get(s))
            .flatten()
            .copied()
            .collect();
        let heaviest: Vec<usize> = members.iter().copied().filter(|&j| weight[j] == w).collect();
        for &j in &heaviest {
            covered[j] = true;
        }
        let mut found = |p: usize, equiv: bool, brute: BruteVerdict| {
            report.disagreements.push(Disagreement {
                p: terms[p].clone(),
                q: terms[i].clone(),
                equiv,
                brute,
            })
        };
        for &j in &members {
            if canon[j] != canon[i] {
                found(j, false, BruteVerdict::Equivalent);
            }
        }
        if c.complete {
            for &j in &by_class[&canon[i]] {
                if weight[j] <= w && !members.contains(&j) {
                    found(j, true, BruteVerdict::Inequivalent);
                }
            }
            report.pairs_decided += heaviest.len() as u64 * at_most[w];
        } else {
            report.exhausted_closures += 1;
            report.pairs_exhausted += heaviest.len() as u64 * at_most[w];
        }
    }
    report
        .disagreements
        .sort_by_cached_key(|d| (d.q.to_string(), d.p.to_string()));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_restriction_fragment_agrees() {
        let cfg = AgreementConfig {
            max_size: 3,
            names: vec![Name::from_static("a"), Name::from_static("b")],
            features: Features::restrict(),
            step_budget: 10_000,
        };
        let r = oracle_agreement(&cfg, &Defs::new()).unwrap();
        assert!(r.agrees(), "{:?}", &r.disagreements[..r.disagreements.len().min(5)]);
        assert_eq!(r.exhausted_closures, 0);
        assert!(r.pairs_decided > 0);
    }

    #[test]
    fn a_wrong_oracle_would_be_caught() {
        // (a.0)\a and (b.0)\b are alpha-variants; a.0 + b.0 and b.0 + a.0 commute
        let terms: Vec<Process> = ["(a.0)\\a", "(b.0)\\b", "a.0 + b.0", "b.0 + a.0", "a.0"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let r = oracle_agreement_on(&terms, 1000, &Defs::new()).unwrap();
        assert!(r.agrees());
        assert_eq!(r.closures, 3);
    }
}
