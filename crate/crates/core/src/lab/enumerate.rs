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

//! Exhaustive term enumeration by size.
//!
//! Size counts every node except `0`.  Sums and parallel compositions are binary and their
//! operands are never `0` (such terms add nothing up to congruence); `0` still appears under
//! prefixes, restrictions and relabelings.

use crate::term::{Action, ConstId, Name, Process, Relabeling};

/// Optional operators for [`enumerate_terms`].
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct Features {
    pub restrict: bool,
    pub relabel: bool,
    pub consts: Vec<ConstId>,
    /// Also allow `0` as an operand of `|` and `+`.
    pub nil_operands: bool,
}

impl Features {
    pub fn none() -> Features {
        Features::default()
    }

    pub fn restrict() -> Features {
        Features {
            restrict: true,
            ..Features::default()
        }
    }

    pub fn relabel() -> Features {
        Features {
            relabel: true,
            ..Features::default()
        }
    }
}

/// Every nonempty relabeling over `names`: partial maps, identity pairs included.
pub fn relabelings(names: &[Name]) -> Vec<Relabeling> {
    let mut maps: Vec<Vec<(Name, Name)>> = vec![Vec::new()];
    for from in names {
        let mut next = Vec::new();
        for m in &maps {
            next.push(m.clone());
            for to in names {
                let mut m = m.clone();
                m.push((from.clone(), to.clone()));
                next.push(m);
            }
        }
        maps = next;
    }
    maps.into_iter()
        .filter(|m| !m.is_empty())
        .map(|m| Relabeling::new(m).expect("distinct left-hand sides"))
        .collect()
}

/// Terms of exactly each size `0..=max_size`, indexed by size.
pub fn terms_by_size(max_size: usize, names: &[Name], features: &Features) -> Vec<Vec<Process>> {
    let actions: Vec<Action> = names
        .iter()
        .flat_map(|n| [Action::name(n.clone()), Action::coname(n.clone())])
        .collect();
    let sigmas = if features.relabel {
        relabelings(names)
    } else {
        Vec::new()
    };
    let mut by: Vec<Vec<Process>> = vec![vec![Process::Nil]];
    for n in 1..=max_size {
        let mut out = Vec::new();
        for a in &actions {
            for t in &by[n - 1] {
                out.push(Process::prefix(a.clone(), t.clone()));
            }
        }
        let lo = if features.nil_operands { 0 } else { 1 };
        for i in lo..n {
            let j = n - 1 - i;
            if j < lo {
                continue;
            }
            for l in &by[i] {
                for r in &by[j] {
                    out.push(Process::par(l.clone(), r.clone()));
                }
            }
            for l in &by[i] {
                for r in &by[j] {
                    out.push(Process::Sum(vec![l.clone(), r.clone()]));
                }
            }
        }
        if features.restrict {
            for a in names {
                for t in &by[n - 1] {
                    out.push(Process::restrict(t.clone(), a.clone()));
                }
            }
        }
        for s in &sigmas {
            for t in &by[n - 1] {
                out.push(Process::relabel(t.clone(), s.clone()));
            }
        }
        if n == 1 {
            out.extend(features.consts.iter().cloned().map(Process::Const));
        }
        by.push(out);
    }
    by
}

/// All terms with at most `max_size` non-`0` nodes, smallest first.  Empty for `max_size = 0`.
pub fn enumerate_terms(max_size: usize, names: &[Name], features: &Features) -> Vec<Process> {
    if max_size == 0 || names.is_empty() {
        return Vec::new();
    }
    terms_by_size(max_size, names, features).into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn names(list: &[&'static str]) -> Vec<Name> {
        list.iter().map(|s| Name::from_static(s)).collect()
    }

    #[test]
    fn smallest_cases() {
        let one: Vec<String> = enumerate_terms(1, &names(&["a"]), &Features::none())
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(one, ["0", "a.0", "'a.0"]);
        assert!(enumerate_terms(0, &names(&["a"]), &Features::none()).is_empty());
    }

    #[test]
    fn sizes_and_uniqueness() {
        let ts = enumerate_terms(4, &names(&["a", "b"]), &Features::restrict());
        let set: HashSet<_> = ts.iter().collect();
        assert_eq!(set.len(), ts.len());
        assert!(ts.iter().all(|p| p.size() <= 4));
        assert_eq!(relabelings(&names(&["a", "b"])).len(), 8);
    }

    #[test]
    fn frozen_counts() {
        let count = |n, f: &Features| enumerate_terms(n, &names(&["a"]), f).len();
        assert_eq!(count(3, &Features::none()), 1 + 2 + 4 + 16);
        let per_size: Vec<usize> = terms_by_size(6, &names(&["a", "b"]), &Features::restrict())
            .iter()
            .map(Vec::len)
            .collect();
        assert_eq!(per_size, [1, 6, 36, 288, 2592, 25056, 254016]);
    }
}
