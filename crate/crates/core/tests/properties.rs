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

//! Randomized properties over generated terms.

use ccs_workbench::ccs::{check_derivation, sys_transitions};
use ccs_workbench::ccsk::{k_alpha_eq, k_bwd, k_canon, k_fwd, k_rewrites, Fragment, KProcess};
use ccs_workbench::congruence::{canonicalize, equiv, rewrites, ContextMode};
use ccs_workbench::rccs::{loop_check, LoopOptions, Variant};
use ccs_workbench::term::{
    alpha_canon, alpha_eq, apply_relabeling, free_names, Action, Defs, Name, Process, Relabeling,
};
use proptest::prelude::*;

fn name() -> impl Strategy<Value = Name> {
    prop::sample::select(vec!["a", "b", "c"]).prop_map(Name::from_static)
}

fn relabeling() -> impl Strategy<Value = Relabeling> {
    (name(), name()).prop_map(|(x, y)| Relabeling::new(vec![(x, y)]).unwrap())
}

fn process() -> impl Strategy<Value = Process> {
    let leaf = Just(Process::Nil);
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            3 => (name(), any::<bool>(), inner.clone()).prop_map(|(n, co, p)| {
                Process::prefix(if co { Action::coname(n) } else { Action::name(n) }, p)
            }),
            1 => prop::collection::vec(inner.clone(), 2..=3).prop_map(Process::sum),
            2 => (inner.clone(), inner.clone()).prop_map(|(p, q)| Process::par(p, q)),
            1 => (inner.clone(), name()).prop_map(|(p, n)| Process::restrict(p, n)),
            1 => (inner, relabeling()).prop_map(|(p, s)| Process::relabel(p, s)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_then_parsing_is_the_identity(p in process()) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<Process>().unwrap(), p);
    }

    #[test]
    fn alpha_canonical_form_is_idempotent(p in process()) {
        let c = alpha_canon(&p);
        prop_assert_eq!(alpha_canon(&c), c.clone());
        prop_assert!(alpha_eq(&p, &c));
        prop_assert_eq!(free_names(&p), free_names(&c));
    }

    #[test]
    fn relabeling_maps_free_names(p in process(), s in relabeling()) {
        let expected: std::collections::BTreeSet<Name> = free_names(&p).iter().map(|n| s.apply_name(n)).collect();
        prop_assert_eq!(free_names(&apply_relabeling(&p, &s)), expected);
    }

    #[test]
    fn axiom_chains_preserve_congruence(p in process(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let defs = Defs::new();
        let mut q = p.clone();
        for pick in picks {
            let rs = rewrites(&q, &defs, false, ContextMode::All);
            if rs.is_empty() {
                break;
            }
            q = pick.get(&rs).result.clone();
        }
        prop_assert!(equiv(&p, &q, &defs, 2).unwrap(), "{} vs {}", p, q);
        prop_assert_eq!(canonicalize(&p, &defs, 2).unwrap().process, canonicalize(&q, &defs, 2).unwrap().process);
    }

    #[test]
    fn derivations_are_valid_and_labels_are_free(p in process()) {
        let defs = Defs::new();
        let fv = free_names(&p);
        for t in sys_transitions(&p, &defs, 0).unwrap() {
            prop_assert!(check_derivation(&t, &defs));
            if let Some(a) = t.label.action() {
                prop_assert!(fv.contains(&a.name));
            }
        }
    }

    #[test]
    fn rccs_steps_can_be_undone(p in process(), seed in any::<u64>()) {
        for variant in [Variant::Congruence, Variant::Rule] {
            let opts = LoopOptions { depth: 6, trials: 4, seed, variant, unfold: 0 };
            let r = loop_check(&p, &Defs::new(), &opts).unwrap();
            prop_assert!(r.is_clean(), "{:?}", r.failures.first());
        }
    }

    #[test]
    fn ccsk_steps_can_be_undone(p in process(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..5)) {
        let defs = Defs::new();
        let mut k = KProcess::from(&p);
        for pick in picks {
            let steps = k_fwd(&k, &defs, 0).unwrap();
            if steps.is_empty() {
                break;
            }
            let t = pick.get(&steps);
            prop_assert_eq!(t.target.to_string().parse::<KProcess>().unwrap(), t.target.clone());
            let back = k_bwd(&t.target);
            prop_assert!(back.iter().any(|b| b.key == t.key && b.label == t.label && k_alpha_eq(&b.target, &k)));
            k = t.target.clone();
        }
    }

    #[test]
    fn keyed_rewrites_preserve_the_canonical_form(p in process(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..4), steps in 0usize..4) {
        let defs = Defs::new();
        let mut k = KProcess::from(&p);
        for _ in 0..steps {
            match k_fwd(&k, &defs, 0).unwrap().into_iter().next() {
                Some(t) => k = t.target,
                None => break,
            }
        }
        let canon = k_canon(&k, Fragment::AcUnitAlpha);
        let mut q = k.clone();
        for pick in picks {
            let rs = k_rewrites(&q, Fragment::AcUnitAlpha);
            if rs.is_empty() {
                break;
            }
            q = pick.get(&rs).after.clone();
        }
        prop_assert_eq!(k_canon(&q, Fragment::AcUnitAlpha), canon);
    }
}
