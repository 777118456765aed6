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

//! Checks that the congruence-based transition system conservatively extends the rule-based one
//! on small terms, and shows the relabeling counterexample.
//!
//! ```text
//! cargo run --release --example conservativity -- [max-size] [witness-depth] [relabel|relabel-kept]
//! ```

use std::time::Instant;

use ccs_workbench::lab::{check_lemma1, check_lemma1_on, Features, Lemma1Config};
use ccs_workbench::term::Defs;

fn main() -> ccs_workbench::Result<()> {
    let mut args = std::env::args().skip(1);
    let max_size = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    let witness_depth = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    let mode = args.next().unwrap_or_default();
    let config = Lemma1Config {
        max_size,
        witness_depth,
        features: if mode.starts_with("relabel") {
            Features::relabel()
        } else {
            Features::none()
        },
        keep_rel: mode == "relabel-kept",
        converse: true,
        ..Lemma1Config::default()
    };
    let start = Instant::now();
    let report = check_lemma1(&config, &Defs::new())?;
    let s = &report.summary;
    println!(
        "roots {}  witnesses {}  checks {}  violations {}  converse violations {}  [{:.1}s]",
        s.roots,
        s.witnesses,
        s.checks,
        s.violations,
        s.converse_violations,
        start.elapsed().as_secs_f64()
    );

    let relabeled = ["(a.0)[a<-b]".parse()?];
    let cfg = Lemma1Config {
        witness_depth: 1,
        ..Lemma1Config::default()
    };
    let report = check_lemma1_on(&relabeled, &cfg, &Defs::new())?;
    let v = report
        .violations
        .iter()
        .find(|v| v.outside_steps == 0)
        .expect("the root itself is a witness");
    println!(
        "without the relabeling rule: {} --{}--> {} has no match from {} (candidates: {})",
        v.p,
        v.alpha,
        v.p_prime,
        v.q,
        v.spec_candidates.len()
    );
    Ok(())
}
