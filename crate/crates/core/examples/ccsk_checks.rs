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

//! Keyed reversible CCS: the loop lemma with reachability of the standard form, and stability
//! of the transition relation under the commutativity, associativity, unit and alpha laws.
//!
//! ```text
//! cargo run --release --example ccsk_checks -- [max-size] [trials] [witness-depth]
//! ```

use std::time::Instant;

use ccs_workbench::ccsk::{k_loop_check_roots, k_stability_check, Fragment, KLoopOptions, KStabilityConfig};
use ccs_workbench::lab::{enumerate_terms, Features};
use ccs_workbench::term::{Defs, Name};

fn main() -> ccs_workbench::Result<()> {
    let mut args = std::env::args().skip(1);
    let max_size = args.next().and_then(|a| a.parse().ok()).unwrap_or(4);
    let trials = args.next().and_then(|a| a.parse().ok()).unwrap_or(1000);
    let witness_depth = args.next().and_then(|a| a.parse().ok()).unwrap_or(2);
    let defs = Defs::new();
    let names = vec![Name::from_static("a"), Name::from_static("b")];
    let roots = enumerate_terms(max_size, &names, &Features::restrict());

    let start = Instant::now();
    let opts = KLoopOptions {
        trials,
        ..KLoopOptions::default()
    };
    let report = k_loop_check_roots(&roots, &defs, &opts)?;
    println!(
        "loop: {} trials, {} forward steps, longest backward reduction {}, {} failures ({:.1?})",
        report.trials,
        report.forward_steps,
        report.longest_reduction,
        report.failures.len(),
        start.elapsed()
    );

    for fragment in [Fragment::None, Fragment::AcUnitAlpha] {
        let start = Instant::now();
        let config = KStabilityConfig {
            max_size,
            names: names.clone(),
            fragment,
            witness_depth,
            ..KStabilityConfig::default()
        };
        let r = k_stability_check(&config, &defs)?;
        println!(
            "stability under {fragment}: {} states, {} variants, {} checks, {} violations ({:.1?})",
            r.states,
            r.witnesses,
            r.checks,
            r.violations.len(),
            start.elapsed()
        );
        if let Some(v) = r.violations.first() {
            println!("  first violation: {}", serde_json::to_string(v).expect("serializable"));
        }
    }
    Ok(())
}
