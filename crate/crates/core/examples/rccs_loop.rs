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

//! Random forward walks in reversible CCS, undoing every step, over all small roots.
//!
//! ```text
//! cargo run --release --example rccs_loop -- [max-size] [trials] [depth] [seed]
//! ```

use std::time::Instant;

use ccs_workbench::lab::{enumerate_terms, Features};
use ccs_workbench::rccs::{loop_check_roots, LoopOptions, Variant};
use ccs_workbench::term::{Defs, Name};

fn main() -> ccs_workbench::Result<()> {
    let mut args = std::env::args().skip(1);
    let max_size = args.next().and_then(|a| a.parse().ok()).unwrap_or(4);
    let trials = args.next().and_then(|a| a.parse().ok()).unwrap_or(1000);
    let depth = args.next().and_then(|a| a.parse().ok()).unwrap_or(8);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(0);
    let names = [Name::from_static("a"), Name::from_static("b")];
    let roots = enumerate_terms(max_size, &names, &Features::restrict());
    println!("{} roots of size <= {max_size}", roots.len());
    for variant in [Variant::Congruence, Variant::Rule, Variant::LazyCongruence] {
        let start = Instant::now();
        let opts = LoopOptions {
            depth,
            trials,
            seed,
            variant,
            unfold: 2,
        };
        let report = loop_check_roots(&roots, &Defs::new(), &opts)?;
        println!(
            "{variant:>15}: {} trials, {} forward steps, {} failures ({:.1?})",
            report.trials,
            report.forward_steps,
            report.failures.len(),
            start.elapsed()
        );
        if let Some(f) = report.failures.first() {
            println!("  first failure: {}", serde_json::to_string(f).expect("serializable"));
        }
    }
    Ok(())
}
