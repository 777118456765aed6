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

//! Cross-checks the canonical-form decision procedure against the brute-force closure on every
//! pair of small terms with restriction.
//!
//! ```text
//! cargo run --release --example congruence_oracle -- [max-size] [step-budget]
//! ```

use std::time::Instant;

use ccs_workbench::lab::{oracle_agreement, AgreementConfig, Features};
use ccs_workbench::term::{Defs, Name};

fn main() -> ccs_workbench::Result<()> {
    let mut args = std::env::args().skip(1);
    let max_size = args.next().and_then(|a| a.parse().ok()).unwrap_or(4);
    let step_budget = args.next().and_then(|a| a.parse().ok()).unwrap_or(10_000);
    let config = AgreementConfig {
        max_size,
        names: vec![Name::from_static("a"), Name::from_static("b")],
        features: Features::restrict(),
        step_budget,
    };
    let start = Instant::now();
    let report = oracle_agreement(&config, &Defs::new())?;
    println!(
        "terms {}  closures {} ({} exhausted)  pairs decided {}  pairs exhausted {}  disagreements {}  [{:.1}s]",
        report.terms,
        report.closures,
        report.exhausted_closures,
        report.pairs_decided,
        report.pairs_exhausted,
        report.disagreements.len(),
        start.elapsed().as_secs_f64()
    );
    for d in report.disagreements.iter().take(10) {
        println!("  {} vs {}: canonical {} brute {:?}", d.p, d.q, d.equiv, d.brute);
    }
    Ok(())
}
