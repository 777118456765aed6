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

//! Compares the congruence and rule variants of reversible CCS by strong bisimulation of their
//! forward-and-backward transition systems.
//!
//! ```text
//! cargo run --release --example rccs_variants -- [max-size | term]
//! ```

use std::time::Instant;

use ccs_workbench::lab::{enumerate_terms, Features};
use ccs_workbench::rccs::{check_variants, compare_variants, rccs_lts, Variant};
use ccs_workbench::term::{Defs, Name, Process};

fn main() -> ccs_workbench::Result<()> {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "a.(b.0 | 'b.0) | 'a.0".into());
    let defs = Defs::new();
    if let Ok(max_size) = arg.parse::<usize>() {
        let names = [Name::from_static("a"), Name::from_static("b")];
        let roots = enumerate_terms(max_size, &names, &Features::restrict());
        let start = Instant::now();
        let summary = check_variants(&roots, &defs, 100_000, 2)?;
        println!(
            "{} roots: {} bisimilar, {} truncated, {} findings ({:.1?})",
            summary.roots,
            summary.bisimilar,
            summary.truncated,
            summary.findings.len(),
            start.elapsed()
        );
        for f in &summary.findings {
            println!("{}", serde_json::to_string(f).expect("serializable"));
        }
        return Ok(());
    }
    let p: Process = ccs_workbench::term::parse(&arg, &defs)?;
    for variant in [Variant::Congruence, Variant::Rule] {
        let lts = rccs_lts(&p, &defs, variant, 2, 10_000)?;
        println!("{variant}: {} states, {} edges", lts.state_count(), lts.edge_count());
    }
    let verdict = compare_variants(&p, &defs, 10_000, 2)?;
    println!("{}", serde_json::to_string(&verdict).expect("serializable"));
    Ok(())
}
