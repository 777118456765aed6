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

//! Deciding structural congruence by canonical forms, then recovering an explicit chain of axiom
//! applications and replaying it.
//!
//! ```text
//! cargo run --example congruence_witness -- ["left"] ["right"]
//! ```

use ccs_workbench::congruence::{canonicalize, equiv, replay, trace, BruteOptions, ContextMode};
use ccs_workbench::term::{parse, Defs};

fn main() -> ccs_workbench::Result<()> {
    let mut args = std::env::args().skip(1);
    let left = args.next().unwrap_or_else(|| "(a.0 | b.0)\\c | 0".to_string());
    let right = args.next().unwrap_or_else(|| "(b.0 | a.0)\\d".to_string());
    let defs = Defs::new();
    let p = parse(&left, &defs)?;
    let q = parse(&right, &defs)?;

    let cp = canonicalize(&p, &defs, 2)?;
    let cq = canonicalize(&q, &defs, 2)?;
    println!("canonical {p}  =>  {}", cp.process);
    println!("canonical {q}  =>  {}", cq.process);
    let verdict = equiv(&p, &q, &defs, 2)?;
    println!("congruent: {verdict}");
    if !verdict {
        return Ok(());
    }

    let opts = BruteOptions::new(10_000);
    match trace(&p, &q, &defs, &opts)? {
        Some(steps) => {
            for s in &steps {
                println!("  {:<14} at {:?}: {}", s.axiom.tag(), s.path, s.after);
            }
            println!("replays: {}", replay(&p, &q, &steps, &defs, false, ContextMode::All));
        }
        None => println!("no chain found within the budget"),
    }
    Ok(())
}
