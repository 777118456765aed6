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

//! Keyed reversible CCS: forward steps leave keyed prefixes in place, backward steps remove the
//! newest key, and keyed terms are compared up to the rewrite fragments.
//!
//! ```text
//! cargo run --example ccsk_stepping -- ["term"]
//! ```

use ccs_workbench::ccsk::{k_bwd, k_equiv, k_fwd, k_replay, k_witnesses, Fragment, KProcess};
use ccs_workbench::term::Defs;

fn main() -> ccs_workbench::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "a.b.0 | 'a.0 + c.0".to_string());
    let defs = Defs::new();
    let p = KProcess::parse_with(&text, &defs)?;

    let mut state = p.clone();
    println!("forward:");
    while let Some(t) = k_fwd(&state, &defs, 2)?.into_iter().last() {
        println!(
            "  --{}[{}]--> {}   residual {}",
            t.label,
            t.key,
            t.target,
            t.target.residual()
        );
        state = t.target;
    }
    println!("backward:");
    while let Some(t) = k_bwd(&state).into_iter().max_by_key(|t| t.key) {
        println!("  <--{}[{}]-- {}", t.label, t.key, t.target);
        state = t.target;
    }
    println!("standard again: {}, equal to the start: {}", state.is_std(), state == p);

    let left: KProcess = "a[1].0 | (b.0 | 0)".parse()?;
    let right: KProcess = "b.0 | a[1].0".parse()?;
    for fragment in [Fragment::None, Fragment::AcUnitAlpha] {
        println!(
            "{left}  ~  {right}  under {}: {}",
            fragment.as_str(),
            k_equiv(&left, &right, fragment)
        );
    }
    let witness = k_witnesses(&left, Fragment::AcUnitAlpha, 3)
        .into_iter()
        .find(|w| w.process == right)
        .expect("reachable in three rewrites");
    for s in &witness.trace {
        println!("  {:<14} at {:?}: {}", s.axiom.tag(), s.path, s.after);
    }
    println!(
        "replays: {}",
        k_replay(&left, &right, &witness.trace, Fragment::AcUnitAlpha)
    );
    Ok(())
}
