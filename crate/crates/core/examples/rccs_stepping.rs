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

//! Running a reversible CCS process forward to the end and rewinding it, printing memories.
//!
//! ```text
//! cargo run --example rccs_stepping -- ["term"] [congruence|rule|lazy-congruence]
//! ```

use ccs_workbench::rccs::{bwd_transitions, distribute, fwd_transitions, normalize, state_key, RProcess, Variant};
use ccs_workbench::term::{parse, Defs};

fn main() -> ccs_workbench::Result<()> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "(a.b.0 | 'a.c.0)\\a".to_string());
    let variant: Variant = args.next().map_or(Ok(Variant::Congruence), |v| v.parse())?;
    let defs = Defs::new();
    let p = parse(&text, &defs)?;

    let par = RProcess::lift(&"a.0 | (b.0 | c.0)".parse()?);
    println!("{par}  distributes to  {}", distribute(&par));
    let lifted = RProcess::lift(&p);
    println!("lifted       {lifted}");
    let start = match variant {
        Variant::Rule => lifted,
        _ => normalize(&lifted, &defs, 2)?,
    };

    let mut state = start.clone();
    println!("forward ({variant}):");
    while let Some(t) = fwd_transitions(&state, &defs, variant, 2)?.into_iter().next() {
        println!("  --{} #{}--> {}", t.label, t.id, t.target);
        state = t.target;
    }
    println!("backward:");
    loop {
        let back = bwd_transitions(&state, &defs, variant, 2)?;
        let Some(t) = back.into_iter().max_by_key(|t| t.id) else {
            break;
        };
        println!("  <--{} #{}-- {}", t.label, t.id, t.target);
        state = t.target;
    }
    println!("back at the start: {}", state_key(&state) == state_key(&start));
    Ok(())
}
