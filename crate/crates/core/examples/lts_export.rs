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

//! Exploring a term's state space, exporting it as JSON and DOT, and comparing the rule-based
//! and congruence-based graphs by bisimulation.
//!
//! ```text
//! cargo run --example lts_export -- ["term"] [max-states]
//! ```

use ccs_workbench::ccs::{explore, Semantics};
use ccs_workbench::congruence::ContextMode;
use ccs_workbench::lab::bisim;
use ccs_workbench::term::{parse, Defs};

fn main() -> ccs_workbench::Result<()> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "B | 'a.'a.0".to_string());
    let max_states = args.next().and_then(|a| a.parse().ok()).unwrap_or(100);
    let defs = Defs::parse("B = a.b.B")?;
    let p = parse(&text, &defs)?;

    let sys = explore(&p, &defs, Semantics::Sys, 2, max_states)?;
    println!(
        "{} states, {} edges, truncated: {}",
        sys.state_count(),
        sys.edge_count(),
        sys.truncated
    );
    println!("{}", sys.to_json());
    print!("{}", sys.to_dot());

    let spec = Semantics::Spec {
        keep_rel: true,
        context: ContextMode::All,
    };
    let modulo = explore(&p, &defs, spec, 2, max_states)?;
    println!("modulo congruence: {} states", modulo.state_count());
    if sys.truncated || modulo.truncated {
        println!("not compared: exploration truncated");
    } else {
        println!(
            "bisimulation: {}",
            serde_json::to_string(&bisim(&sys, &modulo)?).expect("serializable")
        );
    }
    Ok(())
}
