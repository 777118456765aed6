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

//! Rule-based transitions with their derivation trees, next to the transitions derived modulo
//! structural congruence.
//!
//! ```text
//! cargo run --example transitions -- ["term"]
//! ```

use ccs_workbench::ccs::{check_derivation, sys_transitions, Transition};
use ccs_workbench::congruence::spec_transitions;
use ccs_workbench::term::{parse, Defs};

fn print_tree(t: &Transition, depth: usize) {
    println!("{:indent$}{t}", "", indent = 2 * depth);
    for p in &t.premises {
        print_tree(p, depth + 1);
    }
}

fn main() -> ccs_workbench::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "(a.0 | 'a.b.0)\\a".to_string());
    let defs = Defs::new();
    let p = parse(&text, &defs)?;

    println!("rule-based transitions of {p}:");
    for t in sys_transitions(&p, &defs, 2)? {
        print_tree(&t, 1);
        assert!(check_derivation(&t, &defs));
    }

    for keep_rel in [false, true] {
        println!("modulo congruence (relabeling rule kept: {keep_rel}):");
        for t in spec_transitions(&p, &defs, 2, keep_rel)? {
            println!("  {t}");
        }
    }
    Ok(())
}
