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

//! Parsing terms and definitions, free names, relabeling and alpha-equivalence.
//!
//! ```text
//! cargo run --example terms -- ["term"]
//! ```

use ccs_workbench::term::{
    alpha_canon, alpha_eq, apply_relabeling, free_names, parse, Defs, Name, Process, Relabeling,
};

fn main() -> ccs_workbench::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "(a.b.0 | 'a.0)\\a + c.A".to_string());
    let defs = Defs::parse("# a one-place buffer\nA = a.'b.A\n")?;
    let p = parse(&text, &defs)?;
    println!("term        {p}");
    println!("size        {}", p.size());
    let names: Vec<String> = free_names(&p).iter().map(Name::to_string).collect();
    println!("free names  {{{}}}", names.join(", "));
    println!("alpha canon {}", alpha_canon(&p));

    let sigma = Relabeling::new(vec![(Name::new("b")?, Name::new("a")?)])?;
    let q: Process = "(b.0 | a.0)\\a".parse()?;
    println!("{q} [b<-a] = {}", apply_relabeling(&q, &sigma));

    let r: Process = "(a.x.0)\\x".parse()?;
    let s: Process = "(a.y.0)\\y".parse()?;
    println!("{r} and {s} alpha-equivalent: {}", alpha_eq(&r, &s));

    for bad in ["a.", "a.0 +", "(A"] {
        if let Err(e) = bad.parse::<Process>() {
            println!("{bad:8} -> {e}");
        }
    }
    Ok(())
}
