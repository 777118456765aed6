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

//! Names, labels, process terms, their concrete syntax and binding structure.

mod defs;
mod name;
mod names;
pub(crate) mod parse;
mod process;

use std::str::FromStr;

pub use defs::Defs;
pub use name::{Action, ConstId, Label, Name};
pub use names::{all_names, alpha_canon, alpha_eq, apply_relabeling, free_names, fresh_name, support};
pub(crate) use names::{alpha_with, lookup, rigid_binders, substitute, AlphaNamer};
pub use process::{Process, Relabeling};

use crate::error::{Error, Result};

/// Parses a term and checks that every constant it mentions is defined in `defs`.
pub fn parse(text: &str, defs: &Defs) -> Result<Process> {
    let p = parse::parse_syn(text)?.into_process()?;
    defs.check_term(&p)?;
    Ok(p)
}

impl FromStr for Process {
    type Err = Error;

    fn from_str(text: &str) -> Result<Process> {
        parse::parse_syn(text)?.into_process()
    }
}

macro_rules! serialize_as_text {
    ($($t:ty),*) => {$(
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
    )*};
}

serialize_as_text!(Name, ConstId, Action, Label, Process, Relabeling);
