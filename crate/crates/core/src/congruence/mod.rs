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

//! Structural congruence: the axioms, a bounded brute-force closure, a canonical form that
//! decides it, and the transition system that works modulo it.

mod axioms;
mod brute;
mod canon;
mod spec;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use axioms::{rewrites, CongAxiom, Rewrite};
pub use brute::{
    brute_equiv, brute_equiv_with, closure, replay, trace, witness_set, BruteOptions, BruteVerdict, Closure, TraceStep,
    Witness,
};
pub use canon::{canonicalize, canonicalize_with, equiv, equiv_with, CanonicalForm};
pub use spec::{spec_transitions, spec_transitions_with, SpecOptions};

/// Where the congruence may be applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ContextMode {
    /// Every subterm position.
    #[default]
    All,
    /// Every position except under a prefix, whose continuation is only taken up to alpha.
    Top,
}

impl fmt::Display for ContextMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContextMode::All => "all",
            ContextMode::Top => "top",
        })
    }
}

impl FromStr for ContextMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<ContextMode> {
        match s {
            "all" => Ok(ContextMode::All),
            "top" => Ok(ContextMode::Top),
            _ => Err(Error::Invalid(format!("unknown congruence context `{s}`"))),
        }
    }
}

/// Bounds for the canonical-form decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceOptions {
    /// Per-branch limit on constant unfolding.
    pub unfold: usize,
    pub context: ContextMode,
}

impl Default for CongruenceOptions {
    fn default() -> Self {
        CongruenceOptions {
            unfold: 2,
            context: ContextMode::All,
        }
    }
}
