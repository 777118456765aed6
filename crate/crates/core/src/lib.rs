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

//! A workbench for CCS and two of its reversible extensions.
//!
//! * [`term`]: syntax, parsing, binding structure.
//! * [`ccs`]: the rule-based transition system and state-space exploration.
//! * [`congruence`]: structural congruence as axioms, a brute-force oracle and a canonical form,
//!   plus the transition system that works modulo congruence.
//! * [`lab`]: term enumeration, bisimulation, and the conservativity check.
//! * [`rccs`]: reversible CCS with per-thread memories, in three variants.
//! * [`ccsk`]: reversible CCS with communication keys.
//! * [`cli`]: the `ccswb` command line.

pub mod error;
pub mod term;

pub use error::{Error, Result};
pub mod ccs;
pub mod ccsk;
pub mod cli;
pub mod congruence;
pub mod lab;
pub mod rccs;
