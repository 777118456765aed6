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

//! Term enumeration, strong bisimulation, and the property labs built on them.

mod bisim;
mod enumerate;
mod lemma1;
mod oracle;

pub use bisim::{bisim, BisimResult};
pub use enumerate::{enumerate_terms, relabelings, terms_by_size, Features};
pub use lemma1::{
    check_lemma1, check_lemma1_on, check_sys_spec_bisim, BisimFinding, BisimSummary, Candidate, ConverseViolation,
    Lemma1Config, Lemma1Report, Lemma1Summary, Violation,
};
pub use oracle::{oracle_agreement, oracle_agreement_on, AgreementConfig, AgreementReport, Disagreement};
