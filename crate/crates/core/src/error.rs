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

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undefined constant `{0}`")]
    UndefinedConstant(String),
    #[error("invalid name `{0}`: names match [a-z][a-zA-Z0-9_]*")]
    InvalidName(String),
    #[error("invalid constant identifier `{0}`: constants match [A-Z][a-zA-Z0-9_]*")]
    InvalidConstant(String),
    #[error("relabeling maps `{0}` twice")]
    DuplicateRelabel(String),
    #[error("constant `{0}` is defined twice")]
    DuplicateDefinition(String),
    #[error("keyed prefixes are not allowed in a CCS term")]
    UnexpectedKey,
    #[error("ill-formed keyed term: {0}")]
    InvalidKeys(String),
    #[error("transition system is truncated")]
    Truncated,
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
