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

//! The `ccswb` command line: argument definitions and dispatch.  [`run`] takes its streams as
//! parameters so it can be driven from tests.

mod check;
mod session;

pub use check::{run_suite, SuiteReport};
pub use session::{interactive, list, replay, Machine, Move, State, Style};

use std::fmt;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::ccs::{explore, Lts, Semantics};
use crate::ccsk::{k_alpha_eq, k_equiv, k_lts, k_replay, k_witnesses, Fragment, KProcess};
use crate::congruence::{equiv_with, replay as replay_trace, trace, BruteOptions, CongruenceOptions, ContextMode};
use crate::error::Error;
use crate::rccs::{rccs_lts, Variant};
use crate::term::{free_names, parse, Defs, Name, Process};

/// Exit status when a check finds violations or an expectation is not met.
pub const EXIT_FINDINGS: i32 = 1;
/// Exit status for unusable input.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Term(#[from] Error),
    #[error("{0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Parser)]
#[command(name = "ccswb", version, about = "Step, explore and check CCS, RCCS and CCSK terms")]
pub struct Cli {
    /// Definitions file: one `CONST = proc` per line, `#` starts a comment.
    #[arg(long, global = true, value_name = "FILE")]
    pub defs: Option<PathBuf>,
    /// Per-branch limit on constant unfolding.
    #[arg(long, global = true, default_value_t = 2)]
    pub unfold: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a term and print its structure.
    Parse(ParseArgs),
    /// List the enabled transitions of a term, or step through them interactively.
    Step(StepArgs),
    /// Export the reachable transition system.
    Lts(LtsArgs),
    /// Decide structural congruence of two terms.
    Equiv(EquivArgs),
    /// Run an experiment suite and print a JSON-lines report.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Calculus {
    CcsSys,
    CcsSpec,
    Rccs,
    Ccsk,
}

impl Calculus {
    pub fn as_str(self) -> &'static str {
        match self {
            Calculus::CcsSys => "ccs-sys",
            Calculus::CcsSpec => "ccs-spec",
            Calculus::Rccs => "rccs",
            Calculus::Ccsk => "ccsk",
        }
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Calculus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Calculus, Error> {
        <Calculus as ValueEnum>::from_str(s, false).map_err(|_| Error::Invalid(format!("unknown calculus `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Every rule-based step is matched by a congruence-based step up to congruence.
    Lemma1,
    /// Random RCCS walks: every forward step is undone by a backward step.
    LoopRccs,
    /// Random CCSK walks: every step is undone, and backward steps lead to the root.
    LoopCcsk,
    /// RCCS congruence and rule variants are bisimilar.
    Variants,
    /// CCSK transitions are stable under structural rewrites of keyed terms.
    CcskStability,
    /// Rule-based and congruence-based transition systems are bisimilar.
    Bisim,
    /// Canonical-form equivalence agrees with exhaustive rewriting.
    Oracle,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::LoopRccs => "loop-rccs",
            Suite::LoopCcsk => "loop-ccsk",
            Suite::Variants => "variants",
            Suite::CcskStability => "ccsk-stability",
            Suite::Bisim => "bisim",
            Suite::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LtsFormat {
    Json,
    Dot,
}

/// Options shared by the stepping and exploring commands.
#[derive(Debug, Clone, Args)]
pub struct SemanticsArgs {
    #[arg(long, value_enum, default_value_t = Calculus::CcsSys)]
    pub calculus: Calculus,
    /// Keep the relabeling rule in the congruence-based system.
    #[arg(long, overrides_with = "no_keep_rel")]
    pub keep_rel: bool,
    #[arg(long, overrides_with = "keep_rel")]
    pub no_keep_rel: bool,
    /// Where the congruence applies: `all` positions or `top` (not under prefixes).
    #[arg(long, default_value = "all")]
    pub congruence_context: ContextMode,
    /// RCCS variant: congruence, rule, or lazy-congruence.
    #[arg(long, default_value = "congruence")]
    pub variant: Variant,
    /// Shorthand for `--variant lazy-congruence`.
    #[arg(long)]
    pub lazy_congruence: bool,
}

impl SemanticsArgs {
    pub fn variant(&self) -> Variant {
        if self.lazy_congruence {
            Variant::LazyCongruence
        } else {
            self.variant
        }
    }

    fn machine(&self, defs: Defs, unfold: usize) -> Machine {
        Machine {
            calculus: self.calculus,
            defs,
            unfold,
            keep_rel: self.keep_rel,
            context: self.congruence_context,
            variant: self.variant(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ParseArgs {
    pub term: String,
    /// Parse as a keyed CCSK term.
    #[arg(long)]
    pub keyed: bool,
}

#[derive(Debug, Clone, Args)]
pub struct StepArgs {
    /// Start term; omitted with `--replay`.
    #[arg(required_unless_present = "replay")]
    pub term: Option<String>,
    #[command(flatten)]
    pub semantics: SemanticsArgs,
    /// Numbered menu: `N` takes a transition, `u N` undoes, `q` quits.
    #[arg(long)]
    pub interactive: bool,
    /// Record the interactive session to this file.
    #[arg(long, value_name = "FILE", requires = "interactive")]
    pub transcript: Option<PathBuf>,
    /// Re-run a recorded transcript and check that it reproduces the same states.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["interactive", "term"])]
    pub replay: Option<PathBuf>,
    /// One JSON object per transition.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct LtsArgs {
    pub term: String,
    #[command(flatten)]
    pub semantics: SemanticsArgs,
    #[arg(long, value_enum, default_value_t = LtsFormat::Json)]
    pub fmt: LtsFormat,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    pub max_states: usize,
    /// Exit nonzero when the exploration was truncated.
    #[arg(long)]
    pub expect_complete: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EquivArgs {
    pub left: String,
    pub right: String,
    /// CCSK rewrite fragment; implied for keyed terms, default `ac-unit-alpha`.
    #[arg(long)]
    pub fragment: Option<Fragment>,
    /// Print a rewrite trace from the left term to the right one and replay it.
    #[arg(long)]
    pub witness: bool,
    /// Closure states explored when searching for a CCS witness.
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
    /// Rewrite depth searched for a CCSK witness.
    #[arg(long, default_value_t = 3)]
    pub witness_depth: usize,
    #[arg(long, default_value = "all")]
    pub congruence_context: ContextMode,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Largest enumerated root.
    #[arg(long, default_value_t = 4)]
    pub max_size: usize,
    #[arg(long, value_delimiter = ',', default_value = "a,b")]
    pub names: Vec<Name>,
    /// Enumerate restrictions (default on).
    #[arg(long, overrides_with = "no_restrict")]
    pub restrict: bool,
    #[arg(long, overrides_with = "restrict")]
    pub no_restrict: bool,
    /// Enumerate relabelings (default off).
    #[arg(long, overrides_with = "no_relabel")]
    pub relabel: bool,
    #[arg(long, overrides_with = "relabel")]
    pub no_relabel: bool,
    /// Keep the relabeling rule in the congruence-based system.
    #[arg(long, overrides_with = "no_keep_rel")]
    pub keep_rel: bool,
    #[arg(long, overrides_with = "keep_rel")]
    pub no_keep_rel: bool,
    #[arg(long, default_value = "all")]
    pub congruence_context: ContextMode,
    /// Rewrite depth of the congruence witnesses (lemma1: 3, ccsk-stability: 2).
    #[arg(long)]
    pub witness_depth: Option<usize>,
    /// Also check the converse direction (lemma1).
    #[arg(long)]
    pub converse: bool,
    /// Check these terms instead of enumerating roots.
    #[arg(long)]
    pub term: Vec<String>,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 8)]
    pub depth: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "congruence")]
    pub variant: Variant,
    #[arg(long)]
    pub lazy_congruence: bool,
    #[arg(long, default_value = "ac-unit-alpha")]
    pub fragment: Fragment,
    /// States kept per transition system (variants, bisim, ccsk-stability).
    #[arg(long, default_value_t = 1000)]
    pub max_states: usize,
    /// Closure states per term (oracle).
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
    /// Also exit nonzero when a bound truncated the run.
    #[arg(long)]
    pub expect_clean: bool,
}

impl CheckArgs {
    pub fn variant(&self) -> Variant {
        if self.lazy_congruence {
            Variant::LazyCongruence
        } else {
            self.variant
        }
    }
}

/// Executes `cli`, reading interactive input from `input`.  Returns the process exit status.
pub fn run(
    cli: &Cli,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
    style: Style,
) -> Result<i32, CliError> {
    let defs = match &cli.defs {
        Some(path) => Defs::parse(&fs::read_to_string(path)?)?,
        None => Defs::new(),
    };
    match &cli.command {
        Command::Parse(a) => cmd_parse(a, &defs, out),
        Command::Step(a) => cmd_step(a, defs, cli.unfold, input, out, style),
        Command::Lts(a) => cmd_lts(a, defs, cli.unfold, out, err),
        Command::Equiv(a) => cmd_equiv(a, &defs, cli.unfold, out),
        Command::Check(a) => {
            let report = run_suite(a, cli.unfold, &defs)?;
            for line in &report.lines {
                writeln!(out, "{line}")?;
            }
            if !report.complete {
                writeln!(err, "note: a bound truncated the run")?;
            }
            let ok = report.clean && (report.complete || !a.expect_clean);
            Ok(if ok { 0 } else { EXIT_FINDINGS })
        }
    }
}

/// Constructor-style rendering of a term's syntax tree.
pub fn tree(p: &Process) -> String {
    match p {
        Process::Nil => "Nil".to_string(),
        Process::Prefix(a, body) => {
            let kind = if a.co { "coname" } else { "name" };
            format!("Prefix({kind} {}, {})", a.name, tree(body))
        }
        Process::Sum(ps) => format!("Sum[{}]", ps.iter().map(tree).collect::<Vec<_>>().join(", ")),
        Process::Par(l, r) => format!("Par({}, {})", tree(l), tree(r)),
        Process::Restrict(body, a) => format!("Restrict({}, {a})", tree(body)),
        Process::Relabel(body, s) => format!("Relabel({}, {s})", tree(body)),
        Process::Const(c) => format!("Const({c})"),
    }
}

fn is_keyed(text: &str) -> bool {
    matches!(text.parse::<Process>(), Err(Error::UnexpectedKey))
}

fn cmd_parse(a: &ParseArgs, defs: &Defs, out: &mut dyn Write) -> Result<i32, CliError> {
    let line = if a.keyed || is_keyed(&a.term) {
        let k = KProcess::parse_with(&a.term, defs)?;
        json!({
            "term": k.to_string(),
            "keys": k.keys(),
            "std": k.is_std(),
            "erased": k.erase().to_string(),
            "residual": k.residual().to_string(),
        })
    } else {
        let p = parse(&a.term, defs)?;
        json!({
            "term": p.to_string(),
            "tree": tree(&p),
            "size": p.size(),
            "free_names": free_names(&p),
        })
    };
    writeln!(out, "{line}")?;
    Ok(0)
}

fn cmd_step(
    a: &StepArgs,
    defs: Defs,
    unfold: usize,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    style: Style,
) -> Result<i32, CliError> {
    if let Some(path) = &a.replay {
        let ok = replay(&fs::read_to_string(path)?, defs, out)?;
        return Ok(if ok { 0 } else { EXIT_FINDINGS });
    }
    let term = a.term.as_deref().expect("clap requires a term without --replay");
    let machine = a.semantics.machine(defs, unfold);
    if a.interactive {
        match &a.transcript {
            Some(path) => {
                let mut file = io::BufWriter::new(fs::File::create(path)?);
                interactive(&machine, term, input, out, style, Some(&mut file))?;
                file.flush()?;
            }
            None => interactive(&machine, term, input, out, style, None)?,
        }
    } else {
        list(&machine, term, a.json, out)?;
    }
    Ok(0)
}

fn cmd_lts(a: &LtsArgs, defs: Defs, unfold: usize, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let s = &a.semantics;
    let lts: Lts = match s.calculus {
        Calculus::Ccsk => k_lts(&KProcess::parse_with(&a.term, &defs)?, &defs, unfold, a.max_states)?,
        calculus => {
            let p = parse(&a.term, &defs)?;
            match calculus {
                Calculus::CcsSys => explore(&p, &defs, Semantics::Sys, unfold, a.max_states)?,
                Calculus::CcsSpec => {
                    let semantics = Semantics::Spec {
                        keep_rel: s.keep_rel,
                        context: s.congruence_context,
                    };
                    explore(&p, &defs, semantics, unfold, a.max_states)?
                }
                _ => rccs_lts(&p, &defs, s.variant(), unfold, a.max_states)?,
            }
        }
    };
    let text = match a.fmt {
        LtsFormat::Json => format!("{}\n", lts.to_json()),
        LtsFormat::Dot => lts.to_dot(),
    };
    match &a.out {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    if lts.truncated {
        writeln!(err, "note: exploration truncated ({} states)", lts.state_count())?;
        if a.expect_complete {
            return Ok(EXIT_FINDINGS);
        }
    }
    Ok(0)
}

fn cmd_equiv(a: &EquivArgs, defs: &Defs, unfold: usize, out: &mut dyn Write) -> Result<i32, CliError> {
    if a.fragment.is_some() || is_keyed(&a.left) || is_keyed(&a.right) {
        let fragment = a.fragment.unwrap_or(Fragment::AcUnitAlpha);
        let p = KProcess::parse_with(&a.left, defs)?;
        let q = KProcess::parse_with(&a.right, defs)?;
        let verdict = k_equiv(&p, &q, fragment);
        writeln!(out, "{verdict}")?;
        if a.witness && verdict {
            let found = k_witnesses(&p, fragment, a.witness_depth)
                .into_iter()
                .filter(|w| k_alpha_eq(&w.process, &q))
                .min_by_key(|w| w.trace.len());
            match found {
                Some(w) => {
                    for step in &w.trace {
                        writeln!(out, "{}", serde_json::to_string(step).expect("serializable"))?;
                    }
                    writeln!(out, "{}", json!({ "replay": k_replay(&p, &q, &w.trace, fragment) }))?;
                }
                None => writeln!(out, "{}", json!({ "witness": null, "depth": a.witness_depth }))?,
            }
        }
        return Ok(0);
    }
    let p = parse(&a.left, defs)?;
    let q = parse(&a.right, defs)?;
    let opts = CongruenceOptions {
        unfold,
        context: a.congruence_context,
    };
    let verdict = equiv_with(&p, &q, defs, &opts)?;
    writeln!(out, "{verdict}")?;
    if a.witness && verdict {
        let brute = BruteOptions {
            unfold: p.mentions_const() || q.mentions_const(),
            context: a.congruence_context,
            ..BruteOptions::new(a.budget)
        };
        match trace(&p, &q, defs, &brute)? {
            Some(steps) => {
                for step in &steps {
                    writeln!(out, "{}", serde_json::to_string(step).expect("serializable"))?;
                }
                let ok = replay_trace(&p, &q, &steps, defs, brute.unfold, brute.context);
                writeln!(out, "{}", json!({ "replay": ok }))?;
            }
            None => writeln!(out, "{}", json!({ "witness": null, "budget": a.budget }))?,
        }
    }
    Ok(0)
}
