//! Bounded checkers for robust satisfaction, robust preservation of property
//! classes, and the property-free criteria RSP, RTP, RHP and strong RHP.
//!
//! Every check enumerates target contexts up to `Bounds::ctx_size` and, per
//! target trace set, searches for source witnesses: the back-translation
//! first, then every enumerated source context. Comparisons that involve a
//! fuel-exhausted run are inconclusive; a check whose inconclusive share
//! reaches [`INCONCLUSIVE_LIMIT`] reports `Inconclusive` unless it also found
//! a conclusive counterexample.

mod engine;
mod lattice;
mod pair;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::trace::{Hyperproperty, Universe, DEFAULT_SUBSET_GUARD};
use crate::{Bounds, Error};

pub use engine::{
    check_class_preservation, check_preservation, check_rhp, check_rsp, check_rtp, check_strong_rhp,
    replay, robustly_satisfies, run_experiment, Experiment, ExperimentResults, ProgramResults,
};
pub use lattice::{lattice_check, EdgeViolation, InstanceVerdicts, LatticeReport, SuiteVerdict};
pub use pair::{LanguagePair, MockPair, WbProgram, Workbench};

/// Share of inconclusive comparisons at which a check stops claiming a pass.
pub const INCONCLUSIVE_LIMIT: f64 = 0.10;

/// At most this many witnesses and counterexamples are listed per verdict;
/// the stats carry the totals.
pub const MAX_LISTED: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    Rsp,
    Rtp,
    Rhp,
    StrongRhp,
    /// Robust preservation of one hyperproperty.
    Preservation,
    /// Robust preservation of a suite of hyperproperties.
    Class,
}

impl Criterion {
    pub const ALL: [Criterion; 6] = [
        Criterion::Rsp,
        Criterion::Rtp,
        Criterion::Rhp,
        Criterion::StrongRhp,
        Criterion::Preservation,
        Criterion::Class,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::Rsp => "rsp",
            Criterion::Rtp => "rtp",
            Criterion::Rhp => "rhp",
            Criterion::StrongRhp => "strong-rhp",
            Criterion::Preservation => "preservation",
            Criterion::Class => "class",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown criterion `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Source,
    Target,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    HoldsWithinBounds,
    Counterexample,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::HoldsWithinBounds => "holds-within-bounds",
            Status::Counterexample => "counterexample",
            Status::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessSource {
    BackTranslation,
    Enumeration,
}

/// A source context found by enumeration because the back-translation did
/// not match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub program: String,
    pub target_context: String,
    pub source_context: String,
    /// The trace or prefix witnessed; absent for whole-set matches.
    pub trace: Option<String>,
    pub via: WitnessSource,
}

/// A replayable violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub criterion: Criterion,
    pub program: String,
    pub side: Side,
    /// The context, printed in the term syntax of `side`.
    pub context: String,
    pub property: Option<String>,
    /// The offending trace or prefix, when one trace suffices.
    pub trace: Option<String>,
    pub target_traces: Vec<String>,
    /// Traces of the back-translated context, for set comparisons.
    pub source_traces: Vec<String>,
    pub explanation: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub contexts: usize,
    pub traces: usize,
    pub comparisons: usize,
    pub inconclusive: usize,
    pub failures: usize,
    pub vacuous: bool,
    pub backtranslation_witnesses: usize,
    pub enumeration_witnesses: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub counterexamples: Vec<Counterexample>,
    pub stats: Stats,
}

impl Verdict {
    pub(crate) fn from_parts(witnesses: Vec<Witness>, counterexamples: Vec<Counterexample>, stats: Stats) -> Self {
        let status = if stats.failures > 0 {
            Status::Counterexample
        } else if stats.comparisons > 0
            && stats.inconclusive as f64 >= INCONCLUSIVE_LIMIT * stats.comparisons as f64
        {
            Status::Inconclusive
        } else {
            Status::HoldsWithinBounds
        };
        Verdict {
            status,
            witnesses,
            counterexamples,
            stats,
        }
    }

    /// A pass that holds because the premise failed.
    pub(crate) fn vacuous(contexts: usize) -> Self {
        Verdict {
            status: Status::HoldsWithinBounds,
            witnesses: Vec::new(),
            counterexamples: Vec::new(),
            stats: Stats {
                contexts,
                vacuous: true,
                ..Stats::default()
            },
        }
    }

    /// The conjunction of several verdicts, in order.
    pub fn conjunction(parts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut witnesses = Vec::new();
        let mut counterexamples = Vec::new();
        let mut stats = Stats::default();
        let mut any = false;
        let mut all_vacuous = true;
        for v in parts {
            any = true;
            all_vacuous &= v.stats.vacuous;
            witnesses.extend(v.witnesses);
            counterexamples.extend(v.counterexamples);
            stats.contexts = stats.contexts.max(v.stats.contexts);
            stats.traces += v.stats.traces;
            stats.comparisons += v.stats.comparisons;
            stats.inconclusive += v.stats.inconclusive;
            stats.failures += v.stats.failures;
            stats.backtranslation_witnesses += v.stats.backtranslation_witnesses;
            stats.enumeration_witnesses += v.stats.enumeration_witnesses;
        }
        witnesses.truncate(MAX_LISTED);
        counterexamples.truncate(MAX_LISTED);
        stats.vacuous = any && all_vacuous;
        Verdict::from_parts(witnesses, counterexamples, stats)
    }
}

/// A verdict with the configuration that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub criterion: Criterion,
    pub compiler: Option<String>,
    pub programs: Vec<String>,
    pub properties: Vec<String>,
    pub bounds: Bounds,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Classes of hyperproperties, from safety up to all of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyClass {
    Safety,
    TraceProps,
    KHypersafety(usize),
    SubsetClosed,
    AllHyper,
}

impl PropertyClass {
    pub fn name(self) -> String {
        match self {
            PropertyClass::Safety => "safety".into(),
            PropertyClass::TraceProps => "trace-properties".into(),
            PropertyClass::KHypersafety(k) => format!("{k}-hypersafety"),
            PropertyClass::SubsetClosed => "subset-closed".into(),
            PropertyClass::AllHyper => "all".into(),
        }
    }

    /// Whether `h` belongs to the class, decided by the bounded classifiers.
    /// Trace-level tests run over observations of at most two events up to
    /// `val_cap`; set-level tests over `h`'s own universe, or the
    /// observations of at most one event over the value 0.
    pub fn admits(self, h: &Hyperproperty, val_cap: u32) -> Result<bool, Error> {
        use crate::trace::{is_k_hypersafety_bounded, is_safety_bounded, is_subset_closed_bounded};
        let small = || match h.universe() {
            Some(u) => Universe::new(u.iter().cloned()),
            None => Universe::all(1, 0),
        };
        Ok(match self {
            PropertyClass::Safety => match h.lifted_from() {
                Some(p) => is_safety_bounded(p, &Universe::all(2, val_cap)),
                None => false,
            },
            PropertyClass::TraceProps => h.lifted_from().is_some(),
            PropertyClass::KHypersafety(k) => is_k_hypersafety_bounded(h, k, &small(), DEFAULT_SUBSET_GUARD)?,
            PropertyClass::SubsetClosed => is_subset_closed_bounded(h, &small(), DEFAULT_SUBSET_GUARD)?,
            PropertyClass::AllHyper => true,
        })
    }
}
