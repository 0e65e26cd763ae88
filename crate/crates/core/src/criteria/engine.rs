//! The checking engine. One pass over the target contexts evaluates every
//! requested criterion for every program, so trace sets are computed once
//! per (context, program) cell.
//!
//! Per cell the outcomes are built so that a failure of a weaker criterion
//! is also a failure of every stronger one: an RSP failure on a prefix of
//! `t` implies an RTP failure on `t`, which implies RHP and strong-RHP
//! failures. Bounded verdicts therefore respect the implication lattice.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use super::pair::common_export;
use super::{
    Counterexample, Criterion, LanguagePair, PropertyClass, Side, Stats, Verdict, Witness, WitnessSource,
    MAX_LISTED,
};
use crate::trace::{prefix_of, satisfies_hyper, Hyperproperty, Obs, TraceSet};
use crate::{Bounds, Error};

/// Contexts handed to one worker at a time.
const CHUNK: usize = 128;

/// Which checks a run performs.
#[derive(Clone, Copy, Debug, Default)]
pub struct Experiment<'a> {
    pub rsp: bool,
    pub rtp: bool,
    pub rhp: bool,
    pub strong_rhp: bool,
    /// Robust preservation of each of these.
    pub properties: &'a [Hyperproperty],
}

impl<'a> Experiment<'a> {
    pub fn criteria() -> Self {
        Experiment {
            rsp: true,
            rtp: true,
            rhp: true,
            strong_rhp: true,
            properties: &[],
        }
    }

    pub fn with_properties(mut self, properties: &'a [Hyperproperty]) -> Self {
        self.properties = properties;
        self
    }

    fn needs_back_translation(&self) -> bool {
        self.rsp || self.rtp || self.rhp || self.strong_rhp
    }
}

/// Verdicts for one program. `strong_rhp` is the singleton-corpus check.
#[derive(Clone, Debug)]
pub struct ProgramResults {
    pub program: String,
    pub rsp: Option<Verdict>,
    pub rtp: Option<Verdict>,
    pub rhp: Option<Verdict>,
    pub strong_rhp: Option<Verdict>,
    pub source_satisfaction: Vec<Verdict>,
    pub target_satisfaction: Vec<Verdict>,
    pub preservation: Vec<Verdict>,
}

#[derive(Clone, Debug)]
pub struct ExperimentResults {
    pub programs: Vec<ProgramResults>,
    /// Strong RHP over the whole corpus (one back-translation per context).
    pub strong_rhp: Option<Verdict>,
}

enum Via {
    Direct,
    BackTranslation,
    Enumeration(usize, Option<Obs>),
}

enum Outcome {
    Pass(Via),
    Inconclusive,
    Fail(Box<Counterexample>),
}

impl Outcome {
    fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

/// Trace sets of every enumerated source context for one program, indexed
/// for witness lookup.
struct SourceTable<C> {
    contexts: Arc<Vec<C>>,
    sets: Vec<TraceSet>,
    any_inconclusive: bool,
    exact: HashMap<Obs, usize>,
    prefix: HashMap<Obs, usize>,
    whole: HashMap<BTreeSet<Obs>, usize>,
}

impl<C: Send + Sync> SourceTable<C> {
    fn build<L: LanguagePair<SrcCtx = C>>(pair: &L, p: &L::Program, b: &Bounds) -> Self {
        let contexts = pair.src_contexts(p, b);
        let sets: Vec<TraceSet> = contexts.par_iter().map(|c| pair.src_traces(c, p, b)).collect();
        let mut exact = HashMap::new();
        let mut prefix = HashMap::new();
        let mut whole = HashMap::new();
        let mut any_inconclusive = false;
        for (i, s) in sets.iter().enumerate() {
            any_inconclusive |= !s.is_conclusive();
            for t in s.iter() {
                if !s.fuel_cut.contains(t) {
                    exact.entry(t.clone()).or_insert(i);
                }
                for m in t.prefixes() {
                    prefix.entry(m).or_insert(i);
                }
            }
            if s.is_conclusive() {
                whole.entry(s.members.clone()).or_insert(i);
            }
        }
        SourceTable {
            contexts,
            sets,
            any_inconclusive,
            exact,
            prefix,
            whole,
        }
    }
}

struct LazyTable<'a, L: LanguagePair> {
    pair: &'a L,
    program: &'a L::Program,
    bounds: Bounds,
    table: OnceLock<SourceTable<L::SrcCtx>>,
}

impl<'a, L: LanguagePair> LazyTable<'a, L> {
    fn new(pair: &'a L, program: &'a L::Program, bounds: Bounds) -> Self {
        LazyTable {
            pair,
            program,
            bounds,
            table: OnceLock::new(),
        }
    }

    fn get(&self) -> &SourceTable<L::SrcCtx> {
        self.table
            .get_or_init(|| SourceTable::build(self.pair, self.program, &self.bounds))
    }
}

/// Counts and the first few listed items of one verdict under
/// construction.
#[derive(Default)]
struct Acc {
    stats: Stats,
    witnesses: Vec<Witness>,
    counterexamples: Vec<Counterexample>,
}

impl Acc {
    fn record(&mut self, o: Outcome, witness: impl FnOnce(usize, Option<Obs>) -> Witness) {
        self.stats.comparisons += 1;
        match o {
            Outcome::Pass(Via::Direct) => {}
            Outcome::Pass(Via::BackTranslation) => self.stats.backtranslation_witnesses += 1,
            Outcome::Pass(Via::Enumeration(i, t)) => {
                self.stats.enumeration_witnesses += 1;
                if self.witnesses.len() < MAX_LISTED {
                    self.witnesses.push(witness(i, t));
                }
            }
            Outcome::Inconclusive => self.stats.inconclusive += 1,
            Outcome::Fail(c) => {
                self.stats.failures += 1;
                if self.counterexamples.len() < MAX_LISTED {
                    self.counterexamples.push(*c);
                }
            }
        }
    }

    fn merge(&mut self, other: Acc) {
        let s = &mut self.stats;
        let o = other.stats;
        s.contexts += o.contexts;
        s.traces += o.traces;
        s.comparisons += o.comparisons;
        s.inconclusive += o.inconclusive;
        s.failures += o.failures;
        s.backtranslation_witnesses += o.backtranslation_witnesses;
        s.enumeration_witnesses += o.enumeration_witnesses;
        self.witnesses.extend(other.witnesses);
        self.witnesses.truncate(MAX_LISTED);
        self.counterexamples.extend(other.counterexamples);
        self.counterexamples.truncate(MAX_LISTED);
    }

    fn finish(self) -> Verdict {
        let mut stats = self.stats;
        stats.vacuous = stats.contexts == 0;
        Verdict::from_parts(self.witnesses, self.counterexamples, stats)
    }
}

#[derive(Default)]
struct ProgramAcc {
    rsp: Acc,
    rtp: Acc,
    rhp: Acc,
    strong: Acc,
    props: Vec<Acc>,
}

impl ProgramAcc {
    fn new(properties: usize) -> Self {
        ProgramAcc {
            props: (0..properties).map(|_| Acc::default()).collect(),
            ..ProgramAcc::default()
        }
    }

    fn merge(&mut self, other: ProgramAcc) {
        self.rsp.merge(other.rsp);
        self.rtp.merge(other.rtp);
        self.rhp.merge(other.rhp);
        self.strong.merge(other.strong);
        for (a, b) in self.props.iter_mut().zip(other.props) {
            a.merge(b);
        }
    }
}

/// Everything computed for one (target context, program) cell.
struct Cell {
    traces: usize,
    rsp: Vec<Outcome>,
    rtp: Vec<Outcome>,
    rhp: Option<Outcome>,
    strong: Option<Outcome>,
    props: Vec<Outcome>,
}

struct CellInput<'a, L: LanguagePair> {
    pair: &'a L,
    program: &'a L::Program,
    context: &'a L::TgtCtx,
    /// The back-translation and its trace set under this program.
    back: Option<&'a TraceSet>,
    table: &'a LazyTable<'a, L>,
    bounds: &'a Bounds,
}

impl<'a, L: LanguagePair> CellInput<'a, L> {
    fn counterexample(&self, criterion: Criterion, tgt: &TraceSet, trace: Option<&Obs>, why: &str) -> Box<Counterexample> {
        Box::new(Counterexample {
            criterion,
            program: self.pair.program_name(self.program),
            side: Side::Target,
            context: self.pair.show_tgt(self.context),
            property: None,
            trace: trace.map(Obs::to_string),
            target_traces: tgt.iter().map(Obs::to_string).collect(),
            source_traces: self
                .back
                .map(|s| s.iter().map(Obs::to_string).collect())
                .unwrap_or_default(),
            explanation: why.to_string(),
        })
    }

    fn back_inconclusive(&self) -> bool {
        self.back.is_some_and(|s| !s.is_conclusive())
    }

    fn rsp(&self, tgt: &TraceSet) -> Vec<Outcome> {
        let mut out = Vec::new();
        let mut prefixes = BTreeSet::new();
        for t in tgt.iter() {
            if tgt.fuel_cut.contains(t) {
                out.push(Outcome::Inconclusive);
            } else {
                prefixes.extend(t.prefixes());
            }
        }
        for m in &prefixes {
            let o = if self.back.is_some_and(|s| s.iter().any(|t| prefix_of(m, t))) {
                Outcome::Pass(Via::BackTranslation)
            } else if let Some(&i) = self.table.get().prefix.get(m) {
                Outcome::Pass(Via::Enumeration(i, Some(m.clone())))
            } else if self.back_inconclusive() || self.table.get().any_inconclusive {
                Outcome::Inconclusive
            } else {
                Outcome::Fail(self.counterexample(
                    Criterion::Rsp,
                    tgt,
                    Some(m),
                    "no source context within bounds emits a trace extending this prefix",
                ))
            };
            out.push(o);
        }
        out
    }

    fn rtp(&self, tgt: &TraceSet) -> Vec<Outcome> {
        tgt.iter()
            .map(|t| {
                if tgt.fuel_cut.contains(t) {
                    Outcome::Inconclusive
                } else if self.back.is_some_and(|s| s.contains(t) && !s.fuel_cut.contains(t)) {
                    Outcome::Pass(Via::BackTranslation)
                } else if let Some(&i) = self.table.get().exact.get(t) {
                    Outcome::Pass(Via::Enumeration(i, Some(t.clone())))
                } else if self.back_inconclusive() || self.table.get().any_inconclusive {
                    Outcome::Inconclusive
                } else {
                    Outcome::Fail(self.counterexample(
                        Criterion::Rtp,
                        tgt,
                        Some(t),
                        "no source context within bounds emits this trace",
                    ))
                }
            })
            .collect()
    }

    fn rhp(&self, tgt: &TraceSet, rtp: &[Outcome]) -> Outcome {
        if let Some(Outcome::Fail(c)) = rtp.iter().find(|o| o.is_fail()) {
            return Outcome::Fail(Box::new(Counterexample {
                criterion: Criterion::Rhp,
                explanation: "a member trace has no source witness, so no source context emits the whole set"
                    .into(),
                ..(**c).clone()
            }));
        }
        if !tgt.is_conclusive() {
            return Outcome::Inconclusive;
        }
        if self.back.is_some_and(|s| s.is_conclusive() && s.same_members(tgt)) {
            return Outcome::Pass(Via::BackTranslation);
        }
        if let Some(&i) = self.table.get().whole.get(&tgt.members) {
            return Outcome::Pass(Via::Enumeration(i, None));
        }
        if self.back_inconclusive() || self.table.get().any_inconclusive {
            return Outcome::Inconclusive;
        }
        Outcome::Fail(self.counterexample(
            Criterion::Rhp,
            tgt,
            None,
            "no source context within bounds emits exactly this trace set",
        ))
    }

    fn strong(&self, tgt: &TraceSet, rtp: &[Outcome]) -> Outcome {
        if let Some(Outcome::Fail(c)) = rtp.iter().find(|o| o.is_fail()) {
            return Outcome::Fail(Box::new(Counterexample {
                criterion: Criterion::StrongRhp,
                explanation: "a member trace has no source witness at all".into(),
                ..(**c).clone()
            }));
        }
        let Some(back) = self.back else {
            return Outcome::Inconclusive;
        };
        if !tgt.is_conclusive() || !back.is_conclusive() {
            return Outcome::Inconclusive;
        }
        if back.same_members(tgt) {
            Outcome::Pass(Via::BackTranslation)
        } else {
            Outcome::Fail(self.counterexample(
                Criterion::StrongRhp,
                tgt,
                None,
                "the back-translated context emits a different trace set",
            ))
        }
    }

    fn property(&self, tgt: &TraceSet, h: &Hyperproperty) -> Outcome {
        if !tgt.is_conclusive() {
            Outcome::Inconclusive
        } else if satisfies_hyper(tgt, h) {
            Outcome::Pass(Via::Direct)
        } else {
            let mut c = self.counterexample(
                Criterion::Preservation,
                tgt,
                None,
                "the trace set of the linked program violates the property",
            );
            c.property = Some(h.name().to_string());
            c.source_traces.clear();
            Outcome::Fail(c)
        }
    }

    fn evaluate(&self, exp: &Experiment) -> Cell {
        let tgt = self.pair.tgt_traces(self.context, self.program, self.bounds);
        let rsp = if exp.rsp { self.rsp(&tgt) } else { Vec::new() };
        let rtp = if exp.rtp || exp.rhp || exp.strong_rhp {
            self.rtp(&tgt)
        } else {
            Vec::new()
        };
        let rhp = exp.rhp.then(|| self.rhp(&tgt, &rtp));
        let strong = exp.strong_rhp.then(|| self.strong(&tgt, &rtp));
        let props = exp.properties.iter().map(|h| self.property(&tgt, h)).collect();
        Cell {
            traces: tgt.len(),
            rsp,
            rtp: if exp.rtp { rtp } else { Vec::new() },
            rhp,
            strong,
            props,
        }
    }
}

fn witness_maker<'a, L: LanguagePair>(
    pair: &'a L,
    program: &'a L::Program,
    context: &'a L::TgtCtx,
    table: &'a LazyTable<'a, L>,
) -> impl Fn(usize, Option<Obs>) -> Witness + 'a {
    move |i, t| Witness {
        program: pair.program_name(program),
        target_context: pair.show_tgt(context),
        source_context: pair.show_src(&table.get().contexts[i]),
        trace: t.map(|t| t.to_string()),
        via: WitnessSource::Enumeration,
    }
}

/// Source-side robust satisfaction of each property, from the table.
fn source_satisfaction<L: LanguagePair>(
    pair: &L,
    p: &L::Program,
    table: &LazyTable<L>,
    properties: &[Hyperproperty],
) -> Vec<Verdict> {
    if properties.is_empty() {
        return Vec::new();
    }
    let t = table.get();
    properties
        .iter()
        .map(|h| {
            let mut acc = Acc::default();
            acc.stats.contexts = t.sets.len();
            for (c, s) in t.contexts.iter().zip(&t.sets) {
                acc.stats.traces += s.len();
                let o = if !s.is_conclusive() {
                    Outcome::Inconclusive
                } else if satisfies_hyper(s, h) {
                    Outcome::Pass(Via::Direct)
                } else {
                    Outcome::Fail(Box::new(Counterexample {
                        criterion: Criterion::Preservation,
                        program: pair.program_name(p),
                        side: Side::Source,
                        context: pair.show_src(c),
                        property: Some(h.name().to_string()),
                        trace: None,
                        target_traces: Vec::new(),
                        source_traces: s.iter().map(Obs::to_string).collect(),
                        explanation: "the trace set of the linked program violates the property".into(),
                    }))
                };
                acc.record(o, |_, _| unreachable!("direct checks have no witnesses"));
            }
            acc.finish()
        })
        .collect()
}

/// Runs every check of `exp` for every program in one pass over the target
/// contexts.
pub fn run_experiment<L: LanguagePair>(
    pair: &L,
    programs: &[&L::Program],
    exp: &Experiment,
    b: &Bounds,
) -> Result<ExperimentResults, Error> {
    b.validate()?;
    if exp.strong_rhp {
        common_export(pair, programs)?;
    }
    let contexts = pair.tgt_contexts(b);
    let tables: Vec<LazyTable<L>> = programs.iter().map(|p| LazyTable::new(pair, p, *b)).collect();

    let chunks: Vec<(Vec<ProgramAcc>, Acc)> = contexts
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut accs: Vec<ProgramAcc> = programs.iter().map(|_| ProgramAcc::new(exp.properties.len())).collect();
            let mut group = Acc::default();
            for ctx in chunk {
                group.stats.contexts += 1;
                // Back-translations depend only on the export type.
                let mut backs: HashMap<String, Option<L::SrcCtx>> = HashMap::new();
                for ((p, table), acc) in programs.iter().zip(&tables).zip(accs.iter_mut()) {
                    let back = if exp.needs_back_translation() {
                        let key = pair.export_key(p);
                        backs
                            .entry(key)
                            .or_insert_with(|| pair.back_translate(ctx, p))
                            .as_ref()
                            .map(|c| pair.src_traces(c, p, b))
                    } else {
                        None
                    };
                    let input = CellInput {
                        pair,
                        program: *p,
                        context: ctx,
                        back: back.as_ref(),
                        table,
                        bounds: b,
                    };
                    let cell = input.evaluate(exp);
                    let w = witness_maker(pair, *p, ctx, table);
                    for a in [&mut acc.rsp, &mut acc.rtp, &mut acc.rhp, &mut acc.strong] {
                        a.stats.contexts += 1;
                        a.stats.traces += cell.traces;
                    }
                    for o in cell.rsp {
                        acc.rsp.record(o, &w);
                    }
                    for o in cell.rtp {
                        acc.rtp.record(o, &w);
                    }
                    if let Some(o) = cell.rhp {
                        acc.rhp.record(o, &w);
                    }
                    if let Some(o) = cell.strong {
                        // The corpus-wide check sees the same outcome.
                        match &o {
                            Outcome::Pass(_) => group.record(Outcome::Pass(Via::BackTranslation), &w),
                            Outcome::Inconclusive => group.record(Outcome::Inconclusive, &w),
                            Outcome::Fail(c) => group.record(Outcome::Fail(c.clone()), &w),
                        }
                        group.stats.traces += cell.traces;
                        acc.strong.record(o, &w);
                    }
                    for (a, o) in acc.props.iter_mut().zip(cell.props) {
                        a.stats.contexts += 1;
                        a.stats.traces += cell.traces;
                        a.record(o, &w);
                    }
                }
            }
            (accs, group)
        })
        .collect();

    let mut totals: Vec<ProgramAcc> = programs.iter().map(|_| ProgramAcc::new(exp.properties.len())).collect();
    let mut group = Acc::default();
    for (accs, g) in chunks {
        for (t, a) in totals.iter_mut().zip(accs) {
            t.merge(a);
        }
        group.merge(g);
    }

    let results = programs
        .iter()
        .zip(&tables)
        .zip(totals)
        .map(|((p, table), acc)| {
            let source = source_satisfaction(pair, p, table, exp.properties);
            let target: Vec<Verdict> = acc.props.into_iter().map(Acc::finish).collect();
            let preservation = source
                .iter()
                .zip(&target)
                .map(|(s, t)| match s.status {
                    super::Status::Counterexample => Verdict::vacuous(t.stats.contexts),
                    super::Status::Inconclusive => s.clone(),
                    super::Status::HoldsWithinBounds => t.clone(),
                })
                .collect();
            ProgramResults {
                program: pair.program_name(p),
                rsp: exp.rsp.then(|| acc.rsp.finish()),
                rtp: exp.rtp.then(|| acc.rtp.finish()),
                rhp: exp.rhp.then(|| acc.rhp.finish()),
                strong_rhp: exp.strong_rhp.then(|| acc.strong.finish()),
                source_satisfaction: source,
                target_satisfaction: target,
                preservation,
            }
        })
        .collect();
    Ok(ExperimentResults {
        programs: results,
        strong_rhp: exp.strong_rhp.then(|| group.finish()),
    })
}

fn single<L: LanguagePair>(pair: &L, p: &L::Program, exp: &Experiment, b: &Bounds) -> Result<ProgramResults, Error> {
    let mut r = run_experiment(pair, &[p], exp, b)?;
    Ok(r.programs.remove(0))
}

/// Robust satisfaction of `h` by `p` on one side: every enumerated context
/// of that side yields a trace set in `h`.
pub fn robustly_satisfies<L: LanguagePair>(
    p: &L::Program,
    h: &Hyperproperty,
    side: Side,
    pair: &L,
    b: &Bounds,
) -> Result<Verdict, Error> {
    b.validate()?;
    let props = std::slice::from_ref(h);
    match side {
        Side::Source => {
            let table = LazyTable::new(pair, p, *b);
            Ok(source_satisfaction(pair, p, &table, props).remove(0))
        }
        Side::Target => {
            let exp = Experiment::default().with_properties(props);
            Ok(single(pair, p, &exp, b)?.target_satisfaction.remove(0))
        }
    }
}

/// Robust satisfaction of `h` in the source implies it in the target. A
/// failing premise yields a pass flagged vacuous.
pub fn check_preservation<L: LanguagePair>(
    p: &L::Program,
    h: &Hyperproperty,
    pair: &L,
    b: &Bounds,
) -> Result<Verdict, Error> {
    let exp = Experiment::default().with_properties(std::slice::from_ref(h));
    Ok(single(pair, p, &exp, b)?.preservation.remove(0))
}

pub fn check_rsp<L: LanguagePair>(p: &L::Program, pair: &L, b: &Bounds) -> Result<Verdict, Error> {
    let exp = Experiment {
        rsp: true,
        ..Experiment::default()
    };
    Ok(single(pair, p, &exp, b)?.rsp.expect("requested"))
}

pub fn check_rtp<L: LanguagePair>(p: &L::Program, pair: &L, b: &Bounds) -> Result<Verdict, Error> {
    let exp = Experiment {
        rtp: true,
        ..Experiment::default()
    };
    Ok(single(pair, p, &exp, b)?.rtp.expect("requested"))
}

pub fn check_rhp<L: LanguagePair>(p: &L::Program, pair: &L, b: &Bounds) -> Result<Verdict, Error> {
    let exp = Experiment {
        rhp: true,
        ..Experiment::default()
    };
    Ok(single(pair, p, &exp, b)?.rhp.expect("requested"))
}

/// One back-translated source context per target context must emulate the
/// target trace set for every program of the corpus.
pub fn check_strong_rhp<L: LanguagePair>(pair: &L, corpus: &[&L::Program], b: &Bounds) -> Result<Verdict, Error> {
    if corpus.is_empty() {
        return Err(Error::Config("strong RHP needs at least one program".into()));
    }
    if let Some(c) = pair.tgt_contexts(b).first() {
        if pair.back_translate(c, corpus[0]).is_none() {
            return Err(Error::Config("strong RHP needs a back-translation".into()));
        }
    }
    let exp = Experiment {
        strong_rhp: true,
        ..Experiment::default()
    };
    Ok(run_experiment(pair, corpus, &exp, b)?.strong_rhp.expect("requested"))
}

/// Robust preservation of every member of `suite`, after checking that each
/// member belongs to `class` within bounds.
pub fn check_class_preservation<L: LanguagePair>(
    class: PropertyClass,
    suite: &[Hyperproperty],
    p: &L::Program,
    pair: &L,
    b: &Bounds,
) -> Result<Verdict, Error> {
    for h in suite {
        if !class.admits(h, b.val_cap)? {
            return Err(Error::Config(format!(
                "property `{}` is not in class {} within bounds",
                h.name(),
                class.name()
            )));
        }
    }
    let exp = Experiment::default().with_properties(suite);
    Ok(Verdict::conjunction(single(pair, p, &exp, b)?.preservation))
}

/// Re-runs the check that produced `cex` on its program and context and
/// reports whether the same counterexample comes out.
pub fn replay<L: LanguagePair>(
    pair: &L,
    programs: &[&L::Program],
    properties: &[Hyperproperty],
    cex: &Counterexample,
    b: &Bounds,
) -> Result<bool, Error> {
    let Some(p) = programs.iter().find(|p| pair.program_name(p) == cex.program) else {
        return Err(Error::Config(format!("unknown program `{}`", cex.program)));
    };
    let table = LazyTable::new(pair, p, *b);
    let h = match &cex.property {
        Some(name) => match properties.iter().find(|h| h.name() == name) {
            Some(h) => Some(h.clone()),
            None => return Err(Error::Config(format!("unknown property `{name}`"))),
        },
        None => None,
    };
    if cex.side == Side::Source {
        let h = h.ok_or_else(|| Error::Config("source-side counterexample without a property".into()))?;
        let v = source_satisfaction(pair, p, &table, std::slice::from_ref(&h)).remove(0);
        // The listed counterexamples are a prefix of all failures; search
        // the contexts directly so unlisted ones replay too.
        let t = table.get();
        return Ok(t.contexts.iter().zip(&t.sets).any(|(c, s)| {
            pair.show_src(c) == cex.context && s.is_conclusive() && !satisfies_hyper(s, &h)
        }) || v.counterexamples.contains(cex));
    }
    let Some(ctx) = pair.find_tgt(&cex.context, b) else {
        return Err(Error::Parse(format!("cannot recover context `{}`", cex.context)));
    };
    let back = pair.back_translate(&ctx, p).map(|c| pair.src_traces(&c, p, b));
    let input = CellInput {
        pair,
        program: *p,
        context: &ctx,
        back: back.as_ref(),
        table: &table,
        bounds: b,
    };
    let props: Vec<Hyperproperty> = h.into_iter().collect();
    let exp = Experiment {
        rsp: cex.criterion == Criterion::Rsp,
        rtp: cex.criterion == Criterion::Rtp,
        rhp: cex.criterion == Criterion::Rhp,
        strong_rhp: cex.criterion == Criterion::StrongRhp,
        properties: &props,
    };
    let cell = input.evaluate(&exp);
    let matches = |o: &Outcome| matches!(o, Outcome::Fail(c) if **c == *cex);
    Ok(cell.rsp.iter().any(matches)
        || cell.rtp.iter().any(matches)
        || cell.rhp.iter().any(matches)
        || cell.strong.iter().any(matches)
        || cell.props.iter().any(matches))
}
