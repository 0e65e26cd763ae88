//! Language pairs the checkers run against: the source/target workbench and
//! a table-driven mock for checker self-tests.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::backtrans::backtranslate_context;
use crate::compile::{compile, CompilerId};
use crate::srclang::syntax::{print_term, type_to_sexp};
use crate::srclang::{enumerate_src_contexts, trace_set_src, SrcContext, SrcProgram, SrcType};
use crate::tgtlang::syntax::print_tgt;
use crate::tgtlang::{enumerate_tgt_contexts, trace_set_tgt, TgtContext, TgtProgram};
use crate::trace::{Obs, TraceSet};
use crate::{Bounds, Error};

/// A source language, a target language, and a compiler between them.
///
/// Context lists are canonical: the checkers report the first failure in
/// this order. `tgt_traces` runs the compiled program.
pub trait LanguagePair: Sync {
    type Program: Sync;
    type SrcCtx: Send + Sync;
    type TgtCtx: Send + Sync;

    fn program_name(&self, p: &Self::Program) -> String;

    /// Programs with equal keys share a back-translation.
    fn export_key(&self, p: &Self::Program) -> String;

    fn src_contexts(&self, p: &Self::Program, b: &Bounds) -> Arc<Vec<Self::SrcCtx>>;
    fn tgt_contexts(&self, b: &Bounds) -> Arc<Vec<Self::TgtCtx>>;

    fn src_traces(&self, c: &Self::SrcCtx, p: &Self::Program, b: &Bounds) -> TraceSet;
    fn tgt_traces(&self, c: &Self::TgtCtx, p: &Self::Program, b: &Bounds) -> TraceSet;

    /// A source context built from the target context and the export type
    /// of `p` alone, if the pair has one.
    fn back_translate(&self, c: &Self::TgtCtx, p: &Self::Program) -> Option<Self::SrcCtx>;

    fn show_src(&self, c: &Self::SrcCtx) -> String;
    fn show_tgt(&self, c: &Self::TgtCtx) -> String;

    /// Recovers a target context from its printed form.
    fn find_tgt(&self, shown: &str, b: &Bounds) -> Option<Self::TgtCtx>;
}

/// A source program together with its compilation.
#[derive(Clone, Debug)]
pub struct WbProgram {
    name: String,
    src: SrcProgram,
    tgt: TgtProgram,
}

impl WbProgram {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn src(&self) -> &SrcProgram {
        &self.src
    }

    pub fn tgt(&self) -> &TgtProgram {
        &self.tgt
    }
}

type SrcKey = (SrcType, usize, u32);

/// The source calculus, the target calculus, and one of the compilers.
/// Enumerated contexts are cached per bound.
pub struct Workbench {
    compiler: CompilerId,
    src_cache: Mutex<HashMap<SrcKey, Arc<Vec<SrcContext>>>>,
    tgt_cache: Mutex<HashMap<(usize, u32), Arc<Vec<TgtContext>>>>,
}

impl Workbench {
    pub fn new(compiler: CompilerId) -> Self {
        Workbench {
            compiler,
            src_cache: Mutex::new(HashMap::new()),
            tgt_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn compiler(&self) -> CompilerId {
        self.compiler
    }

    /// Compiles `src` with this workbench's compiler.
    pub fn program(&self, name: impl Into<String>, src: SrcProgram) -> WbProgram {
        let tgt = compile(&src, self.compiler);
        WbProgram {
            name: name.into(),
            src,
            tgt,
        }
    }
}

impl LanguagePair for Workbench {
    type Program = WbProgram;
    type SrcCtx = SrcContext;
    type TgtCtx = TgtContext;

    fn program_name(&self, p: &WbProgram) -> String {
        p.name.clone()
    }

    fn export_key(&self, p: &WbProgram) -> String {
        type_to_sexp(p.src.ty()).to_string()
    }

    fn src_contexts(&self, p: &WbProgram, b: &Bounds) -> Arc<Vec<SrcContext>> {
        let key = (p.src.ty().clone(), b.ctx_size, b.val_cap);
        let mut cache = self.src_cache.lock().expect("cache lock");
        cache
            .entry(key)
            .or_insert_with(|| Arc::new(enumerate_src_contexts(p.src.ty(), b.ctx_size, b.val_cap)))
            .clone()
    }

    fn tgt_contexts(&self, b: &Bounds) -> Arc<Vec<TgtContext>> {
        let mut cache = self.tgt_cache.lock().expect("cache lock");
        cache
            .entry((b.ctx_size, b.val_cap))
            .or_insert_with(|| Arc::new(enumerate_tgt_contexts(b.ctx_size, b.val_cap)))
            .clone()
    }

    fn src_traces(&self, c: &SrcContext, p: &WbProgram, b: &Bounds) -> TraceSet {
        trace_set_src(c, &p.src, b).expect("contexts are enumerated at the program's type")
    }

    fn tgt_traces(&self, c: &TgtContext, p: &WbProgram, b: &Bounds) -> TraceSet {
        trace_set_tgt(c, &p.tgt, b)
    }

    fn back_translate(&self, c: &TgtContext, p: &WbProgram) -> Option<SrcContext> {
        Some(backtranslate_context(c, p.src.ty()))
    }

    fn show_src(&self, c: &SrcContext) -> String {
        print_term(c.term())
    }

    fn show_tgt(&self, c: &TgtContext) -> String {
        print_tgt(c.term())
    }

    fn find_tgt(&self, shown: &str, _b: &Bounds) -> Option<TgtContext> {
        TgtContext::parse(shown).ok()
    }
}

/// A language pair given by explicit trace tables, with a single program.
/// Contexts are indices into the tables.
#[derive(Clone, Debug, Default)]
pub struct MockPair {
    pub src: Vec<(String, Vec<Obs>)>,
    pub tgt: Vec<(String, Vec<Obs>)>,
    /// For each target context, the source context it back-translates to.
    pub back: Option<Vec<usize>>,
}

impl MockPair {
    /// One target context with traces `{a, b}`; two source contexts with
    /// `{a}` and `{b}`. Every target trace is emulable, but no single source
    /// context emulates the whole target trace set.
    pub fn quantifier_separation() -> Self {
        use crate::trace::{Event, Origin};
        let a = Obs::term(vec![Event::output(1, Origin::Ctx)]);
        let b = Obs::term(vec![Event::output(2, Origin::Ctx)]);
        MockPair {
            src: vec![("S1".into(), vec![a.clone()]), ("S2".into(), vec![b.clone()])],
            tgt: vec![("T0".into(), vec![a, b])],
            back: None,
        }
    }

    fn table(rows: &[(String, Vec<Obs>)], i: usize, b: &Bounds) -> TraceSet {
        TraceSet::from_members(rows[i].1.iter().cloned(), *b)
    }
}

impl LanguagePair for MockPair {
    type Program = ();
    type SrcCtx = usize;
    type TgtCtx = usize;

    fn program_name(&self, _p: &()) -> String {
        "P".into()
    }

    fn export_key(&self, _p: &()) -> String {
        "mock".into()
    }

    fn src_contexts(&self, _p: &(), _b: &Bounds) -> Arc<Vec<usize>> {
        Arc::new((0..self.src.len()).collect())
    }

    fn tgt_contexts(&self, _b: &Bounds) -> Arc<Vec<usize>> {
        Arc::new((0..self.tgt.len()).collect())
    }

    fn src_traces(&self, c: &usize, _p: &(), b: &Bounds) -> TraceSet {
        Self::table(&self.src, *c, b)
    }

    fn tgt_traces(&self, c: &usize, _p: &(), b: &Bounds) -> TraceSet {
        Self::table(&self.tgt, *c, b)
    }

    fn back_translate(&self, c: &usize, _p: &()) -> Option<usize> {
        self.back.as_ref().map(|m| m[*c])
    }

    fn show_src(&self, c: &usize) -> String {
        self.src[*c].0.clone()
    }

    fn show_tgt(&self, c: &usize) -> String {
        self.tgt[*c].0.clone()
    }

    fn find_tgt(&self, shown: &str, _b: &Bounds) -> Option<usize> {
        self.tgt.iter().position(|(n, _)| n == shown)
    }
}

/// Checks that every program shares one export type.
pub(crate) fn common_export<L: LanguagePair>(pair: &L, programs: &[&L::Program]) -> Result<(), Error> {
    let mut keys = programs.iter().map(|p| pair.export_key(p));
    if let Some(first) = keys.next() {
        if let Some(other) = keys.find(|k| *k != first) {
            return Err(Error::Config(format!(
                "corpus mixes export types `{first}` and `{other}`"
            )));
        }
    }
    Ok(())
}
