//! The target calculus: untyped call-by-value λ-calculus with the same value
//! formers and labeled I/O as the source, where shape mismatches get stuck
//! silently.

mod enumerate;
pub mod eval;
pub mod syntax;
mod term;

pub use enumerate::enumerate_tgt_contexts;
pub use eval::eval_trace_tgt;
pub use term::TgtTerm;

use crate::machine::Run;
use crate::trace::{Origin, TraceSet};
use crate::{Bounds, Error};

/// A closed, hole-free target term whose I/O nodes are all Prog-labeled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TgtProgram {
    term: TgtTerm,
}

impl TgtProgram {
    pub fn new(term: TgtTerm) -> Result<Self, Error> {
        if term.hole_count() != 0 {
            return Err(Error::Config("a program may not contain a hole".into()));
        }
        if let Some(x) = term.free_vars().first() {
            return Err(Error::Config(format!("unbound variable `{x}`")));
        }
        if term.io_labels().iter().any(|o| *o != Origin::Prog) {
            return Err(Error::Config("program I/O must be Prog-labeled".into()));
        }
        Ok(TgtProgram { term })
    }

    pub fn parse(src: &str) -> Result<Self, Error> {
        TgtProgram::new(syntax::parse_tgt_str(src, Origin::Prog)?)
    }

    pub fn term(&self) -> &TgtTerm {
        &self.term
    }
}

/// A target term with exactly one hole, no free variables, and Ctx-labeled
/// I/O.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TgtContext {
    term: TgtTerm,
}

impl TgtContext {
    pub fn new(term: TgtTerm) -> Result<Self, Error> {
        if term.hole_count() != 1 {
            return Err(Error::Config(format!(
                "a context needs exactly one hole, found {}",
                term.hole_count()
            )));
        }
        if let Some(x) = term.free_vars().first() {
            return Err(Error::Config(format!("unbound variable `{x}`")));
        }
        if term.io_labels().iter().any(|o| *o != Origin::Ctx) {
            return Err(Error::Config("context I/O must be Ctx-labeled".into()));
        }
        Ok(TgtContext { term })
    }

    pub fn parse(src: &str) -> Result<Self, Error> {
        TgtContext::new(syntax::parse_tgt_str(src, Origin::Ctx)?)
    }

    pub fn term(&self) -> &TgtTerm {
        &self.term
    }
}

impl std::fmt::Display for TgtContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&syntax::print_tgt(&self.term))
    }
}

/// A closed, hole-free target term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WholeTgt {
    term: TgtTerm,
}

impl WholeTgt {
    pub fn new(term: TgtTerm) -> Result<Self, Error> {
        if term.hole_count() != 0 {
            return Err(Error::Config("a whole program may not contain a hole".into()));
        }
        if let Some(x) = term.free_vars().first() {
            return Err(Error::Config(format!("unbound variable `{x}`")));
        }
        Ok(WholeTgt { term })
    }

    pub fn parse(src: &str) -> Result<Self, Error> {
        WholeTgt::new(syntax::parse_tgt_str(src, Origin::Prog)?)
    }

    pub fn term(&self) -> &TgtTerm {
        &self.term
    }

    pub fn run(&self, stream: &[u32], bounds: &Bounds) -> Run {
        eval::run(&self.term, stream, bounds)
    }

    pub fn trace_set(&self, bounds: &Bounds) -> (TraceSet, Vec<Run>) {
        eval::trace_set_whole(&self.term, bounds)
    }
}

pub fn link_tgt(c: &TgtContext, p: &TgtProgram) -> WholeTgt {
    WholeTgt {
        term: c.term.plug(&p.term),
    }
}

pub fn trace_set_tgt(c: &TgtContext, p: &TgtProgram, bounds: &Bounds) -> TraceSet {
    link_tgt(c, p).trace_set(bounds).0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Bounds {
        Bounds::default()
    }

    #[test]
    fn link_applies_identity() {
        let c = TgtContext::parse("(write (app (hole) (lit 2)))").unwrap();
        let p = TgtProgram::parse("(lam x x)").unwrap();
        assert_eq!(trace_set_tgt(&c, &p, &b()).to_string(), "{([Out(2,ctx)] term)}");
    }

    #[test]
    fn context_ignoring_hole() {
        let c = TgtContext::parse("(seq (write 1) (lam x (hole)))").unwrap();
        let p = TgtProgram::parse("(write 3)").unwrap();
        assert_eq!(trace_set_tgt(&c, &p, &b()).to_string(), "{([Out(1,ctx)] term)}");
    }

    #[test]
    fn immediate_stuckness() {
        let c = TgtContext::parse("(fst (hole))").unwrap();
        let p = TgtProgram::parse("(lam x x)").unwrap();
        assert_eq!(trace_set_tgt(&c, &p, &b()).to_string(), "{([] incomplete)}");
    }

    #[test]
    fn trace_set_replays_streams() {
        let c = TgtContext::parse("(write (app (hole) (read)))").unwrap();
        let p = TgtProgram::parse("(lam x (succ x))").unwrap();
        let w = link_tgt(&c, &p);
        let bounds = b();
        let mut replay = TraceSet::new(bounds);
        for s in bounds.streams() {
            replay.insert(eval_trace_tgt(w.term(), &s, &bounds), false);
        }
        assert_eq!(trace_set_tgt(&c, &p, &bounds), replay);
    }

    #[test]
    fn plugging_preserves_ctx_io_count() {
        let c = TgtContext::parse("(seq (write (read)) (hole))").unwrap();
        let p = TgtProgram::parse("(write 1)").unwrap();
        let w = link_tgt(&c, &p);
        let ctx = |t: &TgtTerm| t.io_labels().iter().filter(|o| **o == Origin::Ctx).count();
        assert_eq!(ctx(w.term()), ctx(c.term()));
    }

    #[test]
    fn context_validation() {
        assert!(TgtContext::parse("(write 1)").is_err());
        assert!(TgtContext::parse("(app (hole) y)").is_err());
        assert!(TgtContext::parse("(pair (hole) (write prog 1))").is_err());
        assert!(TgtProgram::parse("(hole)").is_err());
    }

    #[test]
    fn enumeration_is_scoped_and_monotone() {
        let mut last = 0;
        for n in 1..=4 {
            let cs = enumerate_tgt_contexts(n, 3);
            assert!(cs.len() >= last);
            last = cs.len();
            for c in &cs {
                assert!(c.term().free_vars().is_empty());
                assert_eq!(c.term().hole_count(), 1);
            }
        }
    }
}
