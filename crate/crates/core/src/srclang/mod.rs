//! The source calculus: simply typed, call-by-value λ-calculus with unit,
//! naturals, products, sums, iso-recursive types, and labeled I/O.

pub mod derived;
mod enumerate;
pub mod eval;
pub mod syntax;
mod term;
mod typecheck;
mod types;

pub use enumerate::enumerate_src_contexts;
pub use eval::eval_trace;
pub use syntax::print_term;
pub use term::{SrcTerm, Ty};
pub use typecheck::{typecheck, Env};
pub use types::{Name, SrcType};

use crate::machine::Run;
use crate::trace::{Origin, TraceSet};
use crate::{Bounds, Error};

/// A closed, hole-free source term whose I/O nodes are all Prog-labeled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrcProgram {
    term: SrcTerm,
    ty: SrcType,
}

impl SrcProgram {
    pub fn new(term: SrcTerm) -> Result<Self, Error> {
        if term.hole_count() != 0 {
            return Err(Error::Config("a program may not contain a hole".into()));
        }
        if term.io_labels().iter().any(|o| *o != Origin::Prog) {
            return Err(Error::Config("program I/O must be Prog-labeled".into()));
        }
        let ty = typecheck(&term, &Env::new(), None)?;
        if !ty.is_closed() {
            return Err(Error::Config(format!("program type {ty} is not closed")));
        }
        Ok(SrcProgram { term, ty })
    }

    pub fn parse(src: &str) -> Result<Self, Error> {
        SrcProgram::new(syntax::parse_term_str(src, Origin::Prog)?)
    }

    pub fn term(&self) -> &SrcTerm {
        &self.term
    }

    pub fn ty(&self) -> &SrcType {
        &self.ty
    }
}

/// A source term with exactly one hole, Ctx-labeled I/O, and type unit once
/// the hole is given its type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrcContext {
    term: SrcTerm,
    hole_ty: SrcType,
}

impl SrcContext {
    pub fn new(term: SrcTerm, hole_ty: SrcType) -> Result<Self, Error> {
        if term.hole_count() != 1 {
            return Err(Error::Config(format!(
                "a context needs exactly one hole, found {}",
                term.hole_count()
            )));
        }
        if term.io_labels().iter().any(|o| *o != Origin::Ctx) {
            return Err(Error::Config("context I/O must be Ctx-labeled".into()));
        }
        let ty = typecheck(&term, &Env::new(), Some(&hole_ty))?;
        if !ty.alpha_eq(&SrcType::Unit) {
            return Err(Error::Type {
                path: "root".into(),
                message: format!("context has type {ty}, expected unit"),
            });
        }
        Ok(SrcContext { term, hole_ty })
    }

    /// Skips validation; for contexts that are well-formed by construction.
    pub(crate) fn new_unchecked(term: SrcTerm, hole_ty: SrcType) -> Self {
        SrcContext { term, hole_ty }
    }

    pub fn parse(src: &str, hole_ty: SrcType) -> Result<Self, Error> {
        SrcContext::new(syntax::parse_term_str(src, Origin::Ctx)?, hole_ty)
    }

    pub fn term(&self) -> &SrcTerm {
        &self.term
    }

    pub fn hole_ty(&self) -> &SrcType {
        &self.hole_ty
    }
}

/// A closed, hole-free source term of type unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WholeSrc {
    term: SrcTerm,
}

impl WholeSrc {
    pub fn new(term: SrcTerm) -> Result<Self, Error> {
        if term.hole_count() != 0 {
            return Err(Error::Config("a whole program may not contain a hole".into()));
        }
        let ty = typecheck(&term, &Env::new(), None)?;
        if !ty.alpha_eq(&SrcType::Unit) {
            return Err(Error::Type {
                path: "root".into(),
                message: format!("whole program has type {ty}, expected unit"),
            });
        }
        Ok(WholeSrc { term })
    }

    pub fn parse(src: &str) -> Result<Self, Error> {
        WholeSrc::new(syntax::parse_term_str(src, Origin::Prog)?)
    }

    pub fn term(&self) -> &SrcTerm {
        &self.term
    }

    pub fn run(&self, stream: &[u32], bounds: &Bounds) -> Run {
        eval::run(&self.term, stream, bounds)
    }

    pub fn trace_set(&self, bounds: &Bounds) -> (TraceSet, Vec<Run>) {
        eval::trace_set_whole(&self.term, bounds)
    }
}

/// Plugs `p` into the hole of `c`. Labels of both sides are kept.
pub fn link(c: &SrcContext, p: &SrcProgram) -> Result<WholeSrc, Error> {
    if !c.hole_ty.alpha_eq(&p.ty) {
        return Err(Error::Type {
            path: "hole".into(),
            message: format!("context expects {}, program has type {}", c.hole_ty, p.ty),
        });
    }
    Ok(WholeSrc {
        term: c.term.plug(&p.term),
    })
}

pub fn trace_set_src(c: &SrcContext, p: &SrcProgram, bounds: &Bounds) -> Result<TraceSet, Error> {
    Ok(link(c, p)?.trace_set(bounds).0)
}
