//! Call-by-value, leftmost-innermost small-step evaluation of whole source
//! programs, emitting provenance-tagged events.

use super::term::SrcTerm;
use crate::machine::{explore_streams, CycleDetector, Cut, Io, Run};
use crate::trace::{Obs, TraceSet};
use crate::Bounds;

enum Step {
    Progress,
    Io,
    Value,
    Halt(Cut),
}

/// Runs a closed, hole-free, well-typed term on one input stream.
pub fn run(w: &SrcTerm, stream: &[u32], bounds: &Bounds) -> Run {
    let mut term = w.clone();
    let mut io = Io::new(stream, bounds);
    let mut cycles = CycleDetector::new();
    let mut steps = 0;
    loop {
        if steps >= bounds.fuel {
            return io.finish(Some(Cut::Fuel), steps);
        }
        match step(&mut term, &mut io, bounds) {
            Step::Value => return io.finish(None, steps),
            Step::Halt(cut) => {
                // Well-typed source programs never get stuck.
                debug_assert!(cut != Cut::Stuck, "source machine stuck on {term:?}");
                return io.finish(Some(cut), steps);
            }
            Step::Io => cycles.reset(),
            Step::Progress => {
                if cycles.looped(&term) {
                    return io.finish(Some(Cut::Diverged), steps + 1);
                }
            }
        }
        steps += 1;
    }
}

pub fn eval_trace(w: &SrcTerm, stream: &[u32], bounds: &Bounds) -> Obs {
    run(w, stream, bounds).obs
}

/// The trace set of a whole program over all streams within `bounds`.
pub fn trace_set_whole(w: &SrcTerm, bounds: &Bounds) -> (TraceSet, Vec<Run>) {
    explore_streams(bounds, |s| run(w, s, bounds))
}

fn step(t: &mut SrcTerm, io: &mut Io, b: &Bounds) -> Step {
    match t {
        SrcTerm::Lam(..) | SrcTerm::Unit | SrcTerm::Lit(_) => return Step::Value,
        SrcTerm::Var(_) | SrcTerm::Hole => return Step::Halt(Cut::Stuck),
        SrcTerm::App(f, a) | SrcTerm::Pair(f, a) => {
            if !f.is_value() {
                return step(f, io, b);
            }
            if !a.is_value() {
                return step(a, io, b);
            }
            if matches!(t, SrcTerm::Pair(..)) {
                return Step::Value;
            }
        }
        SrcTerm::Inl(_, e) | SrcTerm::Inr(_, e) | SrcTerm::Fold(_, e) => {
            return if e.is_value() { Step::Value } else { step(e, io, b) };
        }
        SrcTerm::Succ(e)
        | SrcTerm::Fst(e)
        | SrcTerm::Snd(e)
        | SrcTerm::Unfold(e)
        | SrcTerm::Write(_, e)
        | SrcTerm::Ifz(e, _, _)
        | SrcTerm::Case(e, _, _, _, _) => {
            if !e.is_value() {
                return step(e, io, b);
            }
        }
        SrcTerm::Read(_) => {}
    }
    contract(t, io, b)
}

/// Reduces a redex whose evaluated positions are all values.
fn contract(t: &mut SrcTerm, io: &mut Io, b: &Bounds) -> Step {
    let redex = std::mem::replace(t, SrcTerm::Unit);
    let (next, io_step) = match redex {
        SrcTerm::App(f, a) => match *f {
            SrcTerm::Lam(x, _, mut body) => {
                body.subst(&x, &a);
                (*body, false)
            }
            f => return stuck(t, SrcTerm::App(Box::new(f), a)),
        },
        SrcTerm::Succ(e) => match *e {
            SrcTerm::Lit(n) => (SrcTerm::Lit(b.succ(n)), false),
            e => return stuck(t, SrcTerm::Succ(Box::new(e))),
        },
        SrcTerm::Ifz(c, z, s) => match *c {
            SrcTerm::Lit(0) => (*z, false),
            SrcTerm::Lit(_) => (*s, false),
            c => return stuck(t, SrcTerm::Ifz(Box::new(c), z, s)),
        },
        SrcTerm::Fst(e) => match *e {
            SrcTerm::Pair(a, _) => (*a, false),
            e => return stuck(t, SrcTerm::Fst(Box::new(e))),
        },
        SrcTerm::Snd(e) => match *e {
            SrcTerm::Pair(_, c) => (*c, false),
            e => return stuck(t, SrcTerm::Snd(Box::new(e))),
        },
        SrcTerm::Case(e, x, l, y, r) => match *e {
            SrcTerm::Inl(_, v) => {
                let mut l = *l;
                l.subst(&x, &v);
                (l, false)
            }
            SrcTerm::Inr(_, v) => {
                let mut r = *r;
                r.subst(&y, &v);
                (r, false)
            }
            e => return stuck(t, SrcTerm::Case(Box::new(e), x, l, y, r)),
        },
        SrcTerm::Unfold(e) => match *e {
            SrcTerm::Fold(_, v) => (*v, false),
            e => return stuck(t, SrcTerm::Unfold(Box::new(e))),
        },
        SrcTerm::Read(origin) => match io.read(origin) {
            Ok(n) => (SrcTerm::Lit(n), true),
            Err(cut) => return halt(t, SrcTerm::Read(origin), cut),
        },
        SrcTerm::Write(origin, e) => match *e {
            SrcTerm::Lit(n) => match io.write(n, origin) {
                Ok(()) => (SrcTerm::Unit, true),
                Err(cut) => return halt(t, SrcTerm::Write(origin, Box::new(SrcTerm::Lit(n))), cut),
            },
            e => return stuck(t, SrcTerm::Write(origin, Box::new(e))),
        },
        other => return stuck(t, other),
    };
    *t = next;
    if io_step {
        Step::Io
    } else {
        Step::Progress
    }
}

fn stuck(slot: &mut SrcTerm, redex: SrcTerm) -> Step {
    halt(slot, redex, Cut::Stuck)
}

fn halt(slot: &mut SrcTerm, redex: SrcTerm, cut: Cut) -> Step {
    *slot = redex;
    Step::Halt(cut)
}
