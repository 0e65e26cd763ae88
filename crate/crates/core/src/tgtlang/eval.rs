//! Call-by-value small-step evaluation of whole target programs. A stuck
//! configuration ends the run silently, exactly like divergence.

use super::term::TgtTerm;
use crate::machine::{explore_streams, CycleDetector, Cut, Io, Run};
use crate::trace::{Obs, TraceSet};
use crate::Bounds;

enum Step {
    Progress,
    Io,
    Value,
    Halt(Cut),
}

/// Runs a closed, hole-free term on one input stream.
pub fn run(w: &TgtTerm, stream: &[u32], bounds: &Bounds) -> Run {
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
            Step::Halt(cut) => return io.finish(Some(cut), steps),
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

pub fn eval_trace_tgt(w: &TgtTerm, stream: &[u32], bounds: &Bounds) -> Obs {
    run(w, stream, bounds).obs
}

pub fn trace_set_whole(w: &TgtTerm, bounds: &Bounds) -> (TraceSet, Vec<Run>) {
    explore_streams(bounds, |s| run(w, s, bounds))
}

fn step(t: &mut TgtTerm, io: &mut Io, b: &Bounds) -> Step {
    match t {
        TgtTerm::Lam(..) | TgtTerm::Unit | TgtTerm::Lit(_) => return Step::Value,
        TgtTerm::Var(_) | TgtTerm::Hole => return Step::Halt(Cut::Stuck),
        TgtTerm::App(f, a) | TgtTerm::Pair(f, a) => {
            if !f.is_value() {
                return step(f, io, b);
            }
            if !a.is_value() {
                return step(a, io, b);
            }
            if matches!(t, TgtTerm::Pair(..)) {
                return Step::Value;
            }
        }
        TgtTerm::Inl(e) | TgtTerm::Inr(e) => {
            return if e.is_value() { Step::Value } else { step(e, io, b) };
        }
        TgtTerm::Succ(e)
        | TgtTerm::Fst(e)
        | TgtTerm::Snd(e)
        | TgtTerm::Write(_, e)
        | TgtTerm::Ifz(e, _, _)
        | TgtTerm::Case(e, _, _, _, _) => {
            if !e.is_value() {
                return step(e, io, b);
            }
        }
        TgtTerm::Read(_) => {}
    }
    contract(t, io, b)
}

fn contract(t: &mut TgtTerm, io: &mut Io, b: &Bounds) -> Step {
    let redex = std::mem::replace(t, TgtTerm::Unit);
    let (next, io_step) = match redex {
        TgtTerm::App(f, a) => match *f {
            TgtTerm::Lam(x, mut body) => {
                body.subst(&x, &a);
                (*body, false)
            }
            f => return stuck(t, TgtTerm::App(Box::new(f), a)),
        },
        TgtTerm::Succ(e) => match *e {
            TgtTerm::Lit(n) => (TgtTerm::Lit(b.succ(n)), false),
            e => return stuck(t, TgtTerm::Succ(Box::new(e))),
        },
        TgtTerm::Ifz(c, z, s) => match *c {
            TgtTerm::Lit(0) => (*z, false),
            TgtTerm::Lit(_) => (*s, false),
            c => return stuck(t, TgtTerm::Ifz(Box::new(c), z, s)),
        },
        TgtTerm::Fst(e) => match *e {
            TgtTerm::Pair(a, _) => (*a, false),
            e => return stuck(t, TgtTerm::Fst(Box::new(e))),
        },
        TgtTerm::Snd(e) => match *e {
            TgtTerm::Pair(_, c) => (*c, false),
            e => return stuck(t, TgtTerm::Snd(Box::new(e))),
        },
        TgtTerm::Case(e, x, l, y, r) => match *e {
            TgtTerm::Inl(v) => {
                let mut l = *l;
                l.subst(&x, &v);
                (l, false)
            }
            TgtTerm::Inr(v) => {
                let mut r = *r;
                r.subst(&y, &v);
                (r, false)
            }
            e => return stuck(t, TgtTerm::Case(Box::new(e), x, l, y, r)),
        },
        TgtTerm::Read(origin) => match io.read(origin) {
            Ok(n) => (TgtTerm::Lit(n), true),
            Err(cut) => return halt(t, TgtTerm::Read(origin), cut),
        },
        TgtTerm::Write(origin, e) => match *e {
            TgtTerm::Lit(n) => match io.write(n, origin) {
                Ok(()) => (TgtTerm::Unit, true),
                Err(cut) => return halt(t, TgtTerm::Write(origin, Box::new(TgtTerm::Lit(n))), cut),
            },
            e => return stuck(t, TgtTerm::Write(origin, Box::new(e))),
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

fn stuck(slot: &mut TgtTerm, redex: TgtTerm) -> Step {
    halt(slot, redex, Cut::Stuck)
}

fn halt(slot: &mut TgtTerm, redex: TgtTerm, cut: Cut) -> Step {
    *slot = redex;
    Step::Halt(cut)
}
