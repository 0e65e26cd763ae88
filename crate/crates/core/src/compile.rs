//! Type erasure with boundary wrappers, plus two deliberately weaker
//! compilers used as negative controls.
//!
//! `protect(τ)` guards a program value of type `τ` on its way out to the
//! context; `confine(τ)` guards a context value flowing in where the program
//! expects `τ`. A value of the wrong shape makes the wrapper get stuck, which
//! the target treats as silent divergence.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::srclang::{SrcProgram, SrcTerm, SrcType};
use crate::tgtlang::{TgtProgram, TgtTerm};
use crate::trace::Origin;
use crate::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompilerId {
    #[default]
    Secure,
    NoProtect,
    Backdoor,
}

impl CompilerId {
    pub const ALL: [CompilerId; 3] = [CompilerId::Secure, CompilerId::NoProtect, CompilerId::Backdoor];

    pub fn as_str(self) -> &'static str {
        match self {
            CompilerId::Secure => "secure",
            CompilerId::NoProtect => "no-protect",
            CompilerId::Backdoor => "backdoor",
        }
    }
}

impl fmt::Display for CompilerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CompilerId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        CompilerId::ALL
            .into_iter()
            .find(|c| c.as_str() == s || c.as_str().replace('-', "") == s)
            .ok_or_else(|| Error::Config(format!("unknown compiler `{s}` (secure, no-protect, backdoor)")))
    }
}

/// Drops type annotations and fold/unfold; everything else is kept as is.
pub fn erase(t: &SrcTerm) -> TgtTerm {
    let b = |e: &SrcTerm| Box::new(erase(e));
    match t {
        SrcTerm::Var(x) => TgtTerm::Var(x.clone()),
        SrcTerm::Lam(x, _, e) => TgtTerm::Lam(x.clone(), b(e)),
        SrcTerm::App(f, a) => TgtTerm::App(b(f), b(a)),
        SrcTerm::Unit => TgtTerm::Unit,
        SrcTerm::Lit(n) => TgtTerm::Lit(*n),
        SrcTerm::Succ(e) => TgtTerm::Succ(b(e)),
        SrcTerm::Ifz(c, z, s) => TgtTerm::Ifz(b(c), b(z), b(s)),
        SrcTerm::Pair(x, y) => TgtTerm::Pair(b(x), b(y)),
        SrcTerm::Fst(e) => TgtTerm::Fst(b(e)),
        SrcTerm::Snd(e) => TgtTerm::Snd(b(e)),
        SrcTerm::Inl(_, e) => TgtTerm::Inl(b(e)),
        SrcTerm::Inr(_, e) => TgtTerm::Inr(b(e)),
        SrcTerm::Case(e, x, l, y, r) => TgtTerm::Case(b(e), x.clone(), b(l), y.clone(), b(r)),
        SrcTerm::Fold(_, e) | SrcTerm::Unfold(e) => erase(e),
        SrcTerm::Read(o) => TgtTerm::Read(*o),
        SrcTerm::Write(o, e) => TgtTerm::Write(*o, b(e)),
        SrcTerm::Hole => TgtTerm::Hole,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Protect,
    Confine,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::Protect => Dir::Confine,
            Dir::Confine => Dir::Protect,
        }
    }

    fn selector(self) -> u32 {
        match self {
            Dir::Protect => 0,
            Dir::Confine => 1,
        }
    }
}

pub fn protect(ty: &SrcType) -> TgtTerm {
    wrapper(ty, Dir::Protect, &mut Vec::new())
}

pub fn confine(ty: &SrcType) -> TgtTerm {
    wrapper(ty, Dir::Confine, &mut Vec::new())
}

/// The call-by-value fixpoint combinator
/// `λf. (λx. f (λv. x x v)) (λx. f (λv. x x v))`.
pub fn z_combinator() -> TgtTerm {
    use TgtTerm as T;
    let half = || {
        T::lam(
            "%zx",
            T::app(
                T::var("%zf"),
                T::lam("%zv", T::app(T::app(T::var("%zx"), T::var("%zx")), T::var("%zv"))),
            ),
        )
    };
    T::lam("%zf", T::app(half(), half()))
}

/// `env` maps each enclosing recursive-type variable to the name of its
/// recursor: a function that returns the protect wrapper on `0` and the
/// confine wrapper on `1`.
fn wrapper(ty: &SrcType, dir: Dir, env: &mut Vec<(String, String)>) -> TgtTerm {
    use TgtTerm as T;
    let x = || T::var("%x");
    match ty {
        SrcType::Unit => match dir {
            Dir::Protect => T::lam("%x", x()),
            // The target has no unit eliminator; any value is coerced.
            Dir::Confine => T::lam("%x", T::Unit),
        },
        SrcType::Nat => T::lam("%x", T::ifz(x(), x(), x())),
        SrcType::Prod(a, b) => T::lam(
            "%p",
            T::pair(
                T::app(wrapper(a, dir, env), T::fst(T::var("%p"))),
                T::app(wrapper(b, dir, env), T::snd(T::var("%p"))),
            ),
        ),
        SrcType::Sum(a, b) => T::lam(
            "%s",
            T::case(
                T::var("%s"),
                "%x",
                T::inl(T::app(wrapper(a, dir, env), x())),
                "%x",
                T::inr(T::app(wrapper(b, dir, env), x())),
            ),
        ),
        SrcType::Arrow(a, b) => T::lam(
            "%f",
            T::lam(
                "%x",
                T::app(
                    wrapper(b, dir, env),
                    T::app(T::var("%f"), T::app(wrapper(a, dir.flip(), env), x())),
                ),
            ),
        ),
        SrcType::Mu(v, body) => {
            let r = format!("%r{}", env.len());
            env.push((v.to_string(), r.clone()));
            let p = wrapper(body, Dir::Protect, env);
            let c = wrapper(body, Dir::Confine, env);
            env.pop();
            let functional = T::lam(&r, T::lam("%sel", T::ifz(T::var("%sel"), p, c)));
            T::app(T::app(z_combinator(), functional), T::Lit(dir.selector()))
        }
        SrcType::Var(v) => {
            let (_, r) = env
                .iter()
                .rev()
                .find(|(w, _)| w == &**v)
                .expect("wrapper types are closed");
            T::app(T::var(r), T::Lit(dir.selector()))
        }
    }
}

pub fn compile(p: &SrcProgram, id: CompilerId) -> TgtProgram {
    let erased = erase(p.term());
    let term = match id {
        CompilerId::NoProtect => erased,
        CompilerId::Secure => TgtTerm::app(protect(p.ty()), erased),
        CompilerId::Backdoor => TgtTerm::pair(
            TgtTerm::app(protect(p.ty()), erased),
            TgtTerm::lam("%z", TgtTerm::write(Origin::Prog, TgtTerm::Lit(0))),
        ),
    };
    TgtProgram::new(term).expect("compiled programs are closed and Prog-labeled")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::srclang::syntax::parse_type_str;
    use crate::tgtlang::{eval, syntax::parse_tgt_str, trace_set_tgt, TgtContext};
    use crate::Bounds;

    fn ty(s: &str) -> SrcType {
        parse_type_str(s).unwrap()
    }

    fn run(t: &TgtTerm) -> String {
        eval::eval_trace_tgt(t, &[], &Bounds::default()).to_string()
    }

    #[test]
    fn erase_drops_annotations() {
        let p = SrcProgram::parse("(lam (x nat) x)").unwrap();
        assert_eq!(erase(p.term()), TgtTerm::lam("x", TgtTerm::var("x")));
        let u = ty("(mu X (+ unit X))");
        let f = SrcTerm::fold(u.clone(), SrcTerm::inl(u.unfold().unwrap(), SrcTerm::Unit));
        assert_eq!(erase(&f), TgtTerm::inl(TgtTerm::Unit));
    }

    #[test]
    fn protected_identity_on_nat() {
        let p = SrcProgram::parse("(lam (x nat) x)").unwrap();
        let wrapped = TgtTerm::app(protect(p.ty()), erase(p.term()));
        let ok = TgtTerm::write(Origin::Prog, TgtTerm::app(wrapped.clone(), TgtTerm::Lit(2)));
        assert_eq!(run(&ok), "[Out(2,prog)] term");
        let bad = TgtTerm::write(
            Origin::Prog,
            TgtTerm::app(wrapped, TgtTerm::pair(TgtTerm::Lit(0), TgtTerm::Lit(0))),
        );
        assert_eq!(run(&bad), "[] incomplete");
    }

    #[test]
    fn protect_unit_is_identity() {
        let t = TgtTerm::app(protect(&SrcType::Unit), TgtTerm::Unit);
        let w = parse_tgt_str("(app (lam y unit) (hole))", Origin::Ctx).unwrap().plug(&t);
        assert_eq!(run(&w), "[] term");
        let mut v = TgtTerm::app(protect(&SrcType::Unit), TgtTerm::Unit);
        let r = eval::run(&v, &[], &Bounds::default());
        assert_eq!(r.cut, None);
        v = TgtTerm::Unit;
        assert!(v.is_value());
    }

    #[test]
    fn secure_identity_in_context() {
        let p = SrcProgram::parse("(lam (x nat) x)").unwrap();
        let c = TgtContext::parse("(write (app (hole) (lit 2)))").unwrap();
        let ts = trace_set_tgt(&c, &compile(&p, CompilerId::Secure), &Bounds::default());
        assert_eq!(ts.to_string(), "{([Out(2,ctx)] term)}");
    }

    #[test]
    fn backdoor_leaks() {
        let p = SrcProgram::parse("(lam (x nat) x)").unwrap();
        let c = TgtContext::parse("(app (snd (hole)) unit)").unwrap();
        let ts = trace_set_tgt(&c, &compile(&p, CompilerId::Backdoor), &Bounds::default());
        assert_eq!(ts.to_string(), "{([Out(0,prog)] term)}");
    }

    #[test]
    fn recursive_wrappers_unroll_lazily() {
        // Nat lists: protect walks the list one level per use.
        let list = ty("(mu L (+ unit (* nat L)))");
        let v = parse_tgt_str("(inr (pair 2 (inr (pair 3 (inl unit)))))", Origin::Prog).unwrap();
        let w = parse_tgt_str(
            "(case (hole) (n unit) (c (seq (write (fst c)) (case (snd c) (n unit) (d (write (fst d)))))))",
            Origin::Prog,
        )
        .unwrap()
        .plug(&TgtTerm::app(protect(&list), v));
        assert_eq!(run(&w), "[Out(2,prog) Out(3,prog)] term");
        let bad = parse_tgt_str("(inr (pair 2 (inr (lam x x))))", Origin::Prog).unwrap();
        let w = TgtTerm::app(
            TgtTerm::lam("%q", TgtTerm::write(Origin::Prog, TgtTerm::Lit(1))),
            TgtTerm::app(confine(&list), bad),
        );
        // Eager pair rebuilding reaches the ill-formed tail.
        assert_eq!(run(&w), "[] incomplete");
    }

    #[test]
    fn compiler_names_round_trip() {
        for c in CompilerId::ALL {
            assert_eq!(c.as_str().parse::<CompilerId>().unwrap(), c);
        }
        assert!("fast".parse::<CompilerId>().is_err());
    }
}
