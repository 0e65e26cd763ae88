//! Derived forms: sequencing, let, discard, divergence, and a typed fixpoint
//! built from iso-recursive types.
//!
//! Generated binders use names starting with `%`, which never clash with
//! identifiers written in term files or produced by enumeration.

use super::term::SrcTerm;
use super::types::SrcType;

/// `e1; e2` for `e1 : unit`.
pub fn seq(e1: SrcTerm, e2: SrcTerm) -> SrcTerm {
    SrcTerm::app(SrcTerm::lam("%_", SrcType::Unit, e2), e1)
}

/// `let x : ty = e1 in e2`.
pub fn let_in(x: &str, ty: SrcType, e1: SrcTerm, e2: SrcTerm) -> SrcTerm {
    SrcTerm::app(SrcTerm::lam(x, ty, e2), e1)
}

/// Evaluates `e : ty` for its effects and returns unit.
pub fn discard(ty: SrcType, e: SrcTerm) -> SrcTerm {
    SrcTerm::app(SrcTerm::lam("%_", ty, SrcTerm::Unit), e)
}

/// `μW. W → ty`, the type of self-applicable functions returning `ty`.
fn self_app_type(ty: &SrcType) -> SrcType {
    SrcType::mu("%W", SrcType::arrow(SrcType::var("%W"), ty.clone()))
}

/// A closed diverging term of type `ty`:
/// `(λx. (unfold x) x) (fold (λx. (unfold x) x))`.
pub fn omega(ty: &SrcType) -> SrcTerm {
    let r = self_app_type(ty);
    let body = || {
        SrcTerm::lam(
            "%x",
            r.clone(),
            SrcTerm::app(SrcTerm::unfold(SrcTerm::var("%x")), SrcTerm::var("%x")),
        )
    };
    SrcTerm::app(body(), SrcTerm::fold(r.clone(), body()))
}

/// The call-by-value fixpoint combinator at `a → b`, of type
/// `((a → b) → (a → b)) → (a → b)`.
pub fn fix(a: &SrcType, b: &SrcType) -> SrcTerm {
    let fun = SrcType::arrow(a.clone(), b.clone());
    let r = self_app_type(&fun);
    let functional = SrcType::arrow(fun.clone(), fun.clone());
    let half = || {
        SrcTerm::lam(
            "%x",
            r.clone(),
            SrcTerm::app(
                SrcTerm::var("%f"),
                SrcTerm::lam(
                    "%y",
                    a.clone(),
                    SrcTerm::app(
                        SrcTerm::app(SrcTerm::unfold(SrcTerm::var("%x")), SrcTerm::var("%x")),
                        SrcTerm::var("%y"),
                    ),
                ),
            ),
        )
    };
    SrcTerm::lam(
        "%f",
        functional,
        SrcTerm::app(half(), SrcTerm::fold(r.clone(), half())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::srclang::{eval, typecheck, Env};
    use crate::Bounds;

    #[test]
    fn omega_typechecks_and_diverges() {
        let w = omega(&SrcType::Unit);
        assert_eq!(typecheck(&w, &Env::new(), None).unwrap(), SrcType::Unit);
        let r = eval::run(&w, &[], &Bounds::default());
        assert_eq!(r.obs.to_string(), "[] incomplete");
        assert_eq!(r.cut, Some(crate::machine::Cut::Diverged));
    }

    #[test]
    fn fix_computes_countdown() {
        // f n = ifz n then 0 else f (n - 1) via succ-wrapping: counts up to
        // the cap and stops at 0.
        let nat = SrcType::Nat;
        let step = SrcTerm::lam(
            "g",
            SrcType::arrow(nat.clone(), nat.clone()),
            SrcTerm::lam(
                "n",
                nat.clone(),
                SrcTerm::ifz(
                    SrcTerm::var("n"),
                    SrcTerm::Lit(0),
                    SrcTerm::app(SrcTerm::var("g"), SrcTerm::succ(SrcTerm::var("n"))),
                ),
            ),
        );
        let prog = SrcTerm::write(
            crate::trace::Origin::Prog,
            SrcTerm::app(SrcTerm::app(fix(&nat, &nat), step), SrcTerm::Lit(1)),
        );
        assert_eq!(typecheck(&prog, &Env::new(), None).unwrap(), SrcType::Unit);
        assert_eq!(
            eval::eval_trace(&prog, &[], &Bounds::default()).to_string(),
            "[Out(0,prog)] term"
        );
    }
}
