//! Parenthesized syntax for source types and terms.
//!
//! I/O nodes may carry an explicit label, `(read ctx)` or `(write prog e)`;
//! unlabeled ones take the default origin supplied by the caller. Sugar:
//! `(seq e ...)`, `(let (x T e1) e2)`, `(discard T e)`, `(omega T)`, and
//! `(fix A B f)`; applications may be n-ary.

use lexpr::Value;

use super::derived;
use super::term::SrcTerm;
use super::types::SrcType;
use crate::sexp::{self, arity, err, head, list, list_of, nat, num, sym, symbol};
use crate::trace::Origin;
use crate::Error;

const RESERVED: &[&str] = &["unit", "nat", "prog", "ctx", "_", "hole"];

pub fn parse_type_str(src: &str) -> Result<SrcType, Error> {
    parse_type(&sexp::parse(src)?)
}

pub fn parse_term_str(src: &str, default: Origin) -> Result<SrcTerm, Error> {
    parse_term(&sexp::parse(src)?, default)
}

fn ident(v: &Value) -> Result<&str, Error> {
    match symbol(v) {
        Some(s) if !RESERVED.contains(&s) => Ok(s),
        _ => err("expected an identifier", v),
    }
}

pub fn parse_type(v: &Value) -> Result<SrcType, Error> {
    if let Some(s) = symbol(v) {
        return Ok(match s {
            "unit" => SrcType::Unit,
            "nat" => SrcType::Nat,
            _ => SrcType::var(ident(v)?),
        });
    }
    let (h, args) = head(v)?;
    let two = |args: &[&Value]| -> Result<(SrcType, SrcType), Error> {
        let a = arity(h, args, 2, v)?;
        Ok((parse_type(a[0])?, parse_type(a[1])?))
    };
    match h {
        "->" => two(&args).map(|(a, b)| SrcType::arrow(a, b)),
        "*" => two(&args).map(|(a, b)| SrcType::prod(a, b)),
        "+" => two(&args).map(|(a, b)| SrcType::sum(a, b)),
        "mu" => {
            let a = arity("mu", &args, 2, v)?;
            Ok(SrcType::mu(ident(a[0])?, parse_type(a[1])?))
        }
        _ => err("unknown type former", v),
    }
}

fn origin_label(v: &Value) -> Option<Origin> {
    match symbol(v) {
        Some("prog") => Some(Origin::Prog),
        Some("ctx") => Some(Origin::Ctx),
        _ => None,
    }
}

/// `(x e)` branch of a case.
fn branch(v: &Value, default: Origin) -> Result<(String, SrcTerm), Error> {
    let items = list(v)?;
    let [x, e] = items.as_slice() else {
        return err("expected (x e)", v);
    };
    Ok((ident(x)?.to_string(), parse_term(e, default)?))
}

pub fn parse_term(v: &Value, default: Origin) -> Result<SrcTerm, Error> {
    if let Some(s) = symbol(v) {
        return match s {
            "unit" => Ok(SrcTerm::Unit),
            _ => Ok(SrcTerm::var(ident(v)?)),
        };
    }
    if v.is_number() {
        return Ok(SrcTerm::Lit(nat(v)?));
    }
    let (h, args) = head(v)?;
    let t = |i: usize| parse_term(args[i], default);
    match h {
        "lam" => {
            arity("lam", &args, 2, v)?;
            let binder = list(args[0])?;
            let [x, ty] = binder.as_slice() else {
                return err("expected (x T)", args[0]);
            };
            Ok(SrcTerm::lam(ident(x)?, parse_type(ty)?, t(1)?))
        }
        "app" => {
            if args.len() < 2 {
                return err("`app` expects at least 2 arguments", v);
            }
            let mut acc = t(0)?;
            for i in 1..args.len() {
                acc = SrcTerm::app(acc, t(i)?);
            }
            Ok(acc)
        }
        "lit" => Ok(SrcTerm::Lit(nat(arity("lit", &args, 1, v)?[0])?)),
        "succ" => {
            arity("succ", &args, 1, v)?;
            Ok(SrcTerm::succ(t(0)?))
        }
        "ifz" => {
            arity("ifz", &args, 3, v)?;
            Ok(SrcTerm::ifz(t(0)?, t(1)?, t(2)?))
        }
        "pair" => {
            arity("pair", &args, 2, v)?;
            Ok(SrcTerm::pair(t(0)?, t(1)?))
        }
        "fst" => {
            arity("fst", &args, 1, v)?;
            Ok(SrcTerm::fst(t(0)?))
        }
        "snd" => {
            arity("snd", &args, 1, v)?;
            Ok(SrcTerm::snd(t(0)?))
        }
        "inl" | "inr" => {
            arity(h, &args, 2, v)?;
            let ty = parse_type(args[0])?;
            Ok(if h == "inl" {
                SrcTerm::inl(ty, t(1)?)
            } else {
                SrcTerm::inr(ty, t(1)?)
            })
        }
        "case" => {
            arity("case", &args, 3, v)?;
            let (x, l) = branch(args[1], default)?;
            let (y, r) = branch(args[2], default)?;
            Ok(SrcTerm::case(t(0)?, &x, l, &y, r))
        }
        "fold" => {
            arity("fold", &args, 2, v)?;
            Ok(SrcTerm::fold(parse_type(args[0])?, t(1)?))
        }
        "unfold" => {
            arity("unfold", &args, 1, v)?;
            Ok(SrcTerm::unfold(t(0)?))
        }
        "read" => match args.as_slice() {
            [] => Ok(SrcTerm::Read(default)),
            [o] => match origin_label(o) {
                Some(o) => Ok(SrcTerm::Read(o)),
                None => err("expected `prog` or `ctx`", o),
            },
            _ => err("`read` expects at most a label", v),
        },
        "write" => match args.as_slice() {
            [e] => Ok(SrcTerm::write(default, parse_term(e, default)?)),
            [o, e] => match origin_label(o) {
                Some(o) => Ok(SrcTerm::write(o, parse_term(e, default)?)),
                None => err("expected `prog` or `ctx`", o),
            },
            _ => err("`write` expects a label and/or an argument", v),
        },
        "hole" => {
            arity("hole", &args, 0, v)?;
            Ok(SrcTerm::Hole)
        }
        "seq" => {
            let Some((last, init)) = args.split_last() else {
                return err("`seq` expects at least one term", v);
            };
            let mut acc = parse_term(last, default)?;
            for e in init.iter().rev() {
                acc = derived::seq(parse_term(e, default)?, acc);
            }
            Ok(acc)
        }
        "let" => {
            arity("let", &args, 2, v)?;
            let binder = list(args[0])?;
            let [x, ty, e1] = binder.as_slice() else {
                return err("expected (x T e)", args[0]);
            };
            Ok(derived::let_in(
                ident(x)?,
                parse_type(ty)?,
                parse_term(e1, default)?,
                t(1)?,
            ))
        }
        "discard" => {
            arity("discard", &args, 2, v)?;
            Ok(derived::discard(parse_type(args[0])?, t(1)?))
        }
        "omega" => {
            arity("omega", &args, 1, v)?;
            Ok(derived::omega(&parse_type(args[0])?))
        }
        "fix" => {
            arity("fix", &args, 3, v)?;
            let a = parse_type(args[0])?;
            let b = parse_type(args[1])?;
            Ok(SrcTerm::app(derived::fix(&a, &b), t(2)?))
        }
        _ => err("unknown term former", v),
    }
}

pub fn type_to_sexp(t: &SrcType) -> Value {
    match t {
        SrcType::Unit => sym("unit"),
        SrcType::Nat => sym("nat"),
        SrcType::Prod(a, b) => list_of([sym("*"), type_to_sexp(a), type_to_sexp(b)]),
        SrcType::Sum(a, b) => list_of([sym("+"), type_to_sexp(a), type_to_sexp(b)]),
        SrcType::Arrow(a, b) => list_of([sym("->"), type_to_sexp(a), type_to_sexp(b)]),
        SrcType::Mu(x, b) => list_of([sym("mu"), sym(x), type_to_sexp(b)]),
        SrcType::Var(x) => sym(x),
    }
}

/// Canonical, fully labeled form.
pub fn term_to_sexp(t: &SrcTerm) -> Value {
    let f = term_to_sexp;
    match t {
        SrcTerm::Var(x) => sym(x),
        SrcTerm::Lam(x, ty, b) => list_of([
            sym("lam"),
            list_of([sym(x), type_to_sexp(ty)]),
            f(b),
        ]),
        SrcTerm::App(a, b) => list_of([sym("app"), f(a), f(b)]),
        SrcTerm::Unit => sym("unit"),
        SrcTerm::Lit(n) => list_of([sym("lit"), num(*n)]),
        SrcTerm::Succ(e) => list_of([sym("succ"), f(e)]),
        SrcTerm::Ifz(a, b, c) => list_of([sym("ifz"), f(a), f(b), f(c)]),
        SrcTerm::Pair(a, b) => list_of([sym("pair"), f(a), f(b)]),
        SrcTerm::Fst(e) => list_of([sym("fst"), f(e)]),
        SrcTerm::Snd(e) => list_of([sym("snd"), f(e)]),
        SrcTerm::Inl(ty, e) => list_of([sym("inl"), type_to_sexp(ty), f(e)]),
        SrcTerm::Inr(ty, e) => list_of([sym("inr"), type_to_sexp(ty), f(e)]),
        SrcTerm::Case(e, x, l, y, r) => list_of([
            sym("case"),
            f(e),
            list_of([sym(x), f(l)]),
            list_of([sym(y), f(r)]),
        ]),
        SrcTerm::Fold(ty, e) => list_of([sym("fold"), type_to_sexp(ty), f(e)]),
        SrcTerm::Unfold(e) => list_of([sym("unfold"), f(e)]),
        SrcTerm::Read(o) => list_of([sym("read"), sym(o.as_str())]),
        SrcTerm::Write(o, e) => list_of([sym("write"), sym(o.as_str()), f(e)]),
        SrcTerm::Hole => list_of([sym("hole")]),
    }
}

pub fn print_term(t: &SrcTerm) -> String {
    term_to_sexp(t).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_identity() {
        let t = parse_term_str("(lam (x nat) x)", Origin::Prog).unwrap();
        assert_eq!(t, SrcTerm::lam("x", SrcType::Nat, SrcTerm::var("x")));
    }

    #[test]
    fn labels_default_and_explicit() {
        let t = parse_term_str("(write (read ctx))", Origin::Prog).unwrap();
        assert_eq!(t.io_labels(), vec![Origin::Prog, Origin::Ctx]);
        assert_eq!(print_term(&t), "(write prog (read ctx))");
    }

    #[test]
    fn types() {
        let t = parse_type_str("(mu X (+ unit (* nat X)))").unwrap();
        assert_eq!(type_to_sexp(&t).to_string(), "(mu X (+ unit (* nat X)))");
        assert!(parse_type_str("(=> nat nat)").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let src = "(case (inl (+ nat unit) (lit 1)) (x (write ctx x)) (y unit))";
        let t = parse_term_str(src, Origin::Ctx).unwrap();
        assert_eq!(print_term(&t), src);
        assert_eq!(parse_term_str(&print_term(&t), Origin::Prog).unwrap(), t);
    }

    #[test]
    fn reserved_identifiers_rejected() {
        assert!(parse_term_str("(lam (nat nat) nat)", Origin::Prog).is_err());
        assert!(parse_term_str("(frob 1)", Origin::Prog).is_err());
    }
}
