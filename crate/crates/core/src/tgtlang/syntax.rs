//! Parenthesized syntax for target terms: the source syntax without type
//! annotations, `(lam x e)`, `(inl e)`, `(inr e)`, and no fold/unfold.
//! `(seq e ...)`, `(let (x e1) e2)` and `(omega)` are accepted as sugar.

use lexpr::Value;

use super::term::TgtTerm;
use crate::sexp::{self, arity, err, head, list, list_of, nat, num, sym, symbol};
use crate::trace::Origin;
use crate::Error;

const RESERVED: &[&str] = &["unit", "prog", "ctx", "_", "hole"];

pub fn parse_tgt_str(src: &str, default: Origin) -> Result<TgtTerm, Error> {
    parse_tgt(&sexp::parse(src)?, default)
}

fn ident(v: &Value) -> Result<&str, Error> {
    match symbol(v) {
        Some(s) if !RESERVED.contains(&s) => Ok(s),
        _ => err("expected an identifier", v),
    }
}

fn origin_label(v: &Value) -> Option<Origin> {
    match symbol(v) {
        Some("prog") => Some(Origin::Prog),
        Some("ctx") => Some(Origin::Ctx),
        _ => None,
    }
}

fn branch(v: &Value, default: Origin) -> Result<(String, TgtTerm), Error> {
    let items = list(v)?;
    let [x, e] = items.as_slice() else {
        return err("expected (x e)", v);
    };
    Ok((ident(x)?.to_string(), parse_tgt(e, default)?))
}

pub fn parse_tgt(v: &Value, default: Origin) -> Result<TgtTerm, Error> {
    if let Some(s) = symbol(v) {
        return match s {
            "unit" => Ok(TgtTerm::Unit),
            _ => Ok(TgtTerm::var(ident(v)?)),
        };
    }
    if v.is_number() {
        return Ok(TgtTerm::Lit(nat(v)?));
    }
    let (h, args) = head(v)?;
    let t = |i: usize| parse_tgt(args[i], default);
    match h {
        "lam" => {
            arity("lam", &args, 2, v)?;
            Ok(TgtTerm::lam(ident(args[0])?, t(1)?))
        }
        "app" => {
            if args.len() < 2 {
                return err("`app` expects at least 2 arguments", v);
            }
            let mut acc = t(0)?;
            for i in 1..args.len() {
                acc = TgtTerm::app(acc, t(i)?);
            }
            Ok(acc)
        }
        "lit" => Ok(TgtTerm::Lit(nat(arity("lit", &args, 1, v)?[0])?)),
        "succ" | "fst" | "snd" | "inl" | "inr" => {
            arity(h, &args, 1, v)?;
            let e = t(0)?;
            Ok(match h {
                "succ" => TgtTerm::succ(e),
                "fst" => TgtTerm::fst(e),
                "snd" => TgtTerm::snd(e),
                "inl" => TgtTerm::inl(e),
                _ => TgtTerm::inr(e),
            })
        }
        "ifz" => {
            arity("ifz", &args, 3, v)?;
            Ok(TgtTerm::ifz(t(0)?, t(1)?, t(2)?))
        }
        "pair" => {
            arity("pair", &args, 2, v)?;
            Ok(TgtTerm::pair(t(0)?, t(1)?))
        }
        "case" => {
            arity("case", &args, 3, v)?;
            let (x, l) = branch(args[1], default)?;
            let (y, r) = branch(args[2], default)?;
            Ok(TgtTerm::case(t(0)?, &x, l, &y, r))
        }
        "read" => match args.as_slice() {
            [] => Ok(TgtTerm::Read(default)),
            [o] => match origin_label(o) {
                Some(o) => Ok(TgtTerm::Read(o)),
                None => err("expected `prog` or `ctx`", o),
            },
            _ => err("`read` expects at most a label", v),
        },
        "write" => match args.as_slice() {
            [e] => Ok(TgtTerm::write(default, parse_tgt(e, default)?)),
            [o, e] => match origin_label(o) {
                Some(o) => Ok(TgtTerm::write(o, parse_tgt(e, default)?)),
                None => err("expected `prog` or `ctx`", o),
            },
            _ => err("`write` expects a label and/or an argument", v),
        },
        "hole" => {
            arity("hole", &args, 0, v)?;
            Ok(TgtTerm::Hole)
        }
        "seq" => {
            let Some((last, init)) = args.split_last() else {
                return err("`seq` expects at least one term", v);
            };
            let mut acc = parse_tgt(last, default)?;
            for e in init.iter().rev() {
                acc = TgtTerm::app(TgtTerm::lam("%_", acc), parse_tgt(e, default)?);
            }
            Ok(acc)
        }
        "let" => {
            arity("let", &args, 2, v)?;
            let binder = list(args[0])?;
            let [x, e1] = binder.as_slice() else {
                return err("expected (x e)", args[0]);
            };
            Ok(TgtTerm::app(TgtTerm::lam(ident(x)?, t(1)?), parse_tgt(e1, default)?))
        }
        "omega" => {
            arity("omega", &args, 0, v)?;
            Ok(TgtTerm::omega())
        }
        _ => err("unknown term former", v),
    }
}

/// Canonical, fully labeled form.
pub fn tgt_to_sexp(t: &TgtTerm) -> Value {
    let f = tgt_to_sexp;
    match t {
        TgtTerm::Var(x) => sym(x),
        TgtTerm::Lam(x, b) => list_of([sym("lam"), sym(x), f(b)]),
        TgtTerm::App(a, b) => list_of([sym("app"), f(a), f(b)]),
        TgtTerm::Unit => sym("unit"),
        TgtTerm::Lit(n) => list_of([sym("lit"), num(*n)]),
        TgtTerm::Succ(e) => list_of([sym("succ"), f(e)]),
        TgtTerm::Ifz(a, b, c) => list_of([sym("ifz"), f(a), f(b), f(c)]),
        TgtTerm::Pair(a, b) => list_of([sym("pair"), f(a), f(b)]),
        TgtTerm::Fst(e) => list_of([sym("fst"), f(e)]),
        TgtTerm::Snd(e) => list_of([sym("snd"), f(e)]),
        TgtTerm::Inl(e) => list_of([sym("inl"), f(e)]),
        TgtTerm::Inr(e) => list_of([sym("inr"), f(e)]),
        TgtTerm::Case(e, x, l, y, r) => list_of([
            sym("case"),
            f(e),
            list_of([sym(x), f(l)]),
            list_of([sym(y), f(r)]),
        ]),
        TgtTerm::Read(o) => list_of([sym("read"), sym(o.as_str())]),
        TgtTerm::Write(o, e) => list_of([sym("write"), sym(o.as_str()), f(e)]),
        TgtTerm::Hole => list_of([sym("hole")]),
    }
}

pub fn print_tgt(t: &TgtTerm) -> String {
    tgt_to_sexp(t).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let src = "(case (inl (lit 1)) (x (write ctx x)) (y (app (hole) (read ctx))))";
        let t = parse_tgt_str(src, Origin::Ctx).unwrap();
        assert_eq!(print_tgt(&t), src);
    }

    #[test]
    fn no_type_annotations() {
        assert!(parse_tgt_str("(lam (x nat) x)", Origin::Ctx).is_err());
        assert!(parse_tgt_str("(fold 1)", Origin::Ctx).is_err());
        assert_eq!(
            parse_tgt_str("(lam x x)", Origin::Ctx).unwrap(),
            TgtTerm::lam("x", TgtTerm::var("x"))
        );
    }
}
