use std::sync::Arc;

use super::types::{Name, SrcType};
use crate::trace::Origin;

/// Shared type annotation.
pub type Ty = Arc<SrcType>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SrcTerm {
    Var(Name),
    Lam(Name, Ty, Box<SrcTerm>),
    App(Box<SrcTerm>, Box<SrcTerm>),
    Unit,
    Lit(u32),
    Succ(Box<SrcTerm>),
    Ifz(Box<SrcTerm>, Box<SrcTerm>, Box<SrcTerm>),
    Pair(Box<SrcTerm>, Box<SrcTerm>),
    Fst(Box<SrcTerm>),
    Snd(Box<SrcTerm>),
    /// Annotated with the whole sum type.
    Inl(Ty, Box<SrcTerm>),
    Inr(Ty, Box<SrcTerm>),
    Case(Box<SrcTerm>, Name, Box<SrcTerm>, Name, Box<SrcTerm>),
    /// Annotated with the recursive type being introduced.
    Fold(Ty, Box<SrcTerm>),
    Unfold(Box<SrcTerm>),
    Read(Origin),
    Write(Origin, Box<SrcTerm>),
    Hole,
}

impl SrcTerm {
    pub fn var(x: &str) -> Self {
        SrcTerm::Var(x.into())
    }

    pub fn lam(x: &str, ty: SrcType, body: SrcTerm) -> Self {
        SrcTerm::Lam(x.into(), Arc::new(ty), Box::new(body))
    }

    pub fn app(f: SrcTerm, a: SrcTerm) -> Self {
        SrcTerm::App(Box::new(f), Box::new(a))
    }

    pub fn succ(e: SrcTerm) -> Self {
        SrcTerm::Succ(Box::new(e))
    }

    pub fn ifz(c: SrcTerm, z: SrcTerm, s: SrcTerm) -> Self {
        SrcTerm::Ifz(Box::new(c), Box::new(z), Box::new(s))
    }

    pub fn pair(a: SrcTerm, b: SrcTerm) -> Self {
        SrcTerm::Pair(Box::new(a), Box::new(b))
    }

    pub fn fst(e: SrcTerm) -> Self {
        SrcTerm::Fst(Box::new(e))
    }

    pub fn snd(e: SrcTerm) -> Self {
        SrcTerm::Snd(Box::new(e))
    }

    pub fn inl(sum: SrcType, e: SrcTerm) -> Self {
        SrcTerm::Inl(Arc::new(sum), Box::new(e))
    }

    pub fn inr(sum: SrcType, e: SrcTerm) -> Self {
        SrcTerm::Inr(Arc::new(sum), Box::new(e))
    }

    pub fn case(e: SrcTerm, x: &str, l: SrcTerm, y: &str, r: SrcTerm) -> Self {
        SrcTerm::Case(Box::new(e), x.into(), Box::new(l), y.into(), Box::new(r))
    }

    pub fn fold(mu: SrcType, e: SrcTerm) -> Self {
        SrcTerm::Fold(Arc::new(mu), Box::new(e))
    }

    pub fn unfold(e: SrcTerm) -> Self {
        SrcTerm::Unfold(Box::new(e))
    }

    pub fn write(origin: Origin, e: SrcTerm) -> Self {
        SrcTerm::Write(origin, Box::new(e))
    }

    pub fn is_value(&self) -> bool {
        match self {
            SrcTerm::Lam(..) | SrcTerm::Unit | SrcTerm::Lit(_) => true,
            SrcTerm::Pair(a, b) => a.is_value() && b.is_value(),
            SrcTerm::Inl(_, e) | SrcTerm::Inr(_, e) | SrcTerm::Fold(_, e) => e.is_value(),
            _ => false,
        }
    }

    /// Direct subterms, left to right.
    pub fn children(&self) -> Vec<&SrcTerm> {
        match self {
            SrcTerm::Var(_) | SrcTerm::Unit | SrcTerm::Lit(_) | SrcTerm::Read(_) | SrcTerm::Hole => vec![],
            SrcTerm::Lam(_, _, b) => vec![b],
            SrcTerm::Succ(e)
            | SrcTerm::Fst(e)
            | SrcTerm::Snd(e)
            | SrcTerm::Inl(_, e)
            | SrcTerm::Inr(_, e)
            | SrcTerm::Fold(_, e)
            | SrcTerm::Unfold(e)
            | SrcTerm::Write(_, e) => vec![e],
            SrcTerm::App(a, b) | SrcTerm::Pair(a, b) => vec![a, b],
            SrcTerm::Ifz(a, b, c) => vec![a, b, c],
            SrcTerm::Case(e, _, l, _, r) => vec![e, l, r],
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(SrcTerm::size).sum::<usize>()
    }

    pub fn hole_count(&self) -> usize {
        match self {
            SrcTerm::Hole => 1,
            _ => self.children().into_iter().map(SrcTerm::hole_count).sum(),
        }
    }

    /// Origins of read/write nodes in left-to-right order.
    pub fn io_labels(&self) -> Vec<Origin> {
        let mut out = Vec::new();
        fn go(t: &SrcTerm, out: &mut Vec<Origin>) {
            match t {
                SrcTerm::Read(o) => out.push(*o),
                SrcTerm::Write(o, _) => out.push(*o),
                _ => {}
            }
            for c in t.children() {
                go(c, out);
            }
        }
        go(self, &mut out);
        out
    }

    pub fn free_vars(&self) -> Vec<Name> {
        fn go(t: &SrcTerm, bound: &mut Vec<Name>, out: &mut Vec<Name>) {
            match t {
                SrcTerm::Var(x) => {
                    if !bound.contains(x) && !out.contains(x) {
                        out.push(x.clone());
                    }
                }
                SrcTerm::Lam(x, _, b) => {
                    bound.push(x.clone());
                    go(b, bound, out);
                    bound.pop();
                }
                SrcTerm::Case(e, x, l, y, r) => {
                    go(e, bound, out);
                    bound.push(x.clone());
                    go(l, bound, out);
                    bound.pop();
                    bound.push(y.clone());
                    go(r, bound, out);
                    bound.pop();
                }
                _ => {
                    for c in t.children() {
                        go(c, bound, out);
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// `self[x := v]` for closed `v`. Closed values cannot be captured, so no
    /// renaming is needed.
    pub fn subst(&mut self, x: &str, v: &SrcTerm) {
        match self {
            SrcTerm::Var(y) => {
                if &**y == x {
                    *self = v.clone();
                }
            }
            SrcTerm::Lam(y, _, b) => {
                if &**y != x {
                    b.subst(x, v);
                }
            }
            SrcTerm::Case(e, y, l, z, r) => {
                e.subst(x, v);
                if &**y != x {
                    l.subst(x, v);
                }
                if &**z != x {
                    r.subst(x, v);
                }
            }
            SrcTerm::Unit | SrcTerm::Lit(_) | SrcTerm::Read(_) | SrcTerm::Hole => {}
            SrcTerm::Succ(e)
            | SrcTerm::Fst(e)
            | SrcTerm::Snd(e)
            | SrcTerm::Inl(_, e)
            | SrcTerm::Inr(_, e)
            | SrcTerm::Fold(_, e)
            | SrcTerm::Unfold(e)
            | SrcTerm::Write(_, e) => e.subst(x, v),
            SrcTerm::App(a, b) | SrcTerm::Pair(a, b) => {
                a.subst(x, v);
                b.subst(x, v);
            }
            SrcTerm::Ifz(a, b, c) => {
                a.subst(x, v);
                b.subst(x, v);
                c.subst(x, v);
            }
        }
    }

    /// Replaces every hole with `p`. `p` is closed, so plugging under
    /// binders cannot capture.
    pub fn plug(&self, p: &SrcTerm) -> SrcTerm {
        let mut out = self.clone();
        out.fill_hole(p);
        out
    }

    fn fill_hole(&mut self, p: &SrcTerm) {
        match self {
            SrcTerm::Hole => *self = p.clone(),
            SrcTerm::Var(_) | SrcTerm::Unit | SrcTerm::Lit(_) | SrcTerm::Read(_) => {}
            SrcTerm::Lam(_, _, e)
            | SrcTerm::Succ(e)
            | SrcTerm::Fst(e)
            | SrcTerm::Snd(e)
            | SrcTerm::Inl(_, e)
            | SrcTerm::Inr(_, e)
            | SrcTerm::Fold(_, e)
            | SrcTerm::Unfold(e)
            | SrcTerm::Write(_, e) => e.fill_hole(p),
            SrcTerm::App(a, b) | SrcTerm::Pair(a, b) => {
                a.fill_hole(p);
                b.fill_hole(p);
            }
            SrcTerm::Ifz(a, b, c) | SrcTerm::Case(a, _, b, _, c) => {
                a.fill_hole(p);
                b.fill_hole(p);
                c.fill_hole(p);
            }
        }
    }
}
