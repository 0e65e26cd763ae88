use crate::srclang::Name;
use crate::trace::Origin;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TgtTerm {
    Var(Name),
    Lam(Name, Box<TgtTerm>),
    App(Box<TgtTerm>, Box<TgtTerm>),
    Unit,
    Lit(u32),
    Succ(Box<TgtTerm>),
    Ifz(Box<TgtTerm>, Box<TgtTerm>, Box<TgtTerm>),
    Pair(Box<TgtTerm>, Box<TgtTerm>),
    Fst(Box<TgtTerm>),
    Snd(Box<TgtTerm>),
    Inl(Box<TgtTerm>),
    Inr(Box<TgtTerm>),
    Case(Box<TgtTerm>, Name, Box<TgtTerm>, Name, Box<TgtTerm>),
    Read(Origin),
    Write(Origin, Box<TgtTerm>),
    Hole,
}

impl TgtTerm {
    pub fn var(x: &str) -> Self {
        TgtTerm::Var(x.into())
    }

    pub fn lam(x: &str, body: TgtTerm) -> Self {
        TgtTerm::Lam(x.into(), Box::new(body))
    }

    pub fn app(f: TgtTerm, a: TgtTerm) -> Self {
        TgtTerm::App(Box::new(f), Box::new(a))
    }

    pub fn succ(e: TgtTerm) -> Self {
        TgtTerm::Succ(Box::new(e))
    }

    pub fn ifz(c: TgtTerm, z: TgtTerm, s: TgtTerm) -> Self {
        TgtTerm::Ifz(Box::new(c), Box::new(z), Box::new(s))
    }

    pub fn pair(a: TgtTerm, b: TgtTerm) -> Self {
        TgtTerm::Pair(Box::new(a), Box::new(b))
    }

    pub fn fst(e: TgtTerm) -> Self {
        TgtTerm::Fst(Box::new(e))
    }

    pub fn snd(e: TgtTerm) -> Self {
        TgtTerm::Snd(Box::new(e))
    }

    pub fn inl(e: TgtTerm) -> Self {
        TgtTerm::Inl(Box::new(e))
    }

    pub fn inr(e: TgtTerm) -> Self {
        TgtTerm::Inr(Box::new(e))
    }

    pub fn case(e: TgtTerm, x: &str, l: TgtTerm, y: &str, r: TgtTerm) -> Self {
        TgtTerm::Case(Box::new(e), x.into(), Box::new(l), y.into(), Box::new(r))
    }

    pub fn write(origin: Origin, e: TgtTerm) -> Self {
        TgtTerm::Write(origin, Box::new(e))
    }

    /// `(λx. x x) (λx. x x)`.
    pub fn omega() -> Self {
        let half = || TgtTerm::lam("%x", TgtTerm::app(TgtTerm::var("%x"), TgtTerm::var("%x")));
        TgtTerm::app(half(), half())
    }

    pub fn is_value(&self) -> bool {
        match self {
            TgtTerm::Lam(..) | TgtTerm::Unit | TgtTerm::Lit(_) => true,
            TgtTerm::Pair(a, b) => a.is_value() && b.is_value(),
            TgtTerm::Inl(e) | TgtTerm::Inr(e) => e.is_value(),
            _ => false,
        }
    }

    pub fn children(&self) -> Vec<&TgtTerm> {
        match self {
            TgtTerm::Var(_) | TgtTerm::Unit | TgtTerm::Lit(_) | TgtTerm::Read(_) | TgtTerm::Hole => vec![],
            TgtTerm::Lam(_, b) => vec![b],
            TgtTerm::Succ(e)
            | TgtTerm::Fst(e)
            | TgtTerm::Snd(e)
            | TgtTerm::Inl(e)
            | TgtTerm::Inr(e)
            | TgtTerm::Write(_, e) => vec![e],
            TgtTerm::App(a, b) | TgtTerm::Pair(a, b) => vec![a, b],
            TgtTerm::Ifz(a, b, c) => vec![a, b, c],
            TgtTerm::Case(e, _, l, _, r) => vec![e, l, r],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(TgtTerm::size).sum::<usize>()
    }

    pub fn hole_count(&self) -> usize {
        match self {
            TgtTerm::Hole => 1,
            _ => self.children().into_iter().map(TgtTerm::hole_count).sum(),
        }
    }

    pub fn io_labels(&self) -> Vec<Origin> {
        let mut out = Vec::new();
        fn go(t: &TgtTerm, out: &mut Vec<Origin>) {
            match t {
                TgtTerm::Read(o) | TgtTerm::Write(o, _) => out.push(*o),
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
        fn go(t: &TgtTerm, bound: &mut Vec<Name>, out: &mut Vec<Name>) {
            match t {
                TgtTerm::Var(x) => {
                    if !bound.contains(x) && !out.contains(x) {
                        out.push(x.clone());
                    }
                }
                TgtTerm::Lam(x, b) => {
                    bound.push(x.clone());
                    go(b, bound, out);
                    bound.pop();
                }
                TgtTerm::Case(e, x, l, y, r) => {
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

    /// `self[x := v]` for closed `v`.
    pub fn subst(&mut self, x: &str, v: &TgtTerm) {
        match self {
            TgtTerm::Var(y) => {
                if &**y == x {
                    *self = v.clone();
                }
            }
            TgtTerm::Lam(y, b) => {
                if &**y != x {
                    b.subst(x, v);
                }
            }
            TgtTerm::Case(e, y, l, z, r) => {
                e.subst(x, v);
                if &**y != x {
                    l.subst(x, v);
                }
                if &**z != x {
                    r.subst(x, v);
                }
            }
            TgtTerm::Unit | TgtTerm::Lit(_) | TgtTerm::Read(_) | TgtTerm::Hole => {}
            TgtTerm::Succ(e)
            | TgtTerm::Fst(e)
            | TgtTerm::Snd(e)
            | TgtTerm::Inl(e)
            | TgtTerm::Inr(e)
            | TgtTerm::Write(_, e) => e.subst(x, v),
            TgtTerm::App(a, b) | TgtTerm::Pair(a, b) => {
                a.subst(x, v);
                b.subst(x, v);
            }
            TgtTerm::Ifz(a, b, c) => {
                a.subst(x, v);
                b.subst(x, v);
                c.subst(x, v);
            }
        }
    }

    /// Replaces every hole with the closed term `p`.
    pub fn plug(&self, p: &TgtTerm) -> TgtTerm {
        let mut out = self.clone();
        out.fill_hole(p);
        out
    }

    fn fill_hole(&mut self, p: &TgtTerm) {
        match self {
            TgtTerm::Hole => *self = p.clone(),
            TgtTerm::Var(_) | TgtTerm::Unit | TgtTerm::Lit(_) | TgtTerm::Read(_) => {}
            TgtTerm::Lam(_, e)
            | TgtTerm::Succ(e)
            | TgtTerm::Fst(e)
            | TgtTerm::Snd(e)
            | TgtTerm::Inl(e)
            | TgtTerm::Inr(e)
            | TgtTerm::Write(_, e) => e.fill_hole(p),
            TgtTerm::App(a, b) | TgtTerm::Pair(a, b) => {
                a.fill_hole(p);
                b.fill_hole(p);
            }
            TgtTerm::Ifz(a, b, c) | TgtTerm::Case(a, _, b, _, c) => {
                a.fill_hole(p);
                b.fill_hole(p);
                c.fill_hole(p);
            }
        }
    }
}
