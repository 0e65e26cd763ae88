use std::fmt;
use std::sync::Arc;

pub type Name = Arc<str>;

/// Source types. `Mu` binds its variable iso-recursively.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SrcType {
    Unit,
    Nat,
    Prod(Box<SrcType>, Box<SrcType>),
    Sum(Box<SrcType>, Box<SrcType>),
    Arrow(Box<SrcType>, Box<SrcType>),
    Mu(Name, Box<SrcType>),
    Var(Name),
}

impl SrcType {
    pub fn prod(a: SrcType, b: SrcType) -> Self {
        SrcType::Prod(Box::new(a), Box::new(b))
    }

    pub fn sum(a: SrcType, b: SrcType) -> Self {
        SrcType::Sum(Box::new(a), Box::new(b))
    }

    pub fn arrow(a: SrcType, b: SrcType) -> Self {
        SrcType::Arrow(Box::new(a), Box::new(b))
    }

    pub fn mu(x: &str, body: SrcType) -> Self {
        SrcType::Mu(x.into(), Box::new(body))
    }

    pub fn var(x: &str) -> Self {
        SrcType::Var(x.into())
    }

    /// `τ[x := s]` for closed `s`; stops at binders of `x`.
    pub fn subst(&self, x: &str, s: &SrcType) -> SrcType {
        match self {
            SrcType::Unit | SrcType::Nat => self.clone(),
            SrcType::Var(y) => {
                if &**y == x {
                    s.clone()
                } else {
                    self.clone()
                }
            }
            SrcType::Prod(a, b) => SrcType::prod(a.subst(x, s), b.subst(x, s)),
            SrcType::Sum(a, b) => SrcType::sum(a.subst(x, s), b.subst(x, s)),
            SrcType::Arrow(a, b) => SrcType::arrow(a.subst(x, s), b.subst(x, s)),
            SrcType::Mu(y, body) => {
                if &**y == x {
                    self.clone()
                } else {
                    SrcType::Mu(y.clone(), Box::new(body.subst(x, s)))
                }
            }
        }
    }

    /// One-level unrolling of a `Mu` type; `None` on other types.
    pub fn unfold(&self) -> Option<SrcType> {
        match self {
            SrcType::Mu(x, body) => Some(body.subst(x, self)),
            _ => None,
        }
    }

    pub fn free_vars(&self) -> Vec<Name> {
        fn go(t: &SrcType, bound: &mut Vec<Name>, out: &mut Vec<Name>) {
            match t {
                SrcType::Unit | SrcType::Nat => {}
                SrcType::Var(x) => {
                    if !bound.contains(x) && !out.contains(x) {
                        out.push(x.clone());
                    }
                }
                SrcType::Prod(a, b) | SrcType::Sum(a, b) | SrcType::Arrow(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                SrcType::Mu(x, body) => {
                    bound.push(x.clone());
                    go(body, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// No `Mu` body is (after peeling further binders) a bare variable bound
    /// by those binders.
    pub fn is_contractive(&self) -> bool {
        match self {
            SrcType::Unit | SrcType::Nat | SrcType::Var(_) => true,
            SrcType::Prod(a, b) | SrcType::Sum(a, b) | SrcType::Arrow(a, b) => {
                a.is_contractive() && b.is_contractive()
            }
            SrcType::Mu(x, body) => {
                let mut binders = vec![x.clone()];
                let mut inner: &SrcType = body;
                while let SrcType::Mu(y, b) = inner {
                    binders.push(y.clone());
                    inner = b;
                }
                if let SrcType::Var(v) = inner {
                    if binders.contains(v) {
                        return false;
                    }
                }
                body.is_contractive()
            }
        }
    }

    /// Equality up to renaming of `Mu` binders.
    pub fn alpha_eq(&self, other: &SrcType) -> bool {
        fn go<'a>(a: &'a SrcType, b: &'a SrcType, env: &mut Vec<(&'a str, &'a str)>) -> bool {
            match (a, b) {
                (SrcType::Unit, SrcType::Unit) | (SrcType::Nat, SrcType::Nat) => true,
                (SrcType::Var(x), SrcType::Var(y)) => {
                    let lx = env.iter().rposition(|(p, _)| *p == &**x);
                    let ly = env.iter().rposition(|(_, q)| *q == &**y);
                    match (lx, ly) {
                        (None, None) => x == y,
                        (Some(i), Some(j)) => i == j,
                        _ => false,
                    }
                }
                (SrcType::Prod(a1, a2), SrcType::Prod(b1, b2))
                | (SrcType::Sum(a1, a2), SrcType::Sum(b1, b2))
                | (SrcType::Arrow(a1, a2), SrcType::Arrow(b1, b2)) => go(a1, b1, env) && go(a2, b2, env),
                (SrcType::Mu(x, a), SrcType::Mu(y, b)) => {
                    env.push((x, y));
                    let r = go(a, b, env);
                    env.pop();
                    r
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }

    /// The type and all of its closed component types, including those
    /// reached through unrolling recursive types.
    pub fn closed_components(&self) -> Vec<SrcType> {
        let mut out: Vec<SrcType> = Vec::new();
        let mut work = vec![self.clone()];
        while let Some(t) = work.pop() {
            if !t.is_closed() || out.iter().any(|u| u.alpha_eq(&t)) {
                continue;
            }
            match &t {
                SrcType::Prod(a, b) | SrcType::Sum(a, b) | SrcType::Arrow(a, b) => {
                    work.push((**a).clone());
                    work.push((**b).clone());
                }
                SrcType::Mu(..) => work.push(t.unfold().expect("mu unfolds")),
                _ => {}
            }
            out.push(t);
        }
        out.sort();
        out
    }
}

impl fmt::Display for SrcType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SrcType::Unit => f.write_str("unit"),
            SrcType::Nat => f.write_str("nat"),
            SrcType::Prod(a, b) => write!(f, "(* {a} {b})"),
            SrcType::Sum(a, b) => write!(f, "(+ {a} {b})"),
            SrcType::Arrow(a, b) => write!(f, "(-> {a} {b})"),
            SrcType::Mu(x, b) => write!(f, "(mu {x} {b})"),
            SrcType::Var(x) => f.write_str(x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat_list() -> SrcType {
        SrcType::mu("L", SrcType::sum(SrcType::Unit, SrcType::prod(SrcType::Nat, SrcType::var("L"))))
    }

    #[test]
    fn unfold_substitutes_self() {
        let l = nat_list();
        assert_eq!(
            l.unfold().unwrap(),
            SrcType::sum(SrcType::Unit, SrcType::prod(SrcType::Nat, l.clone()))
        );
    }

    #[test]
    fn alpha_equivalence() {
        let a = SrcType::mu("X", SrcType::arrow(SrcType::var("X"), SrcType::Nat));
        let b = SrcType::mu("Y", SrcType::arrow(SrcType::var("Y"), SrcType::Nat));
        let c = SrcType::mu("Y", SrcType::arrow(SrcType::var("X"), SrcType::Nat));
        assert!(a.alpha_eq(&b));
        assert!(!a.alpha_eq(&c));
    }

    #[test]
    fn contractiveness() {
        assert!(nat_list().is_contractive());
        assert!(!SrcType::mu("X", SrcType::var("X")).is_contractive());
        assert!(!SrcType::mu("X", SrcType::mu("Y", SrcType::var("X"))).is_contractive());
    }

    #[test]
    fn closedness() {
        assert!(nat_list().is_closed());
        assert!(!SrcType::var("X").is_closed());
    }

    #[test]
    fn components_are_finite() {
        let comps = nat_list().closed_components();
        assert!(comps.contains(&SrcType::Nat));
        assert!(comps.iter().any(|t| t.alpha_eq(&nat_list())));
    }
}
