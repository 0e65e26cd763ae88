use super::term::SrcTerm;
use super::types::{Name, SrcType};
use crate::Error;

/// Typing environment, innermost binding last.
pub type Env = Vec<(Name, SrcType)>;

/// Computes the type of `t` under `env`. A hole, if present, has type
/// `hole`; a hole without a supplied type is an error.
pub fn typecheck(t: &SrcTerm, env: &Env, hole: Option<&SrcType>) -> Result<SrcType, Error> {
    let mut checker = Checker {
        env: env.clone(),
        hole,
        path: Vec::new(),
    };
    checker.check(t)
}

struct Checker<'a> {
    env: Env,
    hole: Option<&'a SrcType>,
    path: Vec<&'static str>,
}

impl Checker<'_> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T, Error> {
        let path = if self.path.is_empty() {
            "root".to_string()
        } else {
            self.path.join("/")
        };
        Err(Error::Type {
            path,
            message: message.into(),
        })
    }

    fn sub(&mut self, label: &'static str, t: &SrcTerm) -> Result<SrcType, Error> {
        self.path.push(label);
        let r = self.check(t);
        self.path.pop();
        r
    }

    fn under(&mut self, label: &'static str, x: &Name, ty: SrcType, t: &SrcTerm) -> Result<SrcType, Error> {
        self.env.push((x.clone(), ty));
        let r = self.sub(label, t);
        self.env.pop();
        r
    }

    fn annotation(&self, ty: &SrcType) -> Result<(), Error> {
        if !ty.is_closed() {
            return self.fail(format!("annotation {ty} is not closed"));
        }
        if !ty.is_contractive() {
            return self.fail(format!("annotation {ty} is not contractive"));
        }
        Ok(())
    }

    fn expect(&self, what: &str, want: &SrcType, got: &SrcType) -> Result<(), Error> {
        if want.alpha_eq(got) {
            Ok(())
        } else {
            self.fail(format!("{what}: expected {want}, found {got}"))
        }
    }

    fn check(&mut self, t: &SrcTerm) -> Result<SrcType, Error> {
        match t {
            SrcTerm::Var(x) => match self.env.iter().rev().find(|(y, _)| y == x) {
                Some((_, ty)) => Ok(ty.clone()),
                None => self.fail(format!("unbound variable `{x}`")),
            },
            SrcTerm::Lam(x, ty, body) => {
                self.annotation(ty)?;
                let result = self.under("lam", x, (**ty).clone(), body)?;
                Ok(SrcType::arrow((**ty).clone(), result))
            }
            SrcTerm::App(f, a) => {
                let fty = self.sub("app.fun", f)?;
                let aty = self.sub("app.arg", a)?;
                match fty {
                    SrcType::Arrow(dom, cod) => {
                        self.expect("argument", &dom, &aty)?;
                        Ok(*cod)
                    }
                    other => self.fail(format!("applying a non-function of type {other}")),
                }
            }
            SrcTerm::Unit => Ok(SrcType::Unit),
            SrcTerm::Lit(_) => Ok(SrcType::Nat),
            SrcTerm::Succ(e) => {
                let ty = self.sub("succ", e)?;
                self.expect("succ", &SrcType::Nat, &ty)?;
                Ok(SrcType::Nat)
            }
            SrcTerm::Ifz(c, z, s) => {
                let cty = self.sub("ifz.test", c)?;
                self.expect("ifz test", &SrcType::Nat, &cty)?;
                let zty = self.sub("ifz.zero", z)?;
                let sty = self.sub("ifz.succ", s)?;
                self.expect("ifz branches", &zty, &sty)?;
                Ok(zty)
            }
            SrcTerm::Pair(a, b) => {
                let a = self.sub("pair.0", a)?;
                let b = self.sub("pair.1", b)?;
                Ok(SrcType::prod(a, b))
            }
            SrcTerm::Fst(e) | SrcTerm::Snd(e) => {
                let first = matches!(t, SrcTerm::Fst(_));
                match self.sub(if first { "fst" } else { "snd" }, e)? {
                    SrcType::Prod(a, b) => Ok(if first { *a } else { *b }),
                    other => self.fail(format!("projection from non-product {other}")),
                }
            }
            SrcTerm::Inl(sum, e) | SrcTerm::Inr(sum, e) => {
                self.annotation(sum)?;
                let left = matches!(t, SrcTerm::Inl(..));
                let SrcType::Sum(a, b) = &**sum else {
                    return self.fail(format!("injection annotated with non-sum {sum}"));
                };
                let ety = self.sub(if left { "inl" } else { "inr" }, e)?;
                self.expect("injection", if left { a } else { b }, &ety)?;
                Ok((**sum).clone())
            }
            SrcTerm::Case(e, x, l, y, r) => match self.sub("case.scrutinee", e)? {
                SrcType::Sum(a, b) => {
                    let lty = self.under("case.inl", x, *a, l)?;
                    let rty = self.under("case.inr", y, *b, r)?;
                    self.expect("case branches", &lty, &rty)?;
                    Ok(lty)
                }
                other => self.fail(format!("case on non-sum {other}")),
            },
            SrcTerm::Fold(mu, e) => {
                self.annotation(mu)?;
                let Some(unrolled) = mu.unfold() else {
                    return self.fail(format!("fold annotated with non-recursive {mu}"));
                };
                let ety = self.sub("fold", e)?;
                self.expect("fold", &unrolled, &ety)?;
                Ok((**mu).clone())
            }
            SrcTerm::Unfold(e) => {
                let ety = self.sub("unfold", e)?;
                match ety.unfold() {
                    Some(t) => Ok(t),
                    None => self.fail(format!("unfold of non-recursive {ety}")),
                }
            }
            SrcTerm::Read(_) => Ok(SrcType::Nat),
            SrcTerm::Write(_, e) => {
                let ety = self.sub("write", e)?;
                self.expect("write", &SrcType::Nat, &ety)?;
                Ok(SrcType::Unit)
            }
            SrcTerm::Hole => match self.hole {
                Some(ty) => Ok(ty.clone()),
                None => self.fail("hole without a hole type"),
            },
        }
    }
}
