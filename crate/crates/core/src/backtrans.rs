//! Back-translation of target contexts into source contexts.
//!
//! Target values are represented in the source by the universal type
//! `U = μX. unit + (nat + (X × X + ((X + X) + (X → X))))`. Every target
//! construct becomes a source term of type `U`; wherever the target would
//! get stuck the translation diverges (Ω at the expected type). The program
//! in the hole enters `U` through `embed(τ)`; values flowing back to the
//! program leave it through `project(τ)`. The result depends only on the
//! target context and the export type.

use std::sync::{Arc, LazyLock};

use crate::srclang::derived::{discard, fix, omega};
use crate::srclang::{SrcContext, SrcTerm, SrcType, Ty};
use crate::tgtlang::{TgtContext, TgtTerm};

/// The five shapes a target value can take, in the order of `U`'s sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Unit,
    Nat,
    Pair,
    Sum,
    Fun,
}

impl Shape {
    const ALL: [Shape; 5] = [Shape::Unit, Shape::Nat, Shape::Pair, Shape::Sum, Shape::Fun];

    fn index(self) -> usize {
        Shape::ALL.iter().position(|s| *s == self).unwrap_or(0)
    }
}

static UNIVERSAL: LazyLock<SrcType> = LazyLock::new(|| {
    let x = || SrcType::var("X");
    SrcType::mu(
        "X",
        SrcType::sum(
            SrcType::Unit,
            SrcType::sum(
                SrcType::Nat,
                SrcType::sum(
                    SrcType::prod(x(), x()),
                    SrcType::sum(SrcType::sum(x(), x()), SrcType::arrow(x(), x())),
                ),
            ),
        ),
    )
});

/// The universal type `U`.
pub fn universal_type() -> SrcType {
    UNIVERSAL.clone()
}

/// The nested sums of the unrolled `U`: `[U', tail1, tail2, tail3]`, where
/// `U' = unit + tail1`, `tail1 = nat + tail2`, and so on.
static SPINE: LazyLock<Vec<Ty>> = LazyLock::new(|| {
    let mut out = Vec::new();
    let mut t = UNIVERSAL.unfold().expect("U is recursive");
    while let SrcType::Sum(_, r) = &t {
        let next = (**r).clone();
        out.push(Arc::new(t));
        t = next;
    }
    out
});

static UNIVERSAL_TY: LazyLock<Ty> = LazyLock::new(|| Arc::new(universal_type()));

/// Ω at each payload type, built once.
static OMEGAS: LazyLock<Vec<SrcTerm>> =
    LazyLock::new(|| Shape::ALL.iter().map(|s| omega(&payload_type(*s))).collect());

/// The payload type carried by each shape.
pub fn payload_type(s: Shape) -> SrcType {
    let u = universal_type;
    match s {
        Shape::Unit => SrcType::Unit,
        Shape::Nat => SrcType::Nat,
        Shape::Pair => SrcType::prod(u(), u()),
        Shape::Sum => SrcType::sum(u(), u()),
        Shape::Fun => SrcType::arrow(u(), u()),
    }
}

/// `inU_s(e)`: injects a payload of shape `s` into `U`.
pub fn inject(s: Shape, e: SrcTerm) -> SrcTerm {
    let spine = &*SPINE;
    let i = s.index();
    let mut t = if i < spine.len() {
        SrcTerm::Inl(spine[i].clone(), Box::new(e))
    } else {
        e
    };
    for j in (0..i.min(spine.len())).rev() {
        t = SrcTerm::Inr(spine[j].clone(), Box::new(t));
    }
    SrcTerm::Fold(UNIVERSAL_TY.clone(), Box::new(t))
}

/// Extracts the payload of shape `s` from `e : U`, diverging on any other
/// shape.
pub fn expect(s: Shape, e: SrcTerm) -> SrcTerm {
    let want = s.index();
    let last = Shape::ALL.len() - 1;
    // Builds the dispatch on the sum at depth `i`, whose value is bound to
    // `%v` (or is `scrutinee` at depth 0).
    fn level(i: usize, want: usize, last: usize, scrutinee: SrcTerm, s: Shape) -> SrcTerm {
        let fail = || OMEGAS[s.index()].clone();
        if i == last {
            return if want == last { scrutinee } else { fail() };
        }
        let here = if i == want { SrcTerm::var("%v") } else { fail() };
        let deeper = if want > i {
            level(i + 1, want, last, SrcTerm::var("%v"), s)
        } else {
            fail()
        };
        SrcTerm::case(scrutinee, "%v", here, "%v", deeper)
    }
    level(0, want, last, SrcTerm::unfold(e), s)
}

/// `λf:U. λa:U. (expect_fun f) a`: application at `U`, evaluating both
/// sides before checking the function position.
fn app_u() -> SrcTerm {
    APP_U.clone()
}

static APP_U: LazyLock<SrcTerm> = LazyLock::new(|| {
    let u = universal_type;
    SrcTerm::lam(
        "%f",
        u(),
        SrcTerm::lam(
            "%a",
            u(),
            SrcTerm::app(expect(Shape::Fun, SrcTerm::var("%f")), SrcTerm::var("%a")),
        ),
    )
});

/// Translates a target term to a source term of type `U` (given `U`-typed
/// free variables). Holes are replaced by `hole`.
pub fn backtranslate_term_with(m: &TgtTerm, hole: &SrcTerm) -> SrcTerm {
    let bt = |t: &TgtTerm| backtranslate_term_with(t, hole);
    match m {
        TgtTerm::Var(x) => SrcTerm::Var(x.clone()),
        TgtTerm::Lam(x, e) => inject(Shape::Fun, SrcTerm::Lam(x.clone(), UNIVERSAL_TY.clone(), Box::new(bt(e)))),
        TgtTerm::App(f, a) => SrcTerm::app(SrcTerm::app(app_u(), bt(f)), bt(a)),
        TgtTerm::Unit => inject(Shape::Unit, SrcTerm::Unit),
        TgtTerm::Lit(n) => inject(Shape::Nat, SrcTerm::Lit(*n)),
        TgtTerm::Succ(e) => inject(Shape::Nat, SrcTerm::succ(expect(Shape::Nat, bt(e)))),
        TgtTerm::Ifz(c, z, s) => SrcTerm::ifz(expect(Shape::Nat, bt(c)), bt(z), bt(s)),
        TgtTerm::Pair(a, b) => inject(Shape::Pair, SrcTerm::pair(bt(a), bt(b))),
        TgtTerm::Fst(e) => SrcTerm::fst(expect(Shape::Pair, bt(e))),
        TgtTerm::Snd(e) => SrcTerm::snd(expect(Shape::Pair, bt(e))),
        TgtTerm::Inl(e) => inject(Shape::Sum, SrcTerm::inl(payload_type(Shape::Sum), bt(e))),
        TgtTerm::Inr(e) => inject(Shape::Sum, SrcTerm::inr(payload_type(Shape::Sum), bt(e))),
        TgtTerm::Case(e, x, l, y, r) => SrcTerm::case(expect(Shape::Sum, bt(e)), x, bt(l), y, bt(r)),
        TgtTerm::Read(o) => inject(Shape::Nat, SrcTerm::Read(*o)),
        TgtTerm::Write(o, e) => inject(Shape::Unit, SrcTerm::write(*o, expect(Shape::Nat, bt(e)))),
        TgtTerm::Hole => hole.clone(),
    }
}

/// Translates a target term to a source term of type `U`; the hole is kept.
pub fn backtranslate_term(m: &TgtTerm) -> SrcTerm {
    backtranslate_term_with(m, &SrcTerm::Hole)
}

/// `embed(τ) : τ → U`.
pub fn embed(ty: &SrcType) -> SrcTerm {
    Coercions::default().embed(ty)
}

/// `project(τ) : U → τ`, diverging on values of the wrong shape.
pub fn project(ty: &SrcType) -> SrcTerm {
    Coercions::default().project(ty)
}

/// `discard(bt(C_T)[hole := embed(τ) hole])`.
pub fn backtranslate_context(c: &TgtContext, export: &SrcType) -> SrcContext {
    let hole = SrcTerm::app(embed(export), SrcTerm::Hole);
    let body = backtranslate_term_with(c.term(), &hole);
    // Well-typed by construction; see the tests.
    SrcContext::new_unchecked(discard(universal_type(), body), export.clone())
}

/// Type-directed coercions. For each enclosing recursive type `M = μX.T`
/// the environment records `X`, `M`, and the name of a function
/// `g : M + U → U + M` that embeds on the left and projects on the right.
#[derive(Default)]
struct Coercions {
    env: Vec<(String, SrcType, String)>,
}

impl Coercions {
    /// Closes `ty` by substituting the recursive types in scope.
    fn close(&self, ty: &SrcType) -> SrcType {
        let mut t = ty.clone();
        for (x, m, _) in self.env.iter().rev() {
            t = t.subst(x, m);
        }
        t
    }

    fn lookup(&self, x: &str) -> (SrcType, String) {
        let (_, m, g) = self
            .env
            .iter()
            .rev()
            .find(|(y, _, _)| y == x)
            .expect("coercion types are closed");
        (m.clone(), g.clone())
    }

    /// `g` for `μX.T`, built with the source fixpoint.
    fn recursor(&mut self, x: &str, body: &SrcType, m: &SrcType) -> SrcTerm {
        let u = universal_type();
        let g = format!("%g{}", self.env.len());
        self.env.push((x.to_string(), m.clone(), g.clone()));
        let emb = self.embed(body);
        let proj = self.project(body);
        self.env.pop();
        let dom = SrcType::sum(m.clone(), u.clone());
        let cod = SrcType::sum(u.clone(), m.clone());
        let functional = SrcTerm::lam(
            &g,
            SrcType::arrow(dom.clone(), cod.clone()),
            SrcTerm::lam(
                "%s",
                dom,
                SrcTerm::case(
                    SrcTerm::var("%s"),
                    "%w",
                    SrcTerm::inl(cod.clone(), SrcTerm::app(emb, SrcTerm::unfold(SrcTerm::var("%w")))),
                    "%w",
                    SrcTerm::inr(cod, SrcTerm::fold(m.clone(), SrcTerm::app(proj, SrcTerm::var("%w")))),
                ),
            ),
        );
        SrcTerm::app(fix(&SrcType::sum(m.clone(), u.clone()), &SrcType::sum(u, m.clone())), functional)
    }

    fn embed_via(g: SrcTerm, m: &SrcType) -> SrcTerm {
        let u = universal_type();
        SrcTerm::lam(
            "%v",
            m.clone(),
            SrcTerm::case(
                SrcTerm::app(g, SrcTerm::inl(SrcType::sum(m.clone(), u.clone()), SrcTerm::var("%v"))),
                "%w",
                SrcTerm::var("%w"),
                "%w",
                omega(&u),
            ),
        )
    }

    fn project_via(g: SrcTerm, m: &SrcType) -> SrcTerm {
        let u = universal_type();
        SrcTerm::lam(
            "%u",
            u.clone(),
            SrcTerm::case(
                SrcTerm::app(g, SrcTerm::inr(SrcType::sum(m.clone(), u), SrcTerm::var("%u"))),
                "%w",
                omega(m),
                "%w",
                SrcTerm::var("%w"),
            ),
        )
    }

    fn embed(&mut self, ty: &SrcType) -> SrcTerm {
        let u = universal_type;
        let v = || SrcTerm::var("%v");
        let closed = self.close(ty);
        match ty {
            SrcType::Unit => SrcTerm::lam("%v", SrcType::Unit, inject(Shape::Unit, v())),
            SrcType::Nat => SrcTerm::lam("%v", SrcType::Nat, inject(Shape::Nat, v())),
            SrcType::Prod(a, b) => {
                let (ea, eb) = (self.embed(a), self.embed(b));
                SrcTerm::lam(
                    "%v",
                    closed,
                    inject(
                        Shape::Pair,
                        SrcTerm::pair(SrcTerm::app(ea, SrcTerm::fst(v())), SrcTerm::app(eb, SrcTerm::snd(v()))),
                    ),
                )
            }
            SrcType::Sum(a, b) => {
                let (ea, eb) = (self.embed(a), self.embed(b));
                let uu = payload_type(Shape::Sum);
                let w = || SrcTerm::var("%w");
                SrcTerm::lam(
                    "%v",
                    closed,
                    inject(
                        Shape::Sum,
                        SrcTerm::case(
                            v(),
                            "%w",
                            SrcTerm::inl(uu.clone(), SrcTerm::app(ea, w())),
                            "%w",
                            SrcTerm::inr(uu, SrcTerm::app(eb, w())),
                        ),
                    ),
                )
            }
            SrcType::Arrow(a, b) => {
                let (pa, eb) = (self.project(a), self.embed(b));
                SrcTerm::lam(
                    "%v",
                    closed,
                    inject(
                        Shape::Fun,
                        SrcTerm::lam(
                            "%u",
                            u(),
                            SrcTerm::app(eb, SrcTerm::app(v(), SrcTerm::app(pa, SrcTerm::var("%u")))),
                        ),
                    ),
                )
            }
            SrcType::Mu(x, body) => {
                let g = self.recursor(x, body, &closed);
                Self::embed_via(g, &closed)
            }
            SrcType::Var(x) => {
                let (m, g) = self.lookup(x);
                Self::embed_via(SrcTerm::var(&g), &m)
            }
        }
    }

    fn project(&mut self, ty: &SrcType) -> SrcTerm {
        let u = universal_type;
        let uv = || SrcTerm::var("%u");
        let closed = self.close(ty);
        match ty {
            // Source code cannot inspect a unit, so any value will do.
            SrcType::Unit => SrcTerm::lam("%u", u(), SrcTerm::Unit),
            SrcType::Nat => SrcTerm::lam("%u", u(), expect(Shape::Nat, uv())),
            SrcType::Prod(a, b) => {
                let (pa, pb) = (self.project(a), self.project(b));
                let q = || SrcTerm::var("%q");
                SrcTerm::lam(
                    "%u",
                    u(),
                    SrcTerm::app(
                        SrcTerm::lam(
                            "%q",
                            payload_type(Shape::Pair),
                            SrcTerm::pair(SrcTerm::app(pa, SrcTerm::fst(q())), SrcTerm::app(pb, SrcTerm::snd(q()))),
                        ),
                        expect(Shape::Pair, uv()),
                    ),
                )
            }
            SrcType::Sum(a, b) => {
                let (pa, pb) = (self.project(a), self.project(b));
                let w = || SrcTerm::var("%w");
                SrcTerm::lam(
                    "%u",
                    u(),
                    SrcTerm::case(
                        expect(Shape::Sum, uv()),
                        "%w",
                        SrcTerm::inl(closed.clone(), SrcTerm::app(pa, w())),
                        "%w",
                        SrcTerm::inr(closed, SrcTerm::app(pb, w())),
                    ),
                )
            }
            SrcType::Arrow(a, b) => {
                let (ea, pb) = (self.embed(a), self.project(b));
                let dom = self.close(a);
                SrcTerm::lam(
                    "%u",
                    u(),
                    SrcTerm::lam(
                        "%x",
                        dom,
                        SrcTerm::app(
                            pb,
                            SrcTerm::app(SrcTerm::app(app_u(), uv()), SrcTerm::app(ea, SrcTerm::var("%x"))),
                        ),
                    ),
                )
            }
            SrcType::Mu(x, body) => {
                let g = self.recursor(x, body, &closed);
                Self::project_via(g, &closed)
            }
            SrcType::Var(x) => {
                let (m, g) = self.lookup(x);
                Self::project_via(SrcTerm::var(&g), &m)
            }
        }
    }
}
