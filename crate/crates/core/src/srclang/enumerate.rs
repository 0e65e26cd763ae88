//! Type-directed enumeration of source contexts.
//!
//! Terms are generated top-down by wanted type, pruning by typing at every
//! node. Types are drawn from a finite pool: the closed components of the
//! hole type, `unit`, `nat`, and `t → unit` for each of those (so contexts
//! can bind and discard). Binders are named canonically by depth (`x0`,
//! `x1`, ...).

use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

use super::term::SrcTerm;
use super::types::SrcType;
use super::SrcContext;
use crate::trace::Origin;

/// Every well-typed context of size at most `max_size` with hole type
/// `hole_ty` and result `unit`, smallest first.
pub fn enumerate_src_contexts(hole_ty: &SrcType, max_size: usize, val_cap: u32) -> Vec<SrcContext> {
    let mut gen = Generator::new(hole_ty, val_cap);
    let unit = gen.index(&SrcType::Unit).expect("unit is pooled");
    let mut out = Vec::new();
    for size in 1..=max_size {
        for t in gen.terms(&[], unit, size, true).iter() {
            out.push(
                SrcContext::new(t.clone(), hole_ty.clone())
                    .expect("enumerated contexts are well-typed"),
            );
        }
    }
    out
}

type Key = (Vec<usize>, usize, usize, bool);

struct Generator {
    pool: Vec<SrcType>,
    shared: Vec<Arc<SrcType>>,
    hole: usize,
    val_cap: u32,
    memo: HashMap<Key, Rc<Vec<SrcTerm>>>,
}

impl Generator {
    fn new(hole_ty: &SrcType, val_cap: u32) -> Self {
        let mut base = hole_ty.closed_components();
        for t in [SrcType::Unit, SrcType::Nat] {
            if !base.iter().any(|u| u.alpha_eq(&t)) {
                base.push(t);
            }
        }
        let mut pool = base.clone();
        for t in &base {
            let discard = SrcType::arrow(t.clone(), SrcType::Unit);
            if !pool.iter().any(|u| u.alpha_eq(&discard)) {
                pool.push(discard);
            }
        }
        pool.sort();
        let hole = pool
            .iter()
            .position(|u| u.alpha_eq(hole_ty))
            .expect("hole type is pooled");
        let shared = pool.iter().cloned().map(Arc::new).collect();
        Generator {
            pool,
            shared,
            hole,
            val_cap,
            memo: HashMap::new(),
        }
    }

    fn index(&self, t: &SrcType) -> Option<usize> {
        self.pool.iter().position(|u| u.alpha_eq(t))
    }

    fn var_name(depth: usize) -> String {
        format!("x{depth}")
    }

    fn terms(&mut self, env: &[usize], want: usize, size: usize, hole: bool) -> Rc<Vec<SrcTerm>> {
        let key = (env.to_vec(), want, size, hole);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = Rc::new(self.build(env, want, size, hole));
        self.memo.insert(key, v.clone());
        v
    }

    /// Splits `total` among `n` children (each at least 1) and the hole
    /// among them, calling `f` with each split.
    fn splits(total: usize, n: usize, hole: bool) -> Vec<(Vec<usize>, Vec<bool>)> {
        fn sizes(total: usize, n: usize) -> Vec<Vec<usize>> {
            if n == 1 {
                return if total >= 1 { vec![vec![total]] } else { vec![] };
            }
            let mut out = Vec::new();
            for first in 1..total {
                for mut rest in sizes(total - first, n - 1) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        let holes: Vec<Vec<bool>> = if hole {
            (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect()
        } else {
            vec![vec![false; n]]
        };
        let mut out = Vec::new();
        for s in sizes(total, n) {
            for h in &holes {
                out.push((s.clone(), h.clone()));
            }
        }
        out
    }

    fn build(&mut self, env: &[usize], want: usize, size: usize, hole: bool) -> Vec<SrcTerm> {
        let mut out = Vec::new();
        let ty = self.pool[want].clone();
        if size == 1 {
            if hole {
                if want == self.hole {
                    out.push(SrcTerm::Hole);
                }
                return out;
            }
            for (i, &t) in env.iter().enumerate() {
                if t == want {
                    out.push(SrcTerm::var(&Self::var_name(i)));
                }
            }
            match ty {
                SrcType::Unit => out.push(SrcTerm::Unit),
                SrcType::Nat => {
                    out.extend((0..=self.val_cap).map(SrcTerm::Lit));
                    out.push(SrcTerm::Read(Origin::Ctx));
                }
                _ => {}
            }
            return out;
        }
        let nat = self.index(&SrcType::Nat).expect("nat is pooled");
        let rest = size - 1;

        // Unary formers.
        if let SrcType::Arrow(a, b) = &ty {
            if let (Some(a), Some(b)) = (self.index(a), self.index(b)) {
                let mut env2 = env.to_vec();
                env2.push(a);
                let x = Self::var_name(env.len());
                for body in self.terms(&env2, b, rest, hole).iter() {
                    out.push(SrcTerm::Lam(x.as_str().into(), self.shared[a].clone(), Box::new(body.clone())));
                }
            }
        }
        if matches!(ty, SrcType::Nat) {
            for e in self.terms(env, nat, rest, hole).iter() {
                out.push(SrcTerm::succ(e.clone()));
            }
        }
        if matches!(ty, SrcType::Unit) {
            for e in self.terms(env, nat, rest, hole).iter() {
                out.push(SrcTerm::write(Origin::Ctx, e.clone()));
            }
        }
        if let SrcType::Sum(a, b) = &ty {
            for (left, comp) in [(true, a), (false, b)] {
                if let Some(c) = self.index(comp) {
                    for e in self.terms(env, c, rest, hole).iter() {
                        out.push(if left {
                            SrcTerm::Inl(self.shared[want].clone(), Box::new(e.clone()))
                        } else {
                            SrcTerm::Inr(self.shared[want].clone(), Box::new(e.clone()))
                        });
                    }
                }
            }
        }
        if let Some(unrolled) = ty.unfold() {
            if let Some(u) = self.index(&unrolled) {
                for e in self.terms(env, u, rest, hole).iter() {
                    out.push(SrcTerm::Fold(self.shared[want].clone(), Box::new(e.clone())));
                }
            }
        }
        for m in 0..self.pool.len() {
            if let Some(unrolled) = self.pool[m].unfold() {
                if unrolled.alpha_eq(&ty) {
                    for e in self.terms(env, m, rest, hole).iter() {
                        out.push(SrcTerm::unfold(e.clone()));
                    }
                }
            }
        }
        for p in 0..self.pool.len() {
            if let SrcType::Prod(a, b) = self.pool[p].clone() {
                if a.alpha_eq(&ty) {
                    for e in self.terms(env, p, rest, hole).iter() {
                        out.push(SrcTerm::fst(e.clone()));
                    }
                }
                if b.alpha_eq(&ty) {
                    for e in self.terms(env, p, rest, hole).iter() {
                        out.push(SrcTerm::snd(e.clone()));
                    }
                }
            }
        }

        // Binary formers.
        for (sizes, holes) in Self::splits(rest, 2, hole) {
            for dom in 0..self.pool.len() {
                let Some(f) = self.index(&SrcType::arrow(self.pool[dom].clone(), ty.clone())) else {
                    continue;
                };
                let fs = self.terms(env, f, sizes[0], holes[0]);
                if fs.is_empty() {
                    continue;
                }
                let args = self.terms(env, dom, sizes[1], holes[1]);
                for g in fs.iter() {
                    for a in args.iter() {
                        out.push(SrcTerm::app(g.clone(), a.clone()));
                    }
                }
            }
            if let SrcType::Prod(a, b) = &ty {
                if let (Some(a), Some(b)) = (self.index(a), self.index(b)) {
                    let xs = self.terms(env, a, sizes[0], holes[0]);
                    let ys = self.terms(env, b, sizes[1], holes[1]);
                    for x in xs.iter() {
                        for y in ys.iter() {
                            out.push(SrcTerm::pair(x.clone(), y.clone()));
                        }
                    }
                }
            }
        }

        // Ternary formers.
        for (sizes, holes) in Self::splits(rest, 3, hole) {
            let cs = self.terms(env, nat, sizes[0], holes[0]);
            if !cs.is_empty() {
                let zs = self.terms(env, want, sizes[1], holes[1]);
                let ss = self.terms(env, want, sizes[2], holes[2]);
                for c in cs.iter() {
                    for z in zs.iter() {
                        for s in ss.iter() {
                            out.push(SrcTerm::ifz(c.clone(), z.clone(), s.clone()));
                        }
                    }
                }
            }
            for st in 0..self.pool.len() {
                let SrcType::Sum(a, b) = self.pool[st].clone() else {
                    continue;
                };
                let (Some(a), Some(b)) = (self.index(&a), self.index(&b)) else {
                    continue;
                };
                let scrutinees = self.terms(env, st, sizes[0], holes[0]);
                if scrutinees.is_empty() {
                    continue;
                }
                let d = env.len();
                let mut env_l = env.to_vec();
                env_l.push(a);
                let mut env_r = env.to_vec();
                env_r.push(b);
                let ls = self.terms(&env_l, want, sizes[1], holes[1]);
                let rs = self.terms(&env_r, want, sizes[2], holes[2]);
                let x = Self::var_name(d);
                for e in scrutinees.iter() {
                    for l in ls.iter() {
                        for r in rs.iter() {
                            out.push(SrcTerm::case(e.clone(), &x, l.clone(), &x, r.clone()));
                        }
                    }
                }
            }
        }
        out
    }
}
