//! Exhaustive enumeration of target contexts by size.
//!
//! Binders are named canonically by depth (`x0`, `x1`, ...), so each term is
//! produced once up to renaming. Leaves are `unit`, literals up to the value
//! cap, `read`, and variables in scope; exactly one leaf is the hole.

use std::collections::HashMap;
use std::rc::Rc;

use super::term::TgtTerm;
use super::TgtContext;
use crate::trace::Origin;

/// Every context of size at most `max_size`, smallest first, in a fixed
/// order.
pub fn enumerate_tgt_contexts(max_size: usize, val_cap: u32) -> Vec<TgtContext> {
    let mut gen = Generator {
        val_cap,
        memo: HashMap::new(),
    };
    let mut out = Vec::new();
    for size in 1..=max_size {
        for t in gen.terms(0, size, true).iter() {
            out.push(TgtContext::new(t.clone()).expect("enumerated contexts are well-formed"));
        }
    }
    out
}

struct Generator {
    val_cap: u32,
    memo: HashMap<(usize, usize, bool), Rc<Vec<TgtTerm>>>,
}

fn var_name(depth: usize) -> String {
    format!("x{depth}")
}

impl Generator {
    fn terms(&mut self, depth: usize, size: usize, hole: bool) -> Rc<Vec<TgtTerm>> {
        if let Some(v) = self.memo.get(&(depth, size, hole)) {
            return v.clone();
        }
        let v = Rc::new(self.build(depth, size, hole));
        self.memo.insert((depth, size, hole), v.clone());
        v
    }

    fn build(&mut self, depth: usize, size: usize, hole: bool) -> Vec<TgtTerm> {
        let mut out = Vec::new();
        if size == 0 {
            return out;
        }
        if size == 1 {
            if hole {
                out.push(TgtTerm::Hole);
            } else {
                out.push(TgtTerm::Unit);
                out.extend((0..=self.val_cap).map(TgtTerm::Lit));
                out.push(TgtTerm::Read(Origin::Ctx));
                out.extend((0..depth).map(|i| TgtTerm::var(&var_name(i))));
            }
            return out;
        }
        let rest = size - 1;
        let x = var_name(depth);
        for body in self.terms(depth + 1, rest, hole).iter() {
            out.push(TgtTerm::Lam(x.as_str().into(), Box::new(body.clone())));
        }
        for e in self.terms(depth, rest, hole).iter() {
            let e = || Box::new(e.clone());
            out.push(TgtTerm::Succ(e()));
            out.push(TgtTerm::Fst(e()));
            out.push(TgtTerm::Snd(e()));
            out.push(TgtTerm::Inl(e()));
            out.push(TgtTerm::Inr(e()));
            out.push(TgtTerm::Write(Origin::Ctx, e()));
        }
        for (sizes, holes) in splits(rest, 2, hole) {
            let xs = self.terms(depth, sizes[0], holes[0]);
            let ys = self.terms(depth, sizes[1], holes[1]);
            for a in xs.iter() {
                for b in ys.iter() {
                    out.push(TgtTerm::app(a.clone(), b.clone()));
                    out.push(TgtTerm::pair(a.clone(), b.clone()));
                }
            }
        }
        for (sizes, holes) in splits(rest, 3, hole) {
            let cs = self.terms(depth, sizes[0], holes[0]);
            let zs = self.terms(depth, sizes[1], holes[1]);
            let ss = self.terms(depth, sizes[2], holes[2]);
            let ls = self.terms(depth + 1, sizes[1], holes[1]);
            let rs = self.terms(depth + 1, sizes[2], holes[2]);
            for c in cs.iter() {
                for z in zs.iter() {
                    for s in ss.iter() {
                        out.push(TgtTerm::ifz(c.clone(), z.clone(), s.clone()));
                    }
                }
                for l in ls.iter() {
                    for r in rs.iter() {
                        out.push(TgtTerm::case(c.clone(), &x, l.clone(), &x, r.clone()));
                    }
                }
            }
        }
        out
    }
}

/// Ways to split `total` among `n` children of size at least 1, with the
/// hole (if any) placed in exactly one child.
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
    let mut out = Vec::new();
    for s in sizes(total, n) {
        if hole {
            for i in 0..n {
                out.push((s.clone(), (0..n).map(|j| i == j).collect()));
            }
        } else {
            out.push((s, vec![false; n]));
        }
    }
    out
}
