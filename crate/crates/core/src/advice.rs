//! The advice transforms `⟦φ⟧Xν` and `⟦φ⟧Yμ` and advice enumeration.

use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::Error;
use crate::formula::{Formula, FormulaSet, Node};
use crate::prop::CanonClass;
use crate::session::Session;

/// An advice pair `(X, Y)` with `X ⊆ μ(φ)` and `Y ⊆ ν(φ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Advice {
    pub x: FormulaSet,
    pub y: FormulaSet,
}

impl Session {
    /// `⟦φ⟧Xν`: the νLTL formula obtained by trusting that exactly the
    /// members of `X` hold infinitely often.
    pub fn eval_nu(&mut self, f: Formula, x: &FormulaSet) -> Formula {
        let mut memo = HashMap::new();
        self.eval_nu_rec(f, x, &mut memo)
    }

    fn eval_nu_rec(&mut self, f: Formula, x: &FormulaSet, memo: &mut HashMap<Formula, Formula>) -> Formula {
        if let Some(&g) = memo.get(&f) {
            return g;
        }
        let node = self.node(f);
        let g = match node {
            Node::Tt | Node::Ff | Node::Atom(_) | Node::NegAtom(_) => f,
            Node::Finally(_) if x.contains(&f) => self.tt(),
            Node::Finally(_) | Node::Until(..) | Node::StrongRelease(..) if !x.contains(&f) => self.ff(),
            Node::Until(l, r) => {
                let (l, r) = (self.eval_nu_rec(l, x, memo), self.eval_nu_rec(r, x, memo));
                self.fold(Node::WeakUntil(l, r))
            }
            Node::StrongRelease(l, r) => {
                let (l, r) = (self.eval_nu_rec(l, x, memo), self.eval_nu_rec(r, x, memo));
                self.fold(Node::Release(l, r))
            }
            _ => self.map_children(f, node, &mut |s, c| s.eval_nu_rec(c, x, memo)),
        };
        memo.insert(f, g);
        g
    }

    /// `⟦φ⟧Yμ`: the μLTL formula obtained by trusting that exactly the
    /// members of `Y` hold almost always.
    pub fn eval_mu(&mut self, f: Formula, y: &FormulaSet) -> Formula {
        let mut memo = HashMap::new();
        self.eval_mu_rec(f, y, &mut memo)
    }

    fn eval_mu_rec(&mut self, f: Formula, y: &FormulaSet, memo: &mut HashMap<Formula, Formula>) -> Formula {
        if let Some(&g) = memo.get(&f) {
            return g;
        }
        let node = self.node(f);
        let g = match node {
            Node::Tt | Node::Ff | Node::Atom(_) | Node::NegAtom(_) => f,
            Node::Globally(_) | Node::WeakUntil(..) | Node::Release(..) if y.contains(&f) => self.tt(),
            Node::Globally(_) => self.ff(),
            Node::WeakUntil(l, r) => {
                let (l, r) = (self.eval_mu_rec(l, y, memo), self.eval_mu_rec(r, y, memo));
                self.fold(Node::Until(l, r))
            }
            Node::Release(l, r) => {
                let (l, r) = (self.eval_mu_rec(l, y, memo), self.eval_mu_rec(r, y, memo));
                self.fold(Node::StrongRelease(l, r))
            }
            _ => self.map_children(f, node, &mut |s, c| s.eval_mu_rec(c, y, memo)),
        };
        memo.insert(f, g);
        g
    }

    fn map_children(
        &mut self,
        f: Formula,
        node: Node,
        map: &mut dyn FnMut(&mut Session, Formula) -> Formula,
    ) -> Formula {
        let mut kids = node.children();
        let a = kids.next().map(|c| map(self, c)).unwrap_or(f);
        let b = kids.next().map(|c| map(self, c)).unwrap_or(a);
        let n = self.rebuild(node, a, b);
        self.fold(self.node(n))
    }

    /// Interns `node` after removing `tt` and `ff` operands by the usual
    /// LTL identities, e.g. `φ W tt = tt`, `φ W ff = Gφ`, `tt M φ = φ`.
    /// Only the advice transforms use this; `af` stays literal.
    fn fold(&mut self, node: Node) -> Formula {
        let (tt, ff) = (self.tt(), self.ff());
        match node {
            Node::And(l, r) if l == ff || r == ff => ff,
            Node::And(l, r) if l == tt => r,
            Node::And(l, r) if r == tt => l,
            Node::Or(l, r) if l == tt || r == tt => tt,
            Node::Or(l, r) if l == ff => r,
            Node::Or(l, r) if r == ff => l,
            Node::Next(c) | Node::Finally(c) | Node::Globally(c) if c == tt || c == ff => c,
            Node::Until(_, r) | Node::WeakUntil(_, r) if r == tt || r == ff && matches!(node, Node::Until(..)) => r,
            Node::WeakUntil(l, r) if r == ff => self.globally(l),
            Node::Until(l, r) | Node::WeakUntil(l, r) if l == ff => r,
            Node::Until(l, r) if l == tt => self.finally(r),
            Node::WeakUntil(l, _) if l == tt => tt,
            Node::StrongRelease(_, r) | Node::Release(_, r) if r == ff || r == tt && matches!(node, Node::Release(..)) => r,
            Node::StrongRelease(l, r) if r == tt => self.finally(l),
            Node::StrongRelease(l, r) | Node::Release(l, r) if l == tt => r,
            Node::StrongRelease(l, _) if l == ff => ff,
            Node::Release(l, r) if l == ff => self.globally(r),
            _ => self.intern(node),
        }
    }

    /// Every advice pair for `φ`: `X` ranges over subsets of `μ(φ)` (major)
    /// and `Y` over subsets of `ν(φ)` (minor), both as bit masks over the
    /// members in interning order.
    pub fn advice_pairs(&self, f: Formula, max_advice: usize) -> Result<Vec<Advice>, Error> {
        let mu: Vec<Formula> = self.mu_set(f).into_iter().collect();
        let nu: Vec<Formula> = self.nu_set(f).into_iter().collect();
        let count = mu.len() + nu.len();
        if count > max_advice {
            return Err(Error::AdviceLimit { count, limit: max_advice });
        }
        let subset = |items: &[Formula], mask: usize| -> FormulaSet {
            items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &g)| g).collect()
        };
        let mut out = Vec::with_capacity(1 << count);
        for xm in 0..1usize << mu.len() {
            for ym in 0..1usize << nu.len() {
                out.push(Advice { x: subset(&mu, xm), y: subset(&nu, ym) });
            }
        }
        Ok(out)
    }
}

/// Memoized class-level `⟦·⟧Xν` for one fixed `X`.
///
/// `⟦·⟧Xν` distributes over `∧` and `∨`, so on a class it is the
/// substitution `x_ψ ↦ [⟦ψ⟧Xν]_P`.
#[derive(Debug)]
pub struct EvalNu {
    x: FormulaSet,
    vars: HashMap<Formula, CanonClass>,
    classes: HashMap<CanonClass, CanonClass>,
}

impl EvalNu {
    pub fn new(x: FormulaSet) -> Self {
        EvalNu { x, vars: HashMap::new(), classes: HashMap::new() }
    }

    pub fn x(&self) -> &FormulaSet {
        &self.x
    }

    pub fn formula(&mut self, s: &mut Session, f: Formula) -> CanonClass {
        let c = s.canonicalize(f);
        self.class(s, c)
    }

    pub fn class(&mut self, s: &mut Session, c: CanonClass) -> CanonClass {
        if c.is_tt() || c.is_ff() {
            return c;
        }
        if let Some(&r) = self.classes.get(&c) {
            return r;
        }
        let r = s.substitute(c, &mut |s, v| match self.vars.get(&v) {
            Some(&r) => r,
            None => {
                let g = s.eval_nu(v, &self.x);
                let r = s.canonicalize(g);
                self.vars.insert(v, r);
                r
            }
        });
        self.classes.insert(c, r);
        r
    }
}
