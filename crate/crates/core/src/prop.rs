//! Propositional equivalence.
//!
//! A formula is abstracted to a boolean function over its maximal proper
//! subformulas, which is stored as a reduced ordered decision diagram. The
//! variable order is the interning order of the proper subformulas, so two
//! formulas are propositionally equivalent iff they map to the same diagram
//! node. Every function that arises is monotone (formulas are in negation
//! normal form and `a` and `!a` are distinct variables), which keeps the
//! substitution and normal-form code free of negation.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::formula::{Formula, FormulaSet, Node};
use crate::session::Session;

/// A propositional-equivalence class `[φ]_P`, as a decision-diagram node.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonClass(u32);

impl CanonClass {
    pub const FALSE: CanonClass = CanonClass(0);
    pub const TRUE: CanonClass = CanonClass(1);

    pub fn is_tt(self) -> bool {
        self == Self::TRUE
    }

    pub fn is_ff(self) -> bool {
        self == Self::FALSE
    }
}

/// A conjunction of proper subformulas, sorted by interning order.
/// The empty clause is `tt`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Clause(Arc<[Formula]>);

impl Clause {
    pub fn new(items: impl IntoIterator<Item = Formula>) -> Self {
        let set: BTreeSet<Formula> = items.into_iter().collect();
        Clause(set.into_iter().collect())
    }

    pub fn tt() -> Self {
        Clause(Arc::from([]))
    }

    pub fn literals(&self) -> &[Formula] {
        &self.0
    }

    pub fn is_tt(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn is_subset_of(&self, other: &Clause) -> bool {
        let mut it = other.0.iter();
        'outer: for x in self.0.iter() {
            for y in it.by_ref() {
                if y == x {
                    continue 'outer;
                }
                if y > x {
                    return false;
                }
            }
            return false;
        }
        true
    }
}

const TERMINAL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct BddNode {
    var: u32,
    lo: u32,
    hi: u32,
}

#[derive(Debug)]
pub(crate) struct Bdd {
    nodes: Vec<BddNode>,
    unique: HashMap<(u32, u32, u32), u32>,
    and_cache: HashMap<(u32, u32), u32>,
    or_cache: HashMap<(u32, u32), u32>,
}

impl Bdd {
    pub(crate) fn new() -> Self {
        let t = BddNode { var: TERMINAL, lo: 0, hi: 0 };
        Bdd {
            nodes: alloc::vec![t, t],
            unique: HashMap::new(),
            and_cache: HashMap::new(),
            or_cache: HashMap::new(),
        }
    }

    fn mk(&mut self, var: u32, lo: u32, hi: u32) -> u32 {
        if lo == hi {
            return lo;
        }
        if let Some(&n) = self.unique.get(&(var, lo, hi)) {
            return n;
        }
        let n = self.nodes.len() as u32;
        self.nodes.push(BddNode { var, lo, hi });
        self.unique.insert((var, lo, hi), n);
        n
    }

    fn cofactors(&self, n: u32, var: u32) -> (u32, u32) {
        let node = self.nodes[n as usize];
        if node.var == var {
            (node.lo, node.hi)
        } else {
            (n, n)
        }
    }

    fn and(&mut self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if a == 1 || a == b {
            return b;
        }
        if b == 1 {
            return a;
        }
        let key = (a.min(b), a.max(b));
        if let Some(&r) = self.and_cache.get(&key) {
            return r;
        }
        let var = self.nodes[a as usize].var.min(self.nodes[b as usize].var);
        let (alo, ahi) = self.cofactors(a, var);
        let (blo, bhi) = self.cofactors(b, var);
        let lo = self.and(alo, blo);
        let hi = self.and(ahi, bhi);
        let r = self.mk(var, lo, hi);
        self.and_cache.insert(key, r);
        r
    }

    fn or(&mut self, a: u32, b: u32) -> u32 {
        if a == 1 || b == 1 {
            return 1;
        }
        if a == 0 || a == b {
            return b;
        }
        if b == 0 {
            return a;
        }
        let key = (a.min(b), a.max(b));
        if let Some(&r) = self.or_cache.get(&key) {
            return r;
        }
        let var = self.nodes[a as usize].var.min(self.nodes[b as usize].var);
        let (alo, ahi) = self.cofactors(a, var);
        let (blo, bhi) = self.cofactors(b, var);
        let lo = self.or(alo, blo);
        let hi = self.or(ahi, bhi);
        let r = self.mk(var, lo, hi);
        self.or_cache.insert(key, r);
        r
    }

    pub(crate) fn size(&self) -> usize {
        self.nodes.len()
    }
}

impl Session {
    pub fn class_and(&mut self, a: CanonClass, b: CanonClass) -> CanonClass {
        CanonClass(self.bdd.and(a.0, b.0))
    }

    pub fn class_or(&mut self, a: CanonClass, b: CanonClass) -> CanonClass {
        CanonClass(self.bdd.or(a.0, b.0))
    }

    /// The class of a single proper subformula, i.e. its variable `x_ψ`.
    pub(crate) fn var_class(&mut self, f: Formula) -> CanonClass {
        debug_assert!(self.is_proper(f));
        CanonClass(self.bdd.mk(f.0, 0, 1))
    }

    /// `[φ]_P`.
    pub fn canonicalize(&mut self, f: Formula) -> CanonClass {
        if let Some(c) = self.class_of[f.index()] {
            return c;
        }
        let c = match self.node(f) {
            Node::Tt => CanonClass::TRUE,
            Node::Ff => CanonClass::FALSE,
            Node::And(l, r) => {
                let (l, r) = (self.canonicalize(l), self.canonicalize(r));
                self.class_and(l, r)
            }
            Node::Or(l, r) => {
                let (l, r) = (self.canonicalize(l), self.canonicalize(r));
                self.class_or(l, r)
            }
            _ => self.var_class(f),
        };
        self.class_of[f.index()] = Some(c);
        c
    }

    /// `φ ≡_P ψ`.
    pub fn equiv_p(&mut self, f: Formula, g: Formula) -> bool {
        self.canonicalize(f) == self.canonicalize(g)
    }

    /// Applies the substitution `x_ψ ↦ sigma(ψ)` to a class.
    pub(crate) fn substitute(
        &mut self,
        c: CanonClass,
        sigma: &mut dyn FnMut(&mut Session, Formula) -> CanonClass,
    ) -> CanonClass {
        let mut memo = HashMap::new();
        self.substitute_rec(c.0, sigma, &mut memo)
    }

    fn substitute_rec(
        &mut self,
        n: u32,
        sigma: &mut dyn FnMut(&mut Session, Formula) -> CanonClass,
        memo: &mut HashMap<u32, CanonClass>,
    ) -> CanonClass {
        if n <= 1 {
            return CanonClass(n);
        }
        if let Some(&c) = memo.get(&n) {
            return c;
        }
        let node = self.bdd.nodes[n as usize];
        let x = sigma(self, Formula(node.var));
        let hi = self.substitute_rec(node.hi, sigma, memo);
        let lo = self.substitute_rec(node.lo, sigma, memo);
        // Monotone: f = (x ∧ f[x:=1]) ∨ f[x:=0].
        let xh = self.class_and(x, hi);
        let r = self.class_or(xh, lo);
        memo.insert(n, r);
        r
    }

    /// The proper subformulas the class depends on.
    pub fn support(&self, c: CanonClass) -> FormulaSet {
        let mut out = FormulaSet::new();
        let mut seen = hashbrown::HashSet::new();
        let mut stack = alloc::vec![c.0];
        while let Some(n) = stack.pop() {
            if n <= 1 || !seen.insert(n) {
                continue;
            }
            let node = self.bdd.nodes[n as usize];
            out.insert(Formula(node.var));
            stack.push(node.lo);
            stack.push(node.hi);
        }
        out
    }

    /// Minimal disjunctive normal form of a class: its prime implicants,
    /// sorted. `ff` has no clause and `tt` has the single empty clause.
    pub fn dnf_class(&mut self, c: CanonClass) -> Arc<[Clause]> {
        if let Some(d) = self.dnf.get(&c) {
            return d.clone();
        }
        let d: Arc<[Clause]> = match c.0 {
            0 => Arc::from([]),
            1 => Arc::from([Clause::tt()]),
            n => {
                let node = self.bdd.nodes[n as usize];
                let hi = self.dnf_class(CanonClass(node.hi));
                let lo = self.dnf_class(CanonClass(node.lo));
                let var = Formula(node.var);
                let mut clauses: Vec<Clause> = hi
                    .iter()
                    .map(|c| {
                        let mut v = Vec::with_capacity(c.len() + 1);
                        v.push(var);
                        v.extend_from_slice(c.literals());
                        Clause(v.into())
                    })
                    .chain(lo.iter().cloned())
                    .collect();
                absorb(&mut clauses);
                clauses.into()
            }
        };
        self.dnf.insert(c, d.clone());
        d
    }

    /// `dnf(φ)`.
    pub fn dnf(&mut self, f: Formula) -> Arc<[Clause]> {
        let c = self.canonicalize(f);
        self.dnf_class(c)
    }

    pub fn clause_class(&mut self, clause: &Clause) -> CanonClass {
        let mut n = 1;
        for &f in clause.literals().iter().rev() {
            n = self.bdd.mk(f.0, 0, n);
        }
        CanonClass(n)
    }

    pub fn clause_formula(&mut self, clause: &Clause) -> Formula {
        self.and_all(clause.literals().iter().copied())
    }

    /// Canonical representative: the disjunction of the prime implicants.
    pub fn representative(&mut self, c: CanonClass) -> Formula {
        let clauses = self.dnf_class(c);
        let conj: Vec<Formula> = clauses.iter().map(|cl| self.clause_formula(cl)).collect();
        self.or_all(conj)
    }

    /// Number of decision-diagram nodes allocated so far.
    pub fn class_nodes(&self) -> usize {
        self.bdd.size()
    }
}

/// Removes duplicates and clauses that contain another clause, then sorts.
pub(crate) fn absorb(clauses: &mut Vec<Clause>) {
    clauses.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    clauses.dedup();
    let mut kept: Vec<Clause> = Vec::with_capacity(clauses.len());
    for c in clauses.drain(..) {
        if !kept.iter().any(|k| k.is_subset_of(&c)) {
            kept.push(c);
        }
    }
    kept.sort();
    *clauses = kept;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause(s: &mut Session, texts: &[&str]) -> Clause {
        Clause::new(texts.iter().map(|t| s.parse(t).unwrap()))
    }

    #[test]
    fn propositional_examples() {
        let mut s = Session::new();
        let f = s.parse("X b | (G (a | X b) & X b)").unwrap();
        let g = s.parse("X b").unwrap();
        assert!(s.equiv_p(f, g));

        let f = s.parse("a & !a").unwrap();
        assert_ne!(s.canonicalize(f), CanonClass::FALSE);

        let f = s.parse("true & G a").unwrap();
        let g = s.parse("G a").unwrap();
        assert!(s.equiv_p(f, g));

        let f = s.parse("(a W b & false) | a W d").unwrap();
        let g = s.parse("a W d").unwrap();
        assert!(s.equiv_p(f, g));

        let f = s.parse("a U b").unwrap();
        let g = s.parse("a W b").unwrap();
        assert!(!s.equiv_p(f, g));

        let f = s.parse("F a | F a").unwrap();
        let g = s.parse("F a").unwrap();
        assert!(s.equiv_p(f, g));
    }

    #[test]
    fn dnf_examples() {
        let mut s = Session::new();
        let f = s.parse("G c & (a | b)").unwrap();
        let expected = [clause(&mut s, &["G c", "a"]), clause(&mut s, &["G c", "b"])];
        let mut got = s.dnf(f).to_vec();
        got.sort();
        let mut expected = expected.to_vec();
        expected.sort();
        assert_eq!(got, expected);

        let ff = s.ff();
        assert!(s.dnf(ff).is_empty());
        let tt = s.tt();
        assert_eq!(&*s.dnf(tt), &[Clause::tt()]);

        // Absorption: a | (a & b) has the single clause {a}.
        let f = s.parse("a | a & b").unwrap();
        assert_eq!(&*s.dnf(f), &[clause(&mut s, &["a"])]);
    }

    #[test]
    fn representative_is_a_fixpoint() {
        let mut s = Session::new();
        for text in ["(a | b) & (c | X d)", "a W b & F c | G a", "true", "false", "a & (a | b)"] {
            let f = s.parse(text).unwrap();
            let c = s.canonicalize(f);
            let r = s.representative(c);
            assert_eq!(s.canonicalize(r), c, "{text}");
            let r2 = s.representative(c);
            assert_eq!(r, r2);
        }
    }

    #[test]
    fn clause_class_matches_formula() {
        let mut s = Session::new();
        let cl = clause(&mut s, &["F a", "b", "G c"]);
        let f = s.clause_formula(&cl);
        assert_eq!(s.clause_class(&cl), s.canonicalize(f));
        assert_eq!(s.clause_class(&Clause::tt()), CanonClass::TRUE);
    }

    #[test]
    fn subset_check() {
        let mut s = Session::new();
        let ab = clause(&mut s, &["a", "b"]);
        let abc = clause(&mut s, &["a", "b", "c"]);
        let c = clause(&mut s, &["c"]);
        assert!(ab.is_subset_of(&abc));
        assert!(!abc.is_subset_of(&ab));
        assert!(c.is_subset_of(&abc));
        assert!(!c.is_subset_of(&ab));
        assert!(Clause::tt().is_subset_of(&c));
    }
}
