//! The after function `af`, its lifts to words and classes, and the
//! reachable sets `Reach(φ)` and `Reach∨(φ)`.

use alloc::collections::VecDeque;
use alloc::sync::Arc;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::Error;
use crate::formula::{Formula, Node};
use crate::prop::{CanonClass, Clause};
use crate::session::Session;
use crate::word::Letter;

impl Session {
    /// `af(φ, ν)` as a formula, exactly as defined (no simplification).
    pub fn af_letter(&mut self, f: Formula, nu: Letter) -> Formula {
        match self.node(f) {
            Node::Tt | Node::Ff => f,
            Node::Atom(a) if nu.contains(a) => self.tt(),
            Node::NegAtom(a) if !nu.contains(a) => self.tt(),
            Node::Atom(_) | Node::NegAtom(_) => self.ff(),
            Node::And(l, r) => {
                let (l, r) = (self.af_letter(l, nu), self.af_letter(r, nu));
                self.and(l, r)
            }
            Node::Or(l, r) => {
                let (l, r) = (self.af_letter(l, nu), self.af_letter(r, nu));
                self.or(l, r)
            }
            Node::Next(s) => s,
            Node::Finally(s) => {
                let s = self.af_letter(s, nu);
                self.or(s, f)
            }
            Node::Globally(s) => {
                let s = self.af_letter(s, nu);
                self.and(s, f)
            }
            Node::Until(l, r) | Node::WeakUntil(l, r) => {
                let (l, r) = (self.af_letter(l, nu), self.af_letter(r, nu));
                let keep = self.and(l, f);
                self.or(r, keep)
            }
            Node::StrongRelease(l, r) | Node::Release(l, r) => {
                let (l, r) = (self.af_letter(l, nu), self.af_letter(r, nu));
                let keep = self.or(l, f);
                self.and(r, keep)
            }
        }
    }

    /// `af(φ, w)` for a finite word.
    pub fn af_word(&mut self, f: Formula, w: &[Letter]) -> Formula {
        w.iter().fold(f, |f, &nu| self.af_letter(f, nu))
    }

    /// `[af(ψ, ν)]_P` for a proper subformula `ψ`.
    pub(crate) fn af_var(&mut self, f: Formula, nu: Letter) -> CanonClass {
        if let Some(&c) = self.af_var.get(&(f, nu)) {
            return c;
        }
        let c = match self.node(f) {
            Node::Tt => CanonClass::TRUE,
            Node::Ff => CanonClass::FALSE,
            Node::Atom(a) if nu.contains(a) => CanonClass::TRUE,
            Node::NegAtom(a) if !nu.contains(a) => CanonClass::TRUE,
            Node::Atom(_) | Node::NegAtom(_) => CanonClass::FALSE,
            Node::And(..) | Node::Or(..) => {
                let c = self.canonicalize(f);
                self.af_class(c, nu)
            }
            Node::Next(s) => self.canonicalize(s),
            Node::Finally(s) => {
                let (s, x) = (self.af_formula(s, nu), self.var_class(f));
                self.class_or(s, x)
            }
            Node::Globally(s) => {
                let (s, x) = (self.af_formula(s, nu), self.var_class(f));
                self.class_and(s, x)
            }
            Node::Until(l, r) | Node::WeakUntil(l, r) => {
                let (l, r) = (self.af_formula(l, nu), self.af_formula(r, nu));
                let x = self.var_class(f);
                let keep = self.class_and(l, x);
                self.class_or(r, keep)
            }
            Node::StrongRelease(l, r) | Node::Release(l, r) => {
                let (l, r) = (self.af_formula(l, nu), self.af_formula(r, nu));
                let x = self.var_class(f);
                let keep = self.class_or(l, x);
                self.class_and(r, keep)
            }
        };
        self.af_var.insert((f, nu), c);
        c
    }

    fn af_formula(&mut self, f: Formula, nu: Letter) -> CanonClass {
        let c = self.canonicalize(f);
        self.af_class(c, nu)
    }

    /// `af([φ]_P, ν)`.
    pub fn af_class(&mut self, c: CanonClass, nu: Letter) -> CanonClass {
        if c.is_tt() || c.is_ff() {
            return c;
        }
        if let Some(&r) = self.af_class.get(&(c, nu)) {
            return r;
        }
        let r = self.substitute(c, &mut |s, v| s.af_var(v, nu));
        self.af_class.insert((c, nu), r);
        r
    }

    /// `af([φ]_P, w)` for a finite word.
    pub fn af_word_class(&mut self, c: CanonClass, w: &[Letter]) -> CanonClass {
        w.iter().fold(c, |c, &nu| self.af_class(c, nu))
    }

    /// `af∨(ψ, ν) = dnf(af(ψ, ν))` for a clause.
    pub fn af_or(&mut self, clause: &Clause, nu: Letter) -> Arc<[Clause]> {
        let c = self.clause_class(clause);
        let next = self.af_class(c, nu);
        self.dnf_class(next)
    }

    /// `af∨(ψ, w)`: the union over all intermediate clauses.
    pub fn af_or_word(&mut self, clause: &Clause, w: &[Letter]) -> Vec<Clause> {
        let mut current = alloc::vec![clause.clone()];
        for &nu in w {
            let mut next: Vec<Clause> = Vec::new();
            for c in &current {
                next.extend(self.af_or(c, nu).iter().cloned());
            }
            next.sort();
            next.dedup();
            current = next;
        }
        current
    }

    /// `Reach(φ)` with its transition table, built breadth-first.
    pub fn reach(&mut self, f: Formula, max_states: usize) -> Result<ReachSet, Error> {
        let c = self.canonicalize(f);
        self.reach_class(c, max_states)
    }

    pub fn reach_class(&mut self, init: CanonClass, max_states: usize) -> Result<ReachSet, Error> {
        let letters: Vec<Letter> = self.alphabet().collect();
        let mut set = ReachSet {
            classes: Vec::new(),
            index: HashMap::new(),
            succ: Vec::new(),
            letters: letters.len(),
        };
        set.insert(init);
        let mut i = 0;
        while i < set.classes.len() {
            let c = set.classes[i];
            for &nu in &letters {
                let d = self.af_class(c, nu);
                let j = set.insert(d);
                set.succ.push(j);
            }
            if set.classes.len() > max_states {
                return Err(Error::StateLimit { limit: max_states });
            }
            i += 1;
        }
        Ok(set)
    }

    /// `Reach∨(φ)`: every clause reachable from `dnf(φ)` under `af∨`.
    pub fn reach_or(&mut self, f: Formula, max_states: usize) -> Result<ReachOrSet, Error> {
        let init = self.dnf(f);
        let letters: Vec<Letter> = self.alphabet().collect();
        let mut set = ReachOrSet {
            clauses: Vec::new(),
            index: HashMap::new(),
            succ: Vec::new(),
            letters: letters.len(),
            initial: Vec::new(),
        };
        let mut queue = VecDeque::new();
        for c in init.iter() {
            let (i, fresh) = set.insert(c.clone());
            set.initial.push(i);
            if fresh {
                queue.push_back(i);
            }
        }
        while let Some(i) = queue.pop_front() {
            let clause = set.clauses[i as usize].clone();
            for (k, &nu) in letters.iter().enumerate() {
                let next = self.af_or(&clause, nu);
                let mut ids = Vec::with_capacity(next.len());
                for c in next.iter() {
                    let (j, fresh) = set.insert(c.clone());
                    if fresh {
                        queue.push_back(j);
                    }
                    ids.push(j);
                }
                let slot = i as usize * set.letters + k;
                if set.succ.len() <= slot {
                    set.succ.resize(slot + 1, Vec::new());
                }
                set.succ[slot] = ids;
            }
            if set.clauses.len() > max_states {
                return Err(Error::StateLimit { limit: max_states });
            }
        }
        set.succ.resize(set.clauses.len() * set.letters, Vec::new());
        Ok(set)
    }
}

/// `Reach(φ)`: classes in discovery order (index 0 is `[φ]_P`) and the
/// total deterministic transition table.
#[derive(Clone, Debug)]
pub struct ReachSet {
    classes: Vec<CanonClass>,
    index: HashMap<CanonClass, u32>,
    succ: Vec<u32>,
    letters: usize,
}

impl ReachSet {
    fn insert(&mut self, c: CanonClass) -> u32 {
        let next = self.classes.len() as u32;
        *self.index.entry(c).or_insert_with(|| {
            self.classes.push(c);
            next
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[CanonClass] {
        &self.classes
    }

    pub fn contains(&self, c: CanonClass) -> bool {
        self.index.contains_key(&c)
    }

    pub fn index_of(&self, c: CanonClass) -> Option<u32> {
        self.index.get(&c).copied()
    }

    /// Index of `af(classes[i], ν)`.
    pub fn successor(&self, i: u32, nu: Letter) -> u32 {
        self.succ[i as usize * self.letters + nu.index()]
    }
}

/// `Reach∨(φ)`: clauses in discovery order with the `af∨` relation.
#[derive(Clone, Debug)]
pub struct ReachOrSet {
    clauses: Vec<Clause>,
    index: HashMap<Clause, u32>,
    succ: Vec<Vec<u32>>,
    letters: usize,
    initial: Vec<u32>,
}

impl ReachOrSet {
    fn insert(&mut self, c: Clause) -> (u32, bool) {
        if let Some(&i) = self.index.get(&c) {
            return (i, false);
        }
        let i = self.clauses.len() as u32;
        self.clauses.push(c.clone());
        self.index.insert(c, i);
        (i, true)
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Indices of the clauses of `dnf(φ)`.
    pub fn initial(&self) -> &[u32] {
        &self.initial
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.index.contains_key(c)
    }

    pub fn successors(&self, i: u32, nu: Letter) -> &[u32] {
        &self.succ[i as usize * self.letters + nu.index()]
    }
}
