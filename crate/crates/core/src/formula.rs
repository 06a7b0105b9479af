//! LTL formulas in negation normal form.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::session::Session;

/// Handle of an interned formula. Ordered by interning order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Formula(pub(crate) u32);

impl Formula {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of an atomic proposition within its session.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Atom(pub(crate) u32);

impl Atom {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of formulas ordered by interning order.
pub type FormulaSet = BTreeSet<Formula>;

/// One node of the syntax tree. Negation only occurs on atoms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Node {
    Tt,
    Ff,
    Atom(Atom),
    NegAtom(Atom),
    And(Formula, Formula),
    Or(Formula, Formula),
    Next(Formula),
    Finally(Formula),
    Globally(Formula),
    Until(Formula, Formula),
    WeakUntil(Formula, Formula),
    StrongRelease(Formula, Formula),
    Release(Formula, Formula),
}

impl Node {
    /// Children in left-to-right order.
    pub fn children(&self) -> impl Iterator<Item = Formula> {
        let (a, b) = match *self {
            Node::Tt | Node::Ff | Node::Atom(_) | Node::NegAtom(_) => (None, None),
            Node::Next(s) | Node::Finally(s) | Node::Globally(s) => (Some(s), None),
            Node::And(l, r)
            | Node::Or(l, r)
            | Node::Until(l, r)
            | Node::WeakUntil(l, r)
            | Node::StrongRelease(l, r)
            | Node::Release(l, r) => (Some(l), Some(r)),
        };
        a.into_iter().chain(b)
    }

    /// Least-fixed-point operators: F, U, M.
    pub fn is_mu(&self) -> bool {
        matches!(self, Node::Finally(_) | Node::Until(..) | Node::StrongRelease(..))
    }

    /// Greatest-fixed-point operators: G, W, R.
    pub fn is_nu(&self) -> bool {
        matches!(self, Node::Globally(_) | Node::WeakUntil(..) | Node::Release(..))
    }

    /// Neither a conjunction nor a disjunction.
    pub fn is_proper(&self) -> bool {
        !matches!(self, Node::And(..) | Node::Or(..))
    }
}

/// Syntactic fragment membership.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Fragment {
    /// Only F, U, M (plus X and boolean structure).
    Mu,
    /// Only G, W, R (plus X and boolean structure).
    Nu,
    /// No fixed-point operator at all.
    Both,
    Neither,
}

impl Fragment {
    pub fn admits_mu(self) -> bool {
        matches!(self, Fragment::Mu | Fragment::Both)
    }

    pub fn admits_nu(self) -> bool {
        matches!(self, Fragment::Nu | Fragment::Both)
    }
}

impl Session {
    pub fn node(&self, f: Formula) -> Node {
        self.nodes[f.index()]
    }

    pub fn tt(&self) -> Formula {
        Formula(0)
    }

    pub fn ff(&self) -> Formula {
        Formula(1)
    }

    pub fn lit(&mut self, a: Atom, positive: bool) -> Formula {
        self.intern(if positive { Node::Atom(a) } else { Node::NegAtom(a) })
    }

    pub fn and(&mut self, l: Formula, r: Formula) -> Formula {
        self.intern(Node::And(l, r))
    }

    pub fn or(&mut self, l: Formula, r: Formula) -> Formula {
        self.intern(Node::Or(l, r))
    }

    pub fn next(&mut self, s: Formula) -> Formula {
        self.intern(Node::Next(s))
    }

    pub fn finally(&mut self, s: Formula) -> Formula {
        self.intern(Node::Finally(s))
    }

    pub fn globally(&mut self, s: Formula) -> Formula {
        self.intern(Node::Globally(s))
    }

    pub fn until(&mut self, l: Formula, r: Formula) -> Formula {
        self.intern(Node::Until(l, r))
    }

    pub fn weak_until(&mut self, l: Formula, r: Formula) -> Formula {
        self.intern(Node::WeakUntil(l, r))
    }

    pub fn strong_release(&mut self, l: Formula, r: Formula) -> Formula {
        self.intern(Node::StrongRelease(l, r))
    }

    pub fn release(&mut self, l: Formula, r: Formula) -> Formula {
        self.intern(Node::Release(l, r))
    }

    /// Right-nested conjunction; `tt` for an empty iterator.
    pub fn and_all(&mut self, items: impl IntoIterator<Item = Formula>) -> Formula {
        let items: Vec<_> = items.into_iter().collect();
        let mut it = items.into_iter().rev();
        match it.next() {
            None => self.tt(),
            Some(last) => it.fold(last, |acc, f| self.and(f, acc)),
        }
    }

    /// Right-nested disjunction; `ff` for an empty iterator.
    pub fn or_all(&mut self, items: impl IntoIterator<Item = Formula>) -> Formula {
        let items: Vec<_> = items.into_iter().collect();
        let mut it = items.into_iter().rev();
        match it.next() {
            None => self.ff(),
            Some(last) => it.fold(last, |acc, f| self.or(f, acc)),
        }
    }

    /// Rebuilds a node with new children, keeping the operator. For unary
    /// operators `b` is ignored; leaves are returned unchanged.
    pub fn rebuild(&mut self, node: Node, a: Formula, b: Formula) -> Formula {
        let n = match node {
            Node::Tt | Node::Ff | Node::Atom(_) | Node::NegAtom(_) => node,
            Node::Next(_) => Node::Next(a),
            Node::Finally(_) => Node::Finally(a),
            Node::Globally(_) => Node::Globally(a),
            Node::And(..) => Node::And(a, b),
            Node::Or(..) => Node::Or(a, b),
            Node::Until(..) => Node::Until(a, b),
            Node::WeakUntil(..) => Node::WeakUntil(a, b),
            Node::StrongRelease(..) => Node::StrongRelease(a, b),
            Node::Release(..) => Node::Release(a, b),
        };
        self.intern(n)
    }

    pub fn is_proper(&self, f: Formula) -> bool {
        self.node(f).is_proper()
    }

    /// All subformulas, including `f` itself.
    pub fn subformulas(&self, f: Formula) -> FormulaSet {
        let mut out = FormulaSet::new();
        let mut stack = alloc::vec![f];
        while let Some(g) = stack.pop() {
            if out.insert(g) {
                stack.extend(self.node(g).children());
            }
        }
        out
    }

    /// Subformulas rooted at a literal, a constant or a temporal operator.
    pub fn proper_subformulas(&self, f: Formula) -> FormulaSet {
        self.subformulas(f)
            .into_iter()
            .filter(|&g| self.is_proper(g))
            .collect()
    }

    /// The F/U/M-rooted subformulas.
    pub fn mu_set(&self, f: Formula) -> FormulaSet {
        self.subformulas(f)
            .into_iter()
            .filter(|&g| self.node(g).is_mu())
            .collect()
    }

    /// The G/W/R-rooted subformulas.
    pub fn nu_set(&self, f: Formula) -> FormulaSet {
        self.subformulas(f)
            .into_iter()
            .filter(|&g| self.node(g).is_nu())
            .collect()
    }

    pub fn fragment_of(&self, f: Formula) -> Fragment {
        let subs = self.subformulas(f);
        let mu = subs.iter().any(|&g| self.node(g).is_mu());
        let nu = subs.iter().any(|&g| self.node(g).is_nu());
        match (mu, nu) {
            (false, false) => Fragment::Both,
            (true, false) => Fragment::Mu,
            (false, true) => Fragment::Nu,
            (true, true) => Fragment::Neither,
        }
    }

    /// Number of syntax-tree nodes (shared subtrees counted every time).
    pub fn size(&self, f: Formula) -> usize {
        1 + self.node(f).children().map(|c| self.size(c)).sum::<usize>()
    }

    /// Operator nesting depth; literals and constants have depth 0.
    pub fn depth(&self, f: Formula) -> usize {
        self.node(f)
            .children()
            .map(|c| 1 + self.depth(c))
            .max()
            .unwrap_or(0)
    }

    /// Displays `f` in the concrete syntax accepted by [`Session::parse`].
    pub fn show(&self, f: Formula) -> Show<'_> {
        Show { session: self, formula: f }
    }
}

/// [`fmt::Display`] adapter returned by [`Session::show`].
#[derive(Debug, Clone, Copy)]
pub struct Show<'a> {
    session: &'a Session,
    formula: Formula,
}

const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_BINARY: u8 = 3;
const PREC_UNARY: u8 = 4;

impl Show<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, g: Formula, min: u8) -> fmt::Result {
        let s = self.session;
        let node = s.node(g);
        let prec = match node {
            Node::Or(..) => PREC_OR,
            Node::And(..) => PREC_AND,
            Node::Until(..) | Node::WeakUntil(..) | Node::StrongRelease(..) | Node::Release(..) => {
                PREC_BINARY
            }
            _ => PREC_UNARY,
        };
        if prec < min {
            f.write_str("(")?;
        }
        match node {
            Node::Tt => f.write_str("true")?,
            Node::Ff => f.write_str("false")?,
            Node::Atom(a) => f.write_str(s.atom_name(a))?,
            Node::NegAtom(a) => write!(f, "!{}", s.atom_name(a))?,
            Node::Or(l, r) => {
                self.write(f, l, PREC_OR)?;
                f.write_str(" | ")?;
                self.write(f, r, PREC_AND)?;
            }
            Node::And(l, r) => {
                self.write(f, l, PREC_AND)?;
                f.write_str(" & ")?;
                self.write(f, r, PREC_BINARY)?;
            }
            Node::Next(x) | Node::Finally(x) | Node::Globally(x) => {
                let op = match node {
                    Node::Next(_) => "X ",
                    Node::Finally(_) => "F ",
                    _ => "G ",
                };
                f.write_str(op)?;
                self.write(f, x, PREC_UNARY)?;
            }
            Node::Until(l, r) | Node::WeakUntil(l, r) | Node::StrongRelease(l, r) | Node::Release(l, r) => {
                let op = match node {
                    Node::Until(..) => " U ",
                    Node::WeakUntil(..) => " W ",
                    Node::StrongRelease(..) => " M ",
                    _ => " R ",
                };
                self.write(f, l, PREC_UNARY)?;
                f.write_str(op)?;
                self.write(f, r, PREC_BINARY)?;
            }
        }
        if prec < min {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Show<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula, 0)
    }
}
