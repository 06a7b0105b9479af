//! Exhaustive formula families for differential testing.

use alloc::vec::Vec;

use crate::formula::{Atom, Formula, Node};
use crate::session::Session;

/// Every NNF formula over `atoms` whose syntax tree has depth at most
/// `max_depth`, where constants and literals have depth 0. Each operator
/// (X, F, G, ∧, ∨, U, W, M, R) may appear at any level. Formulas are
/// listed by increasing depth.
pub fn exhaustive(s: &mut Session, atoms: &[Atom], max_depth: usize) -> Vec<Formula> {
    let mut leaves = alloc::vec![s.tt(), s.ff()];
    for &a in atoms {
        leaves.push(s.lit(a, true));
        leaves.push(s.lit(a, false));
    }
    // upto[d] holds all formulas of depth ≤ d, exact[d] those of depth d.
    let mut upto = leaves.clone();
    let mut exact = leaves;
    let mut all = upto.clone();
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for &c in &upto {
            next.push(s.next(c));
            next.push(s.finally(c));
            next.push(s.globally(c));
        }
        for &l in &upto {
            for &r in &upto {
                if !exact.contains(&l) && !exact.contains(&r) {
                    continue;
                }
                for op in [Node::And(l, r), Node::Or(l, r), Node::Until(l, r), Node::WeakUntil(l, r), Node::StrongRelease(l, r), Node::Release(l, r)] {
                    next.push(s.rebuild(op, l, r));
                }
            }
        }
        // Unary operators only need a child of exact depth.
        next.retain(|&f| s.node(f).children().any(|c| exact.contains(&c)));
        all.extend_from_slice(&next);
        upto.extend_from_slice(&next);
        exact = next;
    }
    all
}

impl Session {
    /// Copies `f` from another session, mapping atoms by name.
    pub fn import(&mut self, from: &Session, f: Formula) -> Result<Formula, crate::Error> {
        let node = from.node(f);
        Ok(match node {
            Node::Tt => self.tt(),
            Node::Ff => self.ff(),
            Node::Atom(a) | Node::NegAtom(a) => {
                let b = self.atom(from.atom_name(a))?;
                self.lit(b, matches!(node, Node::Atom(_)))
            }
            _ => {
                let mut kids = node.children();
                let a = self.import(from, kids.next().unwrap())?;
                let b = match kids.next() {
                    Some(c) => self.import(from, c)?,
                    None => a,
                };
                self.rebuild(node, a, b)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let mut s = Session::new();
        let a = s.atom("a").unwrap();
        let b = s.atom("b").unwrap();
        assert_eq!(exhaustive(&mut s, &[a, b], 0).len(), 6);
        assert_eq!(exhaustive(&mut s, &[a, b], 1).len(), 6 + 18 + 216);
    }

    #[test]
    fn depths_and_distinctness() {
        let mut s = Session::new();
        let a = s.atom("a").unwrap();
        let fam = exhaustive(&mut s, &[a], 2);
        let mut sorted = fam.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), fam.len());
        assert!(fam.iter().all(|&f| s.depth(f) <= 2));
        // depth ≤ 1 over one atom: 4 leaves, 12 unary, 96 binary.
        let d1 = 4 + 12 + 96;
        assert_eq!(fam.len(), d1 + 3 * (d1 - 4) + 6 * (d1 * d1 - 16));
    }

    #[test]
    fn import_round_trip() {
        let mut s = Session::new();
        let f = s.parse("G (a U !b) | X c").unwrap();
        let mut t = Session::with_atoms(["c", "b", "a"]).unwrap();
        let g = t.import(&s, f).unwrap();
        assert_eq!(t.show(g).to_string(), s.show(f).to_string());
    }
}
