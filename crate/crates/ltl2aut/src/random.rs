//! Seeded random formulas and lassos.

use ltl2aut_core::{Atom, Formula, Lasso, Letter, Node, Session};
use rand::Rng;

/// A random NNF formula over `atoms` with exactly `size` syntax-tree nodes.
pub fn formula<R: Rng>(rng: &mut R, s: &mut Session, atoms: &[Atom], size: usize) -> Formula {
    if size <= 1 {
        let k = rng.gen_range(0..2 + 2 * atoms.len());
        return match k {
            0 => s.tt(),
            1 => s.ff(),
            k => s.lit(atoms[(k - 2) / 2], k % 2 == 0),
        };
    }
    // A binary node needs at least three nodes.
    let unary = size == 2 || rng.gen_ratio(1, 3);
    if unary {
        let c = formula(rng, s, atoms, size - 1);
        return match rng.gen_range(0..3) {
            0 => s.next(c),
            1 => s.finally(c),
            _ => s.globally(c),
        };
    }
    let left = rng.gen_range(1..size - 1);
    let l = formula(rng, s, atoms, left);
    let r = formula(rng, s, atoms, size - 1 - left);
    let node = match rng.gen_range(0..6) {
        0 => Node::And(l, r),
        1 => Node::Or(l, r),
        2 => Node::Until(l, r),
        3 => Node::WeakUntil(l, r),
        4 => Node::StrongRelease(l, r),
        _ => Node::Release(l, r),
    };
    s.rebuild(node, l, r)
}

/// A random lasso with `|u| <= max_prefix` and `1 <= |v| <= max_period`.
pub fn lasso<R: Rng>(rng: &mut R, num_atoms: u32, max_prefix: usize, max_period: usize) -> Lasso {
    let u = rng.gen_range(0..=max_prefix);
    let v = rng.gen_range(1..=max_period.max(1));
    let mut word = |len: usize| -> Vec<Letter> {
        (0..len).map(|_| Letter::from_bits(rng.gen_range(0..1u32 << num_atoms))).collect()
    };
    let (u, v) = (word(u), word(v));
    Lasso::new(u, v).expect("period is non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sizes_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut s = Session::with_atoms(["a", "b", "c"]).unwrap();
        let atoms: Vec<Atom> = ["a", "b", "c"].iter().map(|a| s.atom(a).unwrap()).collect();
        for size in 1..=15 {
            for _ in 0..20 {
                let f = formula(&mut rng, &mut s, &atoms, size);
                assert_eq!(s.size(f), size);
            }
        }
    }

    #[test]
    fn lassos_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let w = lasso(&mut rng, 3, 6, 6);
            assert!(w.prefix().len() <= 6);
            assert!((1..=6).contains(&w.period().len()));
            assert!(w.prefix().iter().chain(w.period()).all(|l| l.bits() < 8));
        }
    }
}
