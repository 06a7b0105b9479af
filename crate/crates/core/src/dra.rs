//! Deterministic Rabin automata: one single-pair DRA per advice pair,
//! combined by a synchronous product with a disjunctive Rabin condition.

use alloc::vec::Vec;

use crate::advice::{Advice, EvalNu};
use crate::automaton::{explore, intersect_dbas, product_det, product_det_any_accepts, Acceptance, Automaton, StateLabel, StateSet};
use crate::error::Error;
use crate::formula::{Formula, FormulaSet};
use crate::fragments::{dba_gf_mu, dca_fg_nu};
use crate::prop::CanonClass;
use crate::session::Session;
use crate::word::Lasso;
use crate::Limits;

/// DCA for `L¹`: accepts `w` iff `w_i ⊨ ⟦af(φ, w_0i)⟧Xν` for some `i`.
///
/// A state is a tracker `af(φ, w_0j)` and a checker for the current
/// attempt. When the checker dies (`ff`) the next letter restarts it from
/// the tracker; the dead states must be visited finitely often.
pub fn dca_l1(s: &mut Session, f: Formula, x: &FormulaSet, limits: &Limits) -> Result<Automaton, Error> {
    let mut eval = EvalNu::new(x.clone());
    let root = s.canonicalize(f);
    let init = (root, eval.class(s, root));
    let ex = explore(s.num_atoms(), [init], limits.max_states, |&(xi, zeta): &(CanonClass, CanonClass), nu, out| {
        let checker = if zeta.is_ff() { eval.class(s, xi) } else { zeta };
        out.push((s.af_class(xi, nu), s.af_class(checker, nu)));
        Ok(())
    })?;
    let dead = ex.states_where(|(_, zeta)| zeta.is_ff());
    Ok(ex.finish(|&(xi, zeta)| StateLabel::Switch(xi, zeta), Acceptance::Fin(dead)))
}

/// DBA for `L² = ⋀_{ψ ∈ X} GF(⟦ψ⟧Yμ)`.
pub fn dba_l2(s: &mut Session, x: &FormulaSet, y: &FormulaSet, limits: &Limits) -> Result<Automaton, Error> {
    if x.is_empty() {
        return Ok(Automaton::universal(s.num_atoms(), true));
    }
    let parts = x
        .iter()
        .map(|&psi| {
            let g = s.eval_mu(psi, y);
            dba_gf_mu(s, g, limits)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&Automaton> = parts.iter().collect();
    intersect_dbas(&refs, limits.max_states)
}

/// DCA for `L³ = ⋀_{ψ ∈ Y} FG(⟦ψ⟧Xν)`: the product of the `FG` automata
/// with `fin` over the union of their rejecting sets.
pub fn dca_l3(s: &mut Session, x: &FormulaSet, y: &FormulaSet, limits: &Limits) -> Result<Automaton, Error> {
    if y.is_empty() {
        return Ok(Automaton::universal(s.num_atoms(), false));
    }
    let parts = y
        .iter()
        .map(|&psi| {
            let g = s.eval_nu(psi, x);
            dca_fg_nu(s, g, limits)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&Automaton> = parts.iter().collect();
    product_det(&refs, limits.max_states, |conds| {
        let mut all = StateSet::new();
        for c in conds {
            if let Acceptance::Fin(set) = c {
                all.union_with(&set);
            }
        }
        Acceptance::Fin(all)
    })
}

/// DRA with one Rabin pair for `L¹ ∩ L² ∩ L³`.
pub fn dra_advice(s: &mut Session, f: Formula, advice: &Advice, limits: &Limits) -> Result<Automaton, Error> {
    let l1 = dca_l1(s, f, &advice.x, limits)?;
    let l2 = dba_l2(s, &advice.x, &advice.y, limits)?;
    let l3 = dca_l3(s, &advice.x, &advice.y, limits)?;
    product_det(&[&l1, &l2, &l3], limits.max_states, |conds| {
        let [Acceptance::Fin(mut fin), Acceptance::Inf(inf), Acceptance::Fin(fin3)] = <[Acceptance; 3]>::try_from(conds).unwrap() else {
            unreachable!("component conditions are fin, inf, fin")
        };
        fin.union_with(&fin3);
        Acceptance::And(alloc::vec![Acceptance::Fin(fin), Acceptance::Inf(inf)])
    })
}

/// DRA for `φ`: the product of the per-advice DRAs, accepting when one of
/// them does. Rabin pair `i` belongs to the `i`-th advice pair of
/// [`Session::advice_pairs`].
pub fn dra(s: &mut Session, f: Formula, limits: &Limits) -> Result<Automaton, Error> {
    let parts = dra_parts(s, f, limits)?;
    let refs: Vec<&Automaton> = parts.iter().collect();
    product_det(&refs, limits.max_states, Acceptance::Or)
}

/// Whether [`dra`] accepts `w`, following only the run on `w` through the
/// product. Works when the whole product is too large to build.
pub fn dra_accepts(s: &mut Session, f: Formula, w: &Lasso, limits: &Limits) -> Result<bool, Error> {
    let parts = dra_parts(s, f, limits)?;
    let refs: Vec<&Automaton> = parts.iter().collect();
    product_det_any_accepts(&refs, w, limits.max_states)
}

fn dra_parts(s: &mut Session, f: Formula, limits: &Limits) -> Result<Vec<Automaton>, Error> {
    let advice = s.advice_pairs(f, limits.max_advice)?;
    advice.iter().map(|adv| dra_advice(s, f, adv, limits)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::lasso_sat;
    use crate::word::Letter;

    fn letter(s: &mut Session, atoms: &[&str]) -> Letter {
        atoms.iter().fold(Letter::EMPTY, |l, a| l.with(s.atom(a).unwrap()))
    }

    fn lasso(s: &mut Session, u: &[&[&str]], v: &[&[&str]]) -> Lasso {
        let u = u.iter().map(|l| letter(s, l)).collect();
        let v = v.iter().map(|l| letter(s, l)).collect();
        Lasso::new(u, v).unwrap()
    }

    #[test]
    fn switching_example() {
        let mut s = Session::with_atoms(["a", "b", "c"]).unwrap();
        let f = s.parse("G (a U b | F c)").unwrap();
        let x: FormulaSet = [s.parse("a U b").unwrap()].into_iter().collect();
        let g = s.eval_nu(f, &x);
        let want = s.parse("G (a W b)").unwrap();
        assert!(s.equiv_p(g, want));
        let a = dca_l1(&mut s, f, &x, &Limits::default()).unwrap();
        let yes = lasso(&mut s, &[&["c"], &["c"]], &[&["a"], &["b"]]);
        let no = lasso(&mut s, &[], &[&["c"]]);
        assert!(a.accepts_lasso_det(&yes));
        assert!(!a.accepts_lasso_det(&no));
    }

    #[test]
    fn small_dra() {
        let mut s = Session::with_atoms(["a", "b", "c"]).unwrap();
        let f = s.parse("G a | b U c").unwrap();
        let a = dra(&mut s, f, &Limits::default()).unwrap();
        assert!(a.is_deterministic());
        assert_eq!(a.acceptance().rabin_pairs().unwrap().len(), 4);
        for (u, v, want) in [
            (&[][..], &[&["a"][..]][..], true),
            (&[], &[&["b"]], false),
            (&[&["b"][..], &["c"]], &[&["a"]], true),
        ] {
            let w = lasso(&mut s, u, v);
            assert_eq!(a.accepts_lasso_det(&w), want);
            assert_eq!(lasso_sat(&s, &w, f), want);
        }
    }

    #[test]
    fn empty_advice_is_universal() {
        let mut s = Session::with_atoms(["a"]).unwrap();
        let e = FormulaSet::new();
        let a = dba_l2(&mut s, &e, &e, &Limits::default()).unwrap();
        assert_eq!(a.num_states(), 1);
        let a = dca_l3(&mut s, &e, &e, &Limits::default()).unwrap();
        assert_eq!(a.num_states(), 1);
        let w = lasso(&mut s, &[], &[&[]]);
        assert!(a.accepts_lasso_det(&w));
    }
}
