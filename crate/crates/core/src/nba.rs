//! Nondeterministic Büchi automata over `Reach∨`: a jump automaton for
//! `L¹`, single fragment automata for `L²` and `L³`, and a union over all
//! advice pairs.

use alloc::vec::Vec;

use crate::advice::{Advice, EvalNu};
use crate::automaton::{explore, intersect_nbas_generalized, union_nbas, Acceptance, Automaton, StateLabel};
use crate::error::Error;
use crate::formula::{Formula, FormulaSet};
use crate::fragments::{nba_fg_nu, nba_gf_mu};
use crate::prop::Clause;
use crate::session::Session;
use crate::word::Lasso;
use crate::Limits;

const PRE: u8 = 1;
const POST: u8 = 2;

/// NBA for `L¹`: accepts `w` iff `w_i ⊨ ⟦af(φ, w_0i)⟧Xν` for some `i`.
///
/// The first phase follows `af∨` from `dnf(φ)`. A jump from clause `ψ`
/// guesses `i` and continues with `⟦ψ⟧Xν` in the second phase, where every
/// state is accepting. The jump reads the next letter, so it goes straight
/// to `af∨(⟦ψ⟧Xν, ν)`.
pub fn nba_l1(s: &mut Session, f: Formula, x: &FormulaSet, limits: &Limits) -> Result<Automaton, Error> {
    let mut eval = EvalNu::new(x.clone());
    let init: Vec<(u8, Clause)> = s.dnf(f).iter().map(|c| (PRE, c.clone())).collect();
    let ex = explore(s.num_atoms(), init, limits.max_states, |(phase, clause): &(u8, Clause), nu, out| {
        out.extend(s.af_or(clause, nu).iter().map(|c| (*phase, c.clone())));
        if *phase == PRE {
            let c = s.clause_class(clause);
            let e = eval.class(s, c);
            let next = s.af_class(e, nu);
            out.extend(s.dnf_class(next).iter().map(|c| (POST, c.clone())));
        }
        Ok(())
    })?;
    let acc = ex.states_where(|(phase, _)| *phase == POST);
    Ok(ex.finish(|(phase, c)| StateLabel::Phase(*phase, c.clone()), Acceptance::Inf(acc)))
}

/// NBA for `L² = ⋀_{ψ ∈ X} GF(⟦ψ⟧Yμ)`, through
/// `GFψ1 ∧ ... ∧ GFψk ≡ GF(ψ1 ∧ F(ψ2 ∧ ... F ψk))`.
pub fn nba_l2(s: &mut Session, x: &FormulaSet, y: &FormulaSet, limits: &Limits) -> Result<Automaton, Error> {
    if x.is_empty() {
        return Ok(Automaton::universal(s.num_atoms(), true));
    }
    let parts: Vec<Formula> = x.iter().map(|&psi| s.eval_mu(psi, y)).collect();
    let mut chain = *parts.last().unwrap();
    for &p in parts.iter().rev().skip(1) {
        let later = s.finally(chain);
        chain = s.and(p, later);
    }
    nba_gf_mu(s, chain, limits)
}

/// NBA for `L³ = ⋀_{ψ ∈ Y} FG(⟦ψ⟧Xν)`, through `⋀ FGψi ≡ FG(⋀ ψi)`.
pub fn nba_l3(s: &mut Session, x: &FormulaSet, y: &FormulaSet, limits: &Limits) -> Result<Automaton, Error> {
    if y.is_empty() {
        return Ok(Automaton::universal(s.num_atoms(), true));
    }
    let parts: Vec<Formula> = y.iter().map(|&psi| s.eval_nu(psi, x)).collect();
    let conj = s.and_all(parts);
    nba_fg_nu(s, conj, limits)
}

/// NBA for `L¹ ∩ L² ∩ L³`.
pub fn nba_advice(s: &mut Session, f: Formula, advice: &Advice, limits: &Limits) -> Result<Automaton, Error> {
    let l1 = nba_l1(s, f, &advice.x, limits)?;
    let l2 = nba_l2(s, &advice.x, &advice.y, limits)?;
    let l3 = nba_l3(s, &advice.x, &advice.y, limits)?;
    intersect_nbas_generalized(&[&l1, &l2, &l3], limits.max_states)
}

/// NBA for `φ`: the union of [`nba_advice`] over all advice pairs.
pub fn nba(s: &mut Session, f: Formula, limits: &Limits) -> Result<Automaton, Error> {
    let advice = s.advice_pairs(f, limits.max_advice)?;
    let mut parts = Vec::with_capacity(advice.len());
    let mut total = 0;
    for adv in &advice {
        let a = nba_advice(s, f, adv, limits)?;
        total += a.num_states();
        if total > limits.max_states {
            return Err(Error::StateLimit { limit: limits.max_states });
        }
        parts.push(a);
    }
    let refs: Vec<&Automaton> = parts.iter().collect();
    union_nbas(&refs)
}

/// Whether [`nba`] accepts `w`: the union accepts iff one of its parts
/// does, so the parts are built and checked one at a time.
pub fn nba_accepts(s: &mut Session, f: Formula, w: &Lasso, limits: &Limits) -> Result<bool, Error> {
    for adv in s.advice_pairs(f, limits.max_advice)? {
        if nba_advice(s, f, &adv, limits)?.accepts_lasso_nondet(w)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::lasso_sat;

    #[test]
    fn l1_without_advice() {
        // ⟦F a⟧∅ν = ff, so no jump from F a itself helps; once a has been
        // read the tracked formula is tt and the jump succeeds.
        let mut s = Session::with_atoms(["a"]).unwrap();
        let f = s.parse("F a").unwrap();
        let a = nba_l1(&mut s, f, &FormulaSet::new(), &Limits::default()).unwrap();
        let post = a.acceptance().as_buchi().unwrap();
        assert_eq!(post.len(), 1);
        assert_eq!(a.label(post.iter().next().unwrap()), &StateLabel::Phase(POST, Clause::tt()));
        for w in Lasso::enumerate(1, 2, 2) {
            assert_eq!(a.accepts_lasso_nondet(&w).unwrap(), lasso_sat(&s, &w, f));
        }
    }

    #[test]
    fn chained_formula() {
        let mut s = Session::with_atoms(["a", "b"]).unwrap();
        let x: FormulaSet = [s.parse("F a").unwrap(), s.parse("F b").unwrap()].into_iter().collect();
        let a = nba_l2(&mut s, &x, &FormulaSet::new(), &Limits::default()).unwrap();
        let f = s.parse("G F a & G F b").unwrap();
        for w in Lasso::enumerate(2, 2, 2) {
            assert_eq!(a.accepts_lasso_nondet(&w).unwrap(), lasso_sat(&s, &w, f));
        }
    }

    #[test]
    fn agrees_with_oracle() {
        for text in ["G a | b U c", "F G (a U b | b)", "G F a & F G b", "a W (b M X a)", "G (a R F b)"] {
            let mut s2 = Session::with_atoms(["a", "b", "c"]).unwrap();
            let f = s2.parse(text).unwrap();
            let a = nba(&mut s2, f, &Limits::default()).unwrap();
            for w in Lasso::enumerate(3, 1, 2) {
                assert_eq!(a.accepts_lasso_nondet(&w).unwrap(), lasso_sat(&s2, &w, f), "{text} {}", w.render(&s2));
            }
        }
    }
}
