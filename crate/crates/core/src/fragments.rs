//! Automata for the fragments μLTL and νLTL and for `GF(μLTL)` and
//! `FG(νLTL)`: deterministic ones over `Reach`, nondeterministic ones
//! over `Reach∨`.

use alloc::vec::Vec;

use crate::automaton::{explore, Acceptance, Automaton, StateLabel};
use crate::error::Error;
use crate::formula::{Formula, Fragment};
use crate::prop::{CanonClass, Clause};
use crate::session::Session;
use crate::Limits;

fn require(s: &Session, f: Formula, mu: bool) -> Result<(), Error> {
    let found = s.fragment_of(f);
    let ok = if mu { found.admits_mu() } else { found.admits_nu() };
    if ok {
        Ok(())
    } else {
        let required = if mu { Fragment::Mu } else { Fragment::Nu };
        Err(Error::FragmentViolation { required, found })
    }
}

/// Deterministic automaton over the classes reachable from `init`, where
/// `reset` (if any) replaces the successors of one class by a fixed class.
fn class_automaton(
    s: &mut Session,
    init: CanonClass,
    reset: Option<(CanonClass, CanonClass)>,
    acceptance: impl FnOnce(crate::automaton::StateSet) -> Acceptance,
    marked: CanonClass,
    limits: &Limits,
) -> Result<Automaton, Error> {
    let ex = explore(s.num_atoms(), [init], limits.max_states, |&c, nu, out| {
        out.push(match reset {
            Some((from, to)) if c == from => to,
            _ => s.af_class(c, nu),
        });
        Ok(())
    })?;
    let set = ex.states_where(|&c| c == marked);
    Ok(ex.finish(|&c| StateLabel::Class(c), acceptance(set)))
}

/// `(Reach(φ), af, φ, inf(tt))` for `φ ∈ μLTL`.
pub fn dba_mu(s: &mut Session, f: Formula, limits: &Limits) -> Result<Automaton, Error> {
    require(s, f, true)?;
    let c = s.canonicalize(f);
    class_automaton(s, c, None, Acceptance::Inf, CanonClass::TRUE, limits)
}

/// DBA for `GFφ`, `φ ∈ μLTL`: `Reach(Fφ)` where `tt` resets to `Fφ`.
pub fn dba_gf_mu(s: &mut Session, f: Formula, limits: &Limits) -> Result<Automaton, Error> {
    require(s, f, true)?;
    let ff = s.finally(f);
    let c = s.canonicalize(ff);
    class_automaton(s, c, Some((CanonClass::TRUE, c)), Acceptance::Inf, CanonClass::TRUE, limits)
}

/// `(Reach(φ), af, φ, fin(ff))` for `φ ∈ νLTL`.
pub fn dca_nu(s: &mut Session, f: Formula, limits: &Limits) -> Result<Automaton, Error> {
    require(s, f, false)?;
    let c = s.canonicalize(f);
    class_automaton(s, c, None, Acceptance::Fin, CanonClass::FALSE, limits)
}

/// [`dca_nu`] started from a class known to be in νLTL.
pub(crate) fn dca_nu_class(s: &mut Session, c: CanonClass, limits: &Limits) -> Result<Automaton, Error> {
    class_automaton(s, c, None, Acceptance::Fin, CanonClass::FALSE, limits)
}

/// DCA for `FGφ`, `φ ∈ νLTL`: `Reach(Gφ)` where `ff` resets to `Gφ`.
pub fn dca_fg_nu(s: &mut Session, f: Formula, limits: &Limits) -> Result<Automaton, Error> {
    require(s, f, false)?;
    let g = s.globally(f);
    let c = s.canonicalize(g);
    class_automaton(s, c, Some((CanonClass::FALSE, c)), Acceptance::Fin, CanonClass::FALSE, limits)
}

/// NBA over the clauses reachable from `init` under `af∨`; `reset` maps a
/// clause to the successors replacing its own.
fn clause_automaton(
    s: &mut Session,
    init: Vec<Clause>,
    reset: Option<(Clause, Vec<Clause>)>,
    accepting: impl Fn(&Clause) -> bool,
    limits: &Limits,
) -> Result<Automaton, Error> {
    let ex = explore(s.num_atoms(), init, limits.max_states, |c: &Clause, nu, out| {
        match &reset {
            Some((from, to)) if c == from => out.extend(to.iter().cloned()),
            _ => out.extend(s.af_or(c, nu).iter().cloned()),
        }
        Ok(())
    })?;
    let set = ex.states_where(&accepting);
    Ok(ex.finish(|c| StateLabel::Clause(c.clone()), Acceptance::Inf(set)))
}

/// `(Reach∨(φ), af∨, dnf(φ), inf(tt))` for `φ ∈ μLTL`.
pub fn nba_mu(s: &mut Session, f: Formula, limits: &Limits) -> Result<Automaton, Error> {
    require(s, f, true)?;
    let init = s.dnf(f).to_vec();
    clause_automaton(s, init, None, Clause::is_tt, limits)
}

/// NBA for `GFφ`, `φ ∈ μLTL`: `Reach∨(Fφ)` where `tt` resets to `Fφ`.
pub fn nba_gf_mu(s: &mut Session, f: Formula, limits: &Limits) -> Result<Automaton, Error> {
    require(s, f, true)?;
    let ff = s.finally(f);
    let start = alloc::vec![Clause::new([ff])];
    clause_automaton(s, start.clone(), Some((Clause::tt(), start)), Clause::is_tt, limits)
}

/// `(Reach∨(φ), af∨, dnf(φ), inf(Reach∨(φ)))` for `φ ∈ νLTL`.
pub fn nba_nu(s: &mut Session, f: Formula, limits: &Limits) -> Result<Automaton, Error> {
    require(s, f, false)?;
    let init = s.dnf(f).to_vec();
    clause_automaton(s, init, None, |_| true, limits)
}

/// NBA for `FGφ`, `φ ∈ νLTL`: an initial state `FGφ` that loops and may
/// move to `Gφ` on any letter, followed by `Reach∨(Gφ)`, all accepting.
pub fn nba_fg_nu(s: &mut Session, f: Formula, limits: &Limits) -> Result<Automaton, Error> {
    require(s, f, false)?;
    let g = s.globally(f);
    let fg = s.finally(g);
    let wait = Clause::new([fg]);
    let targets = alloc::vec![wait.clone(), Clause::new([g])];
    let w = wait.clone();
    clause_automaton(s, alloc::vec![wait.clone()], Some((wait, targets)), move |c| *c != w, limits)
}
