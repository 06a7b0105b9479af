//! Limit-deterministic Büchi automata: a deterministic initial component
//! over `Reach(φ)` that jumps once into a deterministic accepting
//! component `D_{ψ,X,Y}`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::advice::{Advice, EvalNu};
use crate::automaton::{dca_to_dba, explore, explore_lasso, intersect_dbas, Acceptance, Automaton, StateId, StateLabel};
use crate::dra::dba_l2;
use crate::error::Error;
use crate::formula::Formula;
use crate::fragments::dca_nu_class;
use crate::prop::CanonClass;
use crate::session::Session;
use crate::word::{Lasso, Letter};
use crate::Limits;

/// DBA `D_{ψ,X,Y}` for `⟦ψ⟧Xν ∧ ⋀_{χ ∈ X} GF(⟦χ⟧Yμ) ∧ ⋀_{χ ∈ Y} G(⟦χ⟧Xν)`.
pub fn accepting_component(s: &mut Session, psi: CanonClass, advice: &Advice, limits: &Limits) -> Result<Automaton, Error> {
    let mut eval = EvalNu::new(advice.x.clone());
    let e = eval.class(s, psi);
    let first = dca_to_dba(&dca_nu_class(s, e, limits)?)?;
    let second = dba_l2(s, &advice.x, &advice.y, limits)?;
    let always: Vec<Formula> = advice
        .y
        .iter()
        .map(|&chi| {
            let g = s.eval_nu(chi, &advice.x);
            s.globally(g)
        })
        .collect();
    let conj = s.and_all(always);
    let c = s.canonicalize(conj);
    let third = dca_to_dba(&dca_nu_class(s, c, limits)?)?;
    intersect_dbas(&[&first, &second, &third], limits.max_states)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Initial(CanonClass),
    Accepting(u32, StateId),
}

/// The transition structure of [`ldba`], with accepting components built
/// on demand and shared by `(ψ, X, Y)`.
struct Builder<'a> {
    advice: Vec<Advice>,
    limits: &'a Limits,
    components: Vec<Automaton>,
    component_of: HashMap<CanonClass, u32>,
}

impl<'a> Builder<'a> {
    fn new(s: &mut Session, f: Formula, limits: &'a Limits) -> Result<Self, Error> {
        Ok(Builder { advice: s.advice_pairs(f, limits.max_advice)?, limits, components: Vec::new(), component_of: HashMap::new() })
    }

    fn successors(&mut self, s: &mut Session, key: Key, nu: Letter, out: &mut Vec<Key>) -> Result<(), Error> {
        match key {
            Key::Initial(psi) => {
                out.push(Key::Initial(s.af_class(psi, nu)));
                let first = match self.component_of.get(&psi) {
                    Some(&i) => i,
                    None => {
                        let i = self.components.len() as u32;
                        for adv in &self.advice {
                            self.components.push(accepting_component(s, psi, adv, self.limits)?);
                        }
                        self.component_of.insert(psi, i);
                        i
                    }
                };
                for c in first..first + self.advice.len() as u32 {
                    let d = &self.components[c as usize];
                    out.extend(d.successors(d.initial()[0], nu).iter().map(|&q| Key::Accepting(c, q)));
                }
            }
            Key::Accepting(c, q) => {
                out.extend(self.components[c as usize].successors(q, nu).iter().map(|&r| Key::Accepting(c, r)));
            }
        }
        Ok(())
    }

    fn accepting(&self, key: &Key) -> bool {
        match *key {
            Key::Initial(_) => false,
            Key::Accepting(c, q) => self.components[c as usize].acceptance().as_buchi().is_some_and(|set| set.contains(q)),
        }
    }
}

/// LDBA for `φ`. From a state `ψ` of the initial component, reading `ν`
/// either stays (`af(ψ, ν)`) or enters `D_{ψ,X,Y}` for some advice pair,
/// at the `ν`-successor of its initial state.
pub fn ldba(s: &mut Session, f: Formula, limits: &Limits) -> Result<Automaton, Error> {
    let mut b = Builder::new(s, f, limits)?;
    let root = s.canonicalize(f);
    let ex = explore(s.num_atoms(), [Key::Initial(root)], limits.max_states, |&key, nu, out| b.successors(s, key, nu, out))?;
    let acc = ex.states_where(|key| b.accepting(key));
    Ok(ex.finish(
        |key| match *key {
            Key::Initial(psi) => StateLabel::Class(psi),
            Key::Accepting(c, q) => StateLabel::Part(c + 1, Arc::new(b.components[c as usize].label(q).clone())),
        },
        Acceptance::Inf(acc),
    ))
}

/// Whether [`ldba`] accepts `w`, exploring only the states reachable on
/// the run over `w`.
pub fn ldba_accepts(s: &mut Session, f: Formula, w: &Lasso, limits: &Limits) -> Result<bool, Error> {
    let mut b = Builder::new(s, f, limits)?;
    let root = s.canonicalize(f);
    let ex = explore_lasso(s.num_atoms(), [Key::Initial(root)], w, limits.max_states, |&key, nu, out| b.successors(s, key, nu, out))?;
    Ok(ex.has_accepting_cycle(|(key, _)| b.accepting(key)))
}
