use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{explore, explore_lasso, Acceptance, Automaton, StateId, StateLabel, StateSet};
use crate::error::Error;
use crate::word::{Lasso, Letter};

fn common_atoms(parts: &[&Automaton]) -> Result<u32, Error> {
    let n = parts.first().ok_or(Error::ConditionShape("empty operand list"))?.num_atoms;
    if parts.iter().any(|a| a.num_atoms != n) {
        return Err(Error::AlphabetMismatch);
    }
    Ok(n)
}

fn buchi_sets<'a>(parts: &[&'a Automaton]) -> Result<Vec<&'a StateSet>, Error> {
    parts
        .iter()
        .map(|a| a.acceptance.as_buchi().ok_or(Error::ConditionShape("expected a Büchi condition")))
        .collect()
}

fn tuple_label(parts: &[&Automaton], key: &[StateId]) -> StateLabel {
    StateLabel::Tuple(parts.iter().zip(key).map(|(a, &q)| a.label(q).clone()).collect())
}

/// Bound on `states · operands` for products of many automata, where
/// every state stores one component state and label per operand.
const MAX_PRODUCT_CELLS: usize = 1 << 24;

fn product_cap(parts: &[&Automaton], max_states: usize) -> usize {
    max_states.min(MAX_PRODUCT_CELLS / parts.len().max(1))
}

fn det_step(parts: &[&Automaton], key: &[StateId], nu: Letter) -> Vec<StateId> {
    key.iter().zip(parts).map(|(&q, a)| a.successors(q, nu)[0]).collect()
}

fn check_det(parts: &[&Automaton]) -> Result<u32, Error> {
    let num_atoms = common_atoms(parts)?;
    if !parts.iter().all(|a| a.is_deterministic()) {
        return Err(Error::NotDeterministic);
    }
    Ok(num_atoms)
}

/// Synchronous product of deterministic automata. `combine` receives the
/// component conditions lifted to product states, in operand order.
///
/// With many operands the state cap is lowered so that
/// `states · operands ≤ 2^24`.
pub fn product_det(
    parts: &[&Automaton],
    max_states: usize,
    combine: impl FnOnce(Vec<Acceptance>) -> Acceptance,
) -> Result<Automaton, Error> {
    let num_atoms = check_det(parts)?;
    let init: Vec<StateId> = parts.iter().map(|a| a.initial[0]).collect();
    let ex = explore(num_atoms, [init], product_cap(parts, max_states), |key: &Vec<StateId>, nu, out| {
        out.push(det_step(parts, key, nu));
        Ok(())
    })?;
    let lifted = parts
        .iter()
        .enumerate()
        .map(|(i, a)| a.acceptance.map_sets(&mut |s| ex.states_where(|k| s.contains(k[i]))))
        .collect();
    let acc = combine(lifted);
    Ok(ex.finish(|k| tuple_label(parts, k), acc))
}

/// Whether `w` is accepted by `product_det(parts, _, Acceptance::Or)`,
/// computed on the run over `w` alone. The lifted conditions only look at
/// their own component, so the disjunction holds iff some component's
/// condition holds on the states that component visits infinitely often.
pub fn product_det_any_accepts(parts: &[&Automaton], w: &Lasso, max_states: usize) -> Result<bool, Error> {
    let num_atoms = check_det(parts)?;
    let init: Vec<StateId> = parts.iter().map(|a| a.initial[0]).collect();
    let ex = explore_lasso(num_atoms, [init], w, max_states, |key: &Vec<StateId>, nu, out| {
        out.push(det_step(parts, key, nu));
        Ok(())
    })?;
    let cycle = ex.recurrent();
    Ok(parts.iter().enumerate().any(|(i, a)| {
        let inf: StateSet = cycle.iter().map(|(key, _)| key[i]).collect();
        a.acceptance.holds(&inf)
    }))
}

/// Intersection of deterministic Büchi automata, degeneralized with a
/// round-robin counter: the counter moves from `i` to `i + 1 (mod k)` when
/// the `i`-th component is accepting, and the product accepts when
/// the counter is 0 and the first component is accepting.
pub fn intersect_dbas(parts: &[&Automaton], max_states: usize) -> Result<Automaton, Error> {
    if !parts.iter().all(|a| a.is_deterministic()) {
        return Err(Error::NotDeterministic);
    }
    intersect_buchi(parts, max_states)
}

/// Intersection of Büchi automata by the same counter construction.
pub fn intersect_nbas_generalized(parts: &[&Automaton], max_states: usize) -> Result<Automaton, Error> {
    intersect_buchi(parts, max_states)
}

fn intersect_buchi(parts: &[&Automaton], max_states: usize) -> Result<Automaton, Error> {
    let num_atoms = common_atoms(parts)?;
    let sets = buchi_sets(parts)?;
    if parts.len() == 1 {
        return Ok(parts[0].clone());
    }
    let k = parts.len() as u32;
    let mut inits: Vec<Vec<StateId>> = alloc::vec![Vec::new()];
    for a in parts {
        inits = inits
            .into_iter()
            .flat_map(|t| {
                a.initial.iter().map(move |&q| {
                    let mut t = t.clone();
                    t.push(q);
                    t
                })
            })
            .collect();
    }
    let ex = explore(num_atoms, inits.into_iter().map(|t| (t, 0u32)), max_states, |(key, c): &(Vec<StateId>, u32), nu: Letter, out| {
        let next = if sets[*c as usize].contains(key[*c as usize]) { (c + 1) % k } else { *c };
        let mut tuples: Vec<Vec<StateId>> = alloc::vec![Vec::with_capacity(key.len())];
        for (a, &q) in parts.iter().zip(key) {
            let succ = a.successors(q, nu);
            if succ.is_empty() {
                return Ok(());
            }
            if succ.len() == 1 {
                tuples.iter_mut().for_each(|t| t.push(succ[0]));
            } else {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        succ.iter().map(move |&r| {
                            let mut t = t.clone();
                            t.push(r);
                            t
                        })
                    })
                    .collect();
            }
        }
        out.extend(tuples.into_iter().map(|t| (t, next)));
        Ok(())
    })?;
    let acc = ex.states_where(|(key, c)| *c == 0 && sets[0].contains(key[0]));
    Ok(ex.finish(|(key, c)| StateLabel::Counter(Arc::new(tuple_label(parts, key)), *c), Acceptance::Inf(acc)))
}

/// Disjoint union of Büchi automata.
pub fn union_nbas(parts: &[&Automaton]) -> Result<Automaton, Error> {
    let num_atoms = common_atoms(parts)?;
    let sets = buchi_sets(parts)?;
    let mut out = Automaton {
        num_atoms,
        labels: Vec::new(),
        offsets: alloc::vec![0],
        targets: Vec::new(),
        initial: Vec::new(),
        acceptance: Acceptance::Inf(StateSet::new()),
    };
    let mut acc = StateSet::new();
    for (i, (a, s)) in parts.iter().zip(sets).enumerate() {
        let shift = out.labels.len() as StateId;
        let base = out.targets.len() as u32;
        out.labels.extend(a.labels.iter().map(|l| StateLabel::Part(i as u32, Arc::new(l.clone()))));
        out.targets.extend(a.targets.iter().map(|&q| q + shift));
        out.offsets.extend(a.offsets[1..].iter().map(|&o| o + base));
        out.initial.extend(a.initial.iter().map(|&q| q + shift));
        for q in s.iter() {
            acc.insert(q + shift);
        }
    }
    Ok(out.with_acceptance(Acceptance::Inf(acc)))
}

/// Turns a coBüchi automaton `fin(F)` whose rejecting states are absorbing
/// into the Büchi automaton `inf(Q \ F)` with the same language.
pub fn dca_to_dba(a: &Automaton) -> Result<Automaton, Error> {
    let Acceptance::Fin(f) = &a.acceptance else {
        return Err(Error::ConditionShape("expected a coBüchi condition"));
    };
    for q in f.iter() {
        for nu in Letter::all(a.num_atoms) {
            if a.successors(q, nu).iter().any(|&r| !f.contains(r)) {
                return Err(Error::RejectingSetNotAbsorbing);
            }
        }
    }
    let acc = f.complement(a.num_states());
    Ok(a.clone().with_acceptance(Acceptance::Inf(acc)))
}
