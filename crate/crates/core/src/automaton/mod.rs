//! Explicit ω-automata over the alphabet `2^Ap` with state-based
//! acceptance conditions.

mod lasso;
mod ops;

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::hash::Hash;

use hashbrown::HashMap;

use crate::error::Error;
use crate::prop::{CanonClass, Clause};
use crate::word::{Lasso, Letter};

pub use ops::{dca_to_dba, intersect_dbas, intersect_nbas_generalized, product_det, product_det_any_accepts, union_nbas};

pub type StateId = u32;

/// A set of states, as a bit set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct StateSet {
    words: Vec<u64>,
}

impl StateSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{0, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        (0..n as StateId).collect()
    }

    pub fn insert(&mut self, q: StateId) {
        let (w, b) = (q as usize / 64, q % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn contains(&self, q: StateId) -> bool {
        let (w, b) = (q as usize / 64, q % 64);
        self.words.get(w).is_some_and(|x| x >> b & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| (i * 64 + b) as StateId)
        })
    }

    pub fn union_with(&mut self, other: &StateSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// `{0, ..., n - 1} \ self`.
    pub fn complement(&self, n: usize) -> StateSet {
        (0..n as StateId).filter(|&q| !self.contains(q)).collect()
    }
}

impl FromIterator<StateId> for StateSet {
    fn from_iter<I: IntoIterator<Item = StateId>>(iter: I) -> Self {
        let mut s = StateSet::new();
        for q in iter {
            s.insert(q);
        }
        s
    }
}

/// `α ::= inf(S) | fin(S) | α ∧ α | α ∨ α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acceptance {
    Inf(StateSet),
    Fin(StateSet),
    And(Vec<Acceptance>),
    Or(Vec<Acceptance>),
}

impl Acceptance {
    /// Evaluates the condition for a run whose infinitely-often set is `inf`.
    pub fn holds(&self, inf: &StateSet) -> bool {
        match self {
            Acceptance::Inf(s) => s.intersects(inf),
            Acceptance::Fin(s) => !s.intersects(inf),
            Acceptance::And(v) => v.iter().all(|a| a.holds(inf)),
            Acceptance::Or(v) => v.iter().any(|a| a.holds(inf)),
        }
    }

    /// Replaces every state set by `f(set)`.
    pub fn map_sets(&self, f: &mut impl FnMut(&StateSet) -> StateSet) -> Acceptance {
        match self {
            Acceptance::Inf(s) => Acceptance::Inf(f(s)),
            Acceptance::Fin(s) => Acceptance::Fin(f(s)),
            Acceptance::And(v) => Acceptance::And(v.iter().map(|a| a.map_sets(f)).collect()),
            Acceptance::Or(v) => Acceptance::Or(v.iter().map(|a| a.map_sets(f)).collect()),
        }
    }

    /// The Büchi set, if the condition is `inf(S)`.
    pub fn as_buchi(&self) -> Option<&StateSet> {
        match self {
            Acceptance::Inf(s) => Some(s),
            _ => None,
        }
    }

    /// The Rabin pairs `(fin, inf)` if the condition has the shape
    /// `⋁ (fin(U) ∧ inf(V))`. A single pair need not be wrapped in `Or`.
    pub fn rabin_pairs(&self) -> Option<Vec<(&StateSet, &StateSet)>> {
        fn pair(a: &Acceptance) -> Option<(&StateSet, &StateSet)> {
            match a {
                Acceptance::And(v) => match v.as_slice() {
                    [Acceptance::Fin(u), Acceptance::Inf(w)] | [Acceptance::Inf(w), Acceptance::Fin(u)] => Some((u, w)),
                    _ => None,
                },
                _ => None,
            }
        }
        match self {
            Acceptance::Or(v) => v.iter().map(pair).collect(),
            a => pair(a).map(|p| alloc::vec![p]),
        }
    }
}

/// Debug label of a state: the formula-level object it stands for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StateLabel {
    None,
    Class(CanonClass),
    Clause(Clause),
    /// Tracker and checker of the switching automaton.
    Switch(CanonClass, CanonClass),
    /// A clause of the first or second phase of a jump automaton.
    Phase(u8, Clause),
    /// A state of a degeneralized product with its round-robin counter.
    Counter(Arc<StateLabel>, u32),
    Tuple(Arc<[StateLabel]>),
    /// A state of the `i`-th operand of a disjoint union.
    Part(u32, Arc<StateLabel>),
}

/// An automaton `(Q, Δ, Q0, α)` with `Q = {0, ..., n - 1}`.
///
/// Transitions are stored densely: the successors of `q` on `ν` are the
/// slice for slot `q · 2^|Ap| + ν`.
#[derive(Clone, Debug)]
pub struct Automaton {
    num_atoms: u32,
    labels: Vec<StateLabel>,
    offsets: Vec<u32>,
    targets: Vec<StateId>,
    initial: Vec<StateId>,
    acceptance: Acceptance,
}

impl Automaton {
    /// Builds an automaton from per-state, per-letter successor lists.
    pub fn from_parts(
        num_atoms: u32,
        labels: Vec<StateLabel>,
        successors: Vec<Vec<StateId>>,
        initial: Vec<StateId>,
        acceptance: Acceptance,
    ) -> Self {
        let letters = 1usize << num_atoms;
        assert_eq!(successors.len(), labels.len() * letters);
        let mut offsets = Vec::with_capacity(successors.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for mut s in successors {
            s.sort_unstable();
            s.dedup();
            targets.extend(s);
            offsets.push(targets.len() as u32);
        }
        Automaton { num_atoms, labels, offsets, targets, initial, acceptance }
    }

    /// One state looping on every letter, with `inf({0})` or `fin(∅)`.
    pub fn universal(num_atoms: u32, buchi: bool) -> Self {
        let letters = 1usize << num_atoms;
        let acc = if buchi {
            Acceptance::Inf(StateSet::full(1))
        } else {
            Acceptance::Fin(StateSet::new())
        };
        Automaton::from_parts(num_atoms, alloc::vec![StateLabel::None], alloc::vec![alloc::vec![0]; letters], alloc::vec![0], acc)
    }

    pub fn num_atoms(&self) -> u32 {
        self.num_atoms
    }

    pub fn num_letters(&self) -> usize {
        1 << self.num_atoms
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.targets.len()
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    pub fn labels(&self) -> &[StateLabel] {
        &self.labels
    }

    pub fn label(&self, q: StateId) -> &StateLabel {
        &self.labels[q as usize]
    }

    pub fn successors(&self, q: StateId, nu: Letter) -> &[StateId] {
        let slot = q as usize * self.num_letters() + nu.index();
        &self.targets[self.offsets[slot] as usize..self.offsets[slot + 1] as usize]
    }

    /// The unique successor; only meaningful for deterministic automata.
    pub fn step(&self, q: StateId, nu: Letter) -> Option<StateId> {
        match self.successors(q, nu) {
            [r] => Some(*r),
            _ => None,
        }
    }

    /// One initial state and exactly one successor per state and letter.
    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1 && self.offsets.windows(2).all(|w| w[1] - w[0] == 1)
    }

    fn is_deterministic_state(&self, q: StateId) -> bool {
        let n = self.num_letters();
        let base = q as usize * n;
        (0..n).all(|k| self.offsets[base + k + 1] - self.offsets[base + k] == 1)
    }

    /// Whether the states split into `QN ⊎ QD` with every accepting state
    /// in `QD` and `QD` deterministic and closed under successors.
    ///
    /// `QD` is taken as the forward closure of the Büchi set, the smallest
    /// candidate; the condition must be `inf(S)`.
    pub fn is_limit_deterministic(&self) -> bool {
        let Some(acc) = self.acceptance.as_buchi() else {
            return false;
        };
        let mut seen = StateSet::new();
        let mut stack: Vec<StateId> = acc.iter().filter(|&q| (q as usize) < self.num_states()).collect();
        for &q in &stack {
            seen.insert(q);
        }
        while let Some(q) = stack.pop() {
            if !self.is_deterministic_state(q) {
                return false;
            }
            for nu in Letter::all(self.num_atoms) {
                for &r in self.successors(q, nu) {
                    if !seen.contains(r) {
                        seen.insert(r);
                        stack.push(r);
                    }
                }
            }
        }
        true
    }

    /// States reachable from the initial states.
    pub fn reachable(&self) -> StateSet {
        let mut seen: StateSet = self.initial.iter().copied().collect();
        let mut stack = self.initial.clone();
        while let Some(q) = stack.pop() {
            for nu in Letter::all(self.num_atoms) {
                for &r in self.successors(q, nu) {
                    if !seen.contains(r) {
                        seen.insert(r);
                        stack.push(r);
                    }
                }
            }
        }
        seen
    }

    pub(crate) fn with_acceptance(mut self, acceptance: Acceptance) -> Self {
        self.acceptance = acceptance;
        self
    }
}

/// The result of a reachable-state exploration keyed by `K`.
pub(crate) struct Explored<K> {
    pub keys: Vec<K>,
    num_atoms: u32,
    offsets: Vec<u32>,
    targets: Vec<StateId>,
    initial: Vec<StateId>,
}

impl<K> Explored<K> {
    pub fn states_where(&self, mut pred: impl FnMut(&K) -> bool) -> StateSet {
        self.keys.iter().enumerate().filter(|(_, k)| pred(k)).map(|(i, _)| i as StateId).collect()
    }

    pub fn finish(self, label: impl FnMut(&K) -> StateLabel, acceptance: Acceptance) -> Automaton {
        Automaton {
            num_atoms: self.num_atoms,
            labels: self.keys.iter().map(label).collect(),
            offsets: self.offsets,
            targets: self.targets,
            initial: self.initial,
            acceptance,
        }
    }
}

/// Breadth-first construction of the part reachable from `init`.
/// `succ(key, ν, out)` pushes the successors of `key` on `ν`.
pub(crate) fn explore<K, F>(num_atoms: u32, init: impl IntoIterator<Item = K>, max_states: usize, mut succ: F) -> Result<Explored<K>, Error>
where
    K: Clone + Eq + Hash,
    F: FnMut(&K, Letter, &mut Vec<K>) -> Result<(), Error>,
{
    let mut keys: Vec<K> = Vec::new();
    let mut index: HashMap<K, StateId> = HashMap::new();
    let mut id_of = |k: K, keys: &mut Vec<K>| -> StateId {
        let next = keys.len() as StateId;
        *index.entry(k).or_insert_with_key(|k| {
            keys.push(k.clone());
            next
        })
    };
    let mut initial: Vec<StateId> = init.into_iter().map(|k| id_of(k, &mut keys)).collect();
    initial.sort_unstable();
    initial.dedup();
    let mut offsets = alloc::vec![0u32];
    let mut targets = Vec::new();
    let mut buf = Vec::new();
    let mut ids = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        if keys.len() > max_states {
            return Err(Error::StateLimit { limit: max_states });
        }
        let k = keys[i].clone();
        for nu in Letter::all(num_atoms) {
            buf.clear();
            succ(&k, nu, &mut buf)?;
            ids.clear();
            for t in buf.drain(..) {
                ids.push(id_of(t, &mut keys));
            }
            ids.sort_unstable();
            ids.dedup();
            targets.extend_from_slice(&ids);
            offsets.push(targets.len() as u32);
        }
        i += 1;
    }
    if keys.len() > max_states {
        return Err(Error::StateLimit { limit: max_states });
    }
    Ok(Explored { keys, num_atoms, offsets, targets, initial })
}

/// [`explore`] restricted to the run on `w`: the part of the product with
/// the position graph of `w` that is reachable from `(init, 0)`. Key
/// `(k, p)` is state `k` before reading position `p`.
pub(crate) fn explore_lasso<K, F>(
    num_atoms: u32,
    init: impl IntoIterator<Item = K>,
    w: &Lasso,
    max_states: usize,
    mut succ: F,
) -> Result<Explored<(K, usize)>, Error>
where
    K: Clone + Eq + Hash,
    F: FnMut(&K, Letter, &mut Vec<K>) -> Result<(), Error>,
{
    let mut buf = Vec::new();
    explore(num_atoms, init.into_iter().map(|k| (k, 0)), max_states, |(k, p): &(K, usize), nu, out| {
        if nu != w.letter_at(*p) {
            return Ok(());
        }
        buf.clear();
        succ(k, nu, &mut buf)?;
        let next = w.successor(*p);
        out.extend(buf.drain(..).map(|r| (r, next)));
        Ok(())
    })
}

#[cfg(test)]
mod tests;
