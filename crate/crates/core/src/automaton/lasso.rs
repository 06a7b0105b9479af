use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{Automaton, Explored, StateId, StateSet};
use crate::error::Error;
use crate::word::{Lasso, Letter};

impl Automaton {
    /// Acceptance of `u·v^ω` by a deterministic automaton.
    ///
    /// Runs `u`, then whole copies of `v` until the state at the start of
    /// a copy repeats; the states visited from the first occurrence on
    /// are `inf(r)`. A missing successor rejects.
    pub fn accepts_lasso_det(&self, w: &Lasso) -> bool {
        debug_assert_eq!(self.initial.len(), 1);
        let Some(&q0) = self.initial.first() else {
            return false;
        };
        let mut q = q0;
        for &nu in w.prefix() {
            match self.step(q, nu) {
                Some(r) => q = r,
                None => return false,
            }
        }
        let mut entries: Vec<StateId> = Vec::new();
        let start = loop {
            if let Some(k) = entries.iter().position(|&e| e == q) {
                break k;
            }
            entries.push(q);
            for &nu in w.period() {
                match self.step(q, nu) {
                    Some(r) => q = r,
                    None => return false,
                }
            }
        };
        let mut inf = StateSet::new();
        let mut q = entries[start];
        for _ in start..entries.len() {
            for &nu in w.period() {
                inf.insert(q);
                q = self.successors(q, nu)[0];
            }
        }
        self.acceptance.holds(&inf)
    }

    /// Acceptance of `u·v^ω` by a Büchi automaton.
    ///
    /// Searches the product of the automaton with the lasso's position
    /// graph for a reachable cycle through an accepting state.
    pub fn accepts_lasso_nondet(&self, w: &Lasso) -> Result<bool, Error> {
        let acc = self.acceptance.as_buchi().ok_or(Error::ConditionShape("expected a Büchi condition"))?;
        if acc.is_empty() {
            return Ok(false);
        }
        let len = w.len();
        let node = |q: StateId, p: usize| q as usize * len + p;
        // Reachable product nodes, numbered densely.
        let mut index: HashMap<usize, u32> = HashMap::new();
        let mut nodes: Vec<(StateId, usize)> = Vec::new();
        for &q in &self.initial {
            if index.insert(node(q, 0), nodes.len() as u32).is_none() {
                nodes.push((q, 0));
            }
        }
        let mut edges: Vec<u32> = Vec::new();
        let mut starts: Vec<u32> = Vec::new();
        let mut i = 0;
        while i < nodes.len() {
            let (q, p) = nodes[i];
            starts.push(edges.len() as u32);
            let p2 = w.successor(p);
            for &r in self.successors(q, w.letter_at(p)) {
                let next = nodes.len() as u32;
                let j = *index.entry(node(r, p2)).or_insert_with(|| {
                    nodes.push((r, p2));
                    next
                });
                edges.push(j);
            }
            i += 1;
        }
        starts.push(edges.len() as u32);
        let succ = |v: u32| &edges[starts[v as usize] as usize..starts[v as usize + 1] as usize];
        Ok(scc_with(nodes.len(), succ, |v| acc.contains(nodes[v as usize].0)))
    }

    /// The states from which a Büchi automaton accepts `v^ω`.
    pub fn period_acceptors(&self, period: &[Letter]) -> Result<StateSet, Error> {
        let acc = self.acceptance.as_buchi().ok_or(Error::ConditionShape("expected a Büchi condition"))?;
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let len = period.len();
        let n = self.num_states() * len;
        // Product node q·len + p: in state q before reading period[p].
        let mut starts: Vec<u32> = Vec::with_capacity(n + 1);
        let mut edges: Vec<u32> = Vec::new();
        for q in 0..self.num_states() as StateId {
            for (p, &nu) in period.iter().enumerate() {
                starts.push(edges.len() as u32);
                let p2 = (p + 1) % len;
                edges.extend(self.successors(q, nu).iter().map(|&r| (r as usize * len + p2) as u32));
            }
        }
        starts.push(edges.len() as u32);
        let succ = |v: u32| &edges[starts[v as usize] as usize..starts[v as usize + 1] as usize];
        // Components arrive in reverse topological order, so a node is good
        // iff its component is an accepting cycle or it has a good successor.
        let mut good = alloc::vec![false; n];
        tarjan(n, &succ, |members| {
            let cyclic = members.len() > 1 || succ(members[0]).contains(&members[0]);
            let mut g = cyclic && members.iter().any(|&t| acc.contains(t / len as u32));
            g = g || members.iter().any(|&t| succ(t).iter().any(|&r| good[r as usize]));
            for &t in members {
                good[t as usize] = g;
            }
            false
        });
        Ok((0..self.num_states() as StateId).filter(|&q| good[q as usize * len]).collect())
    }

    /// Büchi acceptance of many lassos at once. Lassos with the same period
    /// share one product computation.
    pub fn accepts_lassos_nondet(&self, lassos: &[Lasso]) -> Result<Vec<bool>, Error> {
        let mut by_period: HashMap<&[Letter], StateSet> = HashMap::new();
        let mut out = Vec::with_capacity(lassos.len());
        for w in lassos {
            let good = match by_period.get(w.period()) {
                Some(g) => g,
                None => {
                    let g = self.period_acceptors(w.period())?;
                    by_period.entry(w.period()).or_insert(g)
                }
            };
            let mut current: StateSet = self.initial.iter().copied().collect();
            for &nu in w.prefix() {
                current = current.iter().flat_map(|q| self.successors(q, nu).iter().copied()).collect();
            }
            out.push(current.intersects(good));
        }
        Ok(out)
    }
}

impl<K> Explored<K> {
    fn all_successors(&self, v: u32) -> &[StateId] {
        let l = 1usize << self.num_atoms;
        &self.targets[self.offsets[v as usize * l] as usize..self.offsets[(v as usize + 1) * l] as usize]
    }

    /// Whether a cycle passes through a state satisfying `good`. Every
    /// explored state is reachable.
    pub fn has_accepting_cycle(&self, good: impl Fn(&K) -> bool) -> bool {
        scc_with(self.keys.len(), |v| self.all_successors(v), |v| good(&self.keys[v as usize]))
    }

    /// The states that lie on some cycle.
    pub fn recurrent(&self) -> Vec<&K> {
        let mut out = Vec::new();
        tarjan(self.keys.len(), &|v| self.all_successors(v), |members| {
            if members.len() > 1 || self.all_successors(members[0]).contains(&members[0]) {
                out.extend(members.iter().map(|&v| &self.keys[v as usize]));
            }
            false
        });
        out
    }
}

/// Whether some nontrivial strongly connected component of the graph
/// contains a node satisfying `good`.
pub(crate) fn scc_with<'a>(n: usize, succ: impl Fn(u32) -> &'a [u32], good: impl Fn(u32) -> bool) -> bool {
    tarjan(n, &succ, |members| {
        members.iter().any(|&t| good(t)) && (members.len() > 1 || succ(members[0]).contains(&members[0]))
    })
}

/// Iterative Tarjan. `component` is called on each strongly connected
/// component in reverse topological order; returning `true` stops the
/// search, and then `tarjan` returns `true`.
pub(crate) fn tarjan<'a>(n: usize, succ: &impl Fn(u32) -> &'a [u32], mut component: impl FnMut(&[u32]) -> bool) -> bool {
    const UNSEEN: u32 = u32::MAX;
    let mut index = alloc::vec![UNSEEN; n];
    let mut low = alloc::vec![0u32; n];
    let mut on_stack = alloc::vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut call: Vec<(u32, usize)> = Vec::new();
    let mut counter = 0u32;
    for root in 0..n as u32 {
        if index[root as usize] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root as usize] = counter;
        low[root as usize] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        while let Some(&mut (v, ref mut k)) = call.last_mut() {
            let out = succ(v);
            if *k < out.len() {
                let t = out[*k];
                *k += 1;
                if index[t as usize] == UNSEEN {
                    index[t as usize] = counter;
                    low[t as usize] = counter;
                    counter += 1;
                    stack.push(t);
                    on_stack[t as usize] = true;
                    call.push((t, 0));
                } else if on_stack[t as usize] {
                    low[v as usize] = low[v as usize].min(index[t as usize]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent as usize] = low[parent as usize].min(low[v as usize]);
            }
            if low[v as usize] == index[v as usize] {
                let at = stack.iter().rposition(|&t| t == v).unwrap();
                for &t in &stack[at..] {
                    on_stack[t as usize] = false;
                }
                if component(&stack[at..]) {
                    return true;
                }
                stack.truncate(at);
            }
        }
    }
    false
}
