use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::word::Lasso;

const A: Letter = Letter::from_bits(1);
const E: Letter = Letter::EMPTY;

/// Two states over one atom: state `q` moves to 1 on `a` and to 0 otherwise.
fn last_letter(acc: Acceptance) -> Automaton {
    Automaton::from_parts(1, vec![StateLabel::None; 2], vec![vec![0], vec![1], vec![0], vec![1]], vec![0], acc)
}

fn lasso(u: &[Letter], v: &[Letter]) -> Lasso {
    Lasso::new(u.to_vec(), v.to_vec()).unwrap()
}

#[test]
fn state_sets() {
    let mut s: StateSet = [1, 64, 130].into_iter().collect();
    assert!(s.contains(64) && !s.contains(63) && !s.contains(1000));
    assert_eq!(s.iter().collect::<Vec<_>>(), [1, 64, 130]);
    assert_eq!(s.len(), 3);
    s.union_with(&[2].into_iter().collect());
    assert_eq!(s.len(), 4);
    assert_eq!(StateSet::full(3).complement(5).iter().collect::<Vec<_>>(), [3, 4]);
    assert!(StateSet::new().is_empty());
}

#[test]
fn deterministic_acceptance() {
    let inf_a = last_letter(Acceptance::Inf([1].into_iter().collect()));
    assert!(inf_a.is_deterministic());
    assert!(inf_a.accepts_lasso_det(&lasso(&[], &[A, E])));
    assert!(!inf_a.accepts_lasso_det(&lasso(&[A, A], &[E])));
    let fin_a = last_letter(Acceptance::Fin([1].into_iter().collect()));
    assert!(fin_a.accepts_lasso_det(&lasso(&[A, A], &[E])));
    assert!(!fin_a.accepts_lasso_det(&lasso(&[], &[E, E, A])));
    let never = last_letter(Acceptance::Inf(StateSet::new()));
    for w in Lasso::enumerate(1, 2, 2) {
        assert!(!never.accepts_lasso_det(&w));
    }
}

#[test]
fn nondeterministic_acceptance() {
    // Guess a point after which only `a` is read.
    let fg_a = Automaton::from_parts(
        1,
        vec![StateLabel::None; 2],
        vec![vec![0], vec![0, 1], vec![], vec![1]],
        vec![0],
        Acceptance::Inf([1].into_iter().collect()),
    );
    assert!(!fg_a.is_deterministic());
    assert!(fg_a.accepts_lasso_nondet(&lasso(&[E, E], &[A])).unwrap());
    assert!(!fg_a.accepts_lasso_nondet(&lasso(&[], &[A, E])).unwrap());
    // State 1 has no successor on the empty letter.
    assert!(!fg_a.is_limit_deterministic());
    let univ = Automaton::universal(1, true);
    for w in Lasso::enumerate(1, 2, 2) {
        assert!(univ.accepts_lasso_nondet(&w).unwrap());
    }
    let co = last_letter(Acceptance::Fin(StateSet::new()));
    assert!(matches!(co.accepts_lasso_nondet(&lasso(&[], &[A])), Err(Error::ConditionShape(_))));
}

#[test]
fn batched_acceptance_matches_single() {
    let fg_a = Automaton::from_parts(
        1,
        vec![StateLabel::None; 3],
        // 0 guesses a point, 1 then reads only `a`, 2 is a rejecting sink.
        vec![vec![0], vec![0, 1], vec![], vec![1, 2], vec![2], vec![2]],
        vec![0],
        Acceptance::Inf([1].into_iter().collect()),
    );
    let words = Lasso::enumerate(1, 3, 3);
    let batch = fg_a.accepts_lassos_nondet(&words).unwrap();
    for (w, got) in words.iter().zip(batch) {
        assert_eq!(got, fg_a.accepts_lasso_nondet(w).unwrap());
    }
    assert_eq!(fg_a.period_acceptors(&[A]).unwrap().iter().collect::<Vec<_>>(), [0, 1]);
    assert!(fg_a.period_acceptors(&[A, E]).unwrap().is_empty());
}

#[test]
fn products() {
    let inf_a = last_letter(Acceptance::Inf([1].into_iter().collect()));
    let inf_e = last_letter(Acceptance::Inf([0].into_iter().collect()));
    let both = intersect_dbas(&[&inf_a, &inf_e], 100).unwrap();
    assert!(both.is_deterministic());
    assert!(both.num_states() <= 2 * 2 * 2);
    let either = union_nbas(&[&inf_a, &inf_e]).unwrap();
    assert_eq!(either.num_states(), 4);
    let rabin = product_det(&[&inf_a, &inf_e], 100, |c| {
        let mut it = c.into_iter();
        let (Some(Acceptance::Inf(x)), Some(Acceptance::Inf(y))) = (it.next(), it.next()) else { unreachable!() };
        Acceptance::And(vec![Acceptance::Fin(x), Acceptance::Inf(y)])
    })
    .unwrap();
    assert_eq!(rabin.acceptance().rabin_pairs().unwrap().len(), 1);
    for w in Lasso::enumerate(1, 3, 3) {
        let (x, y) = (inf_a.accepts_lasso_det(&w), inf_e.accepts_lasso_det(&w));
        assert_eq!(both.accepts_lasso_det(&w), x && y);
        assert_eq!(either.accepts_lasso_nondet(&w).unwrap(), x || y);
        assert_eq!(rabin.accepts_lasso_det(&w), !x && y);
    }
    let single = intersect_dbas(&[&inf_a], 100).unwrap();
    assert_eq!(single.num_states(), inf_a.num_states());
    let other = Automaton::universal(2, true);
    assert!(matches!(intersect_dbas(&[&inf_a, &other], 100), Err(Error::AlphabetMismatch)));
    assert!(matches!(union_nbas(&[&inf_a, &other]), Err(Error::AlphabetMismatch)));
}

#[test]
fn cobuchi_to_buchi() {
    // 0 --a--> 1, and 1 is an absorbing rejecting sink.
    let g_not_a = Automaton::from_parts(1, vec![StateLabel::None; 2], vec![vec![0], vec![1], vec![1], vec![1]], vec![0], Acceptance::Fin([1].into_iter().collect()));
    let dba = dca_to_dba(&g_not_a).unwrap();
    assert_eq!(dba.acceptance().as_buchi().unwrap().iter().collect::<Vec<_>>(), [0]);
    for w in Lasso::enumerate(1, 3, 3) {
        assert_eq!(dba.accepts_lasso_det(&w), g_not_a.accepts_lasso_det(&w));
    }
    let leaky = last_letter(Acceptance::Fin([1].into_iter().collect()));
    assert!(matches!(dca_to_dba(&leaky), Err(Error::RejectingSetNotAbsorbing)));
    let none = dca_to_dba(&last_letter(Acceptance::Fin(StateSet::new()))).unwrap();
    assert_eq!(none.acceptance().as_buchi().unwrap().len(), 2);
}

#[test]
fn limit_determinism() {
    let det = last_letter(Acceptance::Inf([1].into_iter().collect()));
    assert!(det.is_limit_deterministic());
    // The accepting state 1 branches on `a`.
    let bad = Automaton::from_parts(
        1,
        vec![StateLabel::None; 2],
        vec![vec![1], vec![1], vec![0], vec![0, 1]],
        vec![0],
        Acceptance::Inf([1].into_iter().collect()),
    );
    assert!(!bad.is_limit_deterministic());
}
