//! Ground truth on lasso words, independent of `af`: every subformula is
//! evaluated at each of the `|u| + |v|` positions of the lasso, with
//! least fixpoints for F/U/M and greatest fixpoints for G/W/R.

use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::advice::{Advice, EvalNu};
use crate::error::Error;
use crate::formula::{Formula, FormulaSet, Node};
use crate::prop::CanonClass;
use crate::session::Session;
use crate::word::Lasso;

/// `u·v^ω ⊨ φ`.
pub fn lasso_sat(s: &Session, w: &Lasso, f: Formula) -> bool {
    LassoEvaluator::new(w).holds(s, f)
}

/// Truth values of formulas at every position of one lasso, memoized.
#[derive(Debug, Clone)]
pub struct LassoEvaluator<'w> {
    w: &'w Lasso,
    memo: Vec<Option<Vec<bool>>>,
}

impl<'w> LassoEvaluator<'w> {
    pub fn new(w: &'w Lasso) -> Self {
        LassoEvaluator { w, memo: Vec::new() }
    }

    pub fn lasso(&self) -> &Lasso {
        self.w
    }

    /// `w ⊨ φ`.
    pub fn holds(&mut self, s: &Session, f: Formula) -> bool {
        self.holds_at(s, f, 0)
    }

    /// Whether `φ` holds on the suffix starting at lasso position `p`.
    pub fn holds_at(&mut self, s: &Session, f: Formula, p: usize) -> bool {
        self.values(s, f)[p]
    }

    /// Truth value of `φ` at every lasso position.
    pub fn values(&mut self, s: &Session, f: Formula) -> &[bool] {
        let i = f.index();
        if self.memo.len() <= i {
            self.memo.resize(i + 1, None);
        }
        if self.memo[i].is_none() {
            let v = self.compute(s, f);
            self.memo[i] = Some(v);
        }
        self.memo[i].as_deref().unwrap()
    }

    fn compute(&mut self, s: &Session, f: Formula) -> Vec<bool> {
        let w = self.w;
        let n = w.len();
        let node = s.node(f);
        let mut kids = node.children();
        let l = kids.next().map(|c| self.values(s, c).to_vec());
        let r = kids.next().map(|c| self.values(s, c).to_vec());
        let pointwise = |g: &dyn Fn(usize) -> bool| (0..n).map(g).collect::<Vec<bool>>();
        match node {
            Node::Tt => alloc::vec![true; n],
            Node::Ff => alloc::vec![false; n],
            Node::Atom(a) => pointwise(&|p| w.letter_at(p).contains(a)),
            Node::NegAtom(a) => pointwise(&|p| !w.letter_at(p).contains(a)),
            Node::And(..) => {
                let (l, r) = (l.unwrap(), r.unwrap());
                pointwise(&|p| l[p] && r[p])
            }
            Node::Or(..) => {
                let (l, r) = (l.unwrap(), r.unwrap());
                pointwise(&|p| l[p] || r[p])
            }
            Node::Next(_) => {
                let l = l.unwrap();
                pointwise(&|p| l[w.successor(p)])
            }
            Node::Finally(_) => {
                let l = l.unwrap();
                fixpoint(w, false, |p, next| l[p] || next)
            }
            Node::Globally(_) => {
                let l = l.unwrap();
                fixpoint(w, true, |p, next| l[p] && next)
            }
            Node::Until(..) => {
                let (l, r) = (l.unwrap(), r.unwrap());
                fixpoint(w, false, |p, next| r[p] || (l[p] && next))
            }
            Node::WeakUntil(..) => {
                let (l, r) = (l.unwrap(), r.unwrap());
                fixpoint(w, true, |p, next| r[p] || (l[p] && next))
            }
            Node::StrongRelease(..) => {
                let (l, r) = (l.unwrap(), r.unwrap());
                fixpoint(w, false, |p, next| r[p] && (l[p] || next))
            }
            Node::Release(..) => {
                let (l, r) = (l.unwrap(), r.unwrap());
                fixpoint(w, true, |p, next| r[p] && (l[p] || next))
            }
        }
    }
}

/// Iterates `val[p] = step(p, val[succ(p)])` from the constant `start`
/// until nothing changes. Monotone steps give the least (start false) or
/// greatest (start true) fixpoint.
fn fixpoint(w: &Lasso, start: bool, step: impl Fn(usize, bool) -> bool) -> Vec<bool> {
    let n = w.len();
    let mut val = alloc::vec![start; n];
    loop {
        let mut changed = false;
        for p in (0..n).rev() {
            let v = step(p, val[w.successor(p)]);
            if v != val[p] {
                val[p] = v;
                changed = true;
            }
        }
        if !changed {
            return val;
        }
    }
}

fn filter_sat(s: &mut Session, w: &Lasso, set: FormulaSet, wrap: impl Fn(&mut Session, Formula) -> Formula) -> FormulaSet {
    let mut ev = LassoEvaluator::new(w);
    set.into_iter()
        .filter(|&g| {
            let h = wrap(s, g);
            ev.holds(s, h)
        })
        .collect()
}

/// `GF_w = {ψ ∈ μ(φ) | w ⊨ GFψ}`.
pub fn gf_set(s: &mut Session, w: &Lasso, f: Formula) -> FormulaSet {
    let mu = s.mu_set(f);
    filter_sat(s, w, mu, |s, g| {
        let h = s.finally(g);
        s.globally(h)
    })
}

/// `F_w = {ψ ∈ μ(φ) | w ⊨ Fψ}`.
pub fn f_set(s: &mut Session, w: &Lasso, f: Formula) -> FormulaSet {
    let mu = s.mu_set(f);
    filter_sat(s, w, mu, |s, g| s.finally(g))
}

/// `FG_w = {ψ ∈ ν(φ) | w ⊨ FGψ}`.
pub fn fg_set(s: &mut Session, w: &Lasso, f: Formula) -> FormulaSet {
    let nu = s.nu_set(f);
    filter_sat(s, w, nu, |s, g| {
        let h = s.globally(g);
        s.finally(h)
    })
}

/// `G_w = {ψ ∈ ν(φ) | w ⊨ Gψ}`.
pub fn g_set(s: &mut Session, w: &Lasso, f: Formula) -> FormulaSet {
    let nu = s.nu_set(f);
    filter_sat(s, w, nu, |s, g| s.globally(g))
}

/// Whether the word is μ-stable and ν-stable with respect to `φ`.
pub fn is_stable(s: &mut Session, w: &Lasso, f: Formula) -> bool {
    gf_set(s, w, f) == f_set(s, w, f) && fg_set(s, w, f) == g_set(s, w, f)
}

/// The least `i` such that every suffix `w_j`, `j ≥ i`, is both μ-stable
/// and ν-stable. Suffixes starting inside the loop are always stable, so
/// the result is at most `|u|`.
pub fn stabilization_point(s: &mut Session, w: &Lasso, f: Formula) -> usize {
    let mut i = w.prefix().len();
    while i > 0 && is_stable(s, &w.suffix(i - 1), f) {
        i -= 1;
    }
    i
}

/// Conditions (2) and (3) of one advice pair, as formulas.
#[derive(Debug, Clone)]
struct AdviceConditions {
    gf: Vec<Formula>,
    fg: Vec<Formula>,
}

/// Decides `w ⊨ φ` through the Master Theorem: there are `X ⊆ μ(φ)`,
/// `Y ⊆ ν(φ)` and `i` with
/// (1) `w_i ⊨ ⟦af(φ, w_0i)⟧Xν`,
/// (2) `w ⊨ GF⟦ψ⟧Yμ` for every `ψ ∈ X` and
/// (3) `w ⊨ FG⟦ψ⟧Xν` for every `ψ ∈ Y`.
///
/// Everything that only depends on `φ` is prepared once, so one checker
/// can be run against many lassos.
#[derive(Debug)]
pub struct MasterChecker {
    root: CanonClass,
    advice: Vec<Advice>,
    conditions: Vec<AdviceConditions>,
    evals: Vec<EvalNu>,
    representatives: HashMap<CanonClass, Formula>,
}

impl MasterChecker {
    pub fn new(s: &mut Session, f: Formula, max_advice: usize) -> Result<Self, Error> {
        let advice = s.advice_pairs(f, max_advice)?;
        let conditions = advice
            .iter()
            .map(|adv| {
                let gf = adv
                    .x
                    .iter()
                    .map(|&g| {
                        let e = s.eval_mu(g, &adv.y);
                        let e = s.finally(e);
                        s.globally(e)
                    })
                    .collect();
                let fg = adv
                    .y
                    .iter()
                    .map(|&g| {
                        let e = s.eval_nu(g, &adv.x);
                        let e = s.globally(e);
                        s.finally(e)
                    })
                    .collect();
                AdviceConditions { gf, fg }
            })
            .collect();
        let evals = advice.iter().map(|adv| EvalNu::new(adv.x.clone())).collect();
        let root = s.canonicalize(f);
        Ok(MasterChecker { root, advice, conditions, evals, representatives: HashMap::new() })
    }

    pub fn advice(&self) -> &[Advice] {
        &self.advice
    }

    /// The advice pairs whose three conditions hold on `w`.
    pub fn witnesses(&mut self, s: &mut Session, w: &Lasso) -> Vec<usize> {
        (0..self.advice.len()).filter(|&k| self.holds_for(s, w, k)).collect()
    }

    pub fn check(&mut self, s: &mut Session, w: &Lasso) -> bool {
        let mut ev = LassoEvaluator::new(w);
        let mut phases: Option<Vec<(CanonClass, usize)>> = None;
        for k in 0..self.advice.len() {
            let cond = &self.conditions[k];
            if !cond.gf.iter().all(|&g| ev.holds(s, g)) || !cond.fg.iter().all(|&g| ev.holds(s, g)) {
                continue;
            }
            let phases = phases.get_or_insert_with(|| class_phases(s, self.root, w));
            if self.condition_one(s, &mut ev, phases, k) {
                return true;
            }
        }
        false
    }

    fn holds_for(&mut self, s: &mut Session, w: &Lasso, k: usize) -> bool {
        let mut ev = LassoEvaluator::new(w);
        let cond = &self.conditions[k];
        if !cond.gf.iter().all(|&g| ev.holds(s, g)) || !cond.fg.iter().all(|&g| ev.holds(s, g)) {
            return false;
        }
        let phases = class_phases(s, self.root, w);
        self.condition_one(s, &mut ev, &phases, k)
    }

    fn condition_one(&mut self, s: &mut Session, ev: &mut LassoEvaluator<'_>, phases: &[(CanonClass, usize)], k: usize) -> bool {
        phases.iter().any(|&(c, p)| {
            let e = self.evals[k].class(s, c);
            if e.is_tt() || e.is_ff() {
                return e.is_tt();
            }
            let g = *self.representatives.entry(e).or_insert_with(|| s.representative(e));
            ev.holds_at(s, g, p)
        })
    }
}

/// The distinct pairs `(af(φ, w_0i), position of i)` for `i = 0, 1, ...`
/// up to the first repetition.
fn class_phases(s: &mut Session, root: CanonClass, w: &Lasso) -> Vec<(CanonClass, usize)> {
    let mut out: Vec<(CanonClass, usize)> = Vec::new();
    let mut c = root;
    let mut i = 0;
    loop {
        let p = w.position(i);
        if p >= w.loop_start() && out.contains(&(c, p)) {
            return out;
        }
        out.push((c, p));
        c = s.af_class(c, w.letter_at(p));
        i += 1;
    }
}

/// One-shot form of [`MasterChecker::check`].
pub fn master_theorem_check(s: &mut Session, w: &Lasso, f: Formula, max_advice: usize) -> Result<bool, Error> {
    Ok(MasterChecker::new(s, f, max_advice)?.check(s, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Letter;

    fn letter(s: &mut Session, atoms: &[&str]) -> Letter {
        atoms.iter().fold(Letter::EMPTY, |l, a| l.with(s.atom(a).unwrap()))
    }

    fn lasso(s: &mut Session, u: &[&[&str]], v: &[&[&str]]) -> Lasso {
        let u = u.iter().map(|l| letter(s, l)).collect();
        let v = v.iter().map(|l| letter(s, l)).collect();
        Lasso::new(u, v).unwrap()
    }

    fn set(s: &mut Session, texts: &[&str]) -> FormulaSet {
        texts.iter().map(|t| s.parse(t).unwrap()).collect()
    }

    #[test]
    fn stability_example() {
        let mut s = Session::with_atoms(["a", "b", "c"]).unwrap();
        let f = s.parse("G a | b U c").unwrap();
        let w = lasso(&mut s, &[], &[&["a"]]);
        assert!(f_set(&mut s, &w, f).is_empty());
        assert!(gf_set(&mut s, &w, f).is_empty());
        assert_eq!(stabilization_point(&mut s, &w, f), 0);

        let w2 = lasso(&mut s, &[&["b"], &["c"]], &[&["a"]]);
        assert_eq!(f_set(&mut s, &w2, f), set(&mut s, &["b U c"]));
        assert!(gf_set(&mut s, &w2, f).is_empty());
        assert_eq!(stabilization_point(&mut s, &w2, f), 2);
        assert!(lasso_sat(&s, &w2, f));
    }

    #[test]
    fn master_theorem_example() {
        let mut s = Session::with_atoms(["a", "b", "c", "d"]).unwrap();
        let phi = s.parse("F (a & G (b | F c))").unwrap();
        let phi2 = s.parse("d U F (a & G (b | F c))").unwrap();
        let x = set(&mut s, &["F (a & G (b | F c))", "d U F (a & G (b | F c))"]);
        let y = set(&mut s, &["G (b | F c)"]);
        let e = s.eval_nu(phi2, &x);
        assert!(s.canonicalize(e).is_tt());
        let only_phi: FormulaSet = [phi].into_iter().collect();
        let e = s.eval_nu(phi2, &only_phi);
        assert!(s.canonicalize(e).is_ff());
        let _ = y;

        let w = lasso(&mut s, &[], &[&["a", "b"]]);
        assert!(lasso_sat(&s, &w, phi2));
        assert!(master_theorem_check(&mut s, &w, phi2, 12).unwrap());
        let w = lasso(&mut s, &[], &[&["a"], &["d"]]);
        assert!(!lasso_sat(&s, &w, phi2));
        assert!(!master_theorem_check(&mut s, &w, phi2, 12).unwrap());
    }

    #[test]
    fn fixpoints_on_the_loop() {
        let mut s = Session::with_atoms(["a", "b"]).unwrap();
        let w = lasso(&mut s, &[&["a"]], &[&["a"], &["b"]]);
        for (text, want) in [
            ("G F b", true),
            ("F G a", false),
            ("a U b", true),
            ("a W false", false),
            ("b R a", false),
            ("G (a | b)", true),
            ("X X b", true),
            ("b M a", false),
            ("a M a", true),
        ] {
            let f = s.parse(text).unwrap();
            assert_eq!(lasso_sat(&s, &w, f), want, "{text}");
        }
    }
}
