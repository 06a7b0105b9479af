//! Differential sweeps: every construction is run against the lasso oracle
//! on many (formula, lasso) pairs, and disagreements are shrunk.

use std::collections::BTreeMap;
use std::fmt::Write;

use ltl2aut_core::oracle::{lasso_sat, MasterChecker};
use ltl2aut_core::{dra, family, ldba, nba, Automaton, Error, Formula, Lasso, Limits, Session};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::random;

/// The three translations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Dra,
    Nba,
    Ldba,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Dra, Mode::Nba, Mode::Ldba];

    pub fn translate(self, s: &mut Session, f: Formula, limits: &Limits) -> Result<Automaton, Error> {
        match self {
            Mode::Dra => dra::dra(s, f, limits),
            Mode::Nba => nba::nba(s, f, limits),
            Mode::Ldba => ldba::ldba(s, f, limits),
        }
    }

    /// Lasso acceptance using the cheaper deterministic run where possible.
    pub fn accepts(self, a: &Automaton, w: &Lasso) -> Result<bool, Error> {
        match self {
            Mode::Dra => Ok(a.accepts_lasso_det(w)),
            Mode::Nba | Mode::Ldba => a.accepts_lasso_nondet(w),
        }
    }

    /// Acceptance of `w` by the translation of `f`, exploring only what the
    /// run on `w` reaches.
    pub fn accepts_on_the_fly(self, s: &mut Session, f: Formula, w: &Lasso, limits: &Limits) -> Result<bool, Error> {
        match self {
            Mode::Dra => dra::dra_accepts(s, f, w, limits),
            Mode::Nba => nba::nba_accepts(s, f, w, limits),
            Mode::Ldba => ldba::ldba_accepts(s, f, w, limits),
        }
    }

    pub fn accepts_all(self, a: &Automaton, lassos: &[Lasso]) -> Result<Vec<bool>, Error> {
        match self {
            Mode::Dra => Ok(lassos.iter().map(|w| a.accepts_lasso_det(w)).collect()),
            Mode::Nba | Mode::Ldba => a.accepts_lassos_nondet(lassos),
        }
    }
}

/// What is compared against the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// The brute-force Master Theorem decision.
    Master,
    Dra,
    Nba,
    Ldba,
}

impl From<Mode> for Check {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Dra => Check::Dra,
            Mode::Nba => Check::Nba,
            Mode::Ldba => Check::Ldba,
        }
    }
}

impl Check {
    pub fn mode(self) -> Option<Mode> {
        match self {
            Check::Master => None,
            Check::Dra => Some(Mode::Dra),
            Check::Nba => Some(Mode::Nba),
            Check::Ldba => Some(Mode::Ldba),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StateStats {
    pub automata: usize,
    pub total_states: usize,
    pub max_states: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: Check,
    pub formula: String,
    pub lasso: String,
    /// The oracle's verdict on the original pair.
    pub expected: bool,
    pub shrunk_formula: String,
    pub shrunk_lasso: String,
    /// Set when the construction failed instead of disagreeing.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub check: Check,
    pub formula: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: Option<u64>,
    pub formulas: usize,
    pub pairs: usize,
    pub failures: Vec<Failure>,
    pub skipped: Vec<Skipped>,
    pub stats: BTreeMap<Check, StateStats>,
    /// Formulas whose automaton exceeded the state cap and was checked on
    /// the fly instead.
    pub on_the_fly: BTreeMap<Check, usize>,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty() && self.skipped.is_empty()
    }

    /// Line-oriented summary.
    pub fn lines(&self) -> String {
        let mut out = String::new();
        if let Some(seed) = self.seed {
            writeln!(out, "seed {seed}").unwrap();
        }
        writeln!(out, "formulas {} pairs {}", self.formulas, self.pairs).unwrap();
        for (check, st) in &self.stats {
            let mean = st.total_states as f64 / st.automata.max(1) as f64;
            writeln!(out, "states {check:?} automata {} mean {mean:.2} max {}", st.automata, st.max_states).unwrap();
        }
        for (check, n) in &self.on_the_fly {
            writeln!(out, "on the fly {check:?} {n}").unwrap();
        }
        for sk in &self.skipped {
            writeln!(out, "skipped {:?} {} ({})", sk.check, sk.formula, sk.reason).unwrap();
        }
        for f in &self.failures {
            match &f.error {
                Some(e) => writeln!(out, "error {:?} {}: {e}", f.check, f.formula).unwrap(),
                None => writeln!(
                    out,
                    "mismatch {:?} {} on {} (oracle {}), shrunk to {} on {}",
                    f.check, f.formula, f.lasso, f.expected, f.shrunk_formula, f.shrunk_lasso
                )
                .unwrap(),
            }
        }
        writeln!(out, "failures {} skipped {}", self.failures.len(), self.skipped.len()).unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    fn record(&mut self, check: Check, a: &Automaton) {
        let st = self.stats.entry(check).or_default();
        st.automata += 1;
        st.total_states += a.num_states();
        st.max_states = st.max_states.max(a.num_states());
    }
}

/// A prepared decision procedure for one formula.
enum Decider {
    Master(MasterChecker),
    Automaton(Mode, Automaton),
    /// The automaton is too large to build.
    OnTheFly(Mode, Formula, Limits),
}

impl Decider {
    fn build(s: &mut Session, f: Formula, check: Check, limits: &Limits) -> Result<Self, Error> {
        Ok(match check.mode() {
            None => Decider::Master(MasterChecker::new(s, f, limits.max_advice)?),
            Some(m) => match m.translate(s, f, limits) {
                Ok(a) => Decider::Automaton(m, a),
                Err(Error::StateLimit { .. }) => Decider::OnTheFly(m, f, *limits),
                Err(e) => return Err(e),
            },
        })
    }

    fn decide(&mut self, s: &mut Session, w: &Lasso) -> Result<bool, Error> {
        match self {
            Decider::Master(m) => Ok(m.check(s, w)),
            Decider::Automaton(m, a) => m.accepts(a, w),
            Decider::OnTheFly(m, f, limits) => m.accepts_on_the_fly(s, *f, w, limits),
        }
    }

    fn decide_all(&mut self, s: &mut Session, lassos: &[Lasso]) -> Result<Vec<bool>, Error> {
        match self {
            Decider::Master(m) => Ok(lassos.iter().map(|w| m.check(s, w)).collect()),
            Decider::Automaton(m, a) => m.accepts_all(a, lassos),
            Decider::OnTheFly(..) => lassos.iter().map(|w| self.decide(s, w)).collect(),
        }
    }
}

/// Which checks to run, and with which caps.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub checks: Vec<Check>,
    pub limits: Limits,
    pub shrink: bool,
}

impl Sweep {
    pub fn new(checks: impl IntoIterator<Item = Check>) -> Self {
        Sweep { checks: checks.into_iter().collect(), limits: Limits::default(), shrink: true }
    }

    /// Runs every check on `f` (from session `src`) against every lasso.
    /// Each formula gets a fresh session over `atoms`, so memory stays flat
    /// over long sweeps.
    pub fn check_formula(&self, report: &mut Report, src: &Session, f: Formula, atoms: &[String], lassos: &[Lasso]) {
        self.check_formula_with(report, src, f, atoms, lassos, &mut |_, _, _, _| {});
    }

    /// Like [`Sweep::check_formula`], and hands every automaton built to
    /// `observe`.
    pub fn check_formula_with(
        &self,
        report: &mut Report,
        src: &Session,
        f: Formula,
        atoms: &[String],
        lassos: &[Lasso],
        observe: &mut dyn FnMut(&mut Session, Formula, Mode, &Automaton),
    ) {
        let mut s = Session::with_atoms(atoms).expect("atom names are valid");
        let f = s.import(src, f).expect("formula atoms are among the sweep atoms");
        report.formulas += 1;
        report.pairs += lassos.len();
        let truth: Vec<bool> = lassos.iter().map(|w| lasso_sat(&s, w, f)).collect();
        for &check in &self.checks {
            let mut decider = match Decider::build(&mut s, f, check, &self.limits) {
                Ok(d) => d,
                Err(e @ (Error::StateLimit { .. } | Error::AdviceLimit { .. })) => {
                    report.skipped.push(Skipped { check, formula: s.show(f).to_string(), reason: e.to_string() });
                    continue;
                }
                Err(e) => {
                    report.failures.push(self.failure(&s, f, check, &lassos[0], truth[0], Some(e)));
                    continue;
                }
            };
            match &decider {
                Decider::Automaton(m, a) => {
                    report.record(check, a);
                    observe(&mut s, f, *m, a);
                }
                Decider::OnTheFly(..) => *report.on_the_fly.entry(check).or_default() += 1,
                Decider::Master(_) => {}
            }
            match decider.decide_all(&mut s, lassos) {
                Ok(got) => {
                    if let Some(i) = (0..lassos.len()).find(|&i| got[i] != truth[i]) {
                        report.failures.push(self.failure(&s, f, check, &lassos[i], truth[i], None));
                    }
                }
                Err(e @ (Error::StateLimit { .. } | Error::AdviceLimit { .. })) => {
                    report.skipped.push(Skipped { check, formula: s.show(f).to_string(), reason: e.to_string() });
                }
                Err(e) => report.failures.push(self.failure(&s, f, check, &lassos[0], truth[0], Some(e))),
            }
        }
    }

    fn failure(&self, s: &Session, f: Formula, check: Check, w: &Lasso, expected: bool, error: Option<Error>) -> Failure {
        let (sf, sw) = if self.shrink && error.is_none() {
            shrink(s, f, w, &mut |t, g, v| self.disagrees(t, g, v, check))
        } else {
            (s.show(f).to_string(), w.render(s))
        };
        Failure {
            check,
            formula: s.show(f).to_string(),
            lasso: w.render(s),
            expected,
            shrunk_formula: sf,
            shrunk_lasso: sw,
            error: error.map(|e| e.to_string()),
        }
    }

    fn disagrees(&self, s: &mut Session, f: Formula, w: &Lasso, check: Check) -> bool {
        let want = lasso_sat(s, w, f);
        match Decider::build(s, f, check, &self.limits) {
            Ok(mut d) => d.decide(s, w).map_or(true, |got| got != want),
            Err(_) => false,
        }
    }
}

/// Shrinks a failing pair: letters are dropped from the lasso first, then
/// subformulas are replaced by their children or by constants, as long as
/// `fails` still holds. Returns the rendered formula and lasso.
pub fn shrink(
    src: &Session,
    f: Formula,
    w: &Lasso,
    fails: &mut dyn FnMut(&mut Session, Formula, &Lasso) -> bool,
) -> (String, String) {
    let mut s = Session::with_atoms(src.atom_names()).expect("names come from a session");
    let mut f = s.import(src, f).expect("same atoms");
    let mut w = w.clone();
    loop {
        if let Some(v) = drop_letter(&w).into_iter().find(|v| fails(&mut s, f, v)) {
            w = v;
            continue;
        }
        if let Some(g) = prune(&mut s, f).into_iter().find(|&g| fails(&mut s, g, &w)) {
            f = g;
            continue;
        }
        break;
    }
    (s.show(f).to_string(), w.render(&s))
}

fn drop_letter(w: &Lasso) -> Vec<Lasso> {
    let (u, v) = (w.prefix(), w.period());
    let mut out = Vec::new();
    for i in 0..u.len() {
        let mut u2 = u.to_vec();
        u2.remove(i);
        out.push(Lasso::new(u2, v.to_vec()).expect("period kept"));
    }
    if v.len() > 1 {
        for i in 0..v.len() {
            let mut v2 = v.to_vec();
            v2.remove(i);
            out.push(Lasso::new(u.to_vec(), v2).expect("period non-empty"));
        }
    }
    out
}

/// Formulas obtained from `f` by replacing one subformula with one of its
/// children or with a constant.
fn prune(s: &mut Session, f: Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    let node = s.node(f);
    let kids: Vec<Formula> = node.children().collect();
    if kids.is_empty() {
        return out;
    }
    out.extend(kids.iter().copied());
    out.push(s.tt());
    out.push(s.ff());
    for (i, &k) in kids.iter().enumerate() {
        for k2 in prune(s, k) {
            let (a, b) = match (i, kids.len()) {
                (0, 1) => (k2, k2),
                (0, _) => (k2, kids[1]),
                _ => (kids[0], k2),
            };
            out.push(s.rebuild(node, a, b));
        }
    }
    out.retain(|&g| g != f);
    out
}

/// Every formula of the exhaustive family against every lasso within the
/// bounds.
pub fn exhaustive(sweep: &Sweep, atoms: &[String], depth: usize, max_prefix: usize, max_period: usize) -> Report {
    exhaustive_with(sweep, atoms, depth, max_prefix, max_period, &mut |_, _, _, _| {})
}

pub fn exhaustive_with(
    sweep: &Sweep,
    atoms: &[String],
    depth: usize,
    max_prefix: usize,
    max_period: usize,
    observe: &mut dyn FnMut(&mut Session, Formula, Mode, &Automaton),
) -> Report {
    let mut src = Session::with_atoms(atoms).expect("atom names are valid");
    let ids: Vec<_> = atoms.iter().map(|a| src.atom(a).unwrap()).collect();
    let fam = family::exhaustive(&mut src, &ids, depth);
    let lassos = Lasso::enumerate(atoms.len() as u32, max_prefix, max_period);
    let mut report = Report::default();
    for f in fam {
        sweep.check_formula_with(&mut report, &src, f, atoms, &lassos, observe);
    }
    report
}

/// Parameters of a seeded random sweep.
#[derive(Clone, Debug)]
pub struct RandomConfig {
    pub seed: u64,
    pub cases: usize,
    pub atoms: Vec<String>,
    pub max_size: usize,
    pub max_prefix: usize,
    pub max_period: usize,
}

/// `cases` random (formula, lasso) pairs. The same seed gives the same
/// report.
pub fn random(sweep: &Sweep, cfg: &RandomConfig) -> Report {
    random_with(sweep, cfg, &mut |_, _, _, _| {})
}

pub fn random_with(sweep: &Sweep, cfg: &RandomConfig, observe: &mut dyn FnMut(&mut Session, Formula, Mode, &Automaton)) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = Report { seed: Some(cfg.seed), ..Report::default() };
    for _ in 0..cfg.cases {
        let mut src = Session::with_atoms(&cfg.atoms).expect("atom names are valid");
        let ids: Vec<_> = cfg.atoms.iter().map(|a| src.atom(a).unwrap()).collect();
        let size = rand::Rng::gen_range(&mut rng, 1..=cfg.max_size);
        let f = random::formula(&mut rng, &mut src, &ids, size);
        let w = random::lasso(&mut rng, cfg.atoms.len() as u32, cfg.max_prefix, cfg.max_period);
        sweep.check_formula_with(&mut report, &src, f, &cfg.atoms, &[w], observe);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn depth_one_family_is_clean() {
        let sweep = Sweep::new([Check::Master, Check::Dra, Check::Nba, Check::Ldba]);
        let report = exhaustive(&sweep, &atoms(&["a"]), 1, 1, 2);
        assert!(report.is_clean(), "{}", report.lines());
        assert_eq!(report.formulas, 4 + 12 + 96);
        assert_eq!(report.stats.len(), 3);
    }

    #[test]
    fn same_seed_same_report() {
        let sweep = Sweep::new([Check::Dra]);
        let cfg = RandomConfig { seed: 11, cases: 30, atoms: atoms(&["a", "b"]), max_size: 8, max_prefix: 3, max_period: 3 };
        assert_eq!(random(&sweep, &cfg), random(&sweep, &cfg));
    }

    #[test]
    fn shrinking_finds_a_small_witness() {
        // A deliberately wrong decider: claims `w ⊨ φ` iff `φ` mentions F.
        let mut s = Session::with_atoms(["a", "b"]).unwrap();
        let f = s.parse("(a U b) & X F (a | b)").unwrap();
        let w = Lasso::new(vec![], vec![ltl2aut_core::Letter::EMPTY]).unwrap();
        let (sf, sw) = shrink(&s, f, &w, &mut |t, g, v| {
            let claims = t.show(g).to_string().contains('F');
            claims != lasso_sat(t, v, g)
        });
        assert_eq!(sw, "({})^w");
        // `true` also fools the decider and is the smallest such formula.
        assert_eq!(sf, "true");
    }
}
