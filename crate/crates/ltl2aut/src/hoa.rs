//! HOA v1 output with state-based acceptance.

use std::fmt::Write;

use ltl2aut_core::{Acceptance, Automaton, Error, Letter, Session, StateSet};

/// Acceptance condition of an automaton as HOA sees it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoaAcceptance {
    Buchi,
    CoBuchi,
    Rabin(usize),
}

impl HoaAcceptance {
    pub fn of(a: &Automaton) -> Result<Self, Error> {
        match a.acceptance() {
            Acceptance::Inf(_) => Ok(HoaAcceptance::Buchi),
            Acceptance::Fin(_) => Ok(HoaAcceptance::CoBuchi),
            acc => acc
                .rabin_pairs()
                .map(|p| HoaAcceptance::Rabin(p.len()))
                .ok_or(Error::ConditionShape("HOA output needs Büchi, co-Büchi or Rabin acceptance")),
        }
    }

    pub fn num_sets(self) -> usize {
        match self {
            HoaAcceptance::Buchi | HoaAcceptance::CoBuchi => 1,
            HoaAcceptance::Rabin(k) => 2 * k,
        }
    }

    fn acc_name(self) -> String {
        match self {
            HoaAcceptance::Buchi => "Buchi".into(),
            HoaAcceptance::CoBuchi => "co-Buchi".into(),
            HoaAcceptance::Rabin(k) => format!("Rabin {k}"),
        }
    }

    fn condition(self) -> String {
        match self {
            HoaAcceptance::Buchi => "1 Inf(0)".into(),
            HoaAcceptance::CoBuchi => "1 Fin(0)".into(),
            HoaAcceptance::Rabin(0) => "0 f".into(),
            HoaAcceptance::Rabin(k) => {
                let pairs: Vec<String> = (0..k).map(|i| format!("(Fin({})&Inf({}))", 2 * i, 2 * i + 1)).collect();
                format!("{} {}", 2 * k, pairs.join("|"))
            }
        }
    }
}

/// Serializes `a` as HOA v1. Atom names are taken from `s`, which must be
/// the session the automaton was built in. Every letter gets its own edge,
/// labelled with the full minterm over all atoms.
pub fn write_hoa(s: &Session, a: &Automaton) -> Result<String, Error> {
    let kind = HoaAcceptance::of(a)?;
    if a.num_atoms() as usize > s.atom_names().len() {
        return Err(Error::AlphabetMismatch);
    }
    // The sets each state belongs to, in HOA numbering.
    let sets: Vec<&StateSet> = match a.acceptance() {
        Acceptance::Inf(x) | Acceptance::Fin(x) => vec![x],
        acc => acc
            .rabin_pairs()
            .expect("shape checked above")
            .into_iter()
            .flat_map(|(fin, inf)| [fin, inf])
            .collect(),
    };
    let mut out = String::new();
    out.push_str("HOA: v1\n");
    writeln!(out, "States: {}", a.num_states()).unwrap();
    for q in a.initial() {
        writeln!(out, "Start: {q}").unwrap();
    }
    let names = &s.atom_names()[..a.num_atoms() as usize];
    write!(out, "AP: {}", names.len()).unwrap();
    for n in names {
        write!(out, " \"{}\"", n.replace('\\', "\\\\").replace('"', "\\\"")).unwrap();
    }
    out.push('\n');
    writeln!(out, "acc-name: {}", kind.acc_name()).unwrap();
    writeln!(out, "Acceptance: {}", kind.condition()).unwrap();
    out.push_str("--BODY--\n");
    let labels: Vec<String> = Letter::all(a.num_atoms()).map(|l| minterm(l, a.num_atoms())).collect();
    for q in 0..a.num_states() as u32 {
        write!(out, "State: {q}").unwrap();
        let member: Vec<String> = (0..sets.len()).filter(|&i| sets[i].contains(q)).map(|i| i.to_string()).collect();
        if !member.is_empty() {
            write!(out, " {{{}}}", member.join(" ")).unwrap();
        }
        out.push('\n');
        for (nu, label) in Letter::all(a.num_atoms()).zip(&labels) {
            for r in a.successors(q, nu) {
                writeln!(out, "[{label}] {r}").unwrap();
            }
        }
    }
    out.push_str("--END--\n");
    Ok(out)
}

fn minterm(l: Letter, num_atoms: u32) -> String {
    if num_atoms == 0 {
        return "t".into();
    }
    (0..num_atoms)
        .map(|i| if l.bits() >> i & 1 == 1 { i.to_string() } else { format!("!{i}") })
        .collect::<Vec<_>>()
        .join("&")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universal_buchi_without_atoms() {
        let s = Session::new();
        let a = Automaton::universal(0, true);
        let text = write_hoa(&s, &a).unwrap();
        assert_eq!(
            text,
            "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nacc-name: Buchi\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0 {0}\n[t] 0\n--END--\n"
        );
    }

    #[test]
    fn minterms() {
        assert_eq!(minterm(Letter::from_bits(0b01), 2), "0&!1");
        assert_eq!(minterm(Letter::from_bits(0b10), 2), "!0&1");
    }
}
