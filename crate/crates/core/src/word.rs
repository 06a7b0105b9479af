//! Letters of `2^Ap` and ultimately periodic words.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::Error;
use crate::session::Session;
use crate::formula::Atom;

/// Largest supported `|Ap|`. Alphabets are enumerated explicitly.
pub const MAX_ATOMS: usize = 16;

/// A set of atoms, as a bitset over the session's atom indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Letter(u32);

impl Letter {
    pub const EMPTY: Letter = Letter(0);

    pub const fn from_bits(bits: u32) -> Self {
        Letter(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, a: Atom) -> bool {
        self.0 >> a.0 & 1 == 1
    }

    pub fn with(self, a: Atom) -> Self {
        Letter(self.0 | 1 << a.0)
    }

    /// All `2^n` letters over `n` atoms.
    pub fn all(num_atoms: u32) -> impl Iterator<Item = Letter> + Clone {
        (0..1u32 << num_atoms).map(Letter)
    }

    /// `{a, b}` style rendering.
    pub fn render(self, s: &Session) -> String {
        let mut out = String::from("{");
        let mut first = true;
        for (i, name) in s.atom_names().iter().enumerate() {
            if self.0 >> i & 1 == 1 {
                if !first {
                    out.push_str(", ");
                }
                out.push_str(name);
                first = false;
            }
        }
        out.push('}');
        out
    }
}

/// The ultimately periodic word `prefix · period^ω`.
///
/// Positions `0..len()` form the finite quotient of the word: position `p`
/// steps to `p + 1`, and the last period position steps back to
/// `prefix.len()`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lasso {
    prefix: Vec<Letter>,
    period: Vec<Letter>,
}

impl Lasso {
    pub fn new(prefix: Vec<Letter>, period: Vec<Letter>) -> Result<Self, Error> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(Lasso { prefix, period })
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    /// Number of quotient positions, `|u| + |v|`.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn loop_start(&self) -> usize {
        self.prefix.len()
    }

    /// Letter at quotient position `p`.
    pub fn letter_at(&self, p: usize) -> Letter {
        if p < self.prefix.len() {
            self.prefix[p]
        } else {
            self.period[p - self.prefix.len()]
        }
    }

    /// Successor of quotient position `p`.
    pub fn successor(&self, p: usize) -> usize {
        if p + 1 < self.len() {
            p + 1
        } else {
            self.prefix.len()
        }
    }

    /// Quotient position of absolute index `i` of the infinite word.
    pub fn position(&self, i: usize) -> usize {
        let u = self.prefix.len();
        if i < u {
            i
        } else {
            u + (i - u) % self.period.len()
        }
    }

    /// Letter `w[i]` of the infinite word.
    pub fn letter(&self, i: usize) -> Letter {
        self.letter_at(self.position(i))
    }

    /// The finite infix `w[0] .. w[n-1]`.
    pub fn take(&self, n: usize) -> Vec<Letter> {
        (0..n).map(|i| self.letter(i)).collect()
    }

    /// The suffix `w_i`.
    pub fn suffix(&self, i: usize) -> Lasso {
        let p = self.position(i);
        if p < self.prefix.len() {
            Lasso {
                prefix: self.prefix[p..].to_vec(),
                period: self.period.clone(),
            }
        } else {
            let k = p - self.prefix.len();
            let mut period = self.period[k..].to_vec();
            period.extend_from_slice(&self.period[..k]);
            Lasso { prefix: Vec::new(), period }
        }
    }

    /// `finite · self`.
    pub fn prepend(&self, finite: &[Letter]) -> Lasso {
        let mut prefix = finite.to_vec();
        prefix.extend_from_slice(&self.prefix);
        Lasso {
            prefix,
            period: self.period.clone(),
        }
    }

    /// `u · (v)^ω` rendering with letters as atom sets.
    pub fn render(&self, s: &Session) -> String {
        let mut out = String::new();
        for l in &self.prefix {
            out.push_str(&l.render(s));
        }
        out.push('(');
        for l in &self.period {
            out.push_str(&l.render(s));
        }
        let _ = write!(out, ")^w");
        out
    }

    /// Every lasso over `num_atoms` atoms with `|u| <= max_prefix` and
    /// `1 <= |v| <= max_period`.
    pub fn enumerate(num_atoms: u32, max_prefix: usize, max_period: usize) -> Vec<Lasso> {
        let words = |max: usize, min: usize| {
            let mut all: Vec<Vec<Letter>> = Vec::new();
            let mut layer: Vec<Vec<Letter>> = alloc::vec![Vec::new()];
            for len in 0..=max {
                if len >= min {
                    all.extend(layer.iter().cloned());
                }
                layer = layer
                    .iter()
                    .flat_map(|w| {
                        Letter::all(num_atoms).map(move |l| {
                            let mut w = w.clone();
                            w.push(l);
                            w
                        })
                    })
                    .collect();
            }
            all
        };
        let prefixes = words(max_prefix, 0);
        let periods = words(max_period, 1);
        let mut out = Vec::with_capacity(prefixes.len() * periods.len());
        for u in &prefixes {
            for v in &periods {
                out.push(Lasso {
                    prefix: u.clone(),
                    period: v.clone(),
                });
            }
        }
        out
    }
}
