use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::Error;
use crate::formula::{Atom, Formula, Node};
use crate::prop::{Bdd, CanonClass, Clause};
use crate::word::{Letter, MAX_ATOMS};

/// Owner of every formula, atom and propositional class.
///
/// Formulas are hash-consed: structurally identical formulas get the same
/// [`Formula`] handle, so equality and hashing are O(1). Handles are only
/// meaningful for the session that created them. A session is not shared
/// between threads; build one per worker.
#[derive(Debug)]
pub struct Session {
    pub(crate) nodes: Vec<Node>,
    pub(crate) interned: HashMap<Node, Formula>,
    pub(crate) atoms: Vec<String>,
    pub(crate) atoms_closed: bool,
    pub(crate) bdd: Bdd,
    pub(crate) class_of: Vec<Option<CanonClass>>,
    pub(crate) af_var: HashMap<(Formula, Letter), CanonClass>,
    pub(crate) af_class: HashMap<(CanonClass, Letter), CanonClass>,
    pub(crate) dnf: HashMap<CanonClass, Arc<[Clause]>>,
}

impl Default for Session {
    fn default() -> Self {
        Self::new()
    }
}

impl Session {
    /// A session whose atom set grows as formulas mention new atoms.
    pub fn new() -> Self {
        let mut s = Session {
            nodes: Vec::new(),
            interned: HashMap::new(),
            atoms: Vec::new(),
            atoms_closed: false,
            bdd: Bdd::new(),
            class_of: Vec::new(),
            af_var: HashMap::new(),
            af_class: HashMap::new(),
            dnf: HashMap::new(),
        };
        // tt and ff always get the first two handles.
        s.intern(Node::Tt);
        s.intern(Node::Ff);
        s
    }

    /// A session over a fixed atom set; parsing an atom outside it fails.
    pub fn with_atoms<I, S>(atoms: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut s = Self::new();
        for a in atoms {
            s.atom(a.as_ref())?;
        }
        s.atoms_closed = true;
        Ok(s)
    }

    /// Closes the atom set: later unknown atoms are errors.
    pub fn close_atoms(&mut self) {
        self.atoms_closed = true;
    }

    /// Looks up or (when the atom set is open) registers an atom.
    pub fn atom(&mut self, name: &str) -> Result<Atom, Error> {
        if let Some(i) = self.atoms.iter().position(|a| a == name) {
            return Ok(Atom(i as u32));
        }
        if self.atoms_closed {
            return Err(Error::UnknownAtom(name.to_string()));
        }
        if self.atoms.len() >= MAX_ATOMS {
            return Err(Error::TooManyAtoms);
        }
        self.atoms.push(name.to_string());
        Ok(Atom(self.atoms.len() as u32 - 1))
    }

    pub fn atom_names(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_name(&self, a: Atom) -> &str {
        &self.atoms[a.0 as usize]
    }

    /// `|Ap|`; automata built now are over the alphabet `2^Ap`.
    pub fn num_atoms(&self) -> u32 {
        self.atoms.len() as u32
    }

    /// Every letter of `2^Ap`, in bit order.
    pub fn alphabet(&self) -> impl Iterator<Item = Letter> {
        Letter::all(self.num_atoms())
    }

    /// Number of interned formulas.
    pub fn num_formulas(&self) -> usize {
        self.nodes.len()
    }

    pub(crate) fn intern(&mut self, node: Node) -> Formula {
        if let Some(&f) = self.interned.get(&node) {
            return f;
        }
        let f = Formula(self.nodes.len() as u32);
        self.nodes.push(node);
        self.interned.insert(node, f);
        self.class_of.push(None);
        f
    }
}
