//! A strict checker for the HOA v1 format, written from the format
//! definition rather than from our writer. It parses the whole grammar
//! (comments, aliases, arbitrary headers, implicit and explicit labels) and
//! then checks the cross-references: state, AP and acceptance-set indices,
//! unique headers and states, and that `acc-name` agrees with `Acceptance`.

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Header(String),
    Ident(String),
    Alias(String),
    Int(u64),
    Str(String),
    Bool(bool),
    Sym(char),
    Body,
    End,
    Abort,
}

struct Lexer<'a> {
    text: &'a str,
    i: usize,
    /// The first lexical error; every later call returns it again.
    failed: Option<String>,
}

impl Lexer<'_> {
    fn next_tok(&mut self) -> Result<Option<Tok>, String> {
        if let Some(e) = &self.failed {
            return Err(e.clone());
        }
        let r = self.lex_one();
        if let Err(e) = &r {
            self.failed = Some(e.clone());
        }
        r
    }

    fn lex_one(&mut self) -> Result<Option<Tok>, String> {
        let text = self.text;
        let b = text.as_bytes();
        let i = &mut self.i;
        while *i < b.len() {
            let c = b[*i];
            if c.is_ascii_whitespace() {
                *i += 1;
            } else if b[*i..].starts_with(b"/*") {
                // Comments nest.
                let mut depth = 0;
                loop {
                    if b[*i..].starts_with(b"/*") {
                        depth += 1;
                        *i += 2;
                    } else if b[*i..].starts_with(b"*/") {
                        depth -= 1;
                        *i += 2;
                        if depth == 0 {
                            break;
                        }
                    } else if *i >= b.len() {
                        return Err("unterminated comment".into());
                    } else {
                        *i += 1;
                    }
                }
            } else {
                break;
            }
        }
        if *i >= b.len() {
            return Ok(None);
        }
        let c = b[*i];
        let tok = if c == b'"' {
            *i += 1;
            let mut s = String::new();
            loop {
                match b.get(*i) {
                    None => return Err("unterminated string".into()),
                    Some(b'"') => break,
                    Some(b'\\') => {
                        s.push(*b.get(*i + 1).ok_or("bad escape")? as char);
                        *i += 2;
                    }
                    Some(&x) => {
                        s.push(x as char);
                        *i += 1;
                    }
                }
            }
            *i += 1;
            Tok::Str(s)
        } else if c.is_ascii_digit() {
            let start = *i;
            while *i < b.len() && b[*i].is_ascii_digit() {
                *i += 1;
            }
            let digits = &text[start..*i];
            if digits.len() > 1 && digits.starts_with('0') {
                return Err(format!("integer with leading zero: {digits}"));
            }
            Tok::Int(digits.parse().map_err(|_| "integer overflow")?)
        } else if c == b'@' {
            let start = *i + 1;
            *i = start;
            while *i < b.len() && (b[*i].is_ascii_alphanumeric() || b[*i] == b'_' || b[*i] == b'-') {
                *i += 1;
            }
            if *i == start {
                return Err("empty alias name".into());
            }
            Tok::Alias(text[start..*i].into())
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = *i;
            while *i < b.len() && (b[*i].is_ascii_alphanumeric() || b[*i] == b'_' || b[*i] == b'-') {
                *i += 1;
            }
            let word = &text[start..*i];
            if b.get(*i) == Some(&b':') {
                *i += 1;
                Tok::Header(word.into())
            } else {
                match word {
                    "t" => Tok::Bool(true),
                    "f" => Tok::Bool(false),
                    _ => Tok::Ident(word.into()),
                }
            }
        } else if b[*i..].starts_with(b"--BODY--") {
            *i += 8;
            Tok::Body
        } else if b[*i..].starts_with(b"--END--") {
            *i += 7;
            Tok::End
        } else if b[*i..].starts_with(b"--ABORT--") {
            *i += 9;
            Tok::Abort
        } else if b"!&|()[]{}".contains(&c) {
            *i += 1;
            Tok::Sym(c as char)
        } else {
            return Err(format!("unexpected character {:?} at byte {}", c as char, *i));
        };
        Ok(Some(tok))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Acc {
    Bool(bool),
    Set { inf: bool, negated: bool, set: u64 },
    And(Box<Acc>, Box<Acc>),
    Or(Box<Acc>, Box<Acc>),
}

impl Acc {
    fn sets(&self, out: &mut Vec<u64>) {
        match self {
            Acc::Bool(_) => {}
            Acc::Set { set, .. } => out.push(*set),
            Acc::And(l, r) | Acc::Or(l, r) => {
                l.sets(out);
                r.sets(out);
            }
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<Tok>,
    max_ap: Option<u64>,
    aliases: Vec<String>,
    alias_uses: Vec<String>,
    ap_uses: Vec<u64>,
}

impl Parser<'_> {
    /// The next token, or `None` at the end of input or on a lexical
    /// error, which [`Parser::next`] then reports.
    fn peek(&mut self) -> Option<&Tok> {
        if self.peeked.is_none() {
            self.peeked = self.lexer.next_tok().ok().flatten();
        }
        self.peeked.as_ref()
    }

    fn next(&mut self) -> Result<Tok, String> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lexer.next_tok()?.ok_or_else(|| "unexpected end of input".into()),
        }
    }

    fn skip(&mut self) {
        self.peeked = None;
    }

    fn sym(&mut self, c: char) -> Result<(), String> {
        match self.next()? {
            Tok::Sym(d) if d == c => Ok(()),
            t => Err(format!("expected {c:?}, found {t:?}")),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.skip();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u64, String> {
        match self.next()? {
            Tok::Int(n) => Ok(n),
            t => Err(format!("expected an integer, found {t:?}")),
        }
    }

    /// `label-expr`, with `|` binding weaker than `&`, which binds weaker
    /// than `!`.
    fn label_or(&mut self) -> Result<(), String> {
        self.label_and()?;
        while self.eat('|') {
            self.label_and()?;
        }
        Ok(())
    }

    fn label_and(&mut self) -> Result<(), String> {
        self.label_atom()?;
        while self.eat('&') {
            self.label_atom()?;
        }
        Ok(())
    }

    fn label_atom(&mut self) -> Result<(), String> {
        match self.next()? {
            Tok::Bool(_) => Ok(()),
            Tok::Int(n) => {
                self.ap_uses.push(n);
                Ok(())
            }
            Tok::Alias(a) => {
                self.alias_uses.push(a);
                Ok(())
            }
            Tok::Sym('!') => self.label_atom(),
            Tok::Sym('(') => {
                self.label_or()?;
                self.sym(')')
            }
            t => Err(format!("bad label expression at {t:?}")),
        }
    }

    fn acc_or(&mut self) -> Result<Acc, String> {
        let mut l = self.acc_and()?;
        while self.eat('|') {
            l = Acc::Or(Box::new(l), Box::new(self.acc_and()?));
        }
        Ok(l)
    }

    fn acc_and(&mut self) -> Result<Acc, String> {
        let mut l = self.acc_atom()?;
        while self.eat('&') {
            l = Acc::And(Box::new(l), Box::new(self.acc_atom()?));
        }
        Ok(l)
    }

    fn acc_atom(&mut self) -> Result<Acc, String> {
        match self.next()? {
            Tok::Bool(b) => Ok(Acc::Bool(b)),
            Tok::Sym('(') => {
                let a = self.acc_or()?;
                self.sym(')')?;
                Ok(a)
            }
            Tok::Ident(id) if id == "Inf" || id == "Fin" => {
                self.sym('(')?;
                let negated = self.eat('!');
                let set = self.int()?;
                self.sym(')')?;
                Ok(Acc::Set { inf: id == "Inf", negated, set })
            }
            t => Err(format!("bad acceptance condition at {t:?}")),
        }
    }

    fn state_conj(&mut self) -> Result<Vec<u64>, String> {
        let mut v = vec![self.int()?];
        while self.eat('&') {
            v.push(self.int()?);
        }
        Ok(v)
    }

    fn acc_sig(&mut self) -> Result<Vec<u64>, String> {
        let mut v = Vec::new();
        if self.eat('{') {
            while let Some(&Tok::Int(n)) = self.peek() {
                v.push(n);
                self.skip();
            }
            self.sym('}')?;
        }
        Ok(v)
    }

    fn header_values(&mut self) -> Vec<Tok> {
        let mut out = Vec::new();
        while matches!(self.peek(), Some(Tok::Int(_) | Tok::Str(_) | Tok::Ident(_) | Tok::Bool(_))) {
            out.push(self.peeked.take().unwrap());
        }
        out
    }
}

/// What a valid file declares.
#[derive(Debug)]
pub struct Summary {
    pub states: usize,
    pub aps: usize,
    pub edges: usize,
}

/// Checks `text` against the HOA v1 grammar and its consistency rules.
pub fn check(text: &str) -> Result<Summary, String> {
    let mut p = Parser { lexer: Lexer { text, i: 0, failed: None }, peeked: None, max_ap: None, aliases: Vec::new(), alias_uses: Vec::new(), ap_uses: Vec::new() };

    match (p.next()?, p.next()?) {
        (Tok::Header(h), Tok::Ident(v)) if h == "HOA" && v == "v1" => {}
        (a, b) => return Err(format!("expected `HOA: v1`, found {a:?} {b:?}")),
    }
    let mut num_states = None;
    let mut starts: Vec<u64> = Vec::new();
    let mut acc: Option<(u64, Acc)> = None;
    let mut acc_name: Option<Vec<Tok>> = None;
    loop {
        match p.next()? {
            Tok::Body => break,
            Tok::Header(h) => match h.as_str() {
                "States" => {
                    if num_states.replace(p.int()?).is_some() {
                        return Err("States: given twice".into());
                    }
                }
                "Start" => starts.extend(p.state_conj()?),
                "AP" => {
                    if p.max_ap.is_some() {
                        return Err("AP: given twice".into());
                    }
                    let n = p.int()?;
                    let mut names = Vec::new();
                    while let Some(Tok::Str(_)) = p.peek() {
                        let Some(Tok::Str(s)) = p.peeked.take() else { unreachable!() };
                        names.push(s);
                    }
                    if names.len() as u64 != n {
                        return Err(format!("AP: declares {n} propositions but names {}", names.len()));
                    }
                    let mut sorted = names.clone();
                    sorted.sort();
                    sorted.dedup();
                    if sorted.len() != names.len() {
                        return Err("AP: repeated proposition".into());
                    }
                    p.max_ap = Some(n);
                }
                "Alias" => {
                    let Tok::Alias(name) = p.next()? else { return Err("Alias: needs @name".into()) };
                    p.label_or()?;
                    p.aliases.push(name);
                }
                "Acceptance" => {
                    if acc.is_some() {
                        return Err("Acceptance: given twice".into());
                    }
                    let n = p.int()?;
                    acc = Some((n, p.acc_or()?));
                }
                "acc-name" => acc_name = Some(p.header_values()),
                "tool" | "name" => {
                    let Tok::Str(_) = p.next()? else { return Err(format!("{h}: needs a string")) };
                    if h == "tool" {
                        if let Some(Tok::Str(_)) = p.peek() {
                            p.skip();
                        }
                    }
                }
                _ => {
                    p.header_values();
                }
            },
            t => return Err(format!("unexpected {t:?} in header")),
        }
    }
    let (num_sets, cond) = acc.ok_or("missing Acceptance:")?;
    let mut used = Vec::new();
    cond.sets(&mut used);
    if let Some(&s) = used.iter().find(|&&s| s >= num_sets) {
        return Err(format!("acceptance set {s} out of range"));
    }
    if let Some(name) = acc_name {
        check_acc_name(&name, num_sets, &cond)?;
    }

    let mut defined: Vec<u64> = Vec::new();
    let mut targets: Vec<u64> = Vec::new();
    let mut edges = 0;
    loop {
        match p.next()? {
            Tok::End => break,
            Tok::Abort => return Err("--ABORT--".into()),
            Tok::Header(h) if h == "State" => {
                let labelled_state = p.eat('[');
                if labelled_state {
                    p.label_or()?;
                    p.sym(']')?;
                }
                defined.push(p.int()?);
                if let Some(Tok::Str(_)) = p.peek() {
                    p.skip();
                }
                let sig = p.acc_sig()?;
                if let Some(&s) = sig.iter().find(|&&s| s >= num_sets) {
                    return Err(format!("state {} uses acceptance set {s} of {num_sets}", defined.last().unwrap()));
                }
                let mut explicit = None;
                loop {
                    let labelled = match p.peek() {
                        Some(Tok::Sym('[')) => true,
                        Some(Tok::Int(_)) => false,
                        _ => break,
                    };
                    if labelled_state && labelled {
                        return Err("labelled state with labelled edges".into());
                    }
                    if *explicit.get_or_insert(labelled) != labelled {
                        return Err("state mixes labelled and unlabelled edges".into());
                    }
                    if labelled {
                        p.sym('[')?;
                        p.label_or()?;
                        p.sym(']')?;
                    }
                    targets.extend(p.state_conj()?);
                    let sig = p.acc_sig()?;
                    if let Some(&s) = sig.iter().find(|&&s| s >= num_sets) {
                        return Err(format!("edge uses acceptance set {s} of {num_sets}"));
                    }
                    edges += 1;
                }
            }
            t => return Err(format!("unexpected {t:?} in body")),
        }
    }
    if p.lexer.next_tok()?.is_some() {
        return Err("trailing input after --END--".into());
    }

    let mut sorted = defined.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != defined.len() {
        return Err("state defined twice".into());
    }
    let bound = num_states.unwrap_or(u64::MAX);
    for (what, v) in [("state", &defined), ("start state", &starts), ("edge target", &targets)] {
        if let Some(&q) = v.iter().find(|&&q| q >= bound) {
            return Err(format!("{what} {q} out of range"));
        }
    }
    if let Some(&a) = p.ap_uses.iter().find(|&&a| a >= p.max_ap.unwrap_or(0)) {
        return Err(format!("proposition {a} out of range"));
    }
    if let Some(a) = p.alias_uses.iter().find(|a| !p.aliases.contains(a)) {
        return Err(format!("undefined alias @{a}"));
    }
    Ok(Summary { states: num_states.unwrap_or(defined.len() as u64) as usize, aps: p.max_ap.unwrap_or(0) as usize, edges })
}

fn set(inf: bool, set: u64) -> Acc {
    Acc::Set { inf, negated: false, set }
}

/// The conditions `acc-name` prescribes, for the names our writer can use.
fn check_acc_name(name: &[Tok], num_sets: u64, cond: &Acc) -> Result<(), String> {
    let expected = match name {
        [Tok::Ident(n)] if n == "Buchi" => (1, set(true, 0)),
        [Tok::Ident(n)] if n == "co-Buchi" => (1, set(false, 0)),
        [Tok::Ident(n), Tok::Int(k)] if n == "Rabin" => {
            let pair = |i: u64| Acc::And(Box::new(set(false, 2 * i)), Box::new(set(true, 2 * i + 1)));
            let c = (1..*k).fold(if *k == 0 { Acc::Bool(false) } else { pair(0) }, |c, i| Acc::Or(Box::new(c), Box::new(pair(i))));
            (2 * k, c)
        }
        [Tok::Ident(_), ..] => return Ok(()),
        _ => return Err(format!("malformed acc-name {name:?}")),
    };
    if expected != (num_sets, cond.clone()) {
        return Err(format!("acc-name {name:?} does not match Acceptance: {num_sets} {cond:?}"));
    }
    Ok(())
}
