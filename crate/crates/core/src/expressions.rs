//! Regular deallocation expressions: syntax, rc/lo/lc profiles, the grammar
//! side conditions and both directions of the Kleene correspondence.
//!
//! Text syntax: atoms `0` (empty language), `1` (ε), letters `a`, `<a`, `a>`,
//! `<a>`, and `?` (an allocate-and-deallocate letter whose name is irrelevant);
//! postfix `*`; concatenation by juxtaposition; infix `+` with the lowest
//! precedence; parentheses.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use crate::automaton::{Flags, Label, Orbit, SAutomaton, State, StateId, Transition};
use crate::error::{Error, Result};
use crate::names::{fresh, Name, NameSet};
use crate::words::{join_names, Letter, Profile, Word};

/// A regular deallocation expression.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regex {
    /// `0`: the empty language.
    Empty,
    /// `1`: the empty word.
    Eps,
    /// A single letter.
    Lit(Letter),
    /// `?`: an allocate-and-deallocate letter with an irrelevant name.
    Unknown,
    /// Concatenation.
    Cat(Rc<Regex>, Rc<Regex>),
    /// Union.
    Sum(Rc<Regex>, Rc<Regex>),
    /// Kleene star.
    Star(Rc<Regex>),
}

impl Regex {
    /// `r · s`.
    pub fn cat(r: Regex, s: Regex) -> Regex {
        Regex::Cat(Rc::new(r), Rc::new(s))
    }
    /// `r + s`.
    pub fn sum(r: Regex, s: Regex) -> Regex {
        Regex::Sum(Rc::new(r), Rc::new(s))
    }
    /// `r*`.
    pub fn star(r: Regex) -> Regex {
        Regex::Star(Rc::new(r))
    }
    /// A letter parsed from its token.
    ///
    /// # Panics
    /// Panics on malformed tokens.
    pub fn lit(token: &str) -> Regex {
        Regex::Lit(Letter::parse(token).expect("valid letter"))
    }

    /// Parses the text syntax.
    pub fn parse(text: &str) -> Result<Regex> {
        Parser::new(text).parse()
    }

    /// Names of all letters.
    pub fn names(&self) -> NameSet {
        let mut out = NameSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut NameSet) {
        match self {
            Regex::Lit(l) => {
                out.insert(l.name);
            }
            Regex::Cat(r, s) | Regex::Sum(r, s) => {
                r.collect_names(out);
                s.collect_names(out);
            }
            Regex::Star(r) => r.collect_names(out),
            Regex::Empty | Regex::Eps | Regex::Unknown => {}
        }
    }

    /// Whether a `?` occurs.
    pub fn has_unknown(&self) -> bool {
        match self {
            Regex::Unknown => true,
            Regex::Cat(r, s) | Regex::Sum(r, s) => r.has_unknown() || s.has_unknown(),
            Regex::Star(r) => r.has_unknown(),
            _ => false,
        }
    }

    /// Whether no `*` occurs.
    pub fn is_star_free(&self) -> bool {
        match self {
            Regex::Star(_) => false,
            Regex::Cat(r, s) | Regex::Sum(r, s) => r.is_star_free() && s.is_star_free(),
            _ => true,
        }
    }

    /// Nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Regex::Cat(r, s) | Regex::Sum(r, s) => 1 + r.depth().max(s.depth()),
            Regex::Star(r) => 1 + r.depth(),
            _ => 0,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Regex::Cat(r, s) | Regex::Sum(r, s) => 1 + r.size() + s.size(),
            Regex::Star(r) => 1 + r.size(),
            _ => 1,
        }
    }

    /// Whether the language is empty.
    pub fn is_empty_language(&self) -> bool {
        match self {
            Regex::Empty => true,
            Regex::Cat(r, s) => r.is_empty_language() || s.is_empty_language(),
            Regex::Sum(r, s) => r.is_empty_language() && s.is_empty_language(),
            _ => false,
        }
    }

    /// The name chosen for every `?`: the smallest name not used by a letter.
    pub fn unknown_name(&self) -> Name {
        fresh(&self.names())
    }

    /// The pool of the compiled automaton: all letter names, plus the `?` name.
    pub fn pool(&self) -> NameSet {
        let mut pool = self.names();
        if self.has_unknown() {
            pool.insert(self.unknown_name());
        }
        pool
    }

    fn print(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        let parens = match self {
            Regex::Sum(..) => prec > 0,
            Regex::Cat(..) => prec > 1,
            Regex::Star(_) => prec > 2,
            _ => false,
        };
        if parens {
            write!(f, "(")?;
        }
        match self {
            Regex::Empty => write!(f, "0")?,
            Regex::Eps => write!(f, "1")?,
            Regex::Lit(l) => write!(f, "{l}")?,
            Regex::Unknown => write!(f, "?")?,
            Regex::Sum(r, s) => {
                r.print(f, 0)?;
                write!(f, " + ")?;
                s.print(f, 1)?;
            }
            Regex::Cat(r, s) => {
                r.print(f, 1)?;
                write!(f, " ")?;
                s.print(f, 2)?;
            }
            Regex::Star(r) => {
                r.print(f, 3)?;
                write!(f, "*")?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.print(f, 0)
    }
}

impl fmt::Debug for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl std::str::FromStr for Regex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Regex> {
        Regex::parse(s)
    }
}

struct Parser<'a> {
    text: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, chars: text.chars().collect(), pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.text, self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Regex> {
        if self.peek().is_none() {
            return Err(self.error("empty expression"));
        }
        let r = self.sum()?;
        match self.peek() {
            None => Ok(r),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    fn sum(&mut self) -> Result<Regex> {
        let mut r = self.cat()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            let s = self.cat()?;
            r = Regex::sum(r, s);
        }
        Ok(r)
    }

    fn starts_atom(c: char) -> bool {
        c == '(' || c == '<' || c == '0' || c == '1' || c == '?' || c.is_ascii_lowercase()
    }

    fn cat(&mut self) -> Result<Regex> {
        let mut r = self.postfix()?;
        while self.peek().is_some_and(Self::starts_atom) {
            let s = self.postfix()?;
            r = Regex::cat(r, s);
        }
        Ok(r)
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn identifier(&mut self) -> Result<Name> {
        let start = self.pos;
        if !self.chars.get(self.pos).is_some_and(|c| c.is_ascii_lowercase()) {
            return Err(self.error("expected a name"));
        }
        self.pos += 1;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let word: String = self.chars[start..self.pos].iter().collect();
        Name::parse(&word).map_err(|_| Error::parse(self.text, start, format!("malformed name `{word}`")))
    }

    fn atom(&mut self) -> Result<Regex> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of expression"));
        };
        match c {
            '0' | '1' | '?' => {
                self.pos += 1;
                Ok(match c {
                    '0' => Regex::Empty,
                    '1' => Regex::Eps,
                    _ => Regex::Unknown,
                })
            }
            '(' => {
                self.pos += 1;
                let r = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(r)
            }
            '<' => {
                self.pos += 1;
                let name = self.identifier()?;
                if self.chars.get(self.pos) == Some(&'>') {
                    self.pos += 1;
                    Ok(Regex::Lit(Letter::both(name)))
                } else {
                    Ok(Regex::Lit(Letter::alloc(name)))
                }
            }
            c if c.is_ascii_lowercase() => {
                let name = self.identifier()?;
                if self.chars.get(self.pos) == Some(&'>') {
                    self.pos += 1;
                    Ok(Regex::Lit(Letter::dealloc(name)))
                } else {
                    Ok(Regex::Lit(Letter::free(name)))
                }
            }
            other => Err(self.error(format!("unexpected `{other}`"))),
        }
    }
}

/// A finite or cofinite name set; `lc(0)` is the set of all names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoSet {
    /// Exactly these names.
    Finite(NameSet),
    /// All names except these.
    Cofinite(NameSet),
}

impl CoSet {
    /// All names.
    pub fn all() -> CoSet {
        CoSet::Cofinite(NameSet::new())
    }

    /// Membership.
    pub fn contains(&self, a: &Name) -> bool {
        match self {
            CoSet::Finite(s) => s.contains(a),
            CoSet::Cofinite(s) => !s.contains(a),
        }
    }

    /// Union.
    pub fn union(&self, other: &CoSet) -> CoSet {
        use CoSet::*;
        match (self, other) {
            (Finite(x), Finite(y)) => Finite(x | y),
            (Finite(x), Cofinite(y)) | (Cofinite(y), Finite(x)) => Cofinite(y - x),
            (Cofinite(x), Cofinite(y)) => Cofinite(x & y),
        }
    }

    /// Intersection.
    pub fn intersection(&self, other: &CoSet) -> CoSet {
        use CoSet::*;
        match (self, other) {
            (Finite(x), Finite(y)) => Finite(x & y),
            (Finite(x), Cofinite(y)) | (Cofinite(y), Finite(x)) => Finite(x - y),
            (Cofinite(x), Cofinite(y)) => Cofinite(x | y),
        }
    }

    /// Removes finitely many names.
    pub fn minus(&self, other: &NameSet) -> CoSet {
        match self {
            CoSet::Finite(x) => CoSet::Finite(x - other),
            CoSet::Cofinite(x) => CoSet::Cofinite(x | other),
        }
    }

    /// `finite \ self`.
    pub fn subtract_from(&self, finite: &NameSet) -> NameSet {
        finite.iter().filter(|a| !self.contains(a)).copied().collect()
    }
}

impl fmt::Display for CoSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoSet::Finite(s) => write!(f, "{{{}}}", join_names(s)),
            CoSet::Cofinite(s) if s.is_empty() => write!(f, "ALL"),
            CoSet::Cofinite(s) => write!(f, "ALL\\{{{}}}", join_names(s)),
        }
    }
}

impl Serialize for CoSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// `(rc(r), lo(r), lc(r))` of an expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegexProfile {
    /// Right-closed names.
    pub rc: NameSet,
    /// Left-open names.
    pub lo: NameSet,
    /// Left-closed names, possibly all names.
    pub lc: CoSet,
}

/// The recursive rc/lo/lc clauses.
pub fn profile_regex(r: &Regex) -> RegexProfile {
    match r {
        Regex::Empty => RegexProfile { rc: NameSet::new(), lo: NameSet::new(), lc: CoSet::all() },
        Regex::Eps | Regex::Unknown => {
            RegexProfile { rc: NameSet::new(), lo: NameSet::new(), lc: CoSet::Finite(NameSet::new()) }
        }
        Regex::Lit(l) => {
            let p = Profile::of_letter(*l);
            RegexProfile { rc: p.rc, lo: p.lo, lc: CoSet::Finite(p.lc) }
        }
        Regex::Cat(r1, r2) => {
            let p1 = profile_regex(r1);
            let p2 = profile_regex(r2);
            let rc = &p2.rc | &p2.lc.subtract_from(&p1.rc);
            let lo = &p1.lo | &p1.lc.subtract_from(&p2.lo);
            let lc = p1.lc.union(&p2.lc.minus(&p1.lo));
            RegexProfile { rc, lo, lc }
        }
        Regex::Sum(r1, r2) => {
            let p1 = profile_regex(r1);
            let p2 = profile_regex(r2);
            RegexProfile { rc: &p1.rc | &p2.rc, lo: &p1.lo | &p2.lo, lc: p1.lc.intersection(&p2.lc) }
        }
        Regex::Star(r3) => {
            let p = profile_regex(r3);
            RegexProfile { rc: p.rc, lo: p.lo, lc: CoSet::Finite(NameSet::new()) }
        }
    }
}

/// A failed side condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegdexViolation {
    /// `cat` or `star`.
    pub node: &'static str,
    /// The offending subexpression.
    pub subtree: String,
    /// The names in the clash.
    pub clash: NameSet,
}

/// Result of [`is_regdex`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegdexCheck {
    /// Whether all side conditions hold.
    pub ok: bool,
    /// Every violated side condition, outermost first.
    pub violations: Vec<RegdexViolation>,
}

/// Checks `rc(r1) ∩ lo(r2) = ∅` at every concatenation and `rc(r) ∩ lo(r) = ∅`
/// under every star.
pub fn is_regdex(r: &Regex) -> RegdexCheck {
    let mut violations = Vec::new();
    check_rec(r, &mut violations);
    RegdexCheck { ok: violations.is_empty(), violations }
}

fn check_rec(r: &Regex, out: &mut Vec<RegdexViolation>) {
    match r {
        Regex::Cat(r1, r2) => {
            let clash = &profile_regex(r1).rc & &profile_regex(r2).lo;
            if !clash.is_empty() {
                out.push(RegdexViolation { node: "cat", subtree: r.to_string(), clash });
            }
            check_rec(r1, out);
            check_rec(r2, out);
        }
        Regex::Sum(r1, r2) => {
            check_rec(r1, out);
            check_rec(r2, out);
        }
        Regex::Star(r3) => {
            let p = profile_regex(r3);
            let clash = &p.rc & &p.lo;
            if !clash.is_empty() {
                out.push(RegdexViolation { node: "star", subtree: r.to_string(), clash });
            }
            check_rec(r3, out);
        }
        _ => {}
    }
}

/// The classical language of `r` up to length `maxlen`, with every `?` read
/// as `<c>` for `c = r.unknown_name()`.
pub fn enumerate(r: &Regex, maxlen: usize) -> BTreeSet<Word> {
    let c = r.unknown_name();
    enumerate_rec(r, maxlen, c)
}

fn enumerate_rec(r: &Regex, maxlen: usize, c: Name) -> BTreeSet<Word> {
    let concat = |x: &BTreeSet<Word>, y: &BTreeSet<Word>| -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for u in x {
            for v in y {
                if u.len() + v.len() <= maxlen {
                    out.insert(u.concat(v));
                }
            }
        }
        out
    };
    match r {
        Regex::Empty => BTreeSet::new(),
        Regex::Eps => [Word::empty()].into(),
        Regex::Lit(l) if maxlen >= 1 => [Word(vec![*l])].into(),
        Regex::Unknown if maxlen >= 1 => [Word(vec![Letter::both(c)])].into(),
        Regex::Lit(_) | Regex::Unknown => BTreeSet::new(),
        Regex::Cat(r1, r2) => concat(&enumerate_rec(r1, maxlen, c), &enumerate_rec(r2, maxlen, c)),
        Regex::Sum(r1, r2) => &enumerate_rec(r1, maxlen, c) | &enumerate_rec(r2, maxlen, c),
        Regex::Star(r3) => {
            let body = enumerate_rec(r3, maxlen, c);
            let mut all: BTreeSet<Word> = [Word::empty()].into();
            let mut frontier = all.clone();
            while !frontier.is_empty() {
                let next: BTreeSet<Word> = concat(&frontier, &body).difference(&all).cloned().collect();
                all.extend(next.iter().cloned());
                frontier = next;
            }
            all
        }
    }
}

struct Thompson {
    transitions: BTreeSet<Transition>,
    count: usize,
    unknown: Name,
}

impl Thompson {
    fn state(&mut self) -> StateId {
        self.count += 1;
        self.count - 1
    }

    fn edge(&mut self, from: StateId, label: Label, to: StateId) {
        self.transitions.insert(Transition { from, label, to });
    }

    /// Returns the (initial, final) pair of the fragment.
    fn build(&mut self, r: &Regex) -> (StateId, StateId) {
        match r {
            Regex::Empty => (self.state(), self.state()),
            Regex::Eps => self.single(Label::Eps),
            Regex::Lit(l) => self.single(Label::Letter(*l)),
            Regex::Unknown => self.single(Label::Letter(Letter::both(self.unknown))),
            Regex::Cat(r1, r2) => {
                let (i1, f1) = self.build(r1);
                let (i2, f2) = self.build(r2);
                self.edge(f1, Label::Eps, i2);
                (i1, f2)
            }
            Regex::Sum(r1, r2) => {
                let (i1, f1) = self.build(r1);
                let (i2, f2) = self.build(r2);
                let (i, f) = (self.state(), self.state());
                self.edge(i, Label::Eps, i1);
                self.edge(i, Label::Eps, i2);
                self.edge(f1, Label::Eps, f);
                self.edge(f2, Label::Eps, f);
                (i, f)
            }
            Regex::Star(r3) => {
                // A fresh loop state that is both the entry and the exit.
                let (i3, f3) = self.build(r3);
                let q = self.state();
                self.edge(q, Label::Eps, i3);
                self.edge(f3, Label::Eps, q);
                (q, q)
            }
        }
    }

    fn single(&mut self, label: Label) -> (StateId, StateId) {
        let (i, f) = (self.state(), self.state());
        self.edge(i, label, f);
        (i, f)
    }
}

/// The ε-automaton of the Thompson-style construction, before ε-elimination.
pub fn regex_to_eps_nfa(r: &Regex) -> SAutomaton {
    let mut t = Thompson { transitions: BTreeSet::new(), count: 0, unknown: r.unknown_name() };
    let (i, f) = t.build(r);
    SAutomaton {
        pool: r.pool(),
        orbits: vec![Orbit { id: 0, arity: 0 }],
        states: (0..t.count).map(|id| State { id, orbit: 0, support: Vec::new() }).collect(),
        initial: i,
        finals: [f].into(),
        transitions: t.transitions,
        flags: Flags { eps_allowed: true, ..Flags::default() },
    }
}

/// Compiles a regular deallocation expression into an ε-free automaton with
/// the same literal language.
pub fn regex_to_dnfa(r: &Regex) -> Result<SAutomaton> {
    let check = is_regdex(r);
    if !check.ok {
        let v = &check.violations[0];
        return Err(Error::NotRegdex(format!(
            "{} node `{}` clashes on {{{}}}",
            v.node,
            v.subtree,
            join_names(&v.clash)
        )));
    }
    Ok(regex_to_eps_nfa(r).eliminate_epsilon())
}

fn simp_sum(r: Regex, s: Regex) -> Regex {
    match (&r, &s) {
        (Regex::Empty, _) => s,
        (_, Regex::Empty) => r,
        _ => Regex::sum(r, s),
    }
}

fn simp_cat(r: Regex, s: Regex) -> Regex {
    match (&r, &s) {
        (Regex::Empty, _) | (_, Regex::Empty) => Regex::Empty,
        (Regex::Eps, _) => s,
        (_, Regex::Eps) => r,
        _ => Regex::cat(r, s),
    }
}

/// An expression for the literal language of an automaton, by induction on
/// its transitions in ascending `(from, to, label)` order:
/// `R(k, x, Y) = R(k-1, x, Y) + R(k-1, x, q) (γ R(k-1, q′, q))* γ R(k-1, q′, Y)`
/// where the `k`-th transition is `q --γ--> q′`.
pub fn dnfa_to_regex(a: &SAutomaton) -> Regex {
    let a = a.eliminate_epsilon().trim();
    let mut transitions: Vec<Transition> = a.transitions.iter().copied().collect();
    transitions.sort_by_key(|t| (t.from, t.to, t.label));
    let mut memo: HashMap<(usize, StateId, Option<StateId>), Regex> = HashMap::new();
    let k = transitions.len();
    kleene(&a, &transitions, k, a.initial, None, &mut memo)
}

fn kleene(
    a: &SAutomaton,
    ts: &[Transition],
    k: usize,
    x: StateId,
    target: Option<StateId>,
    memo: &mut HashMap<(usize, StateId, Option<StateId>), Regex>,
) -> Regex {
    if let Some(r) = memo.get(&(k, x, target)) {
        return r.clone();
    }
    let r = if k == 0 {
        let hit = match target {
            None => a.finals.contains(&x),
            Some(q) => q == x,
        };
        if hit {
            Regex::Eps
        } else {
            Regex::Empty
        }
    } else {
        let t = ts[k - 1];
        let Label::Letter(letter) = t.label else {
            unreachable!("ε-free input")
        };
        let gamma = Regex::Lit(letter);
        let without = kleene(a, ts, k - 1, x, target, memo);
        let to_q = kleene(a, ts, k - 1, x, Some(t.from), memo);
        if to_q == Regex::Empty {
            without
        } else {
            let rest = kleene(a, ts, k - 1, t.to, target, memo);
            if rest == Regex::Empty {
                without
            } else {
                let back = kleene(a, ts, k - 1, t.to, Some(t.from), memo);
                let looped = match simp_cat(gamma.clone(), back) {
                    Regex::Empty => Regex::Eps,
                    body => Regex::star(body),
                };
                let through = simp_cat(simp_cat(simp_cat(to_q, looped), gamma), rest);
                simp_sum(without, through)
            }
        }
    };
    memo.insert((k, x, target), r.clone());
    r
}
