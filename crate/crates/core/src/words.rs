//! The binder alphabet, words, the rc/lo/lc classification, right-non-shadowing,
//! α-equivalence, discipline and debracketing.
//!
//! Every name `a` gives four letters: free `a`, allocating `<a`, deallocating
//! `a>` and allocate-and-deallocate `<a>`. For a word `w`:
//!
//! * `lo(w)` (left-open) holds the names whose first occurrence carries no binder,
//! * `lc(w)` (left-closed) holds the names whose first occurrence is `<a` or `<a>`,
//! * `rc(w)` (right-closed) holds the names whose last occurrence is `a>` or `<a>`.
//!
//! A word is right-non-shadowing (rns) if no prefix closes a name which the
//! remaining suffix still uses as left-open.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::names::{fresh, Name, NameSet, Nominal, Permutation};

/// Which of the four letter forms a letter takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LetterKind {
    /// Plain use `a`.
    Free,
    /// Allocation `<a`.
    Alloc,
    /// Deallocation `a>`.
    Dealloc,
    /// Allocation immediately followed by deallocation `<a>`.
    Both,
}

impl LetterKind {
    /// All kinds in canonical order.
    pub const ALL: [LetterKind; 4] = [
        LetterKind::Free,
        LetterKind::Alloc,
        LetterKind::Dealloc,
        LetterKind::Both,
    ];

    /// Whether the letter binds its name (`<a` or `<a>`).
    pub fn is_binder(self) -> bool {
        matches!(self, LetterKind::Alloc | LetterKind::Both)
    }

    /// Whether the letter closes its name (`a>` or `<a>`).
    pub fn is_closing(self) -> bool {
        matches!(self, LetterKind::Dealloc | LetterKind::Both)
    }
}

/// A letter of the binder alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    /// The letter form.
    pub kind: LetterKind,
    /// The underlying name.
    pub name: Name,
}

impl Letter {
    /// Builds a letter.
    pub const fn new(kind: LetterKind, name: Name) -> Self {
        Letter { kind, name }
    }
    /// `a`.
    pub const fn free(name: Name) -> Self {
        Letter::new(LetterKind::Free, name)
    }
    /// `<a`.
    pub const fn alloc(name: Name) -> Self {
        Letter::new(LetterKind::Alloc, name)
    }
    /// `a>`.
    pub const fn dealloc(name: Name) -> Self {
        Letter::new(LetterKind::Dealloc, name)
    }
    /// `<a>`.
    pub const fn both(name: Name) -> Self {
        Letter::new(LetterKind::Both, name)
    }

    /// The same letter form over another name.
    pub fn with_name(self, name: Name) -> Self {
        Letter { name, ..self }
    }

    /// Parses a single token `a`, `<a`, `a>` or `<a>`.
    pub fn parse(token: &str) -> Result<Self> {
        let (opens, rest) = match token.strip_prefix('<') {
            Some(rest) => (true, rest),
            None => (false, token),
        };
        let (closes, core) = match rest.strip_suffix('>') {
            Some(core) => (true, core),
            None => (false, rest),
        };
        let name = Name::parse(core)
            .map_err(|_| Error::parse(token, 0, format!("malformed letter `{token}`")))?;
        let kind = match (opens, closes) {
            (false, false) => LetterKind::Free,
            (true, false) => LetterKind::Alloc,
            (false, true) => LetterKind::Dealloc,
            (true, true) => LetterKind::Both,
        };
        Ok(Letter { kind, name })
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.name, self.kind).cmp(&(other.name, other.kind))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LetterKind::Free => write!(f, "{}", self.name),
            LetterKind::Alloc => write!(f, "<{}", self.name),
            LetterKind::Dealloc => write!(f, "{}>", self.name),
            LetterKind::Both => write!(f, "<{}>", self.name),
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Nominal for Letter {
    fn act(&self, pi: &Permutation) -> Self {
        self.with_name(pi.apply(self.name))
    }
}

/// A finite word over the binder alphabet.
///
/// Words are ordered by length first, then lexicographically, so sorted sets
/// list shortest words first.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    /// The empty word ε.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses whitespace-separated letter tokens; the empty string and `ε`
    /// denote the empty word.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for piece in text.split_inclusive(char::is_whitespace) {
            let token = piece.trim_end();
            if !token.is_empty() && token != "ε" {
                let letter = Letter::parse(token).map_err(|_| {
                    Error::parse(text, offset, format!("malformed letter `{token}`"))
                })?;
                letters.push(letter);
            }
            offset += piece.chars().count();
        }
        Ok(Word(letters))
    }

    /// The letters of this word.
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether this is ε.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self · γ`.
    pub fn push(&self, letter: Letter) -> Word {
        let mut letters = self.0.clone();
        letters.push(letter);
        Word(letters)
    }

    /// All names occurring in the word.
    pub fn names(&self) -> NameSet {
        names_of(&self.0)
    }

    /// The word's text, with `ε` for the empty word.
    pub fn display_or_epsilon(&self) -> String {
        if self.is_empty() {
            "ε".to_string()
        } else {
            self.to_string()
        }
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self)
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl Nominal for Word {
    fn act(&self, pi: &Permutation) -> Self {
        Word(self.0.iter().map(|l| l.act(pi)).collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

/// A data word: a plain sequence of names, ordered length-first.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct DataWord(pub Vec<Name>);

impl DataWord {
    /// Parses whitespace-separated names.
    pub fn parse(text: &str) -> Result<Self> {
        text.split_whitespace()
            .filter(|t| *t != "ε")
            .map(Name::parse)
            .collect::<Result<Vec<_>>>()
            .map(DataWord)
    }

    /// Number of names.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether the data word is empty.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl PartialOrd for DataWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DataWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl fmt::Display for DataWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, name) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{name}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DataWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self)
    }
}

impl Serialize for DataWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl Nominal for DataWord {
    fn act(&self, pi: &Permutation) -> Self {
        DataWord(self.0.act(pi))
    }
}

/// The triple `(rc, lo, lc)` of a word (or of a regular expression).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Profile {
    /// Right-closed names.
    pub rc: NameSet,
    /// Left-open names.
    pub lo: NameSet,
    /// Left-closed names.
    pub lc: NameSet,
}

impl Profile {
    /// The profile of a single letter.
    pub fn of_letter(letter: Letter) -> Profile {
        let one: NameSet = [letter.name].into();
        match letter.kind {
            LetterKind::Free => Profile { lo: one, ..Profile::default() },
            LetterKind::Alloc => Profile { lc: one, ..Profile::default() },
            LetterKind::Dealloc => Profile { rc: one.clone(), lo: one, ..Profile::default() },
            LetterKind::Both => Profile { rc: one.clone(), lc: one, ..Profile::default() },
        }
    }

    /// The profile of `uv` from the profiles of `u` (self) and `v`.
    pub fn concat(&self, v: &Profile) -> Profile {
        let rc = self
            .rc
            .iter()
            .filter(|a| !v.lc.contains(a) && !v.lo.contains(a))
            .chain(v.rc.iter())
            .copied()
            .collect();
        let lc = self
            .lc
            .iter()
            .chain(v.lc.iter().filter(|a| !self.lo.contains(a)))
            .copied()
            .collect();
        let lo = self
            .lo
            .iter()
            .chain(v.lo.iter().filter(|a| !self.lc.contains(a)))
            .copied()
            .collect();
        Profile { rc, lo, lc }
    }
}

impl Nominal for Profile {
    fn act(&self, pi: &Permutation) -> Self {
        Profile {
            rc: self.rc.act(pi),
            lo: self.lo.act(pi),
            lc: self.lc.act(pi),
        }
    }
}

pub(crate) fn names_of(letters: &[Letter]) -> NameSet {
    letters.iter().map(|l| l.name).collect()
}

/// Prepends one letter to a word profile, following the right-to-left recursion.
fn prepend(letter: Letter, p: &mut Profile) {
    let a = letter.name;
    let seen = p.lc.contains(&a) || p.lo.contains(&a);
    if letter.kind.is_closing() && !seen {
        p.rc.insert(a);
    }
    if letter.kind.is_binder() {
        p.lo.remove(&a);
        p.lc.insert(a);
    } else {
        p.lo.insert(a);
        p.lc.remove(&a);
    }
}

/// `lo` of a slice of letters.
pub(crate) fn lo_of(letters: &[Letter]) -> NameSet {
    let mut p = Profile::default();
    for &l in letters.iter().rev() {
        prepend(l, &mut p);
    }
    p.lo
}

/// `(rc(w), lo(w), lc(w))` by the right-to-left recursion over the letters.
pub fn classify(w: &Word) -> Profile {
    let mut p = Profile::default();
    for &l in w.0.iter().rev() {
        prepend(l, &mut p);
    }
    p
}

/// `lo` of every suffix: entry `i` is `lo(w[i..])`, entry `len` is ∅.
fn suffix_lo(letters: &[Letter]) -> Vec<NameSet> {
    let mut out = vec![NameSet::new(); letters.len() + 1];
    let mut p = Profile::default();
    for i in (0..letters.len()).rev() {
        prepend(letters[i], &mut p);
        out[i] = p.lo.clone();
    }
    out
}

/// Whether `rc(u) ∩ lo(v) = ∅` for every split `w = uv`.
///
/// A split shadows exactly when two consecutive occurrences of a name are a
/// closing letter followed by one without the binder, so one backward scan per
/// letter suffices.
pub fn is_rns(w: &Word) -> bool {
    rns_letters(&w.0)
}

pub(crate) fn rns_letters(letters: &[Letter]) -> bool {
    letters.iter().enumerate().all(|(j, l)| {
        l.kind.is_binder()
            || letters[..j]
                .iter()
                .rev()
                .find(|x| x.name == l.name)
                .is_none_or(|x| !x.kind.is_closing())
    })
}

/// [`is_rns`] evaluated literally: every split, with `rc` of the prefix and
/// `lo` of the suffix.
pub fn is_rns_by_splits(w: &Word) -> bool {
    let letters = &w.0;
    let lo = suffix_lo(letters);
    let mut prefix = Profile::default();
    for (i, &l) in letters.iter().enumerate() {
        prefix = prefix.concat(&Profile::of_letter(l));
        if prefix.rc.iter().any(|a| lo[i + 1].contains(a)) {
            return false;
        }
    }
    true
}

/// Decides α-equivalence of two right-non-shadowing words.
///
/// Free and deallocating heads must agree; allocating heads `<a w′`, `<b v′`
/// are compared by swapping both bound names with a common fresh name; `<a>`
/// heads compare their tails, both head names being absent from the tails'
/// left-open names.
pub fn alpha_eq(w: &Word, v: &Word) -> Result<bool> {
    for word in [w, v] {
        if !is_rns(word) {
            return Err(Error::NotRns(word.to_string()));
        }
    }
    Ok(alpha_eq_rns(&w.0, &v.0))
}

pub(crate) fn alpha_eq_rns(w: &[Letter], v: &[Letter]) -> bool {
    if w.len() != v.len() {
        return false;
    }
    // Kinds and rigid names are invariant; reject cheaply before any renaming.
    if w.iter().zip(v).any(|(x, y)| x.kind != y.kind) {
        return false;
    }
    if w == v {
        return true;
    }
    let mut avoid = names_of(w);
    avoid.extend(names_of(v));
    let mut w = w.to_vec();
    let mut v = v.to_vec();
    for i in 0..w.len() {
        let (x, y) = (w[i], v[i]);
        match x.kind {
            LetterKind::Free | LetterKind::Dealloc => {
                if x.name != y.name {
                    return false;
                }
            }
            LetterKind::Both => {
                if lo_of(&w[i + 1..]).contains(&x.name) || lo_of(&v[i + 1..]).contains(&y.name) {
                    return false;
                }
            }
            LetterKind::Alloc => {
                if x.name != y.name {
                    let c = fresh(&avoid);
                    avoid.insert(c);
                    let pw = Permutation::swap(x.name, c);
                    let pv = Permutation::swap(y.name, c);
                    for l in &mut w[i + 1..] {
                        *l = l.act(&pw);
                    }
                    for l in &mut v[i + 1..] {
                        *l = l.act(&pv);
                    }
                }
            }
        }
    }
    true
}

/// Independent α-equivalence oracle: closes `{w}` under single applications of
/// the renaming rules instantiated over `pool` and tests membership of `v`.
///
/// The pool must contain all names of both words plus at least one spare
/// name; swapping two bound names through a third needs two spare names, so
/// exhaustive comparisons should provide two.
pub fn alpha_eq_oracle(w: &Word, v: &Word, pool: &NameSet) -> Result<bool> {
    let mut names = w.names();
    names.extend(v.names());
    if let Some(outside) = names.iter().find(|a| !pool.contains(a)) {
        return Err(Error::NameOutsidePool {
            name: outside.to_string(),
            pool: join_names(pool),
        });
    }
    if pool.len() < names.len() + 1 {
        return Err(Error::PoolTooSmall(format!(
            "the oracle needs {} names, the pool has {}",
            names.len() + 1,
            pool.len()
        )));
    }
    for word in [w, v] {
        if !is_rns(word) {
            return Err(Error::NotRns(word.to_string()));
        }
    }
    Ok(rule_closure(w, pool).contains(v))
}

/// All words reachable from `w` by single rule applications over `pool`.
pub fn rule_closure(w: &Word, pool: &NameSet) -> HashSet<Word> {
    let mut seen: HashSet<Word> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(cur) = queue.pop_front() {
        for next in single_steps(&cur, pool) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Words obtained from `w` by one renaming step inside a context.
fn single_steps(w: &Word, pool: &NameSet) -> Vec<Word> {
    let letters = &w.0;
    let mut out = Vec::new();
    for (i, letter) in letters.iter().enumerate() {
        let suffix = &letters[i + 1..];
        match letter.kind {
            LetterKind::Alloc => {
                // <a x ≡ <b (a b)·x when b does not occur in x.
                let occurring = names_of(suffix);
                for &b in pool {
                    if b == letter.name || occurring.contains(&b) {
                        continue;
                    }
                    let pi = Permutation::swap(letter.name, b);
                    let mut next = letters[..i].to_vec();
                    next.push(Letter::alloc(b));
                    next.extend(suffix.iter().map(|l| l.act(&pi)));
                    if rns_letters(&next) {
                        out.push(Word(next));
                    }
                }
            }
            LetterKind::Both => {
                // <a> x ≡ <b> x when neither name is left-open in x.
                let lo = lo_of(suffix);
                if lo.contains(&letter.name) {
                    continue;
                }
                for &b in pool {
                    if b == letter.name || lo.contains(&b) {
                        continue;
                    }
                    let mut next = letters.clone();
                    next[i] = Letter::both(b);
                    if rns_letters(&next) {
                        out.push(Word(next));
                    }
                }
            }
            LetterKind::Free | LetterKind::Dealloc => {}
        }
    }
    out
}

/// All α-variants of the rns word `w` whose names lie in `pool`.
///
/// The recursion follows the abstraction characterisation: `<a w′` is
/// equivalent to `<b v` exactly when `b = a` and `v ≡ w′`, or `b` is not
/// left-open in `w′` and `v ≡ (a b)·w′`.
pub fn alpha_variants(w: &Word, pool: &NameSet) -> BTreeSet<Word> {
    variants_rec(&w.0, pool)
        .into_iter()
        .filter(|v| rns_letters(v))
        .map(Word)
        .collect()
}

fn variants_rec(w: &[Letter], pool: &NameSet) -> Vec<Vec<Letter>> {
    let Some((&head, rest)) = w.split_first() else {
        return vec![Vec::new()];
    };
    let prefixed = |letter: Letter, tails: Vec<Vec<Letter>>| {
        tails.into_iter().map(move |t| {
            let mut v = Vec::with_capacity(t.len() + 1);
            v.push(letter);
            v.extend(t);
            v
        })
    };
    match head.kind {
        LetterKind::Free | LetterKind::Dealloc => {
            if !pool.contains(&head.name) {
                return Vec::new();
            }
            prefixed(head, variants_rec(rest, pool)).collect()
        }
        LetterKind::Both => {
            let lo = lo_of(rest);
            let tails = variants_rec(rest, pool);
            let mut out = Vec::new();
            for &b in pool.iter().filter(|b| !lo.contains(b)) {
                out.extend(prefixed(Letter::both(b), tails.clone()));
            }
            out
        }
        LetterKind::Alloc => {
            let lo = lo_of(rest);
            let mut out = Vec::new();
            for &b in pool {
                if b == head.name {
                    out.extend(prefixed(head, variants_rec(rest, pool)));
                } else if !lo.contains(&b) {
                    let pi = Permutation::swap(head.name, b);
                    let renamed: Vec<Letter> = rest.iter().map(|l| l.act(&pi)).collect();
                    out.extend(prefixed(Letter::alloc(b), variants_rec(&renamed, pool)));
                }
            }
            out
        }
    }
}

/// The debracketing `db(w)`: every letter replaced by its name.
pub fn db(w: &Word) -> DataWord {
    DataWord(w.0.iter().map(|l| l.name).collect())
}

/// The disciplined word `disc(w)`: every binder or use whose name is not
/// left-open in the rest of the word also deallocates it.
pub fn disc(w: &Word) -> Word {
    let letters = &w.0;
    let lo = suffix_lo(letters);
    let mut out = Vec::with_capacity(letters.len());
    for (i, &l) in letters.iter().enumerate() {
        let later = lo[i + 1].contains(&l.name);
        let kind = match l.kind {
            LetterKind::Free if !later => LetterKind::Dealloc,
            LetterKind::Alloc if !later => LetterKind::Both,
            k => k,
        };
        out.push(Letter::new(kind, l.name));
    }
    Word(out)
}

/// Whether for every split `w = uv` and every `a ∈ lc(u) ∪ lo(u)`:
/// `a ∈ rc(u)`, or `a ∈ rc(v)` and `a ∉ lc(v)`.
pub fn is_disciplined(w: &Word) -> bool {
    let letters = &w.0;
    let n = letters.len();
    let mut suffixes = vec![Profile::default(); n + 1];
    for i in (0..n).rev() {
        let mut p = suffixes[i + 1].clone();
        prepend(letters[i], &mut p);
        suffixes[i] = p;
    }
    let mut prefix = Profile::default();
    for split in 0..=n {
        if split > 0 {
            prefix = prefix.concat(&Profile::of_letter(letters[split - 1]));
        }
        let v = &suffixes[split];
        let ok = prefix
            .lc
            .iter()
            .chain(prefix.lo.iter())
            .all(|a| prefix.rc.contains(a) || (v.rc.contains(a) && !v.lc.contains(a)));
        if !ok {
            return false;
        }
    }
    true
}

/// Every word of length `len` over the letters of `pool`.
pub fn all_words(pool: &NameSet, len: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = pool
        .iter()
        .flat_map(|&a| LetterKind::ALL.iter().map(move |&k| Letter::new(k, a)))
        .collect();
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(words.len() * alphabet.len());
        for w in &words {
            for &l in &alphabet {
                let mut v: Vec<Letter> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        words = next;
    }
    words.into_iter().map(Word).collect()
}

pub(crate) fn join_names(set: &NameSet) -> String {
    set.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}
