//! Bounded language semantics: α-closure, alphatic and data languages, the
//! local freshness semantics, and bounded language comparison.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::automaton::SAutomaton;
use crate::error::{Error, Result};
use crate::names::NameSet;
use crate::words::{alpha_variants, db, is_rns, join_names, DataWord, Word};

/// Which language of an automaton to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Accepted words as they are.
    Literal,
    /// One canonical representative per α-class of accepted words.
    Alphatic,
    /// Debracketings of the accepted words.
    Data,
    /// Debracketings of every α-variant of the accepted words (local freshness).
    Freshness,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Literal => "literal",
            Flavor::Alphatic => "alphatic",
            Flavor::Data => "data",
            Flavor::Freshness => "freshness",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(Flavor::Literal),
            "alphatic" => Ok(Flavor::Alphatic),
            "data" => Ok(Flavor::Data),
            "freshness" => Ok(Flavor::Freshness),
            other => Err(Error::parse(other, 0, "unknown language flavor")),
        }
    }
}

/// The members of a bounded language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Members {
    /// Words over the binder alphabet.
    Words(BTreeSet<Word>),
    /// Data words.
    Data(BTreeSet<DataWord>),
}

impl Members {
    /// Number of members.
    pub fn len(&self) -> usize {
        match self {
            Members::Words(s) => s.len(),
            Members::Data(s) => s.len(),
        }
    }

    /// Whether there are no members.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The members in order (shortest first), in word syntax, `ε` for the empty word.
    pub fn lines(&self) -> Vec<String> {
        match self {
            Members::Words(s) => s.iter().map(Word::display_or_epsilon).collect(),
            Members::Data(s) => s
                .iter()
                .map(|w| if w.is_empty() { "ε".to_string() } else { w.to_string() })
                .collect(),
        }
    }
}

/// A language truncated to words of bounded length over a pool.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedLanguage {
    /// Which language this is.
    pub flavor: Flavor,
    /// Names allowed in members.
    pub pool: NameSet,
    /// Maximum member length.
    pub maxlen: usize,
    /// The members.
    pub words: Members,
}

/// All words over `pool` of length at most `maxlen` that are α-equivalent to a
/// member of `language`. Words that are not right-non-shadowing are kept as
/// they are.
pub fn alpha_close(language: &BTreeSet<Word>, pool: &NameSet, maxlen: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for w in language.iter().filter(|w| w.len() <= maxlen) {
        if is_rns(w) {
            out.extend(alpha_variants(w, pool));
        } else {
            out.insert(w.clone());
        }
    }
    out
}

/// The least α-variant of `w` over `pool`, if any exists.
pub fn canonical(w: &Word, pool: &NameSet) -> Option<Word> {
    if !is_rns(w) {
        return Some(w.clone());
    }
    alpha_variants(w, pool).into_iter().next()
}

/// One canonical representative per α-class.
pub fn alpha_classes(language: &BTreeSet<Word>, pool: &NameSet) -> BTreeSet<Word> {
    language.iter().filter_map(|w| canonical(w, pool)).collect()
}

/// `db[L(A)]` up to `maxlen`.
pub fn data_language(a: &SAutomaton, maxlen: usize) -> BTreeSet<DataWord> {
    a.enum_literal(maxlen).iter().map(db).collect()
}

/// The local freshness semantics up to `maxlen`: the debracketings of all
/// α-variants (over the pool) of the accepted words.
pub fn local_freshness(a: &SAutomaton, maxlen: usize) -> BTreeSet<DataWord> {
    alpha_close(&a.enum_literal(maxlen), &a.pool, maxlen).iter().map(db).collect()
}

/// The bounded language of the chosen flavor.
pub fn bounded_language(a: &SAutomaton, flavor: Flavor, maxlen: usize) -> BoundedLanguage {
    let words = match flavor {
        Flavor::Literal => Members::Words(a.enum_literal(maxlen)),
        Flavor::Alphatic => Members::Words(alpha_classes(&a.enum_literal(maxlen), &a.pool)),
        Flavor::Data => Members::Data(data_language(a, maxlen)),
        Flavor::Freshness => Members::Data(local_freshness(a, maxlen)),
    };
    BoundedLanguage { flavor, pool: a.pool.clone(), maxlen, words }
}

/// Outcome of [`lang_compare`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompareStatus {
    /// Both languages coincide.
    Equal,
    /// Only the left language has extra members.
    LeftOnly,
    /// Only the right language has extra members.
    RightOnly,
    /// Both languages have extra members.
    Incomparable,
}

/// Result of a bounded comparison, with witnesses sorted shortest first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    /// Summary.
    pub status: CompareStatus,
    /// Members of the left language only.
    pub left_only: Vec<String>,
    /// Members of the right language only.
    pub right_only: Vec<String>,
}

fn differences<T: Ord + Clone>(x: &BTreeSet<T>, y: &BTreeSet<T>, show: impl Fn(&T) -> String) -> (Vec<String>, Vec<String>) {
    (x.difference(y).map(&show).collect(), y.difference(x).map(&show).collect())
}

/// Compares the bounded languages of two automata over the same pool.
pub fn lang_compare(a: &SAutomaton, b: &SAutomaton, flavor: Flavor, maxlen: usize) -> Result<Comparison> {
    if a.pool != b.pool {
        return Err(Error::precondition(format!(
            "pools differ: {{{}}} vs {{{}}}",
            join_names(&a.pool),
            join_names(&b.pool)
        )));
    }
    let la = bounded_language(a, flavor, maxlen).words;
    let lb = bounded_language(b, flavor, maxlen).words;
    let (left_only, right_only) = match (&la, &lb) {
        (Members::Words(x), Members::Words(y)) => differences(x, y, Word::display_or_epsilon),
        (Members::Data(x), Members::Data(y)) => {
            differences(x, y, |w| if w.is_empty() { "ε".to_string() } else { w.to_string() })
        }
        _ => unreachable!("same flavor"),
    };
    let status = match (left_only.is_empty(), right_only.is_empty()) {
        (true, true) => CompareStatus::Equal,
        (false, true) => CompareStatus::LeftOnly,
        (true, false) => CompareStatus::RightOnly,
        (false, false) => CompareStatus::Incomparable,
    };
    Ok(Comparison { status, left_only, right_only })
}
