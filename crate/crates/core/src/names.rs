//! Atoms, finite permutations and the fresh-name supply.
//!
//! A [`Name`] is an interned integer. The textual syntax is a bijection with
//! the integers: a lowercase letter optionally followed by a decimal suffix
//! without leading zeros. `a`..`z` are ids `0..=25`, `a1`..`z1` are
//! `26..=51`, and so on. Because the mapping is fixed, identifiers round-trip
//! between sessions and files without a symbol table, and every canonical
//! choice (fresh names, enumeration order) follows the integer order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An atom drawn from a countably infinite pool, ordered by its id.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(u32);

/// Finite set of names, in ascending id order.
pub type NameSet = BTreeSet<Name>;

impl Name {
    /// The name with the given id.
    pub const fn new(id: u32) -> Self {
        Name(id)
    }

    /// The integer id of this name.
    pub const fn id(self) -> u32 {
        self.0
    }

    /// Parses a name identifier such as `a`, `z` or `x1`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let bad = |msg: &str| Error::parse(text, 0, msg);
        let mut chars = text.chars();
        let first = chars.next().ok_or_else(|| bad("empty name"))?;
        if !first.is_ascii_lowercase() {
            return Err(bad("a name starts with a lowercase letter"));
        }
        let letter = u32::from(first as u8 - b'a');
        let digits = chars.as_str();
        if digits.is_empty() {
            return Ok(Name(letter));
        }
        if !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
            return Err(bad("a name suffix is a decimal number without leading zeros"));
        }
        let round: u32 = digits.parse().map_err(|_| bad("name suffix out of range"))?;
        round
            .checked_mul(26)
            .and_then(|r| r.checked_add(letter))
            .map(Name)
            .ok_or_else(|| bad("name suffix out of range"))
    }

    /// The canonical identifier of this name.
    pub fn label(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = char::from(b'a' + (self.0 % 26) as u8);
        let round = self.0 / 26;
        if round == 0 {
            write!(f, "{letter}")
        } else {
            write!(f, "{letter}{round}")
        }
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Name {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Name::parse(s)
    }
}

impl Serialize for Name {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Name {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Name::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Parses a comma- or whitespace-separated list of names into a set.
pub fn parse_name_set(text: &str) -> Result<NameSet, Error> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(Name::parse)
        .collect()
}

/// The first `n` names `a, b, c, …`.
pub fn first_names(n: usize) -> NameSet {
    (0..n as u32).map(Name::new).collect()
}

/// The name with the smallest id not in `avoid`.
pub fn fresh(avoid: &NameSet) -> Name {
    let mut candidate = 0u32;
    for name in avoid {
        if name.0 > candidate {
            break;
        }
        if name.0 == candidate {
            candidate += 1;
        }
    }
    Name(candidate)
}

/// The `n` smallest names not in `avoid`, ascending.
pub fn fresh_many(avoid: &NameSet, n: usize) -> Vec<Name> {
    let mut avoid = avoid.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let name = fresh(&avoid);
        avoid.insert(name);
        out.push(name);
    }
    out
}

/// A finitely supported bijection on names; fixed points are never stored.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    map: BTreeMap<Name, Name>,
}

impl Permutation {
    /// The identity permutation.
    pub fn identity() -> Self {
        Self::default()
    }

    /// The transposition `(a b)`; `(a a)` is the identity.
    pub fn swap(a: Name, b: Name) -> Self {
        let mut map = BTreeMap::new();
        if a != b {
            map.insert(a, b);
            map.insert(b, a);
        }
        Permutation { map }
    }

    /// Builds a permutation from `(from, to)` pairs, which must describe a
    /// bijection of a finite set onto itself.
    pub fn from_pairs<I: IntoIterator<Item = (Name, Name)>>(pairs: I) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        for (from, to) in pairs {
            if let Some(prev) = map.insert(from, to) {
                if prev != to {
                    return Err(Error::precondition(format!(
                        "{from} is mapped to both {prev} and {to}"
                    )));
                }
            }
        }
        let domain: NameSet = map.keys().copied().collect();
        let range: NameSet = map.values().copied().collect();
        if domain != range || range.len() != map.len() {
            return Err(Error::precondition(
                "pairs do not describe a bijection of a finite set",
            ));
        }
        map.retain(|k, v| k != v);
        Ok(Permutation { map })
    }

    /// `π(a)`.
    pub fn apply(&self, a: Name) -> Name {
        self.map.get(&a).copied().unwrap_or(a)
    }

    /// `self ∘ other`, i.e. first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let mut map = BTreeMap::new();
        for &a in self.map.keys().chain(other.map.keys()) {
            let image = self.apply(other.apply(a));
            if image != a {
                map.insert(a, image);
            }
        }
        Permutation { map }
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Permutation {
        Permutation {
            map: self.map.iter().map(|(&k, &v)| (v, k)).collect(),
        }
    }

    /// `{a | π(a) ≠ a}`.
    pub fn support(&self) -> NameSet {
        self.map.keys().copied().collect()
    }

    /// Whether this is the identity.
    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Whether every name of `pool` is mapped into `pool` (equivalently, the
    /// support lies inside `pool`).
    pub fn preserves(&self, pool: &NameSet) -> bool {
        self.map.keys().all(|a| pool.contains(a))
    }

    /// The non-trivial `(from, to)` pairs in ascending order.
    pub fn pairs(&self) -> impl Iterator<Item = (Name, Name)> + '_ {
        self.map.iter().map(|(&k, &v)| (k, v))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.map.is_empty() {
            return write!(f, "id");
        }
        // Cycle notation, each cycle starting at its smallest name.
        let mut seen = NameSet::new();
        for &start in self.map.keys() {
            if seen.contains(&start) {
                continue;
            }
            write!(f, "(")?;
            let mut cur = start;
            let mut first = true;
            loop {
                seen.insert(cur);
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{cur}")?;
                first = false;
                cur = self.apply(cur);
                if cur == start {
                    break;
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// The transposition `(a b)`.
pub fn swap(a: Name, b: Name) -> Permutation {
    Permutation::swap(a, b)
}

/// Every bijection of `pool` onto itself, identity first.
pub fn all_permutations(pool: &NameSet) -> Vec<Permutation> {
    use itertools::Itertools;
    let names: Vec<Name> = pool.iter().copied().collect();
    names
        .iter()
        .copied()
        .permutations(names.len())
        .map(|image| {
            Permutation::from_pairs(names.iter().copied().zip(image))
                .expect("a reordering of a set is a bijection")
        })
        .collect()
}

/// Transpositions `(p₀ pᵢ)` that generate the symmetric group on `pool`.
pub fn generating_transpositions(pool: &NameSet) -> Vec<Permutation> {
    let mut it = pool.iter().copied();
    match it.next() {
        None => Vec::new(),
        Some(first) => it.map(|other| Permutation::swap(first, other)).collect(),
    }
}

/// Values carrying a pointwise permutation action.
pub trait Nominal: Sized {
    /// `π · self`.
    fn act(&self, pi: &Permutation) -> Self;
}

impl Nominal for Name {
    fn act(&self, pi: &Permutation) -> Self {
        pi.apply(*self)
    }
}

impl<T: Nominal> Nominal for Option<T> {
    fn act(&self, pi: &Permutation) -> Self {
        self.as_ref().map(|x| x.act(pi))
    }
}

impl<T: Nominal> Nominal for Vec<T> {
    fn act(&self, pi: &Permutation) -> Self {
        self.iter().map(|x| x.act(pi)).collect()
    }
}

impl<T: Nominal + Ord> Nominal for BTreeSet<T> {
    fn act(&self, pi: &Permutation) -> Self {
        self.iter().map(|x| x.act(pi)).collect()
    }
}
