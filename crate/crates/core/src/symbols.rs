//! Ordered alphabets and subsets of them.
//!
//! A [`SymbolSet`] is a fixed-width bit vector indexed by an [`Alphabet`].
//! It is used both for configurations of a Boolean P system and for states
//! of a Boolean network (a state is identified with the set of variables
//! that are 1).

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// An ordered list of distinct symbol names. Declaration order is the
/// canonical order used for bitstrings and printing.
#[derive(Debug, Clone, Default)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for name in names {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(Error::Invalid(format!("`{name}` is not a valid symbol name")));
            }
            if alphabet.index.contains_key(&name) {
                return Err(Error::Invalid(format!("symbol `{name}` declared twice")));
            }
            alphabet.index.insert(name.clone(), alphabet.names.len());
            alphabet.names.push(name);
        }
        Ok(alphabet)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.get(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Concatenation; fails if the two alphabets share a name.
    pub fn concat(&self, other: &Alphabet) -> Result<Alphabet> {
        Alphabet::new(self.names.iter().chain(other.names.iter()).cloned())
    }

    /// `self` followed by the symbols of `other` not already present.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut out = self.clone();
        for name in &other.names {
            if !out.index.contains_key(name) {
                out.index.insert(name.clone(), out.names.len());
                out.names.push(name.clone());
            }
        }
        out
    }

    pub fn empty_set(&self) -> SymbolSet {
        SymbolSet::empty(self.len())
    }

    pub fn full_set(&self) -> SymbolSet {
        SymbolSet::full(self.len())
    }

    /// Builds a set from symbol names.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<SymbolSet> {
        let mut set = self.empty_set();
        for name in names {
            set.insert(self.lookup(name.as_ref())?);
        }
        Ok(set)
    }

    /// Index of every symbol of `self` inside `target`.
    pub fn embedding(&self, target: &Alphabet) -> Result<Vec<usize>> {
        self.names.iter().map(|n| target.lookup(n)).collect()
    }

    /// Renders a set as `{a,b}` using this alphabet's names.
    pub fn format_set(&self, set: &SymbolSet) -> String {
        let names: Vec<&str> = set.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Parses a bitstring in alphabet order.
    pub fn parse_bits(&self, bits: &str) -> Result<SymbolSet> {
        SymbolSet::from_bitstring(bits).and_then(|s| {
            if s.width() != self.len() {
                Err(Error::Invalid(format!(
                    "state `{bits}` has {} bits, expected {}",
                    s.width(),
                    self.len()
                )))
            } else {
                Ok(s)
            }
        })
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    }
}

/// Subset of a finite ordered alphabet, stored as a bit vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolSet {
    width: usize,
    words: Vec<u64>,
}

impl SymbolSet {
    pub fn empty(width: usize) -> Self {
        SymbolSet {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for i in 0..width {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, indices: I) -> Self {
        let mut s = Self::empty(width);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Set whose members are the 1-bits of `mask` (bit `i` = symbol `i`).
    /// Only meaningful for widths up to 64.
    pub fn from_mask(width: usize, mask: u64) -> Self {
        debug_assert!(width <= 64);
        let mut s = Self::empty(width);
        if width > 0 {
            s.words[0] = if width == 64 { mask } else { mask & ((1u64 << width) - 1) };
        }
        s
    }

    /// Inverse of [`SymbolSet::from_mask`] for widths up to 64.
    pub fn to_mask(&self) -> u64 {
        debug_assert!(self.width <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    /// Every subset of a `width`-symbol alphabet, in increasing mask order.
    pub fn all_subsets(width: usize) -> impl Iterator<Item = SymbolSet> {
        assert!(width < 64, "cannot enumerate 2^{width} subsets");
        (0..(1u64 << width)).map(move |m| SymbolSet::from_mask(width, m))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.width, "symbol index {i} out of range {}", self.width);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.width, "symbol index {i} out of range {}", self.width);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if value {
            self.insert(i)
        } else {
            self.remove(i)
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.width && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn check_width(&self, other: &SymbolSet) {
        assert_eq!(self.width, other.width, "symbol sets over different alphabets");
    }

    pub fn is_subset(&self, other: &SymbolSet) -> bool {
        self.check_width(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &SymbolSet) -> bool {
        self.check_width(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &SymbolSet) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &SymbolSet) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersect_with(&mut self, other: &SymbolSet) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &SymbolSet) -> SymbolSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &SymbolSet) -> SymbolSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn intersection(&self, other: &SymbolSet) -> SymbolSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    /// Member indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width).filter(move |&i| self.contains(i))
    }

    /// Re-indexes into a wider (or reordered) alphabet: symbol `i` becomes
    /// `map[i]` in a set of width `width`.
    pub fn embed(&self, map: &[usize], width: usize) -> SymbolSet {
        SymbolSet::from_indices(width, self.iter().map(|i| map[i]))
    }

    /// Projection onto the symbols `map` (inverse of [`SymbolSet::embed`]):
    /// bit `k` of the result is bit `map[k]` of `self`.
    pub fn project(&self, map: &[usize]) -> SymbolSet {
        SymbolSet::from_indices(
            map.len(),
            map.iter().enumerate().filter(|(_, &i)| self.contains(i)).map(|(k, _)| k),
        )
    }

    /// Bits in index order, `1` for members.
    pub fn to_bitstring(&self) -> String {
        (0..self.width)
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bitstring(bits: &str) -> Result<SymbolSet> {
        let mut s = SymbolSet::empty(bits.len());
        for (i, c) in bits.chars().enumerate() {
            match c {
                '0' => {}
                '1' => s.insert(i),
                _ => return Err(Error::Invalid(format!("`{bits}` is not a bitstring"))),
            }
        }
        Ok(s)
    }
}

impl fmt::Debug for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolSet({})", self.to_bitstring())
    }
}

impl fmt::Display for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}
