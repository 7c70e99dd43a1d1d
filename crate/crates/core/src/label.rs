//! Interned event labels.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::fmt;

/// An interned event symbol.
///
/// Identifiers are assigned by an [`Alphabet`] in lexicographic order of the
/// symbol strings, so comparing two labels compares their string forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(u32);

impl Label {
    pub const fn new(id: u32) -> Self {
        Label(id)
    }

    pub const fn id(self) -> u32 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

/// A sorted, immutable symbol table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Label>,
}

impl Alphabet {
    /// Builds an alphabet from any collection of symbols. Duplicates are
    /// collapsed and identifiers follow the sorted order of the strings.
    pub fn from_symbols<I, S>(symbols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let sorted: BTreeSet<String> = symbols.into_iter().map(|s| s.as_ref().to_owned()).collect();
        let names: Vec<String> = sorted.into_iter().collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), Label(i as u32)))
            .collect();
        Alphabet { names, index }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn label(&self, symbol: &str) -> Option<Label> {
        self.index.get(symbol).copied()
    }

    /// The symbol behind `label`. Panics if the label was not issued by this
    /// alphabet.
    pub fn name(&self, label: Label) -> &str {
        &self.names[label.index()]
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        (0..self.names.len() as u32).map(Label)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
