//! Finite semigroups with zero and the structure theory the invariants use.

mod green;
mod iso;
mod local;
mod oracle;
mod predicates;
mod sync;
mod transition;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::presentation::{Letter, Word};

pub use green::{green_structure, DClass, GreenStructure, GroupTable};
pub use iso::{
    enumerate_table_isomorphisms, letter_isomorphism, semigroup_isomorphism, table_isomorphism,
    DEFAULT_BUDGET,
};
pub use local::{local_monoid, local_monoids_and_lu, power_subsemigroup, LocalMonoid, LocalStructure};
pub use oracle::{context_oracle, ContextVerdict};
pub use predicates::{
    has_irreducible_language, is_aperiodic, is_zero_disjunctive, semigroup_predicates, Predicates,
};
pub use sync::{is_synchronizing, synchronizing_and_magic, SyncStructure};
pub use transition::{graph_transition_semigroup, transition_semigroup};

/// Finite semigroup with a zero, stored as its full multiplication table.
///
/// Elements are `0..len()`. When the semigroup comes from a shift it also
/// carries a letter map and, per element, its shortlex-least witness word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSemigroupZ {
    table: Vec<Vec<usize>>,
    zero: usize,
    names: Vec<String>,
    witnesses: Vec<Option<Word>>,
    alphabet: Vec<String>,
    letter_map: Vec<usize>,
}

impl FinSemigroupZ {
    /// Builds a semigroup from a raw table, checking associativity and the
    /// zero laws.
    pub fn from_table(names: Vec<String>, zero: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || zero >= n {
            return Err(Error::InvalidTable("zero must be an element".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidTable("table must be square over the elements".into()));
        }
        let s = FinSemigroupZ {
            table,
            zero,
            names,
            witnesses: vec![None; n],
            alphabet: Vec::new(),
            letter_map: Vec::new(),
        };
        s.check_laws().map_err(Error::InvalidTable)?;
        Ok(s)
    }

    /// Attaches a generating letter map and recomputes witnesses.
    pub fn with_letters(mut self, alphabet: Vec<String>, letter_map: Vec<usize>) -> Self {
        assert_eq!(alphabet.len(), letter_map.len());
        self.alphabet = alphabet;
        self.letter_map = letter_map;
        self.witnesses = self.shortlex_witnesses();
        self
    }

    pub(crate) fn from_parts(
        table: Vec<Vec<usize>>,
        zero: usize,
        names: Vec<String>,
        witnesses: Vec<Option<Word>>,
        alphabet: Vec<String>,
        letter_map: Vec<usize>,
    ) -> Self {
        FinSemigroupZ { table, zero, names, witnesses, alphabet, letter_map }
    }

    /// Parses the table format: `elements: ...`, `zero: ...`, then one row
    /// per element.
    pub fn parse(source: &str) -> Result<Self> {
        let mut lines = source
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let perr = |line: usize, message: &str| Error::ParseError { line, message: message.into() };
        let (ln, first) = lines.next().ok_or_else(|| perr(1, "missing `elements:` line"))?;
        let names: Vec<String> = first
            .strip_prefix("elements:")
            .ok_or_else(|| perr(ln, "expected `elements:`"))?
            .split_whitespace()
            .map(str::to_string)
            .collect();
        let index: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != names.len() {
            return Err(perr(ln, "duplicate element name"));
        }
        let (ln, second) = lines.next().ok_or_else(|| perr(ln + 1, "missing `zero:` line"))?;
        let zero_name = second
            .strip_prefix("zero:")
            .ok_or_else(|| perr(ln, "expected `zero:`"))?
            .trim();
        let zero = *index.get(zero_name).ok_or_else(|| perr(ln, "unknown zero element"))?;
        let mut table = Vec::new();
        for (ln, line) in lines {
            let row = line
                .split_whitespace()
                .map(|t| index.get(t).copied().ok_or_else(|| perr(ln, "unknown element in row")))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != names.len() {
                return Err(perr(ln, "row length differs from element count"));
            }
            table.push(row);
        }
        if table.len() != names.len() {
            return Err(perr(ln, "row count differs from element count"));
        }
        Self::from_table(names, zero, table)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("elements: {}\nzero: {}\n", self.names.join(" "), self.names[self.zero]);
        for row in &self.table {
            let cells: Vec<&str> = row.iter().map(|&x| self.names[x].as_str()).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn witness(&self, x: usize) -> Option<&[Letter]> {
        self.witnesses[x].as_deref()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter_map(&self) -> &[usize] {
        &self.letter_map
    }

    /// Image of a non-empty word under the letter map.
    pub fn eval(&self, word: &[Letter]) -> Option<usize> {
        let (&first, rest) = word.split_first()?;
        Some(rest.iter().fold(self.letter_map[first], |x, &a| self.mul(x, self.letter_map[a])))
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&x| x != self.zero)
    }

    /// Identity element, if the semigroup is a monoid.
    pub fn identity(&self) -> Option<usize> {
        (0..self.len()).find(|&e| (0..self.len()).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Subsemigroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.len()];
        let mut list = Vec::new();
        let mut queue = VecDeque::new();
        for &g in gens {
            if !std::mem::replace(&mut inside[g], true) {
                list.push(g);
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !std::mem::replace(&mut inside[y], true) {
                    list.push(y);
                    queue.push_back(y);
                }
            }
        }
        list.sort_unstable();
        list
    }

    /// Restriction to a subset closed under products (which must contain
    /// the zero). Returns the subsemigroup and its embedding.
    pub fn subsemigroup(&self, elements: &[usize]) -> (FinSemigroupZ, Vec<usize>) {
        let mut emb = elements.to_vec();
        emb.sort_unstable();
        emb.dedup();
        let pos: HashMap<usize, usize> = emb.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let table = emb
            .iter()
            .map(|&x| emb.iter().map(|&y| pos[&self.mul(x, y)]).collect())
            .collect();
        let sub = FinSemigroupZ {
            table,
            zero: pos[&self.zero],
            names: emb.iter().map(|&x| self.names[x].clone()).collect(),
            witnesses: emb.iter().map(|&x| self.witnesses[x].clone()).collect(),
            alphabet: Vec::new(),
            letter_map: Vec::new(),
        };
        (sub, emb)
    }

    /// Checks associativity and the zero laws, reporting the first failure.
    pub fn check_laws(&self) -> std::result::Result<(), String> {
        let n = self.len();
        for x in 0..n {
            if self.mul(self.zero, x) != self.zero || self.mul(x, self.zero) != self.zero {
                return Err(format!("zero does not absorb {}", self.names[x]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!(
                            "({0}{1}){2} != {0}({1}{2})",
                            self.names[a], self.names[b], self.names[c]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn shortlex_witnesses(&self) -> Vec<Option<Word>> {
        let mut w: Vec<Option<Word>> = vec![None; self.len()];
        let mut queue = VecDeque::new();
        for (a, &x) in self.letter_map.iter().enumerate() {
            if w[x].is_none() {
                w[x] = Some(vec![a]);
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            for (a, &g) in self.letter_map.iter().enumerate() {
                let y = self.mul(x, g);
                if w[y].is_none() {
                    let mut word = w[x].clone().unwrap();
                    word.push(a);
                    w[y] = Some(word);
                    queue.push_back(y);
                }
            }
        }
        w
    }
}

/// Brandt semigroup `B_n`: `n × n` matrix units and a zero, with
/// `(i,j)(k,l) = (i,l)` when `j = k` and zero otherwise.
pub fn brandt_semigroup(n: usize) -> FinSemigroupZ {
    assert!(n >= 1, "Brandt semigroups need n >= 1");
    let unit = |i: usize, j: usize| i * n + j;
    let zero = n * n;
    let mut names: Vec<String> = Vec::with_capacity(zero + 1);
    for i in 0..n {
        for j in 0..n {
            names.push(format!("e{}{}", i + 1, j + 1));
        }
    }
    names.push("0".into());
    let mut table = vec![vec![zero; zero + 1]; zero + 1];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                table[unit(i, j)][unit(j, l)] = unit(i, l);
            }
        }
    }
    FinSemigroupZ::from_parts(
        table,
        zero,
        names,
        vec![None; zero + 1],
        Vec::new(),
        Vec::new(),
    )
}
