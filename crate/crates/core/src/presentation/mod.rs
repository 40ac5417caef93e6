//! Labeled-graph presentations of sofic shifts.
//!
//! A [`Presentation`] is a finite right-resolving labeled graph. Every
//! constructor trims it to its essential part (each vertex has an incoming
//! and an outgoing edge) and renumbers vertices canonically, so two
//! presentations built from the same edge set serialize identically.

mod automaton;
mod induced;
mod transform;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::semigroup::FinSemigroupZ;

pub use automaton::{minimal_automaton, Dfa};
pub use induced::induced_shift;
pub use transform::{higher_block, higher_power, higher_power_with_words, symbol_expansion};

/// Letter index into an alphabet.
pub type Letter = usize;
/// A finite word as a sequence of letter indices.
pub type Word = Vec<Letter>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: usize,
    pub label: Letter,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    vertices: Vec<String>,
    alphabet: Vec<String>,
    edges: Vec<Edge>,
    /// `delta[v][a]` is the target of the unique `a`-edge leaving `v`.
    delta: Vec<Vec<Option<usize>>>,
}

impl Presentation {
    /// Builds a presentation from `(source, label, target)` triples.
    ///
    /// The result is validated, trimmed to its essential part and
    /// canonicalized.
    pub fn from_edges<I, S>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S, S)>,
        S: AsRef<str>,
    {
        let mut seen: HashMap<(String, String), String> = HashMap::new();
        let mut triples = Vec::new();
        for (src, label, dst) in edges {
            let (src, label, dst) = (
                src.as_ref().to_string(),
                label.as_ref().to_string(),
                dst.as_ref().to_string(),
            );
            if seen.insert((src.clone(), label.clone()), dst.clone()).is_some() {
                return Err(Error::NotRightResolving { vertex: src, label });
            }
            triples.push((src, label, dst));
        }
        let triples = trim(triples);
        if triples.is_empty() {
            return Err(Error::EmptyShift);
        }
        Ok(canonicalize(triples))
    }

    /// Parses the edge-list text format: one `<src> <label> <dst>` per line,
    /// `#` starts a comment, blank lines are ignored.
    pub fn parse(source: &str) -> Result<Self> {
        let mut triples = Vec::new();
        for (i, raw) in source.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.len() {
                0 => continue,
                3 => triples.push((tokens[0], tokens[1], tokens[2])),
                n => {
                    return Err(Error::ParseError {
                        line: i + 1,
                        message: format!("expected `<src> <label> <dst>`, found {n} tokens"),
                    })
                }
            }
        }
        Self::from_edges(triples)
    }

    /// Canonical text serialization; parsing it back yields an equal value.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(
                out,
                "{} {} {}",
                self.vertices[e.src], self.alphabet[e.label], self.vertices[e.dst]
            );
        }
        out
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{}\" {{\n  node [shape=circle];\n", escape(name));
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{}\"];", escape(v));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\"];",
                e.src,
                e.dst,
                escape(&self.alphabet[e.label])
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.alphabet.iter().position(|a| a == name)
    }

    /// Target of the `a`-edge leaving `v`, if any.
    pub fn step(&self, v: usize, a: Letter) -> Option<usize> {
        self.delta[v][a]
    }

    /// Set of vertices reachable from `from` by paths labeled `word`.
    pub fn follow(&self, from: &BTreeSet<usize>, word: &[Letter]) -> BTreeSet<usize> {
        let mut cur = from.clone();
        for &a in word {
            cur = cur.iter().filter_map(|&v| self.delta[v][a]).collect();
            if cur.is_empty() {
                break;
            }
        }
        cur
    }

    pub fn all_vertices(&self) -> BTreeSet<usize> {
        (0..self.vertices.len()).collect()
    }

    /// Whether `word` labels a path of the graph (i.e. is a block of the shift).
    pub fn accepts(&self, word: &[Letter]) -> bool {
        !self.follow(&self.all_vertices(), word).is_empty()
    }

    /// Parses a word into letter indices. Letters are separated by
    /// whitespace; a single unknown token is read character by character.
    pub fn word(&self, text: &str) -> Result<Word> {
        let lookup = |t: &str| self.letter(t).ok_or_else(|| Error::LetterNotInAlphabet(t.to_string()));
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if let [single] = tokens[..] {
            if self.letter(single).is_none() {
                let mut buf = [0u8; 4];
                return single.chars().map(|c| lookup(c.encode_utf8(&mut buf))).collect();
            }
        }
        tokens.into_iter().map(lookup).collect()
    }

    /// Spells a word with this presentation's letters.
    pub fn spell(&self, word: &[Letter]) -> String {
        spell(&self.alphabet, word)
    }

    /// Whether the underlying graph is strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertices.len();
        let forward = reach(n, 0, |v| self.edges.iter().filter(move |e| e.src == v).map(|e| e.dst));
        let backward = reach(n, 0, |v| self.edges.iter().filter(move |e| e.dst == v).map(|e| e.src));
        forward.iter().all(|&b| b) && backward.iter().all(|&b| b)
    }

    /// Whether every label occurs on exactly one edge (an edge shift presentation).
    pub fn is_edge_injective(&self) -> bool {
        let mut seen = vec![false; self.alphabet.len()];
        self.edges.iter().all(|e| !std::mem::replace(&mut seen[e.label], true))
    }

    /// Disjoint union with another presentation; vertex names are prefixed
    /// to keep them apart, letters with equal names are identified.
    pub fn disjoint_union(&self, other: &Presentation) -> Result<Presentation> {
        let mut triples = Vec::new();
        for (tag, p) in [("l", self), ("r", other)] {
            for e in &p.edges {
                triples.push((
                    format!("{tag}:{}", p.vertices[e.src]),
                    p.alphabet[e.label].clone(),
                    format!("{tag}:{}", p.vertices[e.dst]),
                ));
            }
        }
        Presentation::from_edges(triples)
    }
}

fn reach<I, F>(n: usize, start: usize, next: F) -> Vec<bool>
where
    F: Fn(usize) -> I,
    I: Iterator<Item = usize>,
{
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for w in next(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

pub(crate) fn spell(alphabet: &[String], word: &[Letter]) -> String {
    let sep = if alphabet.iter().all(|a| a.chars().count() == 1) { "" } else { "." };
    word.iter().map(|&a| alphabet[a].as_str()).collect::<Vec<_>>().join(sep)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Iteratively removes vertices with no incoming or no outgoing edge.
fn trim(mut triples: Vec<(String, String, String)>) -> Vec<(String, String, String)> {
    loop {
        let sources: BTreeSet<&String> = triples.iter().map(|t| &t.0).collect();
        let targets: BTreeSet<&String> = triples.iter().map(|t| &t.2).collect();
        let keep: Vec<bool> = triples
            .iter()
            .map(|t| targets.contains(&t.0) && sources.contains(&t.2))
            .collect();
        if keep.iter().all(|&k| k) {
            return triples;
        }
        let mut it = keep.into_iter();
        triples.retain(|_| it.next().unwrap());
    }
}

/// Renumbers vertices by breadth-first search from the lexicographically
/// least remaining edge, visiting out-edges in label order.
fn canonicalize(triples: Vec<(String, String, String)>) -> Presentation {
    let alphabet: Vec<String> = triples
        .iter()
        .map(|t| t.1.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let letter_of: HashMap<&str, usize> =
        alphabet.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
    let mut out: BTreeMap<&str, Vec<(usize, &str)>> = BTreeMap::new();
    for (s, l, d) in &triples {
        out.entry(s.as_str()).or_default().push((letter_of[l.as_str()], d.as_str()));
    }
    for list in out.values_mut() {
        list.sort();
    }
    let mut sorted: Vec<&(String, String, String)> = triples.iter().collect();
    sorted.sort();

    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut vertices: Vec<String> = Vec::new();
    for root in sorted.iter().map(|t| t.0.as_str()) {
        if index.contains_key(root) {
            continue;
        }
        let mut queue = VecDeque::from([root]);
        index.insert(root, vertices.len());
        vertices.push(root.to_string());
        while let Some(v) = queue.pop_front() {
            for &(_, d) in out.get(v).map(Vec::as_slice).unwrap_or(&[]) {
                if !index.contains_key(d) {
                    index.insert(d, vertices.len());
                    vertices.push(d.to_string());
                    queue.push_back(d);
                }
            }
        }
    }
    let mut edges: Vec<Edge> = triples
        .iter()
        .map(|(s, l, d)| Edge {
            src: index[s.as_str()],
            label: letter_of[l.as_str()],
            dst: index[d.as_str()],
        })
        .collect();
    edges.sort();
    let mut delta = vec![vec![None; alphabet.len()]; vertices.len()];
    for e in &edges {
        delta[e.src][e.label] = Some(e.dst);
    }
    Presentation { vertices, alphabet, edges, delta }
}

/// A named shift together with lazily computed derived structures.
#[derive(Debug)]
pub struct ShiftHandle {
    pub name: String,
    presentation: Presentation,
    dfa: OnceLock<Dfa>,
    semigroup: OnceLock<FinSemigroupZ>,
}

impl Clone for ShiftHandle {
    fn clone(&self) -> Self {
        ShiftHandle {
            name: self.name.clone(),
            presentation: self.presentation.clone(),
            dfa: self.dfa.clone(),
            semigroup: self.semigroup.clone(),
        }
    }
}

impl ShiftHandle {
    pub fn new(name: impl Into<String>, presentation: Presentation) -> Self {
        ShiftHandle {
            name: name.into(),
            presentation,
            dfa: OnceLock::new(),
            semigroup: OnceLock::new(),
        }
    }

    pub fn parse(name: impl Into<String>, source: &str) -> Result<Self> {
        Ok(Self::new(name, Presentation::parse(source)?))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn dfa(&self) -> &Dfa {
        self.dfa.get_or_init(|| minimal_automaton(&self.presentation))
    }

    /// The syntactic semigroup, realized as the transition semigroup of the
    /// minimal automaton.
    pub fn semigroup(&self) -> &FinSemigroupZ {
        self.semigroup
            .get_or_init(|| crate::semigroup::transition_semigroup(self.dfa()))
    }
}
