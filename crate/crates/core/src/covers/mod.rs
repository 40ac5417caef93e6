//! Krieger and Fischer covers and the actions of the syntactic semigroup
//! (and of its Karoubi envelope) on their pointed state sets.
//!
//! Cover states are states of the minimal automaton of the factor
//! language. A state `q` is a Krieger state when `q = i·s` for the initial
//! state `i` and some `s ≠ 0` with `es = s` for a non-zero idempotent `e`:
//! along a left-infinite history the decreasing chain of contexts
//! stabilizes, and a pigeonhole argument in the finite semigroup yields an
//! idempotent left factor; conversely `i·s` with `es = s` is the context of
//! `p⁻∞u` for words `p ∈ e`, `u ∈ s`.

mod action_equivalence;
mod poset;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::karoubi::{Morphism, ZeroCategory};
use crate::presentation::{Dfa, Presentation, ShiftHandle, Word};
use crate::semigroup::{has_irreducible_language, FinSemigroupZ};

pub use action_equivalence::{decide_action_equivalence, ActionWitness};
pub use poset::{
    cyclic_poset, dclass_labeled_preorder, labeled_preorder_isomorphism, pointed_communication_graph,
    proper_communication_graph, DLabel, LabeledPreorder, Poset,
};

/// Action of a semigroup with zero on a pointed finite set. States are
/// numbered `0..n` with the base point last.
#[derive(Debug, Clone)]
pub struct PointedAction {
    semigroup: Arc<FinSemigroupZ>,
    names: Vec<String>,
    /// `act[q][s]`.
    act: Vec<Vec<usize>>,
}

impl PointedAction {
    /// Builds an action from an explicit table; `act[q][s]` must satisfy
    /// the action laws with the last state as base point.
    pub fn from_table(semigroup: Arc<FinSemigroupZ>, names: Vec<String>, act: Vec<Vec<usize>>) -> Result<Self> {
        let a = PointedAction { semigroup, names, act };
        a.check_laws().map_err(Error::InvalidArgument)?;
        Ok(a)
    }

    /// Restricts the action of the semigroup on the automaton states to a
    /// set of non-sink states closed under the action.
    fn on_dfa_states(dfa: &Dfa, s: Arc<FinSemigroupZ>, states: &[usize]) -> Self {
        let base = states.len();
        let mut pos = vec![usize::MAX; dfa.state_count()];
        for (i, &q) in states.iter().enumerate() {
            pos[q] = i;
        }
        pos[dfa.sink()] = base;
        let mut act = vec![vec![base; s.len()]; base + 1];
        for (i, &q) in states.iter().enumerate() {
            for x in s.nonzero() {
                let w = s.witness(x).expect("non-zero elements have witnesses");
                act[i][x] = pos[dfa.run(q, w)];
            }
        }
        let mut names: Vec<String> = states.iter().map(|q| format!("q{q}")).collect();
        names.push("sink".into());
        PointedAction { semigroup: s, names, act }
    }

    pub fn semigroup(&self) -> &FinSemigroupZ {
        &self.semigroup
    }

    pub fn state_count(&self) -> usize {
        self.act.len()
    }

    pub fn base(&self) -> usize {
        self.act.len() - 1
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn act(&self, q: usize, s: usize) -> usize {
        self.act[q][s]
    }

    /// `Qe = {q·e}`, sorted, base point included.
    pub fn fixed_set(&self, e: usize) -> Vec<usize> {
        (0..self.state_count())
            .map(|q| self.act(q, e))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Whether distinct elements act distinctly.
    pub fn is_faithful(&self) -> bool {
        let n = self.semigroup.len();
        let columns: BTreeSet<Vec<usize>> =
            (0..n).map(|x| (0..self.state_count()).map(|q| self.act[q][x]).collect()).collect();
        columns.len() == n
    }

    pub fn check_laws(&self) -> std::result::Result<(), String> {
        let s = &self.semigroup;
        let base = self.base();
        for q in 0..self.state_count() {
            if self.act[q][s.zero()] != base {
                return Err(format!("{}·0 is not the base point", self.names[q]));
            }
            for x in 0..s.len() {
                if q == base && self.act[q][x] != base {
                    return Err("the base point is not fixed".into());
                }
                for y in 0..s.len() {
                    if self.act[self.act[q][x]][y] != self.act[q][s.mul(x, y)] {
                        return Err(format!("action law fails at {}", self.names[q]));
                    }
                }
            }
        }
        Ok(())
    }

    /// The labeled graph `q -a-> q·a` on the non-base states.
    pub fn graph(&self) -> Result<Presentation> {
        let s = &self.semigroup;
        let base = self.base();
        let mut edges = Vec::new();
        for q in 0..base {
            for (a, &x) in s.letter_map().iter().enumerate() {
                let r = self.act[q][x];
                if r != base {
                    edges.push((self.names[q].clone(), s.alphabet()[a].clone(), self.names[r].clone()));
                }
            }
        }
        Presentation::from_edges(edges)
    }
}

/// Number of non-base states in the image of `s`.
pub fn element_rank(a: &PointedAction, s: usize) -> usize {
    let base = a.base();
    (0..a.state_count())
        .map(|q| a.act(q, s))
        .filter(|&r| r != base)
        .collect::<BTreeSet<_>>()
        .len()
}

/// Krieger states as automaton states, sorted.
pub fn krieger_states(dfa: &Dfa, s: &FinSemigroupZ) -> Vec<usize> {
    let idem: Vec<usize> = s.idempotents().into_iter().filter(|&e| e != s.zero()).collect();
    let mut out = BTreeSet::new();
    for x in s.nonzero() {
        if idem.iter().any(|&e| s.mul(e, x) == x) {
            out.insert(dfa.run(dfa.initial(), s.witness(x).unwrap()));
        }
    }
    out.into_iter().collect()
}

/// The Krieger cover (sink removed) and the action on its pointed states.
pub fn krieger_cover(h: &ShiftHandle) -> Result<(Presentation, PointedAction)> {
    let dfa = h.dfa();
    let s = Arc::new(h.semigroup().clone());
    let states = krieger_states(dfa, &s);
    if states.is_empty() {
        return Err(Error::EmptyShift);
    }
    let action = PointedAction::on_dfa_states(dfa, s, &states);
    Ok((action.graph()?, action))
}

/// The Fischer cover: the unique terminal strongly connected component of
/// the minimal automaton without its sink.
pub fn fischer_cover(h: &ShiftHandle) -> Result<(Presentation, PointedAction)> {
    let dfa = h.dfa();
    let s = h.semigroup();
    if !has_irreducible_language(s) {
        return Err(Error::NotIrreducible);
    }
    let live: Vec<usize> = dfa.non_sink_states().collect();
    let mut g = DiGraph::<usize, ()>::new();
    let nodes: HashMap<usize, _> = live.iter().map(|&q| (q, g.add_node(q))).collect();
    for &q in &live {
        for a in 0..dfa.alphabet().len() {
            let r = dfa.step(q, a);
            if r != dfa.sink() {
                g.add_edge(nodes[&q], nodes[&r], ());
            }
        }
    }
    let terminal: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|comp| comp.into_iter().map(|n| g[n]).collect::<Vec<_>>())
        .filter(|comp| {
            comp.iter().all(|&q| {
                (0..dfa.alphabet().len()).all(|a| {
                    let r = dfa.step(q, a);
                    r == dfa.sink() || comp.contains(&r)
                })
            })
        })
        .collect();
    let [comp] = &terminal[..] else {
        return Err(Error::NotIrreducible);
    };
    let mut states = comp.clone();
    states.sort_unstable();
    let action = PointedAction::on_dfa_states(dfa, Arc::new(s.clone()), &states);
    Ok((action.graph()?, action))
}

/// Krieger states found without idempotents: the eventual vertex sets of
/// left-infinite histories.
///
/// For a word `w`, `φ_w` is the partial map on presentation vertices it
/// induces (the presentation is right-resolving). Reading a history from
/// right to left walks the graph `φ_w → φ_{aw}`; images only shrink, so the
/// eventual image is the image of a node visited infinitely often, i.e. of
/// a node on a cycle, and every such node is reached by some history.
pub fn left_extension_krieger_states(p: &Presentation, dfa: &Dfa) -> Vec<usize> {
    let n = p.vertex_count();
    let letters = p.alphabet().len();
    let identity: Vec<Option<usize>> = (0..n).map(Some).collect();
    let mut index: HashMap<Vec<Option<usize>>, usize> = HashMap::new();
    let mut maps = vec![identity.clone()];
    let mut words: Vec<Word> = vec![Vec::new()];
    index.insert(identity, 0);
    let mut g = DiGraph::<usize, ()>::new();
    let mut nodes = vec![g.add_node(0)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for a in 0..letters {
            let next: Vec<Option<usize>> =
                (0..n).map(|v| p.step(v, a).and_then(|u| maps[i][u])).collect();
            if next.iter().all(Option::is_none) {
                continue;
            }
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    let j = maps.len();
                    index.insert(next.clone(), j);
                    maps.push(next);
                    let mut w = vec![a];
                    w.extend_from_slice(&words[i]);
                    words.push(w);
                    nodes.push(g.add_node(j));
                    queue.push_back(j);
                    j
                }
            };
            g.add_edge(nodes[i], nodes[j], ());
        }
    }
    let mut out = BTreeSet::new();
    for comp in tarjan_scc(&g) {
        let cyclic = comp.len() > 1 || g.contains_edge(comp[0], comp[0]);
        if cyclic {
            for node in comp {
                out.insert(dfa.run(dfa.initial(), &words[g[node]]));
            }
        }
    }
    out.into_iter().collect()
}

/// The Karoubi action restricted to the objects of a category built on the
/// same semigroup: object `e` carries `Qe`, and `(e,s,f)` maps `Qe → Qf`
/// by `q ↦ q·s`.
#[derive(Debug, Clone)]
pub struct KaroubiAction {
    /// `sets[i]` is `Q·e` for object `i`, sorted, base point included.
    pub sets: Vec<Vec<usize>>,
}

impl KaroubiAction {
    pub fn act(&self, a: &PointedAction, q: usize, m: Morphism) -> usize {
        a.act(q, m.elem)
    }
}

pub fn karoubi_action(a: &PointedAction, c: &ZeroCategory) -> KaroubiAction {
    KaroubiAction { sets: c.objects().iter().map(|&e| a.fixed_set(e)).collect() }
}
