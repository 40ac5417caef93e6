//! Posets and labeled preorders derived from covers and their actions.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use super::{element_rank, PointedAction};
use crate::presentation::Presentation;
use crate::semigroup::{green_structure, local_monoids_and_lu, FinSemigroupZ, GroupTable};

/// A finite poset given by its full order relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Poset {
    pub elements: Vec<String>,
    /// Covering pairs `(x, y)` with `x < y`.
    pub hasse: Vec<(usize, usize)>,
    #[serde(skip)]
    leq: Vec<Vec<bool>>,
}

fn hasse(leq: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = leq.len();
    let lt = |x: usize, y: usize| x != y && leq[x][y] && !leq[y][x];
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

fn relation_dot(name: &str, elements: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n", name.replace('"', "\\\""));
    for (i, e) in elements.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", e.replace('"', "\\\""));
    }
    for (x, y) in edges {
        let _ = writeln!(out, "  n{x} -> n{y};");
    }
    out.push_str("}\n");
    out
}

/// Backtracking search for a bijection preserving a relation both ways,
/// restricted to pairs allowed by `compatible`.
fn relation_isomorphism(
    a: &[Vec<bool>],
    b: &[Vec<bool>],
    compatible: &dyn Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let degree = |r: &[Vec<bool>], x: usize| {
        let up = (0..n).filter(|&y| r[x][y]).count();
        let down = (0..n).filter(|&y| r[y][x]).count();
        (up, down)
    };
    let da: Vec<_> = (0..n).map(|x| degree(a, x)).collect();
    let db: Vec<_> = (0..n).map(|x| degree(b, x)).collect();
    let candidates: Vec<Vec<usize>> =
        (0..n).map(|x| (0..n).filter(|&y| da[x] == db[y] && compatible(x, y)).collect()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| candidates[x].len());
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        order: &[usize],
        candidates: &[Vec<usize>],
        a: &[Vec<bool>],
        b: &[Vec<bool>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for &y in &candidates[x] {
            if used[y] {
                continue;
            }
            let consistent = order[..k].iter().all(|&z| {
                let w = map[z];
                a[x][z] == b[y][w] && a[z][x] == b[w][y]
            }) && a[x][x] == b[y][y];
            if consistent {
                map[x] = y;
                used[y] = true;
                if go(k + 1, order, candidates, a, b, map, used) {
                    return true;
                }
                used[y] = false;
            }
        }
        false
    }
    go(0, &order, &candidates, a, b, &mut map, &mut used).then_some(map)
}

impl Poset {
    pub fn new(elements: Vec<String>, leq: Vec<Vec<bool>>) -> Self {
        Poset { hasse: hasse(&leq), elements, leq }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| self.leq[x][x])
            && (0..n).all(|x| (0..n).all(|y| x == y || !(self.leq[x][y] && self.leq[y][x])))
            && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(self.leq[x][y] && self.leq[y][z]) || self.leq[x][z])))
    }

    /// An order isomorphism to `other`, if one exists.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        relation_isomorphism(&self.leq, &other.leq, &|_, _| true)
    }

    /// Hasse diagram in DOT, smaller elements at the bottom.
    pub fn to_dot(&self, name: &str) -> String {
        relation_dot(name, &self.elements, &self.hasse)
    }
}

/// Poset of cyclic `LU(S)`-subsets: on `I = Q·E(S)`, `q ⪯ q'` iff
/// `q' ∈ q·LU(S)`, modulo the induced equivalence.
pub fn cyclic_poset(a: &PointedAction) -> Poset {
    let s = a.semigroup();
    let lu = local_monoids_and_lu(s).lu;
    let idem = s.idempotents();
    let n = a.state_count();
    let points: Vec<usize> = (0..n)
        .flat_map(|q| idem.iter().map(move |&e| a.act(q, e)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let orbit: Vec<BTreeSet<usize>> =
        points.iter().map(|&q| lu.iter().map(|&u| a.act(q, u)).collect()).collect();
    let below = |i: usize, j: usize| orbit[i].contains(&points[j]);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..points.len() {
        match classes.iter_mut().find(|c| below(c[0], i) && below(i, c[0])) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let names = classes
        .iter()
        .map(|c| {
            let inner: Vec<&str> = c.iter().map(|&i| a.state_names()[points[i]].as_str()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    let leq = classes
        .iter()
        .map(|c| classes.iter().map(|d| below(c[0], d[0])).collect())
        .collect();
    Poset::new(names, leq)
}

fn communication_poset(names: &[String], adjacency: &[Vec<usize>]) -> Poset {
    let mut g = DiGraph::<usize, ()>::new();
    let nodes: Vec<_> = (0..names.len()).map(|v| g.add_node(v)).collect();
    for (v, out) in adjacency.iter().enumerate() {
        for &w in out {
            g.add_edge(nodes[v], nodes[w], ());
        }
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .filter(|c| c.len() > 1 || g.contains_edge(c[0], c[0]))
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|n| g[n]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    comps.sort();
    let reach: Vec<Vec<bool>> = (0..names.len())
        .map(|v| {
            let mut seen = vec![false; names.len()];
            let mut stack = vec![v];
            seen[v] = true;
            while let Some(x) = stack.pop() {
                for &y in &adjacency[x] {
                    if !std::mem::replace(&mut seen[y], true) {
                        stack.push(y);
                    }
                }
            }
            seen
        })
        .collect();
    let elements = comps
        .iter()
        .map(|c| {
            let inner: Vec<&str> = c.iter().map(|&v| names[v].as_str()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    let leq = comps
        .iter()
        .map(|c| comps.iter().map(|d| reach[c[0]][d[0]]).collect())
        .collect();
    Poset::new(elements, leq)
}

/// Non-trivial strongly connected components of a labeled graph ordered by
/// reachability.
pub fn proper_communication_graph(p: &Presentation) -> Poset {
    let mut adjacency = vec![Vec::new(); p.vertex_count()];
    for e in p.edges() {
        adjacency[e.src].push(e.dst);
    }
    communication_poset(p.vertex_names(), &adjacency)
}

/// Proper communication graph of the pointed cover: every state moves along
/// letters, and additionally to the base point, which carries loops.
pub fn pointed_communication_graph(a: &PointedAction) -> Poset {
    let s = a.semigroup();
    let adjacency: Vec<Vec<usize>> = (0..a.state_count())
        .map(|q| {
            let mut out: Vec<usize> = s.letter_map().iter().map(|&x| a.act(q, x)).collect();
            out.push(a.base());
            out
        })
        .collect();
    communication_poset(a.state_names(), &adjacency)
}

/// Label of a D-class: regularity, Schützenberger group and rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DLabel {
    pub regular: bool,
    pub group: GroupTable,
    pub rank: usize,
}

impl DLabel {
    pub fn matches(&self, other: &DLabel) -> bool {
        self.regular == other.regular && self.rank == other.rank && self.group.is_isomorphic(&other.group)
    }

    pub fn display(&self) -> String {
        format!("({}, {}, {})", u8::from(self.regular), self.group.label(), self.rank)
    }
}

/// A preordered set with labeled elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledPreorder {
    pub elements: Vec<String>,
    pub labels: Vec<DLabel>,
    /// Pairs `(x, y)` with `x ≠ y` and `x ⪯ y`.
    pub relation: Vec<(usize, usize)>,
    #[serde(skip)]
    leq: Vec<Vec<bool>>,
}

impl LabeledPreorder {
    pub fn new(elements: Vec<String>, labels: Vec<DLabel>, leq: Vec<Vec<bool>>) -> Self {
        let n = elements.len();
        let relation = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && leq[x][y])
            .collect();
        LabeledPreorder { elements, labels, relation, leq }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn is_preorder(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| self.leq[x][x])
            && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(self.leq[x][y] && self.leq[y][z]) || self.leq[x][z])))
    }

    /// Hasse-style DOT rendering with labels as node annotations.
    pub fn to_dot(&self, name: &str) -> String {
        let names: Vec<String> = self
            .elements
            .iter()
            .zip(&self.labels)
            .map(|(e, l)| format!("{e} {}", l.display()))
            .collect();
        relation_dot(name, &names, &hasse(&self.leq))
    }
}

/// An isomorphism of labeled preorders: preserves the relation both ways,
/// regularity and rank, and maps groups to isomorphic groups.
pub fn labeled_preorder_isomorphism(p1: &LabeledPreorder, p2: &LabeledPreorder) -> Option<Vec<usize>> {
    relation_isomorphism(&p1.leq, &p2.leq, &|x, y| p1.labels[x].matches(&p2.labels[y]))
}

/// The D-classes of `LU(S)` (Green's relations computed inside `LU(S)`),
/// with `D₁ ⪯ D₂` when an element of `D₂` is a factor of an element of
/// `D₁`, labeled by regularity, Schützenberger group and rank under `a`.
pub fn dclass_labeled_preorder(s: &FinSemigroupZ, a: &PointedAction) -> LabeledPreorder {
    let lu = local_monoids_and_lu(s).lu;
    let (sub, emb) = s.subsemigroup(&lu);
    let g = green_structure(&sub);
    let elements = g.d_classes.iter().map(|d| sub.name(d.members[0]).to_string()).collect();
    let labels = g
        .d_classes
        .iter()
        .map(|d| DLabel {
            regular: d.regular,
            group: d.group.clone(),
            rank: element_rank(a, emb[d.members[0]]),
        })
        .collect();
    let n = g.d_classes.len();
    let leq = (0..n).map(|i| (0..n).map(|j| g.d_below(i, j)).collect()).collect();
    LabeledPreorder::new(elements, labels, leq)
}
