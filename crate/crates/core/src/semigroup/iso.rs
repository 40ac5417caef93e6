//! Isomorphism search for finite multiplication tables.
//!
//! Candidates are filtered by colors refined from local invariants (the
//! product structure seen from each element), and the search only branches
//! on a generating set: the images of all other elements follow.

use std::collections::{BTreeMap, HashMap};

use super::FinSemigroupZ;
use crate::error::{Error, Result};

type Table = [Vec<usize>];

/// Joint color refinement of two tables; colors are comparable across them.
/// `pa` and `pb` are initial colors that any isomorphism must respect.
fn refine(a: &Table, b: &Table, pa: &[usize], pb: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let base = |t: &Table, pre: &[usize], x: usize| {
        let n = t.len();
        let mut powers = vec![x];
        let mut p = t[x][x];
        while !powers.contains(&p) {
            powers.push(p);
            p = t[p][x];
        }
        let index = powers.iter().position(|&q| q == p).unwrap();
        let fixes_left = (0..n).filter(|&y| t[x][y] == y).count();
        let fixes_right = (0..n).filter(|&y| t[y][x] == y).count();
        let absorbs_left = (0..n).filter(|&y| t[y][x] == x).count();
        let absorbs_right = (0..n).filter(|&y| t[x][y] == x).count();
        let mut row: Vec<usize> = t[x].clone();
        row.sort_unstable();
        row.dedup();
        let mut col: Vec<usize> = (0..n).map(|y| t[y][x]).collect();
        col.sort_unstable();
        col.dedup();
        vec![
            pre.get(x).copied().unwrap_or(0),
            index,
            powers.len() - index,
            fixes_left,
            fixes_right,
            absorbs_left,
            absorbs_right,
            row.len(),
            col.len(),
        ]
    };
    let mut interner: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut intern = |key: Vec<usize>| {
        let n = interner.len();
        *interner.entry(key).or_insert(n)
    };
    let mut ca: Vec<usize> = (0..a.len()).map(|x| intern(base(a, pa, x))).collect();
    let mut cb: Vec<usize> = (0..b.len()).map(|x| intern(base(b, pb, x))).collect();
    let count = |c: &[usize]| {
        let mut v = c.to_vec();
        v.sort_unstable();
        v.dedup();
        v.len()
    };
    let mut classes = count(&ca) + count(&cb);
    loop {
        let mut interner: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut step = |t: &Table, c: &[usize]| -> Vec<usize> {
            (0..t.len())
                .map(|x| {
                    let mut sig: Vec<(usize, usize, usize)> =
                        (0..t.len()).map(|y| (c[y], c[t[x][y]], c[t[y][x]])).collect();
                    sig.sort_unstable();
                    let mut key = vec![c[x]];
                    key.extend(sig.into_iter().flat_map(|(p, q, r)| [p, q, r]));
                    let n = interner.len();
                    *interner.entry(key).or_insert(n)
                })
                .collect()
        };
        let na = step(a, &ca);
        let nb = step(b, &cb);
        let new_classes = count(&na) + count(&nb);
        ca = na;
        cb = nb;
        if new_classes == classes {
            return (ca, cb);
        }
        classes = new_classes;
    }
}

/// A greedy generating set of `t`, with for each element beyond the
/// generators a derivation `z = x·y` from earlier elements, grouped by the
/// generator prefix whose closure first contains it.
struct Derivation {
    gens: Vec<usize>,
    /// `levels[i]` lists `(z, x, y)` added once generator `i` is available.
    levels: Vec<Vec<(usize, usize, usize)>>,
}

fn derive(t: &Table, color_size: &[usize]) -> Derivation {
    let n = t.len();
    let mut inside = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let mut gens = Vec::new();
    let mut levels = Vec::new();
    // Prefer generators whose color class is small: fewer candidates.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (color_size[x], x));
    for &g in &order {
        if inside[g] {
            continue;
        }
        gens.push(g);
        inside[g] = true;
        members.push(g);
        let mut level = Vec::new();
        let mut i = 0;
        // Close under products with everything already inside.
        let mut frontier: Vec<usize> = members.clone();
        while i < frontier.len() {
            let x = frontier[i];
            i += 1;
            let snapshot = members.clone();
            for &y in &snapshot {
                for (p, q) in [(x, y), (y, x)] {
                    let z = t[p][q];
                    if !inside[z] {
                        inside[z] = true;
                        members.push(z);
                        frontier.push(z);
                        level.push((z, p, q));
                    }
                }
            }
        }
        levels.push(level);
    }
    Derivation { gens, levels }
}

struct Search<'a> {
    a: &'a Table,
    b: &'a Table,
    ca: Vec<usize>,
    cb: Vec<usize>,
    der: Derivation,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    nodes: u64,
    budget: u64,
    exceeded: bool,
}

/// Outcome of one search branch: keep enumerating or stop everything.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

impl Search<'_> {
    fn set(&mut self, x: usize, y: usize, trail: &mut Vec<usize>) -> bool {
        match self.map[x] {
            Some(z) => z == y,
            None => {
                if self.used[y] || self.ca[x] != self.cb[y] {
                    return false;
                }
                self.map[x] = Some(y);
                self.used[y] = true;
                self.assigned.push(x);
                trail.push(x);
                true
            }
        }
    }

    fn undo(&mut self, trail: &[usize]) {
        for &x in trail {
            let y = self.map[x].take().unwrap();
            self.used[y] = false;
        }
        self.assigned.truncate(self.assigned.len() - trail.len());
    }

    /// Extends the map over the closure of the assigned generators and
    /// checks the product law on all assigned pairs that involve new elements.
    fn propagate(&mut self, level: usize, start: usize, trail: &mut Vec<usize>) -> bool {
        for i in 0..self.der.levels[level].len() {
            let (z, x, y) = self.der.levels[level][i];
            let img = self.b[self.map[x].unwrap()][self.map[y].unwrap()];
            if !self.set(z, img, trail) {
                return false;
            }
        }
        let total = self.assigned.len();
        for i in start..total {
            let x = self.assigned[i];
            for j in 0..total {
                let y = self.assigned[j];
                for (p, q) in [(x, y), (y, x)] {
                    let z = self.a[p][q];
                    let expect = self.b[self.map[p].unwrap()][self.map[q].unwrap()];
                    match self.map[z] {
                        Some(w) if w != expect => return false,
                        Some(_) => {}
                        None => {
                            if !self.set(z, expect, trail) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, level: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> Flow {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exceeded = true;
            return Flow::Stop;
        }
        if level == self.der.gens.len() {
            if self.assigned.len() != self.a.len() {
                return Flow::Continue;
            }
            let map: Vec<usize> = self.map.iter().map(|m| m.unwrap()).collect();
            return if visit(&map) { Flow::Stop } else { Flow::Continue };
        }
        let g = self.der.gens[level];
        let candidates: Vec<usize> = match self.map[g] {
            Some(y) => vec![y],
            None => (0..self.b.len())
                .filter(|&c| !self.used[c] && self.cb[c] == self.ca[g])
                .collect(),
        };
        for cand in candidates {
            let mut trail = Vec::new();
            let start = self.assigned.len();
            let flow = if self.set(g, cand, &mut trail) && self.propagate(level, start, &mut trail) {
                self.run(level + 1, visit)
            } else {
                Flow::Continue
            };
            self.undo(&trail);
            if flow == Flow::Stop {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }
}

/// Enumerates the isomorphisms `f` with `f(a[x][y]) = b[f(x)][f(y)]` that
/// also respect the initial colorings `pa`, `pb` (pass empty slices for
/// none). `visit` receives each isomorphism and returns `true` to stop.
///
/// Returns whether the search was stopped by `visit`; exceeding `budget`
/// search nodes is an error.
pub fn enumerate_table_isomorphisms(
    a: &Table,
    b: &Table,
    pa: &[usize],
    pb: &[usize],
    budget: u64,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    if a.is_empty() {
        return Ok(visit(&[]));
    }
    let (ca, cb) = refine(a, b, pa, pb);
    let mut hist: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for &c in &ca {
        hist.entry(c).or_default().0 += 1;
    }
    for &c in &cb {
        hist.entry(c).or_default().1 += 1;
    }
    if hist.values().any(|(x, y)| x != y) {
        return Ok(false);
    }
    let size: Vec<usize> = ca.iter().map(|c| hist[c].0).collect();
    let der = derive(a, &size);
    let n = a.len();
    let mut search = Search {
        a,
        b,
        ca,
        cb,
        der,
        map: vec![None; n],
        used: vec![false; n],
        assigned: Vec::new(),
        nodes: 0,
        budget,
        exceeded: false,
    };
    let flow = search.run(0, visit);
    if search.exceeded {
        return Err(Error::BudgetExceeded(budget));
    }
    Ok(flow == Flow::Stop)
}

/// Default node budget for isomorphism searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Searches for a bijection `f` with `f(a[x][y]) = b[f(x)][f(y)]`.
///
/// Uses [`DEFAULT_BUDGET`]; an exhausted budget panics, which does not
/// happen at the table sizes this crate produces.
pub fn table_isomorphism(a: &Table, b: &Table) -> Option<Vec<usize>> {
    let mut found = None;
    enumerate_table_isomorphisms(a, b, &[], &[], DEFAULT_BUDGET, &mut |f| {
        found = Some(f.to_vec());
        true
    })
    .expect("isomorphism search budget exceeded");
    found
}

/// Isomorphism of semigroups with zero (zero maps to zero automatically).
pub fn semigroup_isomorphism(s: &FinSemigroupZ, t: &FinSemigroupZ) -> Option<Vec<usize>> {
    table_isomorphism(s.table(), t.table())
}

/// The isomorphism forced by the letter maps of two semigroups over the same
/// alphabet (`[w] ↦ [w]`), if it exists.
pub fn letter_isomorphism(s: &FinSemigroupZ, t: &FinSemigroupZ) -> Option<Vec<usize>> {
    if s.len() != t.len() || s.alphabet() != t.alphabet() {
        return None;
    }
    let mut map = vec![usize::MAX; s.len()];
    for x in 0..s.len() {
        map[x] = if x == s.zero() {
            t.zero()
        } else {
            t.eval(s.witness(x)?)?
        };
    }
    let mut seen = vec![false; t.len()];
    if map.iter().any(|&y| std::mem::replace(&mut seen[y], true)) {
        return None;
    }
    let hom = (0..s.len()).all(|x| (0..s.len()).all(|y| map[s.mul(x, y)] == t.mul(map[x], map[y])));
    hom.then_some(map)
}
