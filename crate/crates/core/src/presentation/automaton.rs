use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{Letter, Presentation, Word};

/// Minimal complete deterministic automaton of the factor language.
///
/// Every state other than the sink is accepting (the empty word belongs to
/// every non-empty right context), the sink is absorbing and is always
/// present, even when no word reaches it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<String>,
    trans: Vec<Vec<usize>>,
    initial: usize,
    sink: usize,
    access: Vec<Option<Word>>,
}

impl Dfa {
    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn step(&self, q: usize, a: Letter) -> usize {
        self.trans[q][a]
    }

    pub fn run(&self, q: usize, word: &[Letter]) -> usize {
        word.iter().fold(q, |q, &a| self.trans[q][a])
    }

    /// Shortlex-least word leading from the initial state to `q`.
    pub fn access_word(&self, q: usize) -> Option<&[Letter]> {
        self.access[q].as_deref()
    }

    /// Whether `q` has a non-empty right language.
    pub fn is_coaccessible(&self, q: usize) -> bool {
        q != self.sink
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.run(self.initial, word) != self.sink
    }

    pub fn non_sink_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.state_count()).filter(move |&q| q != self.sink)
    }
}

/// Subset construction from the full vertex set followed by Moore
/// partition refinement.
pub fn minimal_automaton(p: &Presentation) -> Dfa {
    let k = p.alphabet().len();
    let start = p.all_vertices();
    let empty = BTreeSet::new();
    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut subsets = vec![start.clone(), empty.clone()];
    index.insert(start, 0);
    index.insert(empty, 1);
    let mut trans: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let next = p.follow(&subsets[i], &[a]);
            let id = *index.entry(next.clone()).or_insert_with(|| {
                subsets.push(next);
                subsets.len() - 1
            });
            row.push(id);
        }
        trans.push(row);
        i += 1;
    }

    // Moore refinement: blocks start as {∅} and everything else.
    let n = subsets.len();
    let mut block: Vec<usize> = (0..n).map(|s| usize::from(s != 1)).collect();
    let mut count = 2;
    loop {
        let mut sig_index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|s| {
                let sig = (block[s], trans[s].iter().map(|&t| block[t]).collect());
                let len = sig_index.len();
                *sig_index.entry(sig).or_insert(len)
            })
            .collect();
        let new_count = sig_index.len();
        block = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // Renumber blocks in shortlex order of access words, sink last.
    let sink_block = block[1];
    let mut order: HashMap<usize, usize> = HashMap::new();
    let mut access: Vec<Option<Word>> = Vec::new();
    let mut queue = VecDeque::from([(0usize, Vec::new())]);
    let mut visited = vec![false; n];
    visited[0] = true;
    while let Some((s, w)) = queue.pop_front() {
        if block[s] != sink_block && !order.contains_key(&block[s]) {
            order.insert(block[s], order.len());
            access.push(Some(w.clone()));
        }
        for a in 0..k {
            let t = trans[s][a];
            if !visited[t] {
                visited[t] = true;
                let mut w2 = w.clone();
                w2.push(a);
                queue.push_back((t, w2));
            }
        }
    }
    let sink = order.len();
    let sink_access = (0..n)
        .filter(|&s| block[s] == sink_block)
        .filter_map(|s| shortest_word_to(&trans, s))
        .min_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    order.insert(sink_block, sink);
    access.push(sink_access);

    let mut dtrans = vec![Vec::new(); sink + 1];
    for s in 0..n {
        let q = order[&block[s]];
        if dtrans[q].is_empty() {
            dtrans[q] = trans[s].iter().map(|&t| order[&block[t]]).collect();
        }
    }
    Dfa {
        alphabet: p.alphabet().to_vec(),
        trans: dtrans,
        initial: order[&block[0]],
        sink,
        access,
    }
}

fn shortest_word_to(trans: &[Vec<usize>], target: usize) -> Option<Word> {
    let mut prev: Vec<Option<(usize, Letter)>> = vec![None; trans.len()];
    let mut seen = vec![false; trans.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        if s == target {
            let mut w = Vec::new();
            let mut cur = s;
            while let Some((p, a)) = prev[cur] {
                w.push(a);
                cur = p;
            }
            w.reverse();
            return Some(w);
        }
        for (a, &t) in trans[s].iter().enumerate() {
            if !seen[t] {
                seen[t] = true;
                prev[t] = Some((s, a));
                queue.push_back(t);
            }
        }
    }
    None
}
