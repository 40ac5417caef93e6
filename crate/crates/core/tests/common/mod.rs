#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sofic_core::corpus::random_presentation;
use sofic_core::presentation::Word;
use sofic_core::Presentation;

pub fn presentation_from_seed(seed: u64, max_vertices: usize, max_letters: usize) -> Presentation {
    random_presentation(&mut ChaCha8Rng::seed_from_u64(seed), max_vertices, max_letters)
}

/// All words over `k` letters of length `1..=max_len`.
pub fn all_words(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Labels of all edge paths of length `1..=max_len`, by walking edges.
pub fn path_labels(p: &Presentation, max_len: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut layer: Vec<(usize, Word)> = (0..p.vertex_count()).map(|v| (v, Vec::new())).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (v, w) in &layer {
            for e in p.edges().iter().filter(|e| e.src == *v) {
                let mut x = w.clone();
                x.push(e.label);
                out.insert(x.clone());
                next.push((e.dst, x));
            }
        }
        next.sort();
        next.dedup();
        layer = next;
    }
    out
}

/// Largest word length whose full enumeration stays around a few thousand words.
pub fn enumeration_depth(k: usize, wanted: usize) -> usize {
    let mut len = 0;
    let mut count = 1usize;
    while len < wanted && count * k <= 4096 {
        count *= k;
        len += 1;
    }
    len
}

/// Edge multiset of a presentation with labels spelled out, for graph
/// isomorphism checks between presentations over different alphabets.
pub fn labeled_edges(p: &Presentation) -> Vec<(usize, String, usize)> {
    p.edges().iter().map(|e| (e.src, p.alphabet()[e.label].clone(), e.dst)).collect()
}

/// Backtracking isomorphism of labeled graphs (vertices may be renamed,
/// labels must match as strings).
pub fn labeled_graph_isomorphic(a: &Presentation, b: &Presentation) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edges().len() != b.edges().len() {
        return false;
    }
    let ea = labeled_edges(a);
    let eb: BTreeSet<(usize, String, usize)> = labeled_edges(b).into_iter().collect();
    let profile = |edges: &[(usize, String, usize)], v: usize| {
        let mut out: Vec<&str> = edges.iter().filter(|e| e.0 == v).map(|e| e.1.as_str()).collect();
        let mut inn: Vec<&str> = edges.iter().filter(|e| e.2 == v).map(|e| e.1.as_str()).collect();
        out.sort_unstable();
        inn.sort_unstable();
        (out.join(" "), inn.join(" "))
    };
    let eb_vec: Vec<_> = eb.iter().cloned().collect();
    let pa: Vec<_> = (0..n).map(|v| profile(&ea, v)).collect();
    let pb: Vec<_> = (0..n).map(|v| profile(&eb_vec, v)).collect();
    fn go(
        v: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        pa: &[(String, String)],
        pb: &[(String, String)],
        ea: &[(usize, String, usize)],
        eb: &BTreeSet<(usize, String, usize)>,
    ) -> bool {
        if v == map.len() {
            return ea.iter().all(|(s, l, t)| eb.contains(&(map[*s], l.clone(), map[*t])));
        }
        for w in 0..map.len() {
            if used[w] || pa[v] != pb[w] {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if go(v + 1, map, used, pa, pb, ea, eb) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    go(0, &mut vec![0; n], &mut vec![false; n], &pa, &pb, &ea, &eb)
}
