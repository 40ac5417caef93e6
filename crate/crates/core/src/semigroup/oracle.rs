//! Brute-force context comparison straight from a presentation.
//!
//! Independent of the automaton and semigroup code: left contexts are explored
//! as vertex subsets reached by prefixes, right contexts by a pair search.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::presentation::{minimal_automaton, Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContextVerdict {
    Equal,
    /// `x u y` is a factor but `x v y` is not.
    OnlyFirst { x: Word, y: Word },
    /// `x v y` is a factor but `x u y` is not.
    OnlySecond { x: Word, y: Word },
}

type Subset = BTreeSet<usize>;

fn bfs_subsets(p: &Presentation, start: Subset, bound: usize) -> Vec<(Subset, Word)> {
    let mut seen: HashMap<Subset, Word> = HashMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone(), Vec::new());
    order.push(start.clone());
    queue.push_back(start);
    while let Some(set) = queue.pop_front() {
        let word = seen[&set].clone();
        if word.len() >= bound {
            continue;
        }
        for a in 0..p.alphabet().len() {
            let next = p.follow(&set, &[a]);
            if next.is_empty() || seen.contains_key(&next) {
                continue;
            }
            let mut w = word.clone();
            w.push(a);
            seen.insert(next.clone(), w);
            order.push(next.clone());
            queue.push_back(next);
        }
    }
    order.into_iter().map(|s| { let w = seen.remove(&s).unwrap(); (s, w) }).collect()
}

fn separating_suffix(p: &Presentation, a: Subset, b: Subset, bound: usize) -> Option<(Word, bool)> {
    let mut seen: HashMap<(Subset, Subset), Word> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert((a.clone(), b.clone()), Vec::new());
    queue.push_back((a, b));
    while let Some((x, y)) = queue.pop_front() {
        let word = seen[&(x.clone(), y.clone())].clone();
        if x.is_empty() != y.is_empty() {
            return Some((word, !x.is_empty()));
        }
        if x.is_empty() || word.len() >= bound {
            continue;
        }
        for c in 0..p.alphabet().len() {
            let key = (p.follow(&x, &[c]), p.follow(&y, &[c]));
            if !seen.contains_key(&key) {
                let mut w = word.clone();
                w.push(c);
                seen.insert(key.clone(), w);
                queue.push_back(key);
            }
        }
    }
    None
}

/// Decides whether `u` and `v` have the same two-sided contexts in the factor
/// language, looking at contexts `(x, y)` with `|x|, |y| <= bound`.
pub fn context_oracle(p: &Presentation, u: &[usize], v: &[usize], bound: usize) -> Result<ContextVerdict> {
    let m = minimal_automaton(p).state_count();
    let required = 2 * m * m;
    if bound < required {
        return Err(Error::BoundTooSmall { bound, required });
    }
    for (set, x) in bfs_subsets(p, p.all_vertices(), bound) {
        let a = p.follow(&set, u);
        let b = p.follow(&set, v);
        if let Some((y, first)) = separating_suffix(p, a, b, bound) {
            return Ok(if first {
                ContextVerdict::OnlyFirst { x, y }
            } else {
                ContextVerdict::OnlySecond { x, y }
            });
        }
    }
    Ok(ContextVerdict::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gm() -> Presentation {
        Presentation::parse("1 a 1\n1 b 2\n2 a 1\n").unwrap()
    }

    #[test]
    fn golden_mean_verdicts() {
        let p = gm();
        let w = |t: &str| p.word(t).unwrap();
        assert_eq!(context_oracle(&p, &w("b"), &w("bab"), 18).unwrap(), ContextVerdict::Equal);
        let v = context_oracle(&p, &w("a"), &w("b"), 18).unwrap();
        assert_eq!(v, ContextVerdict::OnlyFirst { x: vec![], y: w("b") });
        assert_eq!(context_oracle(&p, &w("ab"), &w("ab"), 18).unwrap(), ContextVerdict::Equal);
    }

    #[test]
    fn bound_check() {
        let p = gm();
        let e = context_oracle(&p, &[0], &[0], 3).unwrap_err();
        assert_eq!(e, Error::BoundTooSmall { bound: 3, required: 18 });
    }

    #[test]
    fn forbidden_words_are_equal() {
        let p = gm();
        let w = |t: &str| p.word(t).unwrap();
        assert_eq!(context_oracle(&p, &w("bb"), &w("bab"), 18).unwrap(),
            ContextVerdict::OnlySecond { x: vec![], y: vec![] });
        assert_eq!(context_oracle(&p, &w("bb"), &w("abba"), 18).unwrap(), ContextVerdict::Equal);
    }
}
